//! Integral points on rank-one elliptic curves minus the origin, cut out by a
//! p-adic function built from single and double Coleman integrals.

pub mod curve;
pub mod etale;
pub mod error;
pub mod field;
pub mod padic;
pub mod poly;
pub mod series;
pub mod rigidcoh;
pub mod coleman;
pub mod chabauty;
