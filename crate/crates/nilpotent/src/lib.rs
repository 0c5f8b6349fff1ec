//! Exact arithmetic for the level-2 free nilpotent group on two generators,
//! group cochains on finite models, and Massey cocycles.

pub mod cochain;
pub mod element;
pub mod error;
pub mod group;
pub mod massey;
pub mod scalar;
pub mod solve;
pub mod suite;

pub use cochain::{cup, differential, Cochain, Module};
pub use element::{bch_mul, bracket, involution_and_splitting, m_lambda, NilpotentElement};
pub use error::NilpotentError;
pub use group::{standard_models, GroupModel};
pub use massey::{check_nonabelian_cocycle, gauge_action, gauge_certificate, rescaling_decomposition, massey_phi, MasseyInstance};
pub use scalar::{Fp, Scalar, F101, Q};
pub use solve::{solve_coboundary, Solution};
pub use suite::{run_suite, SuiteReport};
