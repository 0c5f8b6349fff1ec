use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PadicError {
    #[error("precision exhausted: result is O(p^{0})")]
    PrecisionExhausted(i32),
    #[error("division by zero at working precision")]
    DivisionByZero,
    #[error("mixed primes {0} and {1}")]
    PrimeMismatch(u32, u32),
    #[error("expected a p-adic unit")]
    NonUnit,
    #[error("argument outside domain: {0}")]
    OutsideDomain(&'static str),
    #[error("malformed p-adic number: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation collapse: order {order} does not exceed lowest exponent {lowest}")]
    TruncationCollapse { order: i32, lowest: i32 },
    #[error("leading coefficient is not invertible")]
    NotInvertible,
    #[error("series is indistinguishable from zero at this precision")]
    Inconclusive,
    #[error("composition needs an inner series of positive valuation")]
    BadComposition,
    #[error(transparent)]
    Padic(#[from] PadicError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("singular curve (discriminant 0)")]
    Singular,
    #[error("bad reduction at {0}")]
    BadPrime(u32),
    #[error("prime must be odd, got {0}")]
    EvenPrime(u32),
    #[error("point is not integral at {0}")]
    NonIntegral(u32),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("precision exhausted in the group law")]
    PrecisionExhausted,
    #[error("expansion order too small (need at least {0})")]
    OrderTooSmall(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobeniusError {
    #[error("precision budget exceeded: lost {lost} digits, budget {budget}; retry with larger N")]
    BudgetExceeded { lost: i32, budget: i32 },
    #[error("the disk of the origin has no Frobenius-fixed parameter in this interface")]
    OriginDisk,
    #[error("the Frobenius lift does not converge on Weierstrass disks")]
    WeierstrassDisk,
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("cache: {0}")]
    Cache(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColemanError {
    #[error("singular linear system for integration constants: {0}")]
    SingularSystem(String),
    #[error("point lies in the disk of the origin")]
    OriginDisk,
    #[error("point is not p-integral")]
    NotIntegral,
    #[error("Frobenius consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChabautyError {
    #[error("log_α(y) = 0 at precision: y is torsion or the precision is too low")]
    TorsionBasePoint,
    #[error("base point must be integral on the given model")]
    NonIntegralBasePoint,
    #[error("insufficient precision to certify: {0}")]
    InsufficientPrecision(String),
    #[error(transparent)]
    Coleman(#[from] ColemanError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
