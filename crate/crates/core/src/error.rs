use thiserror::Error;

/// Errors raised by the exact-arithmetic and operator layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("value {0} is not real")]
    NonReal(String),
    #[error("cannot parse {0:?} as a Gaussian rational")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("m = 0 is out of scope")]
    ZeroM,
    #[error("degree {k} is not in K({m})")]
    Index { k: i64, m: i64 },
    #[error("polynomial does not lie in the parity space of bound {bound}")]
    Parity { bound: i64 },
    #[error("negative degree {0}")]
    NegativeDegree(i64),
    #[error("parameters outside the admissible range: {0}")]
    NotAdmissible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
