use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("rank deficient: weight matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("columns {} do not form a column basis", crate::error::one_based_set(.0))]
    NotABasis(Vec<usize>),

    /// `basis` and `column` are zero-based; the message is one-based.
    #[error("non-generic: basis {}, λ{} = 0", crate::error::one_based_set(.basis), crate::error::subscript(.column + 1))]
    NonGeneric { basis: Vec<usize>, column: usize },

    #[error("torsion element {0} is not in the inertia of this model")]
    NotInInertia(String),

    #[error("degree {degree} exceeds truncation bound {bound}")]
    DegreeExceeded { degree: usize, bound: usize },

    #[error("polynomial is not homogeneous: {0}")]
    Inhomogeneous(String),

    #[error("Gysin pushforward is not well defined: {0}")]
    GysinIllDefined(String),

    #[error("obstruction class is not a bundle: {0}")]
    NotABundle(String),

    #[error("point is outside the chart U_σ: {0}")]
    NotInChart(String),

    #[error("point is not on the zero fiber of the moment map")]
    NotOnMomentZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub(crate) fn one_based_set(indices: &[usize]) -> String {
    let items: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub(crate) fn subscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap_or(0) as usize])
        .collect()
}
