use thiserror::Error;

/// Errors raised by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid root system type {label}: {reason}")]
    InvalidType { label: String, reason: String },

    #[error("not a crystallographic root system: {0}")]
    NotCrystallographic(String),

    #[error("Weyl group of {label} has order {order}, exceeding the traversal cap {cap}")]
    WeylCapExceeded { label: String, order: u128, cap: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {0} is not integral")]
    NotIntegral(String),

    #[error("polynomial is not Weyl-invariant: leading term {0} is not dominant")]
    NotInvariant(String),

    #[error("lattice is not contained in the target lattice: {0}")]
    NotSublattice(String),

    #[error("rank mismatch: sublattice has rank {sub}, target has rank {sup}")]
    RankMismatch { sub: usize, sup: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("permutation {0} does not preserve the Cartan matrix")]
    NotAutomorphism(String),

    #[error("unsupported folding: {0}")]
    UnsupportedFolding(String),

    #[error("lattice identity failed: {0}")]
    LatticeIdentity(String),

    #[error("weight {0} is not fixed by the diagram automorphism")]
    NotFixed(String),

    #[error("point {0} lies outside the fundamental alcove")]
    OutsideAlcove(String),

    #[error("singular point: pairing with root {root} is an integer")]
    SingularPoint { root: String },

    #[error("polynomials live on different lattices ({0} vs {1})")]
    LatticeTagMismatch(String, String),

    #[error("Verlinde sum for {triple} is not integral: value {value}, residual {residual:e}, |T| = {t_order}")]
    Normalization { triple: String, value: f64, residual: f64, t_order: u64 },

    #[error("fusion routes disagree at {triple}: Verlinde {verlinde}, algebraic {algebraic}")]
    RouteDisagreement { triple: String, verlinde: i64, algebraic: i64 },

    #[error("fusion table needs {needed} coefficients, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
