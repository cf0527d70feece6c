use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("composite modulus: {0} is not prime")]
    CompositeModulus(u32),

    #[error("unsupported level count {0}: an odd prime is required")]
    UnsupportedLevels(u32),

    #[error("no inverse: {a} is zero mod {n}")]
    NoInverse { a: i64, n: u32 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("capacity exceeded: dimension {dim} is above the dense limit {limit} (reduce the extent or N)")]
    Capacity { dim: u128, limit: usize },

    #[error("{what} {i} and {j} do not commute (exponent {exponent})")]
    NonCommuting {
        what: &'static str,
        i: usize,
        j: usize,
        exponent: u32,
    },

    #[error("dependent operators: rank {rank} < {count}")]
    Dependent { rank: usize, count: usize },

    #[error("bad logical pairing between X[{i}] and Z[{j}]: exponent {exponent}, expected {expected}")]
    BadPairing {
        i: usize,
        j: usize,
        exponent: u32,
        expected: u32,
    },

    #[error("detectable error, not decomposable (syndrome {syndrome:?})")]
    Detectable { syndrome: Vec<u32> },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("enumeration limit: {needed} candidates exceed the budget of {budget}")]
    EnumerationLimit { needed: u128, budget: u128 },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("gauge-variant term {index} (syndrome {syndrome:?})")]
    GaugeVariant { index: usize, syndrome: Vec<u32> },

    #[error("operator leaves sector (leakage {leak:e})")]
    LeavesSector { leak: f64 },

    #[error("operator is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("operator is not diagonal")]
    NotDiagonal,

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("uncorrectable under code assumptions: syndrome {0:?}")]
    Uncorrectable(Vec<u32>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
