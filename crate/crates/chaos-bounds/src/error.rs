use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("coefficient key {key:?} contains a duplicate index")]
    DuplicateIndex { key: Vec<u32> },

    #[error("coefficient key {key:?} is not strictly increasing")]
    UnsortedKey { key: Vec<u32> },

    #[error("coefficient key {key:?} has {found} indices, expected {expected}")]
    KeyArity {
        key: Vec<u32>,
        expected: usize,
        found: usize,
    },

    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: u32, n: usize },

    #[error("two entries share the key {key:?}")]
    DuplicateEntry { key: Vec<u32> },

    #[error("degree k must be at least 1")]
    ZeroDegree,

    #[error("dimension n = {n} is smaller than degree k = {k}")]
    DimensionBelowDegree { k: usize, n: usize },

    #[error("input vector has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("sign vectors may contain only +1 and -1, found {found}")]
    BadSign { found: i8 },

    #[error("enumeration over n = {n} variables exceeds the budget n <= {max}")]
    EnumerationBudget { n: usize, max: usize },

    #[error("expansion exceeded the live-term budget of {budget} terms")]
    TermBudget { budget: usize },

    #[error("projected diagram count {projected:.3e} exceeds the budget of {budget}")]
    DiagramBudget { projected: f64, budget: u64 },

    #[error("sampling request of {requested} draws exceeds the budget of {budget}")]
    SamplingBudget { requested: u128, budget: u128 },

    #[error(
        "moment sequence '{label}' stops at even order {available}, \
         but order {required} is required"
    )]
    MomentsTooShort {
        label: String,
        required: u32,
        available: u32,
    },

    #[error("{m}!! requires an odd argument")]
    EvenDoubleFactorialArgument { m: u64 },

    #[error("{m}!! overflows a 128-bit integer")]
    DoubleFactorialOverflow { m: u64 },

    #[error("kernel for row {row} has arity {found}, the layout expects {expected}")]
    KernelArityMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("all kernels in a product must share one ground set and measure")]
    KernelGroundMismatch,

    #[error("kernel has {found} values, expected ground_size^arity = {expected}")]
    KernelShape { expected: usize, found: usize },

    #[error("measure weights must be finite and nonnegative")]
    BadMeasure,

    #[error("row sizes must be positive")]
    EmptyRow,

    #[error("{0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
