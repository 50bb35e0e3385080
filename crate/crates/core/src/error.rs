use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a composition needs at least one bin")]
    NoBins,

    #[error("row lengths must be weakly decreasing, got {0:?}")]
    NotWeaklyDecreasing(Vec<usize>),

    #[error("diagram {rows:?} does not fit inside a {max_rows}x{max_cols} box")]
    OutsideBox {
        rows: Vec<usize>,
        max_rows: usize,
        max_cols: usize,
    },

    #[error("bounding boxes differ: {0}x{1} vs {2}x{3}")]
    BoxMismatch(usize, usize, usize, usize),

    #[error("compositions disagree on shape: expected C({s},{n}), found C({found_s},{found_n})")]
    ShapeMismatch {
        s: usize,
        n: usize,
        found_s: usize,
        found_n: usize,
    },

    #[error("need at least {min} compositions, got {got}")]
    TooFewArguments { min: usize, got: usize },

    #[error("instance too large for exhaustive transport search: {reason}")]
    InstanceTooLarge { reason: String },

    #[error("enumeration of {required} tuples exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("EMC bound s(n-1)*floor(d/2) = {s}*{cols}*{half} overflows u64")]
    Overflow { s: usize, cols: usize, half: usize },

    #[error("q-binomial [{a} choose {b}] needs 0 <= b <= a")]
    BinomialRange { a: usize, b: usize },

    #[error("expected a character in {expected} variables, got {found}")]
    WrongArity { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot parse composition {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
