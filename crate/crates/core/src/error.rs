use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: need n >= 3")]
    InvalidDimension(usize),

    #[error("no real root: polynomial has no sign change in (-1, 1)")]
    NoRealRoot,

    #[error("inner product {0} out of range [-1, 1)")]
    OutOfRange(f64),

    #[error("kernel construction failed: f(1)/f_0 = {from_polynomial} but closed form gives {closed_form}")]
    KernelConstructionFailure {
        from_polynomial: f64,
        closed_form: f64,
    },

    #[error("condition (A1) violated: p({witness}) = {value} > 0")]
    ConditionA1Violated { witness: f64, value: f64 },

    #[error("condition (A2) violated: Gegenbauer coefficient f_{index} = {value}")]
    ConditionA2Violated { index: usize, value: f64 },

    #[error("linear program is infeasible")]
    InfeasibleLp,

    #[error("linear program is unbounded")]
    UnboundedLp,

    #[error("simplex exceeded {0} iterations")]
    MaxIterationsExceeded(usize),

    #[error("post-verification failed: {0}")]
    PostVerificationFailed(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("cap cannot hold {m} points with pairwise inner product <= {s}")]
    InfeasibleCap { m: usize, s: f64 },

    #[error("condition (B1) violated: f({witness}) = {value} > 0 on [t0, s]")]
    ConditionB1Violated { witness: f64, value: f64 },

    #[error("condition (B2) violated: f'({witness}) = {value} > 0 on [-1, t0]")]
    ConditionB2Violated { witness: f64, value: f64 },

    #[error("condition (B3) violated: Gegenbauer coefficient f_{index} = {value}")]
    ConditionB3Violated { index: usize, value: f64 },

    #[error("codewords have inconsistent lengths")]
    InconsistentLengths,

    #[error("codeword {0} has odd weight; construction B needs an even code")]
    OddWeightCodeword(String),

    #[error("unknown code `{0}`")]
    UnknownCode(String),

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("need at least two vectors")]
    SingletonCode,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("soundness violation in dimension {n}: rigorous upper bound {upper} < known lower bound {known_lower}")]
    SoundnessViolation {
        n: usize,
        upper: u64,
        known_lower: u64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
