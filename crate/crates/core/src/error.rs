use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero polynomial is not a valid argument to {0}")]
    ZeroPolynomial(&'static str),

    #[error("{op}: argument must be nonzero")]
    ZeroArgument { op: &'static str },

    #[error("primality is only defined for n > 1, got {0}")]
    NotAboveOne(BigInt),

    #[error("identity {identity} failed: {detail}")]
    IdentityFailed {
        identity: &'static str,
        detail: String,
    },

    #[error("element is not fixed by {conjugate}; it does not lie in Q(sqrt 13)")]
    NotDescended { conjugate: &'static str },

    #[error("pair ({a}, {b}) is not admissible: {reason}")]
    BadPair {
        a: BigInt,
        b: BigInt,
        reason: &'static str,
    },

    #[error("singular Weierstrass model")]
    SingularModel,

    #[error("singular curve over F_{q}")]
    SingularCurve { q: u64 },

    #[error("unknown prime label {0:?}")]
    UnknownPrime(String),

    #[error("unsupported value for {what}: {value}")]
    Unsupported { what: &'static str, value: String },

    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("Tate's algorithm: {0}")]
    Tate(String),

    #[error("factor {poly} vanishes at {value}")]
    VanishingFactor { poly: String, value: i64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
