use std::path::PathBuf;

use num_bigint::BigInt;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Square root of an interval whose lower endpoint is negative.
    #[error("square root of an interval with negative lower endpoint {lo}")]
    NegativeOperand { lo: String },

    #[error("divisor interval {divisor} contains zero")]
    DivisorStraddlesZero { divisor: String },

    /// Escalation hit the configured precision ceiling before the quantity
    /// could be certified.
    #[error("precision exhausted while certifying {what}: needed more than {ceiling} bits")]
    PrecisionExhausted { what: String, ceiling: u64 },

    #[error("recurrence mismatch at k={k}: recurrence gave {recurrence}, direct evaluation gave {direct}")]
    RecurrenceMismatch {
        k: u64,
        recurrence: BigInt,
        direct: BigInt,
    },

    /// Two certified routes to the same quantity produced disjoint enclosures.
    #[error("certified enclosures disagree: {0}")]
    CertificateMismatch(String),

    #[error("index k={k} outside the supported range 1..={max}")]
    IndexOutOfRange { k: u64, max: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed b-file line {line}: {reason}")]
    BFileFormat { line: usize, reason: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
