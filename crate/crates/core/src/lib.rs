//! Certified arbitrary-precision evaluation of the nested radicals
//! `c_k = sqrt(2 + c_{k-1})`, enclosures of pi built from them, and the
//! integer sequence `alpha_k = floor(2^(k+1) / pi)` with its companions.
//!
//! Every real quantity is carried as a [`DyadicInterval`]: a pair of dyadic
//! endpoints rounded outward, so each result provably contains the exact
//! value. Integer facts (floors, parities, recurrence branches) are only
//! reported once the enclosure pins them down; otherwise the caller raises
//! precision.

pub mod bfile;
pub mod cli;
mod error;
pub mod interval;
pub mod pi;
pub mod radicals;
pub mod report;
pub mod sequences;

pub use error::{Error, Result};
pub use interval::{Dyadic, DyadicInterval, Floor};
pub use pi::{PiCertificate, PiMethod};
pub use sequences::{AlphaEntry, SequenceTable, TableMode};

/// Default ceiling on the working precision of any escalation loop, in bits.
pub const DEFAULT_PRECISION_CEILING: u64 = 1 << 20;

/// Default largest supported index `k`.
pub const DEFAULT_MAX_K: u64 = 10_000;

/// Resource limits shared by every operation that escalates precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub precision_ceiling: u64,
    pub max_k: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            precision_ceiling: DEFAULT_PRECISION_CEILING,
            max_k: DEFAULT_MAX_K,
        }
    }
}

impl Limits {
    pub(crate) fn check_k(&self, k: u64) -> Result<()> {
        if k == 0 || k > self.max_k {
            return Err(Error::IndexOutOfRange { k, max: self.max_k });
        }
        Ok(())
    }

    pub(crate) fn check_precision(&self, what: impl FnOnce() -> String, bits: u64) -> Result<()> {
        if bits > self.precision_ceiling {
            return Err(Error::PrecisionExhausted {
                what: what(),
                ceiling: self.precision_ceiling,
            });
        }
        Ok(())
    }
}
