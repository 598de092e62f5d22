//! Executable checks over a [`SequenceTable`].
//!
//! Each check yields one [`CheckRecord`] per index; a failed check is report
//! content, not an error.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{SequenceTable, TableMode};
use crate::interval::iv_div;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub k: u64,
    pub check: String,
    pub passed: bool,
    pub diagnostics: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.to_string(),
            records: Vec::new(),
        }
    }

    fn record(&mut self, k: u64, check: &str, passed: bool, diagnostics: impl FnOnce() -> String) {
        self.records.push(CheckRecord {
            k,
            check: check.to_string(),
            passed,
            diagnostics: if passed { String::new() } else { diagnostics() },
        });
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    /// One line per record, `suite k check PASS|FAIL [diagnostics]`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let status = if r.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{} {} {} {}", self.suite, r.k, r.check, status);
            if !r.diagnostics.is_empty() {
                let _ = write!(out, " {}", r.diagnostics);
            }
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> String {
        let failed = self.failures().count();
        format!(
            "{}: {} checks, {} failed",
            self.suite,
            self.records.len(),
            failed
        )
    }
}

/// `α_k π < 2^(k+1)` against the table's π upper endpoint, and `0 < β_k < 1`.
pub fn verify_theorem3(table: &SequenceTable) -> VerificationReport {
    let mut report = VerificationReport::new("theorem3");
    let pi = &table.pi_certificate_used().interval;
    let p = pi.precision();
    for e in table.entries() {
        let lhs = &e.alpha * pi.hi_mantissa();
        let rhs = BigInt::one() << (e.k + 1 + p);
        report.record(e.k, "pi_below_ratio", lhs < rhs, || {
            format!("alpha*pi_hi={} >= 2^{}", lhs, e.k + 1)
        });
        let zero = crate::Dyadic::zero();
        let one = crate::Dyadic::from_integer(1);
        let (lo, hi) = (e.beta.lo(), e.beta.hi());
        report.record(e.k, "beta_in_open_unit", lo > zero && hi < one, || {
            format!("beta={}", e.beta)
        });
    }
    report
}

/// `γ_k` follows its defining rule, `α_{γ_k}` is odd and coprime to
/// `2^(γ_k+1)`, and an even `α_k` shares the factor 2 with `2^(k+1)`.
pub fn verify_coprimality(table: &SequenceTable) -> VerificationReport {
    let mut report = VerificationReport::new("coprimality");
    let mut previous_gamma = 1;
    for e in table.entries() {
        let expected = if e.k == 1 || e.alpha_is_odd { e.k } else { previous_gamma };
        report.record(e.k, "gamma_rule", e.gamma == expected, || {
            format!("gamma={} expected={}", e.gamma, expected)
        });
        previous_gamma = e.gamma;

        match table.get(e.gamma) {
            Some(g) => {
                report.record(e.k, "alpha_gamma_odd", g.alpha.is_odd(), || {
                    format!("alpha_{}={}", e.gamma, g.alpha)
                });
                let power = BigInt::one() << (e.gamma + 1);
                let gcd = power.gcd(&g.alpha);
                report.record(e.k, "gcd_with_power_of_two", gcd.is_one(), || {
                    format!("gcd(2^{}, {})={}", e.gamma + 1, g.alpha, gcd)
                });
            }
            None => report.record(e.k, "alpha_gamma_odd", false, || {
                format!("gamma={} outside table", e.gamma)
            }),
        }

        if !e.alpha_is_odd {
            let gcd = (BigInt::one() << (e.k + 1)).gcd(&e.alpha);
            report.record(e.k, "even_alpha_shares_two", gcd.is_even(), || {
                format!("gcd(2^{}, {})={}", e.k + 1, e.alpha, gcd)
            });
        }
    }
    report
}

/// `α_{k+1} = 2α_k + ⌊2β_k⌋` for each consecutive pair, and the enclosure of
/// `(α_{k+1} + β_{k+1}) / (α_k + β_k)` contains 2.
///
/// Meaningful only on independently computed entries; a table built by the
/// recurrence itself gets a failing `independent_entries` record.
pub fn verify_recurrence(table: &SequenceTable) -> VerificationReport {
    let mut report = VerificationReport::new("recurrence");
    if table.mode() != TableMode::DirectEveryK {
        report.record(0, "independent_entries", false, || {
            "table was built by the recurrence it is checked against".to_string()
        });
    }
    for pair in table.entries().windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let predicted = (&a.alpha << 1u32) + a.twice_beta_floor;
        report.record(a.k, "recurrence", predicted == b.alpha, || {
            format!("2*{}+{} != {}", a.alpha, a.twice_beta_floor, b.alpha)
        });
        let contains_two = match iv_div(&b.quotient(), &a.quotient()) {
            Ok(ratio) => ratio.contains_integer(&BigInt::from(2)),
            Err(_) => false,
        };
        report.record(a.k, "ratio_contains_two", contains_two, || {
            "(alpha+beta)_{k+1}/(alpha+beta)_k enclosure misses 2".to_string()
        });
    }
    report
}

/// Compares the table's `α_k` against reference `(index, value)` pairs.
/// Indices beyond the table are ignored.
pub fn cross_check_reference(table: &SequenceTable, reference: &[(u64, BigInt)]) -> VerificationReport {
    let mut report = VerificationReport::new("reference");
    let mut overlap = 0usize;
    for (k, value) in reference {
        if let Some(e) = table.get(*k) {
            overlap += 1;
            report.record(*k, "reference_match", &e.alpha == value, || {
                format!("table={} reference={}", e.alpha, value)
            });
        }
    }
    if overlap == 0 {
        report.record(0, "reference_overlap", false, || {
            "reference shares no indices with the table".to_string()
        });
    }
    report
}
