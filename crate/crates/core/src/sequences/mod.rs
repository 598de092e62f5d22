//! The integer sequence `α_k = ⌊2^(k+1)/π⌋`, the fractional parts
//! `β_k = 2^(k+1)/π - α_k`, and `γ_k`, the last index `j ≤ k` with `α_j` odd.
//!
//! `α_k` is the binary expansion of `4/π` truncated after `k + 1` bits, so
//! `α_{k+1} = 2α_k + ⌊2β_k⌋` and `α_j = α_k >> (k - j)`. Every entry is
//! certified: its floor, the sign of `β_k`, and the side of `1/2` on which
//! `β_k` lies are all decided by the enclosure, with precision escalated
//! (never rounded) until they are.

mod verify;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::{iv_div_int_by, iv_floor_certified, DyadicInterval};
use crate::pi::{certify_pi, PiCertificate};
use crate::Limits;

pub use verify::{
    cross_check_reference, verify_coprimality, verify_recurrence, verify_theorem3, CheckRecord,
    VerificationReport,
};

/// Entries re-derived directly in [`TableMode::RecurrenceWithSpotChecks`].
pub const SPOT_CHECK_STRIDE: u64 = 32;

/// Bits of π precision beyond `k` used for a first attempt at `α_k`.
const ALPHA_GUARD_BITS: u64 = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaEntry {
    pub k: u64,
    pub alpha: BigInt,
    /// Enclosure of `β_k`, strictly inside `(0, 1)`.
    pub beta: DyadicInterval,
    pub gamma: u64,
    pub alpha_is_odd: bool,
    /// `⌊2β_k⌋`, certified: 0 when `β_k < 1/2`, 1 when `β_k > 1/2`.
    pub twice_beta_floor: u8,
}

impl AlphaEntry {
    /// Enclosure of `α_k + β_k = 2^(k+1)/π`.
    pub fn quotient(&self) -> DyadicInterval {
        self.beta.add_int(&self.alpha)
    }
}

/// `γ_k` read off `α_k` alone: the lowest set bit of `α_k` sits at index `γ_k`.
pub fn gamma_from_alpha(k: u64, alpha: &BigInt) -> u64 {
    k - alpha.trailing_zeros().unwrap_or(0)
}

/// Builds the entry for `k` from a π enclosure, or `None` when the enclosure
/// is too wide to certify `α_k`, `0 < β_k < 1`, or the side of `1/2`.
pub fn entry_from_certificate(k: u64, pi: &PiCertificate) -> Result<Option<AlphaEntry>> {
    let numerator = BigInt::one() << (k + 1);
    let quotient = iv_div_int_by(&numerator, &pi.interval)?;
    let Some(alpha) = iv_floor_certified(&quotient).certain() else {
        return Ok(None);
    };
    let beta = quotient.add_int(&-&alpha);
    if beta.lo_mantissa().is_zero() {
        return Ok(None);
    }
    let Some(twice_beta_floor) = half_side(&beta) else {
        return Ok(None);
    };
    Ok(Some(AlphaEntry {
        k,
        gamma: gamma_from_alpha(k, &alpha),
        alpha_is_odd: alpha.is_odd(),
        alpha,
        beta,
        twice_beta_floor,
    }))
}

/// 0 if the interval lies below 1/2, 1 if above, `None` if undecided.
fn half_side(beta: &DyadicInterval) -> Option<u8> {
    match beta.cmp_rational(&BigInt::one(), &BigInt::from(2)) {
        Some(Ordering::Less) => Some(0),
        Some(Ordering::Greater) => Some(1),
        _ => None,
    }
}

/// Certified `α_k` entry, escalating π precision until it resolves.
pub fn alpha_direct(k: u64, limits: &Limits) -> Result<AlphaEntry> {
    limits.check_k(k)?;
    let mut p = k + ALPHA_GUARD_BITS;
    loop {
        let pi = certify_pi(p, limits).map_err(|e| exhausted_at(e, k))?;
        if let Some(entry) = entry_from_certificate(k, &pi)? {
            return Ok(entry);
        }
        p = escalate(p, k, limits)?;
    }
}

fn escalate(p: u64, k: u64, limits: &Limits) -> Result<u64> {
    let next = p * 2;
    limits.check_precision(|| format!("alpha_{k} (2^(k+1)/pi near an integer or half-integer)"), next)?;
    Ok(next)
}

fn exhausted_at(e: Error, k: u64) -> Error {
    match e {
        Error::PrecisionExhausted { what, ceiling } => Error::PrecisionExhausted {
            what: format!("alpha_{k}: {what}"),
            ceiling,
        },
        other => other,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableMode {
    /// Every entry is computed from π on its own.
    DirectEveryK,
    /// `α_{k+1} = 2α_k + ⌊2β_k⌋`, re-deriving every 32nd entry directly.
    RecurrenceWithSpotChecks,
}

/// Entries for `k = 1..=K`, contiguous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    entries: Vec<AlphaEntry>,
    pi_certificate_used: PiCertificate,
    mode: TableMode,
}

impl SequenceTable {
    pub fn entries(&self) -> &[AlphaEntry] {
        &self.entries
    }

    pub fn pi_certificate_used(&self) -> &PiCertificate {
        &self.pi_certificate_used
    }

    pub fn mode(&self) -> TableMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry for index `k`, if in the table.
    pub fn get(&self, k: u64) -> Option<&AlphaEntry> {
        k.checked_sub(1).and_then(|i| self.entries.get(i as usize))
    }

    pub fn alphas(&self) -> Vec<BigInt> {
        self.entries.iter().map(|e| e.alpha.clone()).collect()
    }

    pub fn gammas(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.gamma).collect()
    }

    /// `α_{γ_k}` for every `k`.
    pub fn alpha_gammas(&self) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|e| self.entries[e.gamma as usize - 1].alpha.clone())
            .collect()
    }

    /// The first `len` entries.
    pub fn prefix(&self, len: usize) -> SequenceTable {
        SequenceTable {
            entries: self.entries[..len.min(self.entries.len())].to_vec(),
            pi_certificate_used: self.pi_certificate_used.clone(),
            mode: self.mode,
        }
    }
}

/// Fills `γ_k` by the recursive rule: `γ_1 = 1`, `γ_k = k` when `α_k` is
/// odd, otherwise `γ_{k-1}`.
fn assign_gammas(entries: &mut [AlphaEntry]) {
    let mut previous = 1;
    for e in entries.iter_mut() {
        let gamma = if e.k == 1 || e.alpha_is_odd { e.k } else { previous };
        debug_assert_eq!(gamma, e.gamma, "bit rule and recursive rule disagree at k={}", e.k);
        e.gamma = gamma;
        previous = gamma;
    }
}

pub fn build_table(max_k: u64, mode: TableMode, limits: &Limits) -> Result<SequenceTable> {
    if max_k == 0 {
        return Err(Error::InvalidArgument("table needs max_k ≥ 1".into()));
    }
    limits.check_k(max_k)?;
    let mut p = max_k + 64;
    let mut pi = certify_pi(p, limits)?;

    let mut entries = match mode {
        TableMode::DirectEveryK => loop {
            let attempt: Result<Vec<Option<AlphaEntry>>> = (1..=max_k)
                .into_par_iter()
                .map(|k| entry_from_certificate(k, &pi))
                .collect();
            let attempt: Option<Vec<AlphaEntry>> = attempt?.into_iter().collect();
            match attempt {
                Some(entries) => break entries,
                None => {
                    p = escalate(p, max_k, limits)?;
                    pi = certify_pi(p, limits)?;
                }
            }
        },
        TableMode::RecurrenceWithSpotChecks => recurrence_entries(max_k, &mut p, &mut pi, limits)?,
    };
    assign_gammas(&mut entries);
    Ok(SequenceTable {
        entries,
        pi_certificate_used: pi,
        mode,
    })
}

/// Direct entry for `k` from `pi`, escalating the shared certificate if needed.
fn direct_with_escalation(
    k: u64,
    p: &mut u64,
    pi: &mut PiCertificate,
    limits: &Limits,
) -> Result<AlphaEntry> {
    loop {
        if let Some(entry) = entry_from_certificate(k, pi)? {
            return Ok(entry);
        }
        *p = escalate(*p, k, limits)?;
        *pi = certify_pi(*p, limits)?;
    }
}

fn recurrence_entries(
    max_k: u64,
    p: &mut u64,
    pi: &mut PiCertificate,
    limits: &Limits,
) -> Result<Vec<AlphaEntry>> {
    let mut entries = Vec::with_capacity(max_k as usize);
    entries.push(direct_with_escalation(1, p, pi, limits)?);
    for k in 2..=max_k {
        let prev = entries.last().expect("nonempty");
        let bit = BigInt::from(prev.twice_beta_floor);
        let alpha = (&prev.alpha << 1u32) + &bit;
        let beta = prev.beta.mul_pow2(1).add_int(&-&bit);

        let stepped = match half_side(&beta) {
            Some(twice_beta_floor) if !beta.lo_mantissa().is_zero() && beta.hi() < 1.into() => {
                Some(AlphaEntry {
                    k,
                    gamma: gamma_from_alpha(k, &alpha),
                    alpha_is_odd: alpha.is_odd(),
                    alpha,
                    beta,
                    twice_beta_floor,
                })
            }
            _ => None,
        };

        let entry = match stepped {
            Some(entry) if k % SPOT_CHECK_STRIDE != 0 => entry,
            Some(entry) => {
                let direct = direct_with_escalation(k, p, pi, limits)?;
                if direct.alpha != entry.alpha {
                    return Err(Error::RecurrenceMismatch {
                        k,
                        recurrence: entry.alpha,
                        direct: direct.alpha,
                    });
                }
                direct
            }
            // doubling widened β past a decision boundary: start over from π
            None => {
                let direct = direct_with_escalation(k, p, pi, limits)?;
                if direct.alpha.clone() >> 1u32 != prev.alpha {
                    return Err(Error::RecurrenceMismatch {
                        k,
                        recurrence: prev.alpha.clone() << 1u32,
                        direct: direct.alpha,
                    });
                }
                direct
            }
        };
        entries.push(entry);
    }
    Ok(entries)
}
