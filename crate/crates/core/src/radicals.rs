//! The nested radicals `c_k = √(2 + c_{k-1})`, `c_0 = 0`, and the quantities
//! built from them.
//!
//! `c_k = 2cos(π/2^(k+1))`, so `√(2 - c_{k-1}) = 2sin(π/2^(k+1))` and
//! `√(2 - c_{k-1}) / c_k = tan(π/2^(k+1))`. The subtraction `2 - c_{k-1}`
//! cancels about `2k` leading bits, so it is evaluated with the chain run at
//! `p + 2k + 16` bits.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::interval::{iv_div, iv_sqrt_with_hint, iv_sub, Dyadic, DyadicInterval};
use crate::Limits;

/// Smallest working precision accepted by the public entry points.
pub const MIN_PRECISION: u64 = 8;

/// Extra bits carried on top of the `2k` lost to cancellation.
const CANCELLATION_GUARD: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalState {
    pub k: u64,
    pub c_k: DyadicInterval,
    /// Enclosure of `√(2 - c_{k-1})`, at its own (elevated) precision.
    pub sqrt_two_minus_c_prev: DyadicInterval,
    pub precision: u64,
}

impl RadicalState {
    pub fn new(k: u64, p: u64, limits: &Limits) -> Result<Self> {
        let c_k = compute_c(k, p)?;
        let sqrt_two_minus_c_prev = compute_sqrt_gap(k, p, limits)?;
        Ok(Self {
            k,
            c_k,
            sqrt_two_minus_c_prev,
            precision: p,
        })
    }
}

fn check_precision(p: u64) -> Result<()> {
    if p < MIN_PRECISION {
        return Err(Error::InvalidArgument(format!(
            "precision {p} below the minimum of {MIN_PRECISION} bits"
        )));
    }
    Ok(())
}

fn next_c(prev: &DyadicInterval) -> Result<DyadicInterval> {
    let radicand = prev.add_int(&BigInt::from(2));
    iv_sqrt_with_hint(&radicand, Some(prev.lo_mantissa()))
}

/// Enclosure of `c_k` at scale `2^-p`.
pub fn compute_c(k: u64, p: u64) -> Result<DyadicInterval> {
    check_precision(p)?;
    let mut c = DyadicInterval::zero(p);
    for _ in 0..k {
        c = next_c(&c)?;
    }
    Ok(c)
}

/// Enclosures of `c_0, c_1, ..., c_k` at scale `2^-p`.
pub fn compute_c_chain(k: u64, p: u64) -> Result<Vec<DyadicInterval>> {
    check_precision(p)?;
    let mut chain = Vec::with_capacity(k as usize + 1);
    chain.push(DyadicInterval::zero(p));
    for j in 0..k as usize {
        let c = next_c(&chain[j])?;
        chain.push(c);
    }
    Ok(chain)
}

/// `√(2 - c_{n-1})` and `c_n` for every `n` in `first..=last`.
struct GapRun {
    sqrt_gaps: Vec<DyadicInterval>,
    c: Vec<DyadicInterval>,
}

fn gap_run(first: u64, last: u64, p: u64, limits: &Limits) -> Result<GapRun> {
    check_precision(p)?;
    limits.check_k(first)?;
    limits.check_k(last)?;
    debug_assert!(first <= last);

    let two = DyadicInterval::from_integer(2, 0);
    let mut working = p + 2 * last + CANCELLATION_GUARD;
    loop {
        limits.check_precision(|| format!("2 - c_{} > 0", last - 1), working)?;
        let chain = compute_c_chain(last, working)?;
        let diffs: Vec<DyadicInterval> = (first..=last)
            .map(|n| iv_sub(&two, &chain[n as usize - 1]))
            .collect();
        // 2 - c_{n-1} > 0 is a mathematical fact; if the enclosure cannot
        // show it the working precision is too low.
        if diffs.iter().all(|d| d.lo_mantissa() > &BigInt::from(0)) {
            let sqrt_gaps = diffs
                .iter()
                .map(|d| iv_sqrt_with_hint(d, None))
                .collect::<Result<Vec<_>>>()?;
            let c = chain[first as usize..=last as usize].to_vec();
            return Ok(GapRun { sqrt_gaps, c });
        }
        working *= 2;
    }
}

/// Enclosure of `√(2 - c_{k-1})`, relative width below `2^-p`.
pub fn compute_sqrt_gap(k: u64, p: u64, limits: &Limits) -> Result<DyadicInterval> {
    let mut run = gap_run(k, k, p, limits)?;
    Ok(run.sqrt_gaps.pop().expect("one entry"))
}

/// Enclosure of `√(2 - c_{k-1}) / c_k`, i.e. `tan(π/2^(k+1))`.
pub fn arctan_argument(k: u64, p: u64, limits: &Limits) -> Result<DyadicInterval> {
    let run = gap_run(k, k, p, limits)?;
    iv_div(&run.sqrt_gaps[0], &run.c[0])
}

/// Enclosure of `2^k √(2 - c_{k-1}) = 2^(k+1) sin(π/2^(k+1))`, which lies
/// below π by less than `π³/(6·4^(k+1))`.
pub fn pi_from_radical_limit(k: u64, p: u64, limits: &Limits) -> Result<DyadicInterval> {
    Ok(compute_sqrt_gap(k, p, limits)?.mul_pow2(k as i64))
}

/// Which of the three tail series to sum; all tend to π as `k → ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailVariant {
    /// `2^k Σ_{n≥k} √(2 - c_{n-1}) / c_n`
    Tangent,
    /// `2^(k-1) Σ_{n≥k} √(2 - c_{n-1})`
    Gap,
    /// `2^k Σ_{n≥k} √(2 - c_n)`
    ShiftedGap,
}

impl TailVariant {
    pub const ALL: [TailVariant; 3] = [TailVariant::Tangent, TailVariant::Gap, TailVariant::ShiftedGap];

    /// Bound on the scaled sum of all terms with `n ≥ k + n_terms`.
    ///
    /// From `2 - c_n ≤ π²/4^(n+1) < 16/4^n`: `√(2 - c_n) < 4/2^n`, and with
    /// `c_n ≥ 1` the tangent terms are below `8/2^n`. The geometric tail from
    /// `m` sums to `2C/2^m`; the `2^k` scaling cancels the index offset.
    pub fn remainder_bound(self, n_terms: u64) -> Dyadic {
        let numerator = match self {
            TailVariant::Tangent => 16,
            TailVariant::Gap | TailVariant::ShiftedGap => 8,
        };
        Dyadic::new(BigInt::from(numerator), -(n_terms as i64))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailSum {
    /// Scaled sum of the first `n_terms` terms.
    pub partial: DyadicInterval,
    pub remainder_bound: Dyadic,
    /// `partial` with `remainder_bound` added to its upper endpoint: an
    /// enclosure of the full infinite series at this `k`.
    pub enclosure: DyadicInterval,
}

/// Truncated tail series for π starting at index `k`.
pub fn pi_from_tail_sum(
    k: u64,
    n_terms: u64,
    variant: TailVariant,
    p: u64,
    limits: &Limits,
) -> Result<TailSum> {
    if n_terms == 0 {
        return Err(Error::InvalidArgument("tail sum needs at least one term".into()));
    }
    let last = k + n_terms - 1;
    let partial = match variant {
        TailVariant::Tangent => {
            let run = gap_run(k, last, p, limits)?;
            let mut acc = DyadicInterval::zero(p);
            for (gap, c) in run.sqrt_gaps.iter().zip(&run.c) {
                acc = crate::interval::iv_add(&acc, &iv_div(gap, c)?);
            }
            acc.mul_pow2(k as i64)
        }
        TailVariant::Gap => {
            let run = gap_run(k, last, p, limits)?;
            sum(&run.sqrt_gaps, p).mul_pow2(k as i64 - 1)
        }
        TailVariant::ShiftedGap => {
            // √(2 - c_n) for n = k..=last is √(2 - c_{m-1}) for m = k+1..=last+1
            let run = gap_run(k + 1, last + 1, p, limits)?;
            sum(&run.sqrt_gaps, p).mul_pow2(k as i64)
        }
    };
    let remainder_bound = variant.remainder_bound(n_terms);
    let enclosure = partial.extend_hi(&remainder_bound);
    Ok(TailSum {
        partial,
        remainder_bound,
        enclosure,
    })
}

fn sum(terms: &[DyadicInterval], p: u64) -> DyadicInterval {
    terms
        .iter()
        .fold(DyadicInterval::zero(p), |acc, t| crate::interval::iv_add(&acc, t))
}
