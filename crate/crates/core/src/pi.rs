//! Certified enclosures of π by two independent routes.
//!
//! The primary route is the radical limit `2^k √(2 - c_{k-1}) → π`, whose
//! value is a lower bound; the upper endpoint is raised by a proven
//! truncation bound. The oracle route is Machin's formula
//! `π = 16 atan(1/5) - 4 atan(1/239)` summed term by term in interval
//! arithmetic. The two share nothing but the interval substrate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::interval::{iv_add, iv_sub, Dyadic, DyadicInterval};
use crate::radicals::{self, MIN_PRECISION};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PiMethod {
    RadicalLimit,
    ArctanSeriesOracle,
    Intersection,
}

impl fmt::Display for PiMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PiMethod::RadicalLimit => "radical-limit",
            PiMethod::ArctanSeriesOracle => "arctan-series-oracle",
            PiMethod::Intersection => "intersection",
        })
    }
}

/// An interval proven to contain π, with how it was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiCertificate {
    pub interval: DyadicInterval,
    pub method: PiMethod,
    /// Radical index used, for [`PiMethod::RadicalLimit`].
    pub k_used: Option<u64>,
    /// Requested precision: `interval` is no wider than `2^-precision`.
    pub precision: u64,
}

impl PiCertificate {
    /// `223/71 < lo` and `hi < 22/7`.
    pub fn strictly_inside_dalzell(&self) -> bool {
        use std::cmp::Ordering::{Greater, Less};
        self.interval.cmp_rational(&BigInt::from(223), &BigInt::from(71)) == Some(Greater)
            && self.interval.cmp_rational(&BigInt::from(22), &BigInt::from(7)) == Some(Less)
    }

    /// The weaker overlap form, `lo < 22/7` and `hi > 223/71`.
    pub fn overlaps_dalzell(&self) -> bool {
        let lo_below = self.interval.lo_mantissa() * 7u32 < (BigInt::from(22) << self.interval.precision());
        let hi_above = self.interval.hi_mantissa() * 71u32 > (BigInt::from(223) << self.interval.precision());
        lo_below && hi_above
    }

    pub fn intersect(&self, other: &PiCertificate) -> Result<PiCertificate> {
        let interval = self.interval.intersect(&other.interval).ok_or_else(|| {
            Error::CertificateMismatch(format!(
                "{} {} and {} {} are disjoint",
                self.method, self.interval, other.method, other.interval
            ))
        })?;
        Ok(PiCertificate {
            interval,
            method: PiMethod::Intersection,
            k_used: self.k_used.or(other.k_used),
            precision: self.precision.max(other.precision),
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

/// Radical index used by [`certify_pi`] at precision `p`.
///
/// With `x = π/2^(k+1)`, `π - 2^(k+1) sin x ≤ 2^(k+1) x³/6 = π³/(6·4^(k+1))`,
/// and `π < 4` bounds that by `3/4^k`. `k = p/2 + 3` keeps it below
/// `2^-(p+2)`.
pub fn radical_index_for(p: u64) -> u64 {
    p / 2 + 3
}

/// Upper bound on `π - 2^k √(2 - c_{k-1})`.
pub fn radical_truncation_bound(k: u64) -> Dyadic {
    Dyadic::new(BigInt::from(3), -2 * k as i64)
}

/// π by the radical limit, width at most `2^-p`.
pub fn certify_pi(p: u64, limits: &Limits) -> Result<PiCertificate> {
    check_precision(p)?;
    let k = radical_index_for(p);
    limits.check_k(k).map_err(|_| Error::PrecisionExhausted {
        what: format!("pi at {p} bits (radical index {k} beyond max_k)"),
        ceiling: limits.precision_ceiling,
    })?;
    let bound = radical_truncation_bound(k);
    let mut working = p + 4;
    loop {
        limits.check_precision(|| format!("pi at {p} bits"), working)?;
        let lower = radicals::pi_from_radical_limit(k, working, limits)?;
        let interval = lower.with_precision(p + 4).extend_hi(&bound);
        if interval.width_at_most_pow2(p) {
            return Ok(PiCertificate {
                interval,
                method: PiMethod::RadicalLimit,
                k_used: Some(k),
                precision: p,
            });
        }
        working += 16;
    }
}

/// `atan(1/m)` by its alternating Taylor series, at scale `2^-w`.
fn atan_inv(m: u64, w: u64) -> DyadicInterval {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let threshold = BigInt::one() << w;
    let mut acc = DyadicInterval::zero(w);
    let mut power = m.clone(); // m^(2j+1)
    let mut j: u64 = 0;
    loop {
        let den = &power * (2 * j + 1);
        if den > threshold {
            // alternating with decreasing terms: |remainder| ≤ first omitted term
            let t = DyadicInterval::from_ratio(&BigInt::one(), &den, w)
                .expect("positive denominator")
                .hi_mantissa()
                .clone();
            let slack = DyadicInterval::from_mantissas(-&t, t, w).expect("ordered");
            return iv_add(&acc, &slack);
        }
        let term = DyadicInterval::from_ratio(&BigInt::one(), &den, w).expect("positive denominator");
        acc = if j % 2 == 0 {
            iv_add(&acc, &term)
        } else {
            iv_sub(&acc, &term)
        };
        power = &power * &m2;
        j += 1;
    }
}

/// π by Machin's formula, width at most `2^-p`.
pub fn oracle_pi(p: u64, limits: &Limits) -> Result<PiCertificate> {
    check_precision(p)?;
    let mut working = p + 24 + (64 - p.leading_zeros() as u64);
    loop {
        limits.check_precision(|| format!("oracle pi at {p} bits"), working)?;
        let a = atan_inv(5, working).mul_int(&BigInt::from(16));
        let b = atan_inv(239, working).mul_int(&BigInt::from(4));
        let interval = iv_sub(&a, &b);
        if interval.width_at_most_pow2(p) {
            return Ok(PiCertificate {
                interval,
                method: PiMethod::ArctanSeriesOracle,
                k_used: None,
                precision: p,
            });
        }
        working += 32;
    }
}

/// Intersection of both routes; disjoint enclosures are an error.
pub fn reconciled_pi(p: u64, limits: &Limits) -> Result<PiCertificate> {
    certify_pi(p, limits)?.intersect(&oracle_pi(p, limits)?)
}

pub fn certificate(p: u64, method: PiMethod, limits: &Limits) -> Result<PiCertificate> {
    match method {
        PiMethod::RadicalLimit => certify_pi(p, limits),
        PiMethod::ArctanSeriesOracle => oracle_pi(p, limits),
        PiMethod::Intersection => reconciled_pi(p, limits),
    }
}

/// The first `n` decimal digits of π (`"3.14"` for `n = 3`), truncated.
pub fn pi_digits(n: usize, limits: &Limits) -> Result<String> {
    pi_digits_with(n, PiMethod::RadicalLimit, limits)
}

/// [`pi_digits`] from a chosen route. Precision doubles until both ends of
/// the enclosure agree on every requested digit.
pub fn pi_digits_with(n: usize, method: PiMethod, limits: &Limits) -> Result<String> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one digit".into()));
    }
    let scale: BigInt = BigInt::from(10u32).pow((n - 1) as u32);
    // log2(10) < 3.33
    let mut p = (n as u64 * 333).div_ceil(100) + 16;
    loop {
        limits.check_precision(|| format!("{n} digits of pi"), p)?;
        let cert = certificate(p, method, limits)?;
        let lo = (cert.interval.lo_mantissa() * &scale) >> cert.interval.precision();
        let hi = (cert.interval.hi_mantissa() * &scale) >> cert.interval.precision();
        if lo == hi {
            return Ok(insert_point(&lo.to_string()));
        }
        p *= 2;
    }
}

/// `"31415"` → `"3.1415"`.
pub(crate) fn insert_point(digits: &str) -> String {
    if digits.len() <= 1 {
        return digits.to_string();
    }
    let (int, frac) = digits.split_at(1);
    format!("{int}.{frac}")
}
