//! Dyadic interval arithmetic with outward rounding.
//!
//! A [`DyadicInterval`] stores both endpoints as integer mantissas at one
//! common scale `2^-p`. Mantissas are not reduced, so every comparison (and
//! in particular every floor check against an integer) is a plain integer
//! comparison. Operations on intervals of different precision first rescale
//! exactly to the finer of the two.
//!
//! Rounding is always outward: lower endpoints are floored and upper
//! endpoints ceiled at scale `2^-p`, so a single operation adds at most one
//! unit in the last place to each side. Starting from inputs of width at
//! most `2^-p` and magnitude at most 1, no operation produces an interval
//! wider than `2^(-p + GUARD_BITS)`.

mod dyadic;
pub mod isqrt;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use dyadic::Dyadic;
use dyadic::shift_floor;

use crate::error::{Error, Result};
use isqrt::{isqrt_ceil_with_hint, isqrt_floor_with_hint};

/// Width budget, in bits above one ulp, for a single operation.
pub const GUARD_BITS: u64 = 2;

/// A closed interval `[lo, hi]` with endpoints `lo_m × 2^-p`, `hi_m × 2^-p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    lo: BigInt,
    hi: BigInt,
    precision: u64,
}

/// Result of [`iv_floor_certified`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Floor {
    /// Every point of the interval has this floor.
    Certain(BigInt),
    /// The interval reaches an integer above its lower endpoint's floor.
    Indeterminate,
}

impl Floor {
    pub fn certain(self) -> Option<BigInt> {
        match self {
            Floor::Certain(n) => Some(n),
            Floor::Indeterminate => None,
        }
    }
}

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << bits
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

impl DyadicInterval {
    /// Builds an interval from mantissas at scale `2^-precision`.
    pub fn from_mantissas(lo: BigInt, hi: BigInt, precision: u64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval endpoints out of order: {lo} > {hi} at 2^-{precision}"
            )));
        }
        Ok(Self { lo, hi, precision })
    }

    pub fn from_integer(n: impl Into<BigInt>, precision: u64) -> Self {
        let m = n.into() << precision;
        Self {
            lo: m.clone(),
            hi: m,
            precision,
        }
    }

    pub fn zero(precision: u64) -> Self {
        Self::from_integer(0, precision)
    }

    /// Smallest interval at scale `2^-precision` containing `[lo, hi]`.
    pub fn from_dyadics(lo: &Dyadic, hi: &Dyadic, precision: u64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval endpoints out of order: {lo} > {hi}"
            )));
        }
        Ok(Self {
            lo: lo.floor_at_scale(precision),
            hi: hi.ceil_at_scale(precision),
            precision,
        })
    }

    pub fn from_dyadic(x: &Dyadic, precision: u64) -> Self {
        Self {
            lo: x.floor_at_scale(precision),
            hi: x.ceil_at_scale(precision),
            precision,
        }
    }

    /// Enclosure of the rational `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, precision: u64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        let scaled = num << precision;
        Ok(Self {
            lo: scaled.div_floor(&den),
            hi: div_ceil(&scaled, &den),
            precision,
        })
    }

    pub fn lo(&self) -> Dyadic {
        Dyadic::new(self.lo.clone(), -(self.precision as i64))
    }

    pub fn hi(&self) -> Dyadic {
        Dyadic::new(self.hi.clone(), -(self.precision as i64))
    }

    pub fn lo_mantissa(&self) -> &BigInt {
        &self.lo
    }

    pub fn hi_mantissa(&self) -> &BigInt {
        &self.hi
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    pub fn width(&self) -> Dyadic {
        Dyadic::new(&self.hi - &self.lo, -(self.precision as i64))
    }

    /// True when `hi - lo ≤ 2^-bits`.
    pub fn width_at_most_pow2(&self, bits: u64) -> bool {
        let w = &self.hi - &self.lo;
        if bits <= self.precision {
            w <= pow2(self.precision - bits)
        } else {
            // 2^-bits is below one ulp: only a point interval qualifies
            w.is_zero()
        }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo() <= x && x <= &self.hi()
    }

    pub fn contains_integer(&self, n: &BigInt) -> bool {
        let m = n << self.precision;
        self.lo <= m && m <= self.hi
    }

    /// Does the interval contain any integer at all?
    pub fn contains_any_integer(&self) -> bool {
        let ceil_lo = div_ceil(&self.lo, &pow2(self.precision));
        (ceil_lo << self.precision) <= self.hi
    }

    /// Certified comparison with the rational `num / den` (`den > 0`).
    ///
    /// `Some(Less)` means the whole interval lies strictly below, `Some(Greater)`
    /// strictly above, `Some(Equal)` that the interval is exactly that point.
    /// `None` means the interval straddles or touches it.
    pub fn cmp_rational(&self, num: &BigInt, den: &BigInt) -> Option<Ordering> {
        assert!(den.is_positive(), "cmp_rational needs a positive denominator");
        let target = num << self.precision;
        let lo = &self.lo * den;
        let hi = &self.hi * den;
        if hi < target {
            Some(Ordering::Less)
        } else if lo > target {
            Some(Ordering::Greater)
        } else if lo == target && hi == target {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn cmp_dyadic(&self, x: &Dyadic) -> Option<Ordering> {
        let (lo, hi) = (self.lo(), self.hi());
        if &hi < x {
            Some(Ordering::Less)
        } else if &lo > x {
            Some(Ordering::Greater)
        } else if &lo == x && &hi == x {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// The same interval at a finer scale (exact) or a coarser one (outward).
    pub fn with_precision(&self, precision: u64) -> Self {
        if precision >= self.precision {
            let s = precision - self.precision;
            Self {
                lo: &self.lo << s,
                hi: &self.hi << s,
                precision,
            }
        } else {
            let s = -((self.precision - precision) as i64);
            Self {
                lo: shift_floor(&self.lo, s),
                hi: -shift_floor(&-&self.hi, s),
                precision,
            }
        }
    }

    /// `self × 2^e`, exact for `e ≥ 0` and rounded outward otherwise.
    pub fn mul_pow2(&self, e: i64) -> Self {
        if e >= 0 {
            Self {
                lo: &self.lo << e as u64,
                hi: &self.hi << e as u64,
                precision: self.precision,
            }
        } else {
            Self {
                lo: shift_floor(&self.lo, e),
                hi: -shift_floor(&-&self.hi, e),
                precision: self.precision,
            }
        }
    }

    /// Exact product with an integer.
    pub fn mul_int(&self, n: &BigInt) -> Self {
        let (a, b) = (&self.lo * n, &self.hi * n);
        let (lo, hi) = if n.is_negative() { (b, a) } else { (a, b) };
        Self {
            lo,
            hi,
            precision: self.precision,
        }
    }

    /// Exact sum with an integer.
    pub fn add_int(&self, n: &BigInt) -> Self {
        let shifted = n << self.precision;
        Self {
            lo: &self.lo + &shifted,
            hi: &self.hi + &shifted,
            precision: self.precision,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: -&self.hi,
            hi: -&self.lo,
            precision: self.precision,
        }
    }

    /// Widens the upper endpoint by `amount ≥ 0`, rounding outward.
    pub fn extend_hi(&self, amount: &Dyadic) -> Self {
        Self {
            lo: self.lo.clone(),
            hi: &self.hi + amount.ceil_at_scale(self.precision),
            precision: self.precision,
        }
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let (a, b) = align(self, other);
        let lo = (&a.lo).max(&b.lo).clone();
        let hi = (&a.hi).min(&b.hi).clone();
        (lo <= hi).then(|| Self {
            lo,
            hi,
            precision: a.precision,
        })
    }

    /// Outward decimal rendering with `digits` fractional decimals.
    pub fn to_decimal_bounds(&self, digits: usize) -> (String, String) {
        (
            self.lo().to_decimal_floor(digits),
            self.hi().to_decimal_ceil(digits),
        )
    }
}

/// Exact endpoint decimals, `[lo, hi] @ 2^-p`.
impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] @ 2^-{}", self.lo(), self.hi(), self.precision)
    }
}

/// Both operands rescaled to the finer precision.
fn align<'a>(
    a: &'a DyadicInterval,
    b: &'a DyadicInterval,
) -> (std::borrow::Cow<'a, DyadicInterval>, std::borrow::Cow<'a, DyadicInterval>) {
    use std::borrow::Cow;
    match a.precision.cmp(&b.precision) {
        Ordering::Equal => (Cow::Borrowed(a), Cow::Borrowed(b)),
        Ordering::Less => (Cow::Owned(a.with_precision(b.precision)), Cow::Borrowed(b)),
        Ordering::Greater => (Cow::Borrowed(a), Cow::Owned(b.with_precision(a.precision))),
    }
}

pub fn iv_add(a: &DyadicInterval, b: &DyadicInterval) -> DyadicInterval {
    let (a, b) = align(a, b);
    DyadicInterval {
        lo: &a.lo + &b.lo,
        hi: &a.hi + &b.hi,
        precision: a.precision,
    }
}

pub fn iv_sub(a: &DyadicInterval, b: &DyadicInterval) -> DyadicInterval {
    let (a, b) = align(a, b);
    DyadicInterval {
        lo: &a.lo - &b.hi,
        hi: &a.hi - &b.lo,
        precision: a.precision,
    }
}

/// Product over all endpoint sign cases; the exact product lives at scale
/// `2^-2p` and is rounded outward back to `2^-p`.
pub fn iv_mul(a: &DyadicInterval, b: &DyadicInterval) -> DyadicInterval {
    let (a, b) = align(a, b);
    let p = a.precision;
    let products = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
    let min = products.iter().min().expect("four products");
    let max = products.iter().max().expect("four products");
    let shift = -(p as i64);
    DyadicInterval {
        lo: shift_floor(min, shift),
        hi: -shift_floor(&-max, shift),
        precision: p,
    }
}

/// Square root via integer square roots of the mantissas at scale `2^-2p`.
pub fn iv_sqrt(a: &DyadicInterval) -> Result<DyadicInterval> {
    iv_sqrt_with_hint(a, None)
}

/// [`iv_sqrt`] with a starting guess (a mantissa at the same scale) for the
/// Newton iteration, typically the root computed one step earlier in a chain.
pub(crate) fn iv_sqrt_with_hint(a: &DyadicInterval, hint: Option<&BigInt>) -> Result<DyadicInterval> {
    if a.lo.is_negative() {
        return Err(Error::NegativeOperand {
            lo: a.lo().to_string(),
        });
    }
    let p = a.precision;
    let lo = isqrt_floor_with_hint(&(&a.lo << p), hint);
    let hi = if a.lo == a.hi {
        let exact = &lo * &lo == (&a.lo << p);
        if exact {
            lo.clone()
        } else {
            &lo + 1u32
        }
    } else {
        isqrt_ceil_with_hint(&(&a.hi << p), Some(&lo))
    };
    Ok(DyadicInterval { lo, hi, precision: p })
}

/// Enclosure of `n / x` over `x ∈ a`.
pub fn iv_div_int_by(n: &BigInt, a: &DyadicInterval) -> Result<DyadicInterval> {
    if !a.lo.is_positive() && !a.hi.is_negative() {
        return Err(Error::DivisorStraddlesZero {
            divisor: a.to_string(),
        });
    }
    let p = a.precision;
    // n / (m × 2^-p) = (n × 2^2p / m) × 2^-p
    let scaled = n << (2 * p);
    Ok(quotient_hull(&[(&scaled, &a.lo), (&scaled, &a.hi)], p))
}

/// Enclosure of `x / y` over `x ∈ a`, `y ∈ b`.
pub fn iv_div(a: &DyadicInterval, b: &DyadicInterval) -> Result<DyadicInterval> {
    if !b.lo.is_positive() && !b.hi.is_negative() {
        return Err(Error::DivisorStraddlesZero {
            divisor: b.to_string(),
        });
    }
    let (a, b) = align(a, b);
    let p = a.precision;
    // (x × 2^-p) / (y × 2^-p) = (x × 2^p / y) × 2^-p
    let (alo, ahi) = (&a.lo << p, &a.hi << p);
    Ok(quotient_hull(
        &[(&alo, &b.lo), (&alo, &b.hi), (&ahi, &b.lo), (&ahi, &b.hi)],
        p,
    ))
}

fn quotient_hull(pairs: &[(&BigInt, &BigInt)], precision: u64) -> DyadicInterval {
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    for (num, den) in pairs {
        let (num, den) = if den.is_negative() {
            (-*num, -*den)
        } else {
            ((*num).clone(), (*den).clone())
        };
        let f = num.div_floor(&den);
        let c = div_ceil(&num, &den);
        lo = Some(match lo {
            Some(l) if l <= f => l,
            _ => f,
        });
        hi = Some(match hi {
            Some(h) if h >= c => h,
            _ => c,
        });
    }
    DyadicInterval {
        lo: lo.expect("nonempty"),
        hi: hi.expect("nonempty"),
        precision,
    }
}

/// The common floor of every point of `a`, when there is one.
pub fn iv_floor_certified(a: &DyadicInterval) -> Floor {
    let n = a.lo.div_floor(&pow2(a.precision));
    let next = (&n + 1u32) << a.precision;
    if a.hi < next {
        Floor::Certain(n)
    } else {
        Floor::Indeterminate
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn iv(lo: &str, hi: &str, p: u64) -> DyadicInterval {
        DyadicInterval::from_dyadics(&lo.parse().unwrap(), &hi.parse().unwrap(), p).unwrap()
    }

    fn int(n: i64, p: u64) -> DyadicInterval {
        DyadicInterval::from_integer(n, p)
    }

    fn rat(d: &Dyadic) -> BigRational {
        if d.exponent() >= 0 {
            BigRational::from_integer(d.mantissa() << d.exponent() as u64)
        } else {
            BigRational::new(d.mantissa().clone(), pow2(d.exponent().unsigned_abs()))
        }
    }

    fn contains_rat(a: &DyadicInterval, x: &BigRational) -> bool {
        &rat(&a.lo()) <= x && x <= &rat(&a.hi())
    }

    #[test]
    fn add_examples() {
        assert_eq!(iv_add(&int(1, 16), &int(2, 16)), int(3, 16));
        let a = iv("0.25", "0.5", 16);
        assert_eq!(iv_add(&int(0, 16), &a), a);
        let s = iv_add(&iv("0.25", "0.5", 16), &iv("0.5", "0.75", 16));
        assert!(s.lo() <= "0.75".parse().unwrap());
        assert!(s.hi() >= "1.25".parse().unwrap());
    }

    #[test]
    fn add_aligns_precision() {
        let s = iv_add(&int(1, 4), &iv("0.125", "0.125", 20));
        assert_eq!(s.precision(), 20);
        assert_eq!(s, iv("1.125", "1.125", 20));
    }

    #[test]
    fn sub_examples() {
        let p = 128;
        let root2 = iv_sqrt(&int(2, p)).unwrap();
        let d = iv_sub(&int(2, p), &root2);
        // 2 - √2 = 0.58578643762690495119831127579030...
        let (lo, hi) = d.to_decimal_bounds(30);
        assert_eq!(&lo[..32], "0.585786437626904951198311275790");
        assert!(hi.starts_with("0.5857864376269049511983112757"));

        let a = iv("0.25", "0.5", 16);
        assert_eq!(iv_sub(&a, &int(0, 16)), a);

        let w = iv_sub(&int(1, 16).with_precision(16), &int(1, 16));
        assert!(w.contains(&Dyadic::zero()));
        let x = iv("1", "2", 16);
        let d = iv_sub(&x, &x);
        assert!(d.contains(&Dyadic::zero()));
        assert!(d.width() <= Dyadic::from_integer(2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(iv_mul(&int(2, 16), &int(3, 16)), int(6, 16));
        let u = iv("-1", "1", 16);
        let sq = iv_mul(&u, &u);
        assert!(sq.lo() <= Dyadic::from_integer(-1) && sq.hi() >= Dyadic::from_integer(1));
        let root2 = iv_sqrt(&int(2, 64)).unwrap();
        assert!(iv_mul(&root2, &root2).contains_integer(&BigInt::from(2)));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(iv_sqrt(&int(4, 32)).unwrap(), int(2, 32));
        assert_eq!(iv_sqrt(&int(0, 32)).unwrap(), int(0, 32));

        let p = 64;
        let r = iv_sqrt(&int(2, p)).unwrap();
        // integer-sqrt oracle at scale 2^(2p)
        let oracle = (BigInt::from(2) << (2 * p)).sqrt();
        assert_eq!(r.lo_mantissa(), &oracle);
        assert_eq!(r.hi_mantissa(), &(oracle + 1));
        assert!(r.width_at_most_pow2(p - 1));
        assert!(r.lo().to_string().starts_with("1.41421356"));
    }

    #[test]
    fn sqrt_of_negative_is_an_error() {
        let err = iv_sqrt(&iv("-0.5", "1", 8)).unwrap_err();
        assert!(matches!(err, Error::NegativeOperand { .. }));
    }

    #[test]
    fn div_int_examples() {
        assert_eq!(iv_div_int_by(&BigInt::from(4), &int(2, 16)).unwrap(), int(2, 16));
        let q = iv_div_int_by(&BigInt::from(22), &int(7, 32)).unwrap();
        // 22/7 = 3.142857..., above any enclosure of pi
        assert_eq!(q.cmp_rational(&BigInt::from(3141593), &BigInt::from(1_000_000)), Some(Ordering::Greater));
        assert_eq!(
            q.cmp_rational(&BigInt::from(22), &BigInt::from(7)),
            None,
            "22/7 itself is not dyadic so it lies strictly inside"
        );
        let err = iv_div_int_by(&BigInt::from(1), &iv("-1", "1", 8)).unwrap_err();
        assert!(matches!(err, Error::DivisorStraddlesZero { .. }));
        let err = iv_div_int_by(&BigInt::from(1), &iv("0", "1", 8)).unwrap_err();
        assert!(matches!(err, Error::DivisorStraddlesZero { .. }));
    }

    #[test]
    fn div_int_negative_divisor() {
        let q = iv_div_int_by(&BigInt::from(3), &iv("-2", "-1", 16)).unwrap();
        assert_eq!(q, iv("-3", "-1.5", 16));
    }

    #[test]
    fn floor_examples() {
        assert_eq!(iv_floor_certified(&iv("2.25", "2.75", 8)), Floor::Certain(BigInt::from(2)));
        let straddle = DyadicInterval::from_dyadics(
            &Dyadic::new(BigInt::from(243), -7), // 1.898...
            &Dyadic::new(BigInt::from(269), -7), // 2.101...
            16,
        )
        .unwrap();
        assert_eq!(iv_floor_certified(&straddle), Floor::Indeterminate);
        assert_eq!(iv_floor_certified(&iv("-0.5", "-0.25", 8)), Floor::Certain(BigInt::from(-1)));
        // hi touching the next integer is not certified
        assert_eq!(iv_floor_certified(&iv("2.5", "3", 8)), Floor::Indeterminate);
        assert_eq!(iv_floor_certified(&iv("3", "3.5", 8)), Floor::Certain(BigInt::from(3)));
    }

    #[test]
    fn display_is_exact() {
        assert_eq!(iv("0.25", "0.75", 4).to_string(), "[0.25, 0.75] @ 2^-4");
    }

    #[test]
    fn rounding_to_coarser_scale_is_outward() {
        let a = DyadicInterval::from_mantissas(BigInt::from(5), BigInt::from(7), 3).unwrap();
        let c = a.with_precision(1);
        assert_eq!(c, DyadicInterval::from_mantissas(BigInt::from(1), BigInt::from(2), 1).unwrap());
    }

    #[test]
    fn mismatched_endpoints_rejected() {
        assert!(DyadicInterval::from_mantissas(BigInt::from(2), BigInt::from(1), 3).is_err());
    }

    fn arb_interval(p: u64) -> impl Strategy<Value = DyadicInterval> {
        (any::<i64>(), 0u32..1 << 20).prop_map(move |(lo, w)| {
            let lo = BigInt::from(lo);
            let hi = &lo + w;
            DyadicInterval::from_mantissas(lo, hi, p).unwrap()
        })
    }

    fn rat_endpoints(a: &DyadicInterval) -> [BigRational; 2] {
        [rat(&a.lo()), rat(&a.hi())]
    }

    proptest! {
        #[test]
        fn containment_soundness(a in arb_interval(40), b in arb_interval(40)) {
            for x in rat_endpoints(&a) {
                for y in rat_endpoints(&b) {
                    prop_assert!(contains_rat(&iv_add(&a, &b), &(&x + &y)));
                    prop_assert!(contains_rat(&iv_sub(&a, &b), &(&x - &y)));
                    prop_assert!(contains_rat(&iv_mul(&a, &b), &(&x * &y)));
                    if let Ok(q) = iv_div(&a, &b) {
                        prop_assert!(contains_rat(&q, &(&x / &y)));
                    }
                    if let Ok(q) = iv_div_int_by(&BigInt::from(7), &b) {
                        prop_assert!(contains_rat(&q, &(BigRational::from_integer(BigInt::from(7)) / &y)));
                    }
                }
                if let Ok(r) = iv_sqrt(&a) {
                    // √x ∈ r  ⇔  lo² ≤ x ≤ hi²
                    let (lo, hi) = (rat(&r.lo()), rat(&r.hi()));
                    prop_assert!(&lo * &lo <= x && x <= &hi * &hi);
                }
            }
        }

        #[test]
        fn width_budget_on_unit_magnitudes(
            alo in 0u64..1 << 30, aw in 0u64..2, blo in 0u64..1 << 30, bw in 0u64..2,
        ) {
            // intervals in [0, 1] of width ≤ 2^-p at p = 30
            let p = 30;
            let a = DyadicInterval::from_mantissas(BigInt::from(alo), BigInt::from((alo + aw).min(1 << 30)), p).unwrap();
            let b = DyadicInterval::from_mantissas(BigInt::from(blo), BigInt::from((blo + bw).min(1 << 30)), p).unwrap();
            let budget = p - GUARD_BITS;
            prop_assert!(iv_add(&a, &b).width_at_most_pow2(budget));
            prop_assert!(iv_sub(&a, &b).width_at_most_pow2(budget));
            prop_assert!(iv_mul(&a, &b).width_at_most_pow2(budget));
            if alo >= 1 << 28 {
                prop_assert!(iv_sqrt(&a).unwrap().width_at_most_pow2(budget));
            }
        }

        #[test]
        fn sqrt_width_bound_above_one(lo in 1u64 << 24..1 << 40, w in 0u64..1 << 16) {
            // width(√a) ≤ width(a) + 2^(-p+1) when a.lo ≥ 1
            let p = 24;
            let a = DyadicInterval::from_mantissas(BigInt::from(lo), BigInt::from(lo + w), p).unwrap();
            let r = iv_sqrt(&a).unwrap();
            let lhs = r.hi_mantissa() - r.lo_mantissa();
            prop_assert!(lhs <= BigInt::from(w) + 2);
        }

        #[test]
        fn floor_never_overclaims(lo in any::<i64>(), w in 0u64..1 << 12, p in 0u64..10) {
            let lo = BigInt::from(lo);
            let hi = &lo + w;
            let a = DyadicInterval::from_mantissas(lo, hi, p).unwrap();
            if let Floor::Certain(n) = iv_floor_certified(&a) {
                let n_d = Dyadic::from_integer(n.clone());
                let n1 = Dyadic::from_integer(n + 1);
                prop_assert!(n_d <= a.lo());
                prop_assert!(a.hi() < n1);
            } else {
                prop_assert!(a.contains_any_integer());
            }
        }

        #[test]
        fn refinement_is_nested(lo in 0u64..1 << 40, w in 1u64..1 << 20, extra in 1u64..32) {
            // a p'-enclosure of the same operands, rounded back to 2^-p, sits inside the p result
            let p = 20;
            let a = DyadicInterval::from_mantissas(BigInt::from(lo), BigInt::from(lo + w), p).unwrap();
            let coarse = iv_sqrt(&iv_mul(&a, &a)).unwrap();
            let fine_a = a.with_precision(p + extra);
            let fine = iv_sqrt(&iv_mul(&fine_a, &fine_a)).unwrap().with_precision(p);
            prop_assert!(coarse.lo_mantissa() <= fine.lo_mantissa());
            prop_assert!(fine.hi_mantissa() <= coarse.hi_mantissa());
        }
    }
}
