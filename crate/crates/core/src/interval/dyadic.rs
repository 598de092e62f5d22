use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Signed, Zero};

use crate::error::Error;

/// An exact dyadic rational `mantissa × 2^exponent`.
///
/// Canonical form: zero is `(0, 0)`; any other value has an odd mantissa.
/// Every constructor normalizes, so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Self::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        Self {
            mantissa: mantissa >> tz,
            exponent: exponent + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Self {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::new(n.into(), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// The integer `m` with `self = m × 2^-p`, if one exists.
    pub fn mantissa_at_scale(&self, p: u64) -> Option<BigInt> {
        let shift = self.exponent + p as i64;
        if shift >= 0 {
            Some(&self.mantissa << shift as u64)
        } else if self.is_zero() {
            Some(BigInt::zero())
        } else {
            None
        }
    }

    /// `⌊self × 2^p⌋`.
    pub fn floor_at_scale(&self, p: u64) -> BigInt {
        shift_floor(&self.mantissa, self.exponent + p as i64)
    }

    /// `⌈self × 2^p⌉`.
    pub fn ceil_at_scale(&self, p: u64) -> BigInt {
        -shift_floor(&-&self.mantissa, self.exponent + p as i64)
    }

    /// `⌊self × 10^digits⌋` rendered with `digits` fractional decimals.
    pub fn to_decimal_floor(&self, digits: usize) -> String {
        let scaled = self.scaled_by_pow10(digits, false);
        render_fixed(&scaled, digits)
    }

    /// `⌈self × 10^digits⌉` rendered with `digits` fractional decimals.
    pub fn to_decimal_ceil(&self, digits: usize) -> String {
        let scaled = self.scaled_by_pow10(digits, true);
        render_fixed(&scaled, digits)
    }

    fn scaled_by_pow10(&self, digits: usize, ceil: bool) -> BigInt {
        let pow10: BigInt = BigInt::from(10u32).pow(digits as u32);
        let num = &self.mantissa * pow10;
        if ceil {
            -shift_floor(&-num, self.exponent)
        } else {
            shift_floor(&num, self.exponent)
        }
    }
}

/// `⌊m × 2^shift⌋` for any sign of `shift`.
pub(crate) fn shift_floor(m: &BigInt, shift: i64) -> BigInt {
    if shift >= 0 {
        m << shift as u64
    } else {
        m.div_floor(&(BigInt::from(1) << shift.unsigned_abs()))
    }
}

fn render_fixed(scaled: &BigInt, digits: usize) -> String {
    let sign = if scaled.is_negative() { "-" } else { "" };
    let s = scaled.abs().to_string();
    if digits == 0 {
        return format!("{sign}{s}");
    }
    let s = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{sign}{int}.{frac}")
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &other.mantissa << (other.exponent - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact decimal expansion; every dyadic rational has a finite one.
impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent >= 0 {
            return write!(f, "{}", &self.mantissa << self.exponent as u64);
        }
        // m × 2^-n = m × 5^n / 10^n
        let n = self.exponent.unsigned_abs() as usize;
        let scaled = &self.mantissa * BigInt::from(5u32).pow(n as u32);
        let text = render_fixed(&scaled, n);
        f.write_str(text.trim_end_matches('0').trim_end_matches('.'))
    }
}

/// Parses an exact decimal (`-12.375`, `0.5`, `7`). Decimals that are not
/// dyadic rationals are rejected rather than rounded.
impl FromStr for Dyadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| Error::InvalidArgument(format!("dyadic {s:?}: {reason}"));
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("expected decimal digits"));
        }
        if !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("expected decimal digits after '.'"));
        }
        let digits = format!("{int}{frac}");
        let mut n = BigInt::parse_bytes(digits.as_bytes(), 10).ok_or_else(|| bad("unparsable"))?;
        if negative {
            n = -n;
        }
        let d = frac.len();
        let pow5: BigInt = BigInt::from(5u32).pow(d as u32);
        let (q, r) = n.div_rem(&pow5);
        if !r.is_zero() {
            return Err(bad("not a dyadic rational"));
        }
        Ok(Dyadic::new(q, -(d as i64)))
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_integer(n)
    }
}
