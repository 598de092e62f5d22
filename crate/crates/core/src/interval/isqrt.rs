//! Integer square roots on big integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `⌊√n⌋` for `n ≥ 0`.
pub fn isqrt_floor(n: &BigInt) -> BigInt {
    isqrt_floor_with_hint(n, None)
}

/// `⌈√n⌉` for `n ≥ 0`.
pub fn isqrt_ceil(n: &BigInt) -> BigInt {
    isqrt_ceil_with_hint(n, None)
}

/// `⌊√n⌋` by Newton's method, starting from `hint` when given.
///
/// Any positive start works: one integer Newton step from `x > 0` lands on or
/// above `⌊√n⌋`, after which the iterates decrease strictly until they reach
/// it. A good hint (a nearby previous root) cuts the iteration count to a
/// handful of steps.
pub fn isqrt_floor_with_hint(n: &BigInt, hint: Option<&BigInt>) -> BigInt {
    assert!(!n.is_negative(), "isqrt of negative integer");
    if n.is_zero() {
        return BigInt::zero();
    }

    let mut x = match hint {
        Some(h) if h.is_positive() => h.clone(),
        _ => BigInt::one() << n.bits().div_ceil(2),
    };
    x = (&x + n / &x) >> 1u32;
    if x.is_zero() {
        x = BigInt::one();
    }
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            break;
        }
        x = y;
    }

    // Post-adjustment: the loop ends at ⌊√n⌋, and these make that a checked
    // fact rather than a property of the iteration.
    while &x * &x > *n {
        x -= 1u32;
    }
    loop {
        let next = &x + 1u32;
        if &next * &next <= *n {
            x = next;
        } else {
            break;
        }
    }
    x
}

/// `⌈√n⌉`, see [`isqrt_floor_with_hint`].
pub fn isqrt_ceil_with_hint(n: &BigInt, hint: Option<&BigInt>) -> BigInt {
    let s = isqrt_floor_with_hint(n, hint);
    if &s * &s == *n {
        s
    } else {
        s + 1u32
    }
}
