//! Integer helpers shared by the surd and continued-fraction code.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Euclidean gcd on magnitudes.
///
/// Starts with a remainder step, so a huge operand against a small one costs a
/// single division. The binary algorithm behind `Integer::gcd` walks the huge
/// operand bit by bit in that case.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut x, mut y) = if a.magnitude() >= b.magnitude() {
        (a.abs(), b.abs())
    } else {
        (b.abs(), a.abs())
    };
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    x
}

/// gcd of three integers, smallest operand first.
pub fn gcd3(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    let mut ops = [a, b, c];
    ops.sort_by(|x, y| x.magnitude().cmp(y.magnitude()));
    let g = gcd(ops[0], ops[1]);
    if g.is_one() {
        return g;
    }
    gcd(&g, ops[2])
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// Splits `n >= 1` as `k^2 * m` with `m` square-free. Returns `(k, m)`.
///
/// Trial division runs up to the cube root; whatever cofactor is left has at
/// most two prime factors above that bound, so it is either square-free or a
/// perfect square.
pub fn square_free_split(n: u64) -> (u64, u64) {
    debug_assert!(n >= 1);
    let mut k = 1u64;
    let mut m = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            k *= p.pow(e / 2);
            if e % 2 == 1 {
                m *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.isqrt();
    if r > 1 && r * r == rest {
        k *= r;
    } else {
        m *= rest;
    }
    (k, m)
}

/// Floor division for signed big integers.
pub fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Ceiling division for signed big integers.
pub fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

pub fn sign_of(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn to_u64(x: &BigInt) -> Option<u64> {
    x.to_u64()
}
