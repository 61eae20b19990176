//! Certified decimal rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::real::{ExactReal, RefinementBudget};
use super::surd::QuadElem;
use crate::error::{Error, Result};

/// How the last printed digit is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecimalMode {
    /// Round to nearest; error at most half a unit in the last place.
    Nearest,
    /// Cut after the last digit; printed prefixes never change as digits grow.
    Truncate,
}

/// `x` rounded to `digits` places after the decimal point.
pub fn to_decimal(x: &ExactReal, digits: usize) -> Result<String> {
    to_decimal_with(
        x,
        digits,
        DecimalMode::Nearest,
        &RefinementBudget::default(),
    )
}

/// `x` truncated to `digits` places after the decimal point.
pub fn to_decimal_truncated(x: &ExactReal, digits: usize) -> Result<String> {
    to_decimal_with(
        x,
        digits,
        DecimalMode::Truncate,
        &RefinementBudget::default(),
    )
}

pub fn to_decimal_with(
    x: &ExactReal,
    digits: usize,
    mode: DecimalMode,
    budget: &RefinementBudget,
) -> Result<String> {
    if digits == 0 {
        return Err(Error::Domain("decimal digits must be at least 1".into()));
    }
    let scale = BigInt::from(10).pow(digits as u32);
    // Nearest rounding is the floor of 2*|x|*10^k + 1 over 2.
    let (mul, add, div) = match mode {
        DecimalMode::Truncate => (BigInt::from(1), BigInt::zero(), BigInt::from(1)),
        DecimalMode::Nearest => (BigInt::from(2), BigInt::from(1), BigInt::from(2)),
    };
    let (negative, units) = match x {
        ExactReal::Rational(q) => {
            let n =
                (q.numer().abs() * &scale * &mul + q.denom() * &add).div_floor(&(q.denom() * &div));
            (q.is_negative(), n)
        }
        ExactReal::Surd(s) => {
            let d = s.d();
            let e = s.elem().abs(d);
            let scaled = QuadElem {
                a: &e.a * &scale * &mul + &e.c * &add,
                b: &e.b * &scale * &mul,
                c: &e.c * &div,
            };
            (s.signum() < 0, scaled.floor(d))
        }
        ExactReal::Interval(iv) => {
            let mut iv = iv.clone();
            let zero = BigRational::zero();
            let floor_at = |q: &BigRational| -> BigInt {
                let n = q.numer().abs() * &scale * &mul + q.denom() * &add;
                n.div_floor(&(q.denom() * &div))
            };
            let mut rounds = 0;
            loop {
                let (lo, hi) = (iv.lo().clone(), iv.hi().clone());
                let (neg, a, b) = if lo >= zero {
                    (false, floor_at(&lo), floor_at(&hi))
                } else if hi <= zero {
                    (true, floor_at(&hi), floor_at(&lo))
                } else {
                    // Straddles zero: only a zero result is sign-independent.
                    let m = if super::rcmp(&-&lo, &hi).is_gt() {
                        -lo
                    } else {
                        hi
                    };
                    (false, BigInt::zero(), floor_at(&m))
                };
                if a == b {
                    break (neg && !a.is_zero(), a);
                }
                rounds += 1;
                if rounds > budget.max_digits || !iv.refine() {
                    return Err(Error::Undecided(format!(
                        "enclosure too wide for {digits} digits"
                    )));
                }
            }
        }
    };
    Ok(render_units(negative, &units, digits))
}

fn render_units(negative: bool, units: &BigInt, digits: usize) -> String {
    let mut s = units.to_string();
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let split = s.len() - digits;
    format!(
        "{}{}.{}",
        if negative { "-" } else { "" },
        &s[..split],
        &s[split..]
    )
}
