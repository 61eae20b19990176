//! Quadratic surds `(a + b*sqrt(d)) / c` and raw arithmetic in `Q(sqrt(d))`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::int::{self, div_floor, gcd3, sign_of};
use super::real::ExactReal;
use crate::error::{Error, Result};

/// A canonical irrational quadratic surd `(a + b*sqrt(d)) / c`.
///
/// `d` is square-free and at least 2, `c > 0`, `gcd(a, b, c) = 1` and `b != 0`.
/// Values with `b = 0` are never stored here; they become [`ExactReal::Rational`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    d: BigInt,
    c: BigInt,
}

/// An element `(a + b*sqrt(d)) / c` of a fixed field, not reduced.
///
/// Intermediate results of long computations live here so that no gcd is
/// paid until a canonical value is actually needed. `c` is nonzero.
#[derive(Clone, Debug)]
pub(crate) struct QuadElem {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

/// Canonicalizes `(a + b*sqrt(d)) / c` into a surd, or a rational when the value is rational.
pub fn canonicalize_surd(a: BigInt, b: BigInt, d: BigInt, c: BigInt) -> Result<ExactReal> {
    if c.is_zero() {
        return Err(Error::Domain("surd denominator is zero".into()));
    }
    if d.is_negative() {
        return Err(Error::Domain(format!("sqrt({d}) is not real")));
    }
    if b.is_zero() || d.is_zero() {
        return Ok(ExactReal::Rational(BigRational::new(a, c)));
    }
    let small =
        int::to_u64(&d).ok_or_else(|| Error::Domain(format!("radicand {d} exceeds 64 bits")))?;
    let (k, m) = int::square_free_split(small);
    let b = b * BigInt::from(k);
    if m == 1 {
        return Ok(ExactReal::Rational(BigRational::new(a + b, c)));
    }
    Ok(QuadElem { a, b, c }.into_real(&BigInt::from(m)))
}

impl QuadraticSurd {
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub(crate) fn elem(&self) -> QuadElem {
        QuadElem {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
        }
    }

    /// Sign of the value: always -1 or +1, a surd is never zero.
    pub fn signum(&self) -> i8 {
        sign_ab(&self.a, &self.b, &self.d)
    }

    pub fn floor(&self) -> BigInt {
        self.elem().floor(&self.d)
    }

    /// The Galois conjugate `(a - b*sqrt(d)) / c`.
    pub fn conjugate(&self) -> QuadraticSurd {
        QuadraticSurd {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
            c: self.c.clone(),
        }
    }

    /// Rational enclosure of width `2^-bits`: `floor(x*2^bits)/2^bits < x < (floor + 1)/2^bits`.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let scale = BigInt::one() << bits;
        let scaled = QuadElem {
            a: &self.a * &scale,
            b: &self.b * &scale,
            c: self.c.clone(),
        };
        let lo = scaled.floor(&self.d);
        let hi = &lo + 1;
        (
            BigRational::new(lo, scale.clone()),
            BigRational::new(hi, scale),
        )
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        (f(&self.a) + f(&self.b) * f(&self.d).sqrt()) / f(&self.c)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}*sqrt({}))/{}",
            self.a,
            op,
            self.b.abs(),
            self.d,
            self.c
        )
    }
}

/// Exact sign of `a + b*sqrt(d)` for `d >= 0`.
pub(crate) fn sign_ab(a: &BigInt, b: &BigInt, d: &BigInt) -> i8 {
    let sa = sign_of(a);
    let sb = sign_of(b);
    if sb == 0 || d.is_zero() {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(b * b * d)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

impl QuadElem {
    pub fn from_int(x: BigInt) -> Self {
        QuadElem {
            a: x,
            b: BigInt::zero(),
            c: BigInt::one(),
        }
    }

    pub fn from_rational(x: &BigRational) -> Self {
        QuadElem {
            a: x.numer().clone(),
            b: BigInt::zero(),
            c: x.denom().clone(),
        }
    }

    /// Sign of the value in `Q(sqrt(d))`.
    pub fn signum(&self, d: &BigInt) -> i8 {
        sign_ab(&self.a, &self.b, d) * sign_of(&self.c)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &QuadElem) -> QuadElem {
        if self.c == o.c {
            return QuadElem {
                a: &self.a + &o.a,
                b: &self.b + &o.b,
                c: self.c.clone(),
            };
        }
        QuadElem {
            a: &self.a * &o.c + &o.a * &self.c,
            b: &self.b * &o.c + &o.b * &self.c,
            c: &self.c * &o.c,
        }
    }

    pub fn neg(&self) -> QuadElem {
        QuadElem {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
        }
    }

    pub fn sub(&self, o: &QuadElem) -> QuadElem {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &QuadElem, d: &BigInt) -> QuadElem {
        QuadElem {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
            c: &self.c * &o.c,
        }
    }

    /// `1 / self`, multiplying through by the conjugate.
    pub fn recip(&self, d: &BigInt) -> Result<QuadElem> {
        let norm = &self.a * &self.a - &self.b * &self.b * d;
        if norm.is_zero() {
            // Only reachable when the element is zero, d being square-free.
            return Err(Error::DivisionByZero);
        }
        Ok(QuadElem {
            a: &self.c * &self.a,
            b: -(&self.c * &self.b),
            c: norm,
        })
    }

    pub fn div(&self, o: &QuadElem, d: &BigInt) -> Result<QuadElem> {
        Ok(self.mul(&o.recip(d)?, d))
    }

    pub fn abs(&self, d: &BigInt) -> QuadElem {
        if self.signum(d) < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// `floor(value)`, exact.
    pub fn floor(&self, d: &BigInt) -> BigInt {
        let (a, b, c) = if self.c.is_negative() {
            (-&self.a, -&self.b, -&self.c)
        } else {
            (self.a.clone(), self.b.clone(), self.c.clone())
        };
        if b.is_zero() || d.is_zero() {
            return div_floor(&a, &c);
        }
        // b*sqrt(d) is irrational and lies strictly between s and s + 1 (or
        // their negatives), and no multiple of c fits strictly between two
        // consecutive integers.
        let s = int::isqrt(&(&b * &b * d));
        if b.is_positive() {
            div_floor(&(a + s), &c)
        } else {
            div_floor(&(a - s - 1), &c)
        }
    }

    /// Reduces to canonical form and wraps as an [`ExactReal`].
    ///
    /// `d` must already be square-free and at least 2.
    pub fn into_real(self, d: &BigInt) -> ExactReal {
        let QuadElem {
            mut a,
            mut b,
            mut c,
        } = self;
        debug_assert!(!c.is_zero());
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        if b.is_zero() {
            return ExactReal::Rational(BigRational::new(a, c));
        }
        let g = gcd3(&a, &b, &c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        ExactReal::Surd(QuadraticSurd {
            a,
            b,
            d: d.clone(),
            c,
        })
    }
}
