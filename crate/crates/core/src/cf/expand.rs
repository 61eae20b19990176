//! Continued fraction expansions of rationals, surds, periodic digit lists, and enclosures.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{canonicalize_surd, ExactReal, QuadElem, QuadraticSurd, Rational};
use crate::error::{Error, Result};

/// Canonical expansion `[a0; a1, ..., ak]` of `p/q` by the Euclidean algorithm.
///
/// The last digit is at least 2 whenever `k >= 1`.
pub fn cf_of_rational(p: &BigInt, q: &BigInt) -> Result<Vec<BigInt>> {
    if !q.is_positive() {
        return Err(Error::Domain(format!("denominator {q} must be positive")));
    }
    let mut digits = Vec::new();
    let (mut num, mut den) = (p.clone(), q.clone());
    loop {
        let (a, r) = num.div_mod_floor(&den);
        digits.push(a);
        if r.is_zero() {
            break;
        }
        num = den;
        den = r;
    }
    Ok(digits)
}

/// Eventually periodic expansion `(preperiod, period)` of an irrational surd.
///
/// The preperiod always holds `a0`, so a purely periodic value such as the
/// golden ratio comes out as `([1], [1])`.
pub fn cf_of_surd(s: &QuadraticSurd) -> (Vec<BigInt>, Vec<BigInt>) {
    let p = Periodic::from_surd(s);
    (p.pre, p.period)
}

/// An eventually periodic expansion with the exact tail at every position.
#[derive(Clone, Debug)]
pub(crate) struct Periodic {
    pub pre: Vec<BigInt>,
    pub period: Vec<BigInt>,
    /// `tails[i]` is the value of `[c_i; c_{i+1}, ...]` for the digit list `pre ++ period`.
    pub tails: Vec<QuadraticSurd>,
}

impl Periodic {
    /// Runs the `(P + sqrt(D)) / Q` recurrence until a state repeats.
    pub fn from_surd(s: &QuadraticSurd) -> Periodic {
        // (a + b sqrt d)/c = (P + sqrt(D))/Q with D = b^2 d and the sign of b folded into P, Q.
        let (mut p, mut q) = if s.b().is_positive() {
            (s.a().clone(), s.c().clone())
        } else {
            (-s.a(), -s.c())
        };
        let mut big_d = s.b() * s.b() * s.d();
        let mut root_mult = s.b().abs();
        if !(&big_d - &p * &p).is_multiple_of(&q) {
            let qa = q.abs();
            p *= &qa;
            big_d *= &q * &q;
            root_mult *= &qa;
            q *= qa;
        }

        let d = s.d().clone();
        let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
        let mut digits = Vec::new();
        let mut tails = Vec::new();
        let start = loop {
            if let Some(&i) = seen.get(&(p.clone(), q.clone())) {
                break i;
            }
            seen.insert((p.clone(), q.clone()), digits.len());
            let tail = QuadElem {
                a: p.clone(),
                b: root_mult.clone(),
                c: q.clone(),
            };
            let a = tail.floor(&d);
            match tail.into_real(&d) {
                ExactReal::Surd(t) => tails.push(t),
                other => unreachable!("tail of an irrational became {other}"),
            }
            let p_next = &a * &q - &p;
            let q_next = (&big_d - &p_next * &p_next) / &q;
            digits.push(a);
            p = p_next;
            q = q_next;
        };

        let mut period = digits.split_off(start);
        let mut pre = digits;
        if pre.is_empty() {
            // Rotate one digit into the preperiod so that a0 is explicit.
            let first = period.remove(0);
            period.push(first.clone());
            pre.push(first);
            tails.push(tails[0].clone());
        }
        Periodic { pre, period, tails }
    }

    /// Solves the fixed point of the period, then folds the preperiod back on.
    pub fn from_digits(pre: &[BigInt], period: &[BigInt]) -> Result<Periodic> {
        debug_assert!(!pre.is_empty() && !period.is_empty());
        // [p0; ..., p_{L-1}, x] = (u x + v) / (w x + z)
        let (mut u, mut v) = (BigInt::one(), BigInt::zero());
        let (mut w, mut z) = (BigInt::zero(), BigInt::one());
        for a in period {
            let nu = a * &u + &v;
            let nw = a * &w + &z;
            v = std::mem::replace(&mut u, nu);
            z = std::mem::replace(&mut w, nw);
        }
        // w x^2 + (z - u) x - v = 0, root above 1.
        let disc = (&z - &u) * (&z - &u) + BigInt::from(4) * &v * &w;
        let fixed = match canonicalize_surd(&u - &z, BigInt::one(), disc, BigInt::from(2) * &w)? {
            ExactReal::Surd(x) => x,
            other => {
                return Err(Error::Domain(format!(
                    "periodic expansion collapsed to rational {other}"
                )))
            }
        };
        let d = fixed.d().clone();

        let n = pre.len() + period.len();
        let mut tails = vec![fixed.clone(); n];
        let mut cur = fixed.elem();
        for i in (0..n).rev() {
            let digit = if i < pre.len() {
                &pre[i]
            } else {
                &period[i - pre.len()]
            };
            cur = QuadElem::from_int(digit.clone()).add(&cur.recip(&d)?);
            match cur.clone().into_real(&d) {
                ExactReal::Surd(t) => tails[i] = t,
                other => unreachable!("tail of an irrational became {other}"),
            }
        }
        debug_assert_eq!(tails[pre.len()], fixed);
        Ok(Periodic {
            pre: pre.to_vec(),
            period: period.to_vec(),
            tails,
        })
    }

    fn slot(&self, n: usize) -> usize {
        if n < self.pre.len() {
            n
        } else {
            self.pre.len() + (n - self.pre.len()) % self.period.len()
        }
    }

    pub fn digit(&self, n: usize) -> &BigInt {
        let i = self.slot(n);
        if i < self.pre.len() {
            &self.pre[i]
        } else {
            &self.period[i - self.pre.len()]
        }
    }

    pub fn tail(&self, n: usize) -> &QuadraticSurd {
        &self.tails[self.slot(n)]
    }

    pub fn value(&self) -> &QuadraticSurd {
        &self.tails[0]
    }
}

/// Digits certified by the interval Gauss map on `[lo, hi]`.
#[derive(Clone, Debug)]
pub(crate) struct GaussExpansion {
    pub digits: Vec<BigInt>,
    /// `intervals[i]` encloses the tail at position `i`.
    pub intervals: Vec<(Rational, Rational)>,
}

/// Upper bound on Gauss map steps; enclosure widths at least double per step in practice.
const GAUSS_MAX_STEPS: usize = 100_000;

impl GaussExpansion {
    /// Emits a digit only while both endpoints share the same floor.
    pub fn new(lo: &Rational, hi: &Rational) -> GaussExpansion {
        let mut digits = Vec::new();
        let mut intervals = Vec::new();
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        while digits.len() < GAUSS_MAX_STEPS {
            let a = lo.floor();
            if a != hi.floor() {
                break;
            }
            digits.push(a.to_integer());
            intervals.push((lo.clone(), hi.clone()));
            let (flo, fhi) = (&lo - &a, &hi - &a);
            if flo.is_zero() {
                // The tail is unbounded above: nothing more can be certified.
                break;
            }
            lo = fhi.recip();
            hi = flo.recip();
        }
        GaussExpansion { digits, intervals }
    }
}

/// Exact value of a finite digit list.
pub(crate) fn eval_finite(digits: &[BigInt]) -> BigRational {
    let mut it = digits.iter().rev();
    let mut acc = BigRational::from_integer(it.next().cloned().unwrap_or_default());
    for a in it {
        acc = BigRational::from_integer(a.clone()) + acc.recip();
    }
    acc
}
