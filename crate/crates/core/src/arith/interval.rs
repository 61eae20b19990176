//! Refinable rational enclosures.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rcmp;
use super::real::{ArithOp, ExactReal};
use crate::error::{Error, Result};

/// A source that can produce tighter enclosures of one fixed real.
///
/// `refine` takes `&mut self`: a refiner has a single writer at a time.
pub trait Refine: Send + Sync + fmt::Debug {
    /// Next enclosure, or `None` once the source cannot do better.
    fn refine(&mut self) -> Option<(BigRational, BigRational)>;

    fn box_clone(&self) -> Box<dyn Refine>;
}

/// `[lo, hi]` enclosing a real, with an optional handle for tightening it.
#[derive(Debug)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
    refiner: Option<Box<dyn Refine>>,
}

impl Clone for RationalInterval {
    fn clone(&self) -> Self {
        RationalInterval {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            refiner: self.refiner.as_ref().map(|r| r.box_clone()),
        }
    }
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational, refiner: Option<Box<dyn Refine>>) -> Result<Self> {
        if rcmp(&lo, &hi).is_gt() {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(RationalInterval { lo, hi, refiner })
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        rcmp(&self.lo, x).is_le() && rcmp(x, &self.hi).is_le()
    }

    pub fn can_refine(&self) -> bool {
        self.refiner.is_some()
    }

    /// Tightens the enclosure. Returns `false` once the source is exhausted.
    ///
    /// The new enclosure is intersected with the old one, so refinement is
    /// monotone even when a refiner hands back a looser bound.
    pub fn refine(&mut self) -> bool {
        loop {
            let Some(refiner) = self.refiner.as_mut() else {
                return false;
            };
            match refiner.refine() {
                None => {
                    self.refiner = None;
                    return false;
                }
                Some((lo, hi)) => {
                    let lo = if rcmp(&lo, &self.lo).is_gt() {
                        lo
                    } else {
                        self.lo.clone()
                    };
                    let hi = if rcmp(&hi, &self.hi).is_lt() {
                        hi
                    } else {
                        self.hi.clone()
                    };
                    if rcmp(&lo, &hi).is_gt() {
                        // An inconsistent refiner is a bug in the source; stop trusting it.
                        debug_assert!(false, "refiner left the enclosure");
                        self.refiner = None;
                        return false;
                    }
                    if rcmp(&(&hi - &lo), &self.width()).is_lt() {
                        self.lo = lo;
                        self.hi = hi;
                        return true;
                    }
                }
            }
        }
    }

    /// Collapses to a rational when the enclosure is a single point.
    pub fn into_real(self) -> ExactReal {
        if rcmp(&self.lo, &self.hi).is_eq() {
            ExactReal::Rational(self.lo)
        } else {
            ExactReal::Interval(self)
        }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Enclosure of `[d0; d1, ..., dk, x]` for `x` in `[1, inf]`.
pub(crate) fn prefix_enclosure(digits: &[BigInt]) -> (BigRational, BigRational) {
    let (mut h1, mut h0) = (BigInt::one(), BigInt::zero());
    let (mut k1, mut k0) = (BigInt::zero(), BigInt::one());
    for a in digits {
        let h = a * &h1 + &h0;
        let k = a * &k1 + &k0;
        h0 = std::mem::replace(&mut h1, h);
        k0 = std::mem::replace(&mut k1, k);
    }
    let at_inf = BigRational::new(h1.clone(), k1.clone());
    let at_one = BigRational::new(h1 + h0, k1 + k0);
    if rcmp(&at_inf, &at_one).is_le() {
        (at_inf, at_one)
    } else {
        (at_one, at_inf)
    }
}

/// Refines a continued fraction tail one digit at a time, ending at a known final enclosure.
#[derive(Clone, Debug)]
pub(crate) struct DigitRefiner {
    digits: Vec<BigInt>,
    last: (BigRational, BigRational),
    used: usize,
}

impl DigitRefiner {
    /// Starts at the one-digit enclosure `[d0, d0 + 1]`.
    pub fn start(digits: Vec<BigInt>, last: (BigRational, BigRational)) -> RationalInterval {
        debug_assert!(!digits.is_empty());
        let (lo, hi) = prefix_enclosure(&digits[..1]);
        let refiner = DigitRefiner {
            digits,
            last,
            used: 1,
        };
        RationalInterval {
            lo,
            hi,
            refiner: Some(Box::new(refiner)),
        }
    }
}

impl Refine for DigitRefiner {
    fn refine(&mut self) -> Option<(BigRational, BigRational)> {
        if self.used > self.digits.len() {
            return None;
        }
        self.used += 1;
        if self.used > self.digits.len() {
            return Some(self.last.clone());
        }
        Some(prefix_enclosure(&self.digits[..self.used]))
    }

    fn box_clone(&self) -> Box<dyn Refine> {
        Box::new(self.clone())
    }
}

/// Largest working precision an arithmetic refiner will try.
const OP_MAX_BITS: u32 = 1 << 16;

/// Refines the result of an arithmetic operation by refining its operands.
#[derive(Clone, Debug)]
pub(crate) struct OpRefiner {
    op: ArithOp,
    x: ExactReal,
    y: Option<ExactReal>,
    bits: u32,
}

impl OpRefiner {
    pub fn start(op: ArithOp, x: ExactReal, y: Option<ExactReal>) -> Result<ExactReal> {
        let bits = 64;
        let (lo, hi) = op_enclosure(op, &x, y.as_ref(), bits)?;
        let refiner = OpRefiner { op, x, y, bits };
        Ok(RationalInterval {
            lo,
            hi,
            refiner: Some(Box::new(refiner)),
        }
        .into_real())
    }
}

impl Refine for OpRefiner {
    fn refine(&mut self) -> Option<(BigRational, BigRational)> {
        if self.bits >= OP_MAX_BITS {
            return None;
        }
        let mut progressed =
            self.x.has_surd_part() || self.y.as_ref().is_some_and(|y| y.has_surd_part());
        self.bits *= 2;
        progressed |= self.x.refine_step();
        if let Some(y) = self.y.as_mut() {
            progressed |= y.refine_step();
        }
        if !progressed {
            return None;
        }
        op_enclosure(self.op, &self.x, self.y.as_ref(), self.bits).ok()
    }

    fn box_clone(&self) -> Box<dyn Refine> {
        Box::new(self.clone())
    }
}

fn min_max(v: [BigRational; 4]) -> (BigRational, BigRational) {
    let mut lo = v[0].clone();
    let mut hi = v[0].clone();
    for x in &v[1..] {
        if rcmp(x, &lo).is_lt() {
            lo = x.clone();
        }
        if rcmp(x, &hi).is_gt() {
            hi = x.clone();
        }
    }
    (lo, hi)
}

/// Interval evaluation of `op` at the given working precision.
pub(crate) fn op_enclosure(
    op: ArithOp,
    x: &ExactReal,
    y: Option<&ExactReal>,
    bits: u32,
) -> Result<(BigRational, BigRational)> {
    let (xl, xh) = x.enclosure(bits);
    let operand = || {
        y.map(|y| y.enclosure(bits))
            .ok_or_else(|| Error::Domain(format!("{op:?} needs two operands")))
    };
    Ok(match op {
        ArithOp::Neg => (-xh, -xl),
        ArithOp::Abs => {
            if xl >= BigRational::zero() {
                (xl, xh)
            } else if xh <= BigRational::zero() {
                (-xh, -xl)
            } else {
                let m = if rcmp(&-&xl, &xh).is_gt() { -xl } else { xh };
                (BigRational::zero(), m)
            }
        }
        ArithOp::Add => {
            let (yl, yh) = operand()?;
            (xl + yl, xh + yh)
        }
        ArithOp::Sub => {
            let (yl, yh) = operand()?;
            (xl - yh, xh - yl)
        }
        ArithOp::Mul => {
            let (yl, yh) = operand()?;
            min_max([&xl * &yl, &xl * &yh, &xh * &yl, &xh * &yh])
        }
        ArithOp::Div => {
            let (yl, yh) = operand()?;
            let zero = BigRational::zero();
            if yl <= zero && yh >= zero {
                return Err(Error::Undecided("divisor enclosure contains zero".into()));
            }
            let (rl, rh) = (yh.recip(), yl.recip());
            min_max([&xl * &rl, &xl * &rh, &xh * &rl, &xh * &rh])
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn prefix_enclosures_shrink() {
        let digits: Vec<BigInt> = [1, 2, 2, 2, 2].iter().map(|&x| BigInt::from(x)).collect();
        let mut prev = (q(0, 1), q(10, 1));
        for k in 1..=digits.len() {
            let (lo, hi) = prefix_enclosure(&digits[..k]);
            assert!(lo >= prev.0 && hi <= prev.1);
            assert!(&lo * &lo <= q(2, 1) && &hi * &hi >= q(2, 1));
            prev = (lo, hi);
        }
    }

    #[test]
    fn digit_refiner_is_monotone_and_ends() {
        let digits: Vec<BigInt> = [0, 2, 2, 2].iter().map(|&x| BigInt::from(x)).collect();
        let last = (q(4142, 10000), q(4143, 10000));
        let mut iv = DigitRefiner::start(digits, last.clone());
        let mut w = iv.width();
        let mut steps = 0;
        while iv.refine() {
            assert!(iv.width() < w);
            w = iv.width();
            steps += 1;
        }
        assert!(steps >= 3);
        assert!(iv.lo() >= &last.0 && iv.hi() <= &last.1);
        assert!(!iv.can_refine());
    }

    #[test]
    fn point_interval_collapses() {
        let iv = RationalInterval::new(q(1, 2), q(1, 2), None).unwrap();
        assert!(matches!(iv.into_real(), ExactReal::Rational(_)));
        assert!(RationalInterval::new(q(1, 1), q(1, 2), None).is_err());
    }
}
