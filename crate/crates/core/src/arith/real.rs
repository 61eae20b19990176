//! Tagged exact reals with a total, budgeted comparison.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::interval::{OpRefiner, RationalInterval};
use super::rcmp;
use super::surd::{sign_ab, QuadElem, QuadraticSurd};
use crate::error::{Error, Result};

/// An exact value: rational, irrational quadratic surd, or a refinable enclosure.
#[derive(Clone, Debug)]
pub enum ExactReal {
    Rational(BigRational),
    Surd(QuadraticSurd),
    Interval(RationalInterval),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Abs,
    Neg,
}

/// Limits on how much work a comparison may spend refining enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefinementBudget {
    /// Refinement rounds (continued fraction terms) a refiner may consume.
    pub max_digits: usize,
    /// Cap on the bit size of enclosure denominators.
    pub max_bits: u64,
}

impl Default for RefinementBudget {
    fn default() -> Self {
        RefinementBudget {
            max_digits: 10_000,
            max_bits: 1 << 20,
        }
    }
}

impl RefinementBudget {
    pub fn new(max_digits: usize, max_bits: u64) -> Result<Self> {
        if max_digits == 0 || max_bits == 0 {
            return Err(Error::Domain("refinement budget must be positive".into()));
        }
        Ok(RefinementBudget {
            max_digits,
            max_bits,
        })
    }
}

impl From<BigRational> for ExactReal {
    fn from(q: BigRational) -> Self {
        ExactReal::Rational(q)
    }
}

impl From<BigInt> for ExactReal {
    fn from(n: BigInt) -> Self {
        ExactReal::Rational(BigRational::from_integer(n))
    }
}

impl From<i64> for ExactReal {
    fn from(n: i64) -> Self {
        BigInt::from(n).into()
    }
}

impl From<QuadraticSurd> for ExactReal {
    fn from(s: QuadraticSurd) -> Self {
        ExactReal::Surd(s)
    }
}

/// Operands lifted into one quadratic field (`d = None` means both rational).
struct Common {
    x: QuadElem,
    y: QuadElem,
    d: Option<BigInt>,
}

impl ExactReal {
    pub fn ratio(n: i64, d: i64) -> ExactReal {
        ExactReal::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, ExactReal::Interval(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExactReal::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_surd(&self) -> Option<&QuadraticSurd> {
        match self {
            ExactReal::Surd(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_interval(&self) -> Option<&RationalInterval> {
        match self {
            ExactReal::Interval(iv) => Some(iv),
            _ => None,
        }
    }

    pub(crate) fn has_surd_part(&self) -> bool {
        matches!(self, ExactReal::Surd(_))
    }

    /// Rational enclosure; surds are bracketed to `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        match self {
            ExactReal::Rational(q) => (q.clone(), q.clone()),
            ExactReal::Surd(s) => s.enclosure(bits),
            ExactReal::Interval(iv) => (iv.lo().clone(), iv.hi().clone()),
        }
    }

    /// One refinement step for interval values; exact values report `false`.
    pub fn refine_step(&mut self) -> bool {
        match self {
            ExactReal::Interval(iv) => iv.refine(),
            _ => false,
        }
    }

    /// Field element view for exact values, with the radicand of a surd.
    pub(crate) fn field_elem(&self) -> Option<(QuadElem, Option<&BigInt>)> {
        match self {
            ExactReal::Rational(q) => Some((QuadElem::from_rational(q), None)),
            ExactReal::Surd(s) => Some((s.elem(), Some(s.d()))),
            ExactReal::Interval(_) => None,
        }
    }

    fn common_field(&self, other: &ExactReal) -> Option<Common> {
        let (x, dx) = self.field_elem()?;
        let (y, dy) = other.field_elem()?;
        let d = match (dx, dy) {
            (Some(a), Some(b)) if a != b => return None,
            (Some(a), _) | (_, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        Some(Common { x, y, d })
    }

    pub fn add(&self, other: &ExactReal) -> Result<ExactReal> {
        exact_arith(ArithOp::Add, self, Some(other))
    }

    pub fn sub(&self, other: &ExactReal) -> Result<ExactReal> {
        exact_arith(ArithOp::Sub, self, Some(other))
    }

    pub fn mul(&self, other: &ExactReal) -> Result<ExactReal> {
        exact_arith(ArithOp::Mul, self, Some(other))
    }

    pub fn div(&self, other: &ExactReal) -> Result<ExactReal> {
        exact_arith(ArithOp::Div, self, Some(other))
    }

    pub fn abs(&self) -> ExactReal {
        exact_arith(ArithOp::Abs, self, None).expect("abs is total")
    }

    pub fn neg(&self) -> ExactReal {
        exact_arith(ArithOp::Neg, self, None).expect("neg is total")
    }

    pub fn recip(&self) -> Result<ExactReal> {
        ExactReal::from(1).div(self)
    }

    /// Sign with the default budget.
    pub fn signum(&self) -> Result<i8> {
        let o = exact_cmp(self, &ExactReal::from(0), &RefinementBudget::default())?;
        Ok(o as i8)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactReal::Rational(q) => q.to_f64().unwrap_or(f64::NAN),
            ExactReal::Surd(s) => s.to_f64(),
            ExactReal::Interval(iv) => ((iv.lo() + iv.hi()) / BigRational::from_integer(2.into()))
                .to_f64()
                .unwrap_or(f64::NAN),
        }
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactReal::Rational(q) => write!(f, "{q}"),
            ExactReal::Surd(s) => write!(f, "{s}"),
            ExactReal::Interval(iv) => write!(f, "{iv}"),
        }
    }
}

/// Arithmetic closed over a common quadratic field; anything else becomes a
/// refinable enclosure.
pub fn exact_arith(op: ArithOp, x: &ExactReal, y: Option<&ExactReal>) -> Result<ExactReal> {
    match op {
        ArithOp::Neg | ArithOp::Abs => {
            if y.is_some() {
                return Err(Error::Domain(format!("{op:?} takes one operand")));
            }
            return Ok(match x {
                ExactReal::Rational(q) => {
                    ExactReal::Rational(if op == ArithOp::Neg { -q } else { q.abs() })
                }
                ExactReal::Surd(s) => {
                    let e = if op == ArithOp::Neg {
                        s.elem().neg()
                    } else {
                        s.elem().abs(s.d())
                    };
                    e.into_real(s.d())
                }
                ExactReal::Interval(_) => OpRefiner::start(op, x.clone(), None)?,
            });
        }
        _ => {}
    }
    let y = y.ok_or_else(|| Error::Domain(format!("{op:?} needs two operands")))?;

    if let Some(Common { x: ex, y: ey, d }) = x.common_field(y) {
        let Some(d) = d else {
            let (a, b) = (x.as_rational().unwrap(), y.as_rational().unwrap());
            return Ok(ExactReal::Rational(match op {
                ArithOp::Add => a + b,
                ArithOp::Sub => a - b,
                ArithOp::Mul => a * b,
                _ => {
                    if b.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    a / b
                }
            }));
        };
        let r = match op {
            ArithOp::Add => ex.add(&ey),
            ArithOp::Sub => ex.sub(&ey),
            ArithOp::Mul => ex.mul(&ey, &d),
            _ => {
                if ey.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                ex.div(&ey, &d)?
            }
        };
        return Ok(r.into_real(&d));
    }

    let mut y = y.clone();
    if op == ArithOp::Div {
        ensure_nonzero(&mut y, &RefinementBudget::default())?;
    }
    OpRefiner::start(op, x.clone(), Some(y))
}

/// Refines `y` until its enclosure excludes zero.
fn ensure_nonzero(y: &mut ExactReal, budget: &RefinementBudget) -> Result<()> {
    match y {
        ExactReal::Rational(q) if q.is_zero() => Err(Error::DivisionByZero),
        ExactReal::Interval(iv) => {
            let zero = BigRational::zero();
            for _ in 0..budget.max_digits {
                if !iv.contains(&zero) {
                    return Ok(());
                }
                if !iv.refine() {
                    break;
                }
            }
            if iv.contains(&zero) {
                Err(Error::Undecided("cannot prove the divisor nonzero".into()))
            } else {
                Ok(())
            }
        }
        _ => Ok(()),
    }
}

/// Exact sign of `x - y` for two exact values, in the same field or not.
fn exact_sign_diff(x: &ExactReal, y: &ExactReal) -> Option<i8> {
    if let Some(Common { x: ex, y: ey, d }) = x.common_field(y) {
        return Some(match d {
            None => match rcmp(x.as_rational()?, y.as_rational()?) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            },
            Some(d) => ex.sub(&ey).signum(&d),
        });
    }
    let (s1, s2) = (x.as_surd()?, y.as_surd()?);
    Some(cross_field_sign(s1, s2))
}

/// Sign of `s1 - s2` for surds over different radicands.
///
/// Clearing denominators gives `A + B*sqrt(d1) - C*sqrt(d2)`. Write it as
/// `u + v` with `u = A + B*sqrt(d1)` and `v = -C*sqrt(d2)`; when the signs of
/// `u` and `v` disagree, the larger of `u^2` and `v^2` wins, and `u^2 - v^2`
/// lives in `Q(sqrt(d1))` again.
fn cross_field_sign(s1: &QuadraticSurd, s2: &QuadraticSurd) -> i8 {
    let (d1, d2) = (s1.d(), s2.d());
    let a = s1.a() * s2.c() - s2.a() * s1.c();
    let b = s1.b() * s2.c();
    let c = s2.b() * s1.c();
    let su = sign_ab(&a, &b, d1);
    let sv = -super::int::sign_of(&c);
    if su == 0 || sv == 0 || su == sv {
        return if su == 0 { sv } else { su };
    }
    let sq = sign_ab(&(&a * &a + &b * &b * d1 - &c * &c * d2), &(&a * &b * 2), d1);
    match sq {
        1 => su,
        -1 => sv,
        _ => 0,
    }
}

fn denom_bits(q: &BigRational) -> u64 {
    q.denom().bits()
}

/// Total comparison: exact for rationals and surds, budgeted refinement otherwise.
///
/// Returns [`Error::Undecided`] when the enclosures cannot be separated within
/// the budget; `Equal` is only reported when it is provable.
pub fn exact_cmp(x: &ExactReal, y: &ExactReal, budget: &RefinementBudget) -> Result<Ordering> {
    if let Some(s) = exact_sign_diff(x, y) {
        return Ok(s.cmp(&0));
    }
    let (mut x, mut y) = (x.clone(), y.clone());
    let surds = x.has_surd_part() || y.has_surd_part();
    let mut bits: u32 = 64;
    for _ in 0..budget.max_digits {
        let (xl, xh) = x.enclosure(bits);
        let (yl, yh) = y.enclosure(bits);
        if rcmp(&xh, &yl).is_lt() {
            return Ok(Ordering::Less);
        }
        if rcmp(&xl, &yh).is_gt() {
            return Ok(Ordering::Greater);
        }
        let size = [&xl, &xh, &yl, &yh]
            .iter()
            .map(|q| denom_bits(q))
            .max()
            .unwrap_or(0);
        if size > budget.max_bits {
            break;
        }
        let mut progressed = x.refine_step();
        progressed |= y.refine_step();
        if surds && u64::from(bits) < budget.max_bits {
            bits = bits
                .saturating_mul(2)
                .min(budget.max_bits.min(u64::from(u32::MAX)) as u32);
            progressed = true;
        }
        if !progressed {
            break;
        }
    }
    Err(Error::Undecided(format!("could not separate {x} and {y}")))
}
