//! Brute-force `psi` by direct scan over fixed-point enclosures.
//!
//! Shares nothing with the convergent path: surds are bracketed with integer
//! square roots, periodic digit lists by their convergents, and decimal
//! sources by their own endpoints.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{int, rcmp, Rational};
use crate::cf::{NumberSpec, Source};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Starting working precision; doubled up to three times on ambiguity.
    pub precision_bits: u32,
    /// Largest `t` the oracle accepts.
    pub t_cap: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            precision_bits: 128,
            t_cap: 1_000_000,
        }
    }
}

impl OracleConfig {
    pub fn new(precision_bits: u32, t_cap: u64) -> Result<Self> {
        if precision_bits < 64 {
            return Err(Error::Domain(
                "oracle precision must be at least 64 bits".into(),
            ));
        }
        if t_cap == 0 {
            return Err(Error::Domain("oracle t cap must be positive".into()));
        }
        Ok(OracleConfig {
            precision_bits,
            t_cap,
        })
    }
}

/// Enclosure `[lo, hi]` of `psi(t)` and the unique minimizing `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub t: u64,
    pub argmin: u64,
    pub lo: Rational,
    pub hi: Rational,
    /// Precision the scan settled at.
    pub bits: u32,
}

/// `psi(t)` by scanning every `x <= t`.
pub fn brute_psi(spec: &NumberSpec, t: u64, cfg: &OracleConfig) -> Result<OracleResult> {
    let mut all = brute_psi_prefix(spec, t, cfg)?;
    Ok(all.pop().expect("t >= 1"))
}

/// `psi(t)` for every `t` in `1..=t_max`, as one running-minimum scan.
pub fn brute_psi_prefix(
    spec: &NumberSpec,
    t_max: u64,
    cfg: &OracleConfig,
) -> Result<Vec<OracleResult>> {
    if t_max == 0 {
        return Err(Error::OutOfRange("t must be at least 1".into()));
    }
    if t_max > cfg.t_cap {
        return Err(Error::OutOfRange(format!(
            "t = {t_max} exceeds the oracle cap {}",
            cfg.t_cap
        )));
    }
    let mut bits = cfg.precision_bits;
    let last = cfg.precision_bits.saturating_mul(8);
    loop {
        let (start, width) = frac_enclosure(spec, bits)?;
        let scanned = if bits == 128 {
            scan_u128(&start, &width, t_max)
        } else {
            scan_big(&start, &width, bits, t_max)
        };
        if let Some(rows) = scanned {
            let scale = BigInt::one() << bits;
            return Ok(rows
                .into_iter()
                .enumerate()
                .map(|(i, (argmin, lo, hi))| OracleResult {
                    t: i as u64 + 1,
                    argmin,
                    lo: BigRational::new(lo, scale.clone()),
                    hi: BigRational::new(hi, scale.clone()),
                    bits,
                })
                .collect());
        }
        if bits >= last {
            return Err(Error::PrecisionExhausted { bits });
        }
        bits *= 2;
    }
}

/// `xi * 2^bits` lies in `[start, start + width]` modulo `2^bits`.
fn frac_enclosure(spec: &NumberSpec, bits: u32) -> Result<(BigUint, BigUint)> {
    let scale = BigInt::one() << bits;
    let (lo, hi) = match spec.source() {
        Source::Rational(_) => return Err(Error::RationalInput),
        Source::Surd(s) => {
            let s_root = int::isqrt(&(s.b() * s.b() * s.d() * &scale * &scale));
            let base = s.a() * &scale;
            // b sqrt(d) 2^bits lies strictly between consecutive integers around s_root.
            let (num_lo, num_hi) = if s.b().sign() == Sign::Plus {
                (&base + &s_root, &base + &s_root + 1)
            } else {
                (&base - &s_root - 1, &base - &s_root)
            };
            (num_lo.div_floor(s.c()), int::div_ceil(&num_hi, s.c()))
        }
        Source::ExplicitCf { period: None, .. } => return Err(Error::RationalInput),
        Source::ExplicitCf { .. } => {
            // Consecutive convergents bracket the value within 1/(q_k q_{k+1}).
            let target = &scale * 2;
            let (mut r0, mut q0) = (BigInt::zero(), BigInt::one());
            let (mut r1, mut q1) = (BigInt::one(), BigInt::zero());
            let mut n = 0;
            loop {
                let a = spec.digit(n)?.expect("periodic digits never end");
                let r = &a * &r1 + &r0;
                let q = &a * &q1 + &q0;
                r0 = std::mem::replace(&mut r1, r);
                q0 = std::mem::replace(&mut q1, q);
                if n >= 1 && &q0 * &q1 >= target {
                    break;
                }
                n += 1;
            }
            let (x, y) = (BigRational::new(r0, q0), BigRational::new(r1, q1));
            let (lo, hi) = if rcmp(&x, &y).is_lt() { (x, y) } else { (y, x) };
            let s = BigRational::from_integer(scale.clone());
            (
                (lo * &s).floor().to_integer(),
                (hi * &s).ceil().to_integer(),
            )
        }
        Source::DecimalEnclosure { lo, hi } => {
            let s = BigRational::from_integer(scale.clone());
            (
                (lo * &s).floor().to_integer(),
                (hi * &s).ceil().to_integer(),
            )
        }
    };
    let start = lo.mod_floor(&scale);
    let width = hi - lo;
    Ok((
        start.to_biguint().expect("mod_floor is non-negative"),
        width.to_biguint().expect("enclosure is ordered"),
    ))
}

type Rows<T> = Vec<(u64, T, T)>;

/// Running minimum over `x = 1..=t_max` given per-`x` distance enclosures.
///
/// Returns `None` as soon as two candidates cannot be ordered.
fn running_min<T: Ord + Clone>(t_max: u64, mut dist: impl FnMut(u64) -> (T, T)) -> Option<Rows<T>> {
    let mut rows = Vec::with_capacity(t_max as usize);
    let (mut blo, mut bhi) = dist(1);
    let mut arg = 1;
    rows.push((arg, blo.clone(), bhi.clone()));
    for x in 2..=t_max {
        let (lo, hi) = dist(x);
        if hi < blo {
            (blo, bhi, arg) = (lo, hi, x);
        } else if lo <= bhi {
            return None;
        }
        rows.push((arg, blo.clone(), bhi.clone()));
    }
    Some(rows)
}

fn scan_u128(start: &BigUint, width: &BigUint, t_max: u64) -> Option<Rows<BigInt>> {
    const HALF: u128 = 1 << 127;
    let start = start.to_u128()?;
    let width = width.to_u128()?;
    let fold = |y: u128| if y <= HALF { y } else { y.wrapping_neg() };
    let rows = running_min(t_max, |x| {
        let u = start.wrapping_mul(x as u128);
        let Some(w) = width.checked_mul(x as u128).filter(|w| *w < HALF) else {
            return (0, HALF);
        };
        let (end, wrapped) = u.overflowing_add(w);
        let (fu, fe) = (fold(u), fold(end));
        if wrapped {
            (0, fu.max(fe))
        } else if u <= HALF && end >= HALF {
            (fu.min(fe), HALF)
        } else {
            (fu.min(fe), fu.max(fe))
        }
    })?;
    Some(
        rows.into_iter()
            .map(|(a, lo, hi)| (a, BigInt::from(lo), BigInt::from(hi)))
            .collect(),
    )
}

fn scan_big(start: &BigUint, width: &BigUint, bits: u32, t_max: u64) -> Option<Rows<BigInt>> {
    let modulus = BigUint::one() << bits;
    let half = BigUint::one() << (bits - 1);
    let fold = |y: &BigUint| if y <= &half { y.clone() } else { &modulus - y };
    let mut u = BigUint::zero();
    let rows = running_min(t_max, |x| {
        u += start;
        if u >= modulus {
            u -= &modulus;
        }
        let w = width * x;
        if w >= half {
            return (BigUint::zero(), half.clone());
        }
        let end = &u + &w;
        if end >= modulus {
            let fe = fold(&(&end - &modulus));
            (BigUint::zero(), fold(&u).max(fe))
        } else {
            let (fu, fe) = (fold(&u), fold(&end));
            if u <= half && end >= half {
                (fu.min(fe), half.clone())
            } else {
                (fu.clone().min(fe.clone()), fu.max(fe))
            }
        }
    })?;
    Some(
        rows.into_iter()
            .map(|(a, lo, hi)| (a, BigInt::from(lo), BigInt::from(hi)))
            .collect(),
    )
}
