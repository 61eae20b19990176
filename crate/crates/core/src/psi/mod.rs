//! The irrationality measure function `psi(t) = min_{1<=x<=t} ||x xi||` as an exact step function.
//!
//! `psi` only drops at convergent denominators: for `q_k <= t < q_{k+1}` it
//! equals `|q_k xi - r_k|`. When `q_0 = q_1 = 1` the larger index wins.

mod oracle;

pub use oracle::{brute_psi, brute_psi_prefix, OracleConfig, OracleResult};

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{exact_cmp, rcmp, ExactReal, QuadElem, RefinementBudget};
use crate::cf::{ConvergentRecord, Exactness, NumberSpec};
use crate::error::{Error, Result};

/// `|q_{n-1} xi - r_{n-1}|`, the error of the convergent before index `n`.
#[derive(Clone, Debug)]
pub struct ApproxError {
    pub n: usize,
    pub value: ExactReal,
}

/// One plateau of `psi`: constant on `[t_start, t_end]`.
#[derive(Clone, Debug)]
pub struct PsiStep {
    pub t_start: BigInt,
    pub t_end: BigInt,
    pub k: usize,
    pub q_k: BigInt,
    /// `q_k xi - r_k`; its sign alternates with `k`.
    pub signed: ExactReal,
    /// `|q_k xi - r_k|`.
    pub value: ExactReal,
}

pub(crate) fn require_irrational(spec: &NumberSpec) -> Result<()> {
    if spec.exactness() == Exactness::Rational {
        Err(Error::RationalInput)
    } else {
        Ok(())
    }
}

/// `q xi - r` for a convergent record.
pub fn signed_error(spec: &NumberSpec, rec: &ConvergentRecord) -> Result<ExactReal> {
    let value = spec.value();
    Ok(match &value {
        ExactReal::Surd(s) => QuadElem {
            a: &rec.q * s.a() - &rec.r * s.c(),
            b: &rec.q * s.b(),
            c: s.c().clone(),
        }
        .into_real(s.d()),
        _ => value
            .mul(&ExactReal::from(rec.q.clone()))?
            .sub(&ExactReal::from(rec.r.clone()))?,
    })
}

fn enclosures_overlap(x: &ExactReal, y: &ExactReal) -> bool {
    let (xl, xh) = x.enclosure(128);
    let (yl, yh) = y.enclosure(128);
    rcmp(&xl, &yh).is_le() && rcmp(&yl, &xh).is_le()
}

/// `||q_{n-1} xi||` computed directly and through the tail `xi_n`; the two must agree.
pub fn approx_error(spec: &NumberSpec, n: usize) -> Result<ApproxError> {
    require_irrational(spec)?;
    if n == 0 {
        return Err(Error::OutOfRange(
            "approximation errors are indexed from 1".into(),
        ));
    }
    let recs = spec.convergents_upto(n)?;
    let prev = &recs[n - 1];
    let direct = signed_error(spec, prev)?.abs();

    // 1 / (q_{n-1} xi_n + q_{n-2})
    let tail = spec.tail_value(n)?.value;
    let q_before = if n >= 2 {
        recs[n - 2].q.clone()
    } else {
        BigInt::zero()
    };
    let via_tail = tail
        .mul(&ExactReal::from(prev.q.clone()))?
        .add(&ExactReal::from(q_before))?
        .recip()?;

    let agree = if direct.is_exact() && via_tail.is_exact() {
        exact_cmp(&direct, &via_tail, &RefinementBudget::default())? == Ordering::Equal
    } else {
        enclosures_overlap(&direct, &via_tail)
    };
    if !agree {
        return Err(Error::CrossCheckFailure(format!(
            "||q_{}xi|| = {direct} but 1/(q_{} xi_{n} + q_{}) = {via_tail}",
            n - 1,
            n - 1,
            n as i64 - 2
        )));
    }
    Ok(ApproxError { n, value: direct })
}

fn check_t(t: &BigInt) -> Result<()> {
    if t < &BigInt::one() {
        return Err(Error::OutOfRange(format!("t must be at least 1, got {t}")));
    }
    Ok(())
}

/// The record with the largest index `k` such that `q_k <= t`.
pub fn best_denominator(spec: &NumberSpec, t: &BigInt) -> Result<ConvergentRecord> {
    require_irrational(spec)?;
    check_t(t)?;
    let mut best = None;
    for rec in spec.convergents() {
        let rec = rec?;
        if &rec.q > t {
            return Ok(best.expect("q_0 = 1 <= t"));
        }
        best = Some(rec);
    }
    Err(Error::RationalInput)
}

/// `psi_xi(t)` exactly.
pub fn psi_eval(spec: &NumberSpec, t: &BigInt) -> Result<ExactReal> {
    let rec = best_denominator(spec, t)?;
    Ok(signed_error(spec, &rec)?.abs())
}

/// All plateaus covering `[1, t_max]`; the last one is cut at `t_max`.
pub fn psi_steps(spec: &NumberSpec, t_max: &BigInt) -> Result<Vec<PsiStep>> {
    require_irrational(spec)?;
    check_t(t_max)?;
    let recs = spec.convergents_past(t_max)?;
    match recs.last() {
        Some(last) if &last.q > t_max => {}
        _ => return Err(Error::RationalInput),
    }
    // Keep the largest index among equal denominators (q_0 = q_1 = 1).
    let kept: Vec<&ConvergentRecord> = recs
        .iter()
        .enumerate()
        .filter(|(i, r)| recs.get(i + 1).is_none_or(|next| next.q != r.q))
        .map(|(_, r)| r)
        .collect();
    let mut steps = Vec::with_capacity(kept.len());
    for pair in kept.windows(2) {
        let (rec, next) = (pair[0], pair[1]);
        let end = &next.q - 1u32;
        let t_end = if &end < t_max { end } else { t_max.clone() };
        let signed = signed_error(spec, rec)?;
        steps.push(PsiStep {
            t_start: rec.q.clone(),
            t_end,
            k: rec.n,
            q_k: rec.q.clone(),
            value: signed.abs(),
            signed,
        });
    }
    Ok(steps)
}
