//! Sign changes of `D(t) = psi_alpha(t) - psi_beta(t)`.
//!
//! Both functions are constant between consecutive convergent denominators,
//! so `D` is evaluated only at the merged breakpoints.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::One;

use super::guard::PairSession;
use crate::arith::{exact_cmp, ExactReal, RefinementBudget};
use crate::error::{Error, Result};
use crate::psi::{psi_steps, PsiStep};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Minus => '-',
            Sign::Plus => '+',
        }
    }
}

/// `D(t)` at one breakpoint, kept as its two exact operands.
#[derive(Clone, Debug)]
pub struct PsiDifference {
    pub t: BigInt,
    pub psi_alpha: ExactReal,
    pub psi_beta: ExactReal,
}

impl PsiDifference {
    /// `psi_alpha - psi_beta`; an enclosure when the fields differ.
    pub fn value(&self) -> Result<ExactReal> {
        self.psi_alpha.sub(&self.psi_beta)
    }
}

#[derive(Clone, Debug)]
pub struct SignChangeEvent {
    /// First breakpoint where the new sign holds.
    pub t: BigInt,
    pub sign_before: Sign,
    pub sign_after: Sign,
    /// `D` at the previous nonzero breakpoint.
    pub d_before: PsiDifference,
    pub d_after: PsiDifference,
}

/// Inclusive range of `t` where `D(t) = 0` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroInterval {
    pub t_start: BigInt,
    pub t_end: BigInt,
}

#[derive(Clone, Debug)]
pub struct SignChangeReport {
    pub alpha: String,
    pub beta: String,
    pub t_max: BigInt,
    pub events: Vec<SignChangeEvent>,
    pub zeros: Vec<ZeroInterval>,
    /// Breakpoints whose sign could not be decided.
    pub undecided: Vec<BigInt>,
    /// Sign of every maximal run of equal nonzero signs, in order.
    pub runs: Vec<Sign>,
}

impl SignChangeReport {
    pub fn count(&self) -> usize {
        self.events.len()
    }

    /// `-,+,-,...`
    pub fn pattern(&self) -> String {
        let signs: Vec<String> = self.runs.iter().map(|s| s.symbol().to_string()).collect();
        signs.join(",")
    }
}

/// Value of the step covering `t`; `steps` is sorted and `*at` only moves forward.
fn step_at<'a>(steps: &'a [PsiStep], at: &mut usize, t: &BigInt) -> &'a PsiStep {
    while *at + 1 < steps.len() && &steps[*at + 1].t_start <= t {
        *at += 1;
    }
    &steps[*at]
}

/// Scans every breakpoint up to `t_max`.
pub fn sign_changes(session: &PairSession, t_max: &BigInt) -> Result<SignChangeReport> {
    sign_changes_with(session, t_max, &RefinementBudget::default())
}

pub fn sign_changes_with(
    session: &PairSession,
    t_max: &BigInt,
    budget: &RefinementBudget,
) -> Result<SignChangeReport> {
    session.ensure_usable()?;
    if t_max < &BigInt::one() {
        return Err(Error::OutOfRange(format!(
            "t_max must be at least 1, got {t_max}"
        )));
    }
    let sa = psi_steps(&session.alpha, t_max)?;
    let sb = psi_steps(&session.beta, t_max)?;
    let mut points: Vec<&BigInt> = sa.iter().chain(&sb).map(|s| &s.t_start).collect();
    points.sort();
    points.dedup();

    let (mut ia, mut ib) = (0, 0);
    let mut rep = SignChangeReport {
        alpha: session.alpha.label().to_string(),
        beta: session.beta.label().to_string(),
        t_max: t_max.clone(),
        events: Vec::new(),
        zeros: Vec::new(),
        undecided: Vec::new(),
        runs: Vec::new(),
    };
    let mut last: Option<(Sign, PsiDifference)> = None;
    let mut zero_from: Option<BigInt> = None;
    for &t in &points {
        let d = PsiDifference {
            t: t.clone(),
            psi_alpha: step_at(&sa, &mut ia, t).value.clone(),
            psi_beta: step_at(&sb, &mut ib, t).value.clone(),
        };
        let ord = match exact_cmp(&d.psi_alpha, &d.psi_beta, budget) {
            Ok(o) => o,
            Err(Error::Undecided(_)) => {
                rep.undecided.push(t.clone());
                continue;
            }
            Err(e) => return Err(e),
        };
        if ord == Ordering::Equal {
            zero_from.get_or_insert_with(|| t.clone());
            continue;
        }
        if let Some(start) = zero_from.take() {
            rep.zeros.push(ZeroInterval {
                t_start: start,
                t_end: t - 1u32,
            });
        }
        let sign = if ord == Ordering::Less {
            Sign::Minus
        } else {
            Sign::Plus
        };
        match last.take() {
            Some((prev, before)) if prev != sign => {
                rep.events.push(SignChangeEvent {
                    t: t.clone(),
                    sign_before: prev,
                    sign_after: sign,
                    d_before: before,
                    d_after: d.clone(),
                });
                rep.runs.push(sign);
            }
            Some(_) => {}
            None => rep.runs.push(sign),
        }
        last = Some((sign, d));
    }
    if let Some(start) = zero_from {
        rep.zeros.push(ZeroInterval {
            t_start: start,
            t_end: t_max.clone(),
        });
    }
    Ok(rep)
}
