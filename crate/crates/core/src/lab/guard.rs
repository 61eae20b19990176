//! Hypotheses on a pair: both irrational, distinct, and `alpha +- beta` not an integer.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::ExactReal;
use crate::cf::{Exactness, NumberSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GuardStatus {
    /// Every hypothesis was proven exactly.
    Verified,
    /// A hypothesis was proven false.
    Rejected(String),
    /// Neither proven nor refuted; work proceeds with a warning.
    Unverifiable(String),
}

impl fmt::Display for GuardStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GuardStatus::Verified => f.write_str("verified"),
            GuardStatus::Rejected(r) => write!(f, "rejected: {r}"),
            GuardStatus::Unverifiable(r) => write!(f, "unverifiable: {r}"),
        }
    }
}

/// Checks the hypotheses on `(alpha, beta)`.
pub fn pair_guard(alpha: &NumberSpec, beta: &NumberSpec) -> GuardStatus {
    for (name, x) in [("alpha", alpha), ("beta", beta)] {
        if x.exactness() == Exactness::Rational {
            return GuardStatus::Rejected(format!("{name} = {} is rational", x.label()));
        }
    }
    let (a, b) = (alpha.value(), beta.value());
    if a.is_exact() && b.is_exact() {
        // Surds from different fields are linearly independent over Q together with 1,
        // so their sum and difference are irrational and `add` leaves the field.
        for (sym, v) in [("-", a.sub(&b)), ("+", a.add(&b))] {
            let Ok(ExactReal::Rational(q)) = v else {
                continue;
            };
            if q.is_integer() {
                let reason = if sym == "-" && q.is_zero() {
                    "alpha = beta".to_string()
                } else {
                    format!("alpha {sym} beta = {q} is an integer")
                };
                return GuardStatus::Rejected(reason);
            }
        }
        return GuardStatus::Verified;
    }
    for (sym, v) in [("-", a.sub(&b)), ("+", a.add(&b))] {
        let Ok(mut v) = v else { continue };
        let (lo, hi) = loop {
            let (lo, hi) = v.enclosure(128);
            if lo.ceil() > hi.floor() || !v.refine_step() {
                break (lo, hi);
            }
        };
        if lo.ceil() <= hi.floor() {
            let k: BigInt = lo.ceil().to_integer();
            let reason = if sym == "-" && k.is_zero() {
                "enclosure cannot prove alpha != beta".to_string()
            } else {
                format!("enclosure cannot prove alpha {sym} beta != {k}")
            };
            return GuardStatus::Unverifiable(reason);
        }
    }
    GuardStatus::Unverifiable("irrationality of a decimal enclosure cannot be certified".into())
}

/// Two numbers under comparison together with the guard verdict.
#[derive(Clone, Debug)]
pub struct PairSession {
    pub alpha: NumberSpec,
    pub beta: NumberSpec,
    pub guard_status: GuardStatus,
    forced: bool,
}

impl PairSession {
    pub fn new(alpha: NumberSpec, beta: NumberSpec) -> PairSession {
        let guard_status = pair_guard(&alpha, &beta);
        PairSession {
            alpha,
            beta,
            guard_status,
            forced: false,
        }
    }

    /// Lets work proceed on a rejected pair.
    pub fn force(mut self) -> PairSession {
        self.forced = true;
        self
    }

    pub fn is_forced(&self) -> bool {
        self.forced
    }

    /// The same pair with roles exchanged.
    pub fn swapped(&self) -> PairSession {
        PairSession {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            guard_status: self.guard_status.clone(),
            forced: self.forced,
        }
    }

    pub(crate) fn ensure_usable(&self) -> Result<()> {
        match &self.guard_status {
            GuardStatus::Rejected(r) if !self.forced => Err(Error::GuardRejected(r.clone())),
            _ => Ok(()),
        }
    }
}
