//! Digit and convergent cursors, tails `[a_n; a_{n+1}, ...]`, and reversed tails `q_{n-1}/q_n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::expand::eval_finite;
use super::spec::{Expansion, NumberSpec};
use crate::arith::{DigitRefiner, ExactReal, Rational};
use crate::error::{Error, Result};

/// One convergent `r_n / q_n` together with the digit `a_n` that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentRecord {
    pub n: usize,
    pub a: BigInt,
    pub r: BigInt,
    pub q: BigInt,
}

impl ConvergentRecord {
    pub fn value(&self) -> Rational {
        BigRational::new(self.r.clone(), self.q.clone())
    }
}

/// The complete quotient `[a_n; a_{n+1}, ...]`.
#[derive(Clone, Debug)]
pub struct TailValue {
    pub n: usize,
    pub value: ExactReal,
}

/// `[0; a_n, a_{n-1}, ..., a_1]`, which equals `q_{n-1} / q_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversedTail {
    pub n: usize,
    pub value: Rational,
}

impl NumberSpec {
    /// Digit `a_n`: `Ok(None)` past the end of a finite expansion.
    pub fn digit(&self, n: usize) -> Result<Option<BigInt>> {
        match &self.expansion {
            Expansion::Finite { digits, .. } => Ok(digits.get(n).cloned()),
            Expansion::Periodic(p) => Ok(Some(p.digit(n).clone())),
            Expansion::Enclosure(g) => g
                .digits
                .get(n)
                .cloned()
                .map(Some)
                .ok_or(Error::ExhaustedEnclosure),
        }
    }

    /// Exact value, or a refinable enclosure for decimal sources.
    pub fn value(&self) -> ExactReal {
        match &self.expansion {
            Expansion::Finite { value, .. } => ExactReal::Rational(value.clone()),
            Expansion::Periodic(p) => ExactReal::Surd(p.value().clone()),
            Expansion::Enclosure(g) => enclosure_tail(g, 0),
        }
    }

    pub fn digits(&self) -> DigitStream<'_> {
        DigitStream {
            spec: self,
            n: 0,
            done: false,
        }
    }

    pub fn convergents(&self) -> Convergents<'_> {
        Convergents {
            digits: self.digits(),
            prev: (BigInt::one(), BigInt::zero()),
            cur: None,
        }
    }

    /// Records `0..count`, fewer when a finite expansion ends first.
    pub fn convergents_upto(&self, count: usize) -> Result<Vec<ConvergentRecord>> {
        self.convergents().take(count).collect()
    }

    /// Records while `q_n <= bound`, plus the first record past it when it exists.
    pub fn convergents_past(&self, bound: &BigInt) -> Result<Vec<ConvergentRecord>> {
        let mut out = Vec::new();
        for rec in self.convergents() {
            let rec = rec?;
            let past = &rec.q > bound;
            out.push(rec);
            if past {
                break;
            }
        }
        Ok(out)
    }

    /// The tail `[a_n; a_{n+1}, ...]` for `n >= 1`.
    pub fn tail_value(&self, n: usize) -> Result<TailValue> {
        if n == 0 {
            return Err(Error::OutOfRange("tails are indexed from 1".into()));
        }
        let value = match &self.expansion {
            Expansion::Finite { digits, .. } => {
                if n >= digits.len() {
                    return Err(Error::OutOfRange(format!(
                        "digit a_{n} does not exist for {}",
                        self.label()
                    )));
                }
                ExactReal::Rational(eval_finite(&digits[n..]))
            }
            Expansion::Periodic(p) => ExactReal::Surd(p.tail(n).clone()),
            Expansion::Enclosure(g) => {
                if n >= g.digits.len() {
                    return Err(Error::ExhaustedEnclosure);
                }
                enclosure_tail(g, n)
            }
        };
        Ok(TailValue { n, value })
    }

    /// `q_{n-1} / q_n` for `n >= 1`.
    pub fn reversed_tail(&self, n: usize) -> Result<ReversedTail> {
        if n == 0 {
            return Err(Error::OutOfRange(
                "reversed tails are indexed from 1".into(),
            ));
        }
        let recs = self.convergents_upto(n + 1)?;
        if recs.len() <= n {
            return Err(Error::OutOfRange(format!(
                "convergent q_{n} does not exist for {}",
                self.label()
            )));
        }
        let value = reversed_from(&recs[n - 1], &recs[n]);
        if cfg!(debug_assertions) {
            let rev: Vec<BigInt> = std::iter::once(BigInt::zero())
                .chain(recs[1..=n].iter().rev().map(|r| r.a.clone()))
                .collect();
            assert!(
                crate::arith::rcmp(&eval_finite(&rev), &value).is_eq(),
                "reversed tail identity broke at n = {n}"
            );
        }
        Ok(ReversedTail { n, value })
    }
}

/// `q_{n-1} / q_n` from two consecutive records. Consecutive denominators are
/// coprime, so no reduction is needed.
pub(crate) fn reversed_from(prev: &ConvergentRecord, cur: &ConvergentRecord) -> Rational {
    BigRational::new_raw(prev.q.clone(), cur.q.clone())
}

fn enclosure_tail(g: &super::expand::GaussExpansion, n: usize) -> ExactReal {
    let last = g.intervals[n].clone();
    if g.digits.len() == n + 1 {
        // No further digit: the Gauss interval is all there is.
        return crate::arith::RationalInterval::new(last.0, last.1, None)
            .expect("Gauss intervals are ordered")
            .into_real();
    }
    ExactReal::Interval(DigitRefiner::start(g.digits[n..].to_vec(), last))
}

/// Single-consumer cursor over the digits of a [`NumberSpec`].
///
/// Decimal sources end with one `Err(ExhaustedEnclosure)` item.
pub struct DigitStream<'a> {
    spec: &'a NumberSpec,
    n: usize,
    done: bool,
}

impl Iterator for DigitStream<'_> {
    type Item = Result<BigInt>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.spec.digit(self.n) {
            Ok(Some(a)) => {
                self.n += 1;
                Some(Ok(a))
            }
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

/// Single-consumer cursor over convergents, starting from `(r_{-1}, q_{-1}) = (1, 0)`.
pub struct Convergents<'a> {
    digits: DigitStream<'a>,
    prev: (BigInt, BigInt),
    cur: Option<(BigInt, BigInt)>,
}

impl Iterator for Convergents<'_> {
    type Item = Result<ConvergentRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.digits.n;
        let a = match self.digits.next()? {
            Ok(a) => a,
            Err(e) => return Some(Err(e)),
        };
        let (r, q) = match &self.cur {
            None => (a.clone(), BigInt::one()),
            Some((r1, q1)) => (&a * r1 + &self.prev.0, &a * q1 + &self.prev.1),
        };
        if let Some(cur) = self.cur.replace((r.clone(), q.clone())) {
            self.prev = cur;
        }
        Some(Ok(ConvergentRecord { n, a, r, q }))
    }
}
