//! Merged order of the denominators `q_n` of alpha and `p_m` of beta.

use num_bigint::BigInt;

use super::guard::PairSession;
use crate::cf::NumberSpec;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mark {
    Q,
    P,
    Tie,
}

impl Mark {
    pub fn token(self) -> &'static str {
        match self {
            Mark::Q => "Q",
            Mark::P => "P",
            Mark::Tie => "QP-tie",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterleaveReport {
    pub t_max: BigInt,
    /// Distinct denominators up to `t_max` in increasing order.
    pub entries: Vec<(BigInt, Mark)>,
    pub notes: Vec<String>,
}

impl InterleaveReport {
    /// Space-separated tokens, e.g. `QP-tie Q P`.
    pub fn pattern(&self) -> String {
        let tokens: Vec<&str> = self.entries.iter().map(|(_, m)| m.token()).collect();
        tokens.join(" ")
    }
}

/// Distinct denominators `<= t_max`, with a note when the digits ran out or a
/// leading duplicate was dropped.
fn denominators(
    spec: &NumberSpec,
    sym: &str,
    t_max: &BigInt,
    notes: &mut Vec<String>,
) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = Vec::new();
    for rec in spec.convergents() {
        let rec = match rec {
            Ok(r) => r,
            Err(Error::ExhaustedEnclosure) => {
                notes.push(format!(
                    "{sym}: enclosure exhausted after {sym}_{}",
                    out.len()
                ));
                break;
            }
            Err(e) => {
                notes.push(format!("{sym}: {e}"));
                break;
            }
        };
        if &rec.q > t_max {
            break;
        }
        if out.last() == Some(&rec.q) {
            notes.push(format!("{sym}_0 = {sym}_1 = 1 collapsed to one entry"));
            continue;
        }
        out.push(rec.q);
    }
    out
}

pub fn interleave_report(session: &PairSession, t_max: &BigInt) -> Result<InterleaveReport> {
    let mut notes = Vec::new();
    let qs = denominators(&session.alpha, "q", t_max, &mut notes);
    let ps = denominators(&session.beta, "p", t_max, &mut notes);
    let (mut i, mut j) = (0, 0);
    let mut entries = Vec::with_capacity(qs.len() + ps.len());
    while i < qs.len() || j < ps.len() {
        let mark = match (qs.get(i), ps.get(j)) {
            (Some(q), Some(p)) if q == p => Mark::Tie,
            (Some(q), Some(p)) if q < p => Mark::Q,
            (Some(_), None) => Mark::Q,
            _ => Mark::P,
        };
        let value = match mark {
            Mark::Q => qs[i].clone(),
            _ => ps[j].clone(),
        };
        if mark != Mark::P {
            i += 1;
        }
        if mark != Mark::Q {
            j += 1;
        }
        entries.push((value, mark));
    }
    Ok(InterleaveReport {
        t_max: t_max.clone(),
        entries,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::parse_number_spec;

    fn session(a: &str, b: &str) -> PairSession {
        PairSession::new(parse_number_spec(a).unwrap(), parse_number_spec(b).unwrap())
    }

    #[test]
    fn golden_silver() {
        let s = session("quad:(-1+1*sqrt(5))/2", "quad:(-1+1*sqrt(2))/1");
        let r = interleave_report(&s, &BigInt::from(30)).unwrap();
        assert_eq!(r.pattern(), "QP-tie QP-tie Q QP-tie Q P Q Q P");
        assert_eq!(r.notes, ["q_0 = q_1 = 1 collapsed to one entry"]);
        let r = interleave_report(&s, &BigInt::from(1)).unwrap();
        assert_eq!(r.pattern(), "QP-tie");
    }

    #[test]
    fn exhausted_enclosure_is_noted() {
        let s = session("dec:0.61..0.62", "cf:[0;(2)]");
        let r = interleave_report(&s, &BigInt::from(1000)).unwrap();
        assert!(r.notes.iter().any(|n| n.contains("exhausted")));
        assert!(r.entries.iter().any(|(_, m)| *m == Mark::P));
    }
}
