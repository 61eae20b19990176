//! Index-by-index checks of the convergent identities and inequalities.
//!
//! * `lemma1`: `||q_{n-1} a|| q_{n+1} = a_{n+1}' (a_{n+1} + a_n*) / (a_{n+1}' + a_n*)` where
//!   `a_{n+1}'` is the tail and `a_n* = q_{n-1}/q_n`.
//! * `corollary`: `||q_{n-1} a|| q_{n+1} > 1`.
//! * `lemma2`: `||q_{n-1} a|| > ||p_m b||` whenever `q_{n+1} <= p_{m+1}`, `n, m >= 2`.
//! * `pmidentity`: `||p_m b|| p_{m+1} = 1 / (1 + b_{m+1}* / b_{m+2}') < 1`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use super::guard::PairSession;
use crate::arith::{exact_cmp, rcmp, ExactReal, RefinementBudget};
use crate::cf::{reversed_from, ConvergentRecord, NumberSpec};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::psi::{require_irrational, signed_error};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LemmaKind {
    Lemma1,
    Corollary,
    Lemma2,
    PmIdentity,
}

impl LemmaKind {
    pub fn name(self) -> &'static str {
        match self {
            LemmaKind::Lemma1 => "lemma1",
            LemmaKind::Corollary => "corollary",
            LemmaKind::Lemma2 => "lemma2",
            LemmaKind::PmIdentity => "pmidentity",
        }
    }
}

impl fmt::Display for LemmaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Proven exactly.
    Holds,
    /// Enclosures overlap and are narrower than the tolerance; not a proof.
    Consistent,
    /// Refuted; the entry carries its operands.
    Fails,
    Undecided(String),
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Holds => "HOLDS",
            Outcome::Consistent => "CONSISTENT",
            Outcome::Fails => "FAILS",
            Outcome::Undecided(_) => "UNDECIDED",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LemmaEntry {
    pub n: usize,
    pub m: Option<usize>,
    pub outcome: Outcome,
    pub lhs: ExactReal,
    pub rhs: ExactReal,
    /// Every operand, filled only when the check fails.
    pub witness: Vec<(String, ExactReal)>,
}

#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub lemma: LemmaKind,
    /// Labels of the numbers checked.
    pub subjects: Vec<String>,
    pub index_lo: usize,
    pub index_hi: usize,
    /// Denominator bound for pair enumeration.
    pub bound: Option<BigInt>,
    pub entries: Vec<LemmaEntry>,
}

impl LemmaReport {
    pub fn failures(&self) -> impl Iterator<Item = &LemmaEntry> {
        self.entries.iter().filter(|e| e.outcome == Outcome::Fails)
    }

    pub fn undecided(&self) -> impl Iterator<Item = &LemmaEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.outcome, Outcome::Undecided(_)))
    }

    /// True when no entry failed.
    pub fn holds(&self) -> bool {
        self.failures().next().is_none()
    }

    /// True when every entry was proven exactly.
    pub fn all_exact(&self) -> bool {
        self.entries.iter().all(|e| e.outcome == Outcome::Holds)
    }
}

/// Enclosure width below which interval-backed identities count as consistent.
fn tolerance() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(30u32))
}

fn check_equal(lhs: &ExactReal, rhs: &ExactReal, budget: &RefinementBudget) -> Outcome {
    if lhs.is_exact() && rhs.is_exact() {
        return match exact_cmp(lhs, rhs, budget) {
            Ok(Ordering::Equal) => Outcome::Holds,
            Ok(_) => Outcome::Fails,
            Err(e) => Outcome::Undecided(e.to_string()),
        };
    }
    let tol = tolerance();
    let (mut x, mut y) = (lhs.clone(), rhs.clone());
    loop {
        let (xl, xh) = x.enclosure(256);
        let (yl, yh) = y.enclosure(256);
        if rcmp(&xh, &yl).is_lt() || rcmp(&yh, &xl).is_lt() {
            return Outcome::Fails;
        }
        if rcmp(&(&xh - &xl), &tol).is_lt() && rcmp(&(&yh - &yl), &tol).is_lt() {
            return Outcome::Consistent;
        }
        let progressed = x.refine_step() | y.refine_step();
        if !progressed {
            return Outcome::Undecided("enclosures overlap but are wider than 1e-30".into());
        }
    }
}

fn check_greater(lhs: &ExactReal, rhs: &ExactReal, budget: &RefinementBudget) -> Outcome {
    match exact_cmp(lhs, rhs, budget) {
        Ok(Ordering::Greater) => Outcome::Holds,
        Ok(_) => Outcome::Fails,
        Err(e) => Outcome::Undecided(e.to_string()),
    }
}

/// How lemma checks run: executor and comparison budget.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LabConfig {
    pub exec: Exec,
    pub budget: RefinementBudget,
}

impl LabConfig {
    pub fn sequential() -> Self {
        LabConfig {
            exec: Exec::Sequential,
            ..LabConfig::default()
        }
    }
}

fn int(x: &BigInt) -> ExactReal {
    ExactReal::from(x.clone())
}

/// Distance `|q_k xi - r_k|` for a record.
fn distance(spec: &NumberSpec, rec: &ConvergentRecord) -> Result<ExactReal> {
    Ok(signed_error(spec, rec)?.abs())
}

fn entry(
    n: usize,
    m: Option<usize>,
    outcome: Outcome,
    lhs: ExactReal,
    rhs: ExactReal,
    operands: impl FnOnce() -> Vec<(String, ExactReal)>,
) -> LemmaEntry {
    let witness = if outcome == Outcome::Fails {
        operands()
    } else {
        Vec::new()
    };
    LemmaEntry {
        n,
        m,
        outcome,
        lhs,
        rhs,
        witness,
    }
}

fn report(
    lemma: LemmaKind,
    subjects: Vec<String>,
    index_lo: usize,
    index_hi: usize,
    entries: Vec<Result<LemmaEntry>>,
) -> Result<LemmaReport> {
    Ok(LemmaReport {
        lemma,
        subjects,
        index_lo,
        index_hi,
        bound: None,
        entries: entries.into_iter().collect::<Result<_>>()?,
    })
}

pub fn lemma1_check(spec: &NumberSpec, n_lo: usize, n_hi: usize) -> Result<LemmaReport> {
    lemma1_check_with(spec, n_lo, n_hi, &LabConfig::default())
}

pub fn lemma1_check_with(
    spec: &NumberSpec,
    n_lo: usize,
    n_hi: usize,
    cfg: &LabConfig,
) -> Result<LemmaReport> {
    require_irrational(spec)?;
    if n_lo < 2 {
        return Err(Error::OutOfRange(format!(
            "lemma1 starts at n = 2, got {n_lo}"
        )));
    }
    let subjects = vec![spec.label().to_string()];
    if n_hi < n_lo {
        return report(LemmaKind::Lemma1, subjects, n_lo, n_hi, Vec::new());
    }
    let recs = spec.convergents_upto(n_hi + 2)?;
    let entries = cfg.exec.map_range(n_lo..n_hi + 1, |n| {
        let lhs = distance(spec, &recs[n - 1])?.mul(&int(&recs[n + 1].q))?;
        let tail = spec.tail_value(n + 1)?.value;
        let rev = ExactReal::Rational(reversed_from(&recs[n - 1], &recs[n]));
        let a = int(&recs[n + 1].a);
        let rhs = tail.mul(&a.add(&rev)?)?.div(&tail.add(&rev)?)?;
        let outcome = check_equal(&lhs, &rhs, &cfg.budget);
        Ok(entry(n, None, outcome, lhs, rhs, || {
            vec![
                ("xi".into(), spec.value()),
                ("r_{n-1}".into(), int(&recs[n - 1].r)),
                ("q_{n-1}".into(), int(&recs[n - 1].q)),
                ("q_{n+1}".into(), int(&recs[n + 1].q)),
                ("a_{n+1}".into(), a),
                ("tail_{n+1}".into(), tail),
                ("reversed_n".into(), rev),
            ]
        }))
    });
    report(LemmaKind::Lemma1, subjects, n_lo, n_hi, entries)
}

pub fn corollary_check(spec: &NumberSpec, n_hi: usize) -> Result<LemmaReport> {
    corollary_check_with(spec, n_hi, &LabConfig::default())
}

pub fn corollary_check_with(
    spec: &NumberSpec,
    n_hi: usize,
    cfg: &LabConfig,
) -> Result<LemmaReport> {
    require_irrational(spec)?;
    let subjects = vec![spec.label().to_string()];
    if n_hi < 2 {
        return report(LemmaKind::Corollary, subjects, 2, n_hi, Vec::new());
    }
    let recs = spec.convergents_upto(n_hi + 2)?;
    let one = ExactReal::from(1);
    let entries = cfg.exec.map_range(2..n_hi + 1, |n| {
        let lhs = distance(spec, &recs[n - 1])?.mul(&int(&recs[n + 1].q))?;
        let outcome = check_greater(&lhs, &one, &cfg.budget);
        Ok(entry(n, None, outcome, lhs, one.clone(), || {
            vec![
                ("xi".into(), spec.value()),
                ("r_{n-1}".into(), int(&recs[n - 1].r)),
                ("q_{n-1}".into(), int(&recs[n - 1].q)),
                ("q_{n+1}".into(), int(&recs[n + 1].q)),
            ]
        }))
    });
    report(LemmaKind::Corollary, subjects, 2, n_hi, entries)
}

pub fn pm_identity_check(spec: &NumberSpec, m_hi: usize) -> Result<LemmaReport> {
    pm_identity_check_with(spec, m_hi, &LabConfig::default())
}

pub fn pm_identity_check_with(
    spec: &NumberSpec,
    m_hi: usize,
    cfg: &LabConfig,
) -> Result<LemmaReport> {
    require_irrational(spec)?;
    let subjects = vec![spec.label().to_string()];
    if m_hi < 2 {
        return report(LemmaKind::PmIdentity, subjects, 2, m_hi, Vec::new());
    }
    let recs = spec.convergents_upto(m_hi + 2)?;
    let one = ExactReal::from(1);
    let entries = cfg.exec.map_range(2..m_hi + 1, |m| {
        let lhs = distance(spec, &recs[m])?.mul(&int(&recs[m + 1].q))?;
        let rev = ExactReal::Rational(reversed_from(&recs[m], &recs[m + 1]));
        let tail = spec.tail_value(m + 2)?.value;
        let rhs = one.add(&rev.div(&tail)?)?.recip()?;
        let outcome = match check_equal(&lhs, &rhs, &cfg.budget) {
            Outcome::Fails => Outcome::Fails,
            eq => match (check_greater(&one, &lhs, &cfg.budget), eq) {
                (Outcome::Holds, eq) => eq,
                (Outcome::Fails, _) => Outcome::Fails,
                (other, _) => other,
            },
        };
        Ok(entry(m, None, outcome, lhs, rhs, || {
            vec![
                ("xi".into(), spec.value()),
                ("r_m".into(), int(&recs[m].r)),
                ("q_m".into(), int(&recs[m].q)),
                ("q_{m+1}".into(), int(&recs[m + 1].q)),
                ("reversed_{m+1}".into(), rev),
                ("tail_{m+2}".into(), tail),
            ]
        }))
    });
    report(LemmaKind::PmIdentity, subjects, 2, m_hi, entries)
}

pub fn lemma2_check(session: &PairSession, bound: &BigInt) -> Result<LemmaReport> {
    lemma2_check_with(session, bound, &LabConfig::default())
}

/// Every pair `n, m >= 2` with `q_{n+1} <= p_{m+1} <= bound`, `m` outer.
pub fn lemma2_check_with(
    session: &PairSession,
    bound: &BigInt,
    cfg: &LabConfig,
) -> Result<LemmaReport> {
    session.ensure_usable()?;
    let (alpha, beta) = (&session.alpha, &session.beta);
    require_irrational(alpha)?;
    require_irrational(beta)?;
    let qs = alpha.convergents_past(bound)?;
    let ps = beta.convergents_past(bound)?;
    let mut pairs = Vec::new();
    let mut m = 2;
    while m + 1 < ps.len() && &ps[m + 1].q <= bound {
        let mut n = 2;
        while n + 1 < qs.len() && qs[n + 1].q <= ps[m + 1].q {
            pairs.push((n, m));
            n += 1;
        }
        m += 1;
    }
    let entries = cfg.exec.map(&pairs, |&(n, m)| {
        let lhs = distance(alpha, &qs[n - 1])?;
        let rhs = distance(beta, &ps[m])?;
        let outcome = check_greater(&lhs, &rhs, &cfg.budget);
        Ok(entry(n, Some(m), outcome, lhs, rhs, || {
            vec![
                ("alpha".into(), alpha.value()),
                ("beta".into(), beta.value()),
                ("r_{n-1}".into(), int(&qs[n - 1].r)),
                ("q_{n-1}".into(), int(&qs[n - 1].q)),
                ("q_{n+1}".into(), int(&qs[n + 1].q)),
                ("s_m".into(), int(&ps[m].r)),
                ("p_m".into(), int(&ps[m].q)),
                ("p_{m+1}".into(), int(&ps[m + 1].q)),
            ]
        }))
    });
    let mut rep = report(
        LemmaKind::Lemma2,
        vec![alpha.label().to_string(), beta.label().to_string()],
        2,
        m.saturating_sub(1).max(2),
        entries,
    )?;
    rep.bound = Some(bound.clone());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{canonicalize_surd, to_decimal};
    use crate::cf::parse_number_spec;

    fn spec(s: &str) -> NumberSpec {
        parse_number_spec(s).unwrap()
    }

    const GOLDEN: &str = "quad:(-1+1*sqrt(5))/2";
    const SILVER: &str = "quad:(-1+1*sqrt(2))/1";

    fn surd(a: i64, b: i64, d: i64, c: i64) -> ExactReal {
        canonicalize_surd(a.into(), b.into(), d.into(), c.into()).unwrap()
    }

    #[test]
    fn lemma1_examples() {
        let r = lemma1_check(&spec(GOLDEN), 2, 2).unwrap();
        assert_eq!(r.entries[0].outcome, Outcome::Holds);
        assert_eq!(r.entries[0].lhs.to_string(), surd(9, -3, 5, 2).to_string());
        let r = lemma1_check(&spec(SILVER), 2, 2).unwrap();
        assert_eq!(
            r.entries[0].lhs.to_string(),
            surd(36, -24, 2, 1).to_string()
        );
        assert_eq!(r.entries[0].outcome, Outcome::Holds);
        assert!(lemma1_check(&spec(SILVER), 5, 4)
            .unwrap()
            .entries
            .is_empty());
        assert!(lemma1_check(&spec(SILVER), 1, 4).is_err());
    }

    #[test]
    fn lemma1_and_corollary_both_ways() {
        for s in [
            GOLDEN,
            SILVER,
            "cf:[0;1,2,(1,2)]",
            "cf:[0;(3)]",
            "quad:(3+2*sqrt(7))/5",
        ] {
            let s = spec(s);
            let seq = lemma1_check_with(&s, 2, 40, &LabConfig::sequential()).unwrap();
            let par = lemma1_check_with(&s, 2, 40, &LabConfig::default()).unwrap();
            assert!(seq.all_exact() && par.all_exact());
            assert!(corollary_check(&s, 60).unwrap().all_exact());
        }
        assert_eq!(
            corollary_check(&spec("rat:7/5"), 10).unwrap_err(),
            Error::RationalInput
        );
    }

    #[test]
    fn corollary_lhs_decimal() {
        let r = corollary_check(&spec(GOLDEN), 2).unwrap();
        assert_eq!(to_decimal(&r.entries[0].lhs, 6).unwrap(), "1.145898");
    }

    #[test]
    fn pm_identity_examples() {
        let r = pm_identity_check(&spec(SILVER), 2).unwrap();
        assert_eq!(r.entries[0].outcome, Outcome::Holds);
        assert_eq!(
            r.entries[0].lhs.to_string(),
            surd(-84, 60, 2, 1).to_string()
        );
        assert!(pm_identity_check(&spec(GOLDEN), 50).unwrap().all_exact());
        assert!(pm_identity_check(&spec(GOLDEN), 1)
            .unwrap()
            .entries
            .is_empty());
    }

    #[test]
    fn lemma2_pairs() {
        let s = PairSession::new(spec(GOLDEN), spec(SILVER));
        let r = lemma2_check(&s, &BigInt::from(12)).unwrap();
        // p_3 = 12 admits q_3 = 3 and q_4 = 5, q_5 = 8, q_6 = 13 is too large.
        let pairs: Vec<_> = r.entries.iter().map(|e| (e.n, e.m)).collect();
        assert_eq!(pairs, [(2, Some(2)), (3, Some(2)), (4, Some(2))]);
        assert!(r.all_exact());
        let big = lemma2_check(&s.swapped(), &BigInt::from(1_000_000)).unwrap();
        assert!(big.all_exact() && !big.entries.is_empty());
    }

    #[test]
    fn interval_inputs_are_consistent_or_undecided() {
        let s = spec("dec:0.41421356237309504880168872420969807856967187537694..0.41421356237309504880168872420969807856967187537695");
        let r = lemma1_check(&s, 2, 3).unwrap();
        for e in &r.entries {
            assert!(
                matches!(e.outcome, Outcome::Consistent | Outcome::Undecided(_)),
                "{:?}",
                e.outcome
            );
        }
        let r = corollary_check(&s, 5).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn failing_identity_carries_operands() {
        let lhs = ExactReal::from(2);
        let out = check_equal(&lhs, &ExactReal::from(3), &RefinementBudget::default());
        let e = entry(2, None, out, lhs, ExactReal::from(3), || {
            vec![("x".into(), ExactReal::from(1))]
        });
        assert_eq!(e.outcome, Outcome::Fails);
        assert_eq!(e.witness.len(), 1);
    }
}
