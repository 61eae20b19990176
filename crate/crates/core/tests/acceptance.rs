//! Acceptance gate: one PASS/FAIL line per criterion, then a single verdict.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Pow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use psilab::arith::{canonicalize_surd, exact_cmp, ExactReal, RefinementBudget};
use psilab::cf::{parse_number_spec, NumberSpec, Source};
use psilab::lab::{
    corollary_check, lemma1_check, lemma2_check, pm_identity_check, sign_changes, GuardStatus,
    Outcome, PairSession,
};
use psilab::psi::{best_denominator, brute_psi_prefix, psi_eval, psi_steps, OracleConfig};

const GOLDEN: &str = "quad:(-1+1*sqrt(5))/2";
const SILVER: &str = "quad:(-1+1*sqrt(2))/1";

const CORPUS: [&str; 5] = [
    GOLDEN,
    SILVER,
    "quad:(-1+1*sqrt(3))/1",
    "cf:[0;1,2,(1,2)]",
    "cf:[0;(3)]",
];

/// Oracle event positions for the golden/silver pair, `t <= 10^4`.
const EVENTS_1E4: [u64; 19] = [
    2, 3, 5, 8, 12, 21, 29, 55, 70, 89, 169, 233, 408, 610, 985, 1597, 2378, 4181, 5741,
];

type Verdict = Result<String, String>;
type Check = (&'static str, fn() -> Verdict);

fn spec(s: &str) -> NumberSpec {
    parse_number_spec(s).unwrap()
}

fn corpus() -> Vec<NumberSpec> {
    CORPUS.iter().map(|s| spec(s)).collect()
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    if took > limit {
        Err(format!("took {took:?}, limit {limit:?}"))
    } else {
        Ok(took)
    }
}

fn c1_lemma1() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    for s in corpus() {
        let rep = lemma1_check(&s, 2, 500).map_err(|e| e.to_string())?;
        for e in &rep.entries {
            if e.outcome != Outcome::Holds {
                return Err(format!("{} n={}: {}", s.label(), e.n, e.outcome.label()));
            }
        }
        checked += rep.entries.len();
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} exact equalities in {took:?}"))
}

fn c2_corollary() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    for s in corpus() {
        let rep = corollary_check(&s, 2000).map_err(|e| e.to_string())?;
        if rep.entries.len() != 1999 {
            return Err(format!("{}: {} entries", s.label(), rep.entries.len()));
        }
        if let Some(e) = rep.entries.iter().find(|e| e.outcome != Outcome::Holds) {
            return Err(format!("{} n={}: {}", s.label(), e.n, e.outcome.label()));
        }
        checked += rep.entries.len();
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} strict inequalities in {took:?}"))
}

fn c3_lemma2() -> Verdict {
    let start = Instant::now();
    let bound = BigInt::from(1_000_000);
    let session = PairSession::new(spec(GOLDEN), spec(SILVER));
    let mut pairs = 0;
    for s in [session.clone(), session.swapped()] {
        let rep = lemma2_check(&s, &bound).map_err(|e| e.to_string())?;
        if let Some(e) = rep.entries.iter().find(|e| e.outcome != Outcome::Holds) {
            return Err(format!("n={} m={:?}: {}", e.n, e.m, e.outcome.label()));
        }
        if rep.entries.is_empty() {
            return Err("no eligible pairs".into());
        }
        pairs += rep.entries.len();
    }
    let took = within(start, Duration::from_secs(5))?;
    Ok(format!("{pairs} pairs in {took:?}"))
}

fn c4_pm_identity() -> Verdict {
    let mut checked = 0;
    for s in [spec(GOLDEN), spec(SILVER)] {
        let rep = pm_identity_check(&s, 200).map_err(|e| e.to_string())?;
        if let Some(e) = rep.entries.iter().find(|e| e.outcome != Outcome::Holds) {
            return Err(format!("{} m={}: {}", s.label(), e.n, e.outcome.label()));
        }
        if !rep.all_exact() {
            return Err("inexact values".into());
        }
        checked += rep.entries.len();
    }
    Ok(format!("{checked} identities"))
}

fn c5_oracle() -> Verdict {
    let start = Instant::now();
    let cfg = OracleConfig::default();
    let budget = RefinementBudget::default();
    for s in corpus() {
        let scan = brute_psi_prefix(&s, 10_000, &cfg).map_err(|e| e.to_string())?;
        for o in &scan {
            let t = BigInt::from(o.t);
            let v = psi_eval(&s, &t).map_err(|e| e.to_string())?;
            let lo = ExactReal::Rational(o.lo.clone());
            let hi = ExactReal::Rational(o.hi.clone());
            let inside = exact_cmp(&lo, &v, &budget)
                .map_err(|e| e.to_string())?
                .is_le()
                && exact_cmp(&v, &hi, &budget)
                    .map_err(|e| e.to_string())?
                    .is_le();
            if !inside {
                return Err(format!(
                    "{} t={}: value outside oracle enclosure",
                    s.label(),
                    o.t
                ));
            }
            let q = best_denominator(&s, &t).map_err(|e| e.to_string())?.q;
            if q != BigInt::from(o.argmin) {
                return Err(format!(
                    "{} t={}: q={q}, oracle {}",
                    s.label(),
                    o.t,
                    o.argmin
                ));
            }
        }
    }
    let took = within(start, Duration::from_secs(60))?;
    Ok(format!("5 x 10^4 points in {took:?}"))
}

fn event_ts(s: &PairSession, t_max: u64) -> Result<Vec<u64>, String> {
    let rep = sign_changes(s, &BigInt::from(t_max)).map_err(|e| e.to_string())?;
    if !rep.undecided.is_empty() {
        return Err(format!("undecided at {:?}", rep.undecided));
    }
    Ok(rep
        .events
        .iter()
        .map(|e| u64::try_from(&e.t).unwrap())
        .collect())
}

fn c6_witness() -> Verdict {
    let session = PairSession::new(spec(GOLDEN), spec(SILVER));
    let small = event_ts(&session, 30)?;
    if small != [2, 3, 5, 8, 12, 21, 29] {
        return Err(format!("t_max=30 events {small:?}"));
    }
    let large = event_ts(&session, 10_000)?;
    if large != EVENTS_1E4 {
        return Err(format!("t_max=10^4 events {large:?}"));
    }
    Ok(format!("7 events to 30, {} to 10^4", large.len()))
}

fn random_surd(rng: &mut ChaCha8Rng) -> NumberSpec {
    loop {
        let d = rng.random_range(2..=30i64);
        let a = rng.random_range(-50..=50i64);
        let b = rng.random_range(-50..=50i64);
        let c = rng.random_range(1..=50i64);
        if b == 0 {
            continue;
        }
        let x = canonicalize_surd(a.into(), b.into(), d.into(), c.into()).unwrap();
        if let ExactReal::Surd(s) = x {
            let label = format!("quad:({a}+{b}*sqrt({d}))/{c}");
            return NumberSpec::new(Source::Surd(s), label).unwrap();
        }
    }
}

fn c7_random_pairs() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let t_max = BigInt::from(10u64.pow(9));
    let mut done = 0;
    let mut least = usize::MAX;
    while done < 20 {
        let session = PairSession::new(random_surd(&mut rng), random_surd(&mut rng));
        if session.guard_status != GuardStatus::Verified {
            continue;
        }
        let fwd = sign_changes(&session, &t_max).map_err(|e| e.to_string())?;
        let back = sign_changes(&session.swapped(), &t_max).map_err(|e| e.to_string())?;
        let pair = format!("{} vs {}", fwd.alpha, fwd.beta);
        if fwd.count() == 0 {
            return Err(format!("{pair}: no sign change"));
        }
        if fwd.count() != back.count() {
            return Err(format!(
                "{pair}: {} vs {} after swap",
                fwd.count(),
                back.count()
            ));
        }
        least = least.min(fwd.count());
        done += 1;
    }
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!("20 pairs, at least {least} events each, {took:?}"))
}

fn c8_degenerate() -> Verdict {
    let session = PairSession::new(spec("quad:(0+1*sqrt(2))/1"), spec(SILVER));
    if !matches!(session.guard_status, GuardStatus::Rejected(_)) {
        return Err(format!("guard said {}", session.guard_status));
    }
    if sign_changes(&session, &BigInt::from(100)).is_ok() {
        return Err("unforced scan ran".into());
    }
    let t_max = BigInt::from(10_000);
    let rep = sign_changes(&session.force(), &t_max).map_err(|e| e.to_string())?;
    if rep.count() != 0 {
        return Err(format!("{} events", rep.count()));
    }
    match rep.zeros.as_slice() {
        [z] if z.t_start == BigInt::one() && z.t_end == t_max => {
            Ok("rejected; forced scan is zero on [1, 10^4]".into())
        }
        other => Err(format!("zero intervals {other:?}")),
    }
}

fn c9_performance() -> Verdict {
    let s = spec(GOLDEN);
    let bound = BigInt::from(10u32).pow(100u32);
    let start = Instant::now();
    let mut t_max = BigInt::from(10u32).pow(100u32);
    let steps = loop {
        let steps = psi_steps(&s, &t_max).map_err(|e| e.to_string())?;
        if steps.last().is_some_and(|st| st.q_k > bound) {
            break steps;
        }
        t_max *= 2;
    };
    let took = within(start, Duration::from_millis(100))?;
    Ok(format!("{} steps in {took:?}", steps.len()))
}

fn c10_determinism() -> Verdict {
    let runs: [&[&str]; 4] = [
        &["steps", GOLDEN, "--tmax", "100000"],
        &[
            "--format",
            "csv",
            "signchanges",
            "--alpha",
            GOLDEN,
            "--beta",
            SILVER,
            "--tmax",
            "10000",
        ],
        &[
            "verify",
            "lemma1",
            "--alpha",
            "cf:[0;1,2,(1,2)]",
            "--nmax",
            "40",
        ],
        &[
            "--format", "json", "verify", "lemma2", "--alpha", GOLDEN, "--beta", SILVER, "--bound",
            "100000",
        ],
    ];
    let run = |args: &[&str]| {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = psilab::cli::run(
            std::iter::once("psilab").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, out)
    };
    for args in runs {
        let (c1, a) = run(args);
        let (c2, b) = run(args);
        if c1 != 0 || c2 != 0 || a != b || a.is_empty() {
            return Err(format!("{args:?}: exit {c1}/{c2}, equal={}", a == b));
        }
    }
    Ok("4 commands byte-identical".into())
}

fn main() {
    let criteria: [Check; 10] = [
        ("lemma 1 exact equality, n in [2, 500]", c1_lemma1),
        ("corollary strict inequality, n in [2, 2000]", c2_corollary),
        ("lemma 2 up to 10^6, both orders", c3_lemma2),
        ("pm identity, m in [2, 200]", c4_pm_identity),
        ("oracle equivalence, t <= 10^4", c5_oracle),
        ("sign-change witness counts", c6_witness),
        ("20 random surd pairs to 10^9", c7_random_pairs),
        ("degenerate pair", c8_degenerate),
        ("golden steps past 10^100 under 100 ms", c9_performance),
        ("byte-identical reruns", c10_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: 10/10 criteria pass");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
