use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use proptest::prelude::*;

use psilab::arith::{canonicalize_surd, exact_cmp, to_decimal, ExactReal, RefinementBudget};
use psilab::cf::{cf_of_rational, parse_number_spec, NumberSpec, Source};
use psilab::lab::{sign_changes, GuardStatus, PairSession};
use psilab::psi::{best_denominator, psi_eval, psi_steps};
use psilab::Error;

fn cmp(x: &ExactReal, y: &ExactReal) -> Ordering {
    exact_cmp(x, y, &RefinementBudget::default()).unwrap()
}

fn same(x: &ExactReal, y: &ExactReal) -> bool {
    cmp(x, y) == Ordering::Equal
}

/// `(a + b sqrt d) / c` with `d` from a small pool of radicands.
fn surd_in(d: i64) -> impl Strategy<Value = ExactReal> {
    (-60i64..=60, -30i64..=30, 1i64..=40).prop_map(move |(a, b, c)| {
        canonicalize_surd(a.into(), b.into(), d.into(), c.into()).unwrap()
    })
}

fn radicand() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![2i64, 3, 5, 6, 7, 8, 10, 12, 13, 18, 27, 50])
}

fn real() -> impl Strategy<Value = ExactReal> {
    radicand().prop_flat_map(surd_in)
}

/// Irrational surd as a number spec.
fn irrational() -> impl Strategy<Value = NumberSpec> {
    (radicand(), -60i64..=60, 1i64..=30, 1i64..=40).prop_filter_map("rational", |(d, a, b, c)| {
        match canonicalize_surd(a.into(), b.into(), d.into(), c.into()).unwrap() {
            ExactReal::Surd(s) => Some(NumberSpec::new(Source::Surd(s), "p").unwrap()),
            _ => None,
        }
    })
}

fn parse_decimal(s: &str) -> BigRational {
    let (neg, body) = s.strip_prefix('-').map_or((false, s), |b| (true, b));
    let (int, frac) = body.split_once('.').unwrap();
    let den = BigInt::from(10).pow(frac.len() as u32);
    let num: BigInt = format!("{int}{frac}").parse().unwrap();
    let q = BigRational::new(num, den);
    if neg {
        -q
    } else {
        q
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn canonical_form_is_a_fixed_point(d in radicand(), x in -200i64..=200, y in -200i64..=200, k in 1i64..=12) {
        let s = canonicalize_surd((x * k).into(), (y * k).into(), (d * 4).into(), (6 * k).into()).unwrap();
        if let ExactReal::Surd(s) = &s {
            let again = canonicalize_surd(s.a().clone(), s.b().clone(), s.d().clone(), s.c().clone()).unwrap();
            prop_assert_eq!(again.as_surd(), Some(s));
            prop_assert!(s.c().is_positive());
        }
        let direct = canonicalize_surd(x.into(), (2 * y).into(), d.into(), 6.into()).unwrap();
        prop_assert!(same(&s, &direct));
    }

    #[test]
    fn field_axioms_hold_exactly((x, y, z) in radicand().prop_flat_map(|d| (surd_in(d), surd_in(d), surd_in(d)))) {
        prop_assert!(same(&x.add(&y).unwrap(), &y.add(&x).unwrap()));
        prop_assert!(same(&x.mul(&y).unwrap(), &y.mul(&x).unwrap()));
        prop_assert!(same(&x.add(&y).unwrap().add(&z).unwrap(), &x.add(&y.add(&z).unwrap()).unwrap()));
        prop_assert!(same(
            &x.mul(&y.add(&z).unwrap()).unwrap(),
            &x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
        ));
        prop_assert!(same(&x.sub(&x).unwrap(), &ExactReal::from(0)));
        if x.signum().unwrap() != 0 {
            prop_assert!(same(&x.mul(&x.recip().unwrap()).unwrap(), &ExactReal::from(1)));
            prop_assert!(same(&y.div(&x).unwrap().mul(&x).unwrap(), &y));
        } else {
            prop_assert_eq!(x.recip().unwrap_err(), Error::DivisionByZero);
        }
    }

    #[test]
    fn comparison_is_antisymmetric_and_transitive(x in real(), y in real(), z in real()) {
        prop_assert_eq!(cmp(&x, &y), cmp(&y, &x).reverse());
        if cmp(&x, &y).is_le() && cmp(&y, &z).is_le() {
            prop_assert!(cmp(&x, &z).is_le());
        }
        let shifted = x.add(&ExactReal::ratio(1, 1_000_000)).unwrap();
        prop_assert_eq!(cmp(&x, &shifted), Ordering::Less);
        // Agrees with floating point whenever the gap is wide.
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > 1e-9 {
            prop_assert_eq!(cmp(&x, &y), fx.partial_cmp(&fy).unwrap());
        }
    }

    #[test]
    fn rounded_decimal_is_within_half_an_ulp(x in real(), k in 1usize..40) {
        let text = to_decimal(&x, k).unwrap();
        prop_assert_eq!(text.split_once('.').unwrap().1.len(), k);
        let err = ExactReal::from(parse_decimal(&text)).sub(&x).unwrap().abs();
        let half = ExactReal::from(BigRational::new(BigInt::one(), BigInt::from(10).pow(k as u32) * 2));
        prop_assert!(cmp(&err, &half).is_le());
    }

    #[test]
    fn convergent_determinant(spec in irrational(), n in 1usize..60) {
        let recs = spec.convergents_upto(n + 1).unwrap();
        for w in recs.windows(2) {
            let det = &w[1].r * &w[0].q - &w[0].r * &w[1].q;
            let want = if w[1].n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            prop_assert_eq!(det, want);
        }
    }

    #[test]
    fn reversed_tail_is_the_mirrored_expansion(spec in irrational(), n in 1usize..40) {
        let rev = spec.reversed_tail(n).unwrap().value;
        let mut mirrored = vec![BigInt::zero()];
        mirrored.extend((1..=n).rev().map(|i| spec.digit(i).unwrap().unwrap()));
        let direct = cf_of_rational(rev.numer(), rev.denom()).unwrap();
        // Finite expansions are unique up to a trailing 1.
        let canon = |mut v: Vec<BigInt>| {
            if v.len() > 1 && v.last().unwrap().is_one() {
                v.pop();
                *v.last_mut().unwrap() += 1;
            }
            v
        };
        prop_assert_eq!(canon(direct), canon(mirrored));
    }

    #[test]
    fn tails_satisfy_their_recursion(spec in irrational(), n in 1usize..40) {
        let t = spec.tail_value(n).unwrap().value;
        let next = spec.tail_value(n + 1).unwrap().value;
        let a = ExactReal::from(spec.digit(n).unwrap().unwrap());
        prop_assert!(same(&t, &a.add(&next.recip().unwrap()).unwrap()));
        prop_assert!(cmp(&next, &ExactReal::from(1)).is_gt());
    }

    #[test]
    fn gauss_digits_are_a_prefix_of_the_truth(spec in irrational(), bits in 8u32..200) {
        let s = spec.value();
        let (lo, hi) = s.enclosure(bits);
        let enc = NumberSpec::new(Source::DecimalEnclosure { lo, hi }, "e").unwrap();
        let mut n = 0;
        for digit in enc.digits() {
            match digit {
                Ok(a) => prop_assert_eq!(Some(a), spec.digit(n).unwrap()),
                Err(e) => prop_assert_eq!(e, Error::ExhaustedEnclosure),
            }
            n += 1;
        }
        prop_assert!(n >= 1);
    }

    #[test]
    fn specs_round_trip_through_text(spec in irrational(), p in -500i64..500, q in 1i64..500) {
        let again = parse_number_spec(&spec.render()).unwrap();
        prop_assert_eq!(again.source(), spec.source());
        let r = NumberSpec::rational(p, q).unwrap();
        let back = parse_number_spec(&r.render()).unwrap();
        prop_assert_eq!(back.source(), r.source());
    }

    #[test]
    fn expansion_round_trips_through_digits(spec in irrational(), terms in 2usize..30) {
        let digits: Vec<String> = spec.digits().take(terms).map(|a| a.unwrap().to_string()).collect();
        let text = format!("cf:[{};{}]", digits[0], digits[1..].join(","));
        let back = parse_number_spec(&text).unwrap();
        let a = spec.convergents_upto(terms).unwrap();
        let b = back.convergents_upto(terms).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn psi_is_a_nonincreasing_step_function(spec in irrational(), t_max in 1u32..3000) {
        let t_max = BigInt::from(t_max);
        let steps = psi_steps(&spec, &t_max).unwrap();
        prop_assert_eq!(&steps[0].t_start, &BigInt::one());
        prop_assert_eq!(&steps.last().unwrap().t_end, &t_max);
        for w in steps.windows(2) {
            prop_assert_eq!(&w[0].t_end + 1, w[1].t_start.clone());
            prop_assert!(cmp(&w[1].value, &w[0].value).is_lt());
        }
        for st in &steps {
            let rec = best_denominator(&spec, &st.t_end).unwrap();
            prop_assert_eq!(&rec.q, &st.q_k);
            prop_assert!(same(&psi_eval(&spec, &st.t_start).unwrap(), &st.value));
        }
    }

    #[test]
    fn sign_changes_are_symmetric(alpha in irrational(), beta in irrational(), t_max in 1u64..1_000_000_000) {
        let session = PairSession::new(alpha, beta);
        prop_assume!(session.guard_status == GuardStatus::Verified);
        let t_max = BigInt::from(t_max);
        let fwd = sign_changes(&session, &t_max).unwrap();
        let back = sign_changes(&session.swapped(), &t_max).unwrap();
        let ts = |r: &psilab::lab::SignChangeReport| r.events.iter().map(|e| e.t.clone()).collect::<Vec<_>>();
        prop_assert_eq!(ts(&fwd), ts(&back));
        for (e, f) in fwd.events.iter().zip(&back.events) {
            prop_assert_eq!(e.sign_before.symbol(), if f.sign_before.symbol() == '+' { '-' } else { '+' });
        }
    }
}
