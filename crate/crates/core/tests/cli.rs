//! End-to-end CLI runs against golden files in `tests/data/golden`.
//!
//! `PSILAB_BLESS=1 cargo test --test cli` rewrites the goldens.

use std::path::PathBuf;

use psilab::cli::run;

const GOLDEN: &str = "quad:(-1+1*sqrt(5))/2";
const SILVER: &str = "quad:(-1+1*sqrt(2))/1";

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn psilab(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("psilab").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn golden(name: &str, args: &[&str]) {
    let r = psilab(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.err);
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data/golden")
        .join(name);
    if std::env::var_os("PSILAB_BLESS").is_some() {
        std::fs::write(&path, &r.out).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(r.out, want, "{name} drifted");
}

#[test]
fn golden_steps() {
    golden(
        "steps_golden_30.csv",
        &["--format", "csv", "steps", GOLDEN, "--tmax", "30"],
    );
    golden(
        "steps_golden_1000.txt",
        &["steps", GOLDEN, "--tmax", "1000"],
    );
    golden(
        "steps_silver_1000.json",
        &["--format", "json", "steps", SILVER, "--tmax", "1000"],
    );
}

#[test]
fn golden_signchanges() {
    golden(
        "signchanges_golden_silver_30.csv",
        &[
            "--format",
            "csv",
            "signchanges",
            "--alpha",
            GOLDEN,
            "--beta",
            SILVER,
            "--tmax",
            "30",
        ],
    );
    golden(
        "signchanges_golden_silver_10000.txt",
        &[
            "signchanges",
            "--alpha",
            GOLDEN,
            "--beta",
            SILVER,
            "--tmax",
            "10000",
        ],
    );
}

#[test]
fn golden_verify() {
    golden(
        "verify_lemma1_sqrt3.txt",
        &[
            "verify",
            "lemma1",
            "--alpha",
            "quad:(-1+1*sqrt(3))/1",
            "--nmax",
            "12",
        ],
    );
    golden(
        "verify_corollary_golden.txt",
        &["verify", "corollary", "--alpha", GOLDEN, "--nmax", "100"],
    );
    golden(
        "verify_lemma2_golden_silver.csv",
        &[
            "--format", "csv", "verify", "lemma2", "--alpha", GOLDEN, "--beta", SILVER, "--bound",
            "1000",
        ],
    );
    golden(
        "verify_pmidentity_cf3.json",
        &[
            "--format",
            "json",
            "--digits",
            "20",
            "verify",
            "pmidentity",
            "--alpha",
            "cf:[0;(3)]",
            "--nmax",
            "5",
        ],
    );
}

#[test]
fn golden_interleave_and_oracle() {
    golden(
        "interleave_golden_silver_30.txt",
        &[
            "interleave",
            "--alpha",
            GOLDEN,
            "--beta",
            SILVER,
            "--tmax",
            "30",
        ],
    );
    golden(
        "oracle_silver_100.json",
        &["--format", "json", "oracle", "psi", SILVER, "--t", "100"],
    );
}

#[test]
fn corollary_prints_one_line_per_index() {
    let r = psilab(&["verify", "corollary", "--alpha", GOLDEN, "--nmax", "100"]);
    assert_eq!(r.code, 0);
    let lines: Vec<_> = r.out.lines().collect();
    assert_eq!(lines.len(), 99);
    assert!(lines[0].starts_with("n=2 HOLDS lhs="));
    assert!(lines[98].starts_with("n=100 HOLDS lhs="));
}

#[test]
fn psi_json_carries_the_exact_surd() {
    let r = psilab(&["psi", "cf:[0;(2)]", "--t", "11", "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["value"]["a"], "-7");
    assert_eq!(v["value"]["b"], "5");
    assert_eq!(v["value"]["d"], "2");
    assert_eq!(v["value"]["c"], "1");
    assert_eq!(v["decimal"], "0.071067811865475244008443621048");
}

#[test]
fn expand_finite_and_periodic() {
    let r = psilab(&["expand", "rat:355/113", "--terms", "10"]);
    assert_eq!((r.code, r.out.as_str()), (0, "[3;7,16]\n"));
    let r = psilab(&["expand", "quad:(0+1*sqrt(2))/1", "--terms", "5"]);
    assert_eq!(r.out, "[1;2,2,2,2]\n");
    let r = psilab(&["--format", "csv", "expand", "rat:1/2", "--terms", "4"]);
    assert_eq!(r.out, "n,a\n0,0\n1,2\n");
}

#[test]
fn expand_round_trips_through_cf_grammar() {
    let first = psilab(&["expand", "quad:(3+2*sqrt(7))/5", "--terms", "25"]);
    let digits = first.out.trim();
    let again = psilab(&["expand", &format!("cf:{digits}"), "--terms", "25"]);
    assert_eq!(again.out.trim(), digits);
    let a = psilab(&["convergents", "quad:(3+2*sqrt(7))/5", "--terms", "25"]);
    let b = psilab(&["convergents", &format!("cf:{digits}"), "--terms", "25"]);
    assert_eq!(a.out, b.out);
}

#[test]
fn empty_report_is_header_only() {
    let r = psilab(&[
        "--format",
        "csv",
        "signchanges",
        "--alpha",
        GOLDEN,
        "--beta",
        SILVER,
        "--tmax",
        "1",
    ]);
    assert_eq!(r.code, 0);
    assert_eq!(
        r.out,
        "t,sign_before,sign_after,d_before_dec30,d_after_dec30\n"
    );
}

#[test]
fn digits_flag_truncates_and_renames_columns() {
    let r = psilab(&[
        "--format", "csv", "--digits", "5", "steps", GOLDEN, "--tmax", "2",
    ]);
    assert_eq!(
        r.out,
        "t_start,t_end,k,q_k,value_dec5\n1,1,1,1,0.38196\n2,2,2,2,0.23606\n"
    );
}

#[test]
fn exhausted_enclosure_prints_certified_digits_then_exits_3() {
    let r = psilab(&["expand", "dec:3.14159..3.14160", "--terms", "10"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.out, "[3;7]\n");
    assert!(r.err.starts_with("error kind=exhausted-enclosure: "));
}

#[test]
fn errors_are_single_line_with_exit_codes() {
    let cases: [(&[&str], i32, &str); 7] = [
        (&["psi", "bogus", "--t", "5"], 2, "parse"),
        (&["psi", "rat:3/7", "--t", "5"], 2, "rational-input"),
        (&["psi", GOLDEN], 2, "usage"),
        (&["frobnicate"], 2, "usage"),
        (
            &["--digits", "0", "steps", GOLDEN, "--tmax", "3"],
            2,
            "usage",
        ),
        (
            &[
                "signchanges",
                "--alpha",
                "quad:(0+1*sqrt(2))/1",
                "--beta",
                SILVER,
                "--tmax",
                "9",
            ],
            2,
            "guard-rejected",
        ),
        (
            &["oracle", "psi", GOLDEN, "--t", "2000000"],
            2,
            "out-of-range",
        ),
    ];
    for (args, code, kind) in cases {
        let r = psilab(args);
        assert_eq!(r.code, code, "{args:?}");
        assert_eq!(r.err.lines().count(), 1, "{args:?}: {}", r.err);
        assert!(
            r.err.starts_with(&format!("error kind={kind}: ")),
            "{args:?}: {}",
            r.err
        );
        assert!(r.out.is_empty());
    }
}

#[test]
fn forced_degenerate_pair_reports_a_zero_interval() {
    let args = [
        "--force",
        "signchanges",
        "--alpha",
        "quad:(0+1*sqrt(2))/1",
        "--beta",
        SILVER,
        "--tmax",
        "50",
    ];
    let r = psilab(&args);
    assert_eq!(r.code, 0);
    assert!(r.err.starts_with("warning kind=guard-rejected: "));
    assert!(r.out.contains("changes=0"));
    assert!(r.out.contains("zero t=1..50"));
}

#[test]
fn unverifiable_guard_warns_and_runs() {
    let r = psilab(&[
        "signchanges",
        "--alpha",
        "dec:0.6180339..0.6180340",
        "--beta",
        SILVER,
        "--tmax",
        "5",
    ]);
    assert!(
        r.err.starts_with("warning kind=guard-unverifiable: "),
        "{}",
        r.err
    );
    assert_ne!(r.code, 2);
}

#[test]
fn pmidentity_prefers_beta() {
    let a = psilab(&[
        "verify",
        "pmidentity",
        "--alpha",
        GOLDEN,
        "--beta",
        SILVER,
        "--nmax",
        "6",
    ]);
    let b = psilab(&["verify", "pmidentity", "--alpha", SILVER, "--nmax", "6"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.out, b.out);
}

#[test]
fn jobs_do_not_change_output() {
    let args = ["verify", "lemma1", "--alpha", GOLDEN, "--nmax", "60"];
    let one = psilab(&args);
    let mut with_jobs = vec!["--jobs", "3"];
    with_jobs.extend(args);
    assert_eq!(one.out, psilab(&with_jobs).out);
}

#[test]
fn output_flag_writes_the_file() {
    let dir = std::env::temp_dir().join(format!("psilab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("steps.csv");
    let r = psilab(&[
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
        "steps",
        GOLDEN,
        "--tmax",
        "30",
    ]);
    assert_eq!(r.code, 0);
    assert!(r.out.is_empty());
    let direct = psilab(&["--format", "csv", "steps", GOLDEN, "--tmax", "30"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct.out);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn budget_must_be_positive() {
    let r = psilab(&["--max-digits", "0", "steps", GOLDEN, "--tmax", "3"]);
    assert_eq!(r.code, 2);
}
