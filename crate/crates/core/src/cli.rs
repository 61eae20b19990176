//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage or input error,
//! 3 undecided comparison or exhausted enclosure. Every error is one line on
//! stderr: `error kind=<kind>: <message>`.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::arith::RefinementBudget;
use crate::cf::{parse_number_spec, NumberSpec};
use crate::error::Error;
use crate::exec::Exec;
use crate::lab::{
    corollary_check_with, interleave_report, lemma1_check_with, lemma2_check_with,
    pm_identity_check_with, sign_changes_with, GuardStatus, LabConfig, LemmaReport, Outcome,
    PairSession,
};
use crate::psi::{best_denominator, brute_psi, psi_steps, signed_error, OracleConfig};
use crate::report::{Format, Render};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "psilab",
    version,
    about = "Exact continued fractions and the irrationality measure function"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Decimal places in rendered values (truncated).
    #[arg(long, global = true, default_value_t = 30, value_parser = clap::value_parser!(u32).range(1..))]
    digits: u32,
    /// Refinement rounds a comparison may spend.
    #[arg(long, global = true, env = "PSILAB_MAX_DIGITS", default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_digits: u64,
    /// Cap on enclosure denominator bits.
    #[arg(long, global = true, env = "PSILAB_MAX_BITS", default_value_t = 1 << 20, value_parser = clap::value_parser!(u64).range(1..))]
    max_bits: u64,
    /// Starting precision of the brute-force oracle.
    #[arg(long, global = true, default_value_t = 128, value_parser = clap::value_parser!(u32).range(64..))]
    precision_bits: u32,
    /// Largest t the brute-force oracle accepts.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    t_cap: u64,
    /// Proceed on pairs the guard rejects.
    #[arg(long, global = true)]
    force: bool,
    /// Write output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for verify; without it checks run on one thread.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partial quotients.
    Expand {
        spec: String,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Convergent table `n, a_n, r_n, q_n`.
    Convergents {
        spec: String,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// `psi(t)` exactly.
    Psi {
        spec: String,
        #[arg(long)]
        t: String,
    },
    /// Plateaus of `psi` on `[1, tmax]`.
    Steps {
        spec: String,
        #[arg(long)]
        tmax: String,
    },
    /// Sign changes of `psi_alpha - psi_beta`.
    Signchanges(PairArgs),
    /// Check a lemma index by index.
    Verify {
        #[arg(value_enum)]
        lemma: LemmaArg,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: Option<String>,
        /// Largest index checked.
        #[arg(long, default_value_t = 100)]
        nmax: usize,
        /// Smallest index checked (lemma1 only).
        #[arg(long, default_value_t = 2)]
        nmin: usize,
        /// Denominator bound for lemma2.
        #[arg(long, default_value = "1000000")]
        bound: String,
    },
    /// Merged order of the two denominator sequences.
    Interleave(PairArgs),
    /// Brute-force oracle.
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    #[arg(long)]
    tmax: String,
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// `psi(t)` by direct scan over `x <= t`.
    Psi {
        spec: String,
        #[arg(long)]
        t: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LemmaArg {
    Lemma1,
    Corollary,
    Lemma2,
    Pmidentity,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Undecided(_) | Error::ExhaustedEnclosure | Error::PrecisionExhausted { .. } => {
            EXIT_UNDECIDED
        }
        Error::CrossCheckFailure(_) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn diagnostic(err: &mut dyn Write, kind: &str, msg: &str) {
    let _ = writeln!(err, "error kind={kind}: {}", one_line(msg));
}

struct Emitted {
    text: String,
    code: i32,
    trailing: Option<Error>,
}

impl Emitted {
    fn ok(text: String) -> Self {
        Emitted {
            text,
            code: EXIT_OK,
            trailing: None,
        }
    }
}

fn spec(text: &str) -> Result<NumberSpec, Error> {
    parse_number_spec(text)
}

fn integer(name: &str, text: &str) -> Result<BigInt, Error> {
    BigInt::from_str(text.trim())
        .map_err(|_| Error::OutOfRange(format!("--{name} expects an integer, got {text:?}")))
}

fn pair(alpha: &str, beta: &str, force: bool, err: &mut dyn Write) -> Result<PairSession, Error> {
    let mut session = PairSession::new(spec(alpha)?, spec(beta)?);
    if force {
        session = session.force();
    }
    match &session.guard_status {
        GuardStatus::Unverifiable(reason) => {
            let _ = writeln!(err, "warning kind=guard-unverifiable: {}", one_line(reason));
        }
        GuardStatus::Rejected(reason) if force => {
            let _ = writeln!(
                err,
                "warning kind=guard-rejected: {} (forced)",
                one_line(reason)
            );
        }
        _ => {}
    }
    Ok(session)
}

fn verdict(reports: &[LemmaReport]) -> i32 {
    let entries = || reports.iter().flat_map(|r| &r.entries);
    if entries().any(|e| e.outcome == Outcome::Fails) {
        EXIT_FAILED
    } else if entries().any(|e| matches!(e.outcome, Outcome::Undecided(_))) {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    }
}

/// Runs `f` on a pool of `jobs` threads when parallelism is available.
fn with_jobs<R: Send>(jobs: Option<u32>, f: impl FnOnce(Exec) -> R + Send) -> Result<R, Error> {
    match jobs {
        #[cfg(feature = "parallel")]
        Some(n) if n > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n as usize)
                .build()
                .map_err(|e| Error::Domain(format!("cannot start {n} workers: {e}")))?;
            Ok(pool.install(|| f(Exec::Parallel)))
        }
        _ => Ok(f(Exec::Sequential)),
    }
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Emitted, Error> {
    let g = &cli.global;
    let budget = RefinementBudget::new(g.max_digits as usize, g.max_bits)?;
    let render = Render {
        format: match g.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Table => Format::Table,
        },
        digits: g.digits as usize,
        budget,
    };
    Ok(match &cli.command {
        Command::Expand { spec: text, terms } => {
            let s = spec(text)?;
            let mut digits = Vec::new();
            let mut trailing = None;
            let mut stream = s.digits();
            while digits.len() < *terms {
                match stream.next() {
                    Some(Ok(a)) => digits.push(a),
                    Some(Err(e)) => {
                        trailing = Some(e);
                        break;
                    }
                    None => break,
                }
            }
            let complete = trailing.is_none() && s.digit(digits.len())?.is_none();
            let text = render.expand(&s, &digits, complete);
            Emitted {
                text,
                code: trailing.as_ref().map_or(EXIT_OK, exit_code),
                trailing,
            }
        }
        Command::Convergents { spec: text, terms } => {
            let s = spec(text)?;
            let mut recs = Vec::new();
            let mut trailing = None;
            for rec in s.convergents().take(*terms) {
                match rec {
                    Ok(r) => recs.push(r),
                    Err(e) => {
                        trailing = Some(e);
                        break;
                    }
                }
            }
            Emitted {
                text: render.convergents(&s, &recs),
                code: trailing.as_ref().map_or(EXIT_OK, exit_code),
                trailing,
            }
        }
        Command::Psi { spec: text, t } => {
            let s = spec(text)?;
            let t = integer("t", t)?;
            let rec = best_denominator(&s, &t)?;
            let value = signed_error(&s, &rec)?.abs();
            Emitted::ok(render.psi(&s, &t, &rec, &value))
        }
        Command::Steps { spec: text, tmax } => {
            let s = spec(text)?;
            let t_max = integer("tmax", tmax)?;
            let steps = psi_steps(&s, &t_max)?;
            Emitted::ok(render.steps(&s, &t_max, &steps))
        }
        Command::Signchanges(p) => {
            let session = pair(&p.alpha, &p.beta, g.force, err)?;
            let t_max = integer("tmax", &p.tmax)?;
            let rep = sign_changes_with(&session, &t_max, &budget)?;
            let code = if rep.undecided.is_empty() {
                EXIT_OK
            } else {
                EXIT_UNDECIDED
            };
            Emitted {
                text: render.sign_changes(&rep, &session.guard_status),
                code,
                trailing: None,
            }
        }
        Command::Interleave(p) => {
            let session = pair(&p.alpha, &p.beta, g.force, err)?;
            let t_max = integer("tmax", &p.tmax)?;
            Emitted::ok(render.interleave(&interleave_report(&session, &t_max)?))
        }
        Command::Verify {
            lemma,
            alpha,
            beta,
            nmax,
            nmin,
            bound,
        } => {
            let reports = match lemma {
                LemmaArg::Lemma2 => {
                    let beta = beta
                        .as_deref()
                        .ok_or_else(|| Error::Domain("lemma2 needs --beta".into()))?;
                    let session = pair(alpha, beta, g.force, err)?;
                    let bound = integer("bound", bound)?;
                    let swapped = session.swapped();
                    with_jobs(g.jobs, |exec| -> Result<Vec<LemmaReport>, Error> {
                        let cfg = LabConfig { exec, budget };
                        Ok(vec![
                            lemma2_check_with(&session, &bound, &cfg)?,
                            lemma2_check_with(&swapped, &bound, &cfg)?,
                        ])
                    })??
                }
                single => {
                    let subject = match (single, beta) {
                        (LemmaArg::Pmidentity, Some(b)) => spec(b)?,
                        _ => spec(alpha)?,
                    };
                    with_jobs(g.jobs, |exec| -> Result<Vec<LemmaReport>, Error> {
                        let cfg = LabConfig { exec, budget };
                        Ok(vec![match single {
                            LemmaArg::Lemma1 => lemma1_check_with(&subject, *nmin, *nmax, &cfg)?,
                            LemmaArg::Corollary => corollary_check_with(&subject, *nmax, &cfg)?,
                            _ => pm_identity_check_with(&subject, *nmax, &cfg)?,
                        }])
                    })??
                }
            };
            Emitted {
                text: render.lemmas(&reports),
                code: verdict(&reports),
                trailing: None,
            }
        }
        Command::Oracle {
            what: OracleCommand::Psi { spec: text, t },
        } => {
            let s = spec(text)?;
            let cfg = OracleConfig::new(g.precision_bits, g.t_cap)?;
            Emitted::ok(render.oracle(&s, &brute_psi(&s, *t, &cfg)?))
        }
    })
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ");
            diagnostic(err, "usage", first);
            return EXIT_USAGE;
        }
    };
    let result = execute(&cli, err);
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            diagnostic(err, e.kind(), &e.to_string());
            return exit_code(&e);
        }
    };
    let written = match &cli.global.output {
        Some(path) => std::fs::write(path, outcome.text.as_bytes()),
        None => out
            .write_all(outcome.text.as_bytes())
            .and_then(|_| out.flush()),
    };
    if let Err(e) = written {
        diagnostic(err, "io", &e.to_string());
        return EXIT_USAGE;
    }
    if let Some(e) = &outcome.trailing {
        diagnostic(err, e.kind(), &e.to_string());
    }
    outcome.code
}
