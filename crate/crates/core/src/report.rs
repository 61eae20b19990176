//! Deterministic CSV, JSON and table rendering of every report.
//!
//! Decimals are truncated, never rounded. JSON carries every integer as a
//! decimal string and every value in exact form next to its decimal.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::arith::{to_decimal_with, DecimalMode, ExactReal, Rational, RefinementBudget};
use crate::cf::{ConvergentRecord, NumberSpec};
use crate::lab::{
    GuardStatus, InterleaveReport, LemmaKind, LemmaReport, Outcome, PsiDifference, SignChangeReport,
};
use crate::psi::{OracleResult, PsiStep};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    #[default]
    Table,
}

/// Rendering settings shared by every report.
#[derive(Clone, Copy, Debug)]
pub struct Render {
    pub format: Format,
    /// Places after the decimal point.
    pub digits: usize,
    pub budget: RefinementBudget,
}

impl Default for Render {
    fn default() -> Self {
        Render {
            format: Format::Table,
            digits: 30,
            budget: RefinementBudget::default(),
        }
    }
}

fn rational_json(q: &Rational) -> Value {
    json!({"kind": "rational", "num": q.numer().to_string(), "den": q.denom().to_string()})
}

/// Exact form: surd `{a, b, d, c}`, rational `{num, den}` or interval `{lo, hi}`.
pub fn exact_json(x: &ExactReal) -> Value {
    match x {
        ExactReal::Rational(q) => rational_json(q),
        ExactReal::Surd(s) => json!({
            "kind": "surd",
            "a": s.a().to_string(),
            "b": s.b().to_string(),
            "d": s.d().to_string(),
            "c": s.c().to_string(),
        }),
        ExactReal::Interval(iv) => json!({
            "kind": "interval",
            "lo": rational_json(iv.lo()),
            "hi": rational_json(iv.hi()),
        }),
    }
}

fn csv_line(out: &mut String, cells: &[String]) {
    out.push_str(&cells.join(","));
    out.push('\n');
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let header: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    for row in std::iter::once(&header).chain(rows) {
        let mut line = String::new();
        for (i, (cell, w)) in row.iter().zip(&widths).enumerate() {
            if i + 1 == row.len() {
                line.push_str(cell);
            } else {
                let _ = write!(line, "{cell:<w$}  ");
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn digit_list(digits: &[BigInt]) -> String {
    let mut s = format!("[{}", digits[0]);
    if digits.len() > 1 {
        let rest: Vec<String> = digits[1..].iter().map(|d| d.to_string()).collect();
        let _ = write!(s, ";{}", rest.join(","));
    }
    s.push(']');
    s
}

impl Render {
    /// Truncated decimal; an enclosure too wide to certify prints as `lo..hi`.
    pub fn dec(&self, x: &ExactReal) -> String {
        match to_decimal_with(x, self.digits, DecimalMode::Truncate, &self.budget) {
            Ok(s) => s,
            Err(_) => {
                let (lo, hi) = x.enclosure(64);
                let end = |q: Rational| {
                    to_decimal_with(
                        &ExactReal::Rational(q),
                        self.digits,
                        DecimalMode::Truncate,
                        &self.budget,
                    )
                    .expect("rationals always render")
                };
                format!("{}..{}", end(lo), end(hi))
            }
        }
    }

    fn dec_column(&self) -> String {
        format!("dec{}", self.digits)
    }

    /// Partial quotients, e.g. `[3;7,16]`.
    pub fn expand(&self, spec: &NumberSpec, digits: &[BigInt], complete: bool) -> String {
        match self.format {
            Format::Table => {
                if digits.is_empty() {
                    return "[]\n".into();
                }
                format!("{}\n", digit_list(digits))
            }
            Format::Csv => {
                let mut out = String::from("n,a\n");
                for (n, a) in digits.iter().enumerate() {
                    csv_line(&mut out, &[n.to_string(), a.to_string()]);
                }
                out
            }
            Format::Json => json_text(&json!({
                "spec": spec.render(),
                "digits": digits.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "complete": complete,
            })),
        }
    }

    pub fn convergents(&self, spec: &NumberSpec, recs: &[ConvergentRecord]) -> String {
        let rows: Vec<Vec<String>> = recs
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.a.to_string(),
                    r.r.to_string(),
                    r.q.to_string(),
                ]
            })
            .collect();
        match self.format {
            Format::Table => table(&["n", "a", "r", "q"], &rows),
            Format::Csv => {
                let mut out = String::from("n,a,r,q\n");
                for row in &rows {
                    csv_line(&mut out, row);
                }
                out
            }
            Format::Json => {
                let list: Vec<Value> = recs
                    .iter()
                    .map(|r| {
                        json!({"n": r.n.to_string(), "a": r.a.to_string(), "r": r.r.to_string(), "q": r.q.to_string()})
                    })
                    .collect();
                json_text(&json!({"spec": spec.render(), "convergents": list}))
            }
        }
    }

    /// `psi(t)` together with the convergent that attains it.
    pub fn psi(
        &self,
        spec: &NumberSpec,
        t: &BigInt,
        rec: &ConvergentRecord,
        value: &ExactReal,
    ) -> String {
        let dec = self.dec(value);
        match self.format {
            Format::Table => format!("t={t} k={} q_k={} value={value} dec={dec}\n", rec.n, rec.q),
            Format::Csv => {
                let mut out = format!("t,k,q_k,value_{}\n", self.dec_column());
                csv_line(
                    &mut out,
                    &[t.to_string(), rec.n.to_string(), rec.q.to_string(), dec],
                );
                out
            }
            Format::Json => json_text(&json!({
                "spec": spec.render(),
                "t": t.to_string(),
                "k": rec.n.to_string(),
                "q_k": rec.q.to_string(),
                "value": exact_json(value),
                "decimal": dec,
            })),
        }
    }

    pub fn steps(&self, spec: &NumberSpec, t_max: &BigInt, steps: &[PsiStep]) -> String {
        let rows: Vec<Vec<String>> = steps
            .iter()
            .map(|s| {
                vec![
                    s.t_start.to_string(),
                    s.t_end.to_string(),
                    s.k.to_string(),
                    s.q_k.to_string(),
                    self.dec(&s.value),
                ]
            })
            .collect();
        let value_col = format!("value_{}", self.dec_column());
        match self.format {
            Format::Table => table(&["t_start", "t_end", "k", "q_k", &value_col], &rows),
            Format::Csv => {
                let mut out = format!("t_start,t_end,k,q_k,{value_col}\n");
                for row in &rows {
                    csv_line(&mut out, row);
                }
                out
            }
            Format::Json => {
                let list: Vec<Value> = steps
                    .iter()
                    .zip(&rows)
                    .map(|(s, row)| {
                        json!({
                            "t_start": row[0], "t_end": row[1], "k": row[2], "q_k": row[3],
                            "value": exact_json(&s.value),
                            "signed": exact_json(&s.signed),
                            "decimal": row[4],
                        })
                    })
                    .collect();
                json_text(
                    &json!({"spec": spec.render(), "t_max": t_max.to_string(), "steps": list}),
                )
            }
        }
    }

    fn diff_dec(&self, d: &PsiDifference) -> String {
        match d.value() {
            Ok(v) => self.dec(&v),
            Err(e) => format!("error:{}", e.kind()),
        }
    }

    fn diff_json(&self, d: &PsiDifference) -> Value {
        json!({
            "t": d.t.to_string(),
            "psi_alpha": exact_json(&d.psi_alpha),
            "psi_beta": exact_json(&d.psi_beta),
            "decimal": self.diff_dec(d),
        })
    }

    pub fn sign_changes(&self, rep: &SignChangeReport, guard: &GuardStatus) -> String {
        let rows: Vec<Vec<String>> = rep
            .events
            .iter()
            .map(|e| {
                vec![
                    e.t.to_string(),
                    e.sign_before.symbol().to_string(),
                    e.sign_after.symbol().to_string(),
                    self.diff_dec(&e.d_before),
                    self.diff_dec(&e.d_after),
                ]
            })
            .collect();
        let before = format!("d_before_{}", self.dec_column());
        let after = format!("d_after_{}", self.dec_column());
        match self.format {
            Format::Csv => {
                let mut out = format!("t,sign_before,sign_after,{before},{after}\n");
                for row in &rows {
                    csv_line(&mut out, row);
                }
                out
            }
            Format::Table => {
                let mut out = String::new();
                if !rows.is_empty() {
                    out.push_str(&table(
                        &["t", "sign_before", "sign_after", &before, &after],
                        &rows,
                    ));
                }
                let _ = writeln!(out, "changes={} pattern={}", rep.count(), rep.pattern());
                for z in &rep.zeros {
                    let _ = writeln!(out, "zero t={}..{}", z.t_start, z.t_end);
                }
                for t in &rep.undecided {
                    let _ = writeln!(out, "undecided t={t}");
                }
                out
            }
            Format::Json => {
                let events: Vec<Value> = rep
                    .events
                    .iter()
                    .map(|e| {
                        json!({
                            "t": e.t.to_string(),
                            "sign_before": e.sign_before.symbol().to_string(),
                            "sign_after": e.sign_after.symbol().to_string(),
                            "d_before": self.diff_json(&e.d_before),
                            "d_after": self.diff_json(&e.d_after),
                        })
                    })
                    .collect();
                let zeros: Vec<Value> = rep
                    .zeros
                    .iter()
                    .map(
                        |z| json!({"t_start": z.t_start.to_string(), "t_end": z.t_end.to_string()}),
                    )
                    .collect();
                let undecided: Vec<String> = rep.undecided.iter().map(|t| t.to_string()).collect();
                json_text(&json!({
                    "alpha": rep.alpha,
                    "beta": rep.beta,
                    "guard": guard.to_string(),
                    "t_max": rep.t_max.to_string(),
                    "count": rep.count().to_string(),
                    "pattern": rep.pattern(),
                    "events": events,
                    "zero_intervals": zeros,
                    "undecided": undecided,
                }))
            }
        }
    }

    fn lemma_line(&self, kind: LemmaKind, e: &crate::lab::LemmaEntry) -> String {
        let mut line = format!("n={}", e.n);
        if let Some(m) = e.m {
            let _ = write!(line, " m={m}");
        }
        let _ = write!(line, " {} lhs={}", e.outcome.label(), self.dec(&e.lhs));
        if kind != LemmaKind::Corollary {
            let _ = write!(line, " rhs={}", self.dec(&e.rhs));
        }
        if let Outcome::Undecided(reason) = &e.outcome {
            let _ = write!(line, " reason=\"{reason}\"");
        }
        line.push('\n');
        for (name, v) in &e.witness {
            let _ = writeln!(line, "  witness {name}={v}");
        }
        if !e.witness.is_empty() {
            let _ = writeln!(line, "  witness lhs={} rhs={}", e.lhs, e.rhs);
        }
        line
    }

    /// One or more lemma reports; tables label each report when there are several.
    pub fn lemmas(&self, reports: &[LemmaReport]) -> String {
        match self.format {
            Format::Table => {
                let mut out = String::new();
                for rep in reports {
                    if reports.len() > 1 {
                        let _ = writeln!(out, "# {} {}", rep.lemma, rep.subjects.join(" vs "));
                    }
                    for e in &rep.entries {
                        out.push_str(&self.lemma_line(rep.lemma, e));
                    }
                }
                out
            }
            Format::Csv => {
                let col = self.dec_column();
                let mut out = format!("lemma,subjects,n,m,outcome,lhs_{col},rhs_{col}\n");
                for rep in reports {
                    for e in &rep.entries {
                        csv_line(
                            &mut out,
                            &[
                                rep.lemma.to_string(),
                                rep.subjects.join(" vs "),
                                e.n.to_string(),
                                e.m.map(|m| m.to_string()).unwrap_or_default(),
                                e.outcome.label().to_string(),
                                self.dec(&e.lhs),
                                self.dec(&e.rhs),
                            ],
                        );
                    }
                }
                out
            }
            Format::Json => {
                let list: Vec<Value> = reports.iter().map(|r| self.lemma_json(r)).collect();
                json_text(&Value::Array(list))
            }
        }
    }

    fn lemma_json(&self, rep: &LemmaReport) -> Value {
        let entries: Vec<Value> = rep
            .entries
            .iter()
            .map(|e| {
                let mut o = Map::new();
                o.insert("n".into(), e.n.to_string().into());
                if let Some(m) = e.m {
                    o.insert("m".into(), m.to_string().into());
                }
                o.insert("outcome".into(), e.outcome.label().into());
                if let Outcome::Undecided(reason) = &e.outcome {
                    o.insert("reason".into(), reason.clone().into());
                }
                o.insert("lhs".into(), exact_json(&e.lhs));
                o.insert("rhs".into(), exact_json(&e.rhs));
                o.insert("lhs_decimal".into(), self.dec(&e.lhs).into());
                o.insert("rhs_decimal".into(), self.dec(&e.rhs).into());
                if !e.witness.is_empty() {
                    let w: Map<String, Value> = e
                        .witness
                        .iter()
                        .map(|(k, v)| (k.clone(), exact_json(v)))
                        .collect();
                    o.insert("witness".into(), Value::Object(w));
                }
                Value::Object(o)
            })
            .collect();
        json!({
            "lemma": rep.lemma.name(),
            "subjects": rep.subjects,
            "index_lo": rep.index_lo.to_string(),
            "index_hi": rep.index_hi.to_string(),
            "bound": rep.bound.as_ref().map(|b| b.to_string()),
            "entries": entries,
        })
    }

    pub fn interleave(&self, rep: &InterleaveReport) -> String {
        match self.format {
            Format::Table => {
                let mut out = format!("{}\n", rep.pattern());
                for note in &rep.notes {
                    let _ = writeln!(out, "note: {note}");
                }
                out
            }
            Format::Csv => {
                let mut out = String::from("denominator,mark\n");
                for (v, m) in &rep.entries {
                    csv_line(&mut out, &[v.to_string(), m.token().to_string()]);
                }
                out
            }
            Format::Json => {
                let list: Vec<Value> = rep
                    .entries
                    .iter()
                    .map(|(v, m)| json!({"denominator": v.to_string(), "mark": m.token()}))
                    .collect();
                json_text(&json!({
                    "t_max": rep.t_max.to_string(),
                    "pattern": rep.pattern(),
                    "entries": list,
                    "notes": rep.notes,
                }))
            }
        }
    }

    pub fn oracle(&self, spec: &NumberSpec, res: &OracleResult) -> String {
        let lo = self.dec(&ExactReal::Rational(res.lo.clone()));
        let hi = self.dec(&ExactReal::Rational(res.hi.clone()));
        match self.format {
            Format::Table => format!(
                "t={} argmin={} lo={lo} hi={hi} bits={}\n",
                res.t, res.argmin, res.bits
            ),
            Format::Csv => {
                let col = self.dec_column();
                let mut out = format!("t,argmin,lo_{col},hi_{col},bits\n");
                csv_line(
                    &mut out,
                    &[
                        res.t.to_string(),
                        res.argmin.to_string(),
                        lo,
                        hi,
                        res.bits.to_string(),
                    ],
                );
                out
            }
            Format::Json => json_text(&json!({
                "spec": spec.render(),
                "t": res.t.to_string(),
                "argmin": res.argmin.to_string(),
                "lo": rational_json(&res.lo),
                "hi": rational_json(&res.hi),
                "lo_decimal": lo,
                "hi_decimal": hi,
                "bits": res.bits.to_string(),
            })),
        }
    }
}
