//! Number descriptions and their text grammar.
//!
//! ```text
//! rat:<int>/<posint>
//! quad:(<int>+<int>*sqrt(<posint>))/<posint>
//! cf:[<int>;<d1>,<d2>,...]            cf:[<int>;<d1>,(<p1>,<p2>)]
//! dec:<decimal>..<decimal>
//! ```

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::expand::{cf_of_rational, eval_finite, GaussExpansion, Periodic};
use crate::arith::{canonicalize_surd, ExactReal, QuadraticSurd, Rational};
use crate::error::{Error, Result};

/// Where the digits of a number come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Rational(Rational),
    Surd(QuadraticSurd),
    /// Explicit digits. `pre[0]` is `a0`; a period, when present, repeats forever.
    ExplicitCf {
        pre: Vec<BigInt>,
        period: Option<Vec<BigInt>>,
    },
    /// A real known only to lie in `[lo, hi]`, `lo < hi`.
    DecimalEnclosure {
        lo: Rational,
        hi: Rational,
    },
}

/// How much is known exactly about a number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exactness {
    Rational,
    Quadratic,
    Enclosure,
}

#[derive(Clone, Debug)]
pub(crate) enum Expansion {
    Finite {
        digits: Vec<BigInt>,
        value: Rational,
    },
    Periodic(Periodic),
    Enclosure(GaussExpansion),
}

/// A parsed real number that yields continued fraction digits on demand.
///
/// Immutable once built; share it freely across threads.
#[derive(Clone, Debug)]
pub struct NumberSpec {
    source: Source,
    label: String,
    pub(crate) expansion: Expansion,
}

/// Parses the text grammar into a [`NumberSpec`].
pub fn parse_number_spec(text: &str) -> Result<NumberSpec> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    let source = Parser {
        s: trimmed.as_bytes(),
        pos: 0,
        offset,
    }
    .source()?;
    NumberSpec::new(source, trimmed)
}

impl FromStr for NumberSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_number_spec(s)
    }
}

impl NumberSpec {
    pub fn new(source: Source, label: impl Into<String>) -> Result<NumberSpec> {
        let (source, expansion) = match source {
            Source::Rational(q) => {
                let digits = cf_of_rational(q.numer(), q.denom())?;
                (
                    Source::Rational(q.clone()),
                    Expansion::Finite { digits, value: q },
                )
            }
            Source::Surd(s) => {
                let p = Periodic::from_surd(&s);
                (Source::Surd(s), Expansion::Periodic(p))
            }
            Source::ExplicitCf { pre, period } => {
                if pre.is_empty() {
                    return Err(Error::Domain("a continued fraction needs a0".into()));
                }
                let tail_digits = pre[1..].iter().chain(period.iter().flatten());
                if tail_digits.clone().any(|a| !a.is_positive()) {
                    return Err(Error::Domain(
                        "partial quotients after a0 must be positive".into(),
                    ));
                }
                let expansion = match &period {
                    Some(p) if p.is_empty() => {
                        return Err(Error::Domain("a declared period must be nonempty".into()))
                    }
                    Some(p) => Expansion::Periodic(Periodic::from_digits(&pre, p)?),
                    None => Expansion::Finite {
                        value: eval_finite(&pre),
                        digits: pre.clone(),
                    },
                };
                (Source::ExplicitCf { pre, period }, expansion)
            }
            Source::DecimalEnclosure { lo, hi } => {
                if crate::arith::rcmp(&lo, &hi).is_ge() {
                    return Err(Error::Domain(format!(
                        "enclosure needs lo < hi, got {lo}..{hi}"
                    )));
                }
                let g = GaussExpansion::new(&lo, &hi);
                (Source::DecimalEnclosure { lo, hi }, Expansion::Enclosure(g))
            }
        };
        Ok(NumberSpec {
            source,
            label: label.into(),
            expansion,
        })
    }

    pub fn rational(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<NumberSpec> {
        let (p, q) = (p.into(), q.into());
        if q.is_zero() {
            return Err(Error::Domain("rational with zero denominator".into()));
        }
        let source = Source::Rational(BigRational::new(p, q));
        let label = render_source(&source);
        NumberSpec::new(source, label)
    }

    /// Wraps an exact value; surds and rationals only.
    pub fn from_exact(x: &ExactReal) -> Result<NumberSpec> {
        let source = match x {
            ExactReal::Rational(q) => Source::Rational(q.clone()),
            ExactReal::Surd(s) => Source::Surd(s.clone()),
            ExactReal::Interval(_) => {
                return Err(Error::Domain(
                    "enclosures need an explicit dec: source".into(),
                ))
            }
        };
        let label = render_source(&source);
        NumberSpec::new(source, label)
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn exactness(&self) -> Exactness {
        match self.expansion {
            Expansion::Finite { .. } => Exactness::Rational,
            Expansion::Periodic(_) => Exactness::Quadratic,
            Expansion::Enclosure(_) => Exactness::Enclosure,
        }
    }

    /// Canonical text form; parsing it gives back the same source.
    pub fn render(&self) -> String {
        render_source(&self.source)
    }
}

impl fmt::Display for NumberSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn join(digits: &[BigInt]) -> String {
    digits
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn render_source(source: &Source) -> String {
    match source {
        Source::Rational(q) => format!("rat:{}/{}", q.numer(), q.denom()),
        Source::Surd(s) => format!("quad:{s}"),
        Source::ExplicitCf { pre, period } => {
            let mut body = pre[0].to_string();
            let rest = join(&pre[1..]);
            let per = period.as_ref().map(|p| format!("({})", join(p)));
            let items: Vec<String> = [Some(rest).filter(|r| !r.is_empty()), per]
                .into_iter()
                .flatten()
                .collect();
            if !items.is_empty() {
                body.push(';');
                body.push_str(&items.join(","));
            }
            format!("cf:[{body}]")
        }
        Source::DecimalEnclosure { lo, hi } => {
            format!("dec:{}..{}", exact_decimal(lo), exact_decimal(hi))
        }
    }
}

/// Terminating decimal of a rational whose denominator divides a power of ten.
fn exact_decimal(q: &Rational) -> String {
    let ten = BigInt::from(10);
    let mut scale = BigInt::one();
    let mut places = 0usize;
    while !(&scale % q.denom()).is_zero() {
        scale *= &ten;
        places += 1;
    }
    let units = (q.numer().abs() * &scale) / q.denom();
    let sign = if q.is_negative() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{units}");
    }
    let s = format!("{:0>width$}", units.to_string(), width = places + 1);
    let split = s.len() - places;
    format!("{sign}{}.{}", &s[..split], &s[split..])
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    offset: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.offset + self.pos, msg)
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{lit}`")))
        }
    }

    fn end(&self) -> Result<()> {
        if self.pos == self.s.len() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    fn digits(&mut self) -> Result<&str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits"))
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        let v: BigInt = self.digits()?.parse().expect("validated digits");
        Ok(if neg { -v } else { v })
    }

    fn decimal(&mut self) -> Result<Rational> {
        let neg = self.eat("-");
        let whole: BigInt = self.digits()?.parse().expect("validated digits");
        let mut value = BigRational::from_integer(whole);
        if self.peek() == Some(b'.') && self.s.get(self.pos + 1) != Some(&b'.') {
            self.pos += 1;
            let frac = self.digits()?;
            let scale = BigInt::from(10).pow(frac.len() as u32);
            let f: BigInt = frac.parse().expect("validated digits");
            value += BigRational::new(f, scale);
        }
        Ok(if neg { -value } else { value })
    }

    fn source(mut self) -> Result<Source> {
        if self.eat("rat:") {
            let p = self.int()?;
            self.expect("/")?;
            let q = self.int()?;
            self.end()?;
            if q.is_zero() {
                return Err(Error::Domain("rational with zero denominator".into()));
            }
            if q.is_negative() {
                return Err(Error::Domain(
                    "rational denominator must be positive".into(),
                ));
            }
            Ok(Source::Rational(BigRational::new(p, q)))
        } else if self.eat("quad:") {
            self.expect("(")?;
            let a = self.int()?;
            let minus = match self.peek() {
                Some(b'+') => false,
                Some(b'-') => true,
                _ => return Err(self.err("expected `+` or `-`")),
            };
            self.pos += 1;
            let b = self.int()?;
            let b = if minus { -b } else { b };
            self.expect("*sqrt(")?;
            let d = self.int()?;
            self.expect("))/")?;
            let c = self.int()?;
            self.end()?;
            Ok(match canonicalize_surd(a, b, d, c)? {
                ExactReal::Rational(q) => Source::Rational(q),
                ExactReal::Surd(s) => Source::Surd(s),
                ExactReal::Interval(_) => unreachable!("canonical surds are exact"),
            })
        } else if self.eat("cf:[") {
            let a0 = self.int()?;
            let mut pre = vec![a0];
            let mut period = None;
            if self.eat(";") {
                loop {
                    if self.eat("(") {
                        let mut p = vec![self.int()?];
                        while self.eat(",") {
                            p.push(self.int()?);
                        }
                        self.expect(")")?;
                        period = Some(p);
                        break;
                    }
                    pre.push(self.int()?);
                    if !self.eat(",") {
                        break;
                    }
                }
            }
            self.expect("]")?;
            self.end()?;
            Ok(Source::ExplicitCf { pre, period })
        } else if self.eat("dec:") {
            let lo = self.decimal()?;
            self.expect("..")?;
            let hi = self.decimal()?;
            self.end()?;
            Ok(Source::DecimalEnclosure { lo, hi })
        } else {
            Err(self.err("expected one of `rat:`, `quad:`, `cf:`, `dec:`"))
        }
    }
}
