//! Exact arithmetic: big rationals, quadratic surds, and refinable enclosures.

mod decimal;
pub(crate) mod int;
mod interval;
mod real;
mod surd;

pub use decimal::{to_decimal, to_decimal_truncated, to_decimal_with, DecimalMode};
#[cfg(test)]
pub(crate) use interval::prefix_enclosure;
pub(crate) use interval::DigitRefiner;
pub use interval::{RationalInterval, Refine};
pub use real::{exact_arith, exact_cmp, ArithOp, ExactReal, RefinementBudget};
pub(crate) use surd::QuadElem;
pub use surd::{canonicalize_surd, QuadraticSurd};

/// Compares by cross-multiplication; `Ratio`'s own `Ord` recurses once per
/// continued fraction digit of its operands.
pub(crate) fn rcmp(x: &Rational, y: &Rational) -> std::cmp::Ordering {
    (x.numer() * y.denom()).cmp(&(y.numer() * x.denom()))
}

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;
