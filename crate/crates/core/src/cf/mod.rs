//! Continued fraction digits, convergents, tails and reversed tails for every number source.

mod expand;
mod seq;
mod spec;

pub use expand::{cf_of_rational, cf_of_surd};
pub(crate) use seq::reversed_from;
pub use seq::{ConvergentRecord, Convergents, DigitStream, ReversedTail, TailValue};
pub use spec::{parse_number_spec, Exactness, NumberSpec, Source};
