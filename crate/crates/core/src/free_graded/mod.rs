//! The free graded Lie algebra on generators `e_{-n}` of degree `n`, its
//! completed enveloping algebra as truncated noncommutative series, the
//! grading `Y` (the adjoint action of `Z0`) and the shuffle product.

mod birkhoff;
mod json;
mod series;
mod shuffle;
mod word;

use thiserror::Error;

use crate::scalar_series::SeriesError;

pub use birkhoff::birkhoff_series;
pub use json::JsonCoeff;
pub use series::{GroupElement, LieElement, NCSeries};
pub use shuffle::{shuffle, shuffle_count, shuffle_series};
pub use word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGradedError {
    #[error("bad constant term: {0}")]
    BadConstantTerm(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
}
