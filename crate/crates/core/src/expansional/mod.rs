//! Time-ordered exponentials of graded kernels with exact iterated integrals,
//! the loops `γ_μ` built from a Lie element `β`, their negative parts, the
//! universal singular frame and the renormalization-group flow.

mod frame;
mod kernel;
mod loops;
mod oracle;

use thiserror::Error;

use crate::scalar_series::SeriesError;

pub use frame::{frame_coefficient, universal_frame, universal_frame_by_integration, FrameRow, FrameTable};
pub use kernel::{iterated_integral, time_ordered_exp, Bound, GradedKernel, KernelKind};
pub use loops::{beta_extract, gamma_minus_from_beta, gamma_mu, rg_flow};
pub use oracle::{eval_series, max_abs_diff, product_integral_oracle, product_integral_path, scattering_oracle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionalError {
    #[error("power-flow integrals diverge at an infinite bound")]
    DivergentBound,
    #[error("invalid bound: {0}")]
    InvalidBound(String),
    #[error("regular factor has a pole")]
    NotRegular,
    #[error("series is not grouplike")]
    NotGrouplike,
    #[error("coefficient of {0} is not a pure pole part")]
    NotPolePure(String),
    #[error("series is not the negative part of any graded β")]
    NoBeta,
    #[error(transparent)]
    Series(#[from] SeriesError),
}
