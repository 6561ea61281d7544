//! `G_m`-invariant flat connections with values in a graded loop algebra,
//! their restrictions to sections, solutions, negative parts and the
//! classification of equisingular ones by a Lie element `β`.

mod algebra;
mod classify;
mod connection;
mod json;

use thiserror::Error;

use crate::free_graded::FreeGradedError;
use crate::scalar_series::SeriesError;

pub use algebra::{
    augmentation, birkhoff_layered, bracket, component, derivative, grading, grading_power, inverse_grading,
    nilpotent_exp, pole_part, unipotent_inverse, unipotent_log, value_at_zero, LaurentMatrix, LoopAlgebra,
};
pub use classify::{
    classify_beta, default_sections, equisingularity_check, equivalent_negative_parts, negative_part,
    section_cap, section_change_regular_value, section_loop,
};
pub use connection::{
    beta_loop, is_regular, log_derivative, restrict_to_section, solve_df, InvariantConnection, Obstruction, Section,
};
pub use json::{connection_from_json, connection_to_json, verdict, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("connection is not flat")]
    NotFlat,
    #[error("nontrivial monodromy: residue {residue} in degree {degree}")]
    Obstructed { degree: u32, residue: String },
    #[error("negative parts depend on the section")]
    NotEquisingular,
    #[error("not a section (needs α regular with α(0) = 1): {0}")]
    BadSection(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    FreeGraded(#[from] FreeGradedError),
}
