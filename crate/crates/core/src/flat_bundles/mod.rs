//! Flat equisingular bundles at the data level: graded spaces with their
//! weight filtration, objects given by graded representations `β`, the
//! morphism condition, `Q(n)` and the fiber functor.

mod json;
mod linalg;
mod object;
mod space;

use thiserror::Error;

pub use linalg::{identity, mat_mul, mat_sub, rank, zeros, RatMatrix};
pub use object::{
    fiber_functor, fiber_map, hom_dimension, intertwines, morphism_check, morphism_check_connections,
    morphism_connections, object_from_rep, qn_object, BundleObject, Morphism,
};
pub use space::{GradedSpace, WFiltration};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("β_{n} has a nonzero entry at ({row}, {col}) that does not raise degree by {n}")]
    NotFiltrationCompatible { n: u32, row: usize, col: usize },
    #[error("morphism entry ({row}, {col}) does not preserve degree")]
    NotDegreeCompatible { row: usize, col: usize },
    #[error("expected a {rows} x {cols} matrix")]
    Shape { rows: usize, cols: usize },
    #[error("matrix entry {0} is not a rational constant")]
    NotConstant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}
