//! Exact dense linear algebra, generic over the scalar ring.

mod elim;
mod mat;
mod scalar;

pub use elim::{components, components_flip_sign, det, inverse, kernel, rank, solve, Component};
pub use mat::Mat;
pub use scalar::{Field, Ring};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is singular (no pivot in column {column})")]
    SingularMatrix { column: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
