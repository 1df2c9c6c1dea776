//! Exact symbolic engine for the 4D± bicovariant calculi on SU_q(2).

pub mod field;
pub mod linalg;
pub mod calculus;
pub mod connection;
pub mod certify;

pub use field::{BasePoly, BaseRat, FieldElem, FieldError, Point};
pub use linalg::{Field, Mat, Ring};

/// Symbolic matrix over F.
pub type SymMat = Mat<FieldElem>;
/// Matrix over Q at a specialisation point.
pub type RatMat = Mat<num_rational::BigRational>;
