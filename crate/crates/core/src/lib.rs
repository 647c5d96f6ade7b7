//! Exact computations on finite-dimensional algebras given by matrices of
//! structure constants.

pub mod algebra;
pub mod automorphisms;
pub mod classify2d;
pub mod construct;
pub mod derivations;
pub mod error;
pub mod experiments;
pub mod field;
pub mod linalg;
pub mod simplicity;
pub mod smallfield;

pub use algebra::{LinMap, Msc, MscJson, Side};
pub use error::{Error, Result};
pub use field::{FieldSpec, Poly, Scalar};
pub use linalg::{Mat, Subspace, Vector};
