//! Exact scalar, polynomial and linear-algebra kernel.
//!
//! Everything downstream is generic over the runtime [`Field`] (the
//! rationals, or a prime field `F_p`); no floating point appears anywhere.

mod field;
mod linsys;
mod poly;
mod polymat;
mod smith;

pub use field::{Field, Scalar};
pub use linsys::{AffineSolutionSpace, LinearSystem, ScalarMat};
pub use poly::Poly;
pub use polymat::PolyMatrix;
pub use smith::{matrix_smith_reduce, SmithDecomposition};
