#![no_std]

extern crate alloc;

pub mod algebra;
pub mod calculus;
pub mod cauchy;
pub mod error;
pub mod fueter;
pub mod handle;
pub mod kernel;
pub mod poly;
pub mod quadrature;
pub mod scalar;
pub mod slicegeom;
pub mod stem;
pub mod taylor;

pub use algebra::{LeftMulOperator, Octonion};
pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
pub use slicegeom::{split, SlicePoint, SliceSignature, SplitPoint};
pub use poly::{OctPolynomial, Var};
pub use stem::StemFunction;
pub use fueter::{AssociationTree, MultiIndex};
pub use handle::{Handle, SliceFunction};
