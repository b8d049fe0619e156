//! Exact construction, verification and classification of almost-factorizable
//! Lie bialgebra structures on real absolutely simple Lie algebras.

pub mod algebra;
pub mod bdtriple;
pub mod error;
pub mod extract;
pub mod involution;
pub mod linalg;
pub mod manin;
pub mod parameter;
pub mod realform;
pub mod rmatrix;
pub mod rootsystem;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
