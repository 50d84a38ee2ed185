//! Exact computations with characteristic functions of linear maps between
//! finite-dimensional commutative algebras over ℚ: Frobenius n-homomorphisms,
//! p|q-homomorphisms, symmetric powers of algebras and of finite spaces.

pub mod algebra;
pub mod charfn;
pub mod cli;
pub mod error;
pub mod finitespace;
pub mod frobenius;
pub mod homclass;
pub mod io;
pub mod linalg;
pub mod scalar;
pub mod series;
pub mod suite;
pub mod sympower;

pub use algebra::{Algebra, Element, LinearMap};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use series::TruncatedSeries;
