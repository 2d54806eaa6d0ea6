//! Exact symbolic calculus on n-plectic manifolds.
//!
//! All symbolic work happens over the rational numbers: coefficients of forms
//! and multivector fields are [`ScalarExpr`] rational functions, so every
//! identity is checked by exact zero testing. Floating point appears only in
//! quadrature, which verifies closed-form integrals.

pub mod cartan;
pub mod courant;
pub mod deligne;
pub mod error;
pub mod fixtures;
pub mod leibniz;
pub mod linalg;
pub mod liegroup;
pub mod linfty;
pub mod perm;
pub mod plectic;
pub mod quadrature;
pub mod quantize;
pub mod random;
pub mod scalar;

pub use error::{Error, Result};
pub use cartan::{Form, MultiVector};
pub use plectic::{HamiltonianPair, PlecticStructure};
pub use scalar::{Chart, Rational, ScalarExpr};
