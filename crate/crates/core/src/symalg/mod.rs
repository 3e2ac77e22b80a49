//! Symbolic arithmetic: linear forms, sparse polynomials, factored rational
//! functions, univariate polynomials and additive (`τ`-) polynomials.

mod factored;
mod linear_form;
mod sparse;
mod tau;
mod unipoly;

use thiserror::Error;

pub use factored::{random_point, FactoredRational, FrRing};
pub use linear_form::LinearForm;
pub use sparse::SparsePoly;
pub use tau::TauPoly;
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("coefficient {coefficient} at exponent {exponent} is not at a power of q")]
    NonAdditive { exponent: usize, coefficient: String },
}
