//! Exact polynomials and truncated power series over the rationals, plus
//! normal forms modulo the nodal cubic `y^2 - x^2 - x^3`.

mod curve;
mod poly;
mod series;

pub use curve::{CurveElement, CurveRelation};
pub use poly::{monomial_order, total_degree, vars, weighted_degree, Exponent, Poly, Vars};
pub use series::{derive_branch_coefficients, series_sqrt_one_plus, Series};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("variable lists differ: [{0}] vs [{1}]")]
    VariableMismatch(String, String),
    #[error("series gradings differ")]
    GradingMismatch,
    #[error("substitution needs one image per variable")]
    MissingImage,
    #[error("precision error: {0}")]
    Precision(String),
    #[error("parse error: {0}")]
    Parse(String),
}
