//! Sparse multivariate polynomials over a prime field, Gröbner bases and
//! linear-subvariety containment.

mod groebner;
mod locus;
#[allow(clippy::module_inception)]
mod poly;

pub use groebner::{
    buchberger, ideal_dimension, normal_form, GroebnerOptions, GroebnerResult, GroebnerStatus,
    DEFAULT_DEGREE_CAP,
};
pub use locus::{contains_linear_locus, LinearLocus};
pub use poly::{format_ideal, parse_ideal, Monomial, SparsePoly};
