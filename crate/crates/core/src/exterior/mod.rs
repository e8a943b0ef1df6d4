//! Exterior algebra over a prime field: basis indexing, dense alternating
//! tensors, Plücker coordinates with second-order jets, and the `gl` action.

mod action;
mod index;
mod plucker;
mod tensor;

pub use action::{elementary, gl_action, gl_orbit_generators, group_action};
pub use index::{binomial, subsets, MultiIndex};
pub use plucker::{
    plucker, plucker_jet, tangent_frame, ChartPoint, Grassmannian, Jet2, PluckerPlan,
    QuadraticForm, TangentFrame,
};
pub use tensor::{AlternatingTensor, TensorFile, TensorTerm};
