//! Exact computations on secant varieties of Grassmannians over large prime
//! fields: Terracini dimensions, Hessian contact probes, tangential contact
//! loci, the `SL(8)` orbits on `∧^3 F^8`, and torsion scrolls on elliptic
//! normal curves.

pub mod error;
pub mod exterior;
pub mod field;
pub mod linalg;
pub mod orbit;
pub mod poly;
pub mod report;
pub mod scroll;
pub mod secant;

pub use error::{Error, Result};
pub use field::{FieldContext, PrimeField, DEFAULT_PRIME, DEFAULT_SEED};
