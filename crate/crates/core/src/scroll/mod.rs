//! Elliptic normal curves of degree 10 with a rational 3-torsion point, the
//! torsion scroll of planes in `Gr(P^2, P^9)`, and its contact experiment.

mod curve;
mod experiment;

pub use curve::{curve_with_3torsion, embed10, CurvePoint, EllipticCurve};
pub use experiment::{
    hilbert_probe, hilbert_rank, scroll_contact_experiment, scroll_plane, HilbertProbe, HilbertSummary, ScrollOptions,
    ScrollReport, ScrollSample, MIN_SCROLL_PRIME,
};
