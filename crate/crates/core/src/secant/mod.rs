//! Secant varieties of Grassmannians: Terracini dimensions, the Hessian
//! contact probe, tangential-contact loci and identifiability verdicts.

mod case;
mod contact;
pub mod gr27;
mod scan;
mod tcl;
mod terracini;
mod verdict;

pub use case::GrassmannCase;
pub use contact::{
    common_kernel_dim, contact_kernel_at, contact_kernel_dim, hessian_kernel_dim, modal_value, ContactOptions,
    ContactReport,
};
pub use gr27::{gr27_oracle, Gr27Options, Gr27Report, OracleCheck};
pub use scan::{defectivity_scan, scan_grassmannian, scan_grassmannians, ScanOptions, ScanRecord, ScanReport};
pub use tcl::{
    symbolic_plucker, tcl_dimension, tcl_ideal, tcl_membership, tcl_membership_echelon, terracini_span, TclIdeal,
    TclOutcome, TCL_DEGREE_CAP,
};
pub use terracini::{terracini_dim, PointStream, TerraciniReport, TerraciniSpan};
pub use verdict::{
    contact_dim_from_dual_codim, identifiability_verdict, known_verdict, ContactFromDual, SecantDegree, Verdict,
};
