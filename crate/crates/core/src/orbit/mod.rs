//! The 23 `SL(8)`-orbits on `∧^3 F^8`: canonical forms, orbit and dual
//! dimensions, the duality pairing and a signature classifier.

mod forms;
mod invariants;
mod labels;
mod table;

pub use forms::{
    canonical_form, canonical_forms_text, form_from_words, form_words, parse_canonical_forms, CLOSURE_EDGES,
    DUALITY_ROWS, LETTERS, ORBIT_DIMS,
};
pub use invariants::{dual_cone_dim, flattening_rank, orbit_dim, osculating_dim, signature, DualDim, Signature};
pub use labels::OrbitLabel;
pub use table::{closure_edges, orbit_table, table_partner, Classification, OrbitRecord, SignatureTable};
