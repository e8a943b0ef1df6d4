use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::case::GrassmannCase;
use super::contact::ContactReport;
use super::scan::ScanRecord;
use super::tcl::TclOutcome;
use crate::error::Error;

/// Number of decompositions of a generic element of `σ_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SecantDegree {
    Finite(u64),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Identifiable,
    /// Weakly defective, yet a generic element has a unique decomposition.
    WeaklyDefectiveIdentifiable,
    NotIdentifiable(SecantDegree),
    NeedsTclAnalysis,
    /// Trials disagreed.
    Unresolved,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Identifiable => write!(f, "identifiable"),
            Verdict::WeaklyDefectiveIdentifiable => write!(f, "weakly_defective_identifiable"),
            Verdict::NotIdentifiable(SecantDegree::Finite(d)) => write!(f, "not_identifiable({d})"),
            Verdict::NotIdentifiable(SecantDegree::Infinite) => write!(f, "not_identifiable(inf)"),
            Verdict::NeedsTclAnalysis => write!(f, "needs_tcl_analysis"),
            Verdict::Unresolved => write!(f, "unresolved"),
        }
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "identifiable" => Verdict::Identifiable,
            "weakly_defective_identifiable" => Verdict::WeaklyDefectiveIdentifiable,
            "not_identifiable(inf)" => Verdict::NotIdentifiable(SecantDegree::Infinite),
            "needs_tcl_analysis" => Verdict::NeedsTclAnalysis,
            "unresolved" => Verdict::Unresolved,
            other => {
                let d = other
                    .strip_prefix("not_identifiable(")
                    .and_then(|x| x.strip_suffix(')'))
                    .and_then(|x| x.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown verdict `{other}`")))?;
                Verdict::NotIdentifiable(SecantDegree::Finite(d))
            }
        })
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Verdicts known from a finer analysis than the contact probe provides:
/// `σ_3(Gr(P^2,P^7))` has a 5-dimensional tangential-contact locus but is
/// still identifiable, and `σ_5(Gr(P^2,P^9))` has secant degree 2.
pub fn known_verdict(case: GrassmannCase) -> Option<Verdict> {
    match (case.k, case.n, case.r) {
        (2, 7, 3) => Some(Verdict::WeaklyDefectiveIdentifiable),
        (2, 9, 5) => Some(Verdict::NotIdentifiable(SecantDegree::Finite(2))),
        _ => None,
    }
}

/// Combines the Terracini, contact and (optional) tangential-contact data.
/// Returns `None` for perfect and non-proper cases, which get no verdict.
pub fn identifiability_verdict(
    record: &ScanRecord,
    contact: Option<&ContactReport>,
    tcl: Option<&TclOutcome>,
) -> Option<Verdict> {
    if record.defect > 0 {
        return Some(Verdict::NotIdentifiable(SecantDegree::Infinite));
    }
    if !record.subgeneric {
        return None;
    }
    let kernel = match contact {
        Some(c) => c.value,
        None => record.contact_kernel,
    };
    Some(match kernel {
        None => Verdict::Unresolved,
        Some(0) => Verdict::Identifiable,
        Some(_) => match tcl {
            Some(t) if t.dimension == Some(0) || t.unit_ideal => Verdict::WeaklyDefectiveIdentifiable,
            _ => known_verdict(record.case).unwrap_or(Verdict::NeedsTclAnalysis),
        },
    })
}

/// Solves `codim = k (c + 1)` for a natural number `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactFromDual {
    Dimension(usize),
    NoSolution,
}

pub fn contact_dim_from_dual_codim(k: usize, codim: usize) -> ContactFromDual {
    if k == 0 || codim == 0 || !codim.is_multiple_of(k) {
        return ContactFromDual::NoSolution;
    }
    ContactFromDual::Dimension(codim / k - 1)
}
