use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::forms::{canonical_form, form_words, CLOSURE_EDGES, DUALITY_ROWS};
use super::invariants::{signature, Signature};
use super::labels::OrbitLabel;
use crate::error::{Error, Result};
use crate::exterior::AlternatingTensor;
use crate::field::FieldContext;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub label: OrbitLabel,
    pub form: String,
    pub dim: usize,
    /// `None` for the zero orbit and the dense orbit.
    pub dual_dim: Option<usize>,
    pub dual_partner: Option<OrbitLabel>,
    /// Several orbits matched the dual dimension.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ambiguous_partners: Vec<OrbitLabel>,
    pub signature: Signature,
}

/// Which side of the duality table a label sits on (both for self-dual rows).
fn table_sides(label: OrbitLabel) -> (bool, bool) {
    let n = label.number();
    let left = DUALITY_ROWS.iter().any(|&(l, _)| l == n);
    let right = DUALITY_ROWS.iter().any(|&(_, r)| r == n);
    (left, right)
}

/// The partner listed in the duality table.
pub fn table_partner(label: OrbitLabel) -> Option<OrbitLabel> {
    let n = label.number();
    DUALITY_ROWS.iter().find_map(|&(l, r)| {
        if l == n {
            Some(OrbitLabel::new(r).unwrap())
        } else if r == n {
            Some(OrbitLabel::new(l).unwrap())
        } else {
            None
        }
    })
}

/// Closure-order edges `(smaller, larger)`.
pub fn closure_edges() -> Vec<(OrbitLabel, OrbitLabel)> {
    CLOSURE_EDGES
        .iter()
        .map(|&(a, b)| (OrbitLabel::new(a).unwrap(), OrbitLabel::new(b).unwrap()))
        .collect()
}

/// Resolves partners: `B` is a partner of `A` when it sits on the opposite
/// side of the duality table, `dim B = dual_dim A` and `dual_dim B = dim A`.
fn resolve_partners(records: &mut [OrbitRecord]) {
    let snapshot: Vec<(OrbitLabel, usize, Option<usize>)> =
        records.iter().map(|r| (r.label, r.dim, r.dual_dim)).collect();
    for rec in records.iter_mut() {
        let Some(dual) = rec.dual_dim else { continue };
        let (left, right) = table_sides(rec.label);
        let candidates: Vec<OrbitLabel> = snapshot
            .iter()
            .filter(|&&(l, dim, other_dual)| {
                let (l_left, l_right) = table_sides(l);
                let opposite = (left && l_right) || (right && l_left);
                opposite && dim == dual && other_dual == Some(rec.dim)
            })
            .map(|&(l, _, _)| l)
            .collect();
        match candidates.len() {
            0 => {}
            1 => rec.dual_partner = Some(candidates[0]),
            _ => rec.ambiguous_partners = candidates,
        }
    }
}

/// All 23 orbits with computed invariants and resolved duality partners.
pub fn orbit_table(ctx: &FieldContext, trials: usize) -> Result<Vec<OrbitRecord>> {
    let labels: Vec<OrbitLabel> = OrbitLabel::all().collect();
    let mut records = labels
        .par_iter()
        .map(|&label| {
            let t = canonical_form(&ctx.field, label);
            let sig = signature(ctx, &t, trials)?;
            Ok(OrbitRecord {
                label,
                form: form_words(label).join(" "),
                dim: sig.dim,
                dual_dim: sig.dual_dim,
                dual_partner: None,
                ambiguous_partners: Vec::new(),
                signature: sig,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    resolve_partners(&mut records);
    Ok(records)
}

/// Result of matching a tensor's signature against the table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Orbit(OrbitLabel),
    Ambiguous(Vec<OrbitLabel>),
}

/// Signatures of the canonical forms, with any collisions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureTable {
    pub entries: Vec<(OrbitLabel, Signature)>,
    /// Groups of labels sharing a signature.
    pub collisions: Vec<Vec<OrbitLabel>>,
}

impl SignatureTable {
    pub fn build(ctx: &FieldContext, trials: usize) -> Result<Self> {
        let records = orbit_table(ctx, trials)?;
        Ok(Self::from_records(&records))
    }

    pub fn from_records(records: &[OrbitRecord]) -> Self {
        let entries: Vec<(OrbitLabel, Signature)> = records.iter().map(|r| (r.label, r.signature)).collect();
        let mut groups: BTreeMap<String, Vec<OrbitLabel>> = BTreeMap::new();
        for (l, s) in &entries {
            groups.entry(format!("{s:?}")).or_default().push(*l);
        }
        let mut collisions: Vec<Vec<OrbitLabel>> = groups.into_values().filter(|g| g.len() > 1).collect();
        collisions.sort();
        SignatureTable { entries, collisions }
    }

    pub fn classify(&self, ctx: &FieldContext, t: &AlternatingTensor, trials: usize) -> Result<Classification> {
        let sig = signature(ctx, t, trials)?;
        let hits: Vec<OrbitLabel> = self.entries.iter().filter(|(_, s)| *s == sig).map(|(l, _)| *l).collect();
        match hits.len() {
            0 => Err(Error::NoOrbitMatch),
            1 => Ok(Classification::Orbit(hits[0])),
            _ => Ok(Classification::Ambiguous(hits)),
        }
    }
}
