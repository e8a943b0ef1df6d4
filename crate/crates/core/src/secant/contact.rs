use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::case::GrassmannCase;
use super::terracini::{start_trial, TAG_HYPERPLANE};
use crate::error::{Error, Result};
use crate::exterior::{ChartPoint, Grassmannian, Jet2};
use crate::field::{FieldContext, PrimeField};
use crate::linalg::{rank, EchelonBasis, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContactOptions {
    pub trials: usize,
    /// Probe every tangency point instead of only the first one and require
    /// equal kernels.
    pub all_points: bool,
}

impl Default for ContactOptions {
    fn default() -> Self {
        ContactOptions {
            trials: 3,
            all_points: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContactReport {
    pub case: GrassmannCase,
    /// Hessian kernel dimension at the first tangency point, per trial.
    pub kernel_dims: Vec<usize>,
    /// Modal value; `None` when the trials have no strict mode.
    #[serde(rename = "kernel")]
    pub value: Option<usize>,
    /// Codimension of the Terracini span.
    pub hyperplanes: usize,
    /// Kernels at every tangency point, per trial (only with `all_points`).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_point: Vec<Vec<usize>>,
}

impl ContactReport {
    pub fn agreed(&self) -> bool {
        self.value.is_some()
    }
}

/// Most frequent value; `None` on a tie for first place or empty input.
pub fn modal_value(values: &[usize]) -> Option<usize> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_default() += 1;
    }
    let best = counts.values().copied().max()?;
    let mut winners = counts.iter().filter(|(_, &c)| c == best);
    let (&v, _) = winners.next()?;
    winners.next().is_none().then_some(v)
}

/// Kernel dimension of the Hessian at `jet` of `A -> <h, Plücker(A)>`.
pub fn hessian_kernel_dim(f: &PrimeField, jet: &Jet2, h: &[u64]) -> usize {
    jet.pairing_hessian(f, h).kernel_dim(f)
}

/// Dimension of the common kernel of the Hessians of all `hyperplanes` at
/// `jet`: the tangent space to the tangential-contact scheme at that point.
pub fn common_kernel_dim(f: &PrimeField, jet: &Jet2, hyperplanes: &[Vec<u64>]) -> usize {
    let d = jet.num_vars();
    let mut stacked = Matrix::zeros(0, d);
    for h in hyperplanes {
        let q = jet.pairing_hessian(f, h);
        for row in q.matrix.row_iter() {
            stacked.push_row(row).expect("matching width");
        }
    }
    d - rank(f, &stacked)
}

/// Hessian kernels at the given tangency points for a random hyperplane
/// containing the span of their tangent spaces.
pub fn contact_kernel_at(
    ctx: &FieldContext,
    grass: &Grassmannian,
    span: &EchelonBasis,
    points: &[ChartPoint],
    tags: &[u64],
) -> Vec<usize> {
    let f = &ctx.field;
    let mut tagged = vec![TAG_HYPERPLANE];
    tagged.extend_from_slice(tags);
    let h = span.random_annihilator(&mut ctx.rng(&tagged));
    points
        .iter()
        .map(|p| hessian_kernel_dim(f, &grass.jet(f, p), &h))
        .collect()
}

/// Hessian contact probe: the kernel at `p_1` of the Hessian of a random
/// hyperplane tangent to `Gr(P^k, P^n)` at `r` random points. Positive
/// values mean the tangent hyperplane section is singular along a
/// positive-dimensional locus through `p_1` (weak defectivity).
pub fn contact_kernel_dim(ctx: &FieldContext, case: GrassmannCase, options: ContactOptions) -> Result<ContactReport> {
    if !case.is_subgeneric() {
        return Err(Error::NotSubgeneric(case.to_string()));
    }
    let grass = Grassmannian::new(case.k, case.n);
    let expected = case.expected_sigma_dim();
    let trials = options.trials.max(1);
    let mut kernel_dims = Vec::with_capacity(trials);
    let mut per_point = Vec::new();
    let mut best_rank = 0;
    // A trial counts only when its span has the expected rank; degenerate
    // samples are redrawn under fresh trial indices.
    let mut t = 0;
    let mut failures = 0;
    while kernel_dims.len() < trials {
        let (mut span, mut stream) = start_trial(ctx, &grass, t)?;
        for _ in 1..case.r {
            span.push(ctx, stream.next_point(ctx));
        }
        best_rank = best_rank.max(span.rank());
        let tags = [case.k as u64, case.n as u64, case.r as u64, t as u64];
        t += 1;
        if span.rank() < expected {
            failures += 1;
            if failures >= super::terracini::MAX_RESAMPLES {
                if best_rank < expected {
                    return Err(Error::DefectiveCase(case.to_string()));
                }
                return Err(Error::Resample {
                    what: format!("generic Terracini span for {case}"),
                    attempts: failures,
                });
            }
            if failures >= trials && best_rank < expected {
                return Err(Error::DefectiveCase(case.to_string()));
            }
            continue;
        }
        let points = if options.all_points {
            span.points()
        } else {
            &span.points()[..1]
        };
        let kernels = contact_kernel_at(ctx, &grass, span.basis(), points, &tags);
        kernel_dims.push(kernels[0]);
        if options.all_points {
            per_point.push(kernels);
        }
    }
    Ok(ContactReport {
        case,
        value: modal_value(&kernel_dims),
        kernel_dims,
        hyperplanes: case.ambient() - expected,
        per_point,
    })
}
