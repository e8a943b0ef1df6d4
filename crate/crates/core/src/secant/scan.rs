use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::case::GrassmannCase;
use super::contact::{contact_kernel_at, modal_value};
use super::tcl::{tcl_dimension, tcl_ideal, TclOutcome, TCL_DEGREE_CAP};
use super::terracini::start_trial;
use super::verdict::{identifiability_verdict, Verdict};
use crate::error::Result;
use crate::exterior::{ChartPoint, Grassmannian};
use crate::field::FieldContext;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub case: GrassmannCase,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isomorphic: Option<String>,
    pub expected_affine: usize,
    pub actual_affine: usize,
    pub defect: usize,
    pub subgeneric: bool,
    pub perfect: bool,
    pub contact_kernel: Option<usize>,
    /// Kernel per counted trial.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub contact_trials: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tcl: Option<TclOutcome>,
    pub verdict: Option<Verdict>,
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub n_max: usize,
    pub trials: usize,
    /// Stop after one trial when it already reaches the generic bounds
    /// (full expected rank and a zero kernel). A later trial can only
    /// disagree by landing on a special point.
    pub early_exit: bool,
    /// Run Gröbner dimension checks on tangential-contact ideals with at most
    /// this many chart variables; 0 disables them.
    pub tcl_max_vars: usize,
    pub tcl_degree_cap: u32,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            n_max: 13,
            trials: 3,
            early_exit: true,
            tcl_max_vars: 15,
            tcl_degree_cap: TCL_DEGREE_CAP,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub records: Vec<ScanRecord>,
    pub warnings: Vec<String>,
}

impl ScanReport {
    pub fn defective(&self) -> Vec<GrassmannCase> {
        self.records.iter().filter(|r| r.defect > 0).map(|r| r.case).collect()
    }

    pub fn get(&self, k: usize, n: usize, r: usize) -> Option<&ScanRecord> {
        self.records.iter().find(|x| (x.case.k, x.case.n, x.case.r) == (k, n, r))
    }
}

/// Duality-normalized Grassmannians `Gr(P^k, P^n)`, `1 <= k`, `n <= n_max`.
pub fn scan_grassmannians(n_max: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        for k in 1..n {
            if 2 * (k + 1) <= n + 1 {
                out.push((k, n));
            }
        }
    }
    out
}

struct TrialOutcome {
    ranks: Vec<usize>,
    kernels: BTreeMap<usize, usize>,
    points: Vec<ChartPoint>,
}

/// One pass over `r = 1..=r_max` points. Hessian kernels are computed at
/// every `r` listed in `contact_at` whose span reaches the expected rank.
fn run_trial(
    ctx: &FieldContext,
    grass: &Grassmannian,
    trial: usize,
    r_max: usize,
    mut wants_contact: impl FnMut(usize, usize) -> bool,
) -> Result<TrialOutcome> {
    let (mut span, mut stream) = start_trial(ctx, grass, trial)?;
    let mut kernels = BTreeMap::new();
    let mut jet_points = Vec::new();
    for r in 1..=r_max {
        if r > 1 {
            span.push(ctx, stream.next_point(ctx));
        }
        if r >= 2 && wants_contact(r, span.rank()) {
            if jet_points.is_empty() {
                jet_points.push(span.points()[0].clone());
            }
            let tags = [grass.k() as u64, grass.n() as u64, r as u64, trial as u64];
            let kernel = contact_kernel_at(ctx, grass, span.basis(), &jet_points, &tags)[0];
            kernels.insert(r, kernel);
        }
    }
    Ok(TrialOutcome {
        ranks: span.ranks().to_vec(),
        kernels,
        points: span.points().to_vec(),
    })
}

/// Terracini dimensions and contact kernels for every proper `σ_r`, `r >= 2`,
/// of one Grassmannian.
pub fn scan_grassmannian(ctx: &FieldContext, k: usize, n: usize, options: &ScanOptions) -> Result<ScanReport> {
    let grass = Grassmannian::new(k, n);
    let base = GrassmannCase::new(k, n, 1)?;
    let ambient = base.ambient();
    let cone = base.cone_dim();
    let expected = |r: usize| base.with_r(r).expected_sigma_dim();
    let subgeneric = |r: usize| base.with_r(r).is_subgeneric();
    let trials = options.trials.max(1);

    // First pass: run until the span fills the ambient space and the
    // expected dimension does too.
    let mut r_max = 1;
    while r_max * cone < ambient {
        r_max += 1;
    }
    let mut outcomes = Vec::new();
    let first = {
        let mut r_end = r_max;
        loop {
            let o = run_trial(ctx, &grass, 0, r_end, |r, rank| subgeneric(r) && rank == expected(r))?;
            if *o.ranks.last().unwrap() == ambient || r_end > ambient {
                break o;
            }
            r_end += r_max;
        }
    };
    let r_end = first.ranks.len();
    outcomes.push(first);

    let needs_more = |o: &TrialOutcome| {
        !options.early_exit
            || (2..=o.ranks.len()).any(|r| o.ranks[r - 1] < expected(r))
            || o.kernels.values().any(|&c| c > 0)
    };
    if trials > 1 && needs_more(&outcomes[0]) {
        for t in 1..trials {
            let o = run_trial(ctx, &grass, t, r_end, |r, rank| subgeneric(r) && rank == expected(r))?;
            outcomes.push(o);
        }
    }

    let mut report = ScanReport::default();
    for r in 2..=r_end {
        let case = base.with_r(r);
        let per_trial: Vec<usize> = outcomes.iter().map(|o| o.ranks[r - 1]).collect();
        let actual = *per_trial.iter().max().unwrap();
        let exp = expected(r);
        if !(exp < ambient || actual < ambient || case.is_perfect()) {
            continue;
        }
        if per_trial.iter().any(|&x| x != actual) {
            report.warnings.push(format!("{case}: Terracini ranks differ across trials {per_trial:?}"));
        }
        let contact_trials: Vec<usize> = outcomes
            .iter()
            .filter(|o| o.ranks[r - 1] == exp)
            .filter_map(|o| o.kernels.get(&r).copied())
            .collect();
        let defect = exp - actual;
        let mut record = ScanRecord {
            case,
            isomorphic: case.isomorphism_note(),
            expected_affine: exp,
            actual_affine: actual,
            defect,
            subgeneric: case.is_subgeneric(),
            perfect: case.is_perfect(),
            contact_kernel: None,
            contact_trials: Vec::new(),
            tcl: None,
            verdict: None,
        };
        if defect == 0 && record.subgeneric {
            record.contact_kernel = modal_value(&contact_trials);
            if record.contact_kernel.is_none() {
                report.warnings.push(format!("{case}: contact kernels disagree {contact_trials:?}"));
            }
            record.contact_trials = contact_trials;
        }
        if matches!(record.contact_kernel, Some(c) if c > 0)
            && options.tcl_max_vars > 0
            && case.grassmannian_dim() <= options.tcl_max_vars
        {
            let source = outcomes.iter().find(|o| o.ranks[r - 1] == exp).unwrap_or(&outcomes[0]);
            let ideal = tcl_ideal(&ctx.field, &source.points[..r])?;
            let outcome = tcl_dimension(&ctx.field, &ideal, options.tcl_degree_cap)?;
            if outcome.dimension.is_none() && !outcome.unit_ideal {
                report.warnings.push(format!(
                    "{case}: tangential-contact Gröbner basis inconclusive at degree cap {} ({} basis elements)",
                    options.tcl_degree_cap, outcome.basis_size
                ));
            }
            record.tcl = Some(outcome);
        }
        record.verdict = identifiability_verdict(&record, None, record.tcl.as_ref());
        report.records.push(record);
    }
    Ok(report)
}

/// Scan of all duality-normalized `σ_r(Gr(P^k, P^n))` with `n <= n_max`.
/// Grassmannians run in parallel; records are returned in `(k, n, r)`
/// order regardless of scheduling.
pub fn defectivity_scan(ctx: &FieldContext, options: &ScanOptions) -> Result<ScanReport> {
    let mut cases = scan_grassmannians(options.n_max);
    // largest first, for load balancing
    cases.sort_by_key(|&(k, n)| std::cmp::Reverse(GrassmannCase { k, n, r: 1 }.ambient()));
    let parts: Vec<Result<ScanReport>> = cases
        .par_iter()
        .map(|&(k, n)| scan_grassmannian(ctx, k, n, options))
        .collect();
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    for part in parts {
        let part = part?;
        records.extend(part.records);
        warnings.extend(part.warnings);
    }
    records.sort_by_key(|r| r.case);
    warnings.sort();
    Ok(ScanReport { records, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::binomial;

    #[test]
    fn small_scan() {
        let ctx = FieldContext::default();
        let report = defectivity_scan(
            &ctx,
            &ScanOptions {
                n_max: 7,
                tcl_max_vars: 0,
                ..ScanOptions::default()
            },
        )
        .unwrap();
        let defective: Vec<(usize, usize, usize)> =
            report.defective().iter().map(|c| (c.k, c.n, c.r)).collect();
        assert_eq!(
            defective,
            vec![(1, 5, 2), (1, 6, 2), (1, 7, 2), (1, 7, 3), (2, 6, 3), (3, 7, 3), (3, 7, 4)]
        );
        for rec in report.records.iter().filter(|r| r.case.k == 1) {
            let (n, r) = (rec.case.n, rec.case.r);
            assert_eq!(rec.actual_affine, binomial(n + 1, 2) - binomial(n + 1 - 2 * r, 2));
        }
        assert_eq!(report.get(2, 7, 2).unwrap().contact_kernel, Some(3));
        assert_eq!(report.get(2, 7, 3).unwrap().contact_kernel, Some(7));
        assert_eq!(report.get(2, 6, 2).unwrap().contact_kernel, Some(6));
        assert_eq!(report.get(3, 7, 2).unwrap().verdict, Some(Verdict::Identifiable));
    }
}
