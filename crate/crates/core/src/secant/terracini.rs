use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::case::GrassmannCase;
use crate::error::{Error, Result};
use crate::exterior::{ChartPoint, Grassmannian};
use crate::field::FieldContext;
use crate::linalg::EchelonBasis;

pub(crate) const TAG_POINTS: u64 = 0x7e44;
pub(crate) const TAG_HYPERPLANE: u64 = 0x4e7a;
pub(crate) const MAX_RESAMPLES: usize = 10;

/// Seeded stream of random points in the default chart. Trial `t` of every
/// computation on `Gr(P^k, P^n)` draws its points from the same stream, so
/// smaller `r` use a prefix of the points of larger `r`.
pub struct PointStream {
    k: usize,
    n: usize,
    rng: ChaCha8Rng,
}

impl PointStream {
    pub fn new(ctx: &FieldContext, k: usize, n: usize, trial: usize, attempt: usize) -> Self {
        PointStream {
            k,
            n,
            rng: ctx.rng(&[TAG_POINTS, k as u64, n as u64, trial as u64, attempt as u64]),
        }
    }

    pub fn next_point(&mut self, ctx: &FieldContext) -> ChartPoint {
        ChartPoint::random(&ctx.field, self.k, self.n, ChartPoint::default_pivots(self.k), &mut self.rng)
            .expect("valid chart shape")
    }

    pub fn take(&mut self, ctx: &FieldContext, count: usize) -> Vec<ChartPoint> {
        (0..count).map(|_| self.next_point(ctx)).collect()
    }
}

/// Span of tangent spaces grown one point at a time.
pub struct TerraciniSpan<'a> {
    grass: &'a Grassmannian,
    basis: EchelonBasis,
    points: Vec<ChartPoint>,
    ranks: Vec<usize>,
}

impl<'a> TerraciniSpan<'a> {
    pub fn new(ctx: &FieldContext, grass: &'a Grassmannian) -> Self {
        TerraciniSpan {
            grass,
            basis: EchelonBasis::new(ctx.field, grass.ambient()),
            points: Vec::new(),
            ranks: Vec::new(),
        }
    }

    pub fn push(&mut self, ctx: &FieldContext, point: ChartPoint) {
        if self.basis.rank() < self.basis.ambient() {
            for row in self.grass.chart_tangent_rows(&ctx.field, &point) {
                self.basis.insert(row);
                if self.basis.rank() == self.basis.ambient() {
                    break;
                }
            }
        }
        self.points.push(point);
        self.ranks.push(self.basis.rank());
    }

    pub fn basis(&self) -> &EchelonBasis {
        &self.basis
    }

    pub fn points(&self) -> &[ChartPoint] {
        &self.points
    }

    /// `ranks()[i]` is the rank after `i + 1` points.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }
}

/// Starts a span for one trial, resampling when the first tangent space is
/// degenerate.
pub(crate) fn start_trial<'a>(
    ctx: &FieldContext,
    grass: &'a Grassmannian,
    trial: usize,
) -> Result<(TerraciniSpan<'a>, PointStream)> {
    let (k, n) = (grass.k(), grass.n());
    let cone = grass.dim() + 1;
    for attempt in 0..MAX_RESAMPLES {
        let mut stream = PointStream::new(ctx, k, n, trial, attempt);
        let mut span = TerraciniSpan::new(ctx, grass);
        span.push(ctx, stream.next_point(ctx));
        if span.rank() == cone.min(grass.ambient()) {
            return Ok((span, stream));
        }
    }
    Err(Error::Resample {
        what: format!("tangent space of Gr(P^{k},P^{n})"),
        attempts: MAX_RESAMPLES,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerraciniReport {
    pub case: GrassmannCase,
    pub expected: usize,
    pub per_trial: Vec<usize>,
    /// Maximum over trials.
    pub value: usize,
}

impl TerraciniReport {
    pub fn defect(&self) -> usize {
        self.expected - self.value
    }

    pub fn trials_agree(&self) -> bool {
        self.per_trial.windows(2).all(|w| w[0] == w[1])
    }
}

/// Affine dimension of `σ_r` as the rank of `r` stacked tangent spaces at
/// random points; the maximum over `trials`.
pub fn terracini_dim(ctx: &FieldContext, case: GrassmannCase, trials: usize) -> Result<TerraciniReport> {
    let grass = Grassmannian::new(case.k, case.n);
    let trials = trials.max(1);
    let mut per_trial = Vec::with_capacity(trials);
    for t in 0..trials {
        let (mut span, mut stream) = start_trial(ctx, &grass, t)?;
        for _ in 1..case.r {
            span.push(ctx, stream.next_point(ctx));
        }
        per_trial.push(span.rank());
    }
    let value = *per_trial.iter().max().unwrap();
    Ok(TerraciniReport {
        case,
        expected: case.expected_sigma_dim(),
        per_trial,
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::binomial;

    fn dim(k: usize, n: usize, r: usize) -> usize {
        terracini_dim(&FieldContext::default(), GrassmannCase::new(k, n, r).unwrap(), 1)
            .unwrap()
            .value
    }

    #[test]
    fn reference_ranks() {
        assert_eq!(dim(2, 7, 3), 48);
        assert_eq!(dim(2, 6, 3), 34);
    }

    #[test]
    fn skew_matrices_of_rank_four() {
        // rank <= 4 skew 6x6 matrices: codimension C(2, 2) = 1
        assert_eq!(dim(1, 5, 2), binomial(6, 2) - 1);
    }

    #[test]
    fn ranks_are_monotone_prefixes() {
        let ctx = FieldContext::default();
        let grass = Grassmannian::new(2, 7);
        let (mut span, mut stream) = start_trial(&ctx, &grass, 0).unwrap();
        for _ in 0..3 {
            span.push(&ctx, stream.next_point(&ctx));
        }
        assert_eq!(span.ranks(), &[16, 32, 48, 56]);
    }
}
