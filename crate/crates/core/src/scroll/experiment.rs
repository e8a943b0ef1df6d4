use rand::Rng;
use serde::{Deserialize, Serialize};

use super::curve::{curve_with_3torsion, embed10, CurvePoint, EllipticCurve};
use crate::error::{Error, Result};
use crate::exterior::{binomial, plucker, AlternatingTensor, ChartPoint, Grassmannian};
use crate::field::{FieldContext, PrimeField};
use crate::linalg::{rank, rref, EchelonBasis, Matrix};
use crate::secant::{contact_kernel_at, tcl_membership_echelon};

const TAG_CURVE: u64 = 0x5c01;
const TAG_BASE: u64 = 0x5c02;
const TAG_CHECK: u64 = 0x5c03;
const TAG_NEGATIVE: u64 = 0x5c04;
const TAG_HILBERT: u64 = 0x5c05;
const TAG_KERNEL: u64 = 0x5c06;

const MAX_RESAMPLES: usize = 64;

/// Smallest modulus accepted by the experiment.
pub const MIN_SCROLL_PRIME: u64 = 1_000_000;

/// Plane spanned by the embedded points `Q, Q+T, Q+2T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollSample {
    pub q: CurvePoint,
    pub plane: Matrix,
    pub plucker_point: AlternatingTensor,
}

impl ScrollSample {
    /// Chart point of `Gr(P^2, P^9)` with the standard pivots.
    pub fn chart_point(&self, f: &PrimeField) -> Result<ChartPoint> {
        ChartPoint::from_matrix(f, &self.plane, ChartPoint::default_pivots(2))
    }
}

/// The plane `<Q, Q+T, Q+2T>`; `T` is the 3-torsion point for the torsion
/// scroll, or any translation for a general translation scroll.
pub fn scroll_plane(curve: &EllipticCurve, t: &CurvePoint, q: &CurvePoint) -> Result<ScrollSample> {
    let f = curve.field();
    let q1 = curve.add(q, t);
    let q2 = curve.add(&q1, t);
    if q == &q1 || q == &q2 || q1 == q2 {
        return Err(Error::Degenerate("the three points are not distinct".into()));
    }
    let rows = [q, &q1, &q2]
        .iter()
        .map(|p| embed10(curve, p).map(|v| v.to_vec()))
        .collect::<Result<Vec<_>>>()?;
    let plane = Matrix::from_rows(10, rows)?;
    if rank(f, &plane) < 3 {
        return Err(Error::Degenerate("the three points are collinear".into()));
    }
    let plucker_point = plucker(f, &plane)?;
    Ok(ScrollSample {
        q: *q,
        plane,
        plucker_point,
    })
}

/// A scroll plane at a random `Q` that lies in the standard chart.
fn random_sample<R: Rng + ?Sized>(
    curve: &EllipticCurve,
    t: &CurvePoint,
    rng: &mut R,
) -> Result<(ScrollSample, ChartPoint)> {
    let f = curve.field();
    for _ in 0..MAX_RESAMPLES {
        let q = curve.random_point(rng);
        let Ok(sample) = scroll_plane(curve, t, &q) else { continue };
        if let Ok(point) = sample.chart_point(f) {
            return Ok((sample, point));
        }
    }
    Err(Error::Genericity("no scroll plane in the standard chart".into()))
}

/// Measured Hilbert function value of a sampled curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProbe {
    pub degree: usize,
    pub samples: usize,
    pub rank: usize,
}

/// Exponent vectors of all degree-`d` monomials in `nvars` variables.
fn monomials(nvars: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, nvars: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..nvars {
            cur.push(v);
            go(v, nvars, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, nvars, d, &mut Vec::new(), &mut out);
    out
}

/// Rank of the evaluation matrix of all degree-`d` monomials at `points`:
/// the number of conditions the points impose on degree-`d` forms.
pub fn hilbert_rank(f: &PrimeField, points: &[Vec<u64>], d: usize) -> Result<usize> {
    let nvars = points.first().map_or(0, Vec::len);
    if points.iter().any(|p| p.len() != nvars) {
        return Err(Error::Shape("points of different lengths".into()));
    }
    let mons = monomials(nvars, d);
    let mut m = Matrix::zeros(points.len(), mons.len());
    for (i, p) in points.iter().enumerate() {
        for (j, mon) in mons.iter().enumerate() {
            m[(i, j)] = mon.iter().fold(1, |acc, &v| f.mul(acc, p[v]));
        }
    }
    Ok(rank(f, &m))
}

/// Plücker images of `count` random torsion-scroll planes.
fn scroll_curve_points<R: Rng + ?Sized>(
    curve: &EllipticCurve,
    t: &CurvePoint,
    count: usize,
    rng: &mut R,
) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::with_capacity(count);
    let mut misses = 0;
    while out.len() < count {
        let q = curve.random_point(rng);
        match scroll_plane(curve, t, &q) {
            Ok(s) => out.push(s.plucker_point.into_coeffs()),
            Err(_) => {
                misses += 1;
                if misses > MAX_RESAMPLES {
                    return Err(Error::Genericity("too many degenerate scroll planes".into()));
                }
            }
        }
    }
    Ok(out)
}

/// Hilbert function of the curve traced by the torsion scroll in `P^119`,
/// sampled in degree `d` on `samples` points.
pub fn hilbert_probe(ctx: &FieldContext, curve: &EllipticCurve, t: &CurvePoint, d: usize, samples: usize) -> Result<HilbertProbe> {
    if !(1..=3).contains(&d) {
        return Err(Error::Shape(format!("degree {d} is outside 1..=3")));
    }
    let needed = binomial(9 + d, d) + 30;
    if samples < needed {
        return Err(Error::Shape(format!("degree {d} needs at least {needed} samples, got {samples}")));
    }
    let f = &ctx.field;
    let mut rng = ctx.rng(&[TAG_HILBERT, d as u64]);
    let points = scroll_curve_points(curve, t, samples, &mut rng)?;
    // coordinates independent on the span
    let mut span = Matrix::from_rows(120, points.clone())?;
    let pivots = rref(f, &mut span);
    if pivots.len() != 10 {
        return Err(Error::Genericity(format!(
            "scroll curve spans a space of dimension {}, expected 10",
            pivots.len()
        )));
    }
    let restricted: Vec<Vec<u64>> = points.iter().map(|p| pivots.iter().map(|&c| p[c]).collect()).collect();
    Ok(HilbertProbe {
        degree: d,
        samples,
        rank: hilbert_rank(f, &restricted, d)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSummary {
    pub h1: usize,
    pub h2: usize,
    pub h3: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScrollOptions {
    /// Fresh scroll planes tested for membership.
    pub checks: usize,
    /// Planes of a general translation scroll tested; 0 skips the control.
    pub negative_checks: usize,
}

impl Default for ScrollOptions {
    fn default() -> Self {
        ScrollOptions {
            checks: 50,
            negative_checks: 20,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScrollReport {
    pub modulus: u64,
    pub seed: u64,
    /// The curve is `y^2 = x^3 + c^2`.
    pub c: u64,
    pub terracini_dim: usize,
    pub hilbert: HilbertSummary,
    pub membership_pass: usize,
    pub membership_total: usize,
    pub negative_fail: usize,
    pub negative_total: usize,
    pub contact_kernel: usize,
}

impl ScrollReport {
    /// The reference outcome: span 110, `h = 10, 20, 30`, every check passes,
    /// contact kernel 1 and at most one negative-control pass in twenty.
    pub fn passed(&self) -> bool {
        self.terracini_dim == 110
            && self.hilbert == (HilbertSummary { h1: 10, h2: 20, h3: 30 })
            && self.membership_pass == self.membership_total
            && self.contact_kernel == 1
            && self.negative_fail * 20 >= self.negative_total * 19
    }
}

/// Span of the tangent spaces at five scroll planes and the chart points.
fn base_span<R: Rng + ?Sized>(
    curve: &EllipticCurve,
    t: &CurvePoint,
    rng: &mut R,
) -> Result<(EchelonBasis, Vec<ChartPoint>)> {
    let f = curve.field();
    let grass = Grassmannian::new(2, 9);
    let mut span = EchelonBasis::new(*f, grass.ambient());
    let mut points = Vec::with_capacity(5);
    for _ in 0..5 {
        let (_, point) = random_sample(curve, t, rng)?;
        for row in grass.chart_tangent_rows(f, &point) {
            span.insert(row);
        }
        points.push(point);
    }
    Ok((span, points))
}

/// Membership passes of `checks` fresh planes of the same scroll.
fn count_members<R: Rng + ?Sized>(
    curve: &EllipticCurve,
    t: &CurvePoint,
    span: &EchelonBasis,
    checks: usize,
    rng: &mut R,
) -> Result<usize> {
    let f = curve.field();
    let mut pass = 0;
    for _ in 0..checks {
        let (_, point) = random_sample(curve, t, rng)?;
        if tcl_membership_echelon(f, &point, span)? {
            pass += 1;
        }
    }
    Ok(pass)
}

/// A random point of order greater than 12.
fn random_translation<R: Rng + ?Sized>(curve: &EllipticCurve, rng: &mut R) -> Result<CurvePoint> {
    for _ in 0..MAX_RESAMPLES {
        let r = curve.random_point(rng);
        if (1..=12).all(|m| !curve.mul(m, &r).is_infinity()) {
            return Ok(r);
        }
    }
    Err(Error::Genericity("no point of large order found".into()))
}

/// Contact experiment for `σ_5(Gr(P^2, P^9))` along the 3-torsion scroll.
///
/// Five scroll planes give a Terracini span of dimension 110. Fresh planes
/// of the same scroll must have their tangent spaces inside it; planes of a
/// general translation scroll, built the same way from a point `R` of large
/// order, should not.
pub fn scroll_contact_experiment(ctx: &FieldContext, options: ScrollOptions) -> Result<ScrollReport> {
    let f = &ctx.field;
    if f.modulus() < MIN_SCROLL_PRIME {
        return Err(Error::Modulus(format!(
            "the scroll experiment needs a prime above {MIN_SCROLL_PRIME}"
        )));
    }
    let (curve, p) = curve_with_3torsion(*f, &mut ctx.rng(&[TAG_CURVE]));

    let (span, points) = base_span(&curve, &p, &mut ctx.rng(&[TAG_BASE]))?;
    if span.rank() != 110 {
        return Err(Error::Genericity(format!(
            "Terracini span of five scroll planes has dimension {}, expected 110",
            span.rank()
        )));
    }
    let membership_pass = count_members(&curve, &p, &span, options.checks, &mut ctx.rng(&[TAG_CHECK]))?;

    let grass = Grassmannian::new(2, 9);
    let contact_kernel = contact_kernel_at(ctx, &grass, &span, &points[..1], &[TAG_KERNEL])[0];

    let samples = |d: usize| binomial(9 + d, d) + 30;
    let hilbert = HilbertSummary {
        h1: hilbert_probe(ctx, &curve, &p, 1, samples(1))?.rank,
        h2: hilbert_probe(ctx, &curve, &p, 2, samples(2))?.rank,
        h3: hilbert_probe(ctx, &curve, &p, 3, samples(3))?.rank,
    };

    let negative_fail = if options.negative_checks > 0 {
        let mut rng = ctx.rng(&[TAG_NEGATIVE]);
        let r = random_translation(&curve, &mut rng)?;
        let (neg_span, _) = base_span(&curve, &r, &mut rng)?;
        options.negative_checks - count_members(&curve, &r, &neg_span, options.negative_checks, &mut rng)?
    } else {
        0
    };

    Ok(ScrollReport {
        modulus: f.modulus(),
        seed: ctx.seed,
        c: curve.c(),
        terracini_dim: span.rank(),
        hilbert,
        membership_pass,
        membership_total: options.checks,
        negative_fail,
        negative_total: options.negative_checks,
        contact_kernel,
    })
}
