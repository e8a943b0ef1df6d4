use serde::{Deserialize, Serialize};

use super::case::GrassmannCase;
use crate::error::{Error, Result};
use crate::exterior::{subsets, ChartPoint, Grassmannian};
use crate::field::PrimeField;
use crate::linalg::{EchelonBasis, Matrix, Subspace};
use crate::poly::{buchberger, ideal_dimension, GroebnerOptions, GroebnerStatus, SparsePoly};

/// Degree cap used for tangential-contact ideals.
pub const TCL_DEGREE_CAP: u32 = 10;

/// True iff every tangent-space generator at `candidate` lies in `span`.
pub fn tcl_membership(f: &PrimeField, candidate: &ChartPoint, span: &Subspace) -> Result<bool> {
    let grass = Grassmannian::new(candidate.k(), candidate.n());
    if span.ambient() != grass.ambient() {
        return Err(Error::Shape(format!(
            "span lives in F^{}, tangent space in F^{}",
            span.ambient(),
            grass.ambient()
        )));
    }
    Ok(grass
        .chart_tangent_rows(f, candidate)
        .iter()
        .all(|row| span.contains(f, row)))
}

/// `tcl_membership` against an incrementally built span.
pub fn tcl_membership_echelon(f: &PrimeField, candidate: &ChartPoint, span: &EchelonBasis) -> Result<bool> {
    let grass = Grassmannian::new(candidate.k(), candidate.n());
    if span.ambient() != grass.ambient() {
        return Err(Error::Shape("span and tangent space differ in ambient dimension".into()));
    }
    Ok(grass
        .chart_tangent_rows(f, candidate)
        .iter()
        .all(|row| span.contains(row)))
}

/// Span of the tangent spaces at `points`.
pub fn terracini_span(f: &PrimeField, points: &[ChartPoint]) -> Result<Subspace> {
    let first = points.first().ok_or_else(|| Error::Shape("no points".into()))?;
    let grass = Grassmannian::new(first.k(), first.n());
    let mut rows = Vec::new();
    for p in points {
        if (p.k(), p.n()) != (first.k(), first.n()) {
            return Err(Error::Shape("points on different Grassmannians".into()));
        }
        rows.extend(grass.chart_tangent_rows(f, p));
    }
    Ok(Subspace::span(f, &Matrix::from_rows(grass.ambient(), rows)?))
}

/// Plücker coordinates of the chart realization as polynomials in the
/// `(k+1)(n-k)` chart variables, in lexicographic coordinate order.
pub fn symbolic_plucker(f: &PrimeField, k: usize, n: usize, pivots: &[usize]) -> Result<Vec<SparsePoly>> {
    let origin = ChartPoint::origin(k, n, pivots.to_vec())?;
    let d = origin.num_vars();
    let comp = origin.complement();
    // entry(i, c) of the realization as a polynomial
    let entry = |i: usize, c: usize| -> SparsePoly {
        if let Some(pos) = pivots.iter().position(|&p| p == c) {
            if pos == i {
                SparsePoly::constant(d, 1)
            } else {
                SparsePoly::zero(d)
            }
        } else {
            let j = comp.iter().position(|&x| x == c).unwrap();
            SparsePoly::var(d, origin.var_index(i, j))
        }
    };
    let m = k + 1;
    let table: Vec<Vec<SparsePoly>> = (0..m).map(|i| (0..=n).map(|c| entry(i, c)).collect()).collect();
    Ok(subsets(n + 1, m)
        .map(|cols| determinant(f, d, &table, &cols))
        .collect())
}

/// Laplace expansion along the first row.
fn determinant(f: &PrimeField, nvars: usize, table: &[Vec<SparsePoly>], cols: &[usize]) -> SparsePoly {
    fn rec(f: &PrimeField, nvars: usize, table: &[Vec<SparsePoly>], row: usize, cols: &[usize]) -> SparsePoly {
        if cols.is_empty() {
            return SparsePoly::constant(nvars, 1);
        }
        let mut acc = SparsePoly::zero(nvars);
        for (pos, &c) in cols.iter().enumerate() {
            let e = &table[row][c];
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().enumerate().filter(|&(p, _)| p != pos).map(|(_, &x)| x).collect();
            let minor = rec(f, nvars, table, row + 1, &rest);
            let term = e.mul(f, &minor);
            acc = if pos % 2 == 0 { acc.add(f, &term) } else { acc.sub(f, &term) };
        }
        acc
    }
    rec(f, nvars, table, 0, cols)
}

/// Generators of the tangential-contact ideal in one chart.
#[derive(Clone, Debug)]
pub struct TclIdeal {
    pub case: GrassmannCase,
    pub pivots: Vec<usize>,
    pub nvars: usize,
    /// Basis of the annihilator of the Terracini span.
    pub hyperplanes: Vec<Vec<u64>>,
    /// `<H_b, P(A)>` for every hyperplane.
    pub value_generators: Vec<SparsePoly>,
    /// `<H_b, dP/da_v(A)>` indexed `[b][v]`.
    pub derivative_generators: Vec<Vec<SparsePoly>>,
}

impl TclIdeal {
    pub fn generators(&self) -> Vec<SparsePoly> {
        let mut out = self.value_generators.clone();
        for row in &self.derivative_generators {
            out.extend(row.iter().cloned());
        }
        out.retain(|g| !g.is_zero());
        out
    }

    /// Jacobian at `at` of the derivative generators of hyperplane `b`:
    /// entry `(v, w)` is `∂/∂a_w <H_b, ∂P/∂a_v>`.
    pub fn derivative_jacobian(&self, f: &PrimeField, b: usize, at: &[u64]) -> Matrix {
        let mut m = Matrix::zeros(self.nvars, self.nvars);
        for (v, g) in self.derivative_generators[b].iter().enumerate() {
            for w in 0..self.nvars {
                m[(v, w)] = g.derivative(f, w).eval(f, at);
            }
        }
        m
    }
}

/// Tangential-contact ideal of the span of the tangent spaces at `points`:
/// the chart points `A` whose tangent space is contained in the span.
pub fn tcl_ideal(f: &PrimeField, points: &[ChartPoint]) -> Result<TclIdeal> {
    let first = points.first().ok_or_else(|| Error::Shape("no points".into()))?;
    if points.iter().any(|p| p.pivots() != first.pivots()) {
        return Err(Error::Shape("points must share a chart".into()));
    }
    let (k, n) = (first.k(), first.n());
    let case = GrassmannCase::new(k, n, points.len())?;
    let span = terracini_span(f, points)?;
    if span.rank() == case.ambient() {
        return Err(Error::NotSubgeneric(case.to_string()));
    }
    if span.rank() < case.expected_sigma_dim() {
        return Err(Error::DefectiveCase(case.to_string()));
    }
    let hyperplanes = span.annihilator(f).basis().to_rows();
    let plucker = symbolic_plucker(f, k, n, first.pivots())?;
    let nvars = first.num_vars();
    let partials: Vec<Vec<SparsePoly>> = (0..nvars)
        .map(|v| plucker.iter().map(|p| p.derivative(f, v)).collect())
        .collect();
    let pair = |h: &[u64], polys: &[SparsePoly]| {
        let mut acc = SparsePoly::zero(nvars);
        for (&c, p) in h.iter().zip(polys) {
            if c != 0 && !p.is_zero() {
                acc = acc.add(f, &p.scale(f, c));
            }
        }
        acc
    };
    let value_generators = hyperplanes.iter().map(|h| pair(h, &plucker)).collect();
    let derivative_generators = hyperplanes
        .iter()
        .map(|h| partials.iter().map(|dp| pair(h, dp)).collect())
        .collect();
    Ok(TclIdeal {
        case,
        pivots: first.pivots().to_vec(),
        nvars,
        hyperplanes,
        value_generators,
        derivative_generators,
    })
}

/// Outcome of a Gröbner dimension computation on a tangential-contact ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TclOutcome {
    pub status: GroebnerStatus,
    /// Affine dimension of the zero set; `None` when inconclusive or empty.
    pub dimension: Option<usize>,
    pub unit_ideal: bool,
    pub basis_size: usize,
}

pub fn tcl_dimension(f: &PrimeField, ideal: &TclIdeal, degree_cap: u32) -> Result<TclOutcome> {
    let gb = buchberger(f, &ideal.generators(), GroebnerOptions::with_cap(degree_cap))?;
    let (dimension, unit_ideal) = if gb.is_complete() {
        let d = ideal_dimension(&gb)?;
        (d, d.is_none())
    } else {
        (None, false)
    };
    Ok(TclOutcome {
        status: gb.status,
        dimension,
        unit_ideal,
        basis_size: gb.basis.len(),
    })
}
