//! Plücker coordinates, affine charts of Grassmannians and their jets.
//!
//! Conventions: coordinate `J` of a `(k+1) x (n+1)` matrix is the determinant
//! of the columns `J` taken in increasing order, and coordinates are listed in
//! lexicographic order of `J`.

use rand::Rng;

use super::index::{binomial, subsets, MultiIndex};
use super::tensor::AlternatingTensor;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{rank, EchelonBasis, Matrix, Subspace};

/// Precomputed Laplace-expansion schedule for all maximal minors of a matrix
/// with `m` rows and `ncols` columns.
///
/// Minors of the first `l` rows are expanded along row `l-1` in terms of the
/// minors of the first `l-1` rows, so one evaluation costs
/// `sum_l l * C(ncols, l)` multiplications.
#[derive(Clone, Debug)]
pub struct PluckerPlan {
    ncols: usize,
    m: usize,
    // levels[l-2] describes minors of size l >= 2
    levels: Vec<Level>,
}

#[derive(Clone, Debug)]
struct Level {
    cols: Vec<u32>,
    children: Vec<u32>,
}

impl PluckerPlan {
    pub fn new(m: usize, ncols: usize) -> Self {
        let mut levels = Vec::new();
        for l in 2..=m {
            let mut cols = Vec::with_capacity(binomial(ncols, l) * l);
            let mut children = Vec::with_capacity(binomial(ncols, l) * l);
            for s in subsets(ncols, l) {
                for t in 0..l {
                    cols.push(s[t] as u32);
                    let child: Vec<usize> =
                        s.iter().enumerate().filter(|&(i, _)| i != t).map(|(_, &c)| c).collect();
                    children.push(MultiIndex::new(child).unwrap().rank(ncols) as u32);
                }
            }
            levels.push(Level { cols, children });
        }
        PluckerPlan { ncols, m, levels }
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn output_len(&self) -> usize {
        binomial(self.ncols, self.m)
    }

    /// All maximal minors of the matrix with the given rows.
    pub fn eval(&self, f: &PrimeField, rows: &[&[u64]]) -> Vec<u64> {
        assert_eq!(rows.len(), self.m);
        if self.m == 0 {
            return vec![1];
        }
        let mut prev = rows[0].to_vec();
        for (li, level) in self.levels.iter().enumerate() {
            let l = li + 2;
            let row = rows[l - 1];
            let count = level.cols.len() / l;
            let mut cur = Vec::with_capacity(count);
            for s in 0..count {
                let (mut plus, mut minus) = (0u64, 0u64);
                for t in 0..l {
                    let a = row[level.cols[s * l + t] as usize];
                    if a == 0 {
                        continue;
                    }
                    let b = prev[level.children[s * l + t] as usize];
                    if (l - 1 + t) % 2 == 0 {
                        plus = f.mul_add(plus, a, b);
                    } else {
                        minus = f.mul_add(minus, a, b);
                    }
                }
                cur.push(f.sub(plus, minus));
            }
            prev = cur;
        }
        prev
    }
}

/// Plücker coordinates of the row space of `matrix`.
pub fn plucker(f: &PrimeField, matrix: &Matrix) -> Result<AlternatingTensor> {
    if matrix.rows() > matrix.cols() {
        return Err(Error::Shape(format!(
            "{} rows exceed {} columns",
            matrix.rows(),
            matrix.cols()
        )));
    }
    let plan = PluckerPlan::new(matrix.rows(), matrix.cols());
    let rows: Vec<&[u64]> = matrix.row_iter().collect();
    AlternatingTensor::from_coeffs(matrix.rows(), matrix.cols(), plan.eval(f, &rows))
}

/// Point of `Gr(P^k, P^n)` in the affine chart where the columns `pivots`
/// form an identity block; `params` fills the complementary columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPoint {
    k: usize,
    n: usize,
    pivots: Vec<usize>,
    params: Matrix,
}

impl ChartPoint {
    pub fn new(k: usize, n: usize, pivots: Vec<usize>, params: Matrix) -> Result<Self> {
        if k >= n {
            return Err(Error::Shape(format!("Gr(P^{k}, P^{n}) needs k < n")));
        }
        if pivots.len() != k + 1
            || pivots.windows(2).any(|w| w[0] >= w[1])
            || pivots.iter().any(|&p| p > n)
        {
            return Err(Error::Shape(format!("invalid pivot set {pivots:?} for k={k}, n={n}")));
        }
        if params.rows() != k + 1 || params.cols() != n - k {
            return Err(Error::Shape(format!(
                "chart parameters must be {}x{}, got {}x{}",
                k + 1,
                n - k,
                params.rows(),
                params.cols()
            )));
        }
        Ok(ChartPoint { k, n, pivots, params })
    }

    pub fn default_pivots(k: usize) -> Vec<usize> {
        (0..=k).collect()
    }

    /// The chart origin: the span of `e_pivots`.
    pub fn origin(k: usize, n: usize, pivots: Vec<usize>) -> Result<Self> {
        Self::new(k, n, pivots, Matrix::zeros(k + 1, n - k))
    }

    pub fn random<R: Rng + ?Sized>(
        f: &PrimeField,
        k: usize,
        n: usize,
        pivots: Vec<usize>,
        rng: &mut R,
    ) -> Result<Self> {
        Self::new(k, n, pivots, Matrix::random(f, k + 1, n - k, rng))
    }

    /// Chart coordinates of the row space of `matrix`; fails when the pivot
    /// minor vanishes (the point lies outside this chart).
    pub fn from_matrix(f: &PrimeField, matrix: &Matrix, pivots: Vec<usize>) -> Result<Self> {
        let k = matrix
            .rows()
            .checked_sub(1)
            .ok_or_else(|| Error::Shape("empty matrix".into()))?;
        let n = matrix.cols() - 1;
        let mut aug = Matrix::zeros(k + 1, n + 1);
        for i in 0..=k {
            aug.row_mut(i).copy_from_slice(matrix.row(i));
        }
        // bring pivot columns to the front, row-reduce, read off the rest
        let comp = complement(n, &pivots);
        let order: Vec<usize> = pivots.iter().chain(&comp).copied().collect();
        let mut perm = Matrix::zeros(k + 1, n + 1);
        for i in 0..=k {
            for (j, &c) in order.iter().enumerate() {
                perm[(i, j)] = aug[(i, c)];
            }
        }
        let piv = crate::linalg::rref(f, &mut perm);
        if piv.len() != k + 1 || piv.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Degenerate(format!(
                "point is outside the chart with pivots {pivots:?}"
            )));
        }
        let mut params = Matrix::zeros(k + 1, n - k);
        for i in 0..=k {
            for j in 0..n - k {
                params[(i, j)] = perm[(i, k + 1 + j)];
            }
        }
        Self::new(k, n, pivots, params)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn params(&self) -> &Matrix {
        &self.params
    }

    /// Number of chart variables `(k+1)(n-k)`.
    pub fn num_vars(&self) -> usize {
        (self.k + 1) * (self.n - self.k)
    }

    /// Columns outside the pivot set, in increasing order.
    pub fn complement(&self) -> Vec<usize> {
        complement(self.n, &self.pivots)
    }

    /// Chart variable `a_{i,j}` (row `i`, complement column `j`) as a flat index.
    pub fn var_index(&self, row: usize, col: usize) -> usize {
        row * (self.n - self.k) + col
    }

    /// Row and ambient column of a chart variable.
    pub fn var_position(&self, var: usize) -> (usize, usize) {
        let w = self.n - self.k;
        (var / w, self.complement()[var % w])
    }

    pub fn realization(&self) -> Matrix {
        let mut m = Matrix::zeros(self.k + 1, self.n + 1);
        for (i, &p) in self.pivots.iter().enumerate() {
            m[(i, p)] = 1;
        }
        for (j, c) in self.complement().into_iter().enumerate() {
            for i in 0..=self.k {
                m[(i, c)] = self.params[(i, j)];
            }
        }
        m
    }

    pub fn with_params(&self, params: Matrix) -> Result<Self> {
        Self::new(self.k, self.n, self.pivots.clone(), params)
    }

    pub fn from_flat(&self, values: &[u64]) -> Result<Self> {
        if values.len() != self.num_vars() {
            return Err(Error::Shape("wrong number of chart values".into()));
        }
        let w = self.n - self.k;
        let rows = values.chunks(w).map(|c| c.to_vec()).collect();
        self.with_params(Matrix::from_rows(w, rows)?)
    }

    pub fn flat_params(&self) -> Vec<u64> {
        self.params.row_iter().flatten().copied().collect()
    }
}

pub(crate) fn complement(n: usize, pivots: &[usize]) -> Vec<usize> {
    (0..=n).filter(|c| !pivots.contains(c)).collect()
}

/// A Grassmannian `Gr(P^k, P^n)` with a cached minor schedule.
#[derive(Clone, Debug)]
pub struct Grassmannian {
    k: usize,
    n: usize,
    plan: PluckerPlan,
}

impl Grassmannian {
    pub fn new(k: usize, n: usize) -> Self {
        Grassmannian {
            k,
            n,
            plan: PluckerPlan::new(k + 1, n + 1),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension `C(n+1, k+1)` of the Plücker space.
    pub fn ambient(&self) -> usize {
        self.plan.output_len()
    }

    /// Dimension `(k+1)(n-k)` of the Grassmannian.
    pub fn dim(&self) -> usize {
        (self.k + 1) * (self.n - self.k)
    }

    pub fn plucker(&self, f: &PrimeField, m: &Matrix) -> Vec<u64> {
        let rows: Vec<&[u64]> = m.row_iter().collect();
        self.plan.eval(f, &rows)
    }

    /// Plücker vector of `m` with each `(row, column)` in `replace` replaced
    /// by the unit row selecting that column.
    pub fn plucker_replaced(&self, f: &PrimeField, m: &Matrix, replace: &[(usize, usize)]) -> Vec<u64> {
        let units: Vec<Vec<u64>> = replace
            .iter()
            .map(|&(_, c)| {
                let mut u = vec![0; self.n + 1];
                u[c] = 1;
                u
            })
            .collect();
        let rows: Vec<&[u64]> = (0..m.rows())
            .map(|i| match replace.iter().position(|&(r, _)| r == i) {
                Some(p) => units[p].as_slice(),
                None => m.row(i),
            })
            .collect();
        self.plan.eval(f, &rows)
    }

    /// Basis of the affine tangent space to the cone at a chart point: the
    /// point itself and its `(k+1)(n-k)` chart partial derivatives.
    pub fn chart_tangent_rows(&self, f: &PrimeField, point: &ChartPoint) -> Vec<Vec<u64>> {
        let m = point.realization();
        let mut out = Vec::with_capacity(1 + self.dim());
        out.push(self.plucker(f, &m));
        for var in 0..point.num_vars() {
            let (i, c) = point.var_position(var);
            out.push(self.plucker_replaced(f, &m, &[(i, c)]));
        }
        out
    }

    pub fn jet(&self, f: &PrimeField, point: &ChartPoint) -> Jet2 {
        let m = point.realization();
        let d = point.num_vars();
        let value = self.plucker(f, &m);
        let positions: Vec<(usize, usize)> = (0..d).map(|v| point.var_position(v)).collect();
        let gradient = positions
            .iter()
            .map(|&(i, c)| self.plucker_replaced(f, &m, &[(i, c)]))
            .collect();
        let mut hessian = vec![Vec::new(); d * d];
        for a in 0..d {
            for b in a + 1..d {
                let (ia, ca) = positions[a];
                let (ib, cb) = positions[b];
                if ia != ib {
                    hessian[a * d + b] = self.plucker_replaced(f, &m, &[(ia, ca), (ib, cb)]);
                }
            }
        }
        Jet2 {
            d,
            ambient: self.ambient(),
            value,
            gradient,
            hessian,
        }
    }
}

/// First and second partial derivatives of every Plücker coordinate with
/// respect to the chart variables, at one chart point.
#[derive(Clone, Debug)]
pub struct Jet2 {
    d: usize,
    ambient: usize,
    value: Vec<u64>,
    /// gradient[var] is the vector of partials of all coordinates
    gradient: Vec<Vec<u64>>,
    /// hessian[a * d + b] for a < b; empty when identically zero
    hessian: Vec<Vec<u64>>,
}

impl Jet2 {
    pub fn num_vars(&self) -> usize {
        self.d
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn value(&self) -> &[u64] {
        &self.value
    }

    pub fn gradient_vector(&self, var: usize) -> &[u64] {
        &self.gradient[var]
    }

    /// Second partials of all coordinates in directions `a`, `b`; `None` when
    /// identically zero (both variables in the same row).
    pub fn hessian_vector(&self, a: usize, b: usize) -> Option<&[u64]> {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let v = &self.hessian[a * self.d + b];
        (!v.is_empty()).then_some(v.as_slice())
    }

    pub fn gradient(&self, coord: usize, var: usize) -> u64 {
        self.gradient[var][coord]
    }

    pub fn hessian(&self, coord: usize, a: usize, b: usize) -> u64 {
        self.hessian_vector(a, b).map_or(0, |v| v[coord])
    }

    /// Hessian of the function `A -> <h, Plücker(A)>`.
    pub fn pairing_hessian(&self, f: &PrimeField, h: &[u64]) -> QuadraticForm {
        let mut m = Matrix::zeros(self.d, self.d);
        for a in 0..self.d {
            for b in a + 1..self.d {
                if let Some(v) = self.hessian_vector(a, b) {
                    let x = f.dot(h, v);
                    m[(a, b)] = x;
                    m[(b, a)] = x;
                }
            }
        }
        QuadraticForm { matrix: m }
    }
}

/// `plucker_jet` for a chart point.
pub fn plucker_jet(f: &PrimeField, point: &ChartPoint) -> Jet2 {
    Grassmannian::new(point.k(), point.n()).jet(f, point)
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub matrix: Matrix,
}

impl QuadraticForm {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix == self.matrix.transpose()
    }

    pub fn kernel_dim(&self, f: &PrimeField) -> usize {
        self.dim() - rank(f, &self.matrix)
    }
}

/// Generators `v_1 ∧ .. ∧ e_j ∧ .. ∧ v_{k+1}` of the affine tangent space to
/// the cone over the Grassmannian at `v_1 ∧ .. ∧ v_{k+1}`.
#[derive(Clone, Debug)]
pub struct TangentFrame {
    pub base: AlternatingTensor,
    pub generators: Vec<AlternatingTensor>,
}

impl TangentFrame {
    pub fn span(&self, f: &PrimeField) -> Subspace {
        let rows = self.generators.iter().map(|g| g.coeffs().to_vec()).collect();
        Subspace::span(f, &Matrix::from_rows(self.base.coeffs().len(), rows).unwrap())
    }

    pub fn insert_into(&self, basis: &mut EchelonBasis) {
        for g in &self.generators {
            basis.insert(g.coeffs().to_vec());
        }
    }

    pub fn lies_in(&self, basis: &EchelonBasis) -> bool {
        self.generators.iter().all(|g| basis.contains(g.coeffs()))
    }
}

pub fn tangent_frame(f: &PrimeField, vectors: &Matrix) -> Result<TangentFrame> {
    let (m, ncols) = (vectors.rows(), vectors.cols());
    if m == 0 || m > ncols {
        return Err(Error::Shape(format!("{m} vectors in F^{ncols}")));
    }
    if rank(f, vectors) < m {
        return Err(Error::Degenerate("tangent frame rows are dependent".into()));
    }
    let gr = Grassmannian::new(m - 1, ncols - 1);
    let base = AlternatingTensor::from_coeffs(m, ncols, gr.plucker(f, vectors))?;
    let mut generators = Vec::with_capacity(m * ncols);
    for slot in 0..m {
        for j in 0..ncols {
            let coeffs = gr.plucker_replaced(f, vectors, &[(slot, j)]);
            generators.push(AlternatingTensor::from_coeffs(m, ncols, coeffs)?);
        }
    }
    Ok(TangentFrame { base, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    fn ctx() -> FieldContext {
        FieldContext::default()
    }

    #[test]
    fn identity_block_gives_unit_coordinate() {
        let f = ctx().field;
        let m = Matrix::from_i64(&f, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]).unwrap();
        let t = plucker(&f, &m).unwrap();
        assert_eq!(t.coeffs(), &[1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn expansion_of_two_sums() {
        let f = ctx().field;
        // rows e0+e2, e1+e3
        let m = Matrix::from_i64(&f, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]).unwrap();
        let t = plucker(&f, &m).unwrap();
        // lex order: 01 02 03 12 13 23
        let signed: Vec<i64> = t.coeffs().iter().map(|&c| f.to_signed(c)).collect();
        assert_eq!(signed, vec![1, 0, 1, -1, 0, 1]);
    }

    #[test]
    fn scaling_and_swapping_rows() {
        let f = ctx().field;
        let mut rng = ctx().rng(&[20]);
        let m = Matrix::random(&f, 3, 6, &mut rng);
        let t = plucker(&f, &m).unwrap();
        let mut scaled = m.clone();
        let lambda = 12345;
        f.scale(scaled.row_mut(1), lambda);
        assert_eq!(plucker(&f, &scaled).unwrap(), t.scaled(&f, lambda));
        let mut swapped = m.clone();
        let (r0, r2) = (m.row(0).to_vec(), m.row(2).to_vec());
        swapped.row_mut(0).copy_from_slice(&r2);
        swapped.row_mut(2).copy_from_slice(&r0);
        assert_eq!(plucker(&f, &swapped).unwrap(), t.scaled(&f, f.neg(1)));
    }

    #[test]
    fn dependent_rows_give_zero() {
        let f = ctx().field;
        let m = Matrix::from_i64(&f, &[&[1, 2, 3, 4], &[2, 4, 6, 8]]).unwrap();
        assert!(plucker(&f, &m).unwrap().is_zero());
        let wide = Matrix::zeros(5, 3);
        assert!(matches!(plucker(&f, &wide), Err(Error::Shape(_))));
    }

    #[test]
    fn chart_round_trip() {
        let f = ctx().field;
        let mut rng = ctx().rng(&[21]);
        let p = ChartPoint::random(&f, 2, 6, vec![1, 3, 4], &mut rng).unwrap();
        let m = p.realization();
        let mut g = Matrix::random_invertible(&f, 3, &mut rng);
        g = g.mul(&f, &m).unwrap();
        let back = ChartPoint::from_matrix(&f, &g, vec![1, 3, 4]).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn jet_at_chart_origin() {
        // Gr(P^1, P^3), A = 0, pivots {0,1}; variables a_{i,j}, complement
        // columns {2,3}: var 0 = (row 0, col 2), var 1 = (0, 3), var 2 = (1, 2), var 3 = (1, 3)
        let f = ctx().field;
        let p = ChartPoint::origin(1, 3, vec![0, 1]).unwrap();
        let jet = plucker_jet(&f, &p);
        let pos = |s: &[usize]| MultiIndex::new(s.to_vec()).unwrap().rank(4);
        // coordinate {0,2} = det [[1, a00], [0, a10]] = a10: derivative along var 2 is 1
        assert_eq!(jet.gradient(pos(&[0, 2]), 2), 1);
        assert_eq!(jet.gradient(pos(&[0, 2]), 0), 0);
        // coordinate {2,3} = a00 a11 - a01 a10
        let c23 = pos(&[2, 3]);
        let mut nonzero = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                if jet.hessian(c23, a, b) != 0 {
                    nonzero.push((a, b, f.to_signed(jet.hessian(c23, a, b))));
                }
            }
        }
        assert_eq!(nonzero, vec![(0, 3, 1), (1, 2, -1)]);
    }

    #[test]
    fn tangent_frame_contains_base() {
        let f = ctx().field;
        let mut rng = ctx().rng(&[22]);
        let m = Matrix::random(&f, 3, 8, &mut rng);
        let frame = tangent_frame(&f, &m).unwrap();
        let span = frame.span(&f);
        assert_eq!(span.rank(), 16);
        assert!(span.contains(&f, frame.base.coeffs()));
    }

    #[test]
    fn tangent_frame_rejects_dependent_rows() {
        let f = ctx().field;
        let m = Matrix::from_i64(&f, &[&[1, 0, 0], &[2, 0, 0]]).unwrap();
        assert!(matches!(tangent_frame(&f, &m), Err(Error::Degenerate(_))));
    }

    #[test]
    fn chart_tangent_rows_span_the_frame() {
        let f = ctx().field;
        let mut rng = ctx().rng(&[23]);
        let gr = Grassmannian::new(2, 9);
        let p = ChartPoint::random(&f, 2, 9, vec![0, 1, 2], &mut rng).unwrap();
        let rows = gr.chart_tangent_rows(&f, &p);
        let chart_span = Subspace::from_vectors(&f, gr.ambient(), &rows).unwrap();
        let frame_span = tangent_frame(&f, &p.realization()).unwrap().span(&f);
        assert_eq!(chart_span.rank(), 22);
        assert_eq!(chart_span, frame_span);
    }
}
