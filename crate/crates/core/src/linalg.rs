//! Exact dense linear algebra over a prime field.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Row-major dense matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<u64>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds from signed integers, reducing into the field.
    pub fn from_i64(f: &PrimeField, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn random<R: Rng + ?Sized>(f: &PrimeField, rows: usize, cols: usize, rng: &mut R) -> Self {
        Matrix {
            rows,
            cols,
            data: (0..rows * cols).map(|_| f.random(rng)).collect(),
        }
    }

    /// Random invertible matrix (resampled until the determinant is nonzero).
    pub fn random_invertible<R: Rng + ?Sized>(f: &PrimeField, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(f, n, n, rng);
            if rank(f, &m) == n {
                return m;
            }
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u64]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[u64]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Shape(format!(
                "row of length {} pushed onto {} columns",
                row.len(),
                self.cols
            )));
        }
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, f: &PrimeField, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a != 0 {
                    let (src, dst) = (other.row(l).to_vec(), out.row_mut(i));
                    f.axpy(dst, a, &src);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, f: &PrimeField, v: &[u64]) -> Vec<u64> {
        self.row_iter().map(|r| f.dot(r, v)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = u64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns. Zero rows are dropped.
pub fn rref(f: &PrimeField, m: &mut Matrix) -> Vec<usize> {
    let cols = m.cols;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.rows {
            break;
        }
        let Some(sel) = (r..m.rows).find(|&i| m[(i, c)] != 0) else {
            continue;
        };
        if sel != r {
            for j in 0..cols {
                m.data.swap(sel * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m[(r, c)]);
        f.scale(&mut m.row_mut(r)[c..], inv);
        let pivot_row = m.row(r)[c..].to_vec();
        for i in 0..m.rows {
            if i != r {
                let factor = m[(i, c)];
                if factor != 0 {
                    f.axpy(&mut m.row_mut(i)[c..], f.neg(factor), &pivot_row);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.data.truncate(r * cols);
    m.rows = r;
    pivots
}

pub fn rank(f: &PrimeField, m: &Matrix) -> usize {
    let mut basis = EchelonBasis::new(*f, m.cols);
    for row in m.row_iter() {
        basis.insert(row.to_vec());
    }
    basis.rank()
}

/// Basis (as rows) of the right kernel `{x : m x = 0}`.
pub fn kernel(f: &PrimeField, m: &Matrix) -> Matrix {
    let mut r = m.clone();
    let pivots = rref(f, &mut r);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Matrix::zeros(0, m.cols);
    for &fc in &free {
        let mut v = vec![0u64; m.cols];
        v[fc] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r[(i, fc)]);
        }
        out.push_row(&v).unwrap();
    }
    out
}

/// Solves `m x = b`, returning one solution or `None` when inconsistent.
pub fn solve(f: &PrimeField, m: &Matrix, b: &[u64]) -> Result<Option<Vec<u64>>> {
    if b.len() != m.rows {
        return Err(Error::Shape(format!(
            "right-hand side has length {}, expected {}",
            b.len(),
            m.rows
        )));
    }
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        aug.row_mut(i)[..m.cols].copy_from_slice(m.row(i));
        aug[(i, m.cols)] = b[i];
    }
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = vec![0u64; m.cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[(i, m.cols)];
    }
    Ok(Some(x))
}

/// Exact linear subspace of `F^ambient`, stored in reduced row echelon form.
///
/// Two subspaces are equal iff their canonical forms are equal, so the
/// derived `PartialEq` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(f: &PrimeField, generators: &Matrix) -> Self {
        let mut basis = generators.clone();
        let pivots = rref(f, &mut basis);
        Subspace { basis, pivots }
    }

    pub fn from_vectors(f: &PrimeField, ambient: usize, vectors: &[Vec<u64>]) -> Result<Self> {
        Ok(Self::span(f, &Matrix::from_rows(ambient, vectors.to_vec())?))
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::Shape(format!(
                "ambient dimensions {} and {} differ",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }

    /// Reduces `v` modulo the subspace; the result is zero iff `v` lies in it.
    pub fn normal_form(&self, f: &PrimeField, v: &[u64]) -> Vec<u64> {
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = w[pc];
            if c != 0 {
                f.axpy(&mut w, f.neg(c), self.basis.row(i));
            }
        }
        w
    }

    pub fn contains(&self, f: &PrimeField, v: &[u64]) -> bool {
        v.len() == self.ambient() && self.normal_form(f, v).iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, f: &PrimeField, other: &Subspace) -> bool {
        self.ambient() == other.ambient() && self.basis.row_iter().all(|r| other.contains(f, r))
    }

    pub fn span_union(&self, f: &PrimeField, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut m = self.basis.clone();
        for r in other.basis.row_iter() {
            m.push_row(r)?;
        }
        Ok(Subspace::span(f, &m))
    }

    /// Linear forms vanishing on the subspace, as a subspace of the dual
    /// (identified with `F^ambient` through the standard pairing).
    pub fn annihilator(&self, f: &PrimeField) -> Subspace {
        Subspace::span(f, &kernel(f, &self.basis))
    }

    /// `U ∩ W`, computed as the common zero set of the stacked annihilators.
    pub fn intersect(&self, f: &PrimeField, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let stacked = self.annihilator(f).span_union(f, &other.annihilator(f))?;
        Ok(stacked.annihilator(f))
    }
}

/// Incrementally built row echelon basis.
///
/// Each stored row is normalized to 1 at its pivot and is zero in every
/// column before the pivot, which is all that insertion and membership need.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u64>>,
    /// pivot column -> index into `rows`
    pivot_of: Vec<Option<usize>>,
}

impl EchelonBasis {
    pub fn new(field: PrimeField, ambient: usize) -> Self {
        EchelonBasis {
            field,
            ambient,
            rows: Vec::new(),
            pivot_of: vec![None; ambient],
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_in_place(&self, v: &mut [u64]) -> Option<usize> {
        let f = &self.field;
        for c in 0..self.ambient {
            let x = v[c];
            if x == 0 {
                continue;
            }
            match self.pivot_of[c] {
                Some(idx) => f.axpy(&mut v[c..], f.neg(x), &self.rows[idx][c..]),
                None => return Some(c),
            }
        }
        None
    }

    /// Reduces `v` completely; returns the remainder.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = &self.field;
        let mut w = v.to_vec();
        for c in 0..self.ambient {
            let x = w[c];
            if x != 0 {
                if let Some(idx) = self.pivot_of[c] {
                    f.axpy(&mut w[c..], f.neg(x), &self.rows[idx][c..]);
                }
            }
        }
        w
    }

    /// Adds `v` to the span. Returns true when the rank grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        match self.reduce_in_place(&mut v) {
            None => false,
            Some(pc) => {
                let inv = self.field.inv(v[pc]);
                self.field.scale(&mut v[pc..], inv);
                self.pivot_of[pc] = Some(self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.ambient && {
            let mut w = v.to_vec();
            self.reduce_in_place(&mut w).is_none()
        }
    }

    /// Uniformly random linear form vanishing on the span.
    pub fn random_annihilator<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let f = &self.field;
        let mut h = vec![0u64; self.ambient];
        for c in 0..self.ambient {
            if self.pivot_of[c].is_none() {
                h[c] = f.random(rng);
            }
        }
        for c in (0..self.ambient).rev() {
            if let Some(idx) = self.pivot_of[c] {
                let row = &self.rows[idx];
                let s = f.dot(&row[c + 1..], &h[c + 1..]);
                h[c] = f.neg(s);
            }
        }
        h
    }

    pub fn to_subspace(&self) -> Subspace {
        let m = Matrix::from_rows(self.ambient, self.rows.clone()).unwrap();
        Subspace::span(&self.field, &m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    fn field() -> PrimeField {
        FieldContext::default().field
    }

    #[test]
    fn annihilator_of_full_space_is_zero() {
        let f = field();
        assert_eq!(Subspace::full(7).annihilator(&f).rank(), 0);
        assert_eq!(Subspace::zero(7).annihilator(&f).rank(), 7);
    }

    #[test]
    fn self_intersection() {
        let f = field();
        let mut rng = FieldContext::default().rng(&[10]);
        let u = Subspace::span(&f, &Matrix::random(&f, 4, 9, &mut rng));
        assert_eq!(u.intersect(&f, &u).unwrap(), u);
    }

    #[test]
    fn intersection_dimension_formula() {
        let f = field();
        let mut rng = FieldContext::default().rng(&[11]);
        for _ in 0..5 {
            let u = Subspace::span(&f, &Matrix::random(&f, 5, 10, &mut rng));
            let w = Subspace::span(&f, &Matrix::random(&f, 7, 10, &mut rng));
            let cap = u.intersect(&f, &w).unwrap();
            assert_eq!(cap.rank(), 2);
            assert!(cap.is_subspace_of(&f, &u) && cap.is_subspace_of(&f, &w));
            // double annihilator returns the same space
            assert_eq!(cap.annihilator(&f).annihilator(&f), cap);
        }
    }

    #[test]
    fn ambient_mismatch_is_shape_error() {
        let f = field();
        let err = Subspace::zero(3).intersect(&f, &Subspace::zero(4));
        assert!(matches!(err, Err(Error::Shape(_))));
    }

    #[test]
    fn echelon_annihilator_vanishes_on_span() {
        let f = field();
        let mut rng = FieldContext::default().rng(&[12]);
        let m = Matrix::random(&f, 6, 15, &mut rng);
        let mut e = EchelonBasis::new(f, 15);
        for r in m.row_iter() {
            e.insert(r.to_vec());
        }
        e.insert(m.row(0).to_vec());
        assert_eq!(e.rank(), 6);
        let h = e.random_annihilator(&mut rng);
        for r in m.row_iter() {
            assert_eq!(f.dot(r, &h), 0);
        }
        assert_eq!(e.to_subspace(), Subspace::span(&f, &m));
    }

    #[test]
    fn solve_detects_inconsistency() {
        let f = field();
        let m = Matrix::from_i64(&f, &[&[1, 1], &[1, 1]]).unwrap();
        assert!(solve(&f, &m, &[1, 2]).unwrap().is_none());
        let x = solve(&f, &m, &[3, 3]).unwrap().unwrap();
        assert_eq!(f.add(x[0], x[1]), 3);
    }
}
