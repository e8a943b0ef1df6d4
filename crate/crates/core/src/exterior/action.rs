use super::index::{subsets, MultiIndex};
use super::tensor::AlternatingTensor;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::Matrix;

/// Derivation action of `gl(n)` on `∧^m F^n`:
/// `u · (v_1 ∧ .. ∧ v_m) = Σ_i v_1 ∧ .. ∧ u v_i ∧ .. ∧ v_m`.
///
/// Column `j` of `u` is the image of `e_j`.
pub fn gl_action(f: &PrimeField, u: &Matrix, t: &AlternatingTensor) -> Result<AlternatingTensor> {
    let n = t.ambient();
    if u.rows() != n || u.cols() != n {
        return Err(Error::Shape(format!(
            "{}x{} matrix acting on F^{n}",
            u.rows(),
            u.cols()
        )));
    }
    let mut out = AlternatingTensor::zero(t.degree(), n);
    for (idx, &c) in subsets(n, t.degree()).zip(t.coeffs()) {
        if c == 0 {
            continue;
        }
        for slot in 0..idx.len() {
            let j = idx[slot];
            for i in 0..n {
                let uij = u[(i, j)];
                if uij == 0 {
                    continue;
                }
                let mut replaced = idx.clone();
                replaced[slot] = i;
                if let Some((target, negative)) = MultiIndex::sorted_with_sign(replaced) {
                    let pos = target.rank(n);
                    let v = f.mul(c, uij);
                    let slot_ref = &mut out.coeffs_mut()[pos];
                    *slot_ref = if negative {
                        f.sub(*slot_ref, v)
                    } else {
                        f.add(*slot_ref, v)
                    };
                }
            }
        }
    }
    Ok(out)
}

/// Elementary matrix `E_{ij}` sending `e_j` to `e_i`.
pub fn elementary(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = 1;
    m
}

/// The images `E_{ij} · t` for all `n^2` elementary matrices, in row-major
/// order of `(i, j)`; these span the tangent space `gl · t`.
pub fn gl_orbit_generators(f: &PrimeField, t: &AlternatingTensor) -> Vec<Vec<u64>> {
    let n = t.ambient();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(
                gl_action(f, &elementary(n, i, j), t)
                    .expect("square matrix of matching size")
                    .into_coeffs(),
            );
        }
    }
    out
}

/// Group action `g · (v_1 ∧ .. ∧ v_m) = g v_1 ∧ .. ∧ g v_m` (the exterior
/// power of `g`).
pub fn group_action(f: &PrimeField, g: &Matrix, t: &AlternatingTensor) -> Result<AlternatingTensor> {
    let n = t.ambient();
    let m = t.degree();
    if g.rows() != n || g.cols() != n {
        return Err(Error::Shape(format!("{}x{} matrix acting on F^{n}", g.rows(), g.cols())));
    }
    // ∧^m g maps e_J to the Plücker vector of the columns J of g (as rows).
    let gt = g.transpose();
    let plan = super::plucker::PluckerPlan::new(m, n);
    let mut out = vec![0u64; t.coeffs().len()];
    for (idx, &c) in subsets(n, m).zip(t.coeffs()) {
        if c == 0 {
            continue;
        }
        let rows: Vec<&[u64]> = idx.iter().map(|&j| gt.row(j)).collect();
        let image = plan.eval(f, &rows);
        f.axpy(&mut out, c, &image);
    }
    AlternatingTensor::from_coeffs(m, n, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    #[test]
    fn identity_acts_by_degree() {
        let f = FieldContext::default().field;
        let mut rng = FieldContext::default().rng(&[30]);
        let t = AlternatingTensor::from_coeffs(
            3,
            8,
            (0..56).map(|_| f.random(&mut rng)).collect(),
        )
        .unwrap();
        let out = gl_action(&f, &Matrix::identity(8), &t).unwrap();
        assert_eq!(out, t.scaled(&f, 3));
    }

    #[test]
    fn elementary_moves() {
        let f = FieldContext::default().field;
        let t = AlternatingTensor::wedge_of_basis(&f, 8, &[0, 1, 2]).unwrap();
        let moved = gl_action(&f, &elementary(8, 3, 0), &t).unwrap();
        assert_eq!(moved, AlternatingTensor::wedge_of_basis(&f, 8, &[1, 2, 3]).unwrap());
        let fixed = gl_action(&f, &elementary(8, 0, 0), &t).unwrap();
        assert_eq!(fixed, t);
    }

    #[test]
    fn group_action_on_decomposable() {
        let f = FieldContext::default().field;
        let mut rng = FieldContext::default().rng(&[31]);
        let g = Matrix::random(&f, 6, 6, &mut rng);
        let t = AlternatingTensor::wedge_of_basis(&f, 6, &[0, 2, 5]).unwrap();
        // g e0 ∧ g e2 ∧ g e5 is the Plücker vector of columns 0, 2, 5 of g
        let cols = g.transpose();
        let m = Matrix::from_rows(6, vec![cols.row(0).to_vec(), cols.row(2).to_vec(), cols.row(5).to_vec()])
            .unwrap();
        let want = crate::exterior::plucker(&f, &m).unwrap();
        assert_eq!(group_action(&f, &g, &t).unwrap(), want);
    }
}
