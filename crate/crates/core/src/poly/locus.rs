use super::poly::SparsePoly;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::linalg::{kernel, solve, Matrix};

/// Affine linear subvariety `{point + Σ t_k directions[k]}` of `F^nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearLocus {
    pub point: Vec<u64>,
    pub directions: Vec<Vec<u64>>,
}

impl LinearLocus {
    /// Solves the system `{ l = 0 : l in forms }` of polynomials of degree ≤ 1.
    pub fn from_linear_forms(f: &PrimeField, nvars: usize, forms: &[SparsePoly]) -> Result<Self> {
        let mut a = Matrix::zeros(forms.len(), nvars);
        let mut b = vec![0u64; forms.len()];
        for (i, form) in forms.iter().enumerate() {
            if form.nvars() != nvars {
                return Err(Error::Shape("linear form over a different ring".into()));
            }
            for (m, c) in form.terms() {
                match m.degree() {
                    0 => b[i] = f.neg(*c),
                    1 => a[(i, m.support()[0])] = *c,
                    _ => return Err(Error::Shape(format!("`{}` is not linear", form.to_text(f)))),
                }
            }
        }
        let point = solve(f, &a, &b)?.ok_or(Error::EmptyLocus)?;
        let directions = kernel(f, &a).to_rows();
        Ok(LinearLocus { point, directions })
    }

    pub fn nvars(&self) -> usize {
        self.point.len()
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Point with parameters `t`.
    pub fn at(&self, f: &PrimeField, t: &[u64]) -> Vec<u64> {
        let mut x = self.point.clone();
        for (d, &tk) in self.directions.iter().zip(t) {
            f.axpy(&mut x, tk, d);
        }
        x
    }

    /// The coordinate functions `x_i(t)` as polynomials in the parameters.
    pub fn parametrization(&self, f: &PrimeField) -> Vec<SparsePoly> {
        let m = self.dim();
        (0..self.nvars())
            .map(|i| {
                let mut p = SparsePoly::constant(m, self.point[i]);
                for (k, d) in self.directions.iter().enumerate() {
                    p = p.add(f, &SparsePoly::var(m, k).scale(f, d[i]));
                }
                p
            })
            .collect()
    }

    /// True when some point satisfies both systems.
    pub fn meets(&self, f: &PrimeField, other: &LinearLocus) -> Result<bool> {
        if self.nvars() != other.nvars() {
            return Err(Error::Shape("loci in different spaces".into()));
        }
        // point_a + D_a s = point_b + D_b t
        let unknowns = self.dim() + other.dim();
        let mut a = Matrix::zeros(self.nvars(), unknowns);
        let mut rhs = vec![0u64; self.nvars()];
        for i in 0..self.nvars() {
            for (k, d) in self.directions.iter().enumerate() {
                a[(i, k)] = d[i];
            }
            for (k, d) in other.directions.iter().enumerate() {
                a[(i, self.dim() + k)] = f.neg(d[i]);
            }
            rhs[i] = f.sub(other.point[i], self.point[i]);
        }
        Ok(solve(f, &a, &rhs)?.is_some())
    }
}

/// Checks `V(locus) ⊆ V(generators)` by substituting the parametrization and
/// comparing coefficients exactly.
pub fn contains_linear_locus(f: &PrimeField, generators: &[SparsePoly], locus: &LinearLocus) -> Result<bool> {
    let images = locus.parametrization(f);
    for g in generators {
        if g.nvars() != locus.nvars() {
            return Err(Error::Shape("generator and locus live in different spaces".into()));
        }
        if !g.compose(f, &images)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use crate::poly::poly::parse_ideal;

    #[test]
    fn product_vanishes_on_axis() {
        let f = FieldContext::default().field;
        let locus = LinearLocus::from_linear_forms(&f, 2, &parse_ideal(&f, "# nvars=2\nx1").unwrap()).unwrap();
        assert_eq!(locus.dim(), 1);
        let yes = parse_ideal(&f, "# nvars=2\nx1*x2").unwrap();
        let no = parse_ideal(&f, "# nvars=2\nx1 - 1").unwrap();
        assert!(contains_linear_locus(&f, &yes, &locus).unwrap());
        assert!(!contains_linear_locus(&f, &no, &locus).unwrap());
    }

    #[test]
    fn inconsistent_system_is_empty() {
        let f = FieldContext::default().field;
        let forms = parse_ideal(&f, "# nvars=2\nx1\nx1 - 1").unwrap();
        assert!(matches!(LinearLocus::from_linear_forms(&f, 2, &forms), Err(Error::EmptyLocus)));
    }

    #[test]
    fn nonlinear_form_rejected() {
        let f = FieldContext::default().field;
        let forms = parse_ideal(&f, "# nvars=2\nx1*x2").unwrap();
        assert!(LinearLocus::from_linear_forms(&f, 2, &forms).is_err());
    }
}
