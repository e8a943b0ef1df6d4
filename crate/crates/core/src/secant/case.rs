use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::binomial;

/// The secant variety `σ_r(Gr(P^k, P^n))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrassmannCase {
    pub k: usize,
    pub n: usize,
    pub r: usize,
}

impl GrassmannCase {
    pub fn new(k: usize, n: usize, r: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::Shape(format!("Gr(P^{k}, P^{n}) needs k < n")));
        }
        if r == 0 {
            return Err(Error::Shape("r must be at least 1".into()));
        }
        Ok(GrassmannCase { k, n, r })
    }

    /// The isomorphic case `Gr(P^{n-k-1}, P^n)`.
    pub fn dual(self) -> Self {
        GrassmannCase {
            k: self.n - self.k - 1,
            ..self
        }
    }

    /// Representative with `2(k+1) <= n+1`.
    pub fn normalized(self) -> Self {
        if self.is_normalized() {
            self
        } else {
            self.dual()
        }
    }

    pub fn is_normalized(&self) -> bool {
        2 * (self.k + 1) <= self.n + 1
    }

    /// `Gr(P^a, P^n) ≅ Gr(P^b, P^n)` when the dual case differs.
    pub fn isomorphism_note(&self) -> Option<String> {
        let d = self.dual();
        (d.k != self.k).then(|| format!("Gr(P^{},P^{}) ≅ Gr(P^{},P^{})", self.k, self.n, d.k, d.n))
    }

    pub fn grassmannian_dim(&self) -> usize {
        (self.k + 1) * (self.n - self.k)
    }

    /// Dimension of the affine cone over the Grassmannian.
    pub fn cone_dim(&self) -> usize {
        self.grassmannian_dim() + 1
    }

    pub fn ambient(&self) -> usize {
        binomial(self.n + 1, self.k + 1)
    }

    /// `min(r (dim X + 1), C(n+1, k+1))`, the expected affine dimension.
    pub fn expected_sigma_dim(&self) -> usize {
        (self.r * self.cone_dim()).min(self.ambient())
    }

    /// The expected secant variety is a proper subvariety.
    pub fn is_subgeneric(&self) -> bool {
        self.r * self.cone_dim() < self.ambient()
    }

    /// `r (dim X + 1)` equals the ambient dimension exactly.
    pub fn is_perfect(&self) -> bool {
        self.r * self.cone_dim() == self.ambient()
    }

    pub fn with_r(self, r: usize) -> Self {
        GrassmannCase { r, ..self }
    }
}

impl fmt::Display for GrassmannCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k={}, n={}, r={})", self.k, self.n, self.r)
    }
}
