use serde::{Deserialize, Serialize};

use super::index::{binomial, subsets, MultiIndex};
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Dense coordinate vector of an element of `∧^degree F^ambient`, indexed by
/// [`MultiIndex`] in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingTensor {
    degree: usize,
    ambient: usize,
    coeffs: Vec<u64>,
}

impl AlternatingTensor {
    pub fn zero(degree: usize, ambient: usize) -> Self {
        AlternatingTensor {
            degree,
            ambient,
            coeffs: vec![0; binomial(ambient, degree)],
        }
    }

    pub fn from_coeffs(degree: usize, ambient: usize, coeffs: Vec<u64>) -> Result<Self> {
        let want = binomial(ambient, degree);
        if coeffs.len() != want {
            return Err(Error::Shape(format!(
                "{} coefficients given, ∧^{degree} F^{ambient} has {want}",
                coeffs.len()
            )));
        }
        Ok(AlternatingTensor {
            degree,
            ambient,
            coeffs,
        })
    }

    /// `e_{i0} ∧ ... ∧ e_{im}` for an arbitrary (not necessarily sorted) list
    /// of distinct indices; repeated indices give zero.
    pub fn wedge_of_basis(f: &PrimeField, ambient: usize, indices: &[usize]) -> Result<Self> {
        if indices.iter().any(|&i| i >= ambient) {
            return Err(Error::Shape(format!("index out of range in {indices:?}")));
        }
        let mut t = Self::zero(indices.len(), ambient);
        if let Some((idx, negative)) = MultiIndex::sorted_with_sign(indices.to_vec()) {
            let pos = idx.rank(ambient);
            t.coeffs[pos] = if negative { f.neg(1) } else { 1 };
        }
        Ok(t)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [u64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    pub fn get(&self, idx: &MultiIndex) -> u64 {
        self.coeffs[idx.rank(self.ambient)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree || self.ambient != other.ambient {
            return Err(Error::Shape(format!(
                "∧^{} F^{} vs ∧^{} F^{}",
                self.degree, self.ambient, other.degree, other.ambient
            )));
        }
        Ok(())
    }

    pub fn add(&self, f: &PrimeField, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(AlternatingTensor { coeffs, ..*self })
    }

    pub fn scaled(&self, f: &PrimeField, s: u64) -> Self {
        AlternatingTensor {
            coeffs: self.coeffs.iter().map(|&c| f.mul(c, s)).collect(),
            ..*self
        }
    }

    /// True when the two tensors span the same line (both nonzero).
    pub fn projectively_equal(&self, f: &PrimeField, other: &Self) -> bool {
        if self.check_same_space(other).is_err() || self.is_zero() || other.is_zero() {
            return false;
        }
        let Some(i) = self.coeffs.iter().position(|&c| c != 0) else {
            return false;
        };
        if other.coeffs[i] == 0 {
            return false;
        }
        let ratio = f.mul(other.coeffs[i], f.inv(self.coeffs[i]));
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(&a, &b)| f.mul(a, ratio) == b)
    }

    /// Exterior product.
    pub fn wedge(&self, f: &PrimeField, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::Shape("wedge of tensors over different spaces".into()));
        }
        let n = self.ambient;
        let mut out = Self::zero(self.degree + other.degree, n);
        if self.degree + other.degree > n {
            return Ok(out);
        }
        let left: Vec<Vec<usize>> = subsets(n, self.degree).collect();
        let right: Vec<Vec<usize>> = subsets(n, other.degree).collect();
        for (a, ia) in left.iter().zip(&self.coeffs) {
            if *ia == 0 {
                continue;
            }
            for (b, ib) in right.iter().zip(&other.coeffs) {
                if *ib == 0 {
                    continue;
                }
                let joined: Vec<usize> = a.iter().chain(b).copied().collect();
                if let Some((idx, negative)) = MultiIndex::sorted_with_sign(joined) {
                    let pos = idx.rank(n);
                    let v = f.mul(*ia, *ib);
                    out.coeffs[pos] = if negative {
                        f.sub(out.coeffs[pos], v)
                    } else {
                        f.add(out.coeffs[pos], v)
                    };
                }
            }
        }
        Ok(out)
    }

    /// Nonzero terms as (index, centered integer value).
    pub fn terms(&self, f: &PrimeField) -> Vec<(MultiIndex, i64)> {
        subsets(self.ambient, self.degree)
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(s, &c)| (MultiIndex::new(s).unwrap(), f.to_signed(c)))
            .collect()
    }
}

/// JSON interchange form of a tensor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorFile {
    pub degree: usize,
    pub ambient: usize,
    pub modulus: u64,
    pub terms: Vec<TensorTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTerm {
    pub index: Vec<usize>,
    pub value: i64,
}

impl TensorFile {
    pub fn from_tensor(f: &PrimeField, t: &AlternatingTensor) -> Self {
        TensorFile {
            degree: t.degree,
            ambient: t.ambient,
            modulus: f.modulus(),
            terms: t
                .terms(f)
                .into_iter()
                .map(|(idx, value)| TensorTerm {
                    index: idx.entries().to_vec(),
                    value,
                })
                .collect(),
        }
    }

    /// Values are reduced modulo `f`; repeated indices accumulate.
    pub fn to_tensor(&self, f: &PrimeField) -> Result<AlternatingTensor> {
        let mut t = AlternatingTensor::zero(self.degree, self.ambient);
        for term in &self.terms {
            if term.index.len() != self.degree {
                return Err(Error::Shape(format!(
                    "index {:?} has length {}, degree is {}",
                    term.index,
                    term.index.len(),
                    self.degree
                )));
            }
            if term.index.iter().any(|&i| i >= self.ambient) {
                return Err(Error::Shape(format!("index {:?} out of range", term.index)));
            }
            let idx = MultiIndex::new(term.index.clone())?;
            let pos = idx.rank(self.ambient);
            t.coeffs[pos] = f.add(t.coeffs[pos], f.from_i64(term.value));
        }
        Ok(t)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tensor file serializes")
    }
}
