use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{elementary, gl_action, gl_orbit_generators, subsets, AlternatingTensor};
use crate::field::{FieldContext, PrimeField};
use crate::linalg::{kernel, rank, EchelonBasis, Matrix};

const TAG_DUAL: u64 = 0xd0a1;

fn check_shape(t: &AlternatingTensor) -> Result<()> {
    if t.degree() != 3 || t.ambient() != 8 {
        return Err(Error::Shape(format!(
            "expected a tensor in ∧^3 F^8, got degree {} in dimension {}",
            t.degree(),
            t.ambient()
        )));
    }
    Ok(())
}

fn span_rank(f: &PrimeField, ambient: usize, vectors: impl IntoIterator<Item = Vec<u64>>) -> usize {
    let mut basis = EchelonBasis::new(*f, ambient);
    for v in vectors {
        basis.insert(v);
        if basis.rank() == ambient {
            break;
        }
    }
    basis.rank()
}

/// Affine dimension of the `GL(8)`-orbit of `t`: the rank of `u -> u·t`.
pub fn orbit_dim(f: &PrimeField, t: &AlternatingTensor) -> Result<usize> {
    check_shape(t)?;
    Ok(span_rank(f, t.coeffs().len(), gl_orbit_generators(f, t)))
}

/// Affine cone dimension of the dual variety of an orbit closure, or
/// `Empty` for the dense orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualDim {
    Dim(usize),
    Empty,
}

impl DualDim {
    pub fn value(&self) -> Option<usize> {
        match self {
            DualDim::Dim(d) => Some(*d),
            DualDim::Empty => None,
        }
    }
}

/// `E_b · (E_a · t)` for all pairs of elementary matrices, `[a][b]`.
fn second_action(f: &PrimeField, t: &AlternatingTensor) -> Vec<Vec<AlternatingTensor>> {
    let first: Vec<AlternatingTensor> = (0..64)
        .map(|a| gl_action(f, &elementary(8, a / 8, a % 8), t).expect("square"))
        .collect();
    first
        .iter()
        .map(|w| {
            (0..64)
                .map(|b| gl_action(f, &elementary(8, b / 8, b % 8), w).expect("square"))
                .collect()
        })
        .collect()
}

/// Dimension of the dual variety through the conormal construction: at a
/// random `H_0` annihilating `gl·t`, the tangent directions `ḣ` of the dual
/// cone are the projections of the solutions `(u, ḣ)` of
/// `<ḣ, v·t> + <H_0, v·(u·t)> = 0` for all `v` in `gl(8)`.
pub fn dual_cone_dim(ctx: &FieldContext, t: &AlternatingTensor, trials: usize) -> Result<DualDim> {
    check_shape(t)?;
    if t.is_zero() {
        return Err(Error::EmptyDualOfPoint);
    }
    let f = &ctx.field;
    let n = t.coeffs().len();
    let gens = gl_orbit_generators(f, t);
    let mut tangent = EchelonBasis::new(*f, n);
    for g in &gens {
        tangent.insert(g.clone());
    }
    if tangent.rank() == n {
        return Ok(DualDim::Empty);
    }
    let second = second_action(f, t);
    let mut best = 0;
    for trial in 0..trials.max(1) {
        let h0 = tangent.random_annihilator(&mut ctx.rng(&[TAG_DUAL, trial as u64]));
        // unknowns: u (64) then ḣ (56); one equation per v_b
        let mut system = Matrix::zeros(64, 64 + n);
        for b in 0..64 {
            for a in 0..64 {
                system[(b, a)] = f.dot(&h0, second[a][b].coeffs());
            }
            for (j, &x) in gens[b].iter().enumerate() {
                system[(b, 64 + j)] = x;
            }
        }
        let sols = kernel(f, &system);
        let mut proj = Matrix::zeros(0, n);
        for row in sols.row_iter() {
            proj.push_row(&row[64..]).expect("width");
        }
        best = best.max(rank(f, &proj));
    }
    Ok(DualDim::Dim(best))
}

/// Rank of the contraction `F^8* -> ∧^2 F^8`, `φ -> ι_φ t`.
pub fn flattening_rank(f: &PrimeField, t: &AlternatingTensor) -> Result<usize> {
    check_shape(t)?;
    let pairs: Vec<Vec<usize>> = subsets(8, 2).collect();
    let pair_pos = |a: usize, b: usize| pairs.iter().position(|p| p[0] == a && p[1] == b).unwrap();
    let mut m = Matrix::zeros(8, pairs.len());
    for (idx, &c) in subsets(8, 3).zip(t.coeffs()) {
        if c == 0 {
            continue;
        }
        for slot in 0..3 {
            let i = idx[slot];
            let rest: Vec<usize> = idx.iter().copied().filter(|&x| x != i).collect();
            let v = if slot % 2 == 0 { c } else { f.neg(c) };
            let pos = pair_pos(rest[0], rest[1]);
            m[(i, pos)] = f.add(m[(i, pos)], v);
        }
    }
    Ok(rank(f, &m))
}

/// `dim span{ u·(v·t) : u, v in gl(8) }`.
pub fn osculating_dim(f: &PrimeField, t: &AlternatingTensor) -> Result<usize> {
    check_shape(t)?;
    let second = second_action(f, t);
    Ok(span_rank(
        f,
        t.coeffs().len(),
        second.into_iter().flatten().map(AlternatingTensor::into_coeffs),
    ))
}

/// Orbit invariants used for classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub dim: usize,
    /// `None` for the zero tensor and the dense orbit.
    pub dual_dim: Option<usize>,
    pub flattening_rank: usize,
    pub osculating_dim: usize,
}

pub fn signature(ctx: &FieldContext, t: &AlternatingTensor, trials: usize) -> Result<Signature> {
    let f = &ctx.field;
    let dual_dim = if t.is_zero() {
        None
    } else {
        dual_cone_dim(ctx, t, trials)?.value()
    };
    Ok(Signature {
        dim: orbit_dim(f, t)?,
        dual_dim,
        flattening_rank: flattening_rank(f, t)?,
        osculating_dim: osculating_dim(f, t)?,
    })
}
