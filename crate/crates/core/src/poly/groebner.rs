//! Buchberger's algorithm for degrevlex with a degree cap.

use serde::{Deserialize, Serialize};

use super::poly::{Monomial, SparsePoly};
use crate::error::{Error, Result};
use crate::field::PrimeField;

pub const DEFAULT_DEGREE_CAP: u32 = 6;

#[derive(Clone, Copy, Debug)]
pub struct GroebnerOptions {
    /// S-pairs whose lcm has larger degree are not processed.
    pub degree_cap: u32,
    /// Discard pairs by the coprime and chain criteria. Turning this off gives
    /// the reference mode that reduces every pair.
    pub criteria: bool,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions {
            degree_cap: DEFAULT_DEGREE_CAP,
            criteria: true,
        }
    }
}

impl GroebnerOptions {
    pub fn with_cap(degree_cap: u32) -> Self {
        GroebnerOptions {
            degree_cap,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroebnerStatus {
    Complete,
    /// Pairs above the degree cap were left unprocessed.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct GroebnerResult {
    pub status: GroebnerStatus,
    /// Reduced and monic when complete; an interreduced partial basis otherwise.
    pub basis: Vec<SparsePoly>,
    pub nvars: usize,
    pub pairs_reduced: usize,
    pub pairs_skipped_by_cap: usize,
}

impl GroebnerResult {
    pub fn is_complete(&self) -> bool {
        self.status == GroebnerStatus::Complete
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn normal_form(&self, f: &PrimeField, p: &SparsePoly) -> SparsePoly {
        normal_form(f, p, &self.basis)
    }
}

/// Full reduction of `p` by `basis`.
pub fn normal_form(f: &PrimeField, p: &SparsePoly, basis: &[SparsePoly]) -> SparsePoly {
    let nvars = p.nvars();
    let mut rest = p.clone();
    let mut remainder: Vec<(Monomial, u64)> = Vec::new();
    while let Some((lm, lc)) = rest.leading().cloned() {
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|gm| gm.divides(&lm))) {
            Some(g) => {
                let (gm, gc) = g.leading().unwrap();
                let q = gm.quotient_of(&lm);
                let s = f.neg(f.mul(lc, f.inv(*gc)));
                rest = rest.add_scaled(f, s, &q, g);
            }
            None => {
                remainder.push((lm.clone(), lc));
                rest = rest.tail();
            }
        }
    }
    SparsePoly::from_terms(f, nvars, remainder)
}

/// Reduces only until the leading term is irreducible.
fn top_reduce(f: &PrimeField, p: SparsePoly, basis: &[SparsePoly], active: &[bool]) -> SparsePoly {
    let mut p = p;
    'outer: while let Some((lm, lc)) = p.leading().cloned() {
        for (g, _) in basis.iter().zip(active).filter(|(_, &a)| a) {
            let (gm, gc) = g.leading().unwrap();
            if gm.divides(&lm) {
                let q = gm.quotient_of(&lm);
                let s = f.neg(f.mul(lc, f.inv(*gc)));
                p = p.add_scaled(f, s, &q, g);
                continue 'outer;
            }
        }
        break;
    }
    p
}

fn s_polynomial(f: &PrimeField, a: &SparsePoly, b: &SparsePoly) -> SparsePoly {
    let (am, ac) = a.leading().unwrap();
    let (bm, bc) = b.leading().unwrap();
    let l = am.lcm(bm);
    let left = SparsePoly::zero(a.nvars()).add_scaled(f, f.inv(*ac), &am.quotient_of(&l), a);
    left.add_scaled(f, f.neg(f.inv(*bc)), &bm.quotient_of(&l), b)
}

/// Gaussian elimination of the input on its monomial support: afterwards
/// the generators have distinct leading monomials and every degree-one
/// generator has been used to eliminate its leading variable elsewhere.
fn linear_interreduce(f: &PrimeField, gens: &[SparsePoly]) -> Vec<SparsePoly> {
    let mut monos: Vec<Monomial> = gens.iter().flat_map(|g| g.terms().iter().map(|(m, _)| m.clone())).collect();
    monos.sort_by(|a, b| b.cmp(a));
    monos.dedup();
    if monos.is_empty() {
        return Vec::new();
    }
    let col: std::collections::HashMap<&Monomial, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix = crate::linalg::Matrix::zeros(gens.len(), monos.len());
    for (i, g) in gens.iter().enumerate() {
        for (m, c) in g.terms() {
            matrix[(i, col[m])] = *c;
        }
    }
    crate::linalg::rref(f, &mut matrix);
    matrix
        .row_iter()
        .map(|row| {
            let terms = row
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| (monos[j].clone(), c))
                .collect();
            SparsePoly::from_terms(f, gens[0].nvars(), terms)
        })
        .collect()
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub fn buchberger(f: &PrimeField, generators: &[SparsePoly], options: GroebnerOptions) -> Result<GroebnerResult> {
    let nvars = generators.first().map_or(0, |g| g.nvars());
    if generators.iter().any(|g| g.nvars() != nvars) {
        return Err(Error::Shape("generators over different variable counts".into()));
    }
    let input: Vec<SparsePoly> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut polys: Vec<SparsePoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut reduced = 0;
    let mut skipped = 0;

    let seeds = if input.is_empty() {
        Vec::new()
    } else {
        linear_interreduce(f, &input)
    };
    for g in seeds {
        let g = top_reduce(f, g, &polys, &active);
        if !g.is_zero() {
            insert(&mut polys, &mut active, &mut pairs, g.monic(f), options.criteria);
        }
    }

    loop {
        // normal strategy: smallest lcm first
        let Some(pos) = pairs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.lcm.degree() <= options.degree_cap)
            .min_by(|a, b| a.1.lcm.cmp(&b.1.lcm))
            .map(|(i, _)| i)
        else {
            break;
        };
        let pair = pairs.swap_remove(pos);
        reduced += 1;
        let s = s_polynomial(f, &polys[pair.i], &polys[pair.j]);
        let h = top_reduce(f, s, &polys, &active);
        if !h.is_zero() {
            let h = h.monic(f);
            let unit = h.is_constant();
            insert(&mut polys, &mut active, &mut pairs, h, options.criteria);
            if unit {
                pairs.clear();
                break;
            }
        }
    }
    skipped += pairs.len();

    let status = if skipped == 0 {
        GroebnerStatus::Complete
    } else {
        GroebnerStatus::Inconclusive
    };
    let kept: Vec<SparsePoly> = polys
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    Ok(GroebnerResult {
        status,
        basis: reduce_basis(f, kept),
        nvars,
        pairs_reduced: reduced,
        pairs_skipped_by_cap: skipped,
    })
}

/// Adds `h` and updates the pair list (Gebauer-Möller when `criteria`).
fn insert(polys: &mut Vec<SparsePoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: SparsePoly, criteria: bool) {
    let hi = polys.len();
    let hm = h.leading_monomial().unwrap().clone();
    let candidates: Vec<usize> = (0..polys.len()).filter(|&g| active[g]).collect();
    if !criteria {
        for g in 0..polys.len() {
            let lcm = hm.lcm(polys[g].leading_monomial().unwrap());
            pairs.push(Pair { i: g, j: hi, lcm });
        }
        polys.push(h);
        active.push(true);
        return;
    }

    let lcms: Vec<(usize, Monomial, bool)> = candidates
        .iter()
        .map(|&g| {
            let gm = polys[g].leading_monomial().unwrap();
            (g, hm.lcm(gm), hm.coprime(gm))
        })
        .collect();
    // chain criterion within the new pairs
    let mut kept: Vec<usize> = Vec::new();
    let mut remaining: Vec<usize> = (0..lcms.len()).collect();
    while let Some(c) = remaining.pop() {
        let (_, ref l1, coprime) = lcms[c];
        let dominated = remaining
            .iter()
            .chain(kept.iter())
            .any(|&o| lcms[o].1.divides(l1));
        if coprime || !dominated {
            kept.push(c);
        }
    }
    let new_pairs: Vec<Pair> = kept
        .into_iter()
        .filter(|&c| !lcms[c].2)
        .map(|c| Pair {
            i: lcms[c].0,
            j: hi,
            lcm: lcms[c].1.clone(),
        })
        .collect();
    // old pairs made redundant by h
    pairs.retain(|p| {
        !(hm.divides(&p.lcm)
            && hm.lcm(polys[p.i].leading_monomial().unwrap()) != p.lcm
            && hm.lcm(polys[p.j].leading_monomial().unwrap()) != p.lcm)
    });
    pairs.extend(new_pairs);
    for g in candidates {
        if hm.divides(polys[g].leading_monomial().unwrap()) {
            active[g] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

/// Minimal, fully interreduced, monic; sorted by increasing leading monomial.
fn reduce_basis(f: &PrimeField, basis: Vec<SparsePoly>) -> Vec<SparsePoly> {
    if basis.iter().any(|g| g.is_constant()) {
        let nvars = basis[0].nvars();
        return vec![SparsePoly::constant(nvars, 1)];
    }
    let mut minimal: Vec<SparsePoly> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    for g in sorted {
        let gm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|m| m.leading_monomial().unwrap().divides(gm)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let (lm, lc) = minimal[i].leading().unwrap().clone();
        let tail = minimal[i].tail();
        let others: Vec<SparsePoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let tail = normal_form(f, &tail, &others);
        let full = SparsePoly::from_terms(f, tail.nvars(), std::iter::once((lm, lc)).chain(tail.terms().iter().cloned()).collect());
        out.push(full.monic(f));
    }
    out
}

/// Krull dimension of the ideal, read off the leading monomials: the size of
/// a largest set of variables containing the support of no leading monomial.
/// `Ok(None)` means the unit ideal (empty zero set).
pub fn ideal_dimension(result: &GroebnerResult) -> Result<Option<usize>> {
    if !result.is_complete() {
        return Err(Error::Inconclusive(format!(
            "{} pairs above the degree cap were not processed",
            result.pairs_skipped_by_cap
        )));
    }
    if result.is_unit_ideal() {
        return Ok(None);
    }
    let mut supports: Vec<Vec<usize>> = result
        .basis
        .iter()
        .map(|g| g.leading_monomial().unwrap().support())
        .collect();
    supports.sort_by_key(|s| s.len());
    supports.dedup();
    let hitting = min_hitting_set(&supports, &mut vec![false; result.nvars], usize::MAX);
    Ok(Some(result.nvars - hitting))
}

/// Smallest number of variables meeting every support (branch and bound).
fn min_hitting_set(supports: &[Vec<usize>], chosen: &mut [bool], bound: usize) -> usize {
    let used = chosen.iter().filter(|&&c| c).count();
    if used >= bound {
        return bound;
    }
    let Some(open) = supports.iter().find(|s| !s.iter().any(|&v| chosen[v])) else {
        return used;
    };
    let mut best = bound;
    for &v in open {
        chosen[v] = true;
        best = best.min(min_hitting_set(supports, chosen, best));
        chosen[v] = false;
    }
    best
}
