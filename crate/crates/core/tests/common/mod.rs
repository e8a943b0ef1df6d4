//! Independent reference computations shared by the acceptance run and the
//! property suites.
#![allow(dead_code)]

use rand::Rng;
use skewrank::exterior::{binomial, gl_action, subsets, AlternatingTensor, ChartPoint, Grassmannian, MultiIndex};
use skewrank::linalg::{Matrix, Subspace};
use skewrank::scroll::{CurvePoint, EllipticCurve};
use skewrank::secant::symbolic_plucker;
use skewrank::PrimeField;

/// Coefficient of `e_{idx[0]} ∧ ... ∧ e_{idx[m-1]}` in written order.
fn coeff(f: &PrimeField, t: &AlternatingTensor, idx: Vec<usize>) -> u64 {
    match MultiIndex::sorted_with_sign(idx) {
        None => 0,
        Some((mi, negative)) => {
            let c = t.get(&mi);
            if negative {
                f.neg(c)
            } else {
                c
            }
        }
    }
}

/// Quadratic Plücker relations: for `|I| = m-1`, `|J| = m+1`,
/// `Σ_l (-1)^l p(I, j_l) p(J \ j_l) = 0`.
pub fn plucker_relations_hold(f: &PrimeField, t: &AlternatingTensor) -> bool {
    let (m, n) = (t.degree(), t.ambient());
    for i in subsets(n, m - 1) {
        for j in subsets(n, m + 1) {
            let mut acc = 0;
            for l in 0..=m {
                let mut left = i.clone();
                left.push(j[l]);
                let right: Vec<usize> = j.iter().enumerate().filter(|&(x, _)| x != l).map(|(_, &v)| v).collect();
                let term = f.mul(coeff(f, t, left), coeff(f, t, right));
                acc = if l % 2 == 0 { f.add(acc, term) } else { f.sub(acc, term) };
            }
            if acc != 0 {
                return false;
            }
        }
    }
    true
}

/// Jet of the Plücker map against derivatives of the symbolic minors.
pub fn jet_matches_symbolic<R: Rng>(f: &PrimeField, k: usize, n: usize, rng: &mut R) -> bool {
    let grass = Grassmannian::new(k, n);
    let point = ChartPoint::random(f, k, n, ChartPoint::default_pivots(k), rng).unwrap();
    let at = point.flat_params();
    let jet = grass.jet(f, &point);
    let polys = symbolic_plucker(f, k, n, point.pivots()).unwrap();
    let nv = point.num_vars();
    for (c, p) in polys.iter().enumerate() {
        if p.eval(f, &at) != jet.value()[c] {
            return false;
        }
        for a in 0..nv {
            let da = p.derivative(f, a);
            if da.eval(f, &at) != jet.gradient(c, a) {
                return false;
            }
            for b in 0..nv {
                if da.derivative(f, b).eval(f, &at) != jet.hessian(c, a, b) {
                    return false;
                }
            }
        }
    }
    true
}

fn commutator(f: &PrimeField, a: &Matrix, b: &Matrix) -> Matrix {
    let ab = a.mul(f, b).unwrap();
    let ba = b.mul(f, a).unwrap();
    let mut out = Matrix::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out[(i, j)] = f.sub(ab[(i, j)], ba[(i, j)]);
        }
    }
    out
}

/// `[A, B] · t = A · (B · t) - B · (A · t)`.
pub fn lie_bracket_holds(f: &PrimeField, t: &AlternatingTensor, a: &Matrix, b: &Matrix) -> bool {
    let lhs = gl_action(f, &commutator(f, a, b), t).unwrap();
    let ab = gl_action(f, a, &gl_action(f, b, t).unwrap()).unwrap();
    let ba = gl_action(f, b, &gl_action(f, a, t).unwrap()).unwrap();
    let rhs = ab.add(f, &ba.scaled(f, f.neg(1))).unwrap();
    lhs == rhs
}

pub fn random_tensor<R: Rng>(f: &PrimeField, degree: usize, ambient: usize, rng: &mut R) -> AlternatingTensor {
    let coeffs = (0..binomial(ambient, degree)).map(|_| f.random(rng)).collect();
    AlternatingTensor::from_coeffs(degree, ambient, coeffs).unwrap()
}

/// `rank U + dim U^⊥ = ambient` and `dim(U+V) + dim(U∩V) = dim U + dim V`.
pub fn subspace_formulas_hold(f: &PrimeField, u: &Matrix, v: &Matrix) -> bool {
    let su = Subspace::span(f, u);
    let sv = Subspace::span(f, v);
    let ambient = u.cols();
    let sum = su.span_union(f, &sv).unwrap();
    let cap = su.intersect(f, &sv).unwrap();
    su.rank() + su.annihilator(f).rank() == ambient
        && sum.rank() + cap.rank() == su.rank() + sv.rank()
        && cap.is_subspace_of(f, &su)
        && cap.is_subspace_of(f, &sv)
}

/// Exhaustive checks of the group law on `y^2 = x^3 + 1` over `F_11`.
pub fn f11_group_law() -> Result<(), String> {
    let f = PrimeField::new_unchecked(11);
    let e = EllipticCurve::new(f, 1).unwrap();
    // brute-force point enumeration
    let mut pts = vec![CurvePoint::Infinity];
    for x in 0..11u64 {
        for y in 0..11u64 {
            if (y * y) % 11 == (x * x * x + 1) % 11 {
                pts.push(CurvePoint::Affine { x, y });
            }
        }
    }
    // p = 2 mod 3: the curve is supersingular with p + 1 points
    if pts.len() != 12 || e.points() != pts {
        return Err(format!("{} points enumerated", pts.len()));
    }
    let p = CurvePoint::Affine { x: 0, y: 1 };
    if e.mul(2, &p) != (CurvePoint::Affine { x: 0, y: 10 }) || !e.mul(3, &p).is_infinity() {
        return Err("(0,1) does not have order 3".into());
    }
    let affine = |q: &CurvePoint| match *q {
        CurvePoint::Affine { x, y } => Some((x as i64, y as i64)),
        CurvePoint::Infinity => None,
    };
    for a in &pts {
        if e.add(a, &CurvePoint::Infinity) != *a || !e.add(a, &e.neg(a)).is_infinity() {
            return Err(format!("identity or inverse fails at {a:?}"));
        }
        for b in &pts {
            let s = e.add(a, b);
            if s != e.add(b, a) || !e.contains(&s) {
                return Err(format!("{a:?} + {b:?}"));
            }
            // a, b and -(a+b) lie on a line, tangent at a when a = b
            let (Some((x1, y1)), Some((x2, y2)), Some((x3, y3))) = (affine(a), affine(b), affine(&e.neg(&s))) else {
                continue;
            };
            let ok = if a != b {
                (x1 == x2 && y1 != y2)
                    || ((x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1)).rem_euclid(11) == 0
            } else if (x3, y3) == (x1, y1) {
                true
            } else {
                ((y3 - y1) * 2 * y1 - 3 * x1 * x1 * (x3 - x1)).rem_euclid(11) == 0
            };
            if !ok {
                return Err(format!("{a:?}, {b:?}, -({a:?} + {b:?}) are not collinear"));
            }
            for c in &pts {
                if e.add(&s, c) != e.add(a, &e.add(b, c)) {
                    return Err(format!("associativity fails at {a:?}, {b:?}, {c:?}"));
                }
            }
        }
    }
    Ok(())
}

/// Affine dimension of `σ_r(Gr(P^1, P^n))`: skew matrices of size `n+1`
/// and rank at most `2r`.
pub fn gr1_secant_dim(n: usize, r: usize) -> usize {
    let c2 = |m: usize| if m >= 2 { m * (m - 1) / 2 } else { 0 };
    let size = n + 1;
    c2(size) - c2(size.saturating_sub(2 * r))
}

/// Expected affine dimension `min(r (dim + 1), ambient)`.
pub fn expected_dim(k: usize, n: usize, r: usize) -> usize {
    let cone = (k + 1) * (n - k) + 1;
    (r * cone).min(binomial(n + 1, k + 1))
}

/// Fixed-seed proptest configuration, so every run draws the same cases.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed_2019),
        failure_persistence: None,
        ..Default::default()
    }
}
