use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Point of an elliptic curve in affine coordinates, or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurvePoint {
    Infinity,
    Affine { x: u64, y: u64 },
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }
}

/// `y^2 = x^3 + c^2`; the point `(0, c)` has order 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EllipticCurve {
    field: PrimeField,
    c: u64,
    b: u64,
}

impl EllipticCurve {
    pub fn new(field: PrimeField, c: u64) -> Result<Self> {
        let c = field.reduce(c);
        if c == 0 {
            return Err(Error::Degenerate("y^2 = x^3 is singular".into()));
        }
        if field.modulus() <= 3 {
            return Err(Error::Modulus("characteristic 2 and 3 are not supported".into()));
        }
        Ok(EllipticCurve {
            field,
            c,
            b: field.mul(c, c),
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// The 3-torsion point `(0, c)`.
    pub fn torsion_point(&self) -> CurvePoint {
        CurvePoint::Affine { x: 0, y: self.c }
    }

    fn rhs(&self, x: u64) -> u64 {
        let f = &self.field;
        f.add(f.mul(f.mul(x, x), x), self.b)
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match *p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                x < self.field.modulus()
                    && y < self.field.modulus()
                    && self.field.mul(y, y) == self.rhs(x)
            }
        }
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match *p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x, y: self.field.neg(y) },
        }
    }

    /// Chord-tangent addition.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let f = &self.field;
        let (x1, y1, x2, y2) = match (*p, *q) {
            (CurvePoint::Infinity, _) => return *q,
            (_, CurvePoint::Infinity) => return *p,
            (CurvePoint::Affine { x: a, y: b }, CurvePoint::Affine { x: c, y: d }) => (a, b, c, d),
        };
        let slope = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return CurvePoint::Infinity;
            }
            // tangent: 3x^2 / 2y
            f.mul(f.mul(3, f.mul(x1, x1)), f.inv(f.mul(2, y1)))
        } else {
            f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)))
        };
        let x3 = f.sub(f.sub(f.mul(slope, slope), x1), x2);
        let y3 = f.sub(f.mul(slope, f.sub(x1, x3)), y1);
        CurvePoint::Affine { x: x3, y: y3 }
    }

    /// `m · p` by double-and-add.
    pub fn mul(&self, mut m: u64, p: &CurvePoint) -> CurvePoint {
        let mut acc = CurvePoint::Infinity;
        let mut base = *p;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            m >>= 1;
        }
        acc
    }

    /// Uniform-ish random affine point: random `x` with `x^3 + b` a square.
    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> CurvePoint {
        loop {
            let x = self.field.random(rng);
            if let Some(y) = self.field.sqrt(self.rhs(x)) {
                let y = if rng.gen::<bool>() { y } else { self.field.neg(y) };
                return CurvePoint::Affine { x, y };
            }
        }
    }

    /// All points, for small fields.
    pub fn points(&self) -> Vec<CurvePoint> {
        let f = &self.field;
        let mut out = vec![CurvePoint::Infinity];
        for x in 0..f.modulus() {
            for y in 0..f.modulus() {
                let p = CurvePoint::Affine { x, y };
                if self.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// A curve `y^2 = x^3 + c^2` with random `c != 0` and its 3-torsion point.
pub fn curve_with_3torsion<R: Rng + ?Sized>(field: PrimeField, rng: &mut R) -> (EllipticCurve, CurvePoint) {
    let c = field.random_nonzero(rng);
    let curve = EllipticCurve::new(field, c).expect("nonzero c");
    let p = curve.torsion_point();
    (curve, p)
}

/// The functions `1, x, y, x^2, xy, x^3, x^2 y, x^4, x^3 y, x^5` with pole
/// orders `0, 2, 3, ..., 10` at the origin: a basis of `L(10 O)`.
pub fn embed10(curve: &EllipticCurve, q: &CurvePoint) -> Result<[u64; 10]> {
    let CurvePoint::Affine { x, y } = *q else {
        return Err(Error::Degenerate("the origin has no affine image".into()));
    };
    let f = curve.field();
    let x2 = f.mul(x, x);
    let x3 = f.mul(x2, x);
    let x4 = f.mul(x3, x);
    Ok([1, x, y, x2, f.mul(x, y), x3, f.mul(x2, y), x4, f.mul(x3, y), f.mul(x4, x)])
}
