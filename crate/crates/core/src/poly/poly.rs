use std::cmp::Ordering;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Exponent vector with cached total degree, ordered by degrevlex
/// (`x1 > x2 > ... > xV`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Box<[u16]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: vec![0; nvars].into_boxed_slice(),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial {
            deg: 1,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial {
            deg: exps.iter().map(|&e| e as u32).sum(),
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            deg: other.deg - self.deg,
            exps: other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(
            self.exps.iter().zip(other.exps.iter()).map(|(&a, &b)| a.max(b)).collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Variables appearing with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| {
            for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
                if a != b {
                    // the smaller exponent in the last differing variable wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with terms sorted by decreasing monomial and no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: Vec<(Monomial, u64)>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, c: u64) -> Self {
        let mut p = Self::zero(nvars);
        if c != 0 {
            p.terms.push((Monomial::one(nvars), c));
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        SparsePoly {
            nvars,
            terms: vec![(Monomial::var(nvars, i), 1)],
        }
    }

    /// Collects like terms, drops zeros and sorts.
    pub fn from_terms(f: &PrimeField, nvars: usize, mut terms: Vec<(Monomial, u64)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, u64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(*lc, c),
                _ => out.push((m, c % f.modulus())),
            }
        }
        out.retain(|(_, c)| *c != 0);
        SparsePoly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, u64)> {
        self.terms.first()
    }

    /// Everything but the leading term.
    pub fn tail(&self) -> SparsePoly {
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.get(1..).unwrap_or(&[]).to_vec(),
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// `self + s * m * other`
    pub fn add_scaled(&self, f: &PrimeField, s: u64, m: &Monomial, other: &SparsePoly) -> SparsePoly {
        if s == 0 || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(bm, bc)| (bm.mul(m), f.mul(*bc, s))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((am, _)), Some((bm, _))) => match am.cmp(bm) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (am, ac) = a.next().unwrap();
                        let (_, bc) = b.next().unwrap();
                        let c = f.add(*ac, bc);
                        if c != 0 {
                            out.push((am.clone(), c));
                        }
                    }
                },
            }
        }
        SparsePoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn add(&self, f: &PrimeField, other: &SparsePoly) -> SparsePoly {
        self.add_scaled(f, 1, &Monomial::one(self.nvars), other)
    }

    pub fn sub(&self, f: &PrimeField, other: &SparsePoly) -> SparsePoly {
        self.add_scaled(f, f.neg(1), &Monomial::one(self.nvars), other)
    }

    pub fn scale(&self, f: &PrimeField, s: u64) -> SparsePoly {
        if s == 0 {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.mul(*c, s))).collect(),
        }
    }

    pub fn mul(&self, f: &PrimeField, other: &SparsePoly) -> SparsePoly {
        let mut acc = Self::zero(self.nvars);
        for (m, c) in &other.terms {
            acc = acc.add_scaled(f, *c, m, self);
        }
        acc
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self, f: &PrimeField) -> SparsePoly {
        match self.leading() {
            Some((_, c)) if *c != 1 => self.scale(f, f.inv(*c)),
            _ => self.clone(),
        }
    }

    pub fn derivative(&self, f: &PrimeField, var: usize) -> SparsePoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[var] > 0)
            .map(|(m, c)| {
                let e = m.exponents()[var];
                let mut exps = m.exponents().to_vec();
                exps[var] -= 1;
                (Monomial::from_exponents(exps), f.mul(*c, e as u64 % f.modulus()))
            })
            .collect();
        Self::from_terms(f, self.nvars, terms)
    }

    pub fn eval(&self, f: &PrimeField, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.nvars);
        self.terms.iter().fold(0, |acc, (m, c)| {
            let v = m
                .exponents()
                .iter()
                .zip(point)
                .fold(*c, |acc, (&e, &x)| if e == 0 { acc } else { f.mul(acc, f.pow(x, e as u64)) });
            f.add(acc, v)
        })
    }

    /// Substitutes `x_i -> images[i]` (all images share one variable count).
    pub fn compose(&self, f: &PrimeField, images: &[SparsePoly]) -> Result<SparsePoly> {
        if images.len() != self.nvars {
            return Err(Error::Shape(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let target = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<SparsePoly>> =
            images.iter().map(|p| vec![SparsePoly::constant(target, 1), p.clone()]).collect();
        let mut acc = SparsePoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = SparsePoly::constant(target, *c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(f, &images[i]);
                    powers[i].push(next);
                }
                term = term.mul(f, &powers[i][e as usize]);
            }
            acc = acc.add(f, &term);
        }
        Ok(acc)
    }

    /// Text form `c*x1^e1*...*xV^eV`, coefficients as centered integers.
    pub fn to_text(&self, f: &PrimeField) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let v = f.to_signed(*c);
            let (neg, mag) = (v < 0, v.unsigned_abs());
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        format!("x{}", j + 1)
                    } else {
                        format!("x{}^{}", j + 1, e)
                    }
                })
                .collect();
            if factors.is_empty() {
                let _ = write!(s, "{mag}");
            } else {
                if mag != 1 {
                    let _ = write!(s, "{mag}*");
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }

    pub fn parse(f: &PrimeField, nvars: usize, text: &str) -> Result<SparsePoly> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        for piece in pieces {
            let (neg, body) = match piece.as_bytes()[0] {
                b'-' => (true, &piece[1..]),
                b'+' => (false, &piece[1..]),
                _ => (false, piece),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{text}`")));
            }
            let mut coeff = 1u64;
            let mut exps = vec![0u16; nvars];
            for factor in body.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (rest, "1"),
                    };
                    let idx: usize = idx
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
                    let exp: u16 = exp
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    if idx == 0 || idx > nvars {
                        return Err(Error::Parse(format!("variable x{idx} outside x1..x{nvars}")));
                    }
                    exps[idx - 1] += exp;
                } else {
                    let c: i128 = factor
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad factor `{factor}`")))?;
                    let c = c.rem_euclid(f.modulus() as i128) as u64;
                    coeff = f.mul(coeff, c);
                }
            }
            if neg {
                coeff = f.neg(coeff);
            }
            terms.push((Monomial::from_exponents(exps), coeff));
        }
        Ok(Self::from_terms(f, nvars, terms))
    }
}

/// One generator per line; blank lines and `#` comments are skipped. A
/// header line `# nvars=V` fixes the variable count, otherwise the largest
/// variable index seen is used.
pub fn parse_ideal(f: &PrimeField, text: &str) -> Result<Vec<SparsePoly>> {
    let mut nvars = None;
    let mut lines = Vec::new();
    for line in text.lines().map(str::trim) {
        if let Some(rest) = line.strip_prefix('#') {
            if let Some(v) = rest.trim().strip_prefix("nvars=") {
                nvars = Some(
                    v.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad header `{line}`")))?,
                );
            }
        } else if !line.is_empty() {
            lines.push(line);
        }
    }
    let nvars = match nvars {
        Some(v) => v,
        None => lines
            .iter()
            .flat_map(|l| l.split(|c: char| !c.is_ascii_alphanumeric()))
            .filter_map(|tok| tok.strip_prefix('x').and_then(|i| i.parse::<usize>().ok()))
            .max()
            .unwrap_or(0),
    };
    lines.into_iter().map(|l| SparsePoly::parse(f, nvars, l)).collect()
}

pub fn format_ideal(f: &PrimeField, gens: &[SparsePoly]) -> String {
    let nvars = gens.first().map_or(0, |g| g.nvars());
    let mut s = format!("# nvars={nvars}\n");
    for g in gens {
        s.push_str(&g.to_text(f));
        s.push('\n');
    }
    s
}
