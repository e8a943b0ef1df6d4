//! Prime-field arithmetic and seeded sampling.
//!
//! Elements are plain `u64` values in `[0, p)`. Generic complex points are
//! modelled by uniformly random points over a large prime field, so every
//! dimension computed here holds with probability at least `1 - deg/p` per
//! trial.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default modulus, the Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = (1 << 31) - 1;
/// Default sampling seed.
pub const DEFAULT_SEED: u64 = 20_190_117;

const MIN_MODULUS: u64 = 1_000_000;
const MAX_MODULUS_BITS: u32 = 61;

/// Arithmetic modulo a prime `p` with `10^6 < p < 2^61`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    /// floor((2^64 - 1) / p), used for Barrett reduction when p < 2^32.
    barrett: u64,
    small: bool,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= MIN_MODULUS {
            return Err(Error::Modulus(format!("{p} must exceed {MIN_MODULUS}")));
        }
        if p >> MAX_MODULUS_BITS != 0 {
            return Err(Error::Modulus(format!("{p} exceeds {MAX_MODULUS_BITS} bits")));
        }
        if !is_prime(p) {
            return Err(Error::Modulus(format!("{p} is not prime")));
        }
        Ok(Self::new_unchecked(p))
    }

    /// Builds a field without the size and primality checks. Small primes are
    /// useful for brute-force oracles (e.g. curves over F_11).
    pub fn new_unchecked(p: u64) -> Self {
        assert!(p >= 2);
        PrimeField {
            p,
            barrett: u64::MAX / p,
            small: p < (1 << 32),
        }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces any `u64`.
    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        if self.small {
            self.barrett_reduce(x)
        } else {
            x % self.p
        }
    }

    #[inline(always)]
    fn barrett_reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.barrett as u128) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    pub fn from_i64(&self, x: i64) -> u64 {
        let r = (x as i128).rem_euclid(self.p as i128);
        r as u64
    }

    /// Centered lift into `(-p/2, p/2]`.
    pub fn to_signed(&self, x: u64) -> i64 {
        if x > self.p / 2 {
            -((self.p - x) as i64)
        } else {
            x as i64
        }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.small {
            self.barrett_reduce(a * b)
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    /// `acc + a * b`.
    #[inline]
    pub fn mul_add(&self, acc: u64, a: u64, b: u64) -> u64 {
        if self.small {
            self.barrett_reduce(acc + a * b)
        } else {
            ((acc as u128 + a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        let (mut t, mut new_t) = (0i128, 1i128);
        let (mut r, mut new_r) = (self.p as i128, a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        t.rem_euclid(self.p as i128) as u64
    }

    /// `y += a * x` elementwise.
    #[inline]
    pub fn axpy(&self, y: &mut [u64], a: u64, x: &[u64]) {
        debug_assert_eq!(y.len(), x.len());
        if a == 0 {
            return;
        }
        if self.small {
            for (yi, &xi) in y.iter_mut().zip(x) {
                *yi = self.barrett_reduce(*yi + a * xi);
            }
        } else {
            for (yi, &xi) in y.iter_mut().zip(x) {
                *yi = self.mul_add(*yi, a, xi);
            }
        }
    }

    pub fn scale(&self, y: &mut [u64], a: u64) {
        for yi in y.iter_mut() {
            *yi = self.mul(*yi, a);
        }
    }

    pub fn dot(&self, x: &[u64], y: &[u64]) -> u64 {
        x.iter().zip(y).fold(0, |acc, (&a, &b)| self.mul_add(acc, a, b))
    }

    /// Square root when `a` is a quadratic residue (Tonelli-Shanks).
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if p == 2 {
            return Some(a);
        }
        if self.pow(a, (p - 1) / 2) != 1 {
            return None;
        }
        if p % 4 == 3 {
            return Some(self.pow(a, (p + 1) / 4));
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.pow(z, (p - 1) / 2) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(1..self.p)
    }
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Field plus seed: everything a randomized computation needs to be
/// reproducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldContext {
    pub field: PrimeField,
    pub seed: u64,
}

impl FieldContext {
    pub fn new(modulus: u64, seed: u64) -> Result<Self> {
        Ok(FieldContext {
            field: PrimeField::new(modulus)?,
            seed,
        })
    }

    /// Reads `SKEWRANK_PRIME` / `SKEWRANK_SEED`, falling back to the defaults.
    pub fn from_env() -> Result<Self> {
        let read = |name: &str, default: u64| -> Result<u64> {
            match std::env::var(name) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{name}={v} is not an integer"))),
                Err(_) => Ok(default),
            }
        };
        Self::new(read("SKEWRANK_PRIME", DEFAULT_PRIME)?, read("SKEWRANK_SEED", DEFAULT_SEED)?)
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        FieldContext { seed, ..*self }
    }

    /// Independent generator for the sampling stream named by `tags`.
    pub fn rng(&self, tags: &[u64]) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(derive_seed(self.seed, tags))
    }
}

impl Default for FieldContext {
    fn default() -> Self {
        FieldContext {
            field: PrimeField::new_unchecked(DEFAULT_PRIME),
            seed: DEFAULT_SEED,
        }
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(seed: u64, tags: &[u64]) -> u64 {
    tags.iter().fold(splitmix(seed), |h, &t| splitmix(h ^ splitmix(t)))
}

/// Serializable description of the field used by a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub modulus: u64,
    pub seed: u64,
}

impl From<&FieldContext> for FieldInfo {
    fn from(ctx: &FieldContext) -> Self {
        FieldInfo {
            modulus: ctx.field.modulus(),
            seed: ctx.seed,
        }
    }
}
