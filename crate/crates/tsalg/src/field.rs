//! Exact arithmetic over the prime field `F_p` and its extensions `F_{p^k}`.

use crate::error::Error;

/// The prime field `F_p`. Elements are canonical representatives in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Primality is checked by trial division; `p` must fit in 64 bits.
    pub fn new(p: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: u64) -> u64 {
        n % self.p
    }

    /// Reduce a signed integer, mapping negatives into `[0, p)`.
    pub fn reduce_signed(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        // widen to 128 bits so any p < 2^64 is safe
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
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

    pub fn inv(&self, a: u64) -> Result<u64, Error> {
        if a % self.p == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p - 2))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// --- dense univariate polynomials over F_p, used only for extension fields ---

fn upoly_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn upoly_mul(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    upoly_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn upoly_rem(f: &PrimeField, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    upoly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(lead, c));
            }
        }
        r.pop();
        upoly_trim(&mut r);
        if r.len() <= dm {
            break;
        }
    }
    r
}

fn upoly_gcd(f: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    upoly_trim(&mut a);
    upoly_trim(&mut b);
    while !b.is_empty() {
        // make b monic before reducing
        let lead = *b.last().unwrap();
        if lead != 1 {
            let li = f.inv(lead).unwrap();
            for c in b.iter_mut() {
                *c = f.mul(*c, li);
            }
        }
        let r = upoly_rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^i) mod m`, by repeated Frobenius.
fn upoly_frobenius_power(f: &PrimeField, m: &[u64], i: u32) -> Vec<u64> {
    let mut x = vec![0, 1]; // the polynomial x
    x = upoly_rem(f, &x, m);
    for _ in 0..i {
        x = upoly_powmod(f, &x, f.p(), m);
    }
    x
}

fn upoly_powmod(f: &PrimeField, base: &[u64], mut exp: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = upoly_rem(f, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = upoly_rem(f, &upoly_mul(f, &acc, &base), m);
        }
        base = upoly_rem(f, &upoly_mul(f, &base, &base), m);
        exp >>= 1;
    }
    acc
}

/// A degree-`k` monic polynomial of F_p is irreducible iff it shares no factor
/// with `x^(p^i) - x` for any `i <= k/2`.
fn is_irreducible(f: &PrimeField, m: &[u64]) -> bool {
    let k = (m.len() - 1) as u32;
    if k == 1 {
        return true;
    }
    // constant term zero means x divides m
    if m[0] == 0 {
        return false;
    }
    for i in 1..=(k / 2) {
        let xp = upoly_frobenius_power(f, m, i);
        // xp - x
        let mut diff = xp;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = f.sub(diff[1], 1);
        upoly_trim(&mut diff);
        let g = upoly_gcd(f, m, &diff);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// An element of `F_{p^k}`, as a coefficient vector of length `k` (low degree first).
pub type ExtElem = Vec<u64>;

/// The extension field `F_{p^k}` as `F_p[t]` modulo a fixed monic irreducible.
///
/// The modulus is the lexicographically smallest monic irreducible of degree
/// `k`, scanning the low coefficients as a base-`p` integer, so the field is
/// identical across runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    k: u32,
    modulus: Vec<u64>, // length k + 1, monic
}

impl ExtField {
    pub fn new(p: u64, k: u32) -> Result<Self, Error> {
        let base = PrimeField::new(p)?;
        if k == 0 {
            return Err(Error::BadExtensionDegree(k));
        }
        let modulus = smallest_irreducible(&base, k)?;
        Ok(ExtField { base, k, modulus })
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn base_field(&self) -> PrimeField {
        self.base
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> ExtElem {
        vec![0; self.k as usize]
    }

    pub fn one(&self) -> ExtElem {
        self.from_base(1)
    }

    pub fn from_base(&self, c: u64) -> ExtElem {
        let mut v = vec![0; self.k as usize];
        v[0] = self.base.reduce(c);
        v
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter()
            .zip(b.iter())
            .map(|(&x, &y)| self.base.add(x, y))
            .collect()
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let prod = upoly_mul(&self.base, a, b);
        let mut r = upoly_rem(&self.base, &prod, &self.modulus);
        r.resize(self.k as usize, 0);
        r
    }

    pub fn scalar_mul(&self, c: u64, a: &ExtElem) -> ExtElem {
        a.iter().map(|&x| self.base.mul(c, x)).collect()
    }

    pub fn pow(&self, a: &ExtElem, mut exp: u64) -> ExtElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// All `p^k` elements, in base-`p` counter order: deterministic.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        let total = self.p().pow(self.k);
        (0..total).map(move |mut n| {
            let mut v = vec![0u64; self.k as usize];
            for c in v.iter_mut() {
                *c = n % self.p();
                n /= self.p();
            }
            v
        })
    }
}

fn smallest_irreducible(f: &PrimeField, k: u32) -> Result<Vec<u64>, Error> {
    let p = f.p();
    let total = p
        .checked_pow(k)
        .ok_or(Error::BadExtensionDegree(k))?;
    for n in 0..total {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut m = n;
        for _ in 0..k {
            coeffs.push(m % p);
            m /= p;
        }
        coeffs.push(1); // monic
        if is_irreducible(f, &coeffs) {
            return Ok(coeffs);
        }
    }
    Err(Error::BadExtensionDegree(k))
}
