//! Finite fields `F_{p^a}` presented as `F_p[y]/(M(y))`.
//!
//! The modulus `M` is the lexicographically smallest monic irreducible
//! polynomial of degree `a`, comparing coefficients from the constant term
//! upwards. Elements are plain coefficient arrays; all arithmetic goes
//! through the owning [`FieldSpec`].

use alloc::vec;
use alloc::vec::Vec;

use super::fpoly::{self, FqPoly};
use crate::error::{Error, Result};

/// Largest supported extension degree over the prime field.
pub const MAX_FIELD_DEGREE: usize = 16;

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 40;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    coeffs: [u32; MAX_FIELD_DEGREE],
}

impl FieldElement {
    /// Coefficients in the power basis `1, y, y^2, ...` (length `MAX_FIELD_DEGREE`,
    /// entries past the field degree are zero).
    pub fn raw(&self) -> &[u32; MAX_FIELD_DEGREE] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    a: usize,
    q: u64,
    /// Monic modulus, ascending, length `a + 1`.
    modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// The prime field `F_p`, presented with modulus `x`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > u32::MAX as u64 / 2 {
            return Err(Error::FieldTooLarge { p, a: 1 });
        }
        Ok(FieldSpec { p: p as u32, a: 1, q: p, modulus: vec![0, 1] })
    }

    /// Builds `F_{p^a}` with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u64, a: usize) -> Result<Self> {
        let base = Self::prime(p)?;
        if a == 0 || a > MAX_FIELD_DEGREE {
            return Err(Error::FieldTooLarge { p, a });
        }
        let q = checked_pow(p, a as u32).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = q.ok_or(Error::FieldTooLarge { p, a })?;
        if a == 1 {
            return Ok(base);
        }
        // Enumerate the non-leading coefficients in lexicographic order,
        // constant term most significant.
        let total = checked_pow(p, a as u32).ok_or(Error::FieldTooLarge { p, a })?;
        for code in 0..total {
            let mut digits = vec![0u32; a + 1];
            let mut rest = code;
            for i in (0..a).rev() {
                digits[i] = (rest % p) as u32;
                rest /= p;
            }
            digits[a] = 1;
            if digits[0] == 0 {
                continue;
            }
            let poly: FqPoly = digits.iter().map(|&c| base.from_u64(c as u64)).collect();
            if fpoly::is_irreducible(&base, &poly) {
                return Ok(FieldSpec { p: p as u32, a, q, modulus: digits });
            }
        }
        Err(Error::ReducibleModulus)
    }

    /// Builds `F_{p^a}` from an explicit monic modulus (ascending coefficients).
    pub fn with_modulus(p: u64, modulus: &[u32]) -> Result<Self> {
        let base = Self::prime(p)?;
        let a = modulus.len().saturating_sub(1);
        if a == 0 || a > MAX_FIELD_DEGREE || modulus[a] != 1 {
            return Err(Error::ReducibleModulus);
        }
        let q = checked_pow(p, a as u32).filter(|&q| q <= MAX_FIELD_ORDER).ok_or(Error::FieldTooLarge { p, a })?;
        let poly: FqPoly = modulus.iter().map(|&c| base.from_u64(c as u64)).collect();
        if !fpoly::is_irreducible(&base, &poly) {
            return Err(Error::ReducibleModulus);
        }
        let modulus = modulus.iter().map(|&c| c % p as u32).collect();
        Ok(FieldSpec { p: p as u32, a, q, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> usize {
        self.a
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::default()
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    /// The class of `y`, i.e. the chosen root of the modulus.
    pub fn generator(&self) -> FieldElement {
        if self.a == 1 {
            // y = -M(0) in F_p[y]/(y + c)
            return self.neg(&self.from_u64(self.modulus[0] as u64));
        }
        let mut e = FieldElement::default();
        e.coeffs[1] = 1;
        e
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        let mut e = FieldElement::default();
        e.coeffs[0] = (n % self.p as u64) as u32;
        e
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_u64(n.rem_euclid(self.p as i64) as u64)
    }

    /// Element from ascending coefficients in `y`; reduced mod `p` and mod the modulus.
    pub fn element(&self, coeffs: &[i64]) -> FieldElement {
        let y = self.generator();
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, &y), &self.from_i64(c));
        }
        acc
    }

    /// Element with the given power-basis coefficients (reduced mod `p`).
    pub fn from_coeffs(&self, c: &[u64]) -> FieldElement {
        let mut e = FieldElement::default();
        for (i, &v) in c.iter().take(self.a).enumerate() {
            e.coeffs[i] = (v % self.p as u64) as u32;
        }
        e
    }

    pub fn coeffs<'a>(&self, e: &'a FieldElement) -> &'a [u32] {
        &e.coeffs[..self.a]
    }

    /// Bijection `F_q -> [0, q)`, `sum c_i p^i`.
    pub fn index(&self, e: &FieldElement) -> u64 {
        let mut idx = 0u64;
        for i in (0..self.a).rev() {
            idx = idx * self.p as u64 + e.coeffs[i] as u64;
        }
        idx
    }

    pub fn from_index(&self, mut idx: u64) -> FieldElement {
        let mut e = FieldElement::default();
        for i in 0..self.a {
            e.coeffs[i] = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        e
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.from_index(i))
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut r = FieldElement::default();
        for i in 0..self.a {
            let s = x.coeffs[i] + y.coeffs[i];
            r.coeffs[i] = if s >= self.p { s - self.p } else { s };
        }
        r
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut r = FieldElement::default();
        for i in 0..self.a {
            r.coeffs[i] =
                if x.coeffs[i] >= y.coeffs[i] { x.coeffs[i] - y.coeffs[i] } else { x.coeffs[i] + self.p - y.coeffs[i] };
        }
        r
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), x)
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let a = self.a;
        let p = self.p as u64;
        if a == 1 {
            let mut r = FieldElement::default();
            r.coeffs[0] = ((x.coeffs[0] as u64 * y.coeffs[0] as u64) % p) as u32;
            return r;
        }
        let mut prod = [0u64; 2 * MAX_FIELD_DEGREE];
        for i in 0..a {
            if x.coeffs[i] == 0 {
                continue;
            }
            for j in 0..a {
                prod[i + j] += x.coeffs[i] as u64 * y.coeffs[j] as u64;
            }
            if i % 8 == 7 {
                for c in prod.iter_mut() {
                    *c %= p;
                }
            }
        }
        for c in prod.iter_mut() {
            *c %= p;
        }
        for k in (a..2 * a - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..a {
                let m = self.modulus[i] as u64;
                prod[k - a + i] = (prod[k - a + i] + (p - c) * m) % p;
            }
        }
        let mut r = FieldElement::default();
        for i in 0..a {
            r.coeffs[i] = prod[i] as u32;
        }
        r
    }

    pub fn scale(&self, x: &FieldElement, c: u64) -> FieldElement {
        self.mul(x, &self.from_u64(c))
    }

    pub fn pow(&self, x: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = *x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Absolute Frobenius `x -> x^p`.
    pub fn frobenius(&self, x: &FieldElement) -> FieldElement {
        self.pow(x, self.p as u64)
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::NotUnit);
        }
        Ok(self.pow(x, self.q - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: &FieldElement) -> u64 {
        let n = self.q - 1;
        let mut order = n;
        for (f, _) in factor_u64(n) {
            while order.is_multiple_of(f) && self.pow(x, order / f) == self.one() {
                order /= f;
            }
        }
        order
    }

    /// Smallest-index generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        let n = self.q - 1;
        let factors = factor_u64(n);
        for idx in 1..self.q {
            let g = self.from_index(idx);
            if factors.iter().all(|&(f, _)| self.pow(&g, n / f) != self.one()) {
                return g;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    /// The extension `F_{q^n}` together with the embedding of `self` into it.
    pub fn extension(&self, n: usize) -> Result<(FieldSpec, Embedding)> {
        let big = FieldSpec::new(self.p as u64, self.a * n)?;
        let emb = Embedding::new(self, &big)?;
        Ok((big, emb))
    }
}

/// A field embedding `F_q -> F_{q^n}`, fixed by the image of the generator `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    /// Images of `1, y, ..., y^{a-1}`.
    basis_images: Vec<FieldElement>,
}

impl Embedding {
    /// Chooses the smallest-index root of the small modulus inside `big`.
    pub fn new(small: &FieldSpec, big: &FieldSpec) -> Result<Self> {
        if small.p != big.p || !big.a.is_multiple_of(small.a) {
            return Err(Error::Invalid("field is not a subfield".into()));
        }
        let modulus: FqPoly = small.modulus.iter().map(|&c| big.from_u64(c as u64)).collect();
        let root = if small.a == 1 {
            big.from_u64(small.generator().coeffs[0] as u64)
        } else {
            let mut found = None;
            for idx in 0..big.q {
                let z = big.from_index(idx);
                if fpoly::eval(big, &modulus, &z).is_zero() {
                    found = Some(z);
                    break;
                }
            }
            found.ok_or(Error::ReducibleModulus)?
        };
        let mut basis_images = Vec::with_capacity(small.a);
        let mut acc = big.one();
        for _ in 0..small.a {
            basis_images.push(acc);
            acc = big.mul(&acc, &root);
        }
        Ok(Embedding { basis_images })
    }

    pub fn apply(&self, small: &FieldSpec, big: &FieldSpec, x: &FieldElement) -> FieldElement {
        let mut acc = big.zero();
        for (i, img) in self.basis_images.iter().enumerate() {
            let c = small.coeffs(x)[i];
            if c != 0 {
                acc = big.add(&acc, &big.scale(img, c as u64));
            }
        }
        acc
    }

    pub fn apply_poly(&self, small: &FieldSpec, big: &FieldSpec, f: &FqPoly) -> FqPoly {
        f.iter().map(|c| self.apply(small, big, c)).collect()
    }
}

pub(crate) fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Trial-division factorisation, ascending primes.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
