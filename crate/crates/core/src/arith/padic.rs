//! Truncated unramified p-adic integers `Z_q / p^N`.
//!
//! `Z_q` is presented as `Z_p[y]/(M~(y))` where `M~` is the modulus of the
//! residue field with every coefficient replaced by its Teichmuller lift.
//! Elements are digit vectors over `Z/p^N` in the basis `1, y, ..., y^{a-1}`.
//! `p^N` is kept below `2^63` so products fit in `u128`.

use alloc::vec::Vec;

use super::field::{FieldElement, FieldSpec, MAX_FIELD_DEGREE};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PadicElement {
    digits: [u64; MAX_FIELD_DEGREE],
}

impl PadicElement {
    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }
}

#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Inverse of a unit modulo `m` (extended Euclid).
pub fn invmod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m as i128) as u64)
}

/// `p`-adic valuation of a nonzero integer.
pub fn val_int(mut n: i128, p: u64) -> u32 {
    assert!(n != 0);
    let mut v = 0;
    while n % p as i128 == 0 {
        n /= p as i128;
        v += 1;
    }
    v
}

/// Largest `N` with `p^N < 2^63`.
pub fn max_precision(p: u64) -> u32 {
    let mut n = 0;
    let mut acc: u64 = 1;
    while let Some(next) = acc.checked_mul(p) {
        if next >= 1 << 63 {
            break;
        }
        acc = next;
        n += 1;
    }
    n
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicContext {
    field: FieldSpec,
    n: u32,
    p: u64,
    a: usize,
    pn: u64,
    /// Lifted modulus, ascending, without the leading 1.
    modulus: Vec<u64>,
    /// `sigma(y^i)` for `i < a`.
    sigma_basis: Vec<PadicElement>,
}

impl PadicContext {
    pub fn new(field: &FieldSpec, n: u32) -> Result<Self> {
        let p = field.p();
        if n == 0 || n > max_precision(p) {
            return Err(Error::PrecisionExhausted(alloc::format!("precision {n} outside 1..={}", max_precision(p))));
        }
        let pn = p.pow(n);
        let a = field.degree();
        let mut ctx = PadicContext { field: field.clone(), n, p, a, pn, modulus: Vec::new(), sigma_basis: Vec::new() };
        // Teichmuller lifts of elements of F_p are the (p-1)-th roots of unity in Z_p.
        ctx.modulus = field.modulus()[..a].iter().map(|&c| teichmuller_int(c as u64, p, n)).collect();
        if a == 1 {
            ctx.sigma_basis = alloc::vec![ctx.one()];
        } else {
            let y = ctx.naive_lift(&field.generator());
            let mut z = ctx.pow(&y, p);
            // Newton iteration for the root of M~ congruent to y^p.
            for _ in 0..=n.ilog2() + 2 {
                let (fz, dfz) = ctx.eval_modulus(&z);
                let step = ctx.mul(&fz, &ctx.inv(&dfz)?);
                z = ctx.sub(&z, &step);
            }
            let mut acc = ctx.one();
            for _ in 0..a {
                ctx.sigma_basis.push(acc);
                acc = ctx.mul(&acc, &z);
            }
        }
        Ok(ctx)
    }

    fn eval_modulus(&self, z: &PadicElement) -> (PadicElement, PadicElement) {
        let mut f = self.one();
        let mut df = self.from_u64(self.a as u64);
        for i in (0..self.a).rev() {
            f = self.add(&self.mul(&f, z), &self.from_u64(self.modulus[i]));
            if i > 0 {
                let c = self.from_u64(mulmod(self.modulus[i], i as u64, self.pn));
                df = self.add(&self.mul(&df, z), &c);
            }
        }
        (f, df)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.a
    }

    /// `p^N`.
    pub fn modulus_int(&self) -> u64 {
        self.pn
    }

    /// Same field, different precision.
    pub fn with_precision(&self, n: u32) -> Result<Self> {
        PadicContext::new(&self.field, n)
    }

    pub fn digits<'a>(&self, x: &'a PadicElement) -> &'a [u64] {
        &x.digits[..self.a]
    }

    pub fn from_digits(&self, d: &[u64]) -> PadicElement {
        let mut x = PadicElement::default();
        for (i, &c) in d.iter().take(self.a).enumerate() {
            x.digits[i] = c % self.pn;
        }
        x
    }

    pub fn zero(&self) -> PadicElement {
        PadicElement::default()
    }

    pub fn one(&self) -> PadicElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> PadicElement {
        let mut x = PadicElement::default();
        x.digits[0] = c % self.pn;
        x
    }

    pub fn from_i64(&self, c: i64) -> PadicElement {
        self.from_u64((c as i128).rem_euclid(self.pn as i128) as u64)
    }

    /// `num / den` for a `p`-adic unit `den`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<PadicElement> {
        let d = (den as i128).rem_euclid(self.pn as i128) as u64;
        let inv = invmod(d, self.pn).ok_or(Error::NotUnit)?;
        Ok(self.scale(&self.from_i64(num), inv))
    }

    /// Lift with digits in `[0, p)`; not multiplicative.
    pub fn naive_lift(&self, u: &FieldElement) -> PadicElement {
        let mut x = PadicElement::default();
        for (i, &c) in self.field.coeffs(u).iter().enumerate() {
            x.digits[i] = c as u64 % self.pn;
        }
        x
    }

    pub fn reduce(&self, x: &PadicElement) -> FieldElement {
        self.field.from_coeffs(self.digits(x))
    }

    pub fn add(&self, x: &PadicElement, y: &PadicElement) -> PadicElement {
        let mut r = PadicElement::default();
        for i in 0..self.a {
            let s = x.digits[i] + y.digits[i];
            r.digits[i] = if s >= self.pn { s - self.pn } else { s };
        }
        r
    }

    pub fn sub(&self, x: &PadicElement, y: &PadicElement) -> PadicElement {
        let mut r = PadicElement::default();
        for i in 0..self.a {
            r.digits[i] = if x.digits[i] >= y.digits[i] {
                x.digits[i] - y.digits[i]
            } else {
                x.digits[i] + self.pn - y.digits[i]
            };
        }
        r
    }

    pub fn neg(&self, x: &PadicElement) -> PadicElement {
        self.sub(&self.zero(), x)
    }

    /// Multiplication by an element of `Z/p^N`.
    pub fn scale(&self, x: &PadicElement, c: u64) -> PadicElement {
        let mut r = PadicElement::default();
        let c = c % self.pn;
        for i in 0..self.a {
            r.digits[i] = mulmod(x.digits[i], c, self.pn);
        }
        r
    }

    pub fn scale_i64(&self, x: &PadicElement, c: i64) -> PadicElement {
        self.scale(x, (c as i128).rem_euclid(self.pn as i128) as u64)
    }

    pub fn mul(&self, x: &PadicElement, y: &PadicElement) -> PadicElement {
        let a = self.a;
        let m = self.pn;
        if a == 1 {
            let mut r = PadicElement::default();
            r.digits[0] = mulmod(x.digits[0], y.digits[0], m);
            return r;
        }
        let mut prod = [0u128; 2 * MAX_FIELD_DEGREE];
        for i in 0..a {
            if x.digits[i] == 0 {
                continue;
            }
            for j in 0..a {
                let t = x.digits[i] as u128 * y.digits[j] as u128;
                prod[i + j] = (prod[i + j] + t) % m as u128;
            }
        }
        for k in (a..2 * a - 1).rev() {
            let c = (prod[k] % m as u128) as u64;
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            let negc = m - c;
            for i in 0..a {
                let t = mulmod(negc, self.modulus[i], m) as u128;
                prod[k - a + i] = (prod[k - a + i] + t) % m as u128;
            }
        }
        let mut r = PadicElement::default();
        for i in 0..a {
            r.digits[i] = (prod[i] % m as u128) as u64;
        }
        r
    }

    pub fn pow(&self, x: &PadicElement, mut e: u64) -> PadicElement {
        let mut acc = self.one();
        let mut base = *x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_unit(&self, x: &PadicElement) -> bool {
        !self.reduce(x).is_zero()
    }

    /// Inverse of a unit by Newton lifting of the residue-field inverse.
    pub fn inv(&self, x: &PadicElement) -> Result<PadicElement> {
        let u = self.reduce(x);
        let u_inv = self.field.inv(&u)?;
        let mut z = self.naive_lift(&u_inv);
        let two = self.from_u64(2);
        let mut prec = 1;
        while prec < self.n {
            z = self.mul(&z, &self.sub(&two, &self.mul(x, &z)));
            prec *= 2;
        }
        Ok(z)
    }

    /// Valuation, `N` for zero.
    pub fn valuation(&self, x: &PadicElement) -> u32 {
        self.digits(x).iter().filter(|&&d| d != 0).map(|&d| val_int(d as i128, self.p)).min().unwrap_or(self.n)
    }

    /// Exact division by `p^k`; the result is defined modulo `p^{N-k}` and
    /// returned with arbitrary (zero) high digits.
    pub fn div_p_pow(&self, x: &PadicElement, k: u32) -> Result<PadicElement> {
        let pk = self.p.pow(k);
        let mut r = PadicElement::default();
        for i in 0..self.a {
            if !x.digits[i].is_multiple_of(pk) {
                return Err(Error::NotUnit);
            }
            r.digits[i] = x.digits[i] / pk;
        }
        Ok(r)
    }

    pub fn mul_p_pow(&self, x: &PadicElement, k: u32) -> PadicElement {
        if k >= self.n {
            return self.zero();
        }
        self.scale(x, self.p.pow(k))
    }

    /// The Frobenius lift `sigma`.
    pub fn sigma(&self, x: &PadicElement) -> PadicElement {
        if self.a == 1 {
            return *x;
        }
        let mut acc = self.zero();
        for i in 0..self.a {
            if x.digits[i] != 0 {
                acc = self.add(&acc, &self.scale(&self.sigma_basis[i], x.digits[i]));
            }
        }
        acc
    }

    /// `sigma^k`, with `k` taken modulo the field degree.
    pub fn sigma_pow(&self, x: &PadicElement, k: usize) -> PadicElement {
        let mut r = *x;
        for _ in 0..k % self.a {
            r = self.sigma(&r);
        }
        r
    }

    /// Symmetric residue of a `Z_p`-valued element (digits past the first must vanish).
    pub fn to_symmetric_int(&self, x: &PadicElement) -> Option<i128> {
        if self.digits(x)[1..].iter().any(|&d| d != 0) {
            return None;
        }
        let d = x.digits[0] as i128;
        let m = self.pn as i128;
        Some(if d > m / 2 { d - m } else { d })
    }

    pub fn teichmuller(&self, u: &FieldElement) -> PadicElement {
        if self.a == 1 {
            let c = self.field.coeffs(u)[0] as u64;
            return self.from_u64(teichmuller_int(c, self.p, self.n));
        }
        let q = self.field.order();
        let mut x = self.naive_lift(u);
        for _ in 0..self.n {
            x = self.pow(&x, q);
        }
        x
    }

    /// Generalised binomial coefficient `C(num/den, nu)` in `Z_p / p^N`.
    pub fn binom(&self, num: i64, den: i64, nu: u64) -> Result<PadicElement> {
        let p = self.p as i128;
        if (den as i128) % p == 0 {
            return Err(Error::PDividesT { p: self.p, t: den.unsigned_abs() });
        }
        // C(num/den, nu) = prod_{i<nu} (num - i den) / (den^nu nu!)
        let m = self.pn;
        let mut unit: u64 = 1;
        let mut excess: i64 = 0;
        for i in 0..nu as i128 {
            let mut f = num as i128 - i * den as i128;
            if f == 0 {
                return Ok(self.zero());
            }
            while f % p == 0 {
                f /= p;
                excess += 1;
            }
            unit = mulmod(unit, f.rem_euclid(m as i128) as u64, m);
            let mut g = i + 1;
            while g % p == 0 {
                g /= p;
                excess -= 1;
            }
            let g_inv = invmod(g.rem_euclid(m as i128) as u64, m).ok_or(Error::NotUnit)?;
            unit = mulmod(unit, g_inv, m);
        }
        debug_assert!(excess >= 0, "binomial coefficients of p-adic integers are integral");
        let d = (den as i128).rem_euclid(m as i128) as u64;
        let d_inv = invmod(powmod(d, nu, m), m).ok_or(Error::NotUnit)?;
        unit = mulmod(unit, d_inv, m);
        Ok(self.mul_p_pow(&self.from_u64(unit), excess as u32))
    }

    /// `u^{num/den}` for a 1-unit `u` via the binomial series.
    pub fn one_unit_pow(&self, u: &PadicElement, num: i64, den: i64) -> Result<PadicElement> {
        if self.reduce(u) != self.field.one() {
            return Err(Error::NotOneUnit);
        }
        let h = self.sub(u, &self.one());
        let mut acc = self.zero();
        let mut hp = self.one();
        for nu in 0..self.n as u64 {
            acc = self.add(&acc, &self.mul(&self.binom(num, den, nu)?, &hp));
            hp = self.mul(&hp, &h);
        }
        Ok(acc)
    }
}

/// Teichmuller lift of `c in F_p` as an integer mod `p^n`.
pub fn teichmuller_int(c: u64, p: u64, n: u32) -> u64 {
    let m = p.pow(n);
    let mut x = c % p;
    for _ in 0..n {
        x = powmod(x, p, m);
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teichmuller_of_two_mod_49() {
        let k = FieldSpec::new(7, 1).unwrap();
        let ctx = PadicContext::new(&k, 2).unwrap();
        let t = ctx.teichmuller(&k.from_u64(2));
        assert_eq!(ctx.digits(&t), &[30]);
        assert_eq!(ctx.pow(&t, 3), ctx.one());
    }

    #[test]
    fn binomial_examples() {
        let k5 = FieldSpec::new(5, 1).unwrap();
        let c5 = PadicContext::new(&k5, 2).unwrap();
        assert_eq!(c5.digits(&c5.binom(1, 3, 1).unwrap()), &[17]);
        assert_eq!(c5.binom(4, 3, 0).unwrap(), c5.one());
        let k7 = FieldSpec::new(7, 1).unwrap();
        let c7 = PadicContext::new(&k7, 1).unwrap();
        assert_eq!(c7.digits(&c7.binom(1, 2, 2).unwrap()), &[6]);
        assert_eq!(c7.binom(1, 7, 2), Err(Error::PDividesT { p: 7, t: 7 }));
    }

    #[test]
    fn binomial_with_p_in_factorial() {
        // C(1/2, 7) over Z_7: the 7 in 7! is cancelled by num - 4 den = -7.
        let k = FieldSpec::new(7, 1).unwrap();
        let ctx = PadicContext::new(&k, 3).unwrap();
        let c = ctx.binom(1, 2, 7).unwrap();
        let expect = ctx.from_ratio(33, 2048).unwrap();
        assert_eq!(c, expect);
    }

    #[test]
    fn square_root_of_eight() {
        let k = FieldSpec::new(7, 1).unwrap();
        let ctx = PadicContext::new(&k, 2).unwrap();
        let r = ctx.one_unit_pow(&ctx.from_u64(8), 1, 2).unwrap();
        assert_eq!(ctx.digits(&r), &[29]);
        assert_eq!(ctx.one_unit_pow(&ctx.from_u64(2), 1, 2), Err(Error::NotOneUnit));
    }

    #[test]
    fn sigma_has_order_a() {
        let k = FieldSpec::new(3, 3).unwrap();
        let ctx = PadicContext::new(&k, 4).unwrap();
        let y = ctx.naive_lift(&k.generator());
        let x = ctx.add(&ctx.mul(&y, &y), &ctx.from_u64(5));
        assert_eq!(ctx.sigma_pow(&x, 3), x);
        assert_eq!(ctx.reduce(&ctx.sigma(&x)), k.frobenius(&ctx.reduce(&x)));
        let z = ctx.sigma(&ctx.mul(&x, &y));
        assert_eq!(z, ctx.mul(&ctx.sigma(&x), &ctx.sigma(&y)));
    }

    #[test]
    fn inverse_roundtrip() {
        let k = FieldSpec::new(2, 4).unwrap();
        let ctx = PadicContext::new(&k, 20).unwrap();
        let y = ctx.naive_lift(&k.generator());
        let x = ctx.add(&y, &ctx.from_u64(6));
        assert_eq!(ctx.mul(&x, &ctx.inv(&x).unwrap()), ctx.one());
    }
}
