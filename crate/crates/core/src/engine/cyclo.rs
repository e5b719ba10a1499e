//! Exact arithmetic in `Z[zeta_n]` and recovery of its elements from their
//! `p`-adic conjugates.
//!
//! Elements are coefficient vectors in the power basis `1, zeta, ...,
//! zeta^{phi(n)-1}`. The embedding into `Z_q` sends `zeta` to a fixed
//! primitive `n`-th root of unity `z`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::padic::{PadicContext, PadicElement};
use crate::error::{Error, Result};

pub type Cyc = Vec<BigInt>;

/// `Z[zeta_n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloRing {
    pub n: u64,
    /// `Phi_n`, ascending, monic.
    pub phi: Vec<i64>,
}

/// The `n`-th cyclotomic polynomial, ascending.
pub fn cyclotomic(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Phi_d for the proper divisors d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic(d);
            num = exact_div(&num, &den);
        }
    }
    num
}

fn exact_div(f: &[i64], g: &[i64]) -> Vec<i64> {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    let mut q = vec![0i64; f.len() - dg];
    for k in (dg..f.len()).rev() {
        let c = r[k];
        q[k - dg] = c;
        for i in 0..=dg {
            r[k - dg + i] -= c * g[i];
        }
    }
    q
}

pub fn units(n: u64) -> Vec<u64> {
    (1..=n).filter(|&u| u.gcd(&n) == 1).map(|u| u % n).collect()
}

impl CycloRing {
    pub fn new(n: u64) -> Self {
        CycloRing { n, phi: cyclotomic(n) }
    }

    pub fn rank(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn zero(&self) -> Cyc {
        vec![BigInt::zero(); self.rank()]
    }

    pub fn from_int(&self, c: BigInt) -> Cyc {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    /// Reduces an arbitrary-length vector (coefficient of `zeta^k` at index `k`).
    pub fn reduce(&self, v: &[BigInt]) -> Cyc {
        let d = self.rank();
        let mut r: Vec<BigInt> = v.to_vec();
        if r.len() < d {
            r.resize(d, BigInt::zero());
        }
        for k in (d..r.len()).rev() {
            let c = core::mem::take(&mut r[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                r[k - d + i] -= &c * self.phi[i];
            }
        }
        r.truncate(d);
        r
    }

    /// `sum_k counts[k] zeta^k` with `k` read modulo `n`.
    pub fn from_exponent_counts(&self, counts: &[i64]) -> Cyc {
        let mut v = vec![BigInt::zero(); self.n as usize];
        for (k, &c) in counts.iter().enumerate() {
            v[k % self.n as usize] += c;
        }
        self.reduce(&v)
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale(&self, a: &Cyc, c: &BigInt) -> Cyc {
        a.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        let mut prod = vec![BigInt::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        self.reduce(&prod)
    }

    /// The Galois conjugate `zeta -> zeta^u`.
    pub fn conjugate(&self, a: &Cyc, u: u64) -> Cyc {
        let mut v = vec![BigInt::zero(); self.n as usize];
        for (k, x) in a.iter().enumerate() {
            v[(k as u64 * u % self.n) as usize] += x;
        }
        self.reduce(&v)
    }

    /// The integer value of a rational element.
    pub fn as_integer(&self, a: &Cyc) -> Option<BigInt> {
        a[1..].iter().all(Zero::is_zero).then(|| a[0].clone())
    }

    pub fn embed(&self, ctx: &PadicContext, z: &PadicElement, a: &Cyc) -> PadicElement {
        let m = BigInt::from(ctx.modulus_int());
        let mut acc = ctx.zero();
        let mut zk = ctx.one();
        for c in a {
            let r = c.mod_floor(&m).to_u64().expect("reduced");
            acc = ctx.add(&acc, &ctx.scale(&zk, r));
            zk = ctx.mul(&zk, z);
        }
        acc
    }

    /// Finds the `c` with `embed(conjugate(c, u)) = values[u]` for every unit `u`
    /// (in the order of [`units`]), assuming `|c_k| <= bound`.
    pub fn recover(
        &self,
        ctx: &PadicContext,
        z: &PadicElement,
        values: &[PadicElement],
        bound: &BigInt,
    ) -> Result<Cyc> {
        let us = units(self.n);
        let d = self.rank();
        assert_eq!(values.len(), us.len());
        // rows: u, columns: k, entries z^{uk}; augmented with the values
        let mut rows: Vec<Vec<PadicElement>> = us
            .iter()
            .zip(values)
            .map(|(&u, val)| {
                let zu = ctx.pow(z, u);
                let mut row = Vec::with_capacity(d + 1);
                let mut acc = ctx.one();
                for _ in 0..d {
                    row.push(acc);
                    acc = ctx.mul(&acc, &zu);
                }
                row.push(*val);
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d).find(|&r| ctx.is_unit(&rows[r][col])).ok_or(Error::NotInvertible)?;
            rows.swap(col, piv);
            let inv = ctx.inv(&rows[col][col])?;
            for x in rows[col].iter_mut() {
                *x = ctx.mul(x, &inv);
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = ctx.sub(x, &ctx.mul(&f, y));
                }
            }
        }
        let modulus = ctx.modulus_int() as i128;
        let mut out = Vec::with_capacity(d);
        for row in rows.iter().take(d) {
            let v = ctx
                .to_symmetric_int(&row[d])
                .ok_or_else(|| Error::PrecisionExhausted("conjugates are inconsistent".into()))?;
            let c = BigInt::from(v);
            if c.abs() > *bound || 2 * bound >= BigInt::from(modulus) {
                return Err(Error::PrecisionExhausted("recovered coefficient exceeds its bound".into()));
            }
            out.push(c);
        }
        Ok(out)
    }
}

/// Power sums `p_0, ..., p_count` of the roots of a monic polynomial over
/// `Z[zeta]` (ascending coefficients), by Newton's identities.
pub fn power_sums(ring: &CycloRing, poly: &[Cyc], count: usize) -> Vec<Cyc> {
    let d = poly.len() - 1;
    // e_i with prod (T - a) = sum_i (-1)^i e_i T^{d-i}
    let e: Vec<Cyc> = (0..=d)
        .map(|i| {
            let c = &poly[d - i];
            if i % 2 == 0 {
                c.clone()
            } else {
                ring.neg(c)
            }
        })
        .collect();
    let mut p: Vec<Cyc> = Vec::with_capacity(count + 1);
    p.push(ring.from_int(BigInt::from(d)));
    for k in 1..=count {
        // p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
        let mut acc = ring.zero();
        for i in 1..k.min(d + 1) {
            let term = ring.mul(&e[i], &p[k - i]);
            acc = if i % 2 == 1 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        if k <= d {
            let term = ring.scale(&e[k], &BigInt::from(k));
            acc = if k % 2 == 1 { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
        }
        p.push(acc);
    }
    p
}

/// `prod_u conjugate(f, u)` over all units, as an integer polynomial.
pub fn orbit_norm(ring: &CycloRing, poly: &[Cyc]) -> Option<Vec<BigInt>> {
    let mut acc: Vec<Cyc> = vec![ring.from_int(BigInt::one())];
    for u in units(ring.n) {
        let conj: Vec<Cyc> = poly.iter().map(|c| ring.conjugate(c, u)).collect();
        let mut next = vec![ring.zero(); acc.len() + conj.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in conj.iter().enumerate() {
                next[i + j] = ring.add(&next[i + j], &ring.mul(a, b));
            }
        }
        acc = next;
    }
    acc.iter().map(|c| ring.as_integer(c)).collect()
}
