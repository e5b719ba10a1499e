//! Dense univariate polynomials over a finite field, ascending coefficients.
//!
//! A polynomial is a plain `Vec<FieldElement>` kept trimmed (no trailing
//! zeros); the zero polynomial is the empty vector.

use alloc::vec;
use alloc::vec::Vec;

use super::field::{FieldElement, FieldSpec};

pub type FqPoly = Vec<FieldElement>;

pub fn trim(f: &mut FqPoly) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

pub fn trimmed(mut f: FqPoly) -> FqPoly {
    trim(&mut f);
    f
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(f: &FqPoly) -> Option<usize> {
    let mut n = f.len();
    while n > 0 && f[n - 1].is_zero() {
        n -= 1;
    }
    n.checked_sub(1)
}

pub fn constant(k: &FieldSpec, c: FieldElement) -> FqPoly {
    let _ = k;
    trimmed(vec![c])
}

pub fn x(k: &FieldSpec) -> FqPoly {
    vec![k.zero(), k.one()]
}

pub fn monomial(k: &FieldSpec, c: FieldElement, n: usize) -> FqPoly {
    let mut f = vec![k.zero(); n + 1];
    f[n] = c;
    trimmed(f)
}

pub fn add(k: &FieldSpec, f: &FqPoly, g: &FqPoly) -> FqPoly {
    let n = f.len().max(g.len());
    let zero = k.zero();
    let out = (0..n).map(|i| k.add(f.get(i).unwrap_or(&zero), g.get(i).unwrap_or(&zero))).collect();
    trimmed(out)
}

pub fn sub(k: &FieldSpec, f: &FqPoly, g: &FqPoly) -> FqPoly {
    let n = f.len().max(g.len());
    let zero = k.zero();
    let out = (0..n).map(|i| k.sub(f.get(i).unwrap_or(&zero), g.get(i).unwrap_or(&zero))).collect();
    trimmed(out)
}

pub fn scale(k: &FieldSpec, f: &FqPoly, c: &FieldElement) -> FqPoly {
    trimmed(f.iter().map(|a| k.mul(a, c)).collect())
}

pub fn mul(k: &FieldSpec, f: &FqPoly, g: &FqPoly) -> FqPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(a, b));
        }
    }
    trimmed(out)
}

pub fn pow(k: &FieldSpec, f: &FqPoly, mut e: u64) -> FqPoly {
    let mut acc = vec![k.one()];
    let mut base = f.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(k, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(k, &base, &base);
        }
    }
    acc
}

/// Euclidean division; panics on division by zero.
pub fn divrem(k: &FieldSpec, f: &FqPoly, g: &FqPoly) -> (FqPoly, FqPoly) {
    let dg = degree(g).expect("division by the zero polynomial");
    let inv_lead = k.inv(&g[dg]).expect("nonzero leading coefficient");
    let mut r = trimmed(f.clone());
    if r.len() <= dg {
        return (Vec::new(), r);
    }
    let mut quo = vec![k.zero(); r.len() - dg];
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = k.mul(&r[dr], &inv_lead);
        let shift = dr - dg;
        quo[shift] = c;
        for (i, b) in g.iter().enumerate().take(dg + 1) {
            r[shift + i] = k.sub(&r[shift + i], &k.mul(&c, b));
        }
        trim(&mut r);
    }
    (trimmed(quo), r)
}

pub fn rem(k: &FieldSpec, f: &FqPoly, g: &FqPoly) -> FqPoly {
    divrem(k, f, g).1
}

pub fn mulmod(k: &FieldSpec, f: &FqPoly, g: &FqPoly, m: &FqPoly) -> FqPoly {
    rem(k, &mul(k, f, g), m)
}

pub fn powmod(k: &FieldSpec, f: &FqPoly, mut e: u64, m: &FqPoly) -> FqPoly {
    let mut acc = rem(k, &vec![k.one()], m);
    let mut base = rem(k, f, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(k, &acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(k, &base, &base, m);
        }
    }
    acc
}

pub fn make_monic(k: &FieldSpec, f: &FqPoly) -> FqPoly {
    match degree(f) {
        None => Vec::new(),
        Some(d) => {
            let inv = k.inv(&f[d]).expect("nonzero leading coefficient");
            scale(k, f, &inv)
        }
    }
}

/// Monic gcd (zero if both inputs vanish).
pub fn gcd(k: &FieldSpec, f: &FqPoly, g: &FqPoly) -> FqPoly {
    let mut a = trimmed(f.clone());
    let mut b = trimmed(g.clone());
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    make_monic(k, &a)
}

/// Extended gcd: returns `(g, u, v)` with `u f + v h = g`, `g` monic.
pub fn xgcd(k: &FieldSpec, f: &FqPoly, h: &FqPoly) -> (FqPoly, FqPoly, FqPoly) {
    let (mut r0, mut r1) = (trimmed(f.clone()), trimmed(h.clone()));
    let (mut s0, mut s1) = (vec![k.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![k.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1);
        let s = sub(k, &s0, &mul(k, &q, &s1));
        let t = sub(k, &t0, &mul(k, &q, &t1));
        r0 = core::mem::replace(&mut r1, r);
        s0 = core::mem::replace(&mut s1, s);
        t0 = core::mem::replace(&mut t1, t);
    }
    match degree(&r0) {
        None => (r0, s0, t0),
        Some(d) => {
            let inv = k.inv(&r0[d]).expect("nonzero leading coefficient");
            (scale(k, &r0, &inv), scale(k, &s0, &inv), scale(k, &t0, &inv))
        }
    }
}

pub fn derivative(k: &FieldSpec, f: &FqPoly) -> FqPoly {
    trimmed(f.iter().enumerate().skip(1).map(|(i, c)| k.scale(c, i as u64)).collect())
}

pub fn eval(k: &FieldSpec, f: &FqPoly, z: &FieldElement) -> FieldElement {
    f.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, z), c))
}

/// `x^{q^i} mod f` for `i = 0..=n`.
fn frobenius_powers(k: &FieldSpec, f: &FqPoly, n: usize) -> Vec<FqPoly> {
    let mut out = Vec::with_capacity(n + 1);
    let mut h = rem(k, &x(k), f);
    out.push(h.clone());
    for _ in 0..n {
        h = powmod(k, &h, k.order(), f);
        out.push(h.clone());
    }
    out
}

/// Rabin-style test: `f` has no factor of degree `<= deg f / 2`.
pub fn is_irreducible(k: &FieldSpec, f: &FqPoly) -> bool {
    let Some(n) = degree(f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let xs = frobenius_powers(k, f, n / 2);
    let xx = x(k);
    for h in xs.iter().skip(1) {
        let g = gcd(k, &sub(k, h, &xx), f);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// `p`-th root of a polynomial whose exponents are all divisible by `p`.
fn pth_root(k: &FieldSpec, f: &FqPoly) -> FqPoly {
    let p = k.p() as usize;
    let root_exp = k.order() / k.p();
    trimmed(f.iter().step_by(p).map(|c| k.pow(c, root_exp)).collect())
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with `f = prod g_i^i`.
pub fn squarefree(k: &FieldSpec, f: &FqPoly) -> Vec<(FqPoly, u32)> {
    let mut out = Vec::new();
    squarefree_into(k, &make_monic(k, f), 1, &mut out);
    out.sort_by_key(|a| a.1);
    let mut merged: Vec<(FqPoly, u32)> = Vec::new();
    for (g, e) in out {
        if let Some(last) = merged.last_mut() {
            if last.1 == e {
                last.0 = mul(k, &last.0, &g);
                continue;
            }
        }
        merged.push((g, e));
    }
    merged
}

fn squarefree_into(k: &FieldSpec, f: &FqPoly, mult: u32, out: &mut Vec<(FqPoly, u32)>) {
    if degree(f).unwrap_or(0) == 0 {
        return;
    }
    let df = derivative(k, f);
    if df.is_empty() {
        let r = pth_root(k, f);
        squarefree_into(k, &r, mult * k.p() as u32, out);
        return;
    }
    let mut c = gcd(k, f, &df);
    let mut w = divrem(k, f, &c).0;
    let mut i = 1;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(k, &w, &c);
        let z = divrem(k, &w, &y).0;
        if degree(&z).unwrap_or(0) > 0 {
            out.push((z, i * mult));
        }
        i += 1;
        w = y;
        c = divrem(k, &c, &w).0;
    }
    if degree(&c).unwrap_or(0) > 0 {
        let r = pth_root(k, &c);
        squarefree_into(k, &r, mult * k.p() as u32, out);
    }
}

/// Distinct-degree factorisation of a squarefree monic polynomial.
fn distinct_degree(k: &FieldSpec, f: &FqPoly) -> Vec<(FqPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = rem(k, &x(k), &rest);
    let xx = x(k);
    let mut d = 0;
    while let Some(n) = degree(&rest) {
        if n < 2 * (d + 1) {
            if n > 0 {
                out.push((rest.clone(), n));
            }
            break;
        }
        d += 1;
        h = powmod(k, &h, k.order(), &rest);
        let g = gcd(k, &sub(k, &h, &xx), &rest);
        if degree(&g).unwrap_or(0) > 0 {
            rest = divrem(k, &rest, &g).0;
            h = rem(k, &h, &rest);
            out.push((g, d));
        }
    }
    out
}

/// Deterministic splitter candidate number `idx` of degree below `n`.
fn candidate(k: &FieldSpec, mut idx: u64, n: usize) -> FqPoly {
    let q = k.order();
    let mut coeffs = Vec::with_capacity(n);
    for _ in 0..n {
        coeffs.push(k.from_index(idx % q));
        idx /= q;
    }
    trimmed(coeffs)
}

/// Splits a product of distinct monic irreducibles of common degree `d`.
fn equal_degree(k: &FieldSpec, f: &FqPoly, d: usize, out: &mut Vec<FqPoly>) {
    let n = degree(f).unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(f.clone());
        return;
    }
    let q = k.order();
    let mut idx = q;
    loop {
        idx += 1;
        let a = candidate(k, idx, n);
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let s = if q % 2 == 1 {
            // a^{(q^d - 1)/2} = (prod_i a^{q^i})^{(q-1)/2}
            let mut norm = vec![k.one()];
            let mut ai = rem(k, &a, f);
            for _ in 0..d {
                norm = mulmod(k, &norm, &ai, f);
                ai = powmod(k, &ai, q, f);
            }
            let s = powmod(k, &norm, (q - 1) / 2, f);
            sub(k, &s, &vec![k.one()])
        } else {
            // absolute trace to F_2 of the algebra F_{q^d}
            let bits = (k.degree() * d) as u32;
            let mut acc = Vec::new();
            let mut ai = rem(k, &a, f);
            for _ in 0..bits {
                acc = add(k, &acc, &ai);
                ai = mulmod(k, &ai, &ai, f);
            }
            acc
        };
        let g = gcd(k, &s, f);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = divrem(k, f, &g).0;
            equal_degree(k, &g, d, out);
            equal_degree(k, &h, d, out);
            return;
        }
    }
}

/// Total order on monic polynomials: degree first, then coefficient indices
/// compared from the constant term upwards.
pub fn poly_key(k: &FieldSpec, f: &FqPoly) -> Vec<u64> {
    let mut key = vec![f.len() as u64];
    key.extend(f.iter().map(|c| k.index(c)));
    key
}

/// A nonzero polynomial factored as `lead * prod f_i^{e_i}` with monic irreducible `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub lead: FieldElement,
    pub factors: Vec<(FqPoly, u32)>,
}

/// Full factorisation; factors sorted by [`poly_key`].
pub fn factor(k: &FieldSpec, f: &FqPoly) -> Factorization {
    let d = degree(f).expect("cannot factor zero");
    let lead = f[d];
    let mut factors = Vec::new();
    for (g, e) in squarefree(k, f) {
        for (h, dd) in distinct_degree(k, &g) {
            let mut irr = Vec::new();
            equal_degree(k, &h, dd, &mut irr);
            factors.extend(irr.into_iter().map(|p| (p, e)));
        }
    }
    factors.sort_by_key(|(g, _)| poly_key(k, g));
    Factorization { lead, factors }
}

/// Roots of `f` in the field `k`, ascending by index.
pub fn roots(k: &FieldSpec, f: &FqPoly) -> Vec<FieldElement> {
    let mut out: Vec<FieldElement> =
        factor(k, f).factors.into_iter().filter(|(g, _)| g.len() == 2).map(|(g, _)| k.neg(&g[0])).collect();
    out.sort_by_key(|z| k.index(z));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(k: &FieldSpec, c: &[i64]) -> FqPoly {
        trimmed(c.iter().map(|&a| k.from_i64(a)).collect())
    }

    fn expand(k: &FieldSpec, fac: &Factorization) -> FqPoly {
        let mut acc = vec![fac.lead];
        for (g, e) in &fac.factors {
            acc = mul(k, &acc, &pow(k, g, *e as u64));
        }
        acc
    }

    #[test]
    fn x3_minus_x_splits_over_f7() {
        let k = FieldSpec::new(7, 1).unwrap();
        let f = poly(&k, &[0, -1, 0, 1]);
        let fac = factor(&k, &f);
        assert_eq!(fac.factors.len(), 3);
        assert!(fac.factors.iter().all(|(g, e)| g.len() == 2 && *e == 1));
        assert_eq!(roots(&k, &f).iter().map(|z| k.index(z)).collect::<Vec<_>>(), [0, 1, 6]);
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let k = FieldSpec::new(3, 2).unwrap();
        // (x^3 - x)^2 * (x^2 + 1)^3 * 2
        let f = mul(
            &k,
            &pow(&k, &poly(&k, &[0, -1, 0, 1]), 2),
            &mul(&k, &pow(&k, &poly(&k, &[1, 0, 1]), 3), &poly(&k, &[2])),
        );
        let fac = factor(&k, &f);
        assert_eq!(expand(&k, &fac), f);
        assert!(fac.factors.iter().all(|(g, _)| g.len() == 2));
        assert_eq!(fac.factors.len(), 5);
    }

    #[test]
    fn char_two_trace_splitting() {
        let k = FieldSpec::new(2, 2).unwrap();
        let f = poly(&k, &[0, 1, 0, 0, 1]); // x^4 + x = x (x^3 + 1)
        let fac = factor(&k, &f);
        assert_eq!(fac.factors.len(), 4);
        assert_eq!(expand(&k, &fac), f);
    }

    #[test]
    fn irreducibility_matches_root_search_for_cubics() {
        let k = FieldSpec::new(5, 1).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                let f = poly(&k, &[b, a, 0, 1]);
                let has_root = k.elements().any(|z| eval(&k, &f, &z).is_zero());
                assert_eq!(is_irreducible(&k, &f), !has_root);
            }
        }
    }

    #[test]
    fn xgcd_bezout() {
        let k = FieldSpec::new(7, 1).unwrap();
        let f = poly(&k, &[0, -1, 0, 1]);
        let df = derivative(&k, &f);
        let (g, u, v) = xgcd(&k, &f, &df);
        assert_eq!(g, vec![k.one()]);
        assert_eq!(add(&k, &mul(&k, &u, &f), &mul(&k, &v, &df)), g);
    }
}
