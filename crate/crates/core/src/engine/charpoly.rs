//! Characteristic polynomials of Frobenius on eigenspaces.
//!
//! The polynomial of `H^1_j` has coefficients in `Z[zeta_{t'}]`,
//! `t' = t / gcd(j, t)`, and `sigma_u` sends it to the polynomial of
//! `H^1_{uj}`. Computing every `j` of a Galois class therefore gives all
//! conjugates of each coefficient, from which the exact element is
//! recovered. The product over a class is an integer polynomial.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::approx;
use super::cyclo::{self, Cyc, CycloRing};
use super::frobenius::{compose_q, initial_working, p_step, FrobeniusMatrix};
use super::reduce::supported_directly;
use super::{CoverSpec, Precision};
use crate::arith::character::Character;
use crate::arith::padic::{max_precision, PadicContext, PadicElement};
use crate::crystal;
use crate::error::{Error, Result};

/// `binom(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `true` iff `c^2 <= binom(d, i)^2 q^i`.
pub fn within_weil(c: &BigInt, d: u64, i: u64, q: u64) -> bool {
    let b = binomial(d, i);
    c * c <= &b * &b * BigInt::from(q).pow(i as u32)
}

/// Smallest `N` with `p^{2N} > 4 phi^2 binom(d,i)^2 q^i` for all `i`.
fn digits_for(p: u64, q: u64, d: u64, phi: u64) -> u32 {
    let mut worst = BigInt::zero();
    for i in 0..=d {
        let b = binomial(d, i);
        let v = BigInt::from(4 * phi * phi) * &b * &b * BigInt::from(q).pow(i as u32);
        worst = worst.max(v);
    }
    let pp = BigInt::from(p);
    let mut n = 1u32;
    while pp.pow(2 * n) <= worst {
        n += 1;
    }
    n
}

/// Order of `zeta^j` for `zeta` of order `t`.
pub fn class_order(t: u64, j: u64) -> u64 {
    t / j.gcd(&t)
}

/// The precision that makes exact recovery of every supported `P_j` possible.
pub fn required_precision(cover: &CoverSpec) -> Result<u32> {
    let prof = crystal::profile(cover)?;
    let m = cover.radical_degree() as u64;
    let mut n = 1;
    for e in prof.eigen.iter().filter(|e| e.general_position) {
        let order = class_order(cover.t(), e.index.j);
        let phi = cyclo::units(order).len() as u64;
        n = n.max(digits_for(cover.p(), cover.q(), m - 1, phi));
    }
    Ok(n)
}

pub fn resolve_precision(cover: &CoverSpec) -> Result<u32> {
    let required = required_precision(cover)?;
    match cover.precision() {
        Precision::Auto => Ok(required),
        Precision::Fixed(n) if n >= required => Ok(n),
        Precision::Fixed(_) => Err(Error::InsufficientPrecision { required }),
    }
}

/// Exact characteristic polynomial of `Frob_q` on `H^1_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub j: u64,
    pub dim: usize,
    /// `t / gcd(j, t)`.
    pub order: u64,
    /// Ascending coefficients in `Z[zeta_order]`.
    pub coeffs: Vec<Cyc>,
    /// The same polynomial when all coefficients are rational.
    pub integer: Option<Vec<BigInt>>,
}

impl CharPoly {
    pub fn ring(&self) -> CycloRing {
        CycloRing::new(self.order)
    }

    /// `-Tr(Frob_q^n)` for `n = 1..=count`, exactly.
    pub fn neg_traces(&self, count: usize) -> Vec<Cyc> {
        let ring = self.ring();
        cyclo::power_sums(&ring, &self.coeffs, count).into_iter().skip(1).map(|c| ring.neg(&c)).collect()
    }

    /// Product over the Galois class: an integer polynomial.
    pub fn class_norm(&self) -> Option<Vec<BigInt>> {
        cyclo::orbit_norm(&self.ring(), &self.coeffs)
    }
}

/// Frobenius data for a set of eigenspaces, computed at a common precision.
#[derive(Clone, Debug)]
pub struct EigenRun {
    /// Digits to which the characteristic polynomials are known.
    pub precision: u32,
    pub working: u32,
    pub steps: BTreeMap<u64, FrobeniusMatrix>,
    pub frob_q: BTreeMap<u64, FrobeniusMatrix>,
    /// `p`-adic characteristic polynomials, reduced to `precision` digits.
    pub padic: BTreeMap<u64, Vec<PadicElement>>,
    pub exact: BTreeMap<u64, CharPoly>,
}

#[cfg(feature = "parallel")]
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn par_map<T, R>(items: &[T], f: impl Fn(&T) -> R) -> Vec<R> {
    items.iter().map(f).collect()
}

/// All indices sharing `gcd(j, t)` with one of `js`.
fn closure(t: u64, js: &[u64]) -> Vec<u64> {
    let gs: Vec<u64> = js.iter().map(|j| j.gcd(&t)).collect();
    (1..t).filter(|j| gs.contains(&j.gcd(&t))).collect()
}

impl EigenRun {
    /// Computes everything needed for the exact polynomials of the given
    /// general-position eigenspaces (their Galois classes are added).
    pub fn new(cover: &CoverSpec, js: &[u64]) -> Result<Self> {
        let n = resolve_precision(cover)?;
        Self::at_precision(cover, js, n)
    }

    pub fn at_precision(cover: &CoverSpec, js: &[u64], n: u32) -> Result<Self> {
        for &j in js {
            if j == 0 || j >= cover.t() || !supported_directly(cover, j)? {
                return Err(Error::SingularEigenspace { j });
            }
        }
        let all = closure(cover.t(), js);
        let cap = max_precision(cover.p());
        let mut working = 0;
        for &j in &all {
            working = working.max(initial_working(cover, j, n)?);
        }
        let mut target = n;
        loop {
            let results = par_map(&all, |&j| p_step(cover, j, target, working));
            let mut steps = BTreeMap::new();
            for (j, r) in all.iter().zip(results) {
                steps.insert(*j, r?);
            }
            let ctx = PadicContext::new(cover.field(), working)?;
            let out = PadicContext::new(cover.field(), n)?;
            let mut frob_q = BTreeMap::new();
            let mut padic = BTreeMap::new();
            let mut worst = i32::MAX;
            for &j in &all {
                let mut chain = Vec::new();
                let mut cur = j;
                for _ in 0..cover.field().degree() {
                    let s = steps[&cur].clone();
                    cur = s.target;
                    chain.push(s);
                }
                let fq = compose_q(cover, &chain)?;
                let cp = approx::char_poly(&ctx, &fq.matrix);
                if cp.iter().any(|c| c.val() < 0 && !c.is_zero()) {
                    return Err(Error::PrecisionExhausted(alloc::format!(
                        "characteristic polynomial of eigenspace {j} is not integral"
                    )));
                }
                worst = worst.min(cp.iter().map(|c| c.prec).min().unwrap_or(i32::MAX));
                padic.insert(j, cp);
                frob_q.insert(j, fq);
            }
            if worst >= n as i32 {
                let padic = padic
                    .into_iter()
                    .map(|(j, cp)| (j, cp.iter().map(|c| c.to_integral(&ctx, &out).unwrap()).collect()))
                    .collect();
                let exact = recover_all(cover, &out, &all, &padic, &frob_q)?;
                return Ok(EigenRun { precision: n, working, steps, frob_q, padic, exact });
            }
            if working >= cap {
                return Err(Error::PrecisionExhausted(alloc::format!(
                    "characteristic polynomials need more than {cap} working digits"
                )));
            }
            let deficit = (n as i32 - worst) as u32;
            target += deficit;
            working = (working + deficit).min(cap);
        }
    }
}

fn recover_all(
    cover: &CoverSpec,
    ctx: &PadicContext,
    all: &[u64],
    padic: &BTreeMap<u64, Vec<PadicElement>>,
    frob_q: &BTreeMap<u64, FrobeniusMatrix>,
) -> Result<BTreeMap<u64, CharPoly>> {
    let t = cover.t();
    let zeta = Character::new(cover.field(), t)?.root_of_unity(ctx, 1);
    let mut exact = BTreeMap::new();
    for &j in all {
        let order = class_order(t, j);
        let ring = CycloRing::new(order);
        let z = ctx.pow(&zeta, t / order);
        let dim = frob_q[&j].matrix.rows;
        let phi = ring.rank() as u64;
        let mut coeffs = Vec::with_capacity(dim + 1);
        for i in 0..=dim {
            let vals: Vec<PadicElement> = cyclo::units(order).iter().map(|&u| padic[&(u * j % t)][i]).collect();
            let bound = BigInt::from(phi) * weil_bound_ceil(dim as u64, (dim - i) as u64, cover.q());
            coeffs.push(ring.recover(ctx, &z, &vals, &bound)?);
        }
        let integer = coeffs.iter().map(|c| ring.as_integer(c)).collect();
        exact.insert(j, CharPoly { j, dim, order, coeffs, integer });
    }
    Ok(exact)
}

/// `ceil(binom(d, i) q^{i/2})`.
pub fn weil_bound_ceil(d: u64, i: u64, q: u64) -> BigInt {
    let b = binomial(d, i);
    let sq = &b * &b * BigInt::from(q).pow(i as u32);
    let r = sq.sqrt();
    if &r * &r == sq {
        r
    } else {
        r + 1
    }
}

/// The integer characteristic polynomial of `Frob_q` on `H^1_j` (ascending).
pub fn char_poly_int(cover: &CoverSpec, j: u64) -> Result<Vec<BigInt>> {
    let prof = crystal::profile(cover)?;
    if j == 0 || !prof.eigen(j % cover.t()).general_position {
        let m = cover.radical_degree();
        if cover.radical_degree() == 1 || (j == 0 && m == 0) {
            return Ok(vec![BigInt::one()]);
        }
        return Err(Error::SingularEigenspace { j });
    }
    let run = EigenRun::new(cover, &[j])?;
    run.exact[&j].integer.clone().ok_or(Error::NotRational { j })
}
