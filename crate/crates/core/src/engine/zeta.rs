//! Point counts and the zeta function of the cover.
//!
//! `N_n = sum_j S_j(n)`. For general-position `j`, `S_j(n)` is minus the
//! trace of `Frob_q^n` on `H^1_j`. When `t | j mu_V` at every place, the
//! character `chi^j(Pi)` is the constant `chi(c)^j` (`c` the leading
//! coefficient), so `S_j(n)` is `alpha_j^n` times the number of points of the
//! base. Other singular `j` are not supported.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::charpoly::{within_weil, CharPoly, EigenRun};
use super::cyclo::{Cyc, CycloRing};
use super::frobenius::FrobeniusMatrix;
use super::CoverSpec;
use crate::arith::character::Character;
use crate::census::{widen, ORIENTATION};
use crate::crystal;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ZetaResult {
    pub t: u64,
    /// Digits to which the characteristic polynomials were determined.
    pub precision: u32,
    pub char_polys: BTreeMap<u64, CharPoly>,
    pub frobenius: BTreeMap<u64, FrobeniusMatrix>,
    /// Singular `j` with `alpha_j = zeta_t^k`, stored as `j -> k`.
    pub singular: BTreeMap<u64, u64>,
    /// `N_1, ..., N_{n_max}`.
    pub counts: Vec<BigInt>,
    /// `Z(X, T) = numerator / denominator`, ascending.
    pub numerator: Vec<BigInt>,
    pub denominator: Vec<BigInt>,
    /// Geometric connected components.
    pub components: u64,
    /// Every class norm satisfies the Weil coefficient bounds.
    pub weil: bool,
}

impl ZetaResult {
    pub fn count(&self, n: usize) -> &BigInt {
        &self.counts[n - 1]
    }
}

type CycPoly = Vec<Cyc>;

fn poly_mul(ring: &CycloRing, a: &CycPoly, b: &CycPoly) -> CycPoly {
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
        }
    }
    out
}

fn zeta_power(ring: &CycloRing, k: u64) -> Cyc {
    let mut counts = vec![0i64; ring.n as usize];
    counts[(k % ring.n) as usize] = 1;
    ring.from_exponent_counts(&counts)
}

fn rational(ring: &CycloRing, poly: &CycPoly) -> Result<Vec<BigInt>> {
    poly.iter()
        .map(|c| ring.as_integer(c))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invalid("zeta function is not rational".into()))
}

/// Number of roots of `Pi` in `F_{q^n}`.
fn root_count(cover: &CoverSpec, n: usize) -> u64 {
    cover
        .factorization()
        .factors
        .iter()
        .filter(|(f, _)| n.is_multiple_of(f.len() - 1))
        .map(|(f, _)| (f.len() - 1) as u64)
        .sum()
}

/// Indices `j` at which the character of `Pi` is constant, with their
/// exponent `k` (`alpha_j = zeta_t^k`).
pub fn singular_twists(cover: &CoverSpec) -> Result<BTreeMap<u64, u64>> {
    let t = cover.t();
    let prof = crystal::profile(cover)?;
    let chi = Character::new(cover.field(), t)?;
    let c = chi.index(&cover.factorization().lead).expect("leading coefficient is nonzero");
    let mut out = BTreeMap::new();
    for j in 0..t {
        if prof.places.iter().all(|v| (j as i64 * v.mu) % t as i64 == 0) {
            let k = (ORIENTATION * (j * c % t) as i64).rem_euclid(t as i64) as u64;
            out.insert(j, k);
        }
    }
    Ok(out)
}

pub fn zeta(cover: &CoverSpec, n_max: usize) -> Result<ZetaResult> {
    zeta_with_run(cover, n_max).map(|(z, _)| z)
}

/// Also returns the eigenspace run, for trace comparisons.
pub fn zeta_with_run(cover: &CoverSpec, n_max: usize) -> Result<(ZetaResult, Option<EigenRun>)> {
    let t = cover.t();
    let q = cover.q();
    let prof = crystal::profile(cover)?;
    let singular = singular_twists(cover)?;
    let mut general = Vec::new();
    for j in 1..t {
        if prof.eigen(j).general_position {
            general.push(j);
        } else if !singular.contains_key(&j) {
            return Err(Error::SingularEigenspace { j });
        }
    }
    let run = if general.is_empty() { None } else { Some(EigenRun::new(cover, &general)?) };
    let ring = CycloRing::new(t);

    let mut counts = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let base = BigInt::from(q).pow(n as u32) - BigInt::from(root_count(cover, n));
        let mut acc = ring.zero();
        for &k in singular.values() {
            let alpha_n = zeta_power(&ring, k * n as u64 % t);
            acc = ring.add(&acc, &ring.scale(&alpha_n, &base));
        }
        counts.push(acc);
    }
    let one = ring.from_int(BigInt::one());
    let mut numerator: CycPoly = vec![one.clone()];
    let mut denominator: CycPoly = vec![one.clone()];
    let mut weil = true;
    if let Some(run) = &run {
        for cp in run.exact.values() {
            let small = cp.ring();
            for (n, tr) in cp.neg_traces(n_max).iter().enumerate() {
                counts[n] = ring.add(&counts[n], &widen(&small, &ring, tr));
            }
            let reversed: CycPoly = cp.coeffs.iter().rev().map(|c| widen(&small, &ring, c)).collect();
            numerator = poly_mul(&ring, &numerator, &reversed);
            match cp.class_norm() {
                Some(norm) => {
                    let d = (norm.len() - 1) as u64;
                    weil &= norm.iter().rev().enumerate().all(|(i, c)| within_weil(c, d, i as u64, q));
                }
                None => weil = false,
            }
        }
    }
    for &k in singular.values() {
        let alpha = zeta_power(&ring, k);
        for (f, _) in &cover.factorization().factors {
            let d = f.len() - 1;
            let mut factor = vec![ring.zero(); d + 1];
            factor[0] = one.clone();
            factor[d] = ring.neg(&zeta_power(&ring, k * d as u64 % t));
            numerator = poly_mul(&ring, &numerator, &factor);
        }
        denominator =
            poly_mul(&ring, &denominator, &vec![one.clone(), ring.scale(&ring.neg(&alpha), &BigInt::from(q))]);
    }
    let counts = counts
        .iter()
        .map(|c| ring.as_integer(c))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Invalid("point count is not rational".into()))?;
    let mut numerator = rational(&ring, &numerator)?;
    let mut denominator = rational(&ring, &denominator)?;
    trim(&mut numerator);
    trim(&mut denominator);
    let result = ZetaResult {
        t,
        precision: run.as_ref().map_or(0, |r| r.precision),
        char_polys: run.as_ref().map(|r| r.exact.clone()).unwrap_or_default(),
        frobenius: run.as_ref().map(|r| r.frob_q.clone()).unwrap_or_default(),
        singular,
        counts,
        numerator,
        denominator,
        components: prof.component_count(),
        weil,
    };
    Ok((result, run))
}

fn trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// `N_1, ..., N_count` from `Z = num / den`, via `T Z'/Z = sum N_n T^n`.
pub fn counts_from_rational(num: &[BigInt], den: &[BigInt], count: usize) -> Vec<BigInt> {
    let ps = |f: &[BigInt]| -> Vec<BigInt> {
        // s_n = sum a^n for f = prod (1 - a T)
        let mut s = vec![BigInt::zero(); count + 1];
        for n in 1..=count {
            let mut acc = -BigInt::from(n) * f.get(n).cloned().unwrap_or_default();
            for i in 1..n {
                acc -= f.get(i).cloned().unwrap_or_default() * &s[n - i];
            }
            s[n] = acc;
        }
        s
    };
    let a = ps(num);
    let b = ps(den);
    (1..=count).map(|n| &b[n] - &a[n]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;

    #[test]
    fn torus_counts() {
        let k = FieldSpec::new(7, 1).unwrap();
        let cover = CoverSpec::from_ints(&k, 3, &[0, 1]).unwrap();
        let z = zeta(&cover, 3).unwrap();
        assert_eq!(z.counts, [6, 48, 342].map(BigInt::from));
        assert_eq!(counts_from_rational(&z.numerator, &z.denominator, 3), z.counts);
    }
}
