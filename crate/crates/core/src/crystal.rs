//! Divisor and residue combinatorics of the eigenspace crystals.
//!
//! For a place `V` with multiplicity `mu_V` of `Pi`, the `j`-th crystal is
//! twisted by `b_{V,j} = floor(j mu_V / t)` and its connection has residue
//! `j mu_V / t - b_{V,j}` along `V`. Frobenius sends the `j`-th piece to the
//! `nu(j)`-th one, where `p j = nu(j) + mu(j) t`.

use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::Ratio;

use crate::arith::field::FieldSpec;
use crate::arith::fpoly::{self, FqPoly};
use crate::engine::CoverSpec;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceLabel {
    Finite(FqPoly),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceData {
    pub label: PlaceLabel,
    pub degree: usize,
    pub mu: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EigenIndex {
    pub j: u64,
    pub nu: u64,
    pub mu_frob: u64,
}

/// `(nu, mu)` with `p j = nu + mu t` and `0 <= nu < t`.
pub fn nu_mu(p: u64, t: u64, j: u64) -> Result<EigenIndex> {
    if t.is_multiple_of(p) {
        return Err(Error::PDividesT { p, t });
    }
    if j >= t {
        return Err(Error::OutOfRange { value: j, bound: t });
    }
    let pj = p * j;
    Ok(EigenIndex { j, nu: pj % t, mu_frob: pj / t })
}

/// Per-eigenspace data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    pub index: EigenIndex,
    /// `b_{V,j}`, one per place.
    pub b: Vec<i64>,
    pub residues: Vec<Ratio<i64>>,
    pub general_position: bool,
    /// `sum_V deg V - 2` for general-position `j`.
    pub expected_dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalProfile {
    pub p: u64,
    pub q: u64,
    pub t: u64,
    /// Finite places in factor order, then infinity.
    pub places: Vec<PlaceData>,
    pub eigen: Vec<EigenData>,
}

/// Crystal data of a cover.
pub fn profile(cover: &CoverSpec) -> Result<CrystalProfile> {
    let mut places: Vec<PlaceData> = cover
        .factorization()
        .factors
        .iter()
        .map(|(f, e)| PlaceData { label: PlaceLabel::Finite(f.clone()), degree: f.len() - 1, mu: *e as i64 })
        .collect();
    places.push(PlaceData { label: PlaceLabel::Infinity, degree: 1, mu: -(cover.degree() as i64) });
    CrystalProfile::from_places(cover.p(), cover.q(), cover.t(), places)
}

impl CrystalProfile {
    /// Profile from an explicit place list; the degrees must satisfy `sum deg V * mu_V = 0`.
    pub fn from_places(p: u64, q: u64, t: u64, places: Vec<PlaceData>) -> Result<Self> {
        if t.is_multiple_of(p) {
            return Err(Error::PDividesT { p, t });
        }
        if places.iter().all(|v| v.mu == 0) {
            return Err(Error::ConstantPi);
        }
        let total: i64 = places.iter().map(|v| v.degree as i64 * v.mu).sum();
        if total != 0 {
            return Err(Error::Invalid("divisor of Pi must have degree zero".into()));
        }
        let deg_sum: usize = places.iter().map(|v| v.degree).sum();
        let ti = t as i64;
        let eigen = (0..t)
            .map(|j| {
                let ji = j as i64;
                let b: Vec<i64> = places.iter().map(|v| Integer::div_floor(&(ji * v.mu), &ti)).collect();
                let residues: Vec<Ratio<i64>> =
                    places.iter().zip(&b).map(|(v, &bv)| Ratio::new(ji * v.mu, ti) - Ratio::from_integer(bv)).collect();
                let general_position = places.iter().all(|v| (ji * v.mu) % ti != 0);
                EigenData {
                    index: nu_mu(p, t, j).expect("checked above"),
                    b,
                    residues,
                    general_position,
                    expected_dim: general_position.then(|| deg_sum - 2),
                }
            })
            .collect();
        Ok(CrystalProfile { p, q, t, places, eigen })
    }

    pub fn eigen(&self, j: u64) -> &EigenData {
        &self.eigen[j as usize]
    }

    /// `sum_V deg V`, the number of geometric punctures.
    pub fn puncture_count(&self) -> usize {
        self.places.iter().map(|v| v.degree).sum()
    }

    /// `p b_{V,j} - mu(j) mu_V <= b_{V,nu(j)}` at every place.
    pub fn check_divisor_inequality(&self, j: u64) -> bool {
        let e = self.eigen(j);
        let target = self.eigen(e.index.nu);
        self.places
            .iter()
            .enumerate()
            .all(|(i, v)| self.p as i64 * e.b[i] - e.index.mu_frob as i64 * v.mu <= target.b[i])
    }

    /// `sum deg V * Res_V + sum deg V * b_{V,j} = 0`.
    pub fn check_fuchs(&self, j: u64) -> bool {
        let e = self.eigen(j);
        let mut acc = Ratio::from_integer(0i64);
        for (i, v) in self.places.iter().enumerate() {
            let d = Ratio::from_integer(v.degree as i64);
            acc += d * e.residues[i] + d * Ratio::from_integer(e.b[i]);
        }
        acc == Ratio::from_integer(0)
    }

    pub fn check_residue_range(&self, j: u64) -> bool {
        let zero = Ratio::from_integer(0);
        let one = Ratio::from_integer(1);
        self.eigen(j).residues.iter().all(|r| *r >= zero && *r < one)
    }

    /// The three characterisations of general position agree.
    pub fn check_general_position(&self, j: u64) -> bool {
        let e = self.eigen(j);
        let by_residue = e.residues.iter().all(|r| *r != Ratio::from_integer(0));
        let by_divisibility = self.places.iter().all(|v| (j as i64 * v.mu) % self.t as i64 != 0);
        e.general_position == by_residue && by_residue == by_divisibility
    }

    /// Number of geometric connected components: `#{j : t | j mu_V for all V}`.
    pub fn component_count(&self) -> u64 {
        (0..self.t).filter(|&j| self.places.iter().all(|v| (j as i64 * v.mu) % self.t as i64 == 0)).count() as u64
    }

    /// Residues rendered as `"num/den"`.
    pub fn residue_strings(&self, j: u64) -> Vec<alloc::string::String> {
        self.eigen(j).residues.iter().map(|r| alloc::format!("{}/{}", r.numer(), r.denom())).collect()
    }
}

/// Witness of `Lambda^m = Pi`, giving `E(j) = E(j + t/m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftReduction {
    pub m: u64,
    pub step: u64,
    pub lambda: FqPoly,
}

impl ShiftReduction {
    /// Representative of `j` in `[0, step)`.
    pub fn reduce(&self, j: u64) -> u64 {
        j % self.step
    }
}

pub fn shift_reduction(cover: &CoverSpec, m: u64) -> Result<ShiftReduction> {
    let t = cover.t();
    if m == 0 || !t.is_multiple_of(m) {
        return Err(Error::BadShift { m, t });
    }
    let k = cover.field();
    let fac = cover.factorization();
    if fac.factors.iter().any(|(_, e)| !(*e as u64).is_multiple_of(m)) {
        return Err(Error::NotPower { m });
    }
    let root = nth_root(k, &fac.lead, m).ok_or(Error::NotPower { m })?;
    let mut lambda = alloc::vec![root];
    for (f, e) in &fac.factors {
        lambda = fpoly::mul(k, &lambda, &fpoly::pow(k, f, *e as u64 / m));
    }
    Ok(ShiftReduction { m, step: t / m, lambda })
}

/// The largest admissible shift: the largest `m | t` with `Pi` an `m`-th power.
pub fn max_shift(cover: &CoverSpec) -> ShiftReduction {
    let t = cover.t();
    let g = cover.multiplicities().iter().fold(0u64, |acc, &e| acc.gcd(&(e as u64)));
    let mut best = None;
    for m in 1..=g.gcd(&t) {
        if let Ok(s) = shift_reduction(cover, m) {
            best = Some(s);
        }
    }
    best.expect("m = 1 always applies")
}

/// Some `x` with `x^m = c`, smallest by index.
fn nth_root(k: &FieldSpec, c: &crate::arith::FieldElement, m: u64) -> Option<crate::arith::FieldElement> {
    let q1 = k.order() - 1;
    if k.pow(c, q1 / m.gcd(&q1)) != k.one() {
        return None;
    }
    k.elements().skip(1).find(|x| k.pow(x, m) == *c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    #[test]
    fn nu_mu_examples() {
        assert_eq!(nu_mu(5, 4, 3).unwrap(), EigenIndex { j: 3, nu: 3, mu_frob: 3 });
        assert_eq!(nu_mu(7, 3, 0).unwrap(), EigenIndex { j: 0, nu: 0, mu_frob: 0 });
        assert_eq!(nu_mu(2, 15, 7).unwrap(), EigenIndex { j: 7, nu: 14, mu_frob: 0 });
        assert!(nu_mu(2, 4, 1).is_err());
    }

    #[test]
    fn profile_of_the_torus() {
        let k = FieldSpec::new(7, 1).unwrap();
        let cover = CoverSpec::from_ints(&k, 3, &[0, 1]).unwrap();
        let prof = profile(&cover).unwrap();
        assert_eq!(prof.places.len(), 2);
        assert_eq!(prof.places[1].mu, -1);
        let e = prof.eigen(1);
        assert_eq!(e.b, [0, -1]);
        assert_eq!(e.residues, [r(1, 3), r(2, 3)]);
        assert!(e.general_position);
        assert_eq!(e.expected_dim, Some(0));
    }

    #[test]
    fn drinfeld_profile() {
        let k = FieldSpec::new(2, 2).unwrap();
        let cover = CoverSpec::from_ints(&k, 3, &[0, 1, 1]).unwrap();
        let prof = profile(&cover).unwrap();
        assert_eq!(prof.places.iter().map(|v| v.mu).collect::<Vec<_>>(), [1, 1, -2]);
        assert_eq!(prof.eigen(1).residues, [r(1, 3), r(1, 3), r(1, 3)]);
        assert_eq!(prof.eigen(1).expected_dim, Some(1));
        assert_eq!(prof.component_count(), 1);
        for j in 0..3 {
            assert!(prof.check_divisor_inequality(j));
            assert!(prof.check_fuchs(j));
        }
    }

    #[test]
    fn constant_pi_rejected() {
        let k = FieldSpec::new(7, 1).unwrap();
        assert_eq!(CoverSpec::from_ints(&k, 3, &[5]), Err(Error::ConstantPi));
    }

    #[test]
    fn shift_examples() {
        let k5 = FieldSpec::new(5, 1).unwrap();
        let cover = CoverSpec::from_ints(&k5, 4, &[0, 0, 1]).unwrap();
        let s = shift_reduction(&cover, 2).unwrap();
        assert_eq!(s.step, 2);
        assert_eq!(s.lambda, fpoly::x(&k5));
        let lin = CoverSpec::from_ints(&k5, 4, &[0, 1]).unwrap();
        assert_eq!(shift_reduction(&lin, 2), Err(Error::NotPower { m: 2 }));
        assert_eq!(max_shift(&cover).m, 2);
    }
}
