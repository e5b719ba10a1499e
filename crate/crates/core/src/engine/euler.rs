//! The mod `p` logarithmic de Rham complex `L(D(j)) -> Omega^1(log D) (x) L(D(j))`
//! on the projective line.
//!
//! With `F = prod f_l^{b_l}` and `r = prod f_l`, sections of `L(D(j))` on the
//! affine line are `psi / F` and sections of the second term are
//! `h dx / (F r)`. The connection becomes `psi -> r psi' - psi v` with
//! `v = sum_l (b_l + (j/t) e_l) f_l' r / f_l`. Global sections are the
//! polynomials of bounded degree, and `H^1` of either bundle is spanned by
//! the Laurent tails `x^{-k}` not reached from the affine line.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::field::{FieldElement, FieldSpec};
use crate::arith::fpoly::{self, FqPoly};
use crate::arith::padic::invmod;
use crate::crystal;
use crate::engine::CoverSpec;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerData {
    pub j: u64,
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    /// `h0 - h1 + h2`.
    pub chi: i64,
    /// `deg L(D(j))`.
    pub degree: i64,
}

/// Rank over `F_q` by Gaussian elimination.
pub fn rank(k: &FieldSpec, mut rows: Vec<Vec<FieldElement>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = k.inv(&rows[rank][c]).expect("nonzero pivot");
        let pivot_row: Vec<FieldElement> = rows[rank].iter().map(|x| k.mul(x, &inv)).collect();
        for r in rank + 1..rows.len() {
            let f = rows[r][c];
            if f.is_zero() {
                continue;
            }
            for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                *x = k.sub(x, &k.mul(&f, y));
            }
        }
        rank += 1;
    }
    rank
}

fn coeff(f: &FqPoly, i: i64, k: &FieldSpec) -> FieldElement {
    if i < 0 {
        return k.zero();
    }
    f.get(i as usize).copied().unwrap_or_else(|| k.zero())
}

/// Hypercohomology dimensions of the `j`-th mod `p` complex.
pub fn modp_euler(cover: &CoverSpec, j: u64) -> Result<EulerData> {
    let t = cover.t();
    if j >= t {
        return Err(Error::OutOfRange { value: j, bound: t });
    }
    let k = cover.field();
    let p = k.p();
    let prof = crystal::profile(cover)?;
    let e = prof.eigen(j);
    let fac = cover.factorization();
    let nf = fac.factors.len();
    let b_inf = e.b[nf];
    // j/t in F_p
    let c = (j % p) * invmod(t % p, p).expect("p does not divide t") % p;
    let mut f_big = vec![k.one()];
    let mut r = vec![k.one()];
    for (l, (f, _)) in fac.factors.iter().enumerate() {
        f_big = fpoly::mul(k, &f_big, &fpoly::pow(k, f, e.b[l] as u64));
        r = fpoly::mul(k, &r, f);
    }
    let mut v: FqPoly = Vec::new();
    for (l, (f, el)) in fac.factors.iter().enumerate() {
        let weight = (e.b[l] as u64 % p + c * (*el as u64 % p)) % p;
        let others = fpoly::divrem(k, &r, f).0;
        let term = fpoly::mul(k, &fpoly::derivative(k, f), &others);
        v = fpoly::add(k, &v, &fpoly::scale(k, &term, &k.from_u64(weight)));
    }
    let deg_f = fpoly::degree(&f_big).unwrap_or(0) as i64;
    let deg_r = fpoly::degree(&r).unwrap_or(0) as i64;
    let n_inf = -b_inf;
    let a0 = n_inf - deg_f;
    let a1 = n_inf + 1 - deg_f - deg_r;

    // global sections: polynomials psi with deg psi <= -a
    let g0 = (1 - a0).max(0) as usize;
    let g1 = (1 - a1).max(0) as usize;
    let mut global = vec![vec![k.zero(); g0]; g1];
    for i in 0..g0 {
        let mut psi = vec![k.zero(); i + 1];
        psi[i] = k.one();
        let h = fpoly::sub(k, &fpoly::mul(k, &r, &fpoly::derivative(k, &psi)), &fpoly::mul(k, &psi, &v));
        for (row, x) in global.iter_mut().zip(h.iter()) {
            row[i] = *x;
        }
        debug_assert!(h.len() <= g1);
    }
    // H^1: tails x^{-k}, 1 <= k < a
    let t0 = (a0 - 1).max(0) as usize;
    let t1 = (a1 - 1).max(0) as usize;
    let mut tails = vec![vec![k.zero(); t0]; t1];
    for kk in 1..=t0 as i64 {
        let scale = k.from_i64(-kk);
        for k2 in 1..=t1 as i64 {
            let x = k.sub(&k.mul(&scale, &coeff(&r, kk + 1 - k2, k)), &coeff(&v, kk - k2, k));
            tails[(k2 - 1) as usize][(kk - 1) as usize] = x;
        }
    }
    let rank_g = if g0 == 0 || g1 == 0 { 0 } else { rank(k, global) };
    let rank_t = if t0 == 0 || t1 == 0 { 0 } else { rank(k, tails) };
    let h0 = g0 - rank_g;
    let h1 = (g1 - rank_g) + (t0 - rank_t);
    let h2 = t1 - rank_t;
    let degree: i64 = prof.places.iter().zip(&e.b).map(|(pl, b)| pl.degree as i64 * b).sum();
    Ok(EulerData { j, h0, h1, h2, chi: h0 as i64 - h1 as i64 + h2 as i64, degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus() {
        let k = FieldSpec::new(7, 1).unwrap();
        let cover = CoverSpec::from_ints(&k, 3, &[0, 1]).unwrap();
        let e1 = modp_euler(&cover, 1).unwrap();
        assert_eq!((e1.h0, e1.h1, e1.chi, e1.degree), (0, 0, 0, -1));
        let e0 = modp_euler(&cover, 0).unwrap();
        assert_eq!((e0.h0, e0.h1, e0.chi), (1, 1, 0));
    }

    #[test]
    fn drinfeld_q2() {
        let k = FieldSpec::new(2, 2).unwrap();
        let cover = CoverSpec::from_ints(&k, 3, &[0, 1, 1]).unwrap();
        let e = modp_euler(&cover, 1).unwrap();
        assert_eq!((e.h0, e.h1, e.h2, e.chi), (0, 1, 0, -1));
    }
}
