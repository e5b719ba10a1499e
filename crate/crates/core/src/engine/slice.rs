//! Cohomology of a truncated slice by elimination over `Z_q / p^N`.
//!
//! Functions `g / r^S` with `deg g < m S + A` map under `nabla_j` to forms
//! `h dx / r^{S+1}` with `deg h < m (S + 1) + A - 1`. The cokernel's free rank
//! is `dim H^1_j` and the kernel is `H^0_j`. This is slow and independent of
//! the closed-form reduction, which makes it a useful cross-check.

use alloc::vec;
use alloc::vec::Vec;

use super::qpoly::{self, ZqPoly};
use super::reduce::LiftedCover;
use super::CoverSpec;
use crate::arith::padic::{PadicContext, PadicElement};
use crate::error::{Error, Result};

/// Pole order and degree slack of the default slice.
pub const SLICE_POLE: u32 = 3;
pub const SLICE_SLACK: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReport {
    pub j: u64,
    pub functions: usize,
    pub forms: usize,
    pub rank: usize,
    /// Valuations of the nonzero elementary divisors.
    pub divisors: Vec<u32>,
    pub h0: usize,
    pub h1: usize,
}

/// A matrix over `Z_q / p^N` in row echelon form with minimal-valuation pivots.
struct Echelon {
    rows: Vec<Vec<PadicElement>>,
    rank: usize,
    pivots: Vec<u32>,
}

fn eliminate(ctx: &PadicContext, mut rows: Vec<Vec<PadicElement>>, cols: usize) -> Echelon {
    let mut rank = 0;
    let mut pivots = Vec::new();
    let mut col_done = vec![false; cols];
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (r, row) in rows.iter().enumerate().skip(rank) {
            for c in (0..cols).filter(|&c| !col_done[c]) {
                if !row[c].is_zero() {
                    let v = ctx.valuation(&row[c]);
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, r, c));
                    }
                }
            }
        }
        let Some((v, r, c)) = best else { break };
        rows.swap(rank, r);
        col_done[c] = true;
        let unit = ctx.div_p_pow(&rows[rank][c], v).expect("valuation");
        let uinv = ctx.inv(&unit).expect("unit");
        let pivot_row = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = ctx.mul(&ctx.div_p_pow(&row[c], v).expect("minimal pivot"), &uinv);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = ctx.sub(x, &ctx.mul(&f, y));
            }
        }
        pivots.push(v);
        rank += 1;
    }
    Echelon { rows, rank, pivots }
}

fn shape(lc: &LiftedCover, pole: u32, slack: usize) -> (usize, usize) {
    let functions = lc.m * pole as usize + slack;
    (functions, functions + lc.m.saturating_sub(1))
}

/// Numerator of `nabla_j(x^a / r^s)` over `r^{s+1}`.
fn nabla_monomial(lc: &LiftedCover, j: u64, a: usize, s: u32) -> ZqPoly {
    let ctx = &lc.ctx;
    let mut g = vec![ctx.zero(); a + 1];
    g[a] = ctx.one();
    let jt = ctx.from_ratio(j as i64, lc.t as i64).expect("p does not divide t");
    let term1 = qpoly::mul(ctx, &qpoly::derivative(ctx, &g), &lc.r);
    let h = qpoly::add(ctx, &qpoly::scale_int(ctx, &lc.dr, s as u64), &qpoly::scale(ctx, &lc.w, &jt));
    qpoly::sub(ctx, &term1, &qpoly::mul(ctx, &g, &h))
}

/// The image matrix of `nabla_j` on the slice, as rows indexed by form coefficients.
fn image_rows(lc: &LiftedCover, j: u64, pole: u32, slack: usize) -> (Vec<Vec<PadicElement>>, usize, usize) {
    let ctx = &lc.ctx;
    let (nf, nw) = shape(lc, pole, slack);
    let mut rows = vec![vec![ctx.zero(); nf]; nw];
    for a in 0..nf {
        for (i, c) in nabla_monomial(lc, j, a, pole).into_iter().enumerate() {
            rows[i][a] = c;
        }
    }
    (rows, nf, nw)
}

/// `H^0_j` and `H^1_j` of the slice with the given pole order and slack.
pub fn slice_cohomology(cover: &CoverSpec, j: u64, digits: u32, pole: u32, slack: usize) -> Result<SliceReport> {
    if j >= cover.t() {
        return Err(Error::OutOfRange { value: j, bound: cover.t() });
    }
    let ctx = PadicContext::new(cover.field(), digits)?;
    let lc = LiftedCover::new(cover, &ctx)?;
    let (rows, nf, nw) = image_rows(&lc, j, pole, slack);
    let ech = eliminate(&ctx, rows, nf);
    if ech.pivots.iter().any(|&v| 2 * v >= digits) {
        return Err(Error::PrecisionExhausted("slice elimination needs more digits".into()));
    }
    Ok(SliceReport {
        j,
        functions: nf,
        forms: nw,
        rank: ech.rank,
        divisors: ech.pivots,
        h0: nf - ech.rank,
        h1: nw - ech.rank,
    })
}

/// Whether `num dx / r^level` is exact in the `j`-eigenspace, by elimination on
/// a slice large enough to contain it.
pub fn is_exact(cover: &CoverSpec, j: u64, num: &[i64], level: u32, digits: u32) -> Result<bool> {
    let ctx = PadicContext::new(cover.field(), digits)?;
    let lc = LiftedCover::new(cover, &ctx)?;
    let pole = level.max(1) - 1 + SLICE_POLE;
    let mut form: ZqPoly = num.iter().map(|&c| ctx.from_i64(c)).collect();
    // bring to the common denominator r^{pole + 1}
    for _ in level..pole + 1 {
        form = qpoly::mul(&ctx, &form, &lc.r);
    }
    let slack = (form.len() + SLICE_SLACK).saturating_sub(lc.m * pole as usize);
    let (mut rows, nf, nw) = image_rows(&lc, j, pole, slack.max(SLICE_SLACK));
    if form.len() > nw {
        return Err(Error::Invalid("form does not fit the slice".into()));
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row.push(form.get(i).copied().unwrap_or_else(|| ctx.zero()));
    }
    let ech = eliminate(&ctx, rows, nf);
    let worst = ech.pivots.iter().copied().max().unwrap_or(0);
    if 2 * worst >= digits {
        return Err(Error::PrecisionExhausted("slice elimination needs more digits".into()));
    }
    // residual rows must vanish to the digits not consumed by the pivots
    let keep = digits - worst;
    Ok(ech.rows[ech.rank..].iter().all(|row| row[nf].is_zero() || ctx.valuation(&row[nf]) >= keep))
}

/// Whether the forms `x^i dx / r`, `i < dim`, are independent in the slice
/// cokernel and fill its free part.
pub fn basis_is_complete(cover: &CoverSpec, j: u64, dim: usize, digits: u32) -> Result<bool> {
    let ctx = PadicContext::new(cover.field(), digits)?;
    let lc = LiftedCover::new(cover, &ctx)?;
    let (mut rows, nf, nw) = image_rows(&lc, j, SLICE_POLE, SLICE_SLACK);
    let base = eliminate(&ctx, rows.clone(), nf);
    let r_pow = qpoly::pow(&ctx, &lc.r, SLICE_POLE as u64);
    for i in 0..dim {
        let mut mono = vec![ctx.zero(); i + 1];
        mono[i] = ctx.one();
        let form = qpoly::mul(&ctx, &mono, &r_pow);
        for (k, row) in rows.iter_mut().enumerate() {
            row.push(form.get(k).copied().unwrap_or_else(|| ctx.zero()));
        }
    }
    let full = eliminate(&ctx, rows, nf + dim);
    if full.pivots.iter().any(|&v| 2 * v >= digits) {
        return Err(Error::PrecisionExhausted("slice elimination needs more digits".into()));
    }
    Ok(full.rank == base.rank + dim && full.rank == nw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;

    #[test]
    fn elliptic_slice() {
        let k = FieldSpec::new(7, 1).unwrap();
        let cover = CoverSpec::from_ints(&k, 2, &[0, -1, 0, 1]).unwrap();
        let rep = slice_cohomology(&cover, 1, 12, SLICE_POLE, SLICE_SLACK).unwrap();
        assert_eq!((rep.h0, rep.h1), (0, 2));
        let rep0 = slice_cohomology(&cover, 0, 12, SLICE_POLE, SLICE_SLACK).unwrap();
        assert_eq!((rep0.h0, rep0.h1), (1, 3));
        assert!(basis_is_complete(&cover, 1, 2, 12).unwrap());
    }

    #[test]
    fn exactness() {
        let k = FieldSpec::new(7, 1).unwrap();
        let cover = CoverSpec::from_ints(&k, 2, &[0, -1, 0, 1]).unwrap();
        // nabla_1(1) = -(1/2) (3x^2 - 1) dx / r, times -2
        assert!(is_exact(&cover, 1, &[-1, 0, 3], 1, 12).unwrap());
        assert!(!is_exact(&cover, 1, &[1], 1, 12).unwrap());
    }
}
