//! Bases of `H^1_j` and reduction of twisted forms modulo exact ones.
//!
//! Write `Pi~ = c prod f_l^{e_l}`, `r = prod f_l` for the lifted radical and
//! `w = r Pi~'/Pi~`. Forms are `G dx / r^s` in the `j`-eigenspace, where the
//! connection is `nabla(B) = (B' - (j/t) B w / r) dx`. The relations
//!
//! ```text
//! nabla(B r^{-s}) = (B' r - B (s r' + (j/t) w)) / r^{s+1} dx
//! nabla(x^k)      = (k x^{k-1} r - (j/t) x^k w) / r dx
//! ```
//!
//! lower the pole order along `r` to one, and then the degree to at most
//! `m - 2` (`m = deg r`). Mod `f_l`, `t s r' + j w = (t s + j e_l) r'`, so the
//! first relation is solved by CRT. Numerators are carried as `p^{-e} G`.

use alloc::vec;
use alloc::vec::Vec;

use super::qpoly::{self, ZqPoly};
use super::{CoverSpec, LiftKind};
use crate::arith::padic::{val_int, PadicContext, PadicElement};
use crate::crystal;
use crate::error::{Error, Result};

/// The lifted geometry shared by every eigenspace of a cover.
#[derive(Clone, Debug)]
pub struct LiftedCover {
    pub ctx: PadicContext,
    pub t: u64,
    pub lead: PadicElement,
    pub factors: Vec<ZqPoly>,
    pub mults: Vec<u32>,
    pub r: ZqPoly,
    pub dr: ZqPoly,
    pub w: ZqPoly,
    /// `(r')^{-1} mod f_l` times the CRT idempotent of `f_l`, reduced mod `r`.
    ghat: Vec<ZqPoly>,
    /// `deg Pi`.
    pub deg: usize,
    /// `deg r`.
    pub m: usize,
}

impl LiftedCover {
    pub fn new(cover: &CoverSpec, ctx: &PadicContext) -> Result<Self> {
        let kind = cover.lift();
        let fac = cover.factorization();
        let factors: Vec<ZqPoly> = fac.factors.iter().map(|(f, _)| qpoly::lift(ctx, f, kind)).collect();
        let mults: Vec<u32> = fac.factors.iter().map(|(_, e)| *e).collect();
        let lead = match kind {
            LiftKind::Teichmuller => ctx.teichmuller(&fac.lead),
            LiftKind::Naive => ctx.naive_lift(&fac.lead),
        };
        let mut r = vec![ctx.one()];
        for f in &factors {
            r = qpoly::mul(ctx, &r, f);
        }
        let dr = qpoly::derivative(ctx, &r);
        let mut w = Vec::new();
        let mut ghat = Vec::new();
        for (l, f) in factors.iter().enumerate() {
            let mut others = vec![ctx.one()];
            for (l2, g) in factors.iter().enumerate() {
                if l2 != l {
                    others = qpoly::mul(ctx, &others, g);
                }
            }
            let term = qpoly::mul(ctx, &qpoly::derivative(ctx, f), &others);
            w = qpoly::add(ctx, &w, &qpoly::scale_int(ctx, &term, mults[l] as u64));
            // idempotent: others * (others^{-1} mod f)
            let oinv = qpoly::inv_mod(ctx, &others, f)?;
            let rho = qpoly::inv_mod(ctx, &qpoly::rem_monic(ctx, &dr, f), f)?;
            let local = qpoly::mulmod_monic(ctx, &oinv, &rho, f);
            ghat.push(qpoly::rem_monic(ctx, &qpoly::mul(ctx, &others, &local), &r));
        }
        Ok(LiftedCover {
            ctx: ctx.clone(),
            t: cover.t(),
            lead,
            m: r.len() - 1,
            factors,
            mults,
            r,
            dr,
            w,
            ghat,
            deg: cover.degree(),
        })
    }

    /// Top degree of the basis numerators: `m - 2`, or `m - 1` for `j = 0`.
    pub fn basis_len(&self, j: u64) -> usize {
        if j == 0 {
            self.m
        } else {
            self.m - 1
        }
    }

    /// `max v_p(t s + j e_l)` over `1 <= s < level`.
    pub fn finite_loss(&self, j: u64, level: u32) -> u32 {
        let p = self.ctx.p();
        let mut best = 0;
        for s in 1..level as i128 {
            for &e in &self.mults {
                best = best.max(val_int(self.t as i128 * s + j as i128 * e as i128, p));
            }
        }
        best
    }

    /// `max v_p(t k - j deg Pi)` over the degree-lowering steps from `degree`.
    pub fn infinite_loss(&self, j: u64, degree: usize) -> u32 {
        let p = self.ctx.p();
        let top = self.basis_len(j) as i128 - 1;
        let mut best = 0;
        for d in (top + 1)..=(degree as i128) {
            let k = d - (self.m as i128 - 1);
            let v = self.t as i128 * k - j as i128 * self.deg as i128;
            if v != 0 {
                best = best.max(val_int(v, p));
            }
        }
        best
    }
}

/// A form `p^{-exp} num dx / r^level` in a fixed eigenspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub num: ZqPoly,
    pub level: u32,
    pub exp: i32,
}

impl Form {
    /// `x^i dx / r`.
    pub fn basis(ctx: &PadicContext, i: usize) -> Self {
        let mut num = vec![ctx.zero(); i + 1];
        num[i] = ctx.one();
        Form { num, level: 1, exp: 0 }
    }
}

/// Coordinates `p^{-exp} coords` with respect to `x^i dx / r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub coords: Vec<PadicElement>,
    pub exp: i32,
    /// Largest exponent seen during the reduction.
    pub exp_max: i32,
    /// Digits of absolute precision guaranteed for `p^{-exp} coords`.
    pub precision: i32,
}

impl Reduced {
    /// The coordinates as integral elements, if they are integral.
    pub fn integral(&self, ctx: &PadicContext) -> Option<Vec<PadicElement>> {
        if self.exp <= 0 {
            let v = (-self.exp) as u32;
            return Some(self.coords.iter().map(|c| ctx.mul_p_pow(c, v)).collect());
        }
        let v = self.exp as u32;
        self.coords
            .iter()
            .map(|c| (c.is_zero() || ctx.valuation(c) >= v).then(|| ctx.div_p_pow(c, v).unwrap()))
            .collect()
    }
}

fn normalize(ctx: &PadicContext, num: &mut ZqPoly, exp: &mut i32) {
    qpoly::trim(num);
    if let Some(v) = qpoly::content_valuation(ctx, num) {
        if v > 0 {
            *num = qpoly::div_p_pow(ctx, num, v);
            *exp -= v as i32;
        }
    }
}

/// `t s + j e` as `p^v u`; returns `(v, u^{-1} mod p^W)`.
fn split_divisor(ctx: &PadicContext, value: i128) -> (u32, u64) {
    let p = ctx.p() as i128;
    let mut u = value;
    let mut v = 0;
    while u % p == 0 {
        u /= p;
        v += 1;
    }
    let m = ctx.modulus_int() as i128;
    let inv = crate::arith::padic::invmod(u.rem_euclid(m) as u64, m as u64).expect("unit");
    (v, inv)
}

/// Reduces a form in the `j`-eigenspace to the monomial basis.
pub fn reduce_in(lc: &LiftedCover, j: u64, form: &Form) -> Result<Reduced> {
    let ctx = &lc.ctx;
    let t = lc.t as i128;
    let ji = j as i128;
    let mut num = form.num.clone();
    let mut exp = form.exp;
    let mut level = form.level;
    if level == 0 {
        num = qpoly::mul(ctx, &num, &lc.r);
        level = 1;
    }
    normalize(ctx, &mut num, &mut exp);
    let mut exp_max = exp;
    let deg_in = num.len().saturating_sub(1);
    let loss_fin = lc.finite_loss(j, level);
    let mut max_deg_level1 = 0usize;

    // finite places: level s + 1 -> s
    for s in (1..level).rev() {
        let (a, g) = qpoly::divrem_monic(ctx, &num, &lc.r);
        let si = s as i128;
        let splits: Vec<(u32, u64)> = lc.mults.iter().map(|&e| split_divisor(ctx, t * si + ji * e as i128)).collect();
        let v = splits.iter().map(|s| s.0).max().unwrap_or(0);
        // B0' = p^v B0 = sum_l p^{v - v_l} u_l^{-1} (g ghat_l mod r)
        let mut b0 = Vec::new();
        for (l, &(vl, uinv)) in splits.iter().enumerate() {
            let part = qpoly::mulmod_monic(ctx, &g, &lc.ghat[l], &lc.r);
            let c = ctx.mul_p_pow(&ctx.from_u64(uinv), v - vl);
            b0 = qpoly::add(ctx, &b0, &qpoly::scale(ctx, &part, &c));
        }
        // h = t s r' + j w
        let h = qpoly::add(ctx, &qpoly::scale_int(ctx, &lc.dr, (t * si) as u64), &qpoly::scale_int(ctx, &lc.w, j));
        let lhs = qpoly::sub(ctx, &qpoly::mul_p_pow(ctx, &g, v), &qpoly::mul(ctx, &b0, &h));
        let (c, rest) = qpoly::divrem_monic(ctx, &lhs, &lc.r);
        debug_assert!(rest.is_empty(), "CRT solution must clear the residue");
        let _ = rest;
        let mut next = qpoly::mul_p_pow(ctx, &a, v);
        next = qpoly::add(ctx, &next, &c);
        next = qpoly::add(ctx, &next, &qpoly::scale_int(ctx, &qpoly::derivative(ctx, &b0), lc.t));
        num = next;
        exp += v as i32;
        exp_max = exp_max.max(exp);
        normalize(ctx, &mut num, &mut exp);
    }
    max_deg_level1 = max_deg_level1.max(num.len().saturating_sub(1));

    // infinity: lower the degree with t nabla(x^k) = t k x^{k-1} r - j x^k w
    let top = lc.basis_len(j);
    while num.len() > top {
        let d = num.len() - 1;
        let k = d - (lc.m - 1);
        let div = t * k as i128 - ji * lc.deg as i128;
        if div == 0 {
            return Err(Error::SingularEigenspace { j });
        }
        let (v, uinv) = split_divisor(ctx, div);
        let a = num[d];
        num = qpoly::mul_p_pow(ctx, &num, v);
        // subtract (a / (u)) * (t k x^{k-1} r - j x^k w), computed at exponent + v
        let coef = ctx.scale(&a, uinv);
        let mut rel = Vec::new();
        if k > 0 {
            let mut kr = vec![ctx.zero(); k - 1];
            kr.extend(qpoly::scale_int(ctx, &lc.r, lc.t * k as u64));
            rel = kr;
        }
        let mut xw = vec![ctx.zero(); k];
        xw.extend(qpoly::scale_int(ctx, &lc.w, j));
        rel = qpoly::sub(ctx, &rel, &xw);
        num = qpoly::sub(ctx, &num, &qpoly::scale(ctx, &rel, &coef));
        if num.len() > d {
            num[d] = ctx.zero();
            qpoly::trim(&mut num);
        }
        exp += v as i32;
        exp_max = exp_max.max(exp);
        normalize(ctx, &mut num, &mut exp);
    }
    let loss_inf = lc.infinite_loss(j, max_deg_level1.max(deg_in));
    let mut coords = num;
    coords.resize(top, ctx.zero());
    let precision = ctx.precision() as i32 - exp_max - loss_fin as i32 - loss_inf as i32;
    Ok(Reduced { coords, exp, exp_max, precision })
}

/// A basis of `H^1_j` together with the data needed to reduce into it.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    pub j: u64,
    pub dim: usize,
    /// Numerators of the basis forms `x^i dx / r`.
    pub basis: Vec<Form>,
}

/// Whether `j` can be handled directly by the reduction.
pub fn supported_directly(cover: &CoverSpec, j: u64) -> Result<bool> {
    let prof = crystal::profile(cover)?;
    Ok(j == 0 || prof.eigen(j % cover.t()).general_position)
}

pub fn h1_basis(cover: &CoverSpec, j: u64) -> Result<Eigenspace> {
    if j >= cover.t() {
        return Err(Error::OutOfRange { value: j, bound: cover.t() });
    }
    if !supported_directly(cover, j)? {
        let shift = crystal::max_shift(cover);
        if j.is_multiple_of(shift.step) {
            return h1_basis(cover, 0);
        }
        return Err(Error::SingularEigenspace { j });
    }
    let m = cover.radical_degree();
    let dim = if j == 0 { m } else { m - 1 };
    let ctx = PadicContext::new(cover.field(), 1)?;
    Ok(Eigenspace { j, dim, basis: (0..dim).map(|i| Form::basis(&ctx, i)).collect() })
}

/// Coordinates of a form in the basis of [`h1_basis`], at the given working precision.
pub fn reduce_form(cover: &CoverSpec, j: u64, form: &Form, working: u32) -> Result<Reduced> {
    let ctx = PadicContext::new(cover.field(), working)?;
    let lc = LiftedCover::new(cover, &ctx)?;
    if !supported_directly(cover, j)? {
        return Err(Error::SingularEigenspace { j });
    }
    let red = reduce_in(&lc, j, form)?;
    if red.precision <= 0 {
        return Err(Error::PrecisionExhausted(alloc::format!("reduction lost all {working} digits")));
    }
    Ok(red)
}
