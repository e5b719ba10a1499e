//! The semilinear `p`-power Frobenius on eigenspaces and its `q`-power composite.
//!
//! With `Phi*(x) = x^p` and `sigma` on coefficients, the basis form
//! `Xi^j x^i dx / r` is sent to `Xi^{nu}` times
//!
//! ```text
//! p c~ x^{p(i+1)-1} prod_l f_l^{-mu e_l - p} (1 + p g_l f_l^{-p})^{-(t + j e_l)/t} dx
//! ```
//!
//! where `f_l^sigma(x^p) = f_l^p + p g_l` and `c~ = c^{-mu} (c^p / sigma(c))^{j/t}`.
//! The binomial series is truncated so that the omitted tail reduces to
//! something divisible by `p^N`.

use alloc::vec;
use alloc::vec::Vec;

use super::approx::{coordinates, AMatrix, Approx};
use super::qpoly::{self, ZqPoly};
use super::reduce::{supported_directly, Form, LiftedCover};
use super::CoverSpec;
use crate::arith::padic::{max_precision, PadicContext};
use crate::crystal::nu_mu;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusMatrix {
    pub source: u64,
    pub target: u64,
    /// `dim H^1_target x dim H^1_source` in the monomial bases; columns are
    /// images of basis forms. Entries may carry small denominators.
    pub matrix: AMatrix,
    pub semilinear: bool,
    /// Working precision of the entries' digits.
    pub working: u32,
    /// Number of binomial terms kept.
    pub terms: u32,
}

impl FrobeniusMatrix {
    /// Digits of absolute precision of the least precise entry.
    pub fn precision(&self) -> i32 {
        self.matrix.min_precision()
    }

    /// Smallest valuation of a nonzero entry (negative for denominators).
    pub fn min_valuation(&self) -> i32 {
        self.matrix.min_valuation()
    }

    pub fn is_integral(&self) -> bool {
        self.min_valuation() >= 0
    }
}

/// Smallest `K` with `1 + k - loss(E + p k) >= n` for every `k > K`.
fn series_terms(lc: &LiftedCover, nu: u64, e: u32, n: u32) -> u32 {
    let p = lc.ctx.p() as u32;
    let ok = |k: u32| 1 + k as i64 - lc.finite_loss(nu, e + p * k) as i64 >= n as i64;
    let mut k = 0;
    // the loss grows logarithmically, so a long run of successes settles it
    loop {
        if (k + 1..k + 64).all(ok) {
            return k;
        }
        k += 1;
    }
}

struct Plan {
    nu: u64,
    mu: u64,
    e_top: u32,
    terms: u32,
    level: u32,
    loss: u32,
}

fn plan(cover: &CoverSpec, j: u64, n: u32) -> Result<Plan> {
    let p = cover.p() as u32;
    let idx = nu_mu(cover.p(), cover.t(), j)?;
    let probe = LiftedCover::new(cover, &PadicContext::new(cover.field(), 2)?)?;
    let mu = idx.mu_frob as u32;
    let e_top = probe.mults.iter().map(|&e| mu * e + p).max().unwrap_or(p);
    let terms = series_terms(&probe, idx.nu, e_top, n);
    let level = e_top + p * terms;
    let loss = probe.finite_loss(idx.nu, level);
    Ok(Plan { nu: idx.nu, mu: idx.mu_frob, e_top, terms, level, loss })
}

/// A working precision that usually suffices for target precision `n`.
pub fn initial_working(cover: &CoverSpec, j: u64, n: u32) -> Result<u32> {
    let pl = plan(cover, j, n)?;
    Ok((n + 2 * pl.loss + 2).min(max_precision(cover.p())))
}

/// The matrix of `Phi: H^1_j -> H^1_{nu(j)}` with the series truncated for
/// target precision `n`, computed with `working` digits.
pub fn p_step(cover: &CoverSpec, j: u64, n: u32, working: u32) -> Result<FrobeniusMatrix> {
    if !supported_directly(cover, j)? || j == 0 {
        return Err(Error::SingularEigenspace { j });
    }
    let pl = plan(cover, j, n)?;
    let m = cover.radical_degree();
    let (rows, cols) = (m - 1, m - 1);
    let ctx = PadicContext::new(cover.field(), working)?;
    let semilinear = cover.field().degree() > 1;
    if rows == 0 {
        return Ok(FrobeniusMatrix {
            source: j,
            target: pl.nu,
            matrix: AMatrix::from_columns(0, &[]),
            semilinear,
            working,
            terms: 0,
        });
    }
    let p = cover.p() as usize;
    let lc = LiftedCover::new(cover, &ctx)?;
    let common = frobenius_common(&lc, j, pl.mu, pl.e_top, pl.terms)?;
    let mut images = Vec::with_capacity(cols);
    for i in 0..cols {
        let mut num = vec![ctx.zero(); p * (i + 1) - 1];
        num.extend_from_slice(&common);
        let form = Form { num: qpoly::trimmed(num), level: pl.level, exp: 0 };
        let col: Vec<Approx> =
            coordinates(&lc, pl.nu, &form)?.into_iter().map(|x| Approx { prec: x.prec.min(n as i32), ..x }).collect();
        images.push(col);
    }
    Ok(FrobeniusMatrix {
        source: j,
        target: pl.nu,
        matrix: AMatrix::from_columns(rows, &images),
        semilinear,
        working,
        terms: pl.terms,
    })
}

/// `p`-step matrix whose entries are known to at least `n` digits.
pub fn p_step_to(cover: &CoverSpec, j: u64, n: u32) -> Result<FrobeniusMatrix> {
    let cap = max_precision(cover.p());
    let mut working = initial_working(cover, j, n)?;
    loop {
        let step = p_step(cover, j, n, working)?;
        let worst = step.precision();
        if worst >= n as i32 {
            return Ok(step);
        }
        if working >= cap {
            return Err(Error::PrecisionExhausted(alloc::format!(
                "eigenspace {j} needs more than {cap} working digits"
            )));
        }
        working = (working + (n as i32 - worst) as u32).min(cap);
    }
}

/// `p c~ prod_l f_l^{E - mu e_l - p} U_l` with
/// `U_l = sum_{k <= K} C(beta_l, k) p^k g_l^k f_l^{p (K - k)}`.
fn frobenius_common(lc: &LiftedCover, j: u64, mu: u64, e_top: u32, k_terms: u32) -> Result<ZqPoly> {
    let ctx = &lc.ctx;
    let p = ctx.p();
    let t = lc.t as i64;
    // c~ = c^{-mu} (c^p / sigma(c))^{j/t}
    let c_inv = ctx.inv(&lc.lead)?;
    let ratio = ctx.mul(&ctx.pow(&lc.lead, p), &ctx.inv(&ctx.sigma(&lc.lead))?);
    let c_tilde = ctx.mul(&ctx.pow(&c_inv, mu), &ctx.one_unit_pow(&ratio, j as i64, t)?);
    let mut acc = vec![ctx.mul_p_pow(&c_tilde, 1)];
    for (l, f) in lc.factors.iter().enumerate() {
        let e = lc.mults[l] as u64;
        let f_sigma = qpoly::frobenius_pullback(ctx, f);
        let fp = qpoly::pow(ctx, f, p);
        let g = qpoly::div_p_pow(ctx, &qpoly::sub(ctx, &f_sigma, &fp), 1);
        let beta_num = -(t + j as i64 * e as i64);
        let mut u_l: ZqPoly = Vec::new();
        let mut g_pow = vec![ctx.one()];
        for k in 0..=k_terms {
            if k >= ctx.precision() {
                break;
            }
            let coef = ctx.mul_p_pow(&ctx.binom(beta_num, t, k as u64)?, k);
            if !coef.is_zero() {
                let f_pow = qpoly::pow(ctx, &fp, (k_terms - k) as u64);
                let term = qpoly::mul(ctx, &g_pow, &f_pow);
                u_l = qpoly::add(ctx, &u_l, &qpoly::scale(ctx, &term, &coef));
            }
            g_pow = qpoly::mul(ctx, &g_pow, &g);
        }
        let extra = e_top as u64 - mu * e - p;
        acc = qpoly::mul(ctx, &acc, &qpoly::pow(ctx, f, extra));
        acc = qpoly::mul(ctx, &acc, &u_l);
    }
    Ok(acc)
}

/// `p`-step matrix at the cover's precision.
pub fn frobenius_p_step(cover: &CoverSpec, j: u64) -> Result<FrobeniusMatrix> {
    let n = super::charpoly::resolve_precision(cover)?;
    p_step_to(cover, j, n)
}

/// Composes `a` consecutive `p`-steps along `j, nu(j), ...` into the linear
/// `q`-power Frobenius of `H^1_j`: `M_{a-1} sigma(M_{a-2}) ... sigma^{a-1}(M_0)`.
pub fn compose_q(cover: &CoverSpec, steps: &[FrobeniusMatrix]) -> Result<FrobeniusMatrix> {
    let a = cover.field().degree();
    let first = steps.first().ok_or(Error::Invalid("no Frobenius steps".into()))?;
    let working = first.working;
    if steps.len() != a || steps.iter().any(|s| s.working != working) {
        return Err(Error::Invalid("Frobenius steps do not match".into()));
    }
    let ctx = PadicContext::new(cover.field(), working)?;
    let mut acc = first.matrix.clone();
    for k in 1..a {
        if steps[k].source != steps[k - 1].target {
            return Err(Error::Invalid("Frobenius steps do not chain".into()));
        }
        acc = steps[k].matrix.mul(&ctx, &acc.sigma(&ctx));
    }
    if steps[a - 1].target != first.source {
        return Err(Error::Invalid("nu-orbit does not close after a steps".into()));
    }
    Ok(FrobeniusMatrix {
        source: first.source,
        target: first.source,
        matrix: acc,
        semilinear: false,
        working,
        terms: steps.iter().map(|s| s.terms).max().unwrap(),
    })
}

/// The chain of `p`-steps starting at `j`, at a common working precision.
pub fn step_chain(cover: &CoverSpec, j: u64, n: u32, working: u32) -> Result<Vec<FrobeniusMatrix>> {
    let mut steps = Vec::new();
    let mut cur = j;
    for _ in 0..cover.field().degree() {
        let s = p_step(cover, cur, n, working)?;
        cur = s.target;
        steps.push(s);
    }
    Ok(steps)
}

/// The linear `q`-power Frobenius on `H^1_j`, entries known to the cover's precision.
pub fn frobenius_q(cover: &CoverSpec, j: u64) -> Result<FrobeniusMatrix> {
    let n = super::charpoly::resolve_precision(cover)?;
    let cap = max_precision(cover.p());
    let mut working = initial_working(cover, j, n)?;
    let mut target = n;
    loop {
        let fq = compose_q(cover, &step_chain(cover, j, target, working)?)?;
        let worst = fq.precision();
        if worst >= n as i32 {
            return Ok(fq);
        }
        if working >= cap {
            return Err(Error::PrecisionExhausted(alloc::format!(
                "eigenspace {j} needs more than {cap} working digits"
            )));
        }
        let deficit = (n as i32 - worst) as u32;
        target += deficit;
        working = (working + deficit).min(cap);
    }
}
