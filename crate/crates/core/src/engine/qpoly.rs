//! Dense polynomials over `Z_q / p^W`, ascending coefficients.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::fpoly::{self, FqPoly};
use crate::arith::padic::{PadicContext, PadicElement};
use crate::engine::LiftKind;
use crate::error::Result;

pub type ZqPoly = Vec<PadicElement>;

pub fn trim(f: &mut ZqPoly) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

pub fn trimmed(mut f: ZqPoly) -> ZqPoly {
    trim(&mut f);
    f
}

pub fn add(ctx: &PadicContext, f: &[PadicElement], g: &[PadicElement]) -> ZqPoly {
    let (long, short) = if f.len() >= g.len() { (f, g) } else { (g, f) };
    let mut out = long.to_vec();
    for (o, c) in out.iter_mut().zip(short) {
        *o = ctx.add(o, c);
    }
    trimmed(out)
}

pub fn sub(ctx: &PadicContext, f: &[PadicElement], g: &[PadicElement]) -> ZqPoly {
    let n = f.len().max(g.len());
    let mut out = vec![ctx.zero(); n];
    for (i, o) in out.iter_mut().enumerate() {
        let a = f.get(i).copied().unwrap_or_default();
        let b = g.get(i).copied().unwrap_or_default();
        *o = ctx.sub(&a, &b);
    }
    trimmed(out)
}

/// `f += c * x^shift * g`.
pub fn add_scaled_shifted(ctx: &PadicContext, f: &mut ZqPoly, g: &[PadicElement], c: &PadicElement, shift: usize) {
    if g.is_empty() || c.is_zero() {
        return;
    }
    if f.len() < g.len() + shift {
        f.resize(g.len() + shift, ctx.zero());
    }
    for (i, b) in g.iter().enumerate() {
        f[i + shift] = ctx.add(&f[i + shift], &ctx.mul(c, b));
    }
    trim(f);
}

pub fn scale(ctx: &PadicContext, f: &[PadicElement], c: &PadicElement) -> ZqPoly {
    trimmed(f.iter().map(|a| ctx.mul(a, c)).collect())
}

pub fn scale_int(ctx: &PadicContext, f: &[PadicElement], c: u64) -> ZqPoly {
    trimmed(f.iter().map(|a| ctx.scale(a, c)).collect())
}

pub fn mul(ctx: &PadicContext, f: &[PadicElement], g: &[PadicElement]) -> ZqPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
        }
    }
    trimmed(out)
}

pub fn pow(ctx: &PadicContext, f: &[PadicElement], mut e: u64) -> ZqPoly {
    let mut acc = vec![ctx.one()];
    let mut base = f.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(ctx, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(ctx, &base, &base);
        }
    }
    acc
}

/// Division by a monic polynomial.
pub fn divrem_monic(ctx: &PadicContext, f: &[PadicElement], g: &[PadicElement]) -> (ZqPoly, ZqPoly) {
    let dg = g.len() - 1;
    debug_assert!(g[dg] == ctx.one());
    if f.len() <= dg {
        return (Vec::new(), trimmed(f.to_vec()));
    }
    let mut r = f.to_vec();
    let mut quo = vec![ctx.zero(); f.len() - dg];
    for k in (dg..f.len()).rev() {
        let c = r[k];
        if c.is_zero() {
            continue;
        }
        quo[k - dg] = c;
        for (i, b) in g.iter().enumerate().take(dg) {
            r[k - dg + i] = ctx.sub(&r[k - dg + i], &ctx.mul(&c, b));
        }
        r[k] = ctx.zero();
    }
    r.truncate(dg);
    (trimmed(quo), trimmed(r))
}

pub fn rem_monic(ctx: &PadicContext, f: &[PadicElement], g: &[PadicElement]) -> ZqPoly {
    divrem_monic(ctx, f, g).1
}

pub fn mulmod_monic(ctx: &PadicContext, f: &[PadicElement], g: &[PadicElement], m: &[PadicElement]) -> ZqPoly {
    rem_monic(ctx, &mul(ctx, f, g), m)
}

pub fn derivative(ctx: &PadicContext, f: &[PadicElement]) -> ZqPoly {
    trimmed(f.iter().enumerate().skip(1).map(|(i, c)| ctx.scale(c, i as u64)).collect())
}

/// `sigma` on coefficients and `x -> x^p`.
pub fn frobenius_pullback(ctx: &PadicContext, f: &[PadicElement]) -> ZqPoly {
    let p = ctx.p() as usize;
    if f.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); (f.len() - 1) * p + 1];
    for (i, c) in f.iter().enumerate() {
        out[i * p] = ctx.sigma(c);
    }
    trimmed(out)
}

pub fn reduce(ctx: &PadicContext, f: &[PadicElement]) -> FqPoly {
    fpoly::trimmed(f.iter().map(|c| ctx.reduce(c)).collect())
}

pub fn lift(ctx: &PadicContext, f: &FqPoly, kind: LiftKind) -> ZqPoly {
    trimmed(
        f.iter()
            .map(|c| match kind {
                LiftKind::Teichmuller => ctx.teichmuller(c),
                LiftKind::Naive => ctx.naive_lift(c),
            })
            .collect(),
    )
}

/// Inverse of `a` modulo a monic `f` whose reduction is coprime to `a`.
pub fn inv_mod(ctx: &PadicContext, a: &[PadicElement], f: &[PadicElement]) -> Result<ZqPoly> {
    let k = ctx.field();
    let abar = reduce(ctx, a);
    let fbar = reduce(ctx, f);
    let (g, u, _) = fpoly::xgcd(k, &abar, &fbar);
    if g.len() != 1 {
        return Err(crate::error::Error::NotInvertible);
    }
    let mut z = lift(ctx, &u, LiftKind::Naive);
    let two = vec![ctx.from_u64(2)];
    let mut prec = 1;
    while prec < ctx.precision() {
        let az = mulmod_monic(ctx, a, &z, f);
        z = mulmod_monic(ctx, &z, &sub(ctx, &two, &az), f);
        prec *= 2;
    }
    Ok(z)
}

/// Largest `v` with every coefficient divisible by `p^v` (`None` for zero).
pub fn content_valuation(ctx: &PadicContext, f: &[PadicElement]) -> Option<u32> {
    f.iter().filter(|c| !c.is_zero()).map(|c| ctx.valuation(c)).min()
}

/// Exact division of every coefficient by `p^v`.
pub fn div_p_pow(ctx: &PadicContext, f: &[PadicElement], v: u32) -> ZqPoly {
    f.iter().map(|c| ctx.div_p_pow(c, v).expect("divisible")).collect()
}

pub fn mul_p_pow(ctx: &PadicContext, f: &[PadicElement], v: u32) -> ZqPoly {
    trimmed(f.iter().map(|c| ctx.mul_p_pow(c, v)).collect())
}
