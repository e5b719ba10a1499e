//! Deligne-Lusztig varieties for `GL_{d+1}` over `F_q`.
//!
//! With `z_0 = 1`, `Pi = -prod_{a != 0} sum_i a_i z_i` over all nonzero
//! `a in F_q^{d+1}`. The variety `delta^{q-1} = (-1)^d`, `delta =
//! det(Xi_i^{q^j})`, is the cover `Xi_0^{q^{d+1}-1} Pi = 1` of the
//! complement of the rational hyperplanes. For `d = 1` this is a curve and
//! the engine applies after base change to `F_{q^2}`.

pub mod mpoly;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::field::{Embedding, FieldElement, FieldSpec};
use crate::census::{count_dl_affine, prime_power};
use crate::crystal;
use crate::engine::zeta::{zeta, ZetaResult};
use crate::engine::CoverSpec;
use crate::error::{Error, Result};
use mpoly::{product, MPoly};

/// Term budget for symbolic expansions.
pub const DEFAULT_TERM_BUDGET: usize = 1 << 16;

pub type FqMatrix = Vec<Vec<FieldElement>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DLSpec {
    pub d: usize,
    pub q: u64,
    pub field: FieldSpec,
    /// `q^{d+1} - 1`.
    pub t: u64,
    /// `(q^{d+1} - 1) / (q - 1)`.
    pub s_star: u64,
    /// In `z_1, ..., z_d`.
    pub pi: MPoly,
    /// Number of linear factors, `q^{d+1} - 1`.
    pub factors: u64,
    /// For `d = 1`: whether `Pi = -(z^q - z)^{q-1}`.
    pub closed_form: Option<bool>,
}

fn field_of(q: u64) -> Result<FieldSpec> {
    let (p, a) = prime_power(q)?;
    FieldSpec::new(p, a)
}

fn checked_pow(q: u64, e: u32) -> Result<u64> {
    q.checked_pow(e).ok_or(Error::BudgetExceeded { needed: u64::MAX, budget: u64::MAX })
}

/// All nonzero vectors of `F_q^n`, in index order.
fn nonzero_vectors(k: &FieldSpec, n: usize) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let q = k.order();
    let total = q.pow(n as u32);
    (1..total).map(move |mut idx| {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(k.from_index(idx % q));
            idx /= q;
        }
        v
    })
}

/// `prod_{a != 0} sum_i a_i Xi_i` in `n` variables.
fn linear_form_product(k: &FieldSpec, n: usize, budget: usize) -> Result<MPoly> {
    let forms: Vec<MPoly> = nonzero_vectors(k, n).map(|a| MPoly::linear(&a)).collect();
    product(k, n, &forms, budget)
}

pub fn build_pi_gl(d: usize, q: u64) -> Result<DLSpec> {
    build_pi_gl_with_budget(d, q, DEFAULT_TERM_BUDGET)
}

pub fn build_pi_gl_with_budget(d: usize, q: u64, budget: usize) -> Result<DLSpec> {
    if d == 0 {
        return Err(Error::Invalid("d must be at least 1".into()));
    }
    let k = field_of(q)?;
    let t = checked_pow(q, d as u32 + 1)? - 1;
    let mut forms = Vec::new();
    for a in nonzero_vectors(&k, d + 1) {
        let mut f = MPoly::linear(&a[1..]);
        f = f.add(&k, &MPoly::constant(d, a[0]));
        forms.push(f);
    }
    let pi = product(&k, d, &forms, budget)?.neg(&k);
    let closed_form = if d == 1 {
        let z = MPoly::var(&k, 1, 0);
        let inner = z.pow(&k, q, budget)?.sub(&k, &z);
        Some(inner.pow(&k, q - 1, budget)?.neg(&k) == pi)
    } else {
        None
    };
    Ok(DLSpec { d, q, field: k, t, s_star: t / (q - 1), pi, factors: forms.len() as u64, closed_form })
}

/// `det(Xi_i^{q^j})` by the Leibniz formula; every term is a monomial.
pub fn delta(k: &FieldSpec, d: usize, q: u64) -> MPoly {
    let n = d + 1;
    let mut out = MPoly::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    for_each_permutation(&mut perm, 0, &mut |p: &[usize], sign: bool| {
        let e: Vec<u32> = p.iter().map(|&j| q.pow(j as u32) as u32).collect();
        let mut term = MPoly::zero(n);
        term.terms.insert(e, if sign { k.one() } else { k.neg(&k.one()) });
        out = out.add(k, &term);
    });
    out
}

fn for_each_permutation(p: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize], bool)) {
    fn go(p: &mut Vec<usize>, start: usize, even: bool, f: &mut impl FnMut(&[usize], bool)) {
        if start == p.len() {
            f(p, even);
            return;
        }
        for i in start..p.len() {
            p.swap(start, i);
            go(p, start + 1, if i == start { even } else { !even }, f);
            p.swap(start, i);
        }
    }
    go(p, start, true, f);
}

/// `prod_{a != 0} sum a_i Xi_i == (-1)^{d+1} delta^{q-1}` over `F_q`.
pub fn delta_identity_check(d: usize, q: u64) -> Result<bool> {
    delta_identity_check_with_budget(d, q, DEFAULT_TERM_BUDGET)
}

pub fn delta_identity_check_with_budget(d: usize, q: u64, budget: usize) -> Result<bool> {
    let k = field_of(q)?;
    let lhs = linear_form_product(&k, d + 1, budget)?;
    let mut rhs = delta(&k, d, q).pow(&k, q - 1, budget)?;
    if (d + 1) % 2 == 1 {
        rhs = rhs.neg(&k);
    }
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeTable {
    pub d: usize,
    pub q: u64,
    /// `h_s = sum over s-subsets tau of {1..d} of q^{sum tau}`.
    pub h: Vec<BigInt>,
    /// `sum_s (-1)^{d-s} h_s`.
    pub alternating: BigInt,
    /// `prod_{i=1}^d (q^i - 1)`.
    pub product: BigInt,
}

impl HodgeTable {
    pub fn identity_holds(&self) -> bool {
        self.alternating == self.product
    }
}

/// Hodge numbers by subset enumeration (`d <= 24`).
pub fn hodge_table(d: usize, q: u64) -> Result<HodgeTable> {
    if d > 24 {
        return Err(Error::BudgetExceeded { needed: 1 << d.min(63), budget: 1 << 24 });
    }
    let qb = BigInt::from(q);
    let mut h = vec![BigInt::zero(); d + 1];
    for mask in 0u32..(1 << d) {
        let s = mask.count_ones() as usize;
        let exp: u32 = (0..d as u32).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).sum();
        h[s] += qb.pow(exp);
    }
    let mut alternating = BigInt::zero();
    for (s, hs) in h.iter().enumerate() {
        if (d - s).is_multiple_of(2) {
            alternating += hs;
        } else {
            alternating -= hs;
        }
    }
    let mut prod = BigInt::one();
    for i in 1..=d as u32 {
        prod *= qb.pow(i) - 1;
    }
    Ok(HodgeTable { d, q, h, alternating, product: prod })
}

/// `true` iff `j` is singular, i.e. divisible by `(q^{d+1} - 1) / (q - 1)`.
pub fn singular_test(d: usize, q: u64, j: u64) -> Result<bool> {
    let t = checked_pow(q, d as u32 + 1)? - 1;
    if j >= t {
        return Err(Error::OutOfRange { value: j, bound: t });
    }
    Ok(j.is_multiple_of(t / (q - 1)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaData {
    pub d: usize,
    pub q: u64,
    pub s: usize,
    /// `m_j^s` for `j = 1..=d`.
    pub exponents: Vec<i64>,
    /// Indices `1..=s` of `dz_1 ^ ... ^ dz_s`.
    pub wedge: Vec<usize>,
    /// Carter-Lusztig label of the representation generated by `omega_s`.
    pub label: String,
}

/// `m_j^s = max(0, s-j) q - max(0, s-j+1)`.
pub fn omega_exponent(q: u64, s: usize, j: usize) -> i64 {
    let (s, j, q) = (s as i64, j as i64, q as i64);
    (s - j).max(0) * q - (s - j + 1).max(0)
}

pub fn omega_data(d: usize, q: u64, s: usize) -> Result<OmegaData> {
    if s > d {
        return Err(Error::OutOfRange { value: s as u64, bound: d as u64 + 1 });
    }
    let exponents = (1..=d).map(|j| omega_exponent(q, s, j)).collect();
    let gens: Vec<String> = (s + 1..=d).map(|i| alloc::format!("t_{i}")).collect();
    let label = alloc::format!("Theta(1,{{{}}})", gens.join(","));
    Ok(OmegaData { d, q, s, exponents, wedge: (1..=s).collect(), label })
}

/// `gamma_j = prod_{a in F_q^j} (z_j + a_{j-1} z_{j-1} + ... + a_1 z_1 + a_0)` in `z_1..z_d`.
pub fn gamma(k: &FieldSpec, d: usize, j: usize, budget: usize) -> Result<MPoly> {
    if j == 0 || j > d {
        return Err(Error::OutOfRange { value: j as u64, bound: d as u64 + 1 });
    }
    let zj = MPoly::var(k, d, j - 1);
    let q = k.order();
    let mut forms = Vec::new();
    for idx in 0..q.pow(j as u32) {
        let mut rest = idx;
        let a0 = k.from_index(rest % q);
        rest /= q;
        let mut f = zj.add(k, &MPoly::constant(d, a0));
        for i in 1..j {
            let ai = k.from_index(rest % q);
            rest /= q;
            f = f.add(k, &MPoly::var(k, d, i - 1).scale(k, &ai));
        }
        forms.push(f);
    }
    product(k, d, &forms, budget)
}

pub fn invert(k: &FieldSpec, g: &FqMatrix) -> Result<FqMatrix> {
    let n = g.len();
    let mut m: Vec<Vec<FieldElement>> = g
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { k.one() } else { k.zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !m[r][c].is_zero()).ok_or(Error::NotInvertible)?;
        m.swap(c, piv);
        let inv = k.inv(&m[c][c])?;
        for x in m[c].iter_mut() {
            *x = k.mul(x, &inv);
        }
        let pivot_row = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = k.sub(x, &k.mul(&f, y));
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Images `g.Xi_c = sum_s a_{sc} Xi_s` for `g^{-1} = (a_{sc})`.
fn action_images(k: &FieldSpec, g: &FqMatrix) -> Result<Vec<MPoly>> {
    let a = invert(k, g)?;
    let n = g.len();
    Ok((0..n).map(|c| MPoly::linear(&(0..n).map(|s| a[s][c]).collect::<Vec<_>>())).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    /// `gamma_g = sum_s a_{s0} z_s` with `z_0 = 1`.
    pub gamma: Vec<FieldElement>,
    /// `g` fixes the homogeneous product of all linear forms.
    pub pi_invariant: bool,
    /// `Pi / g(Pi) = gamma_g^t` as rational functions.
    pub relation_holds: bool,
}

impl ActionReport {
    pub fn verified(&self) -> bool {
        self.pi_invariant && self.relation_holds
    }
}

pub fn action_check(d: usize, q: u64, g: &FqMatrix) -> Result<ActionReport> {
    action_check_with_budget(d, q, g, DEFAULT_TERM_BUDGET)
}

pub fn action_check_with_budget(d: usize, q: u64, g: &FqMatrix, budget: usize) -> Result<ActionReport> {
    let k = field_of(q)?;
    let n = d + 1;
    if g.len() != n || g.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("matrix has the wrong shape".into()));
    }
    let t = checked_pow(q, n as u32)? - 1;
    let images = action_images(&k, g)?;
    // Pi = N / Xi_0^t with N homogeneous of degree t
    let num = linear_form_product(&k, n, budget)?.neg(&k);
    let g_num = num.substitute(&k, &images, budget)?;
    let xi0_t = MPoly::var(&k, n, 0).pow(&k, t, budget)?;
    let l_t = images[0].pow(&k, t, budget)?;
    // Pi / g(Pi) = (N L^t) / (Xi_0^t g(N)) against gamma^t = L^t / Xi_0^t
    let lhs = num.mul(&k, &l_t).mul(&k, &xi0_t);
    let rhs = xi0_t.mul(&k, &g_num).mul(&k, &l_t);
    let gamma = (0..n).map(|s| images[0].terms.iter().find(|(e, _)| e[s] == 1).map_or(k.zero(), |(_, c)| *c)).collect();
    Ok(ActionReport { gamma, pi_invariant: g_num == num, relation_holds: lhs == rhs })
}

/// Generators of `GL_{d+1}(F_q)`: `diag(w, 1, ..., 1)` for a primitive `w`,
/// the transvection `1 + E_{01}`, and the adjacent transpositions `t_r`.
pub fn gl_generators(d: usize, q: u64) -> Result<Vec<FqMatrix>> {
    let k = field_of(q)?;
    let n = d + 1;
    let identity =
        || -> FqMatrix { (0..n).map(|i| (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect()).collect() };
    let mut out = Vec::new();
    let mut diag = identity();
    diag[0][0] = k.primitive_element();
    out.push(diag);
    let mut tv = identity();
    tv[0][1] = k.one();
    out.push(tv);
    for r in 1..=d {
        let mut s = identity();
        s.swap(r - 1, r);
        out.push(s);
    }
    Ok(out)
}

/// How an upper-triangular `g` scales `omega_s`: `gamma_j(g z) = lambda_j gamma_j(z)`
/// with `lambda_j = a_jj / a_00` for `g^{-1} = (a)`, checked symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaCheck {
    pub verified: bool,
    /// The scalar `c` with `g.omega_s = c omega_s`.
    pub character: FieldElement,
}

pub fn omega_character(d: usize, q: u64, s: usize, g: &FqMatrix) -> Result<OmegaCheck> {
    let k = field_of(q)?;
    let n = d + 1;
    if (0..n).any(|i| (0..i).any(|j| !g[i][j].is_zero())) {
        return Err(Error::Invalid("matrix is not upper triangular".into()));
    }
    let a = invert(&k, g)?;
    let inv00 = k.inv(&a[0][0])?;
    let lambda: Vec<FieldElement> = (0..n).map(|i| k.mul(&a[i][i], &inv00)).collect();
    // z_i -> (sum_{s <= i} a_{si} z_s) / a_00, affine because g^{-1} is triangular
    let images: Vec<MPoly> = (1..n)
        .map(|i| {
            let mut f = MPoly::constant(d, k.mul(&a[0][i], &inv00));
            for s in 1..=i {
                f = f.add(&k, &MPoly::var(&k, d, s - 1).scale(&k, &k.mul(&a[s][i], &inv00)));
            }
            f
        })
        .collect();
    let od = omega_data(d, q, s)?;
    let mut verified = true;
    let mut character = k.one();
    for j in 1..=d {
        let gj = gamma(&k, d, j, DEFAULT_TERM_BUDGET)?;
        let moved = gj.substitute(&k, &images, DEFAULT_TERM_BUDGET)?;
        verified &= moved == gj.scale(&k, &lambda[j]);
        let m = od.exponents[j - 1];
        let base = if m >= 0 { lambda[j] } else { k.inv(&lambda[j])? };
        character = k.mul(&character, &k.pow(&base, m.unsigned_abs()));
    }
    for l in lambda.iter().take(s + 1).skip(1) {
        character = k.mul(&character, l);
    }
    Ok(OmegaCheck { verified, character })
}

/// The `d = 1` instance as an engine cover, with its consistency checks.
#[derive(Clone, Debug)]
pub struct BridgeReport {
    pub q: u64,
    pub cover: CoverSpec,
    pub zeta: ZetaResult,
    /// `dim H^1_j` for general-position `j`.
    pub dims: BTreeMap<u64, usize>,
    /// Every general-position `j` has dimension `q - 1`.
    pub dims_ok: bool,
    /// `#X(F_{q^{2n}})` from the engine and by enumeration of the variety.
    pub engine_counts: Vec<BigInt>,
    pub dl_counts: Vec<u64>,
    pub counts_match: bool,
    /// The divisibility test and the crystal profile agree on every `j`.
    pub singular_agrees: bool,
    pub components: u64,
    pub components_ok: bool,
}

impl BridgeReport {
    pub fn all_ok(&self) -> bool {
        self.dims_ok && self.counts_match && self.singular_agrees && self.components_ok
    }
}

/// The Drinfeld curve cover over `F_{q^2}` with `t = q^2 - 1`.
pub fn drinfeld_cover(q: u64) -> Result<CoverSpec> {
    let spec = build_pi_gl(1, q)?;
    let (p, a) = prime_power(q)?;
    let big = FieldSpec::new(p, 2 * a)?;
    let emb = Embedding::new(&spec.field, &big)?;
    let pi = spec.pi.to_univariate(&spec.field).expect("univariate for d = 1");
    CoverSpec::new(&big, spec.t, emb.apply_poly(&spec.field, &big, &pi))
}

pub fn dl_curve_bridge(q: u64, n_max: usize) -> Result<BridgeReport> {
    let cover = drinfeld_cover(q)?;
    let z = zeta(&cover, n_max)?;
    let prof = crystal::profile(&cover)?;
    let t = cover.t();
    let dims: BTreeMap<u64, usize> = z.char_polys.iter().map(|(&j, cp)| (j, cp.dim)).collect();
    let general = (1..t).filter(|&j| prof.eigen(j).general_position).count();
    let dims_ok = dims.len() == general && dims.values().all(|&d| d as u64 == q - 1);
    let mut singular_agrees = true;
    for j in 0..t {
        singular_agrees &= singular_test(1, q, j)? == !prof.eigen(j).general_position;
    }
    let dl_counts = (1..=n_max).map(|n| count_dl_affine(1, q, 2 * n)).collect::<Result<Vec<_>>>()?;
    let counts_match = z.counts.iter().zip(&dl_counts).all(|(a, b)| *a == BigInt::from(*b));
    Ok(BridgeReport {
        q,
        dims,
        dims_ok,
        engine_counts: z.counts.clone(),
        dl_counts,
        counts_match,
        singular_agrees,
        components: z.components,
        components_ok: z.components == q - 1,
        cover,
        zeta: z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drinfeld_pi_small() {
        let s = build_pi_gl(1, 2).unwrap();
        let k = &s.field;
        assert_eq!(s.pi.to_univariate(k).unwrap(), [k.zero(), k.one(), k.one()]);
        assert_eq!(s.closed_form, Some(true));
        assert_eq!(s.factors, 3);
    }

    #[test]
    fn omega_exponents() {
        assert_eq!(omega_data(2, 5, 0).unwrap().exponents, [0, 0]);
        assert_eq!(omega_data(2, 5, 1).unwrap().exponents, [-1, 0]);
        assert_eq!(omega_data(2, 5, 2).unwrap().exponents, [3, -1]);
        assert_eq!(omega_data(2, 5, 0).unwrap().label, "Theta(1,{t_1,t_2})");
    }

    #[test]
    fn hodge_small() {
        let h = hodge_table(2, 2).unwrap();
        assert_eq!(h.h, [1, 6, 8].map(BigInt::from));
        assert!(h.identity_holds());
    }
}
