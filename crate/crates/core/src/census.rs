//! Brute-force point counts and character sums.
//!
//! Everything here is plain enumeration over `F_{q^n}` and is meant to be
//! obviously correct rather than fast. Character sums are kept as histograms
//! of character indices, so they are exact elements of `Z[zeta_t]`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::character::Character;
use crate::arith::field::{FieldElement, FieldSpec};
use crate::arith::fpoly;
use crate::arith::padic::PadicContext;
use crate::engine::approx::{AMatrix, Approx, EXACT};
use crate::engine::charpoly::EigenRun;
use crate::engine::cyclo::{Cyc, CycloRing};
use crate::engine::CoverSpec;
use crate::error::{Error, Result};

/// Default number of field evaluations a single call may perform.
pub const DEFAULT_BUDGET: u64 = 1 << 26;

/// The sum attached to `j` is `sum_x chi^j(Pi(x))^ORIENTATION`.
pub const ORIENTATION: i64 = -1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub n: usize,
    /// `|X(F_{q^n})|`.
    pub total: u64,
    /// `histogram[k] = #{x : Pi(x) != 0, chi_n(Pi(x)) = zeta^k}`.
    pub histogram: Vec<u64>,
    /// `S_j(n)` in `Z[zeta_t]`, power basis.
    pub sums: Vec<Cyc>,
    /// `S_j(n)` when it is a rational integer.
    pub integer_sums: Vec<Option<BigInt>>,
}

impl CountReport {
    pub fn sum(&self, j: u64) -> &Cyc {
        &self.sums[j as usize]
    }
}

#[cfg(feature = "parallel")]
fn chunked<R: Send>(len: u64, f: impl Fn(u64, u64) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    let chunk = (len / 64).max(1 << 12);
    let starts: Vec<u64> = (0..len).step_by(chunk as usize).collect();
    starts.par_iter().map(|&s| f(s, (s + chunk).min(len))).collect()
}

#[cfg(not(feature = "parallel"))]
fn chunked<R>(len: u64, f: impl Fn(u64, u64) -> R) -> Vec<R> {
    vec![f(0, len)]
}

fn check_budget(needed: u64, budget: u64) -> Result<()> {
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

fn field_size(q: u64, n: usize) -> Option<u64> {
    q.checked_pow(n as u32)
}

/// Histogram of `chi_n(Pi(x))` over `x in F_{q^n}` with `Pi(x) != 0`.
fn index_histogram(cover: &CoverSpec, chi: &Character) -> Vec<u64> {
    let base = cover.field();
    let big = chi.field();
    let pi = chi.embedding().apply_poly(base, big, cover.pi());
    let t = cover.t() as usize;
    let parts = chunked(big.order(), |lo, hi| {
        let mut h = vec![0u64; t];
        for i in lo..hi {
            let x = big.from_index(i);
            if let Some(k) = chi.index(&fpoly::eval(big, &pi, &x)) {
                h[k as usize] += 1;
            }
        }
        h
    });
    let mut h = vec![0u64; t];
    for part in parts {
        for (a, b) in h.iter_mut().zip(part) {
            *a += b;
        }
    }
    h
}

fn report_from_histogram(t: u64, n: usize, histogram: Vec<u64>) -> CountReport {
    let ring = CycloRing::new(t);
    let mut sums = Vec::with_capacity(t as usize);
    for j in 0..t {
        let mut counts = vec![0i64; t as usize];
        for (k, &c) in histogram.iter().enumerate() {
            let e = (ORIENTATION * (j * k as u64 % t) as i64).rem_euclid(t as i64);
            counts[e as usize] += c as i64;
        }
        sums.push(ring.from_exponent_counts(&counts));
    }
    let integer_sums = sums.iter().map(|s| ring.as_integer(s)).collect();
    CountReport { n, total: t * histogram[0], histogram, sums, integer_sums }
}

/// Counts `X(F_{q^n})` and all eigenspace sums `S_j(n)`.
pub fn count_cover(cover: &CoverSpec, n: usize) -> Result<CountReport> {
    count_cover_with_budget(cover, n, DEFAULT_BUDGET)
}

pub fn count_cover_with_budget(cover: &CoverSpec, n: usize, budget: u64) -> Result<CountReport> {
    let size = field_size(cover.q(), n).ok_or(Error::BudgetExceeded { needed: u64::MAX, budget })?;
    check_budget(size, budget)?;
    let chi = Character::new(cover.field(), cover.t())?.at_level(n)?;
    Ok(report_from_histogram(cover.t(), n, index_histogram(cover, &chi)))
}

/// Same as [`count_cover`] with the character built on another generator.
pub fn count_cover_with_generator(cover: &CoverSpec, n: usize, g: FieldElement) -> Result<CountReport> {
    let size = field_size(cover.q(), n).unwrap_or(u64::MAX);
    check_budget(size, DEFAULT_BUDGET)?;
    let chi = Character::with_generator(cover.field(), cover.t(), g)?.at_level(n)?;
    Ok(report_from_histogram(cover.t(), n, index_histogram(cover, &chi)))
}

/// Counts pairs `(x, xi)` in `F_{q^n}^2` with `xi^t Pi(x) = 1` directly.
pub fn count_pairs(cover: &CoverSpec, n: usize, budget: u64) -> Result<u64> {
    let (big, emb) = cover.field().extension(n)?;
    let size = big.order();
    check_budget(size.saturating_mul(size), budget)?;
    let pi = emb.apply_poly(cover.field(), &big, cover.pi());
    let xi_t: Vec<FieldElement> = big.elements().map(|xi| big.pow(&xi, cover.t())).collect();
    let mut total = 0;
    for x in big.elements() {
        let v = fpoly::eval(&big, &pi, &x);
        total += xi_t.iter().filter(|&&u| big.mul(&u, &v) == big.one()).count() as u64;
    }
    Ok(total)
}

fn det(k: &FieldSpec, mut m: Vec<Vec<FieldElement>>) -> FieldElement {
    let n = m.len();
    let mut acc = k.one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return k.zero();
        };
        if piv != c {
            m.swap(piv, c);
            acc = k.neg(&acc);
        }
        acc = k.mul(&acc, &m[c][c]);
        let inv = k.inv(&m[c][c]).expect("nonzero pivot");
        for r in c + 1..n {
            let f = k.mul(&m[r][c], &inv);
            if f.is_zero() {
                continue;
            }
            for cc in c..n {
                let v = k.sub(&m[r][cc], &k.mul(&f, &m[c][cc]));
                m[r][cc] = v;
            }
        }
    }
    acc
}

/// `#{(Xi_0, ..., Xi_d) in F_{q^n}^{d+1} : delta^{q-1} = (-1)^d}` with
/// `delta = det(Xi_i^{q^j})`.
pub fn count_dl_affine(d: usize, q: u64, n: usize) -> Result<u64> {
    count_dl_affine_with_budget(d, q, n, DEFAULT_BUDGET)
}

pub fn count_dl_affine_with_budget(d: usize, q: u64, n: usize, budget: u64) -> Result<u64> {
    let (p, a) = prime_power(q)?;
    let k = FieldSpec::new(p, a * n)?;
    let size = k.order();
    let needed = (size as u128).pow(d as u32 + 1);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed: u64::try_from(needed).unwrap_or(u64::MAX), budget });
    }
    let target = if d.is_multiple_of(2) { k.one() } else { k.neg(&k.one()) };
    let mut count = 0;
    let mut tuple = vec![0u64; d + 1];
    loop {
        let xs: Vec<FieldElement> = tuple.iter().map(|&i| k.from_index(i)).collect();
        let m: Vec<Vec<FieldElement>> = xs
            .iter()
            .map(|x| {
                let mut row = Vec::with_capacity(d + 1);
                let mut y = *x;
                for _ in 0..=d {
                    row.push(y);
                    y = k.pow(&y, q);
                }
                row
            })
            .collect();
        if k.pow(&det(&k, m), q - 1) == target {
            count += 1;
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos > d {
                return Ok(count);
            }
            tuple[pos] += 1;
            if tuple[pos] < size {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

/// `(p, a)` with `q = p^a`.
pub fn prime_power(q: u64) -> Result<(u64, usize)> {
    let f = crate::arith::field::factor_u64(q);
    match f.as_slice() {
        [(p, a)] => Ok((*p, *a as usize)),
        _ => Err(Error::Invalid(alloc::format!("{q} is not a prime power"))),
    }
}

/// One trace equation `-Tr(Frob_q^n | H^1_j) = S_j(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceCheck {
    pub j: u64,
    pub n: usize,
    /// From the exact characteristic polynomial, in `Z[zeta_t]`.
    pub engine: Cyc,
    pub census: Cyc,
    /// The exact values agree.
    pub exact_match: bool,
    /// The `p`-adic trace of the matrix power agrees with the census value.
    pub matrix_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzReport {
    pub checks: Vec<TraceCheck>,
}

impl LefschetzReport {
    pub fn all_match(&self) -> bool {
        self.checks.iter().all(|c| c.exact_match && c.matrix_match)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &TraceCheck> {
        self.checks.iter().filter(|c| !(c.exact_match && c.matrix_match))
    }
}

/// Rewrites an element of `Z[zeta_small]` in `Z[zeta_big]`, `small | big`.
pub fn widen(small: &CycloRing, big: &CycloRing, a: &Cyc) -> Cyc {
    let step = (big.n / small.n) as usize;
    let mut v = vec![BigInt::zero(); big.n as usize];
    for (i, c) in a.iter().enumerate() {
        v[i * step] += c;
    }
    big.reduce(&v)
}

/// Compares the engine's traces with census sums for `n = 1..=n_max`.
pub fn lefschetz_compare(cover: &CoverSpec, run: &EigenRun, n_max: usize) -> Result<LefschetzReport> {
    let reports: Vec<CountReport> = (1..=n_max).map(|n| count_cover(cover, n)).collect::<Result<_>>()?;
    lefschetz_compare_counts(cover, run, &reports)
}

pub fn lefschetz_compare_counts(cover: &CoverSpec, run: &EigenRun, reports: &[CountReport]) -> Result<LefschetzReport> {
    let t = cover.t();
    let ring = CycloRing::new(t);
    let ctx = PadicContext::new(cover.field(), run.working)?;
    let zeta = Character::new(cover.field(), t)?.root_of_unity(&ctx, 1);
    let mut checks = Vec::new();
    for (&j, cp) in &run.exact {
        let traces = cp.neg_traces(reports.len());
        let small = cp.ring();
        let m = &run.frob_q[&j].matrix;
        let mut power = AMatrix::identity(&ctx, m.rows);
        for (i, report) in reports.iter().enumerate() {
            let engine = widen(&small, &ring, &traces[i]);
            let census = report.sum(j).clone();
            power = power.mul(&ctx, m);
            let mut trace = Approx::zero(EXACT);
            for k in 0..m.rows {
                trace = trace.add(&ctx, power.get(k, k));
            }
            let expected = Approx::new(&ctx, &ring.embed(&ctx, &zeta, &census), 0, EXACT);
            // agreement to the precision the matrix power carries
            let matrix_match = trace.add(&ctx, &expected).is_zero();
            checks.push(TraceCheck { j, n: report.n, exact_match: engine == census, engine, census, matrix_match });
        }
    }
    Ok(LefschetzReport { checks })
}
