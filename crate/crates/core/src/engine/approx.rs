//! Elements of `Q_q` with tracked absolute precision.
//!
//! Frobenius matrices in the monomial basis can have small denominators
//! (the basis need not be the crystalline lattice for the lift `x -> x^p`),
//! so composition and characteristic polynomials are done with values
//! `p^e u` that remember how many digits are still correct.

use alloc::vec;
use alloc::vec::Vec;

use super::matrix::Matrix;
use super::reduce::{reduce_in, Form, LiftedCover};
use crate::arith::padic::{PadicContext, PadicElement};
use crate::error::{Error, Result};

/// Precision of exactly known values.
pub const EXACT: i32 = 1 << 20;

/// `p^e d` with `d` a unit (or zero), known modulo `p^prec`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Approx {
    pub e: i32,
    pub d: PadicElement,
    pub prec: i32,
}

impl Approx {
    pub fn zero(prec: i32) -> Self {
        Approx { e: prec, d: PadicElement::default(), prec }
    }

    /// `p^shift x`, known modulo `p^prec`.
    pub fn new(ctx: &PadicContext, x: &PadicElement, shift: i32, prec: i32) -> Self {
        let prec = prec.min(shift + ctx.precision() as i32);
        if x.is_zero() {
            return Self::zero(prec);
        }
        let v = ctx.valuation(x);
        if shift + v as i32 >= prec {
            return Self::zero(prec);
        }
        let d = ctx.div_p_pow(x, v).expect("valuation divides");
        Approx { e: shift + v as i32, d, prec }
    }

    pub fn from_int(ctx: &PadicContext, c: i64) -> Self {
        Self::new(ctx, &ctx.from_i64(c), 0, EXACT)
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero()
    }

    /// Valuation, or the precision for an indistinguishable-from-zero value.
    pub fn val(&self) -> i32 {
        if self.is_zero() {
            self.prec
        } else {
            self.e
        }
    }

    pub fn mul(&self, ctx: &PadicContext, o: &Approx) -> Approx {
        let prec = (self.prec + o.val()).min(o.prec + self.val()).min(EXACT);
        if self.is_zero() || o.is_zero() {
            return Self::zero(prec);
        }
        Self::new(ctx, &ctx.mul(&self.d, &o.d), self.e + o.e, prec)
    }

    pub fn add(&self, ctx: &PadicContext, o: &Approx) -> Approx {
        let prec = self.prec.min(o.prec);
        if self.is_zero() {
            return Self::new(ctx, &o.d, o.e, prec);
        }
        if o.is_zero() {
            return Self::new(ctx, &self.d, self.e, prec);
        }
        let e = self.e.min(o.e);
        let a = ctx.mul_p_pow(&self.d, (self.e - e) as u32);
        let b = ctx.mul_p_pow(&o.d, (o.e - e) as u32);
        Self::new(ctx, &ctx.add(&a, &b), e, prec)
    }

    pub fn neg(&self, ctx: &PadicContext) -> Approx {
        Approx { d: ctx.neg(&self.d), ..*self }
    }

    pub fn sub(&self, ctx: &PadicContext, o: &Approx) -> Approx {
        self.add(ctx, &o.neg(ctx))
    }

    pub fn inv(&self, ctx: &PadicContext) -> Result<Approx> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        let d = ctx.inv(&self.d)?;
        Ok(Self::new(ctx, &d, -self.e, self.prec - 2 * self.e))
    }

    pub fn sigma(&self, ctx: &PadicContext) -> Approx {
        Approx { d: ctx.sigma(&self.d), ..*self }
    }

    /// The value as an integral element of `out`, if it is integral and
    /// known to `out`'s precision.
    pub fn to_integral(&self, ctx: &PadicContext, out: &PadicContext) -> Option<PadicElement> {
        if self.prec < out.precision() as i32 || self.val() < 0 {
            return None;
        }
        if self.is_zero() || self.e >= out.precision() as i32 {
            return Some(out.zero());
        }
        let x = ctx.mul_p_pow(&self.d, self.e as u32);
        Some(out.from_digits(ctx.digits(&x)))
    }
}

/// Dense matrix of [`Approx`] entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Approx>,
}

impl AMatrix {
    pub fn from_columns(rows: usize, columns: &[Vec<Approx>]) -> Self {
        let cols = columns.len();
        let mut data = vec![Approx::zero(EXACT); rows * cols];
        for (c, col) in columns.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                data[r * cols + c] = *x;
            }
        }
        AMatrix { rows, cols, data }
    }

    pub fn identity(ctx: &PadicContext, n: usize) -> Self {
        let cols: Vec<Vec<Approx>> = (0..n)
            .map(|c| (0..n).map(|r| if r == c { Approx::from_int(ctx, 1) } else { Approx::zero(EXACT) }).collect())
            .collect();
        Self::from_columns(n, &cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Approx {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Approx) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, ctx: &PadicContext, o: &AMatrix) -> AMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = AMatrix { rows: self.rows, cols: o.cols, data: Vec::with_capacity(self.rows * o.cols) };
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Approx::zero(EXACT);
                for k in 0..self.cols {
                    acc = acc.add(ctx, &self.get(i, k).mul(ctx, o.get(k, j)));
                }
                out.data.push(acc);
            }
        }
        out
    }

    pub fn sigma(&self, ctx: &PadicContext) -> AMatrix {
        AMatrix { data: self.data.iter().map(|x| x.sigma(ctx)).collect(), ..self.clone() }
    }

    /// Gauss-Jordan inverse with smallest-valuation pivots.
    pub fn inverse(&self, ctx: &PadicContext) -> Result<AMatrix> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        let mut a = self.clone();
        let mut inv = AMatrix::identity(ctx, n);
        for c in 0..n {
            let piv = (c..n)
                .filter(|&r| !a.get(r, c).is_zero())
                .min_by_key(|&r| a.get(r, c).val())
                .ok_or(Error::NotInvertible)?;
            for k in 0..n {
                a.data.swap(c * n + k, piv * n + k);
                inv.data.swap(c * n + k, piv * n + k);
            }
            let pinv = a.get(c, c).inv(ctx)?;
            for k in 0..n {
                let v = a.get(c, k).mul(ctx, &pinv);
                a.set(c, k, v);
                let v = inv.get(c, k).mul(ctx, &pinv);
                inv.set(c, k, v);
            }
            for r in 0..n {
                if r == c || a.get(r, c).is_zero() {
                    continue;
                }
                let f = *a.get(r, c);
                for k in 0..n {
                    let v = a.get(r, k).sub(ctx, &f.mul(ctx, a.get(c, k)));
                    a.set(r, k, v);
                    let v = inv.get(r, k).sub(ctx, &f.mul(ctx, inv.get(c, k)));
                    inv.set(r, k, v);
                }
            }
        }
        Ok(inv)
    }

    pub fn min_precision(&self) -> i32 {
        self.data.iter().map(|x| x.prec).min().unwrap_or(EXACT)
    }

    pub fn min_valuation(&self) -> i32 {
        self.data.iter().filter(|x| !x.is_zero()).map(|x| x.e).min().unwrap_or(EXACT)
    }

    /// Entries as integral elements of `out`; `None` if some entry is not
    /// integral or not known to `out`'s precision.
    pub fn to_integral(&self, ctx: &PadicContext, out: &PadicContext) -> Option<Matrix> {
        let data = self.data.iter().map(|x| x.to_integral(ctx, out)).collect::<Option<Vec<_>>>()?;
        Some(Matrix { rows: self.rows, cols: self.cols, data })
    }
}

/// Monomial coordinates of a form as precision-tracked values.
pub fn coordinates(lc: &LiftedCover, j: u64, form: &Form) -> Result<Vec<Approx>> {
    let red = reduce_in(lc, j, form)?;
    Ok(red.coords.iter().map(|c| Approx::new(&lc.ctx, c, -red.exp, red.precision)).collect())
}

/// `det(T I - M)` by Berkowitz's division-free algorithm; ascending, monic.
pub fn char_poly(ctx: &PadicContext, m: &AMatrix) -> Vec<Approx> {
    let n = m.rows;
    assert_eq!(n, m.cols);
    let one = Approx::from_int(ctx, 1);
    let zero = Approx::zero(EXACT);
    let dot = |a: &[Approx], b: &[Approx]| a.iter().zip(b).fold(zero, |acc, (x, y)| acc.add(ctx, &x.mul(ctx, y)));
    // descending coefficients of the leading principal minors
    let mut c = vec![one];
    for r in 0..n {
        let col: Vec<Approx> = (0..r).map(|i| *m.get(i, r)).collect();
        let row: Vec<Approx> = (0..r).map(|k| *m.get(r, k)).collect();
        let mut toeplitz = vec![one, m.get(r, r).neg(ctx)];
        let mut v = col;
        for _ in 0..r {
            toeplitz.push(dot(&row, &v).neg(ctx));
            v = (0..r).map(|i| dot(&(0..r).map(|k| *m.get(i, k)).collect::<Vec<_>>(), &v)).collect();
        }
        c = (0..r + 2)
            .map(|i| {
                (0..c.len())
                    .filter(|&k| i >= k && i - k < toeplitz.len())
                    .fold(zero, |acc, k| acc.add(ctx, &toeplitz[i - k].mul(ctx, &c[k])))
            })
            .collect();
    }
    c.reverse();
    c
}
