//! Small dense matrices over `Z_q / p^N`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::padic::{PadicContext, PadicElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    /// Row-major.
    pub data: Vec<PadicElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![PadicElement::default(); rows * cols] }
    }

    pub fn identity(ctx: &PadicContext, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ctx.one();
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &PadicElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: PadicElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, ctx: &PadicContext, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = ctx.add(out.get(i, j), &ctx.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Entry-wise `sigma^k`.
    pub fn sigma_pow(&self, ctx: &PadicContext, k: usize) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| ctx.sigma_pow(x, k)).collect() }
    }

    pub fn trace(&self, ctx: &PadicContext) -> PadicElement {
        (0..self.rows.min(self.cols)).fold(ctx.zero(), |acc, i| ctx.add(&acc, self.get(i, i)))
    }

    /// Entries reinterpreted at a lower precision.
    pub fn truncate(&self, to: &PadicContext, from: &PadicContext) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| to.from_digits(from.digits(x))).collect(),
        }
    }

    /// Smallest valuation of an entry (`None` for the zero matrix).
    pub fn min_valuation(&self, ctx: &PadicContext) -> Option<u32> {
        self.data.iter().filter(|x| !x.is_zero()).map(|x| ctx.valuation(x)).min()
    }
}

/// `det(T I - M)` by Berkowitz's division-free algorithm; ascending, monic.
pub fn char_poly(ctx: &PadicContext, m: &Matrix) -> Vec<PadicElement> {
    let n = m.rows;
    assert_eq!(n, m.cols);
    // Coefficients of the characteristic polynomial, descending.
    let mut c = vec![ctx.one()];
    for r in 0..n {
        // Leading principal (r+1)x(r+1) block: A = [[B, col], [row, a]]
        let a = *m.get(r, r);
        let col: Vec<PadicElement> = (0..r).map(|i| *m.get(i, r)).collect();
        let row: Vec<PadicElement> = (0..r).map(|j| *m.get(r, j)).collect();
        // Toeplitz column: 1, -a, -row col, -row B col, ...
        let mut toeplitz = vec![ctx.one(), ctx.neg(&a)];
        let mut v = col.clone();
        for _ in 0..r {
            let s = row.iter().zip(&v).fold(ctx.zero(), |acc, (x, y)| ctx.add(&acc, &ctx.mul(x, y)));
            toeplitz.push(ctx.neg(&s));
            let mut nv = vec![ctx.zero(); r];
            for (i, slot) in nv.iter_mut().enumerate() {
                *slot = (0..r).fold(ctx.zero(), |acc, k| ctx.add(&acc, &ctx.mul(m.get(i, k), &v[k])));
            }
            v = nv;
        }
        let mut next = vec![ctx.zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut acc = ctx.zero();
            for (k, ck) in c.iter().enumerate() {
                if i >= k && i - k < toeplitz.len() {
                    acc = ctx.add(&acc, &ctx.mul(&toeplitz[i - k], ck));
                }
            }
            *slot = acc;
        }
        c = next;
    }
    c.reverse();
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;

    #[test]
    fn berkowitz_matches_cofactor_expansion() {
        let k = FieldSpec::new(5, 1).unwrap();
        let ctx = PadicContext::new(&k, 6).unwrap();
        let vals = [2i64, -1, 3, 4, 0, 7, -5, 1, 6];
        let m = Matrix { rows: 3, cols: 3, data: vals.iter().map(|&v| ctx.from_i64(v)).collect() };
        let cp = char_poly(&ctx, &m);
        let e = |r: usize, c: usize| vals[3 * r + c];
        // rule of Sarrus
        let det = e(0, 0) * e(1, 1) * e(2, 2) + e(0, 1) * e(1, 2) * e(2, 0) + e(0, 2) * e(1, 0) * e(2, 1)
            - e(0, 2) * e(1, 1) * e(2, 0)
            - e(0, 0) * e(1, 2) * e(2, 1)
            - e(0, 1) * e(1, 0) * e(2, 2);
        let expect = [-det, 24, -8, 1];
        assert_eq!(cp, expect.iter().map(|&v| ctx.from_i64(v)).collect::<Vec<_>>());
    }
}
