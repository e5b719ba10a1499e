//! Sparse multivariate polynomials over `F_q`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::field::{FieldElement, FieldSpec};
use crate::error::{Error, Result};

/// Exponent vector to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MPoly {
    pub vars: usize,
    pub terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MPoly {
    pub fn zero(vars: usize) -> Self {
        MPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: FieldElement) -> Self {
        let mut f = Self::zero(vars);
        if !c.is_zero() {
            f.terms.insert(vec![0; vars], c);
        }
        f
    }

    pub fn one(k: &FieldSpec, vars: usize) -> Self {
        Self::constant(vars, k.one())
    }

    /// `sum_i coeffs[i] x_i`.
    pub fn linear(coeffs: &[FieldElement]) -> Self {
        let vars = coeffs.len();
        let mut f = Self::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; vars];
                e[i] = 1;
                f.terms.insert(e, *c);
            }
        }
        f
    }

    pub fn var(k: &FieldSpec, vars: usize, i: usize) -> Self {
        let mut c = vec![k.zero(); vars];
        c[i] = k.one();
        Self::linear(&c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, k: &FieldSpec, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            let v = match out.terms.get(e) {
                Some(x) => k.add(x, c),
                None => *c,
            };
            if v.is_zero() {
                out.terms.remove(e);
            } else {
                out.terms.insert(e.clone(), v);
            }
        }
        out
    }

    pub fn neg(&self, k: &FieldSpec) -> MPoly {
        MPoly { vars: self.vars, terms: self.terms.iter().map(|(e, c)| (e.clone(), k.neg(c))).collect() }
    }

    pub fn sub(&self, k: &FieldSpec, o: &MPoly) -> MPoly {
        self.add(k, &o.neg(k))
    }

    pub fn scale(&self, k: &FieldSpec, c: &FieldElement) -> MPoly {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        MPoly { vars: self.vars, terms: self.terms.iter().map(|(e, x)| (e.clone(), k.mul(x, c))).collect() }
    }

    pub fn mul(&self, k: &FieldSpec, o: &MPoly) -> MPoly {
        let mut terms: BTreeMap<Vec<u32>, FieldElement> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let v = k.mul(c1, c2);
                let entry = terms.entry(e).or_insert_with(|| k.zero());
                *entry = k.add(entry, &v);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { vars: self.vars, terms }
    }

    /// `self^e`, failing when an intermediate result exceeds `budget` terms.
    pub fn pow(&self, k: &FieldSpec, mut e: u64, budget: usize) -> Result<MPoly> {
        let mut base = self.clone();
        let mut acc = Self::one(k, self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = checked(acc.mul(k, &base), budget)?;
            }
            e >>= 1;
            if e > 0 {
                base = checked(base.mul(k, &base), budget)?;
            }
        }
        Ok(acc)
    }

    /// Substitutes `x_i -> images[i]`.
    pub fn substitute(&self, k: &FieldSpec, images: &[MPoly], budget: usize) -> Result<MPoly> {
        let vars = images.first().map_or(self.vars, |f| f.vars);
        let mut out = Self::zero(vars);
        // cache powers of each image
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|f| vec![Self::one(k, vars), f.clone()]).collect();
        for (e, c) in &self.terms {
            let mut term = Self::constant(vars, *c);
            for (i, &ei) in e.iter().enumerate() {
                while powers[i].len() <= ei as usize {
                    let next = checked(powers[i].last().unwrap().mul(k, &images[i]), budget)?;
                    powers[i].push(next);
                }
                term = checked(term.mul(k, &powers[i][ei as usize]), budget)?;
            }
            out = checked(out.add(k, &term), budget)?;
        }
        Ok(out)
    }

    /// Coefficients of a univariate polynomial, ascending.
    pub fn to_univariate(&self, k: &FieldSpec) -> Option<Vec<FieldElement>> {
        if self.vars != 1 {
            return None;
        }
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![k.zero(); deg + 1];
        for (e, c) in &self.terms {
            out[e[0] as usize] = *c;
        }
        Some(out)
    }

    pub fn from_univariate(f: &[FieldElement]) -> MPoly {
        let mut out = Self::zero(1);
        for (i, c) in f.iter().enumerate() {
            if !c.is_zero() {
                out.terms.insert(vec![i as u32], *c);
            }
        }
        out
    }
}

fn checked(f: MPoly, budget: usize) -> Result<MPoly> {
    if f.len() > budget {
        return Err(Error::BudgetExceeded { needed: f.len() as u64, budget: budget as u64 });
    }
    Ok(f)
}

/// Product of polynomials with a term budget on every partial product.
pub fn product<'a>(
    k: &FieldSpec,
    vars: usize,
    factors: impl IntoIterator<Item = &'a MPoly>,
    budget: usize,
) -> Result<MPoly> {
    let mut acc = MPoly::one(k, vars);
    for f in factors {
        acc = checked(acc.mul(k, f), budget)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_sum() {
        let k = FieldSpec::new(3, 1).unwrap();
        let x = MPoly::var(&k, 2, 0);
        let y = MPoly::var(&k, 2, 1);
        let s = x.add(&k, &y);
        let sq = s.pow(&k, 3, 100).unwrap();
        // Frobenius: (x + y)^3 = x^3 + y^3 in characteristic 3
        let expected = x.pow(&k, 3, 10).unwrap().add(&k, &y.pow(&k, 3, 10).unwrap());
        assert_eq!(sq, expected);
    }

    #[test]
    fn substitution() {
        let k = FieldSpec::new(5, 1).unwrap();
        let x = MPoly::var(&k, 1, 0);
        let f = x.mul(&k, &x).add(&k, &MPoly::one(&k, 1));
        let shifted = x.add(&k, &MPoly::one(&k, 1));
        let g = f.substitute(&k, &[shifted], 100).unwrap();
        let expected = MPoly::from_univariate(&[k.from_u64(2), k.from_u64(2), k.one()]);
        assert_eq!(g, expected);
    }
}
