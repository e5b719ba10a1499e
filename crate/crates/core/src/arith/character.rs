//! Multiplicative characters of order `t`, recorded by exponent index.
//!
//! A character value `zeta^k` is stored as the integer `k in [0, t)`. On the
//! base field, `k(u) = log_g(u) mod t` for a fixed generator `g`, which is the
//! index form of `u -> omega(u)^{(q-1)/t}`. On `F_{q^n}` the character is
//! `chi o Norm`, realised through the generator of the larger field.

use alloc::collections::BTreeMap;

use super::field::{factor_u64, Embedding, FieldElement, FieldSpec};
use super::padic::{PadicContext, PadicElement};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Character {
    base: FieldSpec,
    field: FieldSpec,
    embedding: Embedding,
    t: u64,
    level: usize,
    /// Generator of the base multiplicative group.
    generator: FieldElement,
    /// `zeta^i -> i` for `zeta = G^{(Q-1)/t}` in the current field.
    table: BTreeMap<FieldElement, u64>,
    /// `log_g Norm(G) mod t`.
    mult: u64,
}

impl Character {
    /// The order-`t` character attached to the smallest primitive element.
    pub fn new(field: &FieldSpec, t: u64) -> Result<Self> {
        Self::with_generator(field, t, field.primitive_element())
    }

    pub fn with_generator(field: &FieldSpec, t: u64, g: FieldElement) -> Result<Self> {
        let q1 = field.order() - 1;
        if t == 0 || !q1.is_multiple_of(t) {
            return Err(Error::OrderDoesNotDivide { t, q_minus_one: q1 });
        }
        if g.is_zero() || field.mult_order(&g) != q1 {
            return Err(Error::Invalid("character generator is not primitive".into()));
        }
        let zeta = field.pow(&g, q1 / t);
        Ok(Character {
            base: field.clone(),
            field: field.clone(),
            embedding: Embedding::new(field, field)?,
            t,
            level: 1,
            generator: g,
            table: power_table(field, &zeta, t),
            mult: 1,
        })
    }

    pub fn order(&self) -> u64 {
        self.t
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn base_field(&self) -> &FieldSpec {
        &self.base
    }

    /// The field `F_{q^n}` this character is defined on.
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn generator(&self) -> &FieldElement {
        &self.generator
    }

    /// `chi o Norm` on `F_{q^n}`.
    pub fn at_level(&self, n: usize) -> Result<Self> {
        if n == 1 {
            let mut c = self.clone();
            c.field = self.base.clone();
            c.embedding = Embedding::new(&self.base, &self.base)?;
            c.table =
                power_table(&self.base, &self.base.pow(&self.generator, (self.base.order() - 1) / self.t), self.t);
            c.mult = 1;
            c.level = 1;
            return Ok(c);
        }
        let (big, emb) = self.base.extension(n)?;
        let big_g = big.primitive_element();
        let q_big = big.order();
        let zeta_big = big.pow(&big_g, (q_big - 1) / self.t);
        let zeta_base = self.base.pow(&self.generator, (self.base.order() - 1) / self.t);
        let base_table = power_table(&big, &emb.apply(&self.base, &big, &zeta_base), self.t);
        let mult = *base_table.get(&zeta_big).ok_or(Error::Invalid("norm map not compatible".into()))?;
        Ok(Character {
            base: self.base.clone(),
            table: power_table(&big, &zeta_big, self.t),
            field: big,
            embedding: emb,
            t: self.t,
            level: n,
            generator: self.generator,
            mult,
        })
    }

    /// Exponent `k` with `chi(u) = zeta^k`; `None` at zero.
    pub fn index(&self, u: &FieldElement) -> Option<u64> {
        if u.is_zero() {
            return None;
        }
        let e = (self.field.order() - 1) / self.t;
        let r = self.field.pow(u, e);
        let k = self.table.get(&r).expect("power lands in the t-torsion");
        Some(k * self.mult % self.t)
    }

    /// `omega(g)^{k(q-1)/t}` in `Z_q`, the Teichmuller realisation of `zeta^k`.
    pub fn root_of_unity(&self, ctx: &PadicContext, k: u64) -> PadicElement {
        let e = (self.base.order() - 1) / self.t;
        let w = ctx.teichmuller(&self.generator);
        ctx.pow(&w, e * (k % self.t))
    }

    /// `chi(u)` realised in `Z_q`; requires a base-level character.
    pub fn value_padic(&self, ctx: &PadicContext, u: &FieldElement) -> Option<PadicElement> {
        self.index(u).map(|k| self.root_of_unity(ctx, k))
    }
}

fn power_table(k: &FieldSpec, zeta: &FieldElement, t: u64) -> BTreeMap<FieldElement, u64> {
    let mut table = BTreeMap::new();
    let mut acc = k.one();
    for i in 0..t {
        table.insert(acc, i);
        acc = k.mul(&acc, zeta);
    }
    table
}

/// Multiplicative order of `p` modulo `t`.
pub fn mult_order_mod(p: u64, t: u64) -> u64 {
    if t == 1 {
        return 1;
    }
    let phi = factor_u64(t).iter().fold(1u64, |acc, &(f, e)| acc * (f - 1) * f.pow(e - 1));
    let mut order = phi;
    for (f, _) in factor_u64(phi) {
        while order % f == 0 && super::padic::powmod(p, order / f, t) == 1 {
            order /= f;
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_symbol_mod_7() {
        let k = FieldSpec::new(7, 1).unwrap();
        let chi = Character::new(&k, 2).unwrap();
        let squares = [1u64, 2, 4];
        for u in 1..7 {
            let expect = if squares.contains(&u) { 0 } else { 1 };
            assert_eq!(chi.index(&k.from_u64(u)), Some(expect));
        }
        assert_eq!(chi.index(&k.zero()), None);
        let ctx = PadicContext::new(&k, 3).unwrap();
        assert_eq!(chi.value_padic(&ctx, &k.from_u64(3)), Some(ctx.from_i64(-1)));
    }

    #[test]
    fn trivial_and_invalid_orders() {
        let k = FieldSpec::new(7, 1).unwrap();
        let chi = Character::new(&k, 1).unwrap();
        assert!(k.elements().skip(1).all(|u| chi.index(&u) == Some(0)));
        assert!(matches!(Character::new(&k, 5), Err(Error::OrderDoesNotDivide { t: 5, .. })));
    }

    #[test]
    fn level_character_is_chi_of_norm() {
        let k = FieldSpec::new(2, 2).unwrap();
        let chi = Character::new(&k, 3).unwrap();
        let chi2 = chi.at_level(2).unwrap();
        let big = chi2.field();
        let e = (big.order() - 1) / (k.order() - 1);
        let mut images = alloc::collections::BTreeSet::new();
        for w in big.elements().skip(1) {
            let norm = big.pow(&w, e);
            images.insert(big.index(&norm));
            let pre = k.elements().find(|u| chi2.embedding().apply(&k, big, u) == norm).unwrap();
            assert_eq!(chi2.index(&w), chi.index(&pre));
        }
        assert_eq!(images.len(), 3);
    }

    #[test]
    fn multiplicative_order() {
        assert_eq!(mult_order_mod(2, 3), 2);
        assert_eq!(mult_order_mod(7, 3), 1);
        assert_eq!(mult_order_mod(3, 8), 2);
    }
}
