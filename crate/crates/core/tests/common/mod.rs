//! Helpers shared by the integration tests, including brute-force oracles
//! that only use field arithmetic.

#![allow(dead_code)]

use kummer_core::arith::{FieldElement, FieldSpec};
use kummer_core::engine::CoverSpec;

pub fn cover(p: u64, a: usize, t: u64, pi: &[i64]) -> CoverSpec {
    let k = FieldSpec::new(p, a).unwrap();
    CoverSpec::from_ints(&k, t, pi).unwrap()
}

fn horner(k: &FieldSpec, f: &[FieldElement], x: &FieldElement) -> FieldElement {
    f.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
}

/// `#{(x, xi) in F_{q^n}^2 : xi^t Pi(x) = 1}` by enumerating `x` and testing
/// whether `Pi(x)` is a `t`-th power.
pub fn brute_count(cover: &CoverSpec, n: usize) -> u64 {
    let k = cover.field();
    let (big, emb) = k.extension(n).unwrap();
    let f: Vec<FieldElement> = cover.pi().iter().map(|c| emb.apply(k, &big, c)).collect();
    let e = (big.order() - 1) / cover.t();
    big.elements().map(|x| horner(&big, &f, &x)).filter(|v| !v.is_zero() && big.pow(v, e) == big.one()).count() as u64
        * cover.t()
}

/// `#{(Xi_0, Xi_1) : (Xi_0 Xi_1^q - Xi_1 Xi_0^q)^{q-1} = -1}` over `F_{q^n}`.
pub fn brute_drinfeld(q: u64, n: usize) -> u64 {
    let (p, a) = kummer_core::census::prime_power(q).unwrap();
    let big = FieldSpec::new(p, a * n).unwrap();
    let minus_one = big.neg(&big.one());
    let els: Vec<FieldElement> = big.elements().collect();
    let mut count = 0;
    for x0 in &els {
        for x1 in &els {
            let delta = big.sub(&big.mul(x0, &big.pow(x1, q)), &big.mul(x1, &big.pow(x0, q)));
            if big.pow(&delta, q - 1) == minus_one {
                count += 1;
            }
        }
    }
    count
}

pub fn ints(v: &[i64]) -> Vec<num_bigint::BigInt> {
    v.iter().map(|&c| num_bigint::BigInt::from(c)).collect()
}
