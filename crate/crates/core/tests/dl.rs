use kummer_core::arith::fpoly;
use kummer_core::arith::FieldSpec;
use kummer_core::census::count_dl_affine;
use kummer_core::dl::mpoly::{product, MPoly};
use kummer_core::dl::*;
use num_bigint::BigInt;

#[test]
fn drinfeld_pi() {
    let s = build_pi_gl(1, 2).unwrap();
    let k = &s.field;
    assert_eq!(s.pi.to_univariate(k).unwrap(), [k.zero(), k.one(), k.one()]);

    // -(x^3 - x)^2 = -x^6 + 2x^4 - x^2 over F_3
    let s = build_pi_gl(1, 3).unwrap();
    let k = &s.field;
    let expected: Vec<_> = [0, 0, -1, 0, 2, 0, -1].iter().map(|&c| k.from_i64(c)).collect();
    assert_eq!(s.pi.to_univariate(k).unwrap(), expected);
    assert_eq!((s.t, s.s_star, s.factors), (8, 4, 8));
}

#[test]
fn drinfeld_pi_roots() {
    for q in [2, 3, 4, 5, 7, 8, 9] {
        let s = build_pi_gl(1, q).unwrap();
        assert_eq!(s.closed_form, Some(true));
        let f = s.pi.to_univariate(&s.field).unwrap();
        assert_eq!(f.len() as u64 - 1, q * (q - 1));
        let fac = fpoly::factor(&s.field, &f);
        assert_eq!(fac.factors.len() as u64, q);
        assert!(fac.factors.iter().all(|(g, e)| g.len() == 2 && *e as u64 == q - 1));
    }
}

#[test]
fn plane_pi_over_f2() {
    // the seven factors 1 + a_1 z_1 + a_2 z_2 and a_1 z_1 + a_2 z_2, expanded independently
    let s = build_pi_gl(2, 2).unwrap();
    let k = FieldSpec::new(2, 1).unwrap();
    let mut forms = Vec::new();
    for a0 in 0..2 {
        for a1 in 0..2 {
            for a2 in 0..2 {
                if a0 + a1 + a2 == 0 {
                    continue;
                }
                let mut f = MPoly::linear(&[k.from_u64(a1), k.from_u64(a2)]);
                f = f.add(&k, &MPoly::constant(2, k.from_u64(a0)));
                forms.push(f);
            }
        }
    }
    assert_eq!(s.factors, 7);
    assert_eq!(s.pi, product(&k, 2, &forms, 1 << 12).unwrap());
    assert_eq!(s.pi.total_degree(), Some(6));
}

#[test]
fn delta_identity() {
    for (d, q) in [(1, 2), (1, 3), (2, 2), (1, 4), (1, 5)] {
        assert!(delta_identity_check(d, q).unwrap(), "d = {d}, q = {q}");
    }
}

#[test]
fn hodge_examples() {
    let h = hodge_table(2, 2).unwrap();
    assert_eq!(h.h, [1, 6, 8].map(BigInt::from));
    assert_eq!(h.alternating, BigInt::from(3));
    let h = hodge_table(1, 5).unwrap();
    assert_eq!(h.h, [1, 5].map(BigInt::from));
    assert_eq!(h.alternating, BigInt::from(4));
    assert_eq!(hodge_table(3, 2).unwrap().alternating, BigInt::from(21));
}

#[test]
fn hodge_identity_range() {
    for d in 1..=8 {
        for q in 2..=32 {
            let h = hodge_table(d, q).unwrap();
            // e_s(q, ..., q^d) by the recurrence for elementary symmetric functions
            let mut e = vec![BigInt::from(1)];
            for i in 1..=d as u32 {
                let x = BigInt::from(q).pow(i);
                let mut next = e.clone();
                next.push(BigInt::from(0));
                for s in 1..next.len() {
                    next[s] += &x * &e[s - 1];
                }
                e = next;
            }
            assert_eq!(h.h, e);
            assert!(h.identity_holds());
        }
    }
}

#[test]
fn singular_indices() {
    assert!(singular_test(1, 3, 4).unwrap());
    assert!(!singular_test(1, 3, 1).unwrap());
    assert!(singular_test(1, 3, 0).unwrap());
    assert!(singular_test(1, 3, 8).is_err());
    assert!(singular_test(2, 2, 7).is_err());
}

#[test]
fn omega_exponents() {
    for q in [2, 3, 5] {
        assert_eq!(omega_data(2, q, 0).unwrap().exponents, [0, 0]);
        assert_eq!(omega_data(2, q, 1).unwrap().exponents, [-1, 0]);
        assert_eq!(omega_data(2, q, 2).unwrap().exponents, [q as i64 - 2, -1]);
    }
    let o = omega_data(3, 2, 1).unwrap();
    assert_eq!(o.label, "Theta(1,{t_2,t_3})");
    assert_eq!(o.wedge, [1]);
    assert!(omega_data(2, 2, 3).is_err());
}

#[test]
fn gamma_is_a_product_of_translates() {
    let k = FieldSpec::new(3, 1).unwrap();
    // gamma_1 = z_1^3 - z_1 over F_3
    let g = gamma(&k, 2, 1, 1 << 10).unwrap();
    let z1 = MPoly::var(&k, 2, 0);
    assert_eq!(g, z1.pow(&k, 3, 16).unwrap().sub(&k, &z1));
    assert_eq!(gamma(&k, 2, 2, 1 << 10).unwrap().total_degree(), Some(9));
}

fn matrix(k: &FieldSpec, rows: &[&[u64]]) -> FqMatrix {
    rows.iter().map(|r| r.iter().map(|&c| k.from_u64(c)).collect()).collect()
}

#[test]
fn action_examples() {
    let k2 = FieldSpec::new(2, 1).unwrap();
    let id = action_check(1, 2, &matrix(&k2, &[&[1, 0], &[0, 1]])).unwrap();
    assert!(id.verified());
    assert_eq!(id.gamma, [k2.one(), k2.zero()]);
    assert!(action_check(1, 2, &matrix(&k2, &[&[0, 1], &[1, 0]])).unwrap().verified());
    let k3 = FieldSpec::new(3, 1).unwrap();
    let r = action_check(1, 3, &matrix(&k3, &[&[2, 0], &[0, 1]])).unwrap();
    assert!(r.verified());
    assert_eq!(r.gamma, [k3.from_u64(2), k3.zero()]);
    assert!(action_check(1, 3, &matrix(&k3, &[&[1, 1], &[1, 1]])).is_err());
}

#[test]
fn generators_act() {
    for (d, q) in [(1, 2), (1, 3), (2, 2)] {
        for g in gl_generators(d, q).unwrap() {
            assert!(action_check(d, q, &g).unwrap().verified());
        }
    }
}

#[test]
fn omega_under_triangular_matrices() {
    let k = FieldSpec::new(3, 1).unwrap();
    let u = matrix(&k, &[&[1, 1, 2], &[0, 1, 1], &[0, 0, 1]]);
    for s in 0..=2 {
        let c = omega_character(2, 3, s, &u).unwrap();
        assert!(c.verified);
        assert_eq!(c.character, k.one());
    }
    // a diagonal matrix scales omega_1 = gamma_1^{-1} dz_1 by lambda_1^{-1} lambda_1 = 1
    let k5 = FieldSpec::new(5, 1).unwrap();
    let t = matrix(&k5, &[&[1, 0], &[0, 2]]);
    let c = omega_character(1, 5, 1, &t).unwrap();
    assert!(c.verified);
    assert_eq!(c.character, k5.one());
    let c0 = omega_character(1, 5, 0, &t).unwrap();
    assert_eq!(c0.character, k5.one());
}

#[test]
fn curve_bridge() {
    for q in [2, 3] {
        let b = dl_curve_bridge(q, 2).unwrap();
        assert!(b.all_ok(), "q = {q}");
        assert!(b.dims.values().all(|&d| d as u64 == q - 1));
        assert_eq!(b.components, q - 1);
        let direct: Vec<u64> = (1..=2).map(|n| count_dl_affine(1, q, 2 * n).unwrap()).collect();
        assert_eq!(b.dl_counts, direct);
    }
    assert_eq!(dl_curve_bridge(2, 2).unwrap().dl_counts, [6, 6]);
}
