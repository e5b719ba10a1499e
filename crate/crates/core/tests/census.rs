mod common;

use common::{brute_count, brute_drinfeld, cover};
use kummer_core::census::{count_cover, count_cover_with_budget, count_dl_affine, lefschetz_compare};
use kummer_core::engine::approx::Approx;
use kummer_core::engine::charpoly::EigenRun;
use kummer_core::Error;
use num_bigint::BigInt;

#[test]
fn elliptic_sums() {
    let c = cover(7, 1, 2, &[0, -1, 0, 1]);
    let r = count_cover(&c, 1).unwrap();
    assert_eq!(r.total, 4);
    assert_eq!(r.integer_sums, [Some(BigInt::from(4)), Some(BigInt::from(0))]);
    let r2 = count_cover(&c, 2).unwrap();
    assert_eq!(r2.total, brute_count(&c, 2));
    assert_eq!(r2.integer_sums[1], Some(BigInt::from(14)));
}

#[test]
fn torus_sums_vanish() {
    let c = cover(7, 1, 3, &[0, 1]);
    let r = count_cover(&c, 1).unwrap();
    assert_eq!(r.total, 6);
    assert_eq!(r.integer_sums[0], Some(BigInt::from(6)));
    assert!(r.sums[1].iter().all(|c| *c == BigInt::from(0)));
    assert!(r.sums[2].iter().all(|c| *c == BigInt::from(0)));
}

#[test]
fn totals_match_enumeration() {
    for (p, a, t, pi) in [
        (2u64, 2usize, 3u64, vec![0i64, 1, 1]),
        (3, 2, 4, vec![1, 0, 0, 1, 0, 1]),
        (5, 1, 4, vec![0, 0, 2]),
        (2, 3, 7, vec![1, 1, 0, 1]),
    ] {
        let c = cover(p, a, t, &pi);
        for n in 1..=2 {
            let r = count_cover(&c, n).unwrap();
            assert_eq!(r.total, brute_count(&c, n));
            assert_eq!(r.histogram[0] * t, r.total);
        }
    }
}

#[test]
fn budget_is_enforced() {
    let c = cover(7, 1, 2, &[0, -1, 0, 1]);
    assert!(matches!(count_cover_with_budget(&c, 2, 10), Err(Error::BudgetExceeded { .. })));
}

#[test]
fn drinfeld_variety_counts() {
    assert_eq!(count_dl_affine(1, 2, 1).unwrap(), 0);
    assert_eq!(count_dl_affine(1, 2, 2).unwrap(), 6);
    assert_eq!(count_dl_affine(1, 3, 1).unwrap(), 0);
    for (q, n) in [(2, 3), (3, 2), (4, 2)] {
        assert_eq!(count_dl_affine(1, q, n).unwrap(), brute_drinfeld(q, n));
    }
}

#[test]
fn lefschetz_agrees_and_detects_corruption() {
    let c = cover(7, 1, 2, &[0, -1, 0, 1]);
    let mut run = EigenRun::new(&c, &[1]).unwrap();
    assert!(lefschetz_compare(&c, &run, 3).unwrap().all_match());

    let m = &mut run.frob_q.get_mut(&1).unwrap().matrix;
    let old = *m.get(0, 0);
    let ctx = kummer_core::arith::PadicContext::new(c.field(), run.working).unwrap();
    m.set(0, 0, old.add(&ctx, &Approx::from_int(&ctx, 1)));
    let rep = lefschetz_compare(&c, &run, 2).unwrap();
    assert!(!rep.all_match());
    assert!(rep.mismatches().all(|m| m.exact_match && !m.matrix_match));
}
