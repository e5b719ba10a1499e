mod common;

use common::cover;
use kummer_core::crystal::{nu_mu, profile, shift_reduction, CrystalProfile, PlaceData, PlaceLabel};
use kummer_core::Error;
use num_rational::Ratio;
use proptest::prelude::*;

#[test]
fn nu_mu_examples() {
    let e = nu_mu(5, 4, 3).unwrap();
    assert_eq!((e.nu, e.mu_frob), (3, 3));
    let e = nu_mu(7, 3, 0).unwrap();
    assert_eq!((e.nu, e.mu_frob), (0, 0));
    let e = nu_mu(2, 15, 7).unwrap();
    assert_eq!((e.nu, e.mu_frob), (14, 0));
}

#[test]
fn torus_profile() {
    let prof = profile(&cover(7, 1, 3, &[0, 1])).unwrap();
    let mus: Vec<i64> = prof.places.iter().map(|v| v.mu).collect();
    assert_eq!(mus, [1, -1]);
    assert_eq!(prof.places[1].label, PlaceLabel::Infinity);
    let e = prof.eigen(1);
    assert_eq!(e.b, [0, -1]);
    assert_eq!(prof.residue_strings(1), ["1/3", "2/3"]);
    assert!(e.general_position);
    assert_eq!(e.expected_dim, Some(0));
}

#[test]
fn drinfeld_profile() {
    let prof = profile(&cover(2, 2, 3, &[0, 1, 1])).unwrap();
    let mus: Vec<i64> = prof.places.iter().map(|v| v.mu).collect();
    assert_eq!(mus, [1, 1, -2]);
    assert_eq!(prof.residue_strings(1), ["1/3", "1/3", "1/3"]);
    assert_eq!(prof.eigen(1).expected_dim, Some(1));
    let k = kummer_core::arith::FieldSpec::new(5, 1).unwrap();
    assert_eq!(kummer_core::engine::CoverSpec::from_ints(&k, 4, &[5]).unwrap_err(), Error::ConstantPi);
}

#[test]
fn shift_examples() {
    let s = shift_reduction(&cover(5, 1, 4, &[0, 0, 1]), 2).unwrap();
    assert_eq!((s.step, s.lambda.len()), (2, 2));
    assert!(shift_reduction(&cover(5, 1, 4, &[0, 1]), 2).is_err());
    // the Drinfeld curve for q = 3: Pi = -(x^3 - x)^2
    let s = shift_reduction(&cover(3, 2, 8, &[0, 0, -1, 0, 2, 0, -1]), 2).unwrap();
    assert_eq!(s.step, 4);
}

/// `floor(j mu / t)` and the fractional part, computed without the library.
fn oracle(j: i64, mu: i64, t: i64) -> (i64, Ratio<i64>) {
    let mut b = (j * mu) / t;
    if (j * mu) % t != 0 && (j * mu) < 0 {
        b -= 1;
    }
    (b, Ratio::new(j * mu - b * t, t))
}

fn synthetic() -> impl Strategy<Value = (u64, u64, Vec<(usize, i64)>)> {
    let primes = prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]);
    (primes, 2u64..40, prop::collection::vec((1usize..4, -6i64..7), 1..5)).prop_filter_map(
        "p | t or degenerate divisor",
        |(p, t, mut places)| {
            if t % p == 0 || places.iter().all(|v| v.1 == 0) {
                return None;
            }
            // a place at infinity balances the degree
            let total: i64 = places.iter().map(|(d, m)| *d as i64 * m).sum();
            places.push((1, -total));
            Some((p, t, places))
        },
    )
}

proptest! {
    #[test]
    fn synthetic_profiles((p, t, places) in synthetic()) {
        let data: Vec<PlaceData> = places
            .iter()
            .map(|&(degree, mu)| PlaceData { label: PlaceLabel::Infinity, degree, mu })
            .collect();
        let prof = CrystalProfile::from_places(p, p.pow(4), t, data).unwrap();
        for j in 0..t {
            let e = prof.eigen(j);
            for (i, &(_, mu)) in places.iter().enumerate() {
                let (b, r) = oracle(j as i64, mu, t as i64);
                prop_assert_eq!(e.b[i], b);
                prop_assert_eq!(e.residues[i], r);
            }
            prop_assert!(prof.check_divisor_inequality(j));
            prop_assert!(prof.check_fuchs(j));
            prop_assert!(prof.check_residue_range(j));
            prop_assert!(prof.check_general_position(j));
        }
    }
}
