//! Independent recomputations checked against the library.

use galois_census::bigpoly::MonicPoly;
use galois_census::census::{box_size, census_verdict, run_census, CensusRow};
use galois_census::disc::{discriminant, is_perfect_square};
use galois_census::galois::{
    classify, exact_small_degree, GaloisClass, NonSnReason, SmallGroup, DEFAULT_BUDGET,
};
use galois_census::geometry::{count_line, count_surface};
use galois_census::ratpoly::RatPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn all_coeffs(n: usize, h: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * h + 1) as usize;
    (0..side.pow(n as u32)).map(move |idx| {
        (0..n)
            .map(|i| (idx / side.pow(i as u32) % side) as i64 - h)
            .collect()
    })
}

/// Resultant by the Euclidean algorithm over the rationals.
fn resultant(a: &RatPoly, b: &RatPoly) -> BigRational {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return BigRational::zero();
    };
    if db == 0 {
        return num_traits::pow(b.leading().unwrap().clone(), da);
    }
    let (_, r) = a.div_rem(b);
    let Some(dr) = r.degree() else {
        return BigRational::zero();
    };
    let sign = if da * db % 2 == 1 { -BigRational::one() } else { BigRational::one() };
    sign * num_traits::pow(b.leading().unwrap().clone(), da - dr) * resultant(b, &r)
}

fn disc_by_euclid(f: &MonicPoly) -> BigInt {
    let fr = RatPoly::from(&f.to_int_poly());
    let n = f.degree();
    let res = resultant(&fr, &fr.derivative());
    let v = res.to_integer();
    if (n * (n - 1) / 2) % 2 == 1 {
        -v
    } else {
        v
    }
}

#[test]
fn discriminant_matches_euclidean_resultant() {
    for n in 2..=5 {
        let h = if n <= 3 { 3 } else { 1 };
        for cs in all_coeffs(n, h) {
            let f = MonicPoly::from_i64(&cs).unwrap();
            assert_eq!(discriminant(&f).unwrap().value, disc_by_euclid(&f), "{f}");
        }
    }
    let f = MonicPoly::from_i64(&[3, -1, 4, -1, 5, -9, 2, -6]).unwrap();
    assert_eq!(discriminant(&f).unwrap().value, disc_by_euclid(&f));
}

#[test]
fn quadratic_census_by_hand() {
    // Discriminants a1^2 - 4 a2 over the 3x3 box.
    let discs: Vec<i64> = all_coeffs(2, 1).map(|c| c[0] * c[0] - 4 * c[1]).collect();
    let squares = discs.iter().filter(|&&d| d >= 0 && ((d as f64).sqrt() as i64).pow(2) == d).count();
    assert_eq!(squares, 4);
    let row = run_census(2, 1, DEFAULT_BUDGET, 3).unwrap();
    assert_eq!((row.total, row.m_count, row.e_lower, row.e_upper), (9, 4, 4, 4));
}

/// Census counters recomputed with the exact classifier only.
fn oracle_counts(n: usize, h: i64) -> (u64, u64) {
    let (mut e, mut m) = (0, 0);
    for cs in all_coeffs(n, h) {
        let f = MonicPoly::from_i64(&cs).unwrap();
        if !exact_small_degree(&f).unwrap().is_symmetric() {
            e += 1;
        }
        let d = discriminant(&f).unwrap().value;
        if d.is_zero() || is_perfect_square(&d).is_some() {
            m += 1;
        }
    }
    (e, m)
}

#[test]
fn cubic_census_matches_exact_classifier() {
    for h in [1, 2, 5, 10] {
        let row = run_census(3, h as u64, DEFAULT_BUDGET, 4).unwrap();
        assert_eq!(row.undecided, 0);
        assert_eq!(row.e_lower, row.e_upper);
        assert_eq!((row.e_lower, row.m_count), oracle_counts(3, h), "H={h}");
    }
}

#[test]
fn cubic_census_at_height_20() {
    let row = run_census(3, 20, DEFAULT_BUDGET, 8).unwrap();
    assert_eq!(row.e_lower, row.e_upper);
    assert_eq!((row.e_lower, row.m_count), oracle_counts(3, 20));
}

#[test]
fn quartic_census_matches_exact_classifier() {
    let row = run_census(4, 2, DEFAULT_BUDGET, 2).unwrap();
    assert_eq!(row.undecided, 0);
    assert_eq!((row.e_lower, row.m_count), oracle_counts(4, 2));
}

#[test]
fn census_is_partition_independent_and_monotone() {
    for n in [2, 3, 4] {
        let mut prev: Option<CensusRow> = None;
        for h in 0..=3u64 {
            let one = run_census(n, h, DEFAULT_BUDGET, 1).unwrap().without_timing();
            let eight = run_census(n, h, DEFAULT_BUDGET, 8).unwrap().without_timing();
            assert_eq!(one, eight);
            assert!(one.e_lower <= one.e_upper);
            assert_eq!(one.e_upper - one.e_lower, one.undecided);
            assert!(one.m_count >= one.an_contained);
            assert_eq!(u128::from(one.total), box_size(n, h));
            if let Some(p) = prev.replace(one.clone()) {
                assert!(p.e_lower <= one.e_lower);
                assert!(p.e_upper <= one.e_upper);
                assert!(p.m_count <= one.m_count);
                assert!(p.an_contained <= one.an_contained);
            }
        }
    }
}

#[test]
fn square_discriminants_are_counted() {
    for cs in all_coeffs(4, 2) {
        let f = MonicPoly::from_i64(&cs).unwrap();
        let v = census_verdict(&f, DEFAULT_BUDGET);
        if let GaloisClass::CertifiedNonSn(NonSnReason::DiscSquare(_)) = classify(&f, DEFAULT_BUDGET).unwrap() {
            assert!(v.disc_square);
        }
        if v.an_contained {
            assert!(v.disc_square);
            assert!(!matches!(exact_small_degree(&f).unwrap(), SmallGroup::Reducible(_)));
        }
    }
}

#[test]
fn surface_pairs_match_census_square_count() {
    for h in [1u64, 3, 6, 10] {
        let hi = h as i64;
        let pairs: u64 = (-hi..=hi)
            .map(|a1| count_surface(3, &[a1], h).unwrap().square_pairs)
            .sum();
        assert_eq!(pairs, run_census(3, h, DEFAULT_BUDGET, 4).unwrap().m_count, "H={h}");
    }
}

#[test]
fn quartic_surface_by_direct_enumeration() {
    // 256 a4^3 - 27 a3^4 with a1 = a2 = 0.
    let mut points = 0;
    for a3 in -1i64..=1 {
        for a4 in -1i64..=1 {
            let d = 256 * a4.pow(3) - 27 * a3.pow(4);
            points += match d {
                0 => 1,
                d if d > 0 && ((d as f64).sqrt() as i64).pow(2) == d => 2,
                _ => 0,
            };
        }
    }
    assert_eq!(count_surface(4, &[0, 0], 1).unwrap().points, points);
}

#[test]
fn line_points_are_surface_points() {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let lines = [
        (q(0, 1), q(1, 1), q(0, 1)),
        (q(1, 1), q(0, 1), q(2, 1)),
        (q(1, 1), q(1, 1), q(0, 1)),
        (q(2, 3), q(-1, 1), q(1, 3)),
        (q(-3, 1), q(1, 2), q(5, 1)),
    ];
    for prefix in [[0i64], [1], [-3]] {
        for h in [5u64, 20] {
            let surface = count_surface(3, &prefix, h).unwrap().points;
            for (d1, d2, d3) in &lines {
                let line = count_line(3, &prefix, d1, d2, d3, h).unwrap().points;
                assert!(line <= surface);
            }
        }
    }
}
