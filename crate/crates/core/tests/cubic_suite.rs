//! Cross-checks for the cubic ring and equation solvers: exact norm laws,
//! agreement between the unit-based Pell solver and brute force, Thue
//! reports against the reference search, and the solution-count cap.

use num_bigint::BigInt;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use geomnum::bruteforce::{pell_solutions_bruteforce, thue_solutions_bruteforce};
use geomnum::cubic::{
    cubic_multiply, cubic_norm, fundamental_unit, solve_cubic_pell, solve_thue, CubicError,
    PureCubicInteger, SolutionMethod, ThueEquation,
};

fn non_cubes(limit: i64) -> Vec<i64> {
    (2..=limit)
        .filter(|&q| {
            let r = (q as f64).cbrt().round() as i64;
            r * r * r != q
        })
        .collect()
}

#[test]
fn norms_are_multiplicative() {
    let qs = non_cubes(50);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for trial in 0..10_000 {
        let q = qs[trial % qs.len()];
        let mut pick = || BigInt::from(rng.gen_range(-30i64..=30));
        let u = PureCubicInteger::new(pick(), pick(), pick(), q).unwrap();
        let v = PureCubicInteger::new(pick(), pick(), pick(), q).unwrap();
        let product = cubic_multiply(&u, &v).unwrap();
        assert_eq!(cubic_norm(&product), cubic_norm(&u) * cubic_norm(&v));
    }
}

#[test]
fn pell_solver_agrees_with_brute_force() {
    for q in non_cubes(20) {
        let report = solve_cubic_pell(q, 100).unwrap();
        let brute = pell_solutions_bruteforce(q as u64, 200);
        let reported: Vec<(BigInt, BigInt)> = report
            .solutions
            .iter()
            .map(|&(x, y)| (BigInt::from(x), BigInt::from(y)))
            .collect();
        assert_eq!(reported, brute, "q = {q}");

        let nontrivial = report.solutions.iter().any(|&s| s != (0, 1));
        let binomial = report.unit.as_ref().is_some_and(|u| u.is_binomial);
        assert_eq!(
            nontrivial, binomial,
            "q = {q}: a nontrivial solution exists exactly when a binomial unit certifies it"
        );
        match report.unit {
            Some(_) => assert_eq!(report.method, SolutionMethod::UnitBased),
            None => assert_eq!(report.method, SolutionMethod::BoundedSearch),
        }
    }
}

#[test]
fn unit_certificates_are_units() {
    for q in non_cubes(20) {
        // The fundamental unit of Z[∛12] is -107 + 33ρ + 6ρ², outside a
        // box of 100; the search must say so rather than return a power
        // or a wrong element.
        if q == 12 {
            let err = fundamental_unit(q, 100).unwrap_err();
            assert_eq!(err, CubicError::NoUnitInBox { search_box: 100 });
            let cert = fundamental_unit(q, 110).unwrap();
            assert_eq!(
                (&cert.element.a, &cert.element.b, &cert.element.c),
                (&BigInt::from(-107), &BigInt::from(33), &BigInt::from(6))
            );
            continue;
        }
        let cert = fundamental_unit(q, 100).unwrap();
        assert_eq!(cubic_norm(&cert.element), BigInt::from(1));
        assert!(cert.real_value > 0.0 && cert.real_value < 1.0);
    }
}

#[test]
fn thue_reports_match_brute_force() {
    for (a, b, c) in [(0i64, -1i64, 1i64), (0, 1, 1), (2, 1, 3), (-1, 2, -1)] {
        let eq = ThueEquation::new(a, b, c);
        let report = match solve_thue(&eq, 60) {
            Ok(r) => r,
            Err(CubicError::NonnegativeDiscriminant(_) | CubicError::Decomposable { .. }) => {
                continue
            }
            Err(e) => panic!("({a},{b},{c}): {e}"),
        };
        let brute =
            thue_solutions_bruteforce(&BigInt::from(a), &BigInt::from(b), &BigInt::from(c), 60);
        let reported: Vec<(BigInt, BigInt)> = report
            .solutions
            .iter()
            .map(|&(x, y)| (BigInt::from(x), BigInt::from(y)))
            .collect();
        assert_eq!(reported, brute, "({a},{b},{c})");
    }
}

#[test]
fn bad_forms_are_rejected() {
    // x³ + x²y + xy² + y³ = (x + y)(x² + y²)
    let err = solve_thue(&ThueEquation::new(1, 1, 1), 10).unwrap_err();
    assert!(matches!(err, CubicError::Decomposable { .. }));
    // x³ - 3xy² + y³ has positive discriminant (three real roots).
    let err = solve_thue(&ThueEquation::new(0, -3, 1), 10).unwrap_err();
    assert!(matches!(err, CubicError::NonnegativeDiscriminant(_)));
    let err = solve_thue(&ThueEquation::new(0, -1, 1), 0).unwrap_err();
    assert!(matches!(err, CubicError::ZeroBound));
}

#[test]
fn small_coefficient_sweep_respects_the_cap() {
    let r = 2i64;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let eq = ThueEquation::new(a, b, c);
                let Ok(report) = solve_thue(&eq, 100) else {
                    continue;
                };
                assert!(report.cap_audit);
                assert!(
                    report.solutions.len() <= 5,
                    "({a},{b},{c}) produced {} solutions",
                    report.solutions.len()
                );
            }
        }
    }
}
