use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rankcrit::budget::Budget;
use rankcrit::codes::ambient::Kind;
use rankcrit::codes::density_bruteforce;
use rankcrit::qcomb::{ball_size, qpow, to_f64};
use rankcrit::restricted::*;

fn unlimited() -> Budget {
    Budget::unlimited()
}

fn frac(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[test]
fn stratification_matches_enumeration() {
    let grid: &[(Kind, u64)] = &[(Kind::Symmetric, 3), (Kind::Alternating, 3), (Kind::Hermitian, 2), (Kind::Full, 2)];
    for &(kind, nmax) in grid {
        for q in [2u64, 3] {
            for n in 1..=nmax {
                let seen = rank_stratification_exhaustive(kind, n as usize, q, &unlimited()).unwrap();
                let formula: Vec<BigUint> = (0..=n).map(|i| rank_count(kind, n, i, q).unwrap()).collect();
                assert_eq!(seen, formula, "{kind} n={n} q={q}");
                let sum: BigUint = formula.iter().sum();
                assert_eq!(sum, qpow(q, ambient_dim(kind, n)));
            }
        }
    }
}

#[test]
fn hermitian_printed_sign_disagrees_with_enumeration() {
    let seen = rank_stratification_exhaustive(Kind::Hermitian, 1, 2, &unlimited()).unwrap();
    assert_eq!(seen[1], BigUint::from(1u32));
    assert_eq!(rank_count_hermitian(1, 1, 2, HermitianVariant::Printed).unwrap(), BigUint::from(3u32));
    assert_eq!(rank_count_hermitian(1, 1, 2, HermitianVariant::Validated).unwrap(), seen[1]);
}

#[test]
fn restricted_densities() {
    let b = unlimited();
    assert_eq!(restricted_density_bruteforce(Kind::Symmetric, 2, 1, 2, 2, &b).unwrap().density, frac(4, 7));
    assert_eq!(restricted_density_bruteforce(Kind::Hermitian, 2, 1, 2, 2, &b).unwrap().density, frac(2, 3));
    for n in 2..=4usize {
        for k in 1..=n * (n - 1) / 2 {
            assert!(restricted_density_bruteforce(Kind::Alternating, n, k, 2, 2, &b).unwrap().density.is_one());
        }
    }
    // a symmetric MRD density, and its kind tag
    let r = restricted_density_bruteforce(Kind::Symmetric, 3, 3, 3, 2, &b).unwrap();
    assert!(r.count > BigUint::from(0u32));
    assert_eq!(r.to_json()["kind"], "symmetric");
}

#[test]
fn tensor_identity() {
    for (r, n, q) in [(1usize, 2usize, 2u64), (1, 2, 3), (2, 3, 2)] {
        let formula = tensor_ratio(r as u64, n as u64, q).unwrap();
        assert_eq!(tensor_ratio_bruteforce(r, n, q, &unlimited()).unwrap(), formula, "r={r} n={n} q={q}");
    }
}

#[test]
fn two_dim_formula_matches_bruteforce() {
    for q in [2u64, 3] {
        let f = density_2dim_formula(2, q, &unlimited()).unwrap();
        assert_eq!(f, density_bruteforce(2, 2, 2, 2, q, &unlimited()).unwrap().density);
    }
    assert_eq!(density_2dim_formula(2, 3, &unlimited()).unwrap(), frac(18 * 48, 80 * 78));
}

#[test]
fn two_dim_limit_trend() {
    // Σ_{i≤2} (−1)^i/i!
    let target = 0.5;
    let mut prev = f64::INFINITY;
    for q in [2u64, 3, 4, 5, 7] {
        let v = to_f64(&density_2dim_formula(2, q, &unlimited()).unwrap());
        let gap = (v - target).abs();
        assert!(gap < prev, "q={q}");
        prev = gap;
    }
}

#[test]
fn ball_exponents_track_exact_sizes() {
    for kind in [Kind::Symmetric, Kind::Alternating, Kind::Hermitian] {
        for n in 2..=4u64 {
            for r in 0..=n {
                let e = ball_asymptotic_exponent(kind, n, r).unwrap();
                let ratios: Vec<f64> = [2u64, 3, 5, 9]
                    .iter()
                    .map(|&q| {
                        let size: BigUint = (0..=r).map(|i| rank_count(kind, n, i, q).unwrap()).sum();
                        size.to_f64().unwrap() / (q as f64).powi(e as i32)
                    })
                    .collect();
                for x in &ratios {
                    assert!(*x > 0.05 && *x < 20.0, "{kind} n={n} r={r} {ratios:?}");
                }
            }
        }
    }
    // full ambient agrees with the ball size used elsewhere
    assert_eq!((0..=2).map(|i| rank_count(Kind::Full, 3, i, 2).unwrap()).sum::<BigUint>(), ball_size(3, 3, 2, 2).unwrap());
}

#[test]
fn printed_alternating_exponent_is_the_derived_one() {
    for n in 4..=8u64 {
        for d in (4..=n).step_by(2) {
            let s = sparseness_exponent(Kind::Alternating, n, 1, d, 2).unwrap();
            assert_eq!(s.exponent, s.printed_exponent);
        }
    }
    let h = sparseness_exponent(Kind::Hermitian, 3, 3, 3, 2).unwrap();
    assert_ne!(h.exponent, h.printed_exponent);
}
