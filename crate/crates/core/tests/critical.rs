use std::sync::Arc;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankcrit::budget::Budget;
use rankcrit::codes::density_bruteforce;
use rankcrit::critical::*;
use rankcrit::gf::Field;
use rankcrit::qcomb::{binom_u, decimal, to_f64, Rounding};

fn unlimited() -> Budget {
    Budget::unlimited()
}

fn field(q: u64) -> Arc<Field> {
    Arc::new(Field::from_q(q).unwrap())
}

#[test]
fn average_matches_exhaustive_mean() {
    for q in [2u64, 3] {
        for n in 1..=3usize {
            let pts = (q.pow(n as u32) - 1) / (q - 1);
            for k in 0..=n {
                for ell in 1..=6.min(pts as usize) {
                    let want = avg_density_formula(n as u64, k as u64, ell as u64, q).unwrap();
                    assert_eq!(avg_density_exhaustive(n, k, ell, q, &unlimited()).unwrap(), want, "q={q} N={n} k={k} l={ell}");
                }
            }
        }
    }
}

fn lambda_grid(n_max: u64, q: u64, ell_max: u64) {
    for n in 2..=n_max {
        for rho in 2..=n {
            let top = ((q.pow(rho as u32) - 1) / (q - 1)).min(ell_max);
            for ell in rho..=top {
                for s in 0..=n {
                    let want = lambda(n, s, ell, rho, q).unwrap();
                    let got = lambda_exhaustive(n as usize, s as usize, ell as usize, rho as usize, q, &unlimited()).unwrap();
                    assert_eq!(got, want, "q={q} N={n} s={s} l={ell} rho={rho}");
                }
            }
        }
    }
}

#[test]
fn lambda_matches_exhaustive_q2() {
    lambda_grid(4, 2, 5);
}

#[test]
fn lambda_matches_exhaustive_q3() {
    lambda_grid(3, 3, 4);
}

#[test]
fn lambda_over_all_ranks_counts_all_sets() {
    for (n, q) in [(3u64, 2u64), (4, 2), (3, 3)] {
        let pts = (q.pow(n as u32) - 1) / (q - 1);
        for ell in 2..=5u64 {
            // rank 1 only for a single point
            let total: BigUint = (2..=n)
                .filter(|&r| ell <= (q.pow(r as u32) - 1) / (q - 1) && ell >= r)
                .map(|r| lambda(n, 0, ell, r, q).unwrap())
                .sum();
            assert_eq!(total, binom_u(pts, ell), "N={n} q={q} l={ell}");
        }
    }
}

#[test]
fn table_truncated_matches_published_values() {
    let rows = critical_example_table(Rounding::Truncate).unwrap();
    let got: Vec<&str> = rows.iter().map(|r| r.density_float_4dp.as_str()).collect();
    assert_eq!(got, ["0.1352", "0.1333", "0.1295", "0.1211", "0.1003", "0.0000"]);
    // non-increasing as rho decreases
    let vals: Vec<f64> = (5..=10u64).rev().map(|r| to_f64(&avg_density_rank_formula(10, 6, 31, r, 2).unwrap())).collect();
    assert!(vals.windows(2).all(|w| w[0] >= w[1]));
    assert!(avg_density_rank_formula(10, 6, 30, 5, 2).unwrap() > BigRational::zero());
    let csv = table_csv(&rows);
    assert!(csv.starts_with("rho,density_num,density_den,density_float_4dp\n10,"));
}

#[test]
fn rank_metric_point_set_agrees_with_codes() {
    let f2 = field(2);
    for d in 1..=2usize {
        let ball = PointSet::rank_ball(f2.clone(), 2, 2, d - 1, &unlimited());
        for k in 1..=4usize {
            let via_codes = density_bruteforce(2, 2, k, d, 2, &unlimited()).unwrap();
            let via_points = match &ball {
                Ok(p) => delta_bruteforce(k, p, &unlimited()).unwrap(),
                // radius 0: nothing to avoid
                Err(_) => num_traits::One::one(),
            };
            assert_eq!(via_codes.density, via_points, "k={k} d={d}");
        }
    }
}

#[test]
fn hyperplane_identity_on_random_spanning_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 20 {
        let q = [2u64, 3][done % 2];
        let n = 2 + done % 3;
        let f = field(q);
        let mut all = projective_points(&f, n);
        all.shuffle(&mut rng);
        let ell = n + done % 4;
        let p = PointSet::new(f, n, &all[..ell.min(all.len())]).unwrap();
        if p.span_dim() < n {
            continue;
        }
        let code = code_from_pointset(&p).unwrap();
        assert_eq!(code.hyperplane_density(&unlimited()).unwrap(), delta_bruteforce(n - 1, &p, &unlimited()).unwrap());
        done += 1;
    }
}

#[test]
fn structured_hyperplane_densities() {
    let b = unlimited();
    for q in [2u64, 3, 4] {
        let f = field(q);
        // i points on the line spanned by e1, e2 in F_q^3
        let line: Vec<Vec<u32>> = projective_points(&f, 2).into_iter().map(|mut v| { v.push(0); v }).collect();
        for i in 2..=(q + 1) as usize {
            let p = PointSet::new(f.clone(), 3, &line[..i]).unwrap();
            assert_eq!(delta_bruteforce(2, &p, &b).unwrap(), prop52_formula(3, i as u64, q, Prop52Case::Line).unwrap());
        }
        for i in 1..=3usize {
            let pts: Vec<Vec<u32>> = (0..i).map(|j| (0..4).map(|c| (c == j) as u32).collect()).collect();
            let p = PointSet::new(f.clone(), 4, &pts).unwrap();
            assert_eq!(delta_bruteforce(3, &p, &b).unwrap(), prop52_formula(4, i as u64, q, Prop52Case::Independent).unwrap());
        }
    }
    for q in 2..=9u64 {
        for i in 3..=q + 1 {
            let (l, r) = toshow_sides(12, i, q);
            assert!(l > r, "q={q} i={i}");
        }
    }
}

#[test]
fn average_approaches_hyperplane_limit() {
    let limit = (-1.0f64).exp();
    let gaps: Vec<f64> = [2u64, 3, 4, 5, 7, 8, 9]
        .iter()
        .map(|&q| {
            let avg = to_f64(&avg_density_formula(3, 2, q, q).unwrap());
            let lim = avg_asymptotics(AvgRegime::QLarge { n: 3, k: 2, s: 1 }, q, 0).unwrap();
            assert_eq!(lim, limit);
            (avg - lim).abs()
        })
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
}

proptest! {
    #[test]
    fn mds_formula_matches_moment_curve(qi in 0usize..5, n in 2usize..4, extra in 0usize..4) {
        let q = [3u64, 4, 5, 7, 8][qi];
        let ell = (n + extra).min(q as usize + 1);
        let arc = moment_curve_arc(field(q), n, ell).unwrap();
        prop_assert!(is_arc(&arc));
        prop_assert_eq!(delta_bruteforce(n - 1, &arc, &unlimited()).unwrap(), mds_arc_density(n as u64, ell as u64, q).unwrap());
    }

    #[test]
    fn rounding_and_truncation_differ_by_at_most_one_unit(num in 0u64..100_000, den in 1u64..100_000) {
        let r = BigRational::new(num.into(), den.into());
        let t: f64 = decimal(&r, 4, Rounding::Truncate).parse().unwrap();
        let n: f64 = decimal(&r, 4, Rounding::Nearest).parse().unwrap();
        prop_assert!(n - t >= -1e-12 && n - t <= 1e-4 + 1e-12);
    }
}
