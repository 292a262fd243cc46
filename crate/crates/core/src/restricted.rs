//! Symmetric, alternating and Hermitian ambients: rank stratification,
//! dimension bounds, sparseness exponents, plus the 2-dimensional square-code
//! density and the tensor ratio.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::codes::ambient::{Ambient, Kind};
use crate::codes::{density_in_ambient, spectrum_free_count, DensityResult};
use crate::error::{invalid, Result};
use crate::gf::Field;
use crate::qcomb::{gl_order, qbinom, qpow, rank_count_full, rat_int, ratio, AsymptoticEstimate, ExpBase};

/// Sign convention for the Hermitian rank count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HermitianVariant {
    /// ∏ (q^j + (−1)^j), agrees with enumeration
    Validated,
    /// ∏ (q^j − (−1)^j)
    Printed,
}

fn check_i(n: u64, i: u64) -> Result<()> {
    if i > n {
        return invalid(format!("rank {i} exceeds n = {n}"));
    }
    Ok(())
}

pub fn rank_count_symmetric(n: u64, i: u64, q: u64) -> Result<BigUint> {
    check_i(n, i)?;
    let mut r = BigRational::one();
    for s in 1..=i / 2 {
        let a = qpow(q, 2 * s);
        r *= ratio(a.clone(), a - 1u32);
    }
    for s in 0..i {
        r *= rat_int(qpow(q, n - s) - 1u32);
    }
    assert!(r.is_integer(), "symmetric rank counts are integers");
    Ok(r.to_integer().to_biguint().expect("positive"))
}

pub fn rank_count_alternating(n: u64, i: u64, q: u64) -> Result<BigUint> {
    check_i(n, i)?;
    let mut acc = BigInt::zero();
    for s in 0..=i {
        let e = s * s.saturating_sub(1) / 2 + (i - s) * (i - s).saturating_sub(1) / 2;
        let t = BigInt::from(qpow(q, e) * qbinom(i as i64, s as i64, q));
        if (i - s).is_multiple_of(2) {
            acc += t;
        } else {
            acc -= t;
        }
    }
    let total = acc * BigInt::from(qbinom(n as i64, i as i64, q));
    Ok(total.to_biguint().expect("counts are nonnegative"))
}

pub fn rank_count_hermitian(n: u64, i: u64, q: u64, variant: HermitianVariant) -> Result<BigUint> {
    check_i(n, i)?;
    let mut acc = BigInt::from(qbinom(n as i64, i as i64, q * q) * qpow(q, i * i.saturating_sub(1) / 2));
    for j in 1..=i {
        let qj = BigInt::from(qpow(q, j));
        let sign = if j % 2 == 0 { 1 } else { -1 };
        acc *= match variant {
            HermitianVariant::Validated => qj + sign,
            HermitianVariant::Printed => qj - sign,
        };
    }
    Ok(acc.to_biguint().expect("counts are nonnegative"))
}

/// Number of rank-i matrices in the n×n ambient of the given kind. Hermitian
/// uses the validated sign.
pub fn rank_count(kind: Kind, n: u64, i: u64, q: u64) -> Result<BigUint> {
    match kind {
        Kind::Full => {
            check_i(n, i)?;
            Ok(rank_count_full(n, n, i, q))
        }
        Kind::Symmetric => rank_count_symmetric(n, i, q),
        Kind::Alternating => rank_count_alternating(n, i, q),
        Kind::Hermitian => rank_count_hermitian(n, i, q, HermitianVariant::Validated),
    }
}

pub fn ambient_dim(kind: Kind, n: u64) -> u64 {
    match kind {
        Kind::Full | Kind::Hermitian => n * n,
        Kind::Symmetric => n * (n + 1) / 2,
        Kind::Alternating => n * n.saturating_sub(1) / 2,
    }
}

/// Counts of each rank 0..=n by enumerating the whole ambient.
pub fn rank_stratification_exhaustive(kind: Kind, n: usize, q: u64, budget: &Budget) -> Result<Vec<BigUint>> {
    let base = Arc::new(Field::from_q(q)?);
    let amb = Ambient::new(kind, base, n, n)?;
    let total = (q as u128).pow(amb.dim() as u32);
    budget.check(total)?;
    let mut counts = vec![0u64; n + 1];
    let mut scratch = Vec::new();
    for idx in 0..total as u64 {
        let c = amb.coords_of(idx);
        counts[amb.rank_with(&c, &mut scratch)] += 1;
    }
    Ok(counts.into_iter().map(BigUint::from).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct StratumRow {
    pub i: u64,
    pub count: String,
    /// Only differs for Hermitian.
    pub printed: String,
}

pub fn rank_strata(kind: Kind, n: u64, q: u64) -> Result<Vec<StratumRow>> {
    (0..=n)
        .map(|i| {
            let count = rank_count(kind, n, i, q)?;
            let printed = match kind {
                Kind::Hermitian => rank_count_hermitian(n, i, q, HermitianVariant::Printed)?,
                _ => count.clone(),
            };
            Ok(StratumRow { i, count: count.to_string(), printed: printed.to_string() })
        })
        .collect()
}

pub fn strata_csv(rows: &[StratumRow]) -> String {
    let mut s = String::from("i,count,printed\n");
    for r in rows {
        s.push_str(&format!("{},{},{}\n", r.i, r.count, r.printed));
    }
    s
}

/// Largest dimension of a code with minimum distance d in the ambient.
pub fn dim_bound(kind: Kind, n: u64, d: u64) -> Result<u64> {
    if d < 1 || d > n {
        return invalid("need 1 <= d <= n");
    }
    match kind {
        Kind::Full => Ok(n * (n - d + 1)),
        Kind::Symmetric => Ok(if (n - d).is_multiple_of(2) { n * (n - d + 2) / 2 } else { (n + 1) * (n - d + 1) / 2 }),
        Kind::Alternating => {
            if d % 2 == 1 || n < 2 {
                return invalid("alternating codes need even d and n >= 2");
            }
            let (e, t) = (d / 2, n / 2);
            Ok(n * (n - 1) * (t - e + 1) / (2 * t))
        }
        Kind::Hermitian => Ok(n * (n - d + 1)),
    }
}

/// δ in the restricted ambient by enumerating its Grassmannian.
pub fn restricted_density_bruteforce(kind: Kind, n: usize, k: usize, d: usize, q: u64, budget: &Budget) -> Result<DensityResult> {
    let base = Arc::new(Field::from_q(q)?);
    let amb = Ambient::new(kind, base, n, n)?;
    density_in_ambient(&amb, k, d, budget)
}

/// Exponent e with |{rank ≤ r}| ~ q^e as q → ∞.
pub fn ball_asymptotic_exponent(kind: Kind, n: u64, r: u64) -> Result<i64> {
    check_i(n, r)?;
    let (n, r) = (n as i64, r as i64);
    Ok(match kind {
        Kind::Full | Kind::Hermitian => r * (2 * n - r),
        Kind::Symmetric => n * r - r * (r - 1) / 2,
        Kind::Alternating => {
            if r % 2 == 0 {
                r * n - r * (r + 1) / 2
            } else {
                (r - 1) * n - (r - 1) * r / 2
            }
        }
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Sparseness {
    pub kind: Kind,
    pub n: u64,
    pub k: u64,
    pub d: u64,
    /// δ ∈ O(q^exponent)
    pub exponent: i64,
    /// The exponent as it appears in the published statement.
    pub printed_exponent: i64,
    /// Limit is 1 below this k, 0 above it.
    pub threshold: i64,
    pub limit: Option<u8>,
    pub estimate: AsymptoticEstimate,
}

/// O-exponent of δ(n×n, k, d) in the restricted ambient as q → ∞:
/// dim − k + 1 − (ball exponent at radius d − 1).
pub fn sparseness_exponent(kind: Kind, n: u64, k: u64, d: u64, q: u64) -> Result<Sparseness> {
    if d < 2 {
        return invalid("need d >= 2");
    }
    let bound = dim_bound(kind, n, d)?;
    if k < 1 || k > bound {
        return invalid(format!("need 1 <= k <= {bound}"));
    }
    let (ni, di) = (n as i64, d as i64);
    let threshold = ambient_dim(kind, n) as i64 + 1 - ball_asymptotic_exponent(kind, n, d - 1)?;
    let printed_threshold = match kind {
        Kind::Hermitian => ni * ni + 1 - (di - 1) * (2 * ni + di - 1),
        Kind::Alternating => ni * (ni - 1) / 2 + 1 - (di - 2) * ni + (di - 1) * (di - 2) / 2,
        _ => threshold,
    };
    let exponent = threshold - k as i64;
    let limit = match (k as i64).cmp(&threshold) {
        std::cmp::Ordering::Less => Some(1),
        std::cmp::Ordering::Greater => Some(0),
        std::cmp::Ordering::Equal => None,
    };
    Ok(Sparseness {
        kind,
        n,
        k,
        d,
        exponent,
        printed_exponent: printed_threshold - k as i64,
        threshold,
        limit,
        estimate: AsymptoticEstimate {
            label: format!("{kind} density upper bound"),
            constant: 1.0,
            base: ExpBase::Q(q),
            exponent: exponent as f64,
        },
    })
}

/// s_q(n) ∏_{i<n}(q^n − q^i) / ((q^{n²} − 1)(q^{n²} − q)) given s_q(n).
pub fn density_2dim_from_spectrum_free(n: u64, q: u64, s: &BigUint) -> BigRational {
    let nn = n * n;
    let den = (qpow(q, nn) - 1u32) * (qpow(q, nn) - q);
    ratio(s * gl_order(n, q), den)
}

/// δ(n×n, 2, n), with s_q(n) counted by brute force.
pub fn density_2dim_formula(n: u64, q: u64, budget: &Budget) -> Result<BigRational> {
    let s = spectrum_free_count(n as usize, q, budget)?;
    Ok(density_2dim_from_spectrum_free(n, q, &s))
}

/// |GL_r(q)|/|GL_n(q)| · ⟦n², r⟧ / ⟦rn, n⟧
pub fn tensor_ratio(r: u64, n: u64, q: u64) -> Result<BigRational> {
    if r < 1 || r > n {
        return invalid("need 1 <= r <= n");
    }
    let num = gl_order(r, q) * qbinom((n * n) as i64, r as i64, q);
    let den = gl_order(n, q) * qbinom((r * n) as i64, n as i64, q);
    Ok(ratio(num, den))
}

/// δ(r×n, n, r) / δ(n×n, r, n) by brute force on both sides.
pub fn tensor_ratio_bruteforce(r: usize, n: usize, q: u64, budget: &Budget) -> Result<BigRational> {
    let a = crate::codes::density_bruteforce(r, n, n, r, q, budget)?;
    let b = crate::codes::density_bruteforce(n, n, r, n, q, budget)?;
    if b.count.is_zero() {
        return invalid("denominator density is zero");
    }
    Ok(a.density / b.density)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn small_rank_counts() {
        assert_eq!(rank_count(Kind::Symmetric, 2, 1, 2).unwrap(), u(3));
        assert_eq!(rank_count(Kind::Alternating, 2, 2, 2).unwrap(), u(1));
        for n in 1..5 {
            for i in (1..=n).step_by(2) {
                assert!(rank_count(Kind::Alternating, n, i, 3).unwrap().is_zero());
            }
        }
        assert_eq!(rank_count(Kind::Hermitian, 2, 2, 2).unwrap(), u(10));
        assert_eq!(rank_count(Kind::Hermitian, 2, 1, 2).unwrap(), u(5));
        assert_eq!(rank_count_hermitian(1, 1, 2, HermitianVariant::Printed).unwrap(), u(3));
        assert_eq!(rank_count_hermitian(1, 1, 2, HermitianVariant::Validated).unwrap(), u(1));
    }

    #[test]
    fn bounds() {
        assert_eq!(dim_bound(Kind::Symmetric, 3, 3).unwrap(), 3);
        assert_eq!(dim_bound(Kind::Alternating, 4, 4).unwrap(), 3);
        assert_eq!(dim_bound(Kind::Hermitian, 2, 2).unwrap(), 2);
        assert!(dim_bound(Kind::Alternating, 4, 3).is_err());
    }

    #[test]
    fn exponents() {
        for n in 1..6 {
            assert_eq!(ball_asymptotic_exponent(Kind::Symmetric, n, n).unwrap(), ambient_dim(Kind::Symmetric, n) as i64);
            assert_eq!(ball_asymptotic_exponent(Kind::Hermitian, n, n).unwrap(), (n * n) as i64);
        }
        assert_eq!(ball_asymptotic_exponent(Kind::Alternating, 5, 3).unwrap(), 2 * 5 - 3);
        for n in 2..7u64 {
            let s = sparseness_exponent(Kind::Symmetric, n, n, n, 2).unwrap();
            assert_eq!(s.exponent, 2 - n as i64);
            for d in 2..=n {
                let h = sparseness_exponent(Kind::Hermitian, n, n * (n - d + 1), d, 2).unwrap();
                assert_eq!(h.exponent, -(((d - 1) * (n - d + 1)) as i64) + 1);
            }
        }
        let low = sparseness_exponent(Kind::Symmetric, 4, 1, 2, 3).unwrap();
        assert_eq!(low.limit, Some(1));
    }

    #[test]
    fn two_dim_and_tensor() {
        assert_eq!(density_2dim_from_spectrum_free(2, 2, &u(2)), BigRational::new(2.into(), 35.into()));
        assert_eq!(tensor_ratio(1, 2, 2).unwrap(), BigRational::new(5.into(), 2.into()));
        for n in 1..4 {
            assert!(tensor_ratio(n, n, 3).unwrap().is_one());
        }
    }
}
