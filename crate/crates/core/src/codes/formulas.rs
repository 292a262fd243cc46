//! Closed forms for counts and densities of full-rank MRD codes.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::gf::prime_factors;
use crate::qcomb::{
    binom_u, gl_order, pi_q_inf, qbinom, qpow, rat_int, to_f64, AsymptoticEstimate, ExpBase,
};

fn r(x: BigUint) -> BigRational {
    rat_int(x)
}

/// δ_q(3×3, 3, 3) in closed form.
pub fn density_3x3_formula(q: u64) -> Result<BigRational> {
    if q < 2 {
        return invalid("q must be at least 2");
    }
    let qi = |e: u64| BigInt::from(qpow(q, e));
    let qq = BigInt::from(q);
    let num = (&qq - 1)
        * (qi(3) - 1)
        * num_traits::pow(qi(3) - &qq, 3)
        * num_traits::pow(qi(3) - qi(2), 2)
        * (qi(3) - qi(2) - &qq - 1);
    let den = BigInt::from(3) * (qi(7) - 1) * (qi(9) - 1) * (qi(9) - &qq);
    Ok(BigRational::new(num, den))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MrdLowerBound {
    pub n: u64,
    pub q: u64,
    pub count: BigRational,
    pub density: BigRational,
}

/// |GL_n(q)|²/(n(q^n−1)²) · (1 + C(n−1,2)(q^n−1)(q−2)/(q−1)) and that value
/// divided by ⟦n², n⟧_q.
pub fn mrd_lowerbound_formula(n: u64, q: u64) -> Result<MrdLowerBound> {
    if n < 2 {
        return invalid("n must be at least 2");
    }
    if q < 2 {
        return invalid("q must be at least 2");
    }
    let gl = gl_order(n, q);
    let qn1 = qpow(q, n) - 1u32;
    let lead = BigRational::new(BigInt::from(&gl * &gl), BigInt::from(BigUint::from(n) * &qn1 * &qn1));
    let extra = BigRational::new(
        BigInt::from(binom_u(n - 1, 2) * &qn1) * (BigInt::from(q) - 2),
        BigInt::from(q - 1),
    );
    let count = lead * (BigRational::one() + extra);
    let density = &count / r(qbinom((n * n) as i64, n as i64, q));
    Ok(MrdLowerBound { n, q, count, density })
}

/// Number of prime factors counted with multiplicity.
pub fn gamma(mut n: u64) -> u32 {
    let mut c = 0;
    for p in prime_factors(n) {
        while n.is_multiple_of(p) {
            n /= p;
            c += 1;
        }
    }
    c
}

fn is_power_of_3(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(3) {
        n /= 3;
    }
    n == 1
}

/// Lower bound on the number of full-rank MRD codes in F_2^{n×n} for
/// composite n that is not a power of 3:
/// |GL_n(2)|² · 2^n (2^n − 1)^{γ(n)−2} / (2n).
pub fn kantor_lowerbound(n: u64) -> Result<BigUint> {
    if n < 4 || crate::gf::is_prime(n) {
        return invalid(format!("n = {n} is not composite"));
    }
    if is_power_of_3(n) {
        return invalid(format!("n = {n} is a power of 3"));
    }
    let gl = gl_order(n, 2);
    let two_n = qpow(2, n);
    let num = &gl * &gl * &two_n * num_traits::pow(&two_n - 1u32, (gamma(n) - 2) as usize);
    // the class count alone need not be an integer (n = 6), the product is
    let (quo, rem) = num.div_rem(&BigUint::from(2 * n));
    assert!(rem.is_zero(), "2n divides |GL_n(2)|^2");
    Ok(quo)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MInfinityBound {
    /// 1/π(q)^{q(d−1)(n−d+1)+1}
    pub first: f64,
    /// 1/(⟦n, d−1⟧_q (π(q) − 1) + 1)
    pub second: f64,
    pub min: f64,
    pub attained_by: &'static str,
    pub pi_q: f64,
    pub pi_error_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub n: u64,
    pub d: u64,
    pub m: u64,
    pub q: u64,
    /// Ω-exponent of δ(n×n, n, n) as q → ∞: −n³ + 3n² − n (n ≥ 3).
    pub full_rank_lower_exponent: Option<i64>,
    /// Leading term when n is prime: (n−1)(n−2)/(2n) · q^{−n³+3n²−n}.
    pub full_rank_exact: Option<AsymptoticEstimate>,
    /// O-exponent of δ(n×m, m(n−d+1), d) as q → ∞.
    pub mrd_upper_exponent: i64,
    pub m_infinity: MInfinityBound,
}

pub fn asymptotic_constants(n: u64, d: u64, m: u64, q: u64) -> Result<AsymptoticReport> {
    if !(1 <= d && d <= n && n <= m) {
        return invalid("need 1 <= d <= n <= m");
    }
    if q < 2 {
        return invalid("q must be at least 2");
    }
    let (ni, di) = (n as i64, d as i64);
    let exp = -ni.pow(3) + 3 * ni * ni - ni;
    let full_rank_lower_exponent = (n >= 3).then_some(exp);
    let full_rank_exact = (n >= 3 && crate::gf::is_prime(n)).then(|| AsymptoticEstimate {
        label: "full-rank MRD density, q large".into(),
        constant: ((n - 1) * (n - 2)) as f64 / (2 * n) as f64,
        base: ExpBase::Q(q),
        exponent: exp as f64,
    });
    let mrd_upper_exponent = -(di - 1) * (ni - di + 1) + 1;
    let pi = pi_q_inf(q, 1e-9)?;
    let e1 = (q * (d - 1) * (n - d + 1) + 1) as f64;
    let first = pi.value.powf(-e1);
    let binom = qbinom(ni, di - 1, q).to_f64().unwrap_or(f64::INFINITY);
    let second = 1.0 / (binom * (pi.value - 1.0) + 1.0);
    let (min, attained_by) = if first <= second { (first, "first") } else { (second, "second") };
    Ok(AsymptoticReport {
        n,
        d,
        m,
        q,
        full_rank_lower_exponent,
        full_rank_exact,
        mrd_upper_exponent,
        m_infinity: MInfinityBound { first, second, min, attained_by, pi_q: pi.value, pi_error_bound: pi.error_bound },
    })
}

/// q³·δ(3×3,3,3) as a float, for checking the 1/3 constant.
pub fn scaled_3x3(q: u64) -> Result<f64> {
    Ok(to_f64(&(density_3x3_formula(q)? * r(qpow(q, 3)))))
}

/// 1 + (q − 2)·C(n−1, 2).
pub fn class_count_formula(n: u64, q: u64) -> Result<BigUint> {
    if n < 2 {
        return invalid("n must be at least 2");
    }
    if q < 2 {
        return invalid("q must be at least 2");
    }
    Ok(BigUint::one() + BigUint::from(q - 2) * binom_u(n - 1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcomb::rat_i;

    #[test]
    fn three_by_three_over_f2() {
        let d = density_3x3_formula(2).unwrap();
        assert_eq!(d, BigRational::new(192.into(), 788035.into()));
        let lb = mrd_lowerbound_formula(3, 2).unwrap();
        assert_eq!(lb.count, rat_i(192));
        assert_eq!(lb.density, d);
        // 168^2/(3*49)
        assert_eq!(BigRational::new((168 * 168).into(), (3 * 49).into()), rat_i(192));
    }

    #[test]
    fn n3_formula_matches_closed_form_for_all_q() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
            assert_eq!(mrd_lowerbound_formula(3, q).unwrap().density, density_3x3_formula(q).unwrap());
        }
    }

    #[test]
    fn n2_has_no_correction() {
        for q in [2u64, 3, 4, 5] {
            let gl = gl_order(2, q);
            let qn1 = qpow(q, 2) - 1u32;
            let want = BigRational::new(BigInt::from(&gl * &gl), BigInt::from(BigUint::from(2u32) * &qn1 * &qn1));
            assert_eq!(mrd_lowerbound_formula(2, q).unwrap().count, want);
        }
    }

    #[test]
    fn q_cubed_constant() {
        let v = scaled_3x3(101).unwrap();
        assert!((v - 1.0 / 3.0).abs() / (1.0 / 3.0) < 0.05);
    }

    #[test]
    fn kantor() {
        let gl4 = gl_order(4, 2);
        assert_eq!(gl4, BigUint::from(20160u32));
        assert_eq!(kantor_lowerbound(4).unwrap(), &gl4 * &gl4 * 2u32);
        assert!(kantor_lowerbound(9).is_err());
        assert!(kantor_lowerbound(5).is_err());
        assert!(kantor_lowerbound(27).is_err());
        let gl6 = gl_order(6, 2);
        assert_eq!(kantor_lowerbound(6).unwrap() * 12u32, &gl6 * &gl6 * 64u32);
        assert_eq!(gamma(12), 3);
    }

    #[test]
    fn asymptotics() {
        let a = asymptotic_constants(3, 3, 3, 2).unwrap();
        let e = a.full_rank_exact.unwrap();
        assert_eq!(e.constant, 1.0 / 3.0);
        assert_eq!(e.exponent, -3.0);
        assert_eq!(a.mrd_upper_exponent, -1);
        let b = asymptotic_constants(2, 2, 2, 2).unwrap();
        let pi: f64 = 3.462746619;
        assert!((b.m_infinity.first - pi.powf(-3.0)).abs() < 1e-8);
        assert!((b.m_infinity.second - 1.0 / (3.0 * (pi - 1.0) + 1.0)).abs() < 1e-8);
        assert!(b.m_infinity.min <= b.m_infinity.second && b.m_infinity.min <= b.m_infinity.first);
        assert!(asymptotic_constants(4, 4, 4, 2).unwrap().full_rank_exact.is_none());
    }

    #[test]
    fn class_counts() {
        assert_eq!(class_count_formula(3, 2).unwrap(), BigUint::one());
        assert_eq!(class_count_formula(3, 3).unwrap(), BigUint::from(2u32));
        for q in 2..10 {
            assert_eq!(class_count_formula(2, q).unwrap(), BigUint::one());
        }
        assert!(!BigUint::one().is_zero());
    }
}
