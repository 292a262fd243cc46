//! q-analog counting: Gaussian binomials, |GL_a(q)|, rank-metric balls and
//! the constants π(q, n).
//!
//! The closed forms only need q to be an integer ≥ 2, so they take a plain
//! `u64`; callers that care validate prime powers with [`PrimePower`].
//!
//! [`PrimePower`]: crate::gf::PrimePower

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};

pub fn big(q: u64) -> BigUint {
    BigUint::from(q)
}

pub fn qpow(q: u64, e: u64) -> BigUint {
    num_traits::pow(big(q), e as usize)
}

/// Gaussian binomial ⟦i, j⟧_q; zero outside 0 ≤ j ≤ i.
pub fn qbinom(i: i64, j: i64, q: u64) -> BigUint {
    if j < 0 || i < 0 || j > i {
        return BigUint::zero();
    }
    let j = j.min(i - j);
    let mut acc = BigUint::one();
    for t in 0..j {
        acc *= qpow(q, (i - t) as u64) - 1u32;
        let d = qpow(q, (t + 1) as u64) - 1u32;
        let (quo, rem) = acc.div_rem(&d);
        assert!(rem.is_zero(), "partial q-binomial product not integral");
        acc = quo;
    }
    acc
}

/// |GL_a(q)| = ∏_{i<a} (q^a − q^i).
pub fn gl_order(a: u64, q: u64) -> BigUint {
    let qa = qpow(q, a);
    (0..a).fold(BigUint::one(), |acc, i| acc * (&qa - qpow(q, i)))
}

/// Number of n×m matrices of rank exactly i.
pub fn rank_count_full(n: u64, m: u64, i: u64, q: u64) -> BigUint {
    if i > n.min(m) {
        return BigUint::zero();
    }
    let qm = qpow(q, m);
    let falling = (0..i).fold(BigUint::one(), |acc, j| acc * (&qm - qpow(q, j)));
    qbinom(n as i64, i as i64, q) * falling
}

/// |B_q(n×m, r)|, the matrices of rank at most r.
pub fn ball_size(n: u64, m: u64, r: u64, q: u64) -> Result<BigUint> {
    if r > n.min(m) {
        return invalid(format!("radius {r} exceeds min({n},{m})"));
    }
    Ok((0..=r).map(|i| rank_count_full(n, m, i, q)).sum())
}

/// Number of projective points spanned by nonzero matrices of rank ≤ r.
pub fn pointset_size(n: u64, m: u64, r: u64, q: u64) -> Result<BigUint> {
    if r == 0 {
        return invalid("radius must be at least 1");
    }
    Ok((ball_size(n, m, r, q)? - 1u32) / (q - 1))
}

/// Ordinary binomial C(n, k) for a big n.
pub fn binom(n: &BigUint, k: u64) -> BigUint {
    let kb = big(k);
    if &kb > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - big(i);
        acc /= big(i + 1);
    }
    acc
}

pub fn binom_u(n: u64, k: u64) -> BigUint {
    binom(&big(n), k)
}

pub fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Nearest f64; exact for anything a double can represent.
pub fn to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // fall back to a scaled quotient
    let n = r.numer().abs();
    let d = r.denom().clone();
    let shift = n.bits() as i64 - d.bits() as i64 - 60;
    let q = if shift >= 0 { (n >> shift as usize) / d } else { (n << (-shift) as usize) / d };
    let v = q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(shift as i32);
    if r.is_negative() {
        -v
    } else {
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Nearest,
    Truncate,
}

/// Decimal expansion of a nonnegative rational with `places` digits after the point.
/// `Nearest` rounds halves up.
pub fn decimal(r: &BigRational, places: u32, mode: Rounding) -> String {
    let scale = num_traits::pow(BigInt::from(10), places as usize);
    let scaled = r * BigRational::from_integer(scale.clone());
    let v = match mode {
        Rounding::Truncate => scaled.floor().to_integer(),
        Rounding::Nearest => (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer(),
    };
    let neg = v.is_negative();
    let v = v.abs();
    let int = &v / &scale;
    let frac = &v % &scale;
    let mut s = if neg { "-".to_string() } else { String::new() };
    s.push_str(&int.to_string());
    if places > 0 {
        s.push('.');
        let f = frac.to_string();
        for _ in f.len()..places as usize {
            s.push('0');
        }
        s.push_str(&f);
    }
    s
}

/// A value together with an upper bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Certified {
    pub value: f64,
    pub error_bound: f64,
}

/// π(q, n) = ∏_{i=1}^n q^i/(q^i − 1), exactly.
pub fn pi_q(q: u64, n: u64) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, i| {
        let qi = qpow(q, i);
        acc * ratio(qi.clone(), qi - 1u32)
    })
}

fn log_factor(q: f64, i: u64) -> f64 {
    // log(q^i/(q^i-1)) = -log(1 - q^-i)
    -(-q.powi(-(i as i32))).ln_1p()
}

/// Upper bound on Σ_{i>t} log(q^i/(q^i−1)).
pub fn log_tail_bound(q: u64, t: u64) -> f64 {
    let q = q as f64;
    2.0 * q.powi(-((t + 1) as i32)) / (1.0 - 1.0 / q)
}

/// π(q) = lim π(q, n), truncated once the certified remainder drops below `eps`.
pub fn pi_q_inf(q: u64, eps: f64) -> Result<Certified> {
    if !(eps > 0.0) {
        return invalid("tolerance must be positive");
    }
    if q < 2 {
        return invalid("q must be at least 2");
    }
    let mut s = 0.0;
    let mut t = 0u64;
    loop {
        t += 1;
        s += log_factor(q as f64, t);
        let tail = log_tail_bound(q, t);
        let v = s.exp();
        // true value lies in [v, v·e^tail]
        let err = v * tail.exp_m1() + v * 1e-15 * t as f64;
        if err < eps || t > 2000 {
            return Ok(Certified { value: v, error_bound: err });
        }
    }
}

/// Σ_{i=0}^m (−1)^i / i!.
pub fn alt_exp_sum(m: u64) -> BigRational {
    let mut fact = BigUint::one();
    let mut acc = BigRational::zero();
    for i in 0..=m {
        if i > 0 {
            fact *= big(i);
        }
        let term = ratio(BigUint::one(), fact.clone());
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Comparison {
    /// Certified with the given lower bound on the log-margin.
    Holds { margin: f64 },
    Inconclusive { margin: f64 },
}

/// Checks ∏_{i≥1}(1 − q^{−i})^{q+1} < e^{−(q+1)/(q−1)}.
///
/// In logs this is Σ_i −log(1 − q^{−i}) > 1/(q−1). Every summand is
/// positive, so a partial sum is already a lower bound; the margin reported
/// is (q+1)·(S_terms − 1/(q−1)) minus a floating-point allowance.
pub fn comparison_inequality_check(q: u64, terms: u64) -> Result<Comparison> {
    if q < 2 {
        return invalid("q must be at least 2");
    }
    if terms == 0 {
        return invalid("need at least one term");
    }
    let qf = q as f64;
    let s: f64 = (1..=terms).map(|i| log_factor(qf, i)).sum();
    let fp = 1e-14 * terms as f64;
    let margin = (qf + 1.0) * (s - 1.0 / (qf - 1.0)) - fp;
    Ok(if margin > 0.0 { Comparison::Holds { margin } } else { Comparison::Inconclusive { margin } })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ExpBase {
    Q(u64),
    E,
}

/// `constant · base^exponent`. Never folded into an exact value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticEstimate {
    pub label: String,
    pub constant: f64,
    pub base: ExpBase,
    pub exponent: f64,
}

impl AsymptoticEstimate {
    pub fn value(&self) -> f64 {
        let b = match self.base {
            ExpBase::Q(q) => q as f64,
            ExpBase::E => std::f64::consts::E,
        };
        self.constant * b.powf(self.exponent)
    }
}
