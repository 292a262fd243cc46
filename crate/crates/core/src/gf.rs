//! Exact arithmetic in F_q and its extensions.
//!
//! An element of a field of order p^e is a `u32` whose base-p digits are its
//! coordinates, nested through the tower: in F_{q^n} over F_q the element
//! `Σ c_i q^i` has coordinates `c_i ∈ F_q` with respect to the power basis
//! of the modulus root. Addition is therefore digitwise (XOR in
//! characteristic 2) and F_q sits inside F_{q^n} as the indices `< q`.
//! Multiplication goes through discrete log tables.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type Elem = u32;

pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: u64,
    pub h: u32,
    pub q: u64,
}

impl PrimePower {
    pub fn new(p: u64, h: u32) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if h == 0 {
            return invalid("exponent must be positive");
        }
        let q = p
            .checked_pow(h)
            .ok_or_else(|| Error::InvalidArgument(format!("{p}^{h} overflows")))?;
        Ok(PrimePower { p, h, q })
    }

    pub fn from_q(q: u64) -> Result<Self> {
        let f = prime_factors(q);
        if f.len() != 1 {
            return invalid(format!("{q} is not a prime power"));
        }
        let p = f[0];
        let mut h = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            h += 1;
        }
        PrimePower::new(p, h)
    }

    /// Order of Aut(F_q).
    pub fn aut_order(&self) -> u32 {
        self.h
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// A finite field, optionally presented as an extension of a smaller one.
pub struct Field {
    p: u32,
    order: u32,
    base_order: u32,
    degree: u32,
    modulus: Vec<Elem>,
    base: Option<Arc<Field>>,
    // exp has length 2(order-1) so a product never needs a modular reduction
    exp: Vec<Elem>,
    log: Vec<u32>,
    add_table: Option<Vec<Elem>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) over GF({}) mod {:?}", self.order, self.base_order, self.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.base_order == other.base_order
            && self.modulus == other.modulus
            && match (&self.base, &other.base) {
                (Some(a), Some(b)) => **a == **b,
                (None, None) => true,
                _ => false,
            }
    }
}

impl Eq for Field {}

impl Field {
    /// F_p.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return invalid(format!("{p} is not prime"));
        }
        if p > DEFAULT_MAX_ORDER {
            return Err(Error::FieldTooLarge(p as u128, DEFAULT_MAX_ORDER));
        }
        let p32 = p as u32;
        let g = (1..p)
            .find(|&g| {
                prime_factors(p - 1)
                    .iter()
                    .all(|&r| pow_mod(g, (p - 1) / r, p) != 1)
            })
            .unwrap_or(1) as u32;
        let mut exp = Vec::with_capacity(2 * (p32 as usize - 1));
        let mut x = 1u64;
        for _ in 0..2 * (p - 1) {
            exp.push(x as u32);
            x = x * g as u64 % p;
        }
        let mut log = vec![0u32; p as usize];
        for i in (0..(p - 1) as usize).rev() {
            log[exp[i] as usize] = i as u32;
        }
        let mut f = Field {
            p: p32,
            order: p32,
            base_order: p32,
            degree: 1,
            modulus: vec![0, 1],
            base: None,
            exp,
            log,
            add_table: None,
        };
        f.build_add_table();
        Ok(f)
    }

    /// F_q with q = p^h, built over F_p.
    pub fn gf(p: u64, h: u32) -> Result<Field> {
        Self::gf_with_limit(p, h, DEFAULT_MAX_ORDER)
    }

    pub fn gf_with_limit(p: u64, h: u32, max_order: u64) -> Result<Field> {
        let pp = PrimePower::new(p, h)?;
        if pp.q > max_order {
            return Err(Error::FieldTooLarge(pp.q as u128, max_order));
        }
        let fp = Arc::new(Field::prime(p)?);
        if h == 1 {
            return Ok(Arc::try_unwrap(fp).unwrap_or_else(|a| (*a).clone_field()));
        }
        Field::extension_with_limit(fp, h, max_order)
    }

    pub fn from_q(q: u64) -> Result<Field> {
        let pp = PrimePower::from_q(q)?;
        Field::gf(pp.p, pp.h)
    }

    /// F_{q^n} over `base`, modulus = first monic irreducible of degree n.
    pub fn extension(base: Arc<Field>, n: u32) -> Result<Field> {
        Self::extension_with_limit(base, n, DEFAULT_MAX_ORDER)
    }

    pub fn extension_with_limit(base: Arc<Field>, n: u32, max_order: u64) -> Result<Field> {
        if n == 0 {
            return invalid("extension degree must be positive");
        }
        let q = base.order as u64;
        let order = (q as u128).checked_pow(n).unwrap_or(u128::MAX);
        if order > max_order as u128 {
            return Err(Error::FieldTooLarge(order, max_order));
        }
        let modulus = first_irreducible(&base, n as usize);
        Ok(Field::with_modulus(base, modulus))
    }

    /// Builds F_q[x]/(modulus). The modulus must be monic irreducible.
    pub fn with_modulus(base: Arc<Field>, modulus: Vec<Elem>) -> Field {
        let n = modulus.len() - 1;
        let q = base.order as u64;
        let order = q.pow(n as u32);
        let m = order - 1;
        let order_factors = prime_factors(m);
        let mul = |a: Elem, b: Elem| -> Elem {
            let x = unpack(a, q, n);
            let y = unpack(b, q, n);
            pack(&poly_mulmod(&base, &x, &y, &modulus), q)
        };
        let pow = |mut a: Elem, mut e: u64| -> Elem {
            let mut r: Elem = 1;
            while e > 0 {
                if e & 1 == 1 {
                    r = mul(r, a);
                }
                a = mul(a, a);
                e >>= 1;
            }
            r
        };
        let g = if order == 2 {
            1
        } else {
            (2..order as Elem)
                .find(|&g| order_factors.iter().all(|&r| pow(g, m / r) != 1))
                .expect("multiplicative group of a field is cyclic")
        };
        // multiplication by g is F_q-linear; tabulate it on the power basis
        let gcols: Vec<Vec<Elem>> = (0..n)
            .map(|i| unpack(mul(g, (q as Elem).pow(i as u32)), q, n))
            .collect();
        let mut exp = Vec::with_capacity(2 * m as usize);
        let mut cur = vec![0 as Elem; n];
        cur[0] = 1;
        for _ in 0..m {
            exp.push(pack(&cur, q));
            let mut next = vec![0 as Elem; n];
            for (i, &ci) in cur.iter().enumerate() {
                if ci != 0 {
                    for (k, nk) in next.iter_mut().enumerate() {
                        *nk = base.add(*nk, base.mul(ci, gcols[i][k]));
                    }
                }
            }
            cur = next;
        }
        for i in 0..m as usize {
            let v = exp[i];
            exp.push(v);
        }
        let mut log = vec![0u32; order as usize];
        for i in 0..m as usize {
            log[exp[i] as usize] = i as u32;
        }
        let mut f = Field {
            p: base.p,
            order: order as u32,
            base_order: base.order,
            degree: n as u32,
            modulus,
            base: Some(base),
            exp,
            log,
            add_table: None,
        };
        f.build_add_table();
        f
    }

    fn clone_field(&self) -> Field {
        Field {
            p: self.p,
            order: self.order,
            base_order: self.base_order,
            degree: self.degree,
            modulus: self.modulus.clone(),
            base: self.base.clone(),
            exp: self.exp.clone(),
            log: self.log.clone(),
            add_table: self.add_table.clone(),
        }
    }

    fn build_add_table(&mut self) {
        if self.p == 2 || self.order > 256 {
            return;
        }
        let o = self.order;
        let mut t = Vec::with_capacity((o * o) as usize);
        for a in 0..o {
            for b in 0..o {
                t.push(self.add_digits(a, b));
            }
        }
        self.add_table = Some(t);
    }

    fn add_digits(&self, mut a: Elem, mut b: Elem) -> Elem {
        let p = self.p;
        let mut r = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            r += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        r
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// Order of the field this one is presented over.
    pub fn base_order(&self) -> u64 {
        self.base_order as u64
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Monic modulus over the base field, constant term first.
    pub fn modulus(&self) -> &[Elem] {
        &self.modulus
    }

    pub fn base(&self) -> Option<&Arc<Field>> {
        self.base.as_ref()
    }

    /// Degree over the prime field.
    pub fn absolute_degree(&self) -> u32 {
        let mut e = 0;
        let mut o = self.order;
        while o > 1 {
            o /= self.p;
            e += 1;
        }
        e
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn primitive(&self) -> Elem {
        if self.order == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else if let Some(t) = &self.add_table {
            t[(a * self.order + b) as usize]
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut a, mut r, mut place) = (a, 0, 1);
        while a > 0 {
            r += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        r
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            a ^ b
        } else {
            self.add(a, self.neg(b))
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            None
        } else {
            let m = self.order - 1;
            Some(self.exp[((m - self.log[a as usize]) % m) as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let m = (self.order - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l as u128 * (e % m) as u128) % m as u128) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let m = (self.order - 1) as u64;
        let l = self.log[a as usize] as u64;
        Some(m / num_integer::gcd(m, l))
    }

    pub fn log(&self, a: Elem) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.log[a as usize])
        }
    }

    pub fn exp(&self, e: u64) -> Elem {
        if self.order == 2 {
            return 1;
        }
        self.exp[(e % (self.order as u64 - 1)) as usize]
    }

    /// a^{q^i} with q the base order.
    pub fn frobenius(&self, a: Elem, i: u32) -> Elem {
        let m = (self.order - 1) as u64;
        let i = i % self.degree;
        if a == 0 || m == 0 {
            return a;
        }
        let qi = pow_mod(self.base_order as u64, i as u64, m);
        self.pow(a, qi)
    }

    /// a^{p^r}.
    pub fn frobenius_p(&self, a: Elem, r: u32) -> Elem {
        if a == 0 {
            return 0;
        }
        let m = (self.order - 1) as u64;
        if m == 0 {
            return a;
        }
        self.pow(a, pow_mod(self.p as u64, r as u64, m))
    }

    /// N_{q^n/q^l}(a) = a^{(q^n-1)/(q^l-1)}.
    pub fn rel_norm(&self, a: Elem, l: u32) -> Result<Elem> {
        if l == 0 || !self.degree.is_multiple_of(l) {
            return invalid(format!("{l} does not divide {}", self.degree));
        }
        let q = self.base_order as u64;
        let e = (q.pow(self.degree) - 1) / (q.pow(l) - 1);
        Ok(self.pow(a, e))
    }

    pub fn norm(&self, a: Elem) -> Elem {
        self.rel_norm(a, 1).expect("1 divides n")
    }

    /// Tr_{q^n/q}(a), an element of the base field.
    pub fn trace(&self, a: Elem) -> Elem {
        (0..self.degree).fold(0, |acc, i| self.add(acc, self.frobenius(a, i)))
    }

    /// Whether a lies in the subfield F_{q^l}.
    pub fn in_subfield(&self, a: Elem, l: u32) -> bool {
        self.frobenius(a, l) == a
    }

    pub fn coords(&self, a: Elem) -> Vec<Elem> {
        unpack(a, self.base_order as u64, self.degree as usize)
    }

    pub fn from_coords(&self, c: &[Elem]) -> Result<Elem> {
        if c.len() != self.degree as usize || c.iter().any(|&x| x >= self.base_order) {
            return invalid("coordinate vector does not match the field");
        }
        Ok(pack(c, self.base_order as u64))
    }

    /// Multiplies an element by a base-field scalar (an index below the base order).
    #[inline]
    pub fn scale(&self, lambda: Elem, a: Elem) -> Elem {
        self.mul(lambda, a)
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u128;
    let mut b = (b % m) as u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u64
}

fn unpack(mut a: Elem, q: u64, n: usize) -> Vec<Elem> {
    let q = q as Elem;
    let mut v = vec![0; n];
    for c in v.iter_mut() {
        *c = a % q;
        a /= q;
    }
    v
}

fn pack(c: &[Elem], q: u64) -> Elem {
    c.iter().rev().fold(0, |acc, &x| acc * q as Elem + x)
}

fn poly_trim(a: &mut Vec<Elem>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mulmod(f: &Field, a: &[Elem], b: &[Elem], m: &[Elem]) -> Vec<Elem> {
    let n = m.len() - 1;
    let mut prod = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = f.add(prod[i + j], f.mul(x, y));
        }
    }
    // m is monic
    for d in (n..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            for k in 0..n {
                prod[d - n + k] = f.sub(prod[d - n + k], f.mul(c, m[k]));
            }
            prod[d] = 0;
        }
    }
    prod.truncate(n);
    prod.resize(n, 0);
    prod
}

/// Remainder of a modulo the monic polynomial m.
fn poly_rem(f: &Field, a: &[Elem], m: &[Elem]) -> Vec<Elem> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let d = r.len() - 1;
        let c = r[d];
        for k in 0..=dm {
            r[d - dm + k] = f.sub(r[d - dm + k], f.mul(c, m[k]));
        }
        poly_trim(&mut r);
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
pub fn is_irreducible(f: &Field, poly: &[Elem]) -> bool {
    let n = poly.len() - 1;
    if n == 0 || poly[n] != 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let q = f.order as u64;
    for d in 1..=n / 2 {
        for idx in 0..q.pow(d as u32) {
            let mut div = unpack(idx as Elem, q, d);
            div.push(1);
            if poly_rem(f, poly, &div).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Monic polynomials of degree n, ordered by the integer `Σ c_i q^i` with
/// the constant term as least significant digit; returns the first irreducible.
pub fn first_irreducible(f: &Field, n: usize) -> Vec<Elem> {
    let q = f.order as u64;
    for idx in 0..q.pow(n as u32) {
        let mut poly = unpack(idx as Elem, q, n);
        poly.push(1);
        if is_irreducible(f, &poly) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// F_q followed by F_{q^n} over it.
pub fn field_pair(q: u64, n: u32) -> Result<(Arc<Field>, Arc<Field>)> {
    let base = Arc::new(Field::from_q(q)?);
    let ext = Arc::new(Field::extension(base.clone(), n)?);
    Ok((base, ext))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<Field> {
        let mut v = Vec::new();
        for &(p, h) in &[(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (2, 6), (3, 3)] {
            v.push(Field::gf(p, h).unwrap());
        }
        v
    }

    #[test]
    fn prime_fields() {
        let f2 = Field::gf(2, 1).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![0, 1]);
        let f3 = Field::gf(3, 1).unwrap();
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.add(2, 2), 1);
        assert_eq!(f3.neg(1), 2);
    }

    #[test]
    fn f4_is_cyclic_of_order_3() {
        let f = Field::gf(2, 2).unwrap();
        let orders: Vec<u64> = (1..4).map(|a| f.mult_order(a).unwrap()).collect();
        assert!(orders.contains(&3));
        // direct table: some a has a, a^2, a^3 = 1 all distinct
        let g = (1..4u32)
            .find(|&a| {
                let a2 = f.mul(a, a);
                a != 1 && a2 != 1 && f.mul(a2, a) == 1
            })
            .unwrap();
        assert_ne!(g, 1);
    }

    #[test]
    fn modulus_choice() {
        let f8 = Field::gf(2, 3).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
        let f9 = Field::gf(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        // independent oracle: enumerate monic cubics over F_2 with root test
        let first = (0u32..8)
            .map(|c| [c & 1, (c >> 1) & 1, (c >> 2) & 1, 1])
            .find(|p| {
                // a cubic is irreducible iff it has no root
                (0..2u32).all(|x| (p[0] + p[1] * x + p[2] * x * x + x * x * x) % 2 != 0)
            })
            .unwrap();
        assert_eq!(f8.modulus(), &first);
    }

    #[test]
    fn f9_orders_divide_8() {
        let f = Field::gf(3, 2).unwrap();
        for a in 1..9 {
            assert_eq!(8 % f.mult_order(a).unwrap(), 0);
            assert_eq!(f.pow(a, 8), 1);
        }
    }

    #[test]
    fn field_axioms_small() {
        for f in all_fields().into_iter().filter(|f| f.order() <= 64) {
            let o = f.order as Elem;
            for a in 0..o {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..o {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..o {
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_identity_after_n_steps() {
        let (_, f) = field_pair(2, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 0), a);
            assert_eq!(f.frobenius(a, 3), a);
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(f.frobenius(f.frobenius(a, i), j), f.frobenius(a, (i + j) % 3));
                }
            }
        }
        let (_, f4) = field_pair(2, 2).unwrap();
        let w = f4.primitive();
        assert_eq!(f4.frobenius(w, 1), f4.mul(w, w));
    }

    #[test]
    fn norms() {
        let (_, f4) = field_pair(2, 2).unwrap();
        for a in 1..4 {
            assert_eq!(f4.norm(a), 1);
        }
        let (_, f9) = field_pair(3, 2).unwrap();
        assert_eq!(f9.norm(1), 1);
        assert_eq!((1..9).filter(|&a| f9.norm(a) == 1).count(), 4);
        assert!(f9.rel_norm(3, 3).is_err());
    }

    #[test]
    fn norm_tower() {
        // F_64 over F_2 through F_4 and F_8
        let f2 = Arc::new(Field::gf(2, 1).unwrap());
        let f64_ = Field::extension(f2, 6).unwrap();
        for a in f64_.elements() {
            let full = f64_.rel_norm(a, 1).unwrap();
            for l in [2u32, 3] {
                let mid = f64_.rel_norm(a, l).unwrap();
                assert!(f64_.in_subfield(mid, l));
                // N_{q^l/q} on the subfield is y -> y^{(q^l-1)/(q-1)}
                let down = f64_.pow(mid, 2u64.pow(l) - 1);
                assert_eq!(down, full);
            }
        }
    }

    #[test]
    fn trace_fibers_and_nondegeneracy() {
        let (_, f8) = field_pair(2, 3).unwrap();
        let ones = f8.elements().filter(|&a| f8.trace(a) == 1).count();
        assert_eq!(ones, 4);
        assert!(f8.elements().all(|a| f8.trace(a) < 2));
        for &(q, n) in &[(2u64, 2u32), (2, 3), (3, 2), (2, 4), (4, 2), (2, 6), (3, 3)] {
            let (_, f) = field_pair(q, n).unwrap();
            if f.order() > 64 {
                continue;
            }
            for a in 1..f.order() as Elem {
                assert!(f.elements().any(|b| f.trace(f.mul(a, b)) != 0));
            }
        }
    }

    #[test]
    fn base_embeds_as_small_indices() {
        let (base, f16) = field_pair(4, 2).unwrap();
        for a in base.elements() {
            for b in base.elements() {
                assert_eq!(f16.mul(a, b), base.mul(a, b));
                assert_eq!(f16.add(a, b), base.add(a, b));
            }
            assert!(f16.in_subfield(a, 1));
        }
        let fixed = f16.elements().filter(|&a| f16.frobenius(a, 1) == a).count();
        assert_eq!(fixed, 4);
    }

    #[test]
    fn size_limit() {
        assert!(matches!(Field::gf_with_limit(2, 21, 1 << 20), Err(Error::FieldTooLarge(..))));
        assert!(Field::gf(4, 1).is_err());
        assert!(PrimePower::from_q(12).is_err());
        assert_eq!(PrimePower::from_q(9).unwrap(), PrimePower { p: 3, h: 2, q: 9 });
    }
}
