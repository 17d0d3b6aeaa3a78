//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! An element is a residue modulo the n-th cyclotomic polynomial, stored as a
//! dense vector of `phi(n)` rationals. Elements whose higher coordinates all
//! vanish are demoted to order 1, so plain rationals have a single canonical
//! representation and mixed arithmetic with any order works by promotion.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

/// Euler totient, by trial factorization (orders here are tiny).
pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Reduction data for one cyclotomic order, shared process-wide.
struct CycloTable {
    phi: usize,
    /// `reduction[k]` = coordinates of x^(phi+k) modulo the cyclotomic polynomial.
    reduction: Vec<Vec<BigRational>>,
    /// Integer coefficients of the cyclotomic polynomial itself (degree phi).
    min_poly: Vec<BigInt>,
}

fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed by exact division.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = divide_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials, quotient assumed to exist.
fn divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = rem[dd + k].clone(); // den is monic
        for (i, d) in den.iter().enumerate() {
            rem[i + k] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn table(n: u32) -> Arc<CycloTable> {
    static TABLES: OnceLock<RwLock<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();
    let lock = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = lock.read().unwrap().get(&n) {
        return t.clone();
    }
    let min_poly = cyclotomic_polynomial(n);
    let phi = min_poly.len() - 1;
    // Row for x^phi, then each next row by multiplying the previous one by x.
    let mut reduction: Vec<Vec<BigRational>> = Vec::with_capacity(phi.max(1) - 1);
    let base: Vec<BigRational> = (0..phi)
        .map(|i| BigRational::from_integer(-min_poly[i].clone()))
        .collect();
    reduction.push(base);
    for _ in 0..phi.saturating_sub(2) {
        let prev = reduction.last().unwrap();
        let mut next = vec![BigRational::zero(); phi];
        let top = prev[phi - 1].clone();
        for i in (1..phi).rev() {
            next[i] = prev[i - 1].clone();
        }
        for (i, r) in reduction[0].iter().enumerate() {
            next[i] += &top * r;
        }
        reduction.push(next);
    }
    let t = Arc::new(CycloTable {
        phi,
        reduction,
        min_poly,
    });
    lock.write().unwrap().insert(n, t.clone());
    t
}

/// An element of Q(zeta_n), reduced modulo the cyclotomic polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclo {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn rational(q: BigRational) -> Self {
        Cyclo {
            order: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The primitive n-th root of unity generating Q(zeta_n).
    pub fn zeta(n: u32) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        let phi = euler_phi(n) as usize;
        if phi == 1 {
            // zeta_1 = 1, zeta_2 = -1.
            return Self::from_int(if n == 1 { 1 } else { -1 });
        }
        let mut coeffs = vec![BigRational::zero(); phi];
        coeffs[1] = BigRational::one();
        Cyclo { order: n, coeffs }.normalized()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    /// Rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.order == 1).then(|| &self.coeffs[0])
    }

    /// Coordinates in the power basis 1, zeta, ..., zeta^(phi-1) of the given order.
    pub fn coords_in(&self, n: u32) -> Vec<BigRational> {
        let phi = euler_phi(n) as usize;
        assert!(
            self.order == 1 || self.order == n,
            "mixed cyclotomic orders {} and {}",
            self.order,
            n
        );
        let mut v = vec![BigRational::zero(); phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i] = c.clone();
        }
        v
    }

    fn normalized(mut self) -> Self {
        if self.order != 1 && self.coeffs[1..].iter().all(|c| c.is_zero()) {
            self.coeffs.truncate(1);
            self.order = 1;
        }
        self
    }

    fn promote(&self, n: u32, phi: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i] = c.clone();
        }
        debug_assert!(self.order == 1 || self.order == n);
        let _ = n;
        v
    }

    fn common_order(&self, other: &Self) -> u32 {
        match (self.order, other.order) {
            (1, n) | (n, 1) => n,
            (a, b) => {
                assert_eq!(a, b, "mixed cyclotomic orders {a} and {b}");
                a
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        if n == 1 {
            return Self::rational(&self.coeffs[0] + &other.coeffs[0]);
        }
        let phi = euler_phi(n) as usize;
        let mut a = self.promote(n, phi);
        let b = other.promote(n, phi);
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        Cyclo { order: n, coeffs: a }.normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        if n == 1 {
            return Self::rational(&self.coeffs[0] * &other.coeffs[0]);
        }
        let t = table(n);
        let phi = t.phi;
        let a = self.promote(n, phi);
        let b = other.promote(n, phi);
        let mut conv = vec![BigRational::zero(); 2 * phi - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigRational> = conv[..phi].to_vec();
        for k in phi..2 * phi - 1 {
            if conv[k].is_zero() {
                continue;
            }
            for (i, r) in t.reduction[k - phi].iter().enumerate() {
                out[i] += &conv[k] * r;
            }
        }
        Cyclo {
            order: n,
            coeffs: out,
        }
        .normalized()
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(Self::rational(self.coeffs[0].recip()));
        }
        // Extended Euclid against the cyclotomic polynomial over Q.
        let t = table(self.order);
        let modulus: Vec<BigRational> = t
            .min_poly
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let inv = poly_mod_inverse(&self.coeffs, &modulus)
            .expect("nonzero residue is invertible modulo an irreducible polynomial");
        let mut coeffs = inv;
        coeffs.resize(t.phi, BigRational::zero());
        Some(
            Cyclo {
                order: self.order,
                coeffs,
            }
            .normalized(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total ordering used for deterministic reporting, not a field order.
    pub fn cmp_key(&self, other: &Self) -> Ordering {
        let n = if self.order == 1 {
            other.order
        } else {
            self.order
        };
        let phi = euler_phi(n) as usize;
        let a = self.promote(n, phi);
        let b = other.promote(n, phi);
        for (x, y) in a.iter().zip(b.iter()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Crude archimedean bound: sum of absolute values of the coordinates
    /// (every conjugate has absolute value at most this).
    pub fn height(&self) -> BigRational {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

/// Extended Euclid in Q[x]: inverse of `a` modulo `m` (monic up to scaling).
fn poly_mod_inverse(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    type P = Vec<BigRational>;
    fn deg(p: &P) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }
    fn rem_div(num: &P, den: &P) -> (P, P) {
        let dd = deg(den).unwrap();
        let lead = den[dd].clone();
        let mut rem = num.clone();
        let mut quot = vec![BigRational::zero(); num.len()];
        while let Some(dn) = deg(&rem) {
            if dn < dd {
                break;
            }
            let c = &rem[dn] / &lead;
            for i in 0..=dd {
                let t = &c * &den[i];
                rem[i + dn - dd] -= t;
            }
            quot[dn - dd] = c;
        }
        (quot, rem)
    }
    fn mul(a: &P, b: &P) -> P {
        let mut out = vec![BigRational::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }
    fn sub(a: &P, b: &P) -> P {
        let mut out = a.clone();
        if out.len() < b.len() {
            out.resize(b.len(), BigRational::zero());
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        out
    }

    // Invariant: r0 = s0 * a (mod m), r1 = s1 * a (mod m).
    let mut r0: P = m.to_vec();
    let mut r1: P = a.to_vec();
    let mut s0: P = vec![BigRational::zero()];
    let mut s1: P = vec![BigRational::one()];
    while deg(&r1).is_some() {
        let (q, r) = rem_div(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    let d = deg(&r0)?;
    if d != 0 {
        return None; // common factor of positive degree: not invertible
    }
    let scale = r0[0].recip();
    let (_, reduced) = rem_div(&mul(&s0, &vec![scale]), &m.to_vec());
    Some(reduced)
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write_rational(f, q);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write_rational(f, c)?,
                _ => {
                    if !c.is_one() {
                        write_rational(f, c)?;
                        write!(f, "*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_negative() {
        write!(f, "(-{})", -q)?;
        return Ok(());
    }
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "({}/{})", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta3_satisfies_its_minimal_polynomial() {
        let z = Cyclo::zeta(3);
        let lhs = z.mul(&z).add(&z).add(&Cyclo::one());
        assert!(lhs.is_zero());
    }

    #[test]
    fn zeta2_is_minus_one() {
        assert_eq!(Cyclo::zeta(2), Cyclo::from_int(-1));
        assert_eq!(Cyclo::zeta(1), Cyclo::one());
    }

    #[test]
    fn rational_demotion_gives_canonical_equality() {
        let z = Cyclo::zeta(3);
        // z^3 = 1 must compare equal to the rational 1.
        assert_eq!(z.pow(3), Cyclo::one());
        assert_eq!(z.pow(3).order(), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let z = Cyclo::zeta(5);
        let x = z.mul(&z).add(&Cyclo::from_int(3));
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
        assert!(Cyclo::zero().inv().is_none());
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(3), 2);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(60), 16);
    }

    #[test]
    fn cyclotomic_polynomials_are_correct() {
        assert_eq!(
            cyclotomic_polynomial(12),
            vec![
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(-1),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
        assert_eq!(
            cyclotomic_polynomial(6),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]
        );
    }
}
