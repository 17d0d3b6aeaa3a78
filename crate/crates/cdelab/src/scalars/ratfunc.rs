//! Rational functions over a cyclotomic field, the field K = k(t).
//!
//! The local ring R is the subring of functions regular at t = 0; membership
//! is decided by `is_r_integral`. Canonical form: numerator and denominator
//! coprime, denominator monic, so equality is coefficient-wise.

use super::cyclo::Cyclo;
use super::poly::Poly;
use crate::error::ScalarError;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Canonicalize a fraction of polynomials.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead_inv = den.leading().unwrap().inv().unwrap();
        RatFunc {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Cyclo) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(Cyclo::from_int(v))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The deformation parameter t.
    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant value, if the element lies in the coefficient field.
    pub fn as_constant(&self) -> Option<Cyclo> {
        if self.den.is_one() && self.num.degree().map_or(true, |d| d == 0) {
            Some(self.num.eval_at_zero())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::reduced(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        other
            .inv()
            .map(|i| self.mul(&i))
            .ok_or(ScalarError::DivisionByZero)
    }

    pub fn pow(&self, e: i64) -> Result<Self, ScalarError> {
        let base = if e < 0 {
            self.inv().ok_or(ScalarError::DivisionByZero)?
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Membership in R: regular at t = 0.
    pub fn is_r_integral(&self) -> bool {
        !self.den.eval_at_zero().is_zero()
    }

    /// Reduction modulo the maximal ideal of R, i.e. evaluation at t = 0.
    pub fn reduce_at_zero(&self) -> Result<Cyclo, ScalarError> {
        let d0 = self.den.eval_at_zero();
        if d0.is_zero() {
            return Err(ScalarError::NotIntegral {
                value: self.to_string(),
            });
        }
        Ok(self.num.eval_at_zero().mul(&d0.inv().unwrap()))
    }

    /// t-adic valuation; `None` encodes plus infinity (the zero element).
    pub fn valuation(&self) -> Option<i64> {
        let vn = self.num.ord_at_zero()? as i64;
        let vd = self.den.ord_at_zero().unwrap() as i64;
        Some(vn - vd)
    }

    /// Evaluation at a nonzero point of the coefficient field.
    pub fn eval(&self, x: &Cyclo) -> Result<Cyclo, ScalarError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ScalarError::NotIntegral {
                value: format!("{self} at t = {x}"),
            });
        }
        Ok(self.num.eval(x).mul(&d.inv().unwrap()))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> RatFunc {
        RatFunc::var()
    }

    #[test]
    fn canonical_form_reduces_and_monicizes() {
        // (2t + 2) / (4t) -> (t + 1)/(2t) with monic denominator t: ((1/2)t + 1/2)/t
        let two = RatFunc::from_int(2);
        let x = t().add(&RatFunc::one()).mul(&two);
        let y = t().mul(&two).mul(&two);
        let q = x.div(&y).unwrap();
        assert!(q.denominator().leading().unwrap().is_one());
        assert_eq!(q.mul(&y), x);
    }

    #[test]
    fn integrality_and_reduction() {
        let one_over_1mt = RatFunc::one().div(&RatFunc::one().sub(&t())).unwrap();
        assert!(one_over_1mt.is_r_integral());
        assert_eq!(one_over_1mt.reduce_at_zero().unwrap(), Cyclo::one());

        let one_over_t = RatFunc::one().div(&t()).unwrap();
        assert!(!one_over_t.is_r_integral());
        assert!(one_over_t.reduce_at_zero().is_err());
    }

    #[test]
    fn valuations() {
        let x = t().mul(&t()).div(&RatFunc::one().sub(&t())).unwrap();
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(RatFunc::zero().valuation(), None);
        // (t^2 + t)/t^3 has valuation -2
        let y = t()
            .mul(&t())
            .add(&t())
            .div(&t().pow(3).unwrap())
            .unwrap();
        assert_eq!(y.valuation(), Some(-2));
    }

    #[test]
    fn valuation_is_multiplicative() {
        let x = t().mul(&t());
        let y = RatFunc::one().div(&t()).unwrap();
        assert_eq!(
            x.mul(&y).valuation().unwrap(),
            x.valuation().unwrap() + y.valuation().unwrap()
        );
    }
}
