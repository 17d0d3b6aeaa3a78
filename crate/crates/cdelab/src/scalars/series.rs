//! Truncated power series k[t]/t^N, the finite-precision window into R.

use super::cyclo::Cyclo;
use super::ratfunc::RatFunc;
use crate::error::ScalarError;
use std::fmt;

/// A residue in k[t]/t^N; all ring operations truncate at degree N.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    prec: usize,
    coeffs: Vec<Cyclo>,
}

impl Series {
    pub fn zero(prec: usize) -> Self {
        assert!(prec >= 1, "precision must be positive");
        Series {
            prec,
            coeffs: vec![Cyclo::zero(); prec],
        }
    }

    pub fn constant(c: Cyclo, prec: usize) -> Self {
        let mut s = Self::zero(prec);
        s.coeffs[0] = c;
        s
    }

    pub fn one(prec: usize) -> Self {
        Self::constant(Cyclo::one(), prec)
    }

    pub fn from_coeffs(coeffs: Vec<Cyclo>, prec: usize) -> Self {
        let mut c = coeffs;
        c.resize(prec, Cyclo::zero());
        c.truncate(prec);
        Series { prec, coeffs: c }
    }

    /// Expand an R-integral rational function to precision N.
    /// This map R -> k[t]/t^N is a ring homomorphism.
    pub fn expand(x: &RatFunc, prec: usize) -> Result<Self, ScalarError> {
        let d0 = x.denominator().eval_at_zero();
        if d0.is_zero() {
            return Err(ScalarError::NotIntegral {
                value: x.to_string(),
            });
        }
        let num = Series::from_coeffs(x.numerator().coeffs().to_vec(), prec);
        let den = Series::from_coeffs(x.denominator().coeffs().to_vec(), prec);
        Ok(num.mul(&den.inv().unwrap()))
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn coeff(&self, i: usize) -> &Cyclo {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Cyclo::is_zero)
    }

    /// t-adic valuation within the window; `None` when zero to precision.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.prec, other.prec, "mixed series precisions");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Series {
            prec: self.prec,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Series {
            prec: self.prec,
            coeffs: self.coeffs.iter().map(Cyclo::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let mut out = vec![Cyclo::zero(); self.prec];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= self.prec {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Series {
            prec: self.prec,
            coeffs: out,
        }
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        Series {
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Inverse of a unit (nonzero constant term).
    pub fn inv(&self) -> Option<Self> {
        let c0 = self.coeffs[0].inv()?;
        let mut out = vec![Cyclo::zero(); self.prec];
        out[0] = c0.clone();
        for n in 1..self.prec {
            // coefficient n of (self * out) must vanish
            let mut acc = Cyclo::zero();
            for i in 1..=n {
                if !self.coeffs[i].is_zero() {
                    acc = acc.add(&self.coeffs[i].mul(&out[n - i]));
                }
            }
            out[n] = acc.neg().mul(&c0);
        }
        Some(Series {
            prec: self.prec,
            coeffs: out,
        })
    }

    /// View as the polynomial with the same coefficients.
    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::from_poly(super::poly::Poly::new(self.coeffs.clone()))
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.to_ratfunc(), self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        // 1/(1-t) = 1 + t + t^2 + ...
        let x = RatFunc::one()
            .div(&RatFunc::one().sub(&RatFunc::var()))
            .unwrap();
        let s = Series::expand(&x, 5).unwrap();
        for i in 0..5 {
            assert!(s.coeff(i).is_one());
        }
    }

    #[test]
    fn expansion_is_multiplicative() {
        let t = RatFunc::var();
        let a = RatFunc::one().add(&t);
        let b = RatFunc::one().sub(&t).inv().unwrap();
        let lhs = Series::expand(&a.mul(&b), 8).unwrap();
        let rhs = Series::expand(&a, 8).unwrap().mul(&Series::expand(&b, 8).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn non_integral_rejected() {
        let x = RatFunc::one().div(&RatFunc::var()).unwrap();
        assert!(Series::expand(&x, 3).is_err());
    }
}
