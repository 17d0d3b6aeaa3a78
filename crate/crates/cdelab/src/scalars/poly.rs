//! Dense polynomials in the deformation variable `t` over a cyclotomic field.

use super::cyclo::Cyclo;
use std::fmt;

/// Polynomial with cyclotomic coefficients; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Cyclo>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Cyclo>) -> Self {
        while coeffs.last().is_some_and(Cyclo::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(Cyclo::one())
    }

    pub fn constant(c: Cyclo) -> Self {
        Poly::new(vec![c])
    }

    pub fn var() -> Self {
        Poly::new(vec![Cyclo::zero(), Cyclo::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Cyclo {
        self.coeffs.get(i).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Cyclo> {
        self.coeffs.last()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(Cyclo::neg).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Cyclo::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Cyclo) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, den: &Self) -> (Self, Self) {
        let dd = den.degree().expect("division by the zero polynomial");
        let lead_inv = den.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let steps = self.coeffs.len().saturating_sub(dd);
        let mut quot = vec![Cyclo::zero(); steps];
        for k in (0..steps).rev() {
            let c = rem[k + dd].mul(&lead_inv);
            if !c.is_zero() {
                for i in 0..=dd {
                    rem[i + k] = rem[i + k].sub(&c.mul(&den.coeff(i)));
                }
                quot[k] = c;
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&Cyclo::from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Cyclo) -> Cyclo {
        let mut acc = Cyclo::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn eval_at_zero(&self) -> Cyclo {
        self.coeff(0)
    }

    /// Order of vanishing at t = 0; `None` for the zero polynomial.
    pub fn ord_at_zero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Substitute t -> t + c.
    pub fn shift(&self, c: &Cyclo) -> Self {
        let mut acc = Poly::zero();
        let shifted_var = Poly::new(vec![c.clone(), Cyclo::one()]);
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&shifted_var).add(&Poly::constant(coeff.clone()));
        }
        acc
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
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
            let needs_paren = c.as_rational().is_none();
            match i {
                0 => {
                    if needs_paren {
                        write!(f, "({c})")?;
                    } else {
                        write!(f, "{c}")?;
                    }
                }
                _ => {
                    if !c.is_one() {
                        if needs_paren {
                            write!(f, "({c})*")?;
                        } else {
                            write!(f, "{c}*")?;
                        }
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(ints: &[i64]) -> Poly {
        Poly::new(ints.iter().map(|&v| Cyclo::from_int(v)).collect())
    }

    #[test]
    fn division_with_remainder() {
        // (t^2 + t) = (t + 1) * t + 0
        let (q, r) = p(&[0, 1, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[0, 1]));
        assert!(r.is_zero());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(q, p(&[-1, 1]));
        assert_eq!(r, p(&[2]));
    }

    #[test]
    fn gcd_is_monic() {
        let a = p(&[0, 2, 2]); // 2t(t+1)
        let b = p(&[0, 0, 3]); // 3t^2
        assert_eq!(a.gcd(&b), p(&[0, 1]));
    }

    #[test]
    fn shift_substitutes() {
        // (t^2)(t -> t+1) = t^2 + 2t + 1
        assert_eq!(p(&[0, 0, 1]).shift(&Cyclo::one()), p(&[1, 2, 1]));
    }

    #[test]
    fn vanishing_order() {
        assert_eq!(p(&[0, 0, 5, 1]).ord_at_zero(), Some(2));
        assert_eq!(Poly::zero().ord_at_zero(), None);
    }
}
