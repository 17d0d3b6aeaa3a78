//! Parser for the scalar expression grammar used in JSON inputs and on the
//! command line: integer literals, `z` for the root of unity, `t` for the
//! deformation parameter, `+ - * / ^` and parentheses.

use super::cyclo::{euler_phi, Cyclo};
use super::ratfunc::RatFunc;
use crate::error::ScalarError;

pub const MAX_PHI: u32 = 16;

/// Parse an expression in the scalar grammar over Q(zeta_n)(t).
pub fn parse_scalar(text: &str, order: u32) -> Result<RatFunc, ScalarError> {
    if order < 1 {
        return Err(ScalarError::Parse {
            position: 0,
            message: "cyclotomic order must be at least 1".into(),
        });
    }
    let phi = euler_phi(order);
    if phi > MAX_PHI {
        return Err(ScalarError::OrderTooLarge {
            order,
            phi,
            max: MAX_PHI,
        });
    }
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        order,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    order: u32,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> ScalarError {
        ScalarError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, ScalarError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.div(&rhs)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.atom()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.integer_literal()?;
                    base.pow(e)
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(RatFunc::constant(Cyclo::zeta(self.order)))
            }
            Some(b't') => {
                self.pos += 1;
                Ok(RatFunc::var())
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer_literal()?;
                Ok(RatFunc::from_int(v))
            }
            Some(_) => Err(self.error("expected a number, 'z', 't', or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer_literal(&mut self) -> Result<i64, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        let mut negative = false;
        if self.bytes.get(self.pos) == Some(&b'-') {
            negative = true;
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(u8::is_ascii_digit)
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.bytes[digits_start..self.pos]).unwrap();
        let v: i64 = text.parse().map_err(|_| ScalarError::Parse {
            position: start,
            message: "integer literal out of range".into(),
        })?;
        Ok(if negative { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_sum() {
        let x = parse_scalar("z + t", 3).unwrap();
        assert!(x.is_r_integral());
        assert_eq!(x.reduce_at_zero().unwrap(), Cyclo::zeta(3));
        assert_eq!(
            x.sub(&RatFunc::var()),
            RatFunc::constant(Cyclo::zeta(3))
        );
    }

    #[test]
    fn geometric_unit() {
        let x = parse_scalar("1/(1-t)", 1).unwrap();
        assert!(x.is_r_integral());
        assert!(x.reduce_at_zero().unwrap().is_one());
    }

    #[test]
    fn uniformizer_inverse_is_not_integral() {
        let x = parse_scalar("1/t", 1).unwrap();
        assert!(!x.is_r_integral());
    }

    #[test]
    fn precedence_and_parens() {
        let x = parse_scalar("(-1 + z^2)/(1 - 2*t)", 3).unwrap();
        let z = Cyclo::zeta(3);
        let num = RatFunc::constant(z.mul(&z).sub(&Cyclo::one()));
        let den = RatFunc::one().sub(&RatFunc::from_int(2).mul(&RatFunc::var()));
        assert_eq!(x, num.div(&den).unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_scalar("1 + ", 1) {
            Err(ScalarError::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_scalar("2 ** 3", 1) {
            Err(ScalarError::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_scalar("1/(t - t)", 1).is_err());
    }

    #[test]
    fn display_round_trips_through_parser() {
        let samples = ["(-1 + z^2)/(1 - 2*t)", "t^3 - z*t", "3/2 + t", "0"];
        for s in samples {
            let x = parse_scalar(s, 3).unwrap();
            let y = parse_scalar(&x.to_string(), 3).unwrap();
            assert_eq!(x, y, "round-trip failed for {s}");
        }
    }

    #[test]
    fn order_bound_enforced() {
        assert!(parse_scalar("z", 17).is_ok()); // phi(17) = 16
        assert!(parse_scalar("z", 97).is_err()); // phi(97) = 96
        assert!(parse_scalar("z", 60).is_ok()); // phi(60) = 16
    }
}
