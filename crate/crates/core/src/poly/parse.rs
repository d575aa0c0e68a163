//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := [sign] term (sign term)*
//! term   := factor ([*] factor)*
//! factor := atom [^ exponent]
//! atom   := integer | x | y | ( expr )
//! exponent := [sign] integer | ( [sign] integer )
//! ```
//! Whitespace is ignored everywhere.

use num_bigint::BigInt;
use num_traits::One;

use super::{LaurentPoly2, PolyError};

pub fn parse_poly(text: &str) -> Result<LaurentPoly2, PolyError> {
    let mut parser = Parser {
        chars: text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect(),
        pos: 0,
        len: text.len(),
    };
    let poly = parser.expr()?;
    if let Some(&(at, c)) = parser.chars.get(parser.pos) {
        return Err(syntax(at, format!("unexpected '{c}'")));
    }
    Ok(poly)
}

fn syntax(position: usize, message: impl Into<String>) -> PolyError {
    PolyError::Syntax {
        position,
        message: message.into(),
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(at, _)| at)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly2, PolyError> {
        let negate = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly2, PolyError> {
        let mut acc = self.factor()?;
        loop {
            // implicit multiplication: "2x", "x y", "2(x+1)"
            let implicit = matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == 'x' || c == 'y' || c == '(');
            if self.eat('*') || implicit {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPoly2, PolyError> {
        let at = self.offset();
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if e >= 0 {
            return Ok(base.pow(e as u32));
        }
        match base.as_monomial() {
            Some(((i, j), c)) if c.is_one() => {
                let (i, j) = i
                    .checked_mul(e)
                    .zip(j.checked_mul(e))
                    .ok_or(PolyError::ExponentOverflow { position: at })?;
                Ok(LaurentPoly2::monomial(1, i, j))
            }
            _ => Err(PolyError::NegativePowerOfPolynomial { position: at }),
        }
    }

    fn atom(&mut self) -> Result<LaurentPoly2, PolyError> {
        let at = self.offset();
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(LaurentPoly2::monomial(1, 1, 0))
            }
            Some('y') => {
                self.pos += 1;
                Ok(LaurentPoly2::monomial(1, 0, 1))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.offset(), "expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                if matches!(self.peek(), Some('.' | 'e' | 'E' | '/')) {
                    return Err(PolyError::NonIntegerCoefficient { position: at });
                }
                let value: BigInt = digits.parse().map_err(|_| syntax(at, "invalid integer"))?;
                Ok(LaurentPoly2::constant(value))
            }
            Some('.') => Err(PolyError::NonIntegerCoefficient { position: at }),
            Some(c) => Err(syntax(at, format!("unexpected '{c}'"))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn exponent(&mut self) -> Result<i32, PolyError> {
        let paren = self.eat('(');
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let at = self.offset();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(syntax(at, "expected integer exponent"));
        }
        if self.peek() == Some('.') {
            return Err(syntax(self.offset(), "exponents must be integers"));
        }
        let magnitude: i32 = digits
            .parse()
            .map_err(|_| PolyError::ExponentOverflow { position: at })?;
        if paren && !self.eat(')') {
            return Err(syntax(self.offset(), "expected ')'"));
        }
        Ok(if negative { -magnitude } else { magnitude })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG8: &str = "y + y^-1 - x^4 - x^-4 + x^2 + x^-2 + 2";
    const K52: &str =
        "1 + y*(-1+2*x^2+2*x^4-x^8+x^10) + y^2*(x^4-x^6+2*x^10+2*x^12-x^14) + y^3*x^14";

    #[test]
    fn parses_paper_polynomials() {
        let a = parse_poly(FIG8).unwrap();
        assert_eq!(a.len(), 7);
        assert_eq!(a.coeff(-4, 0), BigInt::from(-1));
        assert_eq!(a.coeff(0, -1), BigInt::from(1));
        let b = parse_poly(K52).unwrap();
        assert_eq!(b.len(), 12);
        assert_eq!(b.coeff(14, 3), BigInt::from(1));
        assert_eq!(b.coeff(12, 2), BigInt::from(2));
    }

    #[test]
    fn zero_polynomial() {
        assert!(parse_poly("0").unwrap().is_zero());
        assert!(parse_poly("x - x").unwrap().is_zero());
    }

    #[test]
    fn exponent_forms() {
        assert_eq!(parse_poly("x^-4").unwrap(), parse_poly("x^(-4)").unwrap());
        assert_eq!(parse_poly("x^+2").unwrap(), parse_poly("x*x").unwrap());
        assert_eq!(
            parse_poly("(x*y^2)^-2").unwrap(),
            parse_poly("x^-2*y^-4").unwrap()
        );
        assert_eq!(
            parse_poly("(1+x)^2").unwrap(),
            parse_poly("1 + 2x + x^2").unwrap()
        );
        assert_eq!(parse_poly("2 x y").unwrap(), parse_poly("2*x*y").unwrap());
    }

    #[test]
    fn big_coefficients() {
        let p = parse_poly("123456789012345678901234567890*x").unwrap();
        assert_eq!(
            p.coeff(1, 0),
            "123456789012345678901234567890".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_poly("1.5*x"),
            Err(PolyError::NonIntegerCoefficient { position: 0 })
        );
        assert_eq!(
            parse_poly("x + .5"),
            Err(PolyError::NonIntegerCoefficient { position: 4 })
        );
        assert!(matches!(
            parse_poly("x + "),
            Err(PolyError::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            parse_poly("x + z"),
            Err(PolyError::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            parse_poly("(x + 1"),
            Err(PolyError::Syntax { .. })
        ));
        assert!(matches!(parse_poly("x^"), Err(PolyError::Syntax { .. })));
        assert!(matches!(
            parse_poly(""),
            Err(PolyError::Syntax { position: 0, .. })
        ));
        assert_eq!(
            parse_poly("(1+x)^-1"),
            Err(PolyError::NegativePowerOfPolynomial { position: 0 })
        );
        assert!(matches!(
            parse_poly("x^99999999999"),
            Err(PolyError::ExponentOverflow { .. })
        ));
    }

    #[test]
    fn print_parse_identity_on_paper_polynomials() {
        for text in [FIG8, K52] {
            let p = parse_poly(text).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }
}
