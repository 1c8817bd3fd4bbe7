//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' digits)?
//! atom   := digits ('/' digits)? | ident | '(' expr ')'
//! ```
//!
//! Identifiers must be declared, except `zetaN`, which denotes the primitive
//! `N`-th root of unity unless a variable of that name is declared.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{vars_of, MultiPoly, Vars};
use crate::scalar::Scalar;

pub fn parse_poly<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<MultiPoly> {
    let vars = vars_of(vars);
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected `{}`", p.src[p.pos] as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vars,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("exponent must be a non-negative integer"));
        }
        let e: u32 = digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: format!("exponent `{digits}` is too large"),
        })?;
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().unwrap();
                let mut value = BigRational::from_integer(num);
                if self.src.get(self.pos) == Some(&b'/')
                    && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit)
                {
                    self.pos += 1;
                    let at = self.pos;
                    let den: BigInt = self.digits().parse().unwrap();
                    if den.is_zero() {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: "zero denominator".into(),
                        });
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(MultiPoly::constant(self.vars.clone(), Scalar::Rat(value)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if self.vars.iter().any(|v| v == name) {
                    return Ok(MultiPoly::var(self.vars.clone(), name).unwrap());
                }
                if let Some(order) = name.strip_prefix("zeta").and_then(|n| n.parse::<u32>().ok()) {
                    if order >= 1 {
                        return Ok(MultiPoly::constant(self.vars.clone(), Scalar::zeta(order)));
                    }
                }
                Err(Error::Syntax {
                    pos: start,
                    msg: format!("unknown identifier `{name}`"),
                })
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const XY: &[&str] = &["x", "y"];

    #[test]
    fn basics() {
        let p = parse_poly("x^2 - 2*x*y + y^2", XY).unwrap();
        let q = parse_poly("(x - y)^2", XY).unwrap();
        assert_eq!(p, q);
        assert_eq!(parse_poly("1/2*x + 1/2*x", XY).unwrap().to_string(), "x");
        assert_eq!(parse_poly("-x^2", XY).unwrap().to_string(), "-x^2");
        assert_eq!(parse_poly("--3", XY).unwrap().to_string(), "3");
    }

    #[test]
    fn canonical_roundtrip() {
        for s in ["3*x^2*y - 1/2*y^3", "-x + 7", "x*y", "0", "-1/3"] {
            assert_eq!(parse_poly(s, XY).unwrap().to_string(), s);
        }
    }

    #[test]
    fn cyclotomic_constants() {
        let p = parse_poly("(-1 + 2*zeta6)*x", XY).unwrap();
        assert_eq!(p.to_string(), "(-1 + 2*zeta6)*x");
        let z = parse_poly("zeta6^3", XY).unwrap();
        assert_eq!(z.to_string(), "-1");
    }

    #[test]
    fn errors_are_positioned() {
        match parse_poly("x^-1", XY) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        match parse_poly("x + z", XY) {
            Err(Error::Syntax { pos, msg }) => {
                assert_eq!(pos, 4);
                assert!(msg.contains("`z`"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("(x + y", XY), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_poly("x + y)", XY), Err(Error::Syntax { pos: 5, .. })));
        assert!(matches!(parse_poly("x/2", XY), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("", XY), Err(Error::Syntax { .. })));
        assert!(matches!(parse_poly("1/0", XY), Err(Error::Syntax { pos: 2, .. })));
    }
}
