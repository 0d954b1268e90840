//! Text form of polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' nat)?
//! coeff  := int ('/' nat)?
//! var    := 'x' | 'y' | 't' | 'u'
//! ```
//!
//! Whitespace is insignificant. A leading sign on the first term is accepted.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder, DEGREE_CAP, MAX_VARS, VAR_NAMES};
use crate::poly::Polynomial;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let text = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse::<BigInt>().expect("digits parse"))
    }
}

/// Parse `text` into a polynomial in `arity` variables, grevlex order.
pub fn parse_poly<C: Coeff>(text: &str, arity: usize) -> Result<Polynomial<C>> {
    parse_poly_with_order(text, arity, MonomialOrder::GrevLex)
}

/// Parse a comma-separated generator list such as `"x^2, x*y, y^2"`.
pub fn parse_gens<C: Coeff>(text: &str, arity: usize) -> Result<Vec<Polynomial<C>>> {
    text.split(',').map(|g| parse_poly(g.trim(), arity)).collect()
}

/// Ideal generated by a comma-separated list.
pub fn parse_ideal<C: Coeff>(text: &str, arity: usize) -> Result<crate::ideal::Ideal<C>> {
    crate::ideal::Ideal::new(parse_gens(text, arity)?)
}

pub fn parse_poly_with_order<C: Coeff>(
    text: &str,
    arity: usize,
    order: MonomialOrder,
) -> Result<Polynomial<C>> {
    if arity == 0 || arity > MAX_VARS {
        return Err(Error::InvalidInput("arity must be between 1 and 4".into()));
    }
    let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
    let mut terms: Vec<(Monomial, C)> = Vec::new();
    let mut sign_neg = match lx.peek() {
        Some(b'-') => {
            lx.bump();
            true
        }
        Some(b'+') => {
            lx.bump();
            false
        }
        None => return Err(lx.err("empty expression")),
        _ => false,
    };
    loop {
        let (m, c) = parse_term::<C>(&mut lx, arity)?;
        terms.push((m, if sign_neg { c.neg() } else { c }));
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.bump();
                sign_neg = false;
            }
            Some(b'-') => {
                lx.bump();
                sign_neg = true;
            }
            Some(_) => return Err(lx.err("expected '+', '-' or end of input")),
        }
    }
    let p = Polynomial::from_terms(terms, arity, order);
    if let Some(d) = p.degree() {
        if d > DEGREE_CAP {
            return Err(Error::DegreeCap { degree: d });
        }
    }
    Ok(p)
}

fn parse_term<C: Coeff>(lx: &mut Lexer<'_>, arity: usize) -> Result<(Monomial, C)> {
    let mut coeff = C::one();
    let mut mono = Monomial::one(arity);
    match lx.peek() {
        Some(c) if c.is_ascii_digit() => {
            let num = lx.number()?;
            let den = if lx.peek() == Some(b'/') {
                lx.bump();
                let at = lx.pos;
                let d = lx.number()?;
                if d.is_zero() {
                    return Err(Error::Syntax { offset: at, message: "zero denominator".into() });
                }
                d
            } else {
                BigInt::one()
            };
            coeff = C::from_fraction(&num, &den)
                .ok_or_else(|| lx.err("denominator vanishes in the coefficient field"))?;
        }
        Some(_) => {
            parse_factor(lx, arity, &mut mono)?;
        }
        None => return Err(lx.err("expected a term")),
    }
    while lx.peek() == Some(b'*') {
        lx.bump();
        parse_factor(lx, arity, &mut mono)?;
    }
    Ok((mono, coeff))
}

fn parse_factor(lx: &mut Lexer<'_>, arity: usize, mono: &mut Monomial) -> Result<()> {
    let at = {
        lx.skip_ws();
        lx.pos
    };
    let c = lx.bump().ok_or_else(|| lx.err("expected a variable"))?;
    if !c.is_ascii_alphabetic() {
        return Err(Error::Syntax { offset: at, message: "expected a variable".into() });
    }
    let name = c as char;
    let idx = VAR_NAMES[..arity].iter().position(|&v| v == name).ok_or_else(|| {
        let mut s = String::new();
        s.push(name);
        Error::UnknownVariable { offset: at, name: s }
    })?;
    // reject identifiers like `xy` so that juxtaposition is never silently accepted
    if let Some(&n) = lx.src.get(lx.pos) {
        if n.is_ascii_alphanumeric() {
            return Err(Error::Syntax { offset: lx.pos, message: "expected '*' between factors".into() });
        }
    }
    let mut e: u32 = 1;
    if lx.peek() == Some(b'^') {
        lx.bump();
        let n = lx.number()?;
        e = u32::try_from(n).map_err(|_| Error::DegreeCap { degree: u32::MAX })?;
        if e > DEGREE_CAP {
            return Err(Error::DegreeCap { degree: e });
        }
    }
    let total = mono.exp(idx) as u32 + e;
    if total > DEGREE_CAP {
        return Err(Error::DegreeCap { degree: total });
    }
    mono.set_exp(idx, total as u16);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Fp31, Rational};
    use alloc::format;
    use proptest::prelude::*;

    type P = Polynomial<Rational>;

    #[test]
    fn parses_examples() {
        let f: P = parse_poly("x^2*y + 3*x - 1/2", 2).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.constant_term(), Rational::new(-1, 2));
        let z: P = parse_poly("x - x", 2).unwrap();
        assert!(z.is_zero());
        let y14: P = parse_poly("y^14", 2).unwrap();
        assert_eq!(y14.terms(), &[(Monomial::xy(0, 14), Rational::from_i64(1))]);
    }

    #[test]
    fn reports_errors_with_offsets() {
        let e = parse_poly::<Rational>("x + + y", 2).unwrap_err();
        assert!(matches!(e, Error::Syntax { offset: 4, .. }), "{e:?}");
        let e = parse_poly::<Rational>("x + t", 2).unwrap_err();
        assert!(matches!(e, Error::UnknownVariable { offset: 4, .. }), "{e:?}");
        let e = parse_poly::<Rational>("x^600", 2).unwrap_err();
        assert!(matches!(e, Error::DegreeCap { .. }));
        assert!(parse_poly::<Rational>("", 2).is_err());
        assert!(parse_poly::<Rational>("xy", 2).is_err());
        assert!(parse_poly::<Rational>("1/0", 2).is_err());
    }

    #[test]
    fn leading_minus_and_whitespace() {
        let f: P = parse_poly("  - y^14 ", 2).unwrap();
        assert_eq!(f.to_string(), "-y^14");
        let g: P = parse_poly("2 * x ^ 3 * y", 2).unwrap();
        assert_eq!(g.to_string(), "2*x^3*y");
    }

    #[test]
    fn prime_field_parse() {
        let f: Polynomial<Fp31> = parse_poly("1/2*x + 1/2*x", 2).unwrap();
        assert_eq!(f.to_string(), "x");
    }

    fn poly_strategy() -> impl Strategy<Value = P> {
        proptest::collection::vec(((-20i64..20, 1i64..5), (0u16..6, 0u16..6)), 0..8).prop_map(
            |ts| {
                P::from_terms(
                    ts.into_iter()
                        .map(|((n, d), (a, b))| (Monomial::xy(a, b), Rational::new(n, d))),
                    2,
                    MonomialOrder::GrevLex,
                )
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn print_then_parse_is_identity(p in poly_strategy()) {
            let text = format!("{p}");
            let back: P = parse_poly(&text, 2).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
