//! Text syntax for polynomials.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*'? factor)*
//! factor := ('-' factor) | atom ('^' nat)?
//! atom   := int ('/' nat)? | ident | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies, so `2x y^2` reads as `2*x*y^2`. An identifier is
//! one letter optionally followed by digits or `_digits` (`x1`, `y_2`).

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::poly::{xyzt, Polynomial, Vars, Q};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown variable `{name}` at line {line}, column {col}")]
    UnknownVariable { name: String, line: usize, col: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: l0, col: c0 });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned { tok: Tok::Int(s.parse().expect("digits")), line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            i += 1;
            if i + 1 < chars.len() && chars[i] == '_' && chars[i + 1].is_ascii_digit() {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned { tok: Tok::Ident(s), line: l0, col: c0 });
            continue;
        }
        return Err(ParseError::Syntax { line: l0, col: c0, msg: format!("unexpected character `{c}`") });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        let t = self.peek();
        Err(ParseError::Syntax { line: t.line, col: t.col, msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = match self.peek().tok {
            Tok::Minus => {
                self.bump();
                -&self.term()?
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.bump();
            let e = self.nat("exponent")?;
            let e: u32 = match u32::try_from(&e) {
                Ok(e) if e <= 1000 => e,
                _ => return self.err("exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn nat(&mut self, what: &str) -> Result<BigInt, ParseError> {
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(n) => {
                self.bump();
                let mut c = Q::from_integer(n);
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let d = self.nat("denominator")?;
                    if d.is_zero() {
                        return Err(ParseError::Syntax { line: t.line, col: t.col, msg: "zero denominator".into() });
                    }
                    c /= Q::from_integer(d);
                }
                Ok(Polynomial::constant(self.vars.clone(), c))
            }
            Tok::Ident(name) => {
                self.bump();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Polynomial::var_at(self.vars.clone(), i)),
                    None => Err(ParseError::UnknownVariable { name, line: t.line, col: t.col }),
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if self.peek().tok != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            _ => self.err("expected a number, variable or `(`"),
        }
    }
}

/// Parses a polynomial in the given ring.
pub fn parse_polynomial_in(src: &str, vars: &Vars) -> Result<Polynomial, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, vars };
    let out = p.expr()?;
    if p.peek().tok != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// Parses a polynomial in x, y, z, t.
pub fn parse_polynomial(src: &str) -> Result<Polynomial, ParseError> {
    parse_polynomial_in(src, &xyzt())
}

/// Parses a comma separated list of positive integers, e.g. `1,5,3,2`.
pub fn parse_weights(src: &str) -> Result<Vec<u32>, ParseError> {
    let mut col = 1;
    let mut out = Vec::new();
    for part in src.split(',') {
        let trimmed = part.trim();
        let lead = part.len() - part.trim_start().len();
        match trimmed.parse::<u32>() {
            Ok(w) => out.push(w),
            Err(_) => {
                return Err(ParseError::Syntax {
                    line: 1,
                    col: col + lead,
                    msg: format!("expected a non-negative integer weight, found `{trimmed}`"),
                })
            }
        }
        col += part.chars().count() + 1;
    }
    Ok(out)
}

/// Parses a rational number such as `-3/4`.
pub fn parse_rational(src: &str) -> Result<Q, ParseError> {
    let p = parse_polynomial_in(src, &Vars::from(Vec::<String>::new()))?;
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_frac;

    #[test]
    fn implicit_multiplication() {
        let a = parse_polynomial("2x y^2 - t").unwrap();
        let b = parse_polynomial("2*x*y^2 - t").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fractions_and_parentheses() {
        let p = parse_polynomial("-1/4*(z + t)^2").unwrap();
        assert_eq!(p.to_string(), "-1/4*z^2 - 1/2*z*t - 1/4*t^2");
        assert_eq!(parse_rational("-3/4").unwrap(), q_frac(-3, 4));
    }

    #[test]
    fn error_positions() {
        match parse_polynomial("x + $") {
            Err(ParseError::Syntax { line: 1, col: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_polynomial("x +\n w") {
            Err(ParseError::UnknownVariable { name, line: 2, col: 2 }) => assert_eq!(name, "w"),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("x +").is_err());
        assert!(parse_polynomial("1/0").is_err());
    }

    #[test]
    fn indexed_identifiers() {
        let v = crate::poly::vars(&["x1", "y_2"]);
        let p = parse_polynomial_in("x1*y_2 + x1^2", &v).unwrap();
        assert_eq!(p.to_string(), "x1^2 + x1*y_2");
    }

    #[test]
    fn weights() {
        assert_eq!(parse_weights("1, 5,3,2").unwrap(), vec![1, 5, 3, 2]);
        assert!(matches!(parse_weights("1,a"), Err(ParseError::Syntax { col: 3, .. })));
    }
}
