//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary | <after ')'> factor)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. `*` is mandatory between factors unless the
//! left factor ends with `)`.

use thiserror::Error;

use crate::poly::{Poly, RingRef};

const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("bad numeric literal at position {pos}: {msg}")]
    BadNumber { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' | '-' | '*' | '^' | '(' | ')' => {
                out.push((
                    pos,
                    match c {
                        '+' => Tok::Plus,
                        '-' => Tok::Minus,
                        '*' => Tok::Star,
                        '^' => Tok::Caret,
                        '(' => Tok::LParen,
                        _ => Tok::RParen,
                    },
                ));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                out.push((pos, Tok::Num(chars[start..i].iter().map(|x| x.1).collect())));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                out.push((
                    pos,
                    Tok::Ident(chars[start..i].iter().map(|x| x.1).collect()),
                ));
            }
            other => {
                return Err(ParseError::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    ring: &'a RingRef,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    let t = self.term()?;
                    acc = acc.add(&t).expect("same ring");
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t).expect("same ring");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let (mut acc, mut closed) = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    let (f, c) = self.unary()?;
                    acc = acc.mul(&f).expect("same ring");
                    closed = c;
                }
                Some(Tok::LParen | Tok::Ident(_) | Tok::Num(_)) if closed => {
                    let (f, c) = self.power()?;
                    acc = acc.mul(&f).expect("same ring");
                    closed = c;
                }
                Some(Tok::LParen | Tok::Ident(_) | Tok::Num(_)) => {
                    return Err(self.syntax("missing `*` between factors"))
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Returns the parsed value and whether it ended with `)`.
    fn unary(&mut self) -> Result<(Poly, bool), ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                let (p, c) = self.unary()?;
                Ok((p.neg(), c))
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<(Poly, bool), ParseError> {
        let (base, closed) = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Num(digits)) => {
                    self.at += 1;
                    let e: u32 = digits
                        .parse()
                        .ok()
                        .filter(|e| *e <= MAX_EXPONENT)
                        .ok_or_else(|| ParseError::BadNumber {
                            pos,
                            msg: format!("exponent `{digits}` out of range"),
                        })?;
                    return Ok((base.pow(e), false));
                }
                _ => return Err(self.syntax("expected a non-negative integer exponent")),
            }
        }
        Ok((base, closed))
    }

    fn atom(&mut self) -> Result<(Poly, bool), ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(digits)) => {
                self.at += 1;
                let p = self.ring.modulus() as u64;
                let v = digits
                    .bytes()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p);
                Ok((Poly::constant(self.ring, v as u32), false))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let i = self
                    .ring
                    .var_index(&name)
                    .ok_or(ParseError::UnknownVariable { name, pos })?;
                Ok((Poly::var(self.ring, i), false))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.syntax("expected `)`"));
                }
                self.at += 1;
                Ok((inner, true))
            }
            Some(t) => Err(self.syntax(format!("unexpected token {t:?}"))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }
}

/// Parses `text` into canonical form in `ring`.
pub fn parse_poly(text: &str, ring: &RingRef) -> Result<Poly, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError::Syntax {
            pos: 0,
            msg: "empty polynomial".into(),
        });
    }
    let mut p = Parser {
        toks,
        at: 0,
        ring,
        end: text.len(),
    };
    let poly = p.expr()?;
    if p.at != p.toks.len() {
        return Err(p.syntax("trailing input"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn ring() -> RingRef {
        Ring::grevlex(32003, &["x", "y", "z", "w"]).unwrap()
    }

    #[test]
    fn zero_polynomial() {
        assert!(parse_poly("0", &ring()).unwrap().is_zero());
    }

    #[test]
    fn worked_example_cubic() {
        let f = parse_poly("y^2*w - x^2*(x+w)", &ring()).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.is_homogeneous());
        assert_eq!(f.to_text(), "-x^3 - x^2*w + y^2*w");
    }

    #[test]
    fn expand_and_cancel() {
        let f = parse_poly("(x+y)^2 - x^2 - 2*x*y", &ring()).unwrap();
        assert_eq!(f, parse_poly("y^2", &ring()).unwrap());
    }

    #[test]
    fn implicit_product_after_paren() {
        let r = ring();
        assert_eq!(
            parse_poly("(x+y)(x-y)", &r).unwrap(),
            parse_poly("x^2 - y^2", &r).unwrap()
        );
        assert_eq!(
            parse_poly("(x)y", &r).unwrap(),
            parse_poly("x*y", &r).unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert_eq!(
            parse_poly("x + q", &r),
            Err(ParseError::UnknownVariable {
                name: "q".into(),
                pos: 4
            })
        );
        assert!(matches!(
            parse_poly("2x", &r),
            Err(ParseError::Syntax { pos: 1, .. })
        ));
        assert!(matches!(
            parse_poly("x +", &r),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("x $ y", &r),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("x^99999999999", &r),
            Err(ParseError::BadNumber { .. })
        ));
    }

    #[test]
    fn large_literals_reduce() {
        let r = ring();
        assert_eq!(
            parse_poly("32004*x", &r).unwrap(),
            parse_poly("x", &r).unwrap()
        );
    }
}
