//! Recursive-descent parser for the dataset expression grammar.
//!
//! ```text
//! sum     := ['-'] term (('+' | '-') term)*
//! term    := power (('*' | '/') power)*
//! power   := primary ['**' exponent]
//! exponent:= ['-'] INT | '(' ['+' | '-'] INT ')'
//! primary := INT | IDENT | IDENT '(' INT ')' | FUNC '(' sum ')' | '(' sum ')'
//! ```
//!
//! `p/q` between numerals folds into a single rational numeral, so
//! `19/104*sqrt(19)**( - 1)` parses to a product of the numeral `19/104` and a
//! negative power. Whitespace is insignificant.

use num_bigint::BigInt;
use num_traits::Zero;

use super::expr::{ExprTree, Func};
use super::RemnantError;
use crate::numeric::BigRat;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    LParen,
    RParen,
    Star,
    StarStar,
    Slash,
    Plus,
    Minus,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    end: usize,
}

fn lex(text: &str) -> Result<Lexer, RemnantError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("digits");
                toks.push((Tok::Int(v), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'*' => {
                if bytes.get(i + 1) == Some(&b'*') {
                    toks.push((Tok::StarStar, i));
                    i += 2;
                } else {
                    toks.push((Tok::Star, i));
                    i += 1;
                }
            }
            b'/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            b'+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            b'-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            _ => {
                return Err(RemnantError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{}`", c as char),
                })
            }
        }
    }
    Ok(Lexer {
        toks,
        end: text.len(),
    })
}

struct Parser {
    lx: Lexer,
    at: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.lx.toks.get(self.at).map_or(self.lx.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.lx.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, RemnantError> {
        Err(RemnantError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), RemnantError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn sum(&mut self) -> Result<ExprTree, RemnantError> {
        let mut terms = Vec::new();
        let first = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            ExprTree::negate(self.term()?)
        } else {
            self.term()?
        };
        terms.push(first);
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    terms.push(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    terms.push(ExprTree::negate(self.term()?));
                }
                _ => break,
            }
        }
        Ok(ExprTree::sum(terms))
    }

    fn term(&mut self) -> Result<ExprTree, RemnantError> {
        let mut factors = vec![self.power()?];
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    factors.push(self.power()?);
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    let pos = self.pos();
                    let d = self.power()?;
                    let last = factors.last_mut().unwrap();
                    match (&*last, d) {
                        (ExprTree::Num(a), ExprTree::Num(b)) => {
                            if b.is_zero() {
                                return Err(RemnantError::Syntax {
                                    pos,
                                    msg: "division by zero".into(),
                                });
                            }
                            *last = ExprTree::Num(a / b);
                        }
                        (_, d) => factors.push(ExprTree::pow(d, -1)),
                    }
                }
                _ => break,
            }
        }
        Ok(ExprTree::product(factors))
    }

    fn power(&mut self) -> Result<ExprTree, RemnantError> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::StarStar) {
            return Ok(base);
        }
        self.at += 1;
        let e = self.exponent()?;
        if e == 0 {
            return self.err("zero exponent");
        }
        Ok(ExprTree::pow(base, e))
    }

    fn exponent(&mut self) -> Result<i64, RemnantError> {
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.at += 1;
        }
        let neg = match self.peek() {
            Some(Tok::Minus) => {
                self.at += 1;
                true
            }
            Some(Tok::Plus) if paren => {
                self.at += 1;
                false
            }
            _ => false,
        };
        let v = match self.bump() {
            Some(Tok::Int(v)) => i64::try_from(v).or_else(|_| self.err("exponent too large"))?,
            _ => {
                self.at -= 1;
                return self.err("expected integer exponent");
            }
        };
        if paren {
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(if neg { -v } else { v })
    }

    fn primary(&mut self) -> Result<ExprTree, RemnantError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(v)) => Ok(ExprTree::Num(BigRat::from_integer(v))),
            Some(Tok::LParen) => {
                let e = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                if self.peek() != Some(&Tok::LParen) {
                    return Ok(ExprTree::Sym { name, index: None });
                }
                if let Some(f) = Func::from_name(&name) {
                    self.at += 1;
                    let arg = self.sum()?;
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(ExprTree::call(f, arg));
                }
                // indexed symbol such as R(1); anything else is an unknown call
                let save = self.at;
                self.at += 1;
                if let (Some(Tok::Int(i)), Some((Tok::RParen, _))) =
                    (self.peek().cloned(), self.lx.toks.get(self.at + 1))
                {
                    if let Ok(index) = u64::try_from(&i) {
                        self.at += 2;
                        return Ok(ExprTree::Sym {
                            name,
                            index: Some(index),
                        });
                    }
                }
                self.at = save;
                Err(RemnantError::UnknownFunction { name, pos })
            }
            Some(_) => {
                self.at -= 1;
                self.err("expected a number, symbol or `(`")
            }
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<ExprTree, RemnantError> {
    let mut p = Parser {
        lx: lex(text)?,
        at: 0,
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.sum()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}
