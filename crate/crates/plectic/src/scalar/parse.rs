//! Recursive-descent parser for the expression grammar
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := base ('^' nonneg-integer)?
//! base   := identifier | integer | '(' expr ')'
//! ```
//!
//! Unary minus may precede any factor. Whitespace is ignored.

use num_bigint::BigInt;

use super::chart::Chart;
use super::expr::ScalarExpr;
use crate::error::{Error, Result};

/// Syntax tree shared by scalar and form parsing.
#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Int(BigInt),
    Ident { name: String, pos: usize },
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
    Pow(Box<Ast>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(bytes[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn eat_op(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_op('+') {
                lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_op('-') {
                lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.signed_factor()?;
        loop {
            if self.eat_op('*') {
                lhs = Ast::Mul(Box::new(lhs), Box::new(self.signed_factor()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.at += 1;
                lhs = Ast::Div(Box::new(lhs), Box::new(self.signed_factor()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn signed_factor(&mut self) -> Result<Ast> {
        if self.eat_op('-') {
            Ok(Ast::Neg(Box::new(self.signed_factor()?)))
        } else {
            self.factor()
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        let base = self.base()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        let pos = self.pos();
        match self.toks.get(self.at).cloned() {
            Some((Tok::Int(n), _)) => {
                self.at += 1;
                let e: u32 = n.try_into().map_err(|_| Error::BadExponent {
                    pos,
                    msg: "exponent too large".into(),
                })?;
                Ok(Ast::Pow(Box::new(base), e))
            }
            Some((Tok::Op('-'), _)) => Err(Error::BadExponent {
                pos,
                msg: "negative exponent".into(),
            }),
            _ => Err(Error::BadExponent {
                pos,
                msg: "expected a nonnegative integer exponent".into(),
            }),
        }
    }

    fn base(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.toks.get(self.at).cloned() {
            Some((Tok::Int(n), _)) => {
                self.at += 1;
                Ok(Ast::Int(n))
            }
            Some((Tok::Ident(name), _)) => {
                self.at += 1;
                Ok(Ast::Ident { name, pos })
            }
            Some((Tok::Op('('), _)) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Syntax {
                        pos: self.pos(),
                        msg: "expected `)`".into(),
                    });
                }
                Ok(e)
            }
            Some((t, _)) => Err(Error::Syntax {
                pos,
                msg: format!("unexpected {}", describe(&t)),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("integer `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Op(c) => format!("`{c}`"),
    }
}

/// Parses text into a syntax tree without resolving identifiers.
pub fn parse_ast(text: &str) -> Result<Ast> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.chars().count(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(Error::Syntax {
            pos: p.pos(),
            msg: "trailing input".into(),
        });
    }
    Ok(e)
}

/// Evaluates a tree to a rational function in the chart's coordinates.
pub fn eval_scalar(ast: &Ast, chart: &Chart) -> Result<ScalarExpr> {
    Ok(match ast {
        Ast::Int(n) => ScalarExpr::from_bigint(n.clone()),
        Ast::Ident { name, pos } => match chart.index_of(name) {
            Some(i) => ScalarExpr::var(i),
            None => {
                return Err(Error::UnknownIdentifier {
                    pos: *pos,
                    name: name.clone(),
                })
            }
        },
        Ast::Neg(a) => eval_scalar(a, chart)?.neg(),
        Ast::Add(a, b) => eval_scalar(a, chart)?.add(&eval_scalar(b, chart)?),
        Ast::Sub(a, b) => eval_scalar(a, chart)?.sub(&eval_scalar(b, chart)?),
        Ast::Mul(a, b) => eval_scalar(a, chart)?.mul(&eval_scalar(b, chart)?),
        Ast::Div(a, b, _) => eval_scalar(a, chart)?.div(&eval_scalar(b, chart)?)?,
        Ast::Pow(a, e) => eval_scalar(a, chart)?.pow(*e),
    })
}

/// Parses a scalar expression in the coordinates of `chart`.
pub fn parse_expr(text: &str, chart: &Chart) -> Result<ScalarExpr> {
    eval_scalar(&parse_ast(text)?, chart)
}
