use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{ParseError, ParseErrorKind, Pos};
use crate::field::Coeff;
use crate::poly::Polynomial;
use crate::ring::Ring;

const MAX_EXPONENT: u32 = 255;
const MAX_DEPTH: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Int(BigInt),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// A syntax tree node with the position of its first character (of the
/// operator, for binary nodes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Op(c) => format!("`{c}`"),
            Tok::End => "end of line".into(),
        }
    }
}

fn lex(text: &str, start: Pos) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let at = |i: usize| Pos {
        line: start.line,
        column: start.column + i,
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[s..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), at(s)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[s..i].iter().collect()), at(s)));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), at(i)));
            i += 1;
        } else {
            return Err(ParseError::new(
                at(i),
                ParseErrorKind::Syntax {
                    expected: vec!["number", "identifier", "operator"],
                    found: format!("`{c}`"),
                },
            ));
        }
    }
    out.push((Tok::End, at(chars.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: Vec<&'static str>) -> Result<T, ParseError> {
        let (tok, pos) = self.peek();
        Err(ParseError::new(
            *pos,
            ParseErrorKind::Syntax {
                expected,
                found: tok.describe(),
            },
        ))
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError::new(self.peek().1, ParseErrorKind::Eval("expression nested too deeply".into())));
        }
        let mut lhs = self.term()?;
        while let (Tok::Op(c @ ('+' | '-')), pos) = self.peek().clone() {
            self.bump();
            let rhs = self.term()?;
            let (l, r) = (Box::new(lhs), Box::new(rhs));
            let kind = if c == '+' { ExprKind::Add(l, r) } else { ExprKind::Sub(l, r) };
            lhs = Expr { kind, pos };
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let (Tok::Op(c @ ('*' | '/')), pos) = self.peek().clone() {
            self.bump();
            let rhs = self.unary()?;
            let (l, r) = (Box::new(lhs), Box::new(rhs));
            let kind = if c == '*' { ExprKind::Mul(l, r) } else { ExprKind::Div(l, r) };
            lhs = Expr { kind, pos };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            (Tok::Op('-'), pos) => {
                self.bump();
                self.depth += 1;
                if self.depth > MAX_DEPTH {
                    return Err(ParseError::new(pos, ParseErrorKind::Eval("expression nested too deeply".into())));
                }
                let inner = self.unary()?;
                self.depth -= 1;
                Ok(Expr {
                    kind: ExprKind::Neg(Box::new(inner)),
                    pos,
                })
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        let (Tok::Op('^'), pos) = self.peek().clone() else {
            return Ok(base);
        };
        self.bump();
        let (tok, epos) = self.peek().clone();
        let Tok::Int(n) = tok else {
            return self.fail(vec!["exponent"]);
        };
        self.bump();
        let e = u32::try_from(&n)
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::new(epos, ParseErrorKind::Eval(format!("exponent {n} exceeds {MAX_EXPONENT}"))))?;
        Ok(Expr {
            kind: ExprKind::Pow(Box::new(base), e),
            pos,
        })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            (Tok::Int(n), pos) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Int(n), pos })
            }
            (Tok::Ident(s), pos) => {
                self.bump();
                Ok(Expr { kind: ExprKind::Sym(s), pos })
            }
            (Tok::Op('('), _) => {
                self.bump();
                let e = self.expr()?;
                match self.peek() {
                    (Tok::Op(')'), _) => {
                        self.bump();
                        Ok(e)
                    }
                    _ => self.fail(vec!["`)`", "operator"]),
                }
            }
            _ => self.fail(vec!["number", "identifier", "`(`", "`-`"]),
        }
    }
}

/// Parses one expression occupying `text`, whose first character sits at
/// `start`. Juxtaposition (`2x`, `x y`) is a syntax error.
pub fn parse_expression(text: &str, start: Pos) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(text, start)?,
        at: 0,
        depth: 0,
    };
    let e = p.expr()?;
    match p.peek().0 {
        Tok::End => Ok(e),
        _ => p.fail(vec!["operator", "end of line"]),
    }
}

impl Expr {
    /// Every symbol occurrence, in source order.
    pub fn symbols(&self) -> Vec<(&str, Pos)> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols<'a>(&'a self, out: &mut Vec<(&'a str, Pos)>) {
        match &self.kind {
            ExprKind::Int(_) => {}
            ExprKind::Sym(s) => out.push((s, self.pos)),
            ExprKind::Neg(e) | ExprKind::Pow(e, _) => e.collect_symbols(out),
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    /// Evaluates in `ring`, reading parameters from `params`. Division is
    /// only by nonzero constants.
    pub fn eval(&self, ring: &Arc<Ring>, params: &HashMap<String, Coeff>) -> Result<Polynomial, ParseError> {
        let eval_err = |m: String| ParseError::new(self.pos, ParseErrorKind::Eval(m));
        Ok(match &self.kind {
            ExprKind::Int(n) => Polynomial::constant(ring, ring.field().from_bigint(n)),
            ExprKind::Sym(s) => match (ring.var_index(s), params.get(s)) {
                (Some(i), _) => Polynomial::var(ring, i),
                (None, Some(c)) => Polynomial::constant(ring, ring.field().convert(c).map_err(|e| eval_err(e.to_string()))?),
                (None, None) => return Err(ParseError::new(self.pos, ParseErrorKind::UnknownSymbol(s.clone()))),
            },
            ExprKind::Neg(e) => -&e.eval(ring, params)?,
            ExprKind::Add(a, b) => &a.eval(ring, params)? + &b.eval(ring, params)?,
            ExprKind::Sub(a, b) => &a.eval(ring, params)? - &b.eval(ring, params)?,
            ExprKind::Mul(a, b) => &a.eval(ring, params)? * &b.eval(ring, params)?,
            ExprKind::Div(a, b) => {
                let num = a.eval(ring, params)?;
                let den = b.eval(ring, params)?;
                if !den.is_constant() || den.is_zero() {
                    return Err(eval_err(format!("divisor `{den}` is not a nonzero constant")));
                }
                let inv = den.terms()[0].1.inv().map_err(|e| eval_err(e.to_string()))?;
                num.scale(&inv)
            }
            ExprKind::Pow(b, e) => b.eval(ring, params)?.pow(*e),
        })
    }
}

/// Parses and evaluates a parameter-free expression in `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, ParseError> {
    parse_expression(text, Pos { line: 1, column: 1 })?.eval(ring, &HashMap::new())
}
