//! Text formats: polynomial expressions, ideal files and form files.
//!
//! Parsing happens in two passes. The first builds syntax trees for every
//! expression in a document, so all syntax errors surface before any
//! semantic check. The second resolves symbols against a ring and evaluates.

mod expr;
mod file;

use std::fmt;

pub use expr::{parse_expression, parse_polynomial, Expr, ExprKind};
pub use file::{parse_form_file, parse_ideal_file, parse_ring_spec, render_form_file, render_ideal_file, FormFile, IdealFile};

/// A 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: Vec<&'static str>, found: String },
    UnknownSymbol(String),
    UndeclaredParameter(String),
    MissingHeader(&'static str),
    DuplicateHeader(String),
    UnknownHeader(String),
    BadRing(String),
    BadOrder(String),
    /// Parameter names must not clash with ring variables.
    ParameterClash(String),
    /// An arithmetic failure while evaluating, e.g. a non-constant divisor.
    Eval(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(pos: Pos, kind: ParseErrorKind) -> Self {
        ParseError { pos, kind }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.pos.line, self.pos.column)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected {}, found {found}", expected.join(" or "))
            }
            ParseErrorKind::UnknownSymbol(s) => write!(f, "unknown symbol `{s}`"),
            ParseErrorKind::UndeclaredParameter(s) => {
                write!(f, "`{s}` is not a ring variable; declare it in a `params:` line")
            }
            ParseErrorKind::MissingHeader(h) => write!(f, "missing `{h}:` line"),
            ParseErrorKind::DuplicateHeader(h) => write!(f, "duplicate `{h}:` line"),
            ParseErrorKind::UnknownHeader(h) => write!(f, "unknown header `{h}:`"),
            ParseErrorKind::BadRing(m) => write!(f, "bad ring: {m}"),
            ParseErrorKind::BadOrder(m) => write!(f, "bad order: {m}"),
            ParseErrorKind::ParameterClash(s) => write!(f, "parameter `{s}` is also a ring variable"),
            ParseErrorKind::Eval(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for ParseError {}
