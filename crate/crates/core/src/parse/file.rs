use std::collections::HashMap;
use std::sync::Arc;

use super::expr::{parse_expression, Expr};
use super::{ParseError, ParseErrorKind, Pos};
use crate::field::{Coeff, CoefficientField};
use crate::foliation::FoliationForm;
use crate::groebner::IdealPresentation;
use crate::order::{MonomialOrder, OrderKind};
use crate::poly::Polynomial;
use crate::ring::Ring;

/// A parsed ideal document:
///
/// ```text
/// ring: Q[y,z]            # or GF(p)[x,y,z]
/// order: grevlex y>z      # optional
/// params: a,b,c           # optional
/// ideal:
///   y + a*z^2 + b*z^5 + c*z^8
///   z^13
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealFile {
    pub field: CoefficientField,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub params: Vec<String>,
    pub generators: Vec<Expr>,
}

/// A parsed 1-form document with `ring:` and one-line `A:`, `B:`, `C:`
/// entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormFile {
    pub field: CoefficientField,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
    pub components: [Expr; 3],
}

struct Header {
    key: String,
    value: String,
    pos: Pos,
    value_pos: Pos,
}

enum Line {
    Header(Header),
    Body(Expr),
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// `key:` at the start of a line, with the key an identifier.
fn split_header(line: &str) -> Option<(&str, &str, usize)> {
    let trimmed = line.trim_start();
    let lead = line.len() - trimmed.len();
    let colon = trimmed.find(':')?;
    let key = trimmed[..colon].trim_end();
    let ident = key.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    ident.then_some((key, &trimmed[colon + 1..], lead + colon + 1))
}

fn column_of(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

/// First pass: headers and expression syntax trees.
fn lex_lines(text: &str, body_keys: &[&str]) -> Result<Vec<Line>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let lineno = i + 1;
        match split_header(line) {
            Some((key, value, after)) => {
                let lead = value.len() - value.trim_start().len();
                let value_pos = Pos {
                    line: lineno,
                    column: column_of(line, after + lead),
                };
                let key_col = column_of(line, line.len() - line.trim_start().len());
                if body_keys.contains(&key) && !value.trim().is_empty() {
                    // expression on the header line itself
                    parse_expression(value.trim_start(), value_pos)?;
                }
                out.push(Line::Header(Header {
                    key: key.to_string(),
                    value: value.trim().to_string(),
                    pos: Pos {
                        line: lineno,
                        column: key_col,
                    },
                    value_pos,
                }));
            }
            None => {
                let lead = line.len() - line.trim_start().len();
                let pos = Pos {
                    line: lineno,
                    column: column_of(line, lead),
                };
                out.push(Line::Body(parse_expression(line.trim_start(), pos)?));
            }
        }
    }
    Ok(out)
}

fn is_ident(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `Q[x,y,z]`, `QQ[y,z]` or `GF(p)[...]`.
pub fn parse_ring_spec(spec: &str) -> Result<(CoefficientField, Vec<String>), String> {
    let spec = spec.trim();
    let open = spec.find('[').ok_or("expected `[variables]`")?;
    if !spec.ends_with(']') {
        return Err("expected `]` at the end".into());
    }
    let field_part = spec[..open].trim();
    let field = match field_part {
        "Q" | "QQ" => CoefficientField::Rationals,
        f if f.starts_with("GF(") && f.ends_with(')') => {
            let p: u64 = f[3..f.len() - 1]
                .trim()
                .parse()
                .map_err(|_| format!("bad modulus in `{f}`"))?;
            CoefficientField::prime(p).map_err(|e| e.to_string())?
        }
        f => return Err(format!("unknown field `{f}`, expected Q or GF(p)")),
    };
    let vars: Vec<String> = spec[open + 1..spec.len() - 1]
        .split(',')
        .map(|v| v.trim().to_string())
        .collect();
    if let Some(bad) = vars.iter().find(|v| !is_ident(v)) {
        return Err(format!("bad variable name `{bad}`"));
    }
    if !(2..=3).contains(&vars.len()) {
        return Err(format!("{} variables, expected 2 or 3", vars.len()));
    }
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(format!("duplicate variable `{v}`"));
        }
    }
    Ok((field, vars))
}

/// `grevlex`, `grlex` or `lex`, optionally followed by `v1>v2>...`.
fn parse_order_spec(spec: &str, vars: &[String]) -> Result<MonomialOrder, String> {
    let mut parts = spec.split_whitespace();
    let kind = match parts.next() {
        Some("grevlex") => OrderKind::GrevLex,
        Some("grlex") => OrderKind::GrLex,
        Some("lex") => OrderKind::Lex,
        Some(k) => return Err(format!("unknown order `{k}`")),
        None => return Err("empty order".into()),
    };
    let precedence = match parts.next() {
        None => (0..vars.len()).collect(),
        Some(chain) => chain
            .split('>')
            .map(|v| {
                vars.iter()
                    .position(|w| w == v.trim())
                    .ok_or_else(|| format!("`{}` is not a ring variable", v.trim()))
            })
            .collect::<Result<Vec<_>, _>>()?,
    };
    if parts.next().is_some() {
        return Err("trailing text after the variable chain".into());
    }
    MonomialOrder::new(kind, precedence).map_err(|e| e.to_string())
}

fn render_order(order: &MonomialOrder, vars: &[String]) -> String {
    let chain: Vec<&str> = order.precedence().iter().map(|&i| vars[i].as_str()).collect();
    format!("{} {}", order.kind(), chain.join(">"))
}

struct Common {
    field: CoefficientField,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// Reads `ring:` and `order:`, which every document shares.
fn common_headers(headers: &[&Header]) -> Result<Common, ParseError> {
    let find = |k: &str| headers.iter().find(|h| h.key == k);
    let ring = find("ring").ok_or_else(|| ParseError::new(Pos { line: 1, column: 1 }, ParseErrorKind::MissingHeader("ring")))?;
    let (field, vars) = parse_ring_spec(&ring.value).map_err(|m| ParseError::new(ring.value_pos, ParseErrorKind::BadRing(m)))?;
    let order = match find("order") {
        Some(h) => parse_order_spec(&h.value, &vars).map_err(|m| ParseError::new(h.value_pos, ParseErrorKind::BadOrder(m)))?,
        None => MonomialOrder::grevlex(vars.len()),
    };
    Ok(Common { field, vars, order })
}

fn check_headers(headers: &[&Header], allowed: &[&str]) -> Result<(), ParseError> {
    for (i, h) in headers.iter().enumerate() {
        if !allowed.contains(&h.key.as_str()) {
            return Err(ParseError::new(h.pos, ParseErrorKind::UnknownHeader(h.key.clone())));
        }
        if headers[..i].iter().any(|g| g.key == h.key) {
            return Err(ParseError::new(h.pos, ParseErrorKind::DuplicateHeader(h.key.clone())));
        }
    }
    Ok(())
}

fn check_symbols(exprs: &[&Expr], vars: &[String], params: Option<&[String]>) -> Result<(), ParseError> {
    for e in exprs {
        for (s, pos) in e.symbols() {
            if vars.iter().any(|v| v == s) || params.is_some_and(|ps| ps.iter().any(|p| p == s)) {
                continue;
            }
            let kind = match params {
                Some(_) => ParseErrorKind::UnknownSymbol(s.to_string()),
                None => ParseErrorKind::UndeclaredParameter(s.to_string()),
            };
            return Err(ParseError::new(pos, kind));
        }
    }
    Ok(())
}

pub fn parse_ideal_file(text: &str) -> Result<IdealFile, ParseError> {
    let lines = lex_lines(text, &["ideal"])?;
    let mut headers = Vec::new();
    let mut generators = Vec::new();
    let mut in_ideal = false;
    for line in &lines {
        match line {
            Line::Header(h) => {
                in_ideal = h.key == "ideal";
                if in_ideal && !h.value.is_empty() {
                    generators.push(parse_expression(&h.value, h.value_pos)?);
                }
                headers.push(h);
            }
            Line::Body(e) if in_ideal => generators.push(e.clone()),
            Line::Body(e) => {
                return Err(ParseError::new(
                    e.pos,
                    ParseErrorKind::Syntax {
                        expected: vec!["header line `key: value`"],
                        found: "an expression before `ideal:`".into(),
                    },
                ))
            }
        }
    }
    check_headers(&headers, &["ring", "order", "params", "ideal"])?;
    let Common { field, vars, order } = common_headers(&headers)?;
    let ideal_header = headers
        .iter()
        .find(|h| h.key == "ideal")
        .ok_or_else(|| ParseError::new(Pos { line: 1, column: 1 }, ParseErrorKind::MissingHeader("ideal")))?;
    let params = match headers.iter().find(|h| h.key == "params") {
        None => None,
        Some(h) => {
            let ps: Vec<String> = h
                .value
                .split(',')
                .map(|p| p.trim().to_string())
                .filter(|p| !p.is_empty())
                .collect();
            for (i, p) in ps.iter().enumerate() {
                if !is_ident(p) {
                    return Err(ParseError::new(h.value_pos, ParseErrorKind::BadRing(format!("bad parameter name `{p}`"))));
                }
                if vars.contains(p) {
                    return Err(ParseError::new(h.value_pos, ParseErrorKind::ParameterClash(p.clone())));
                }
                if ps[..i].contains(p) {
                    return Err(ParseError::new(h.value_pos, ParseErrorKind::DuplicateHeader(format!("params: {p}"))));
                }
            }
            Some(ps)
        }
    };
    if generators.is_empty() {
        return Err(ParseError::new(
            ideal_header.pos,
            ParseErrorKind::Syntax {
                expected: vec!["at least one generator"],
                found: "end of input".into(),
            },
        ));
    }
    let refs: Vec<&Expr> = generators.iter().collect();
    check_symbols(&refs, &vars, params.as_deref())?;
    Ok(IdealFile {
        field,
        vars,
        order,
        params: params.unwrap_or_default(),
        generators,
    })
}

impl IdealFile {
    pub fn ring(&self) -> Arc<Ring> {
        Ring::new(self.vars.clone(), self.field, self.order.clone()).expect("validated while parsing")
    }

    pub fn is_projective(&self) -> bool {
        self.vars.len() == 3
    }

    pub fn is_parametric(&self) -> bool {
        !self.params.is_empty()
    }

    /// Evaluated generators for the given parameter values.
    pub fn instantiate_generators(&self, values: &HashMap<String, Coeff>) -> Result<Vec<Polynomial>, ParseError> {
        if let Some(p) = self.params.iter().find(|p| !values.contains_key(*p)) {
            let pos = self.generators[0].pos;
            return Err(ParseError::new(pos, ParseErrorKind::Eval(format!("parameter `{p}` has no value"))));
        }
        let ring = self.ring();
        self.generators.iter().map(|g| g.eval(&ring, values)).collect()
    }

    pub fn instantiate(&self, values: &HashMap<String, Coeff>) -> Result<IdealPresentation, ParseError> {
        let gens = self.instantiate_generators(values)?;
        IdealPresentation::new(&self.ring(), gens)
            .map_err(|e| ParseError::new(self.generators[0].pos, ParseErrorKind::Eval(e.to_string())))
    }

    /// The ideal of a parameter-free file.
    pub fn ideal(&self) -> Result<IdealPresentation, ParseError> {
        self.instantiate(&HashMap::new())
    }
}

pub fn parse_form_file(text: &str) -> Result<FormFile, ParseError> {
    let keys = ["A", "B", "C"];
    let lines = lex_lines(text, &keys)?;
    let mut headers = Vec::new();
    for line in &lines {
        match line {
            Line::Header(h) => headers.push(h),
            Line::Body(e) => {
                return Err(ParseError::new(
                    e.pos,
                    ParseErrorKind::Syntax {
                        expected: vec!["header line `key: value`"],
                        found: "a bare expression".into(),
                    },
                ))
            }
        }
    }
    check_headers(&headers, &["ring", "order", "A", "B", "C"])?;
    let mut comps = Vec::with_capacity(3);
    for (k, name) in keys.iter().zip(["A", "B", "C"]) {
        let h = headers
            .iter()
            .find(|h| h.key == *k)
            .ok_or_else(|| ParseError::new(Pos { line: 1, column: 1 }, ParseErrorKind::MissingHeader(name)))?;
        if h.value.is_empty() {
            return Err(ParseError::new(
                h.value_pos,
                ParseErrorKind::Syntax {
                    expected: vec!["expression"],
                    found: "end of line".into(),
                },
            ));
        }
        comps.push(parse_expression(&h.value, h.value_pos)?);
    }
    let Common { field, vars, order } = common_headers(&headers)?;
    if vars.len() != 3 {
        let h = headers.iter().find(|h| h.key == "ring").expect("checked");
        return Err(ParseError::new(h.value_pos, ParseErrorKind::BadRing("a 1-form needs three variables".into())));
    }
    let refs: Vec<&Expr> = comps.iter().collect();
    check_symbols(&refs, &vars, None)?;
    let components: [Expr; 3] = comps.try_into().expect("three components");
    Ok(FormFile {
        field,
        vars,
        order,
        components,
    })
}

impl FormFile {
    pub fn ring(&self) -> Arc<Ring> {
        Ring::new(self.vars.clone(), self.field, self.order.clone()).expect("validated while parsing")
    }

    /// The three components, unchecked.
    pub fn polynomials(&self) -> Result<[Polynomial; 3], ParseError> {
        let ring = self.ring();
        let none = HashMap::new();
        let [a, b, c] = &self.components;
        Ok([a.eval(&ring, &none)?, b.eval(&ring, &none)?, c.eval(&ring, &none)?])
    }
}

fn ring_line(ring: &Ring) -> String {
    format!(
        "ring: {}[{}]\norder: {}\n",
        ring.field(),
        ring.vars().join(","),
        render_order(ring.order(), ring.vars())
    )
}

/// The ideal's reduced Groebner basis as an ideal file.
pub fn render_ideal_file(ideal: &IdealPresentation) -> String {
    let mut s = ring_line(ideal.ring());
    s.push_str("ideal:\n");
    for g in ideal.reduced_gb() {
        s.push_str(&format!("  {g}\n"));
    }
    s
}

pub fn render_form_file(w: &FoliationForm) -> String {
    let mut s = ring_line(w.ring());
    for (k, p) in ["A", "B", "C"].iter().zip(w.components()) {
        s.push_str(&format!("{k}: {p}\n"));
    }
    s
}
