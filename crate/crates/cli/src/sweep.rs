//! Parameter sweeps over a family of ideals and constraint fitting on the
//! positive samples.
//!
//! A sweep file is a block of `key: value` lines followed by `template:` and
//! an ordinary parametric ideal file:
//!
//! ```text
//! grid: a = 1, 2, 3
//! grid: b = 1, 2, 3
//! set: c = b^2/a
//! fit: 2
//! template:
//! ring: Q[y,z]
//! params: a,b,c
//! ideal:
//!   y + a*z^2 + b*z^5 + c*z^8
//!   z^13
//! ```
//!
//! Grid mode takes the cartesian product of the `grid:` lists in file order
//! and, for every point, each alternative of every `set:` line (alternatives
//! are separated by `|`). Random mode (`random: N`) draws the free
//! parameters uniformly from `[-range, range]` with a seeded ChaCha8 stream
//! and picks one `set:` alternative at random; draws where a `nonzero:`
//! parameter or an `exclude:` expression vanishes are redrawn.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use std::time::Instant;

use folforge_core::foliation::{decide, Outcome};
use folforge_core::linalg::nullspace;
use folforge_core::parse::{parse_expression, parse_ideal_file, Expr, IdealFile, ParseError, Pos};
use folforge_core::{Coeff, CoefficientField, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::{apply_overrides, parse_field, Options, Report, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_OK};

const MAX_REDRAWS: usize = 10_000;
const MAX_GRID: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    Grid,
    Random { count: usize, seed: u64 },
}

/// A parsed sweep file.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub template: IdealFile,
    pub domain: Domain,
    pub grid: Vec<(String, Vec<Expr>)>,
    /// Derived parameters, each with one or more alternative definitions.
    pub sets: Vec<(String, Vec<Expr>)>,
    pub range: Option<u64>,
    pub nonzero: Vec<String>,
    pub exclude: Vec<Expr>,
    pub fit_degree: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for SweepError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for SweepError {}

fn shifted(e: ParseError, line_offset: usize) -> SweepError {
    SweepError {
        line: e.pos.line + line_offset,
        message: {
            let mut e = e;
            e.pos.line += line_offset;
            e.to_string()
        },
    }
}

fn parse_exprs(text: &str, sep: char, line: usize, col: usize) -> Result<Vec<Expr>, SweepError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(sep) {
        let lead = piece.len() - piece.trim_start().len();
        let pos = Pos {
            line: 1,
            column: col + offset + lead,
        };
        if piece.trim().is_empty() {
            return Err(SweepError {
                line,
                message: "empty list entry".into(),
            });
        }
        out.push(parse_expression(piece.trim(), pos).map_err(|e| shifted(e, line - 1))?);
        offset += piece.len() + 1;
    }
    Ok(out)
}

fn split_assignment(value: &str, line: usize) -> Result<(String, &str), SweepError> {
    let (name, rhs) = value.split_once('=').ok_or_else(|| SweepError {
        line,
        message: "expected `name = ...`".into(),
    })?;
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(SweepError {
            line,
            message: format!("bad parameter name `{name}`"),
        });
    }
    Ok((name.to_string(), rhs))
}

/// Parses a sweep file. Parameter checks run after the template is read.
pub fn parse_sweep_spec(text: &str) -> Result<SweepSpec, SweepError> {
    let mut grid = Vec::new();
    let mut sets = Vec::new();
    let mut count = None;
    let mut seed = None;
    let mut range = None;
    let mut nonzero = Vec::new();
    let mut exclude = Vec::new();
    let mut fit_degree = None;
    let mut field = None;
    let mut template_at = None;
    let lines: Vec<&str> = text.lines().collect();
    for (i, raw) in lines.iter().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let err = |message: String| SweepError { line, message };
        let (key, value) = content.split_once(':').ok_or_else(|| err("expected `key: value`".into()))?;
        let key = key.trim();
        let col = key.len() + 2 + (content.len() - content.trim_start().len());
        match key {
            "template" => {
                if !value.trim().is_empty() {
                    return Err(err("`template:` stands on its own line".into()));
                }
                template_at = Some(i + 1);
                break;
            }
            "grid" | "set" => {
                let (name, rhs) = split_assignment(value, line)?;
                let at = col + value.find('=').map_or(0, |p| p + 1);
                let sep = if key == "grid" { ',' } else { '|' };
                let exprs = parse_exprs(rhs, sep, line, at)?;
                let target = if key == "grid" { &mut grid } else { &mut sets };
                target.push((name, exprs));
            }
            "random" => {
                let n = value.trim().parse::<usize>().map_err(|_| err("expected a sample count".into()))?;
                if n > MAX_GRID {
                    return Err(err(format!("at most {MAX_GRID} samples")));
                }
                count = Some(n);
            }
            "seed" => seed = Some(value.trim().parse::<u64>().map_err(|_| err("expected an integer seed".into()))?),
            "range" => {
                let r = value.trim().parse::<u64>().map_err(|_| err("expected a positive integer".into()))?;
                if r == 0 {
                    return Err(err("range must be positive".into()));
                }
                range = Some(r);
            }
            "nonzero" => nonzero.extend(value.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty())),
            "exclude" => exclude.extend(parse_exprs(value, ',', line, col)?),
            "fit" => {
                let k = value.trim().parse::<u32>().map_err(|_| err("expected a degree".into()))?;
                if k > 6 {
                    return Err(err("fit degree above 6 is not supported".into()));
                }
                fit_degree = Some(k);
            }
            "field" => field = Some(parse_field(value).map_err(err)?),
            other => return Err(err(format!("unknown sweep key `{other}`"))),
        }
    }
    let start = template_at.ok_or(SweepError {
        line: lines.len().max(1),
        message: "missing `template:` section".into(),
    })?;
    let body = lines[start..].join("\n");
    let mut template = parse_ideal_file(&body).map_err(|e| shifted(e, start))?;
    if let Some(f) = field {
        template.field = f;
    }
    let spec = SweepSpec {
        template,
        domain: match count {
            Some(count) => Domain::Random {
                count,
                seed: seed.unwrap_or(0),
            },
            None => Domain::Grid,
        },
        grid,
        sets,
        range,
        nonzero,
        exclude,
        fit_degree,
    };
    spec.check(start)?;
    Ok(spec)
}

impl SweepSpec {
    fn check(&self, template_line: usize) -> Result<(), SweepError> {
        let err = |message: String| SweepError {
            line: template_line,
            message,
        };
        let params = &self.template.params;
        let mut seen = BTreeSet::new();
        for (name, _) in self.grid.iter().chain(&self.sets) {
            if !params.contains(name) {
                return Err(err(format!("`{name}` is not a template parameter")));
            }
            if !seen.insert(name.as_str()) {
                return Err(err(format!("`{name}` is assigned twice")));
            }
        }
        if let Some(n) = self.nonzero.iter().find(|n| !params.contains(n)) {
            return Err(err(format!("`{n}` in nonzero is not a template parameter")));
        }
        match self.domain {
            Domain::Grid => {
                if let Some(p) = params.iter().find(|p| !seen.contains(p.as_str())) {
                    return Err(err(format!("grid sweep leaves `{p}` without values")));
                }
            }
            Domain::Random { .. } => {
                if !self.grid.is_empty() {
                    return Err(err("`grid:` and `random:` cannot be combined".into()));
                }
            }
        }
        // a set may only read parameters assigned before it
        let mut known: BTreeSet<&str> = self.grid.iter().map(|(n, _)| n.as_str()).collect();
        if matches!(self.domain, Domain::Random { .. }) {
            let derived: BTreeSet<&str> = self.sets.iter().map(|(n, _)| n.as_str()).collect();
            known.extend(params.iter().map(String::as_str).filter(|p| !derived.contains(p)));
        }
        for (name, alts) in &self.sets {
            for e in alts {
                if let Some((s, _)) = e.symbols().into_iter().find(|(s, _)| !known.contains(s)) {
                    return Err(err(format!("`{name}` reads `{s}` before it has a value")));
                }
            }
            known.insert(name);
        }
        for e in &self.exclude {
            if let Some((s, _)) = e.symbols().into_iter().find(|(s, _)| !params.iter().any(|p| p == s)) {
                return Err(err(format!("exclude expression uses unknown symbol `{s}`")));
            }
        }
        Ok(())
    }

    /// A ring with no variables in play, for evaluating parameter
    /// expressions to constants.
    fn scalar_ring(&self) -> Arc<Ring> {
        self.template.ring()
    }

    fn free_params(&self) -> Vec<&String> {
        self.template
            .params
            .iter()
            .filter(|p| !self.sets.iter().any(|(n, _)| n == *p))
            .collect()
    }
}

/// One parameter assignment, in template parameter order.
pub type Sample = Vec<(String, Coeff)>;

fn constant(e: &Expr, ring: &Arc<Ring>, values: &HashMap<String, Coeff>) -> Result<Coeff, String> {
    let p = e.eval(ring, values).map_err(|e| e.to_string())?;
    if !p.is_constant() {
        return Err(format!("`{p}` is not a constant"));
    }
    Ok(p.terms().first().map_or_else(|| ring.field().zero(), |t| t.1.clone()))
}

fn ordered(spec: &SweepSpec, values: &HashMap<String, Coeff>) -> Sample {
    spec.template.params.iter().map(|p| (p.clone(), values[p].clone())).collect()
}

/// Assigns the `set:` parameters given one alternative index per set.
fn apply_sets(
    spec: &SweepSpec,
    ring: &Arc<Ring>,
    mut values: HashMap<String, Coeff>,
    choice: &[usize],
) -> Result<HashMap<String, Coeff>, String> {
    for ((name, alts), &k) in spec.sets.iter().zip(choice) {
        let v = constant(&alts[k], ring, &values)?;
        values.insert(name.clone(), v);
    }
    Ok(values)
}

/// A planned sample: either an assignment or the reason it could not be
/// formed.
pub type Planned = Result<Sample, String>;

fn choices(spec: &SweepSpec) -> Vec<Vec<usize>> {
    spec.sets.iter().fold(vec![vec![]], |acc, (_, alts)| {
        acc.into_iter()
            .flat_map(|c| {
                (0..alts.len()).map(move |k| {
                    let mut c = c.clone();
                    c.push(k);
                    c
                })
            })
            .collect()
    })
}

/// Enumerates or draws every sample, sequentially and deterministically.
pub fn plan(spec: &SweepSpec) -> Result<Vec<Planned>, String> {
    let ring = spec.scalar_ring();
    let field = ring.field();
    match spec.domain {
        Domain::Grid => {
            let mut axes = Vec::new();
            for (name, exprs) in &spec.grid {
                let vals = exprs
                    .iter()
                    .map(|e| constant(e, &ring, &HashMap::new()).map_err(|m| format!("grid `{name}`: {m}")))
                    .collect::<Result<Vec<_>, _>>()?;
                axes.push((name.clone(), vals));
            }
            let total = axes.iter().map(|(_, v)| v.len()).product::<usize>() * choices(spec).len();
            if total > MAX_GRID {
                return Err(format!("grid has {total} samples, more than {MAX_GRID}"));
            }
            let mut points: Vec<HashMap<String, Coeff>> = vec![HashMap::new()];
            for (name, vals) in &axes {
                points = points
                    .into_iter()
                    .flat_map(|p| {
                        vals.iter().map(move |v| {
                            let mut p = p.clone();
                            p.insert(name.clone(), v.clone());
                            p
                        })
                    })
                    .collect();
            }
            let choice_list = choices(spec);
            Ok(points
                .into_iter()
                .flat_map(|p| choice_list.iter().map(move |c| (p.clone(), c.clone())))
                .map(|(p, c)| apply_sets(spec, &ring, p, &c).map(|v| ordered(spec, &v)))
                .collect())
        }
        Domain::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let range = spec.range.unwrap_or(match field {
                CoefficientField::Rationals => 100,
                CoefficientField::PrimeField(p) => u64::from(p / 2),
            }) as i64;
            let free = spec.free_params();
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                let mut planned = Err(format!("no admissible draw after {MAX_REDRAWS} attempts"));
                for _ in 0..MAX_REDRAWS {
                    let mut values = HashMap::new();
                    for p in &free {
                        values.insert((*p).clone(), field.from_i64(rng.gen_range(-range..=range)));
                    }
                    let choice: Vec<usize> = spec.sets.iter().map(|(_, alts)| rng.gen_range(0..alts.len())).collect();
                    let Ok(values) = apply_sets(spec, &ring, values, &choice) else {
                        continue;
                    };
                    if spec.nonzero.iter().any(|n| values[n].is_zero()) {
                        continue;
                    }
                    let excluded = spec
                        .exclude
                        .iter()
                        .any(|e| constant(e, &ring, &values).map_or(true, |c| c.is_zero()));
                    if excluded {
                        continue;
                    }
                    planned = Ok(ordered(spec, &values));
                    break;
                }
                out.push(planned);
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub idx: usize,
    pub params: String,
    pub status: String,
    pub reason: String,
    pub d: Option<u32>,
    pub wall_us: u128,
}

fn render_sample(s: &Sample) -> String {
    s.iter().map(|(n, v)| format!("{n}={v}")).collect::<Vec<_>>().join(";")
}

fn run_one(spec: &SweepSpec, idx: usize, planned: &Planned, opts: &Options) -> (Row, bool) {
    let start = Instant::now();
    let (status, reason, d, positive) = match planned {
        Err(m) => ("error".to_string(), m.clone(), None, false),
        Ok(sample) => {
            let values: HashMap<String, Coeff> = sample.iter().cloned().collect();
            let outcome = spec
                .template
                .instantiate(&values)
                .map_err(|e| e.to_string())
                .and_then(|j| decide(&j, !opts.strict).map_err(|e| e.to_string()));
            match outcome {
                Ok(v) => match v.outcome {
                    Outcome::Foliation(_) => ("foliation".into(), String::new(), v.d, true),
                    Outcome::NotFoliation(r) => ("no_foliation".into(), r.to_string(), v.d, false),
                },
                Err(m) => ("error".into(), m, None, false),
            }
        }
    };
    let wall_us = if opts.no_timing { 0 } else { start.elapsed().as_micros() };
    let params = planned.as_ref().map(render_sample).unwrap_or_default();
    (
        Row {
            idx,
            params,
            status,
            reason,
            d,
            wall_us,
        },
        positive,
    )
}

/// Rows in sample order plus the fitted constraints, if a fit was requested.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub rows: Vec<Row>,
    pub fitted_constraints: Option<Vec<String>>,
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("FOLFORGE_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| format!("FOLFORGE_THREADS=`{v}` is not a thread count"))?;
        b = b.num_threads(n.max(1));
    }
    b.build().map_err(|e| e.to_string())
}

/// Runs every sample (in parallel, order preserved) and fits constraints.
pub fn run(spec: &SweepSpec, opts: &Options) -> Result<SweepReport, String> {
    let planned = plan(spec)?;
    let pool = thread_pool()?;
    let results: Vec<(Row, bool)> = pool.install(|| {
        planned
            .par_iter()
            .enumerate()
            .map(|(i, p)| run_one(spec, i, p, opts))
            .collect()
    });
    let positives: Vec<&Sample> = results
        .iter()
        .zip(&planned)
        .filter(|((_, pos), _)| *pos)
        .filter_map(|(_, p)| p.as_ref().ok())
        .collect();
    // with no positives there is nothing to fit, which differs from a fit
    // that found no constraint
    let fitted = match spec.fit_degree {
        Some(k) if !positives.is_empty() => Some(fit(spec, &positives, k)?),
        _ => None,
    };
    Ok(SweepReport {
        rows: results.into_iter().map(|(r, _)| r).collect(),
        fitted_constraints: fitted,
    })
}

/// Exponent vectors of total degree at most `k` in `n` variables, highest
/// degree first, lexicographically descending within a degree.
pub fn parameter_monomials(n: usize, k: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(deg);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=deg).rev() {
            prefix.push(e);
            rec(n, deg - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    for deg in (0..=k).rev() {
        rec(n, deg, &mut Vec::new(), &mut out);
    }
    out
}

fn eval_monomial(exps: &[u32], point: &[Coeff], one: &Coeff) -> Coeff {
    exps.iter().zip(point).fold(one.clone(), |acc, (&e, v)| &acc * &v.pow(e))
}

/// A basis of the polynomials of degree at most `k` in the template
/// parameters vanishing on every positive sample. Empty when there are no
/// samples.
pub fn fit_vectors(field: CoefficientField, positives: &[&Sample], k: u32) -> Vec<Vec<Coeff>> {
    let Some(first) = positives.first() else {
        return Vec::new();
    };
    let monos = parameter_monomials(first.len(), k);
    let one = field.one();
    let rows: Vec<Vec<Coeff>> = positives
        .iter()
        .map(|s| {
            let point: Vec<Coeff> = s.iter().map(|(_, v)| v.clone()).collect();
            monos.iter().map(|m| eval_monomial(m, &point, &one)).collect()
        })
        .collect();
    nullspace(field, &rows, monos.len())
}

/// Renders `Σ cᵢ mᵢ` in the parameter names, terms in monomial-list order.
pub fn render_constraint(names: &[String], monos: &[Vec<u32>], coeffs: &[Coeff]) -> String {
    let mut s = String::new();
    for (m, c) in monos.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        let mono: Vec<String> = names
            .iter()
            .zip(m)
            .filter(|(_, &e)| e > 0)
            .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        let body = match (abs.is_one(), mono.is_empty()) {
            (_, true) => abs.to_string(),
            (true, false) => mono.join("*"),
            (false, false) => format!("{abs}*{}", mono.join("*")),
        };
        if s.is_empty() {
            s = if neg { format!("-{body}") } else { body };
        } else {
            s.push_str(if neg { " - " } else { " + " });
            s.push_str(&body);
        }
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

fn fit(spec: &SweepSpec, positives: &[&Sample], k: u32) -> Result<Vec<String>, String> {
    let field = spec.template.field;
    let vectors = fit_vectors(field, positives, k);
    let names = &spec.template.params;
    let monos = parameter_monomials(names.len(), k);
    let one = field.one();
    for v in &vectors {
        for s in positives {
            let point: Vec<Coeff> = s.iter().map(|(_, c)| c.clone()).collect();
            let value = monos
                .iter()
                .zip(v)
                .fold(field.zero(), |acc, (m, c)| &acc + &(c * &eval_monomial(m, &point, &one)));
            if !value.is_zero() {
                return Err(format!("fitted constraint does not vanish at {}", render_sample(s)));
            }
        }
    }
    Ok(vectors.iter().map(|v| render_constraint(names, &monos, v)).collect())
}

fn csv_text(rows: &[Row]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["idx", "params", "status", "reason", "d", "wall_us"])
        .map_err(|e| e.to_string())?;
    for r in rows {
        let d = r.d.map(|d| d.to_string()).unwrap_or_default();
        w.write_record([r.idx.to_string(), r.params.clone(), r.status.clone(), r.reason.clone(), d, r.wall_us.to_string()])
            .map_err(|e| e.to_string())?;
    }
    String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

/// `sweep`: CSV (with fitted constraints as trailing `#` lines) or JSON.
pub fn sweep(text: &str, opts: &Options) -> Report {
    let mut spec = match parse_sweep_spec(text) {
        Ok(s) => s,
        Err(e) => return invalid(e),
    };
    spec.template = match apply_overrides(spec.template, opts) {
        Ok(t) => t,
        Err(e) => return invalid(e),
    };
    let report = match run(&spec, opts) {
        Ok(r) => r,
        Err(e) if e.starts_with("fitted constraint") => {
            return Report {
                code: EXIT_CHECK_FAILED,
                stdout: String::new(),
                stderr: format!("check failed: {e}\n"),
            }
        }
        Err(e) => return invalid(e),
    };
    let stdout = if opts.json {
        format!("{}\n", serde_json::to_string(&report).expect("report serializes"))
    } else {
        let mut s = match csv_text(&report.rows) {
            Ok(s) => s,
            Err(e) => return invalid(e),
        };
        if spec.fit_degree.is_some() && report.fitted_constraints.is_none() {
            s.push_str("# fitted: no positive samples\n");
        }
        if let Some(fit) = &report.fitted_constraints {
            if fit.is_empty() {
                s.push_str("# fitted: none\n");
            }
            for c in fit {
                s.push_str(&format!("# fitted: {c}\n"));
            }
        }
        s
    };
    Report {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    }
}

fn invalid(e: impl std::fmt::Display) -> Report {
    Report {
        code: EXIT_INVALID,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}
