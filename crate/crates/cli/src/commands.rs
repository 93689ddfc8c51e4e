//! The subcommands as pure functions from file text to a [`Report`].

use folforge_core::foliation::{self, decide, Outcome, Reason};
use folforge_core::graded::betti_profile;
use folforge_core::groebner::IdealPresentation;
use folforge_core::parse::{parse_form_file, parse_ideal_file, render_ideal_file, IdealFile};
use folforge_core::{CoefficientField, Error, FoliationForm, MonomialOrder, OrderKind, Polynomial};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_FOLIATION: i32 = 10;
pub const EXIT_CHECK_FAILED: i32 = 11;

/// What a command prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn out(code: i32, stdout: String) -> Self {
        Report {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn invalid(msg: impl std::fmt::Display) -> Self {
        Report {
            code: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }

    fn failed(msg: impl std::fmt::Display) -> Self {
        Report {
            code: EXIT_CHECK_FAILED,
            stdout: String::new(),
            stderr: format!("check failed: {msg}\n"),
        }
    }
}

/// Flags shared by the subcommands.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub json: bool,
    /// Overrides the field declared in the file.
    pub field: Option<CoefficientField>,
    /// Overrides the order declared in the file.
    pub order: Option<OrderKind>,
    /// Reject unsaturated projective input instead of saturating it.
    pub strict: bool,
    /// Report zero wall time in sweeps, for byte-identical output.
    pub no_timing: bool,
}

/// `gf:P`, `GF(P)`, `q` or `Q`.
pub fn parse_field(s: &str) -> Result<CoefficientField, String> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") || t == "QQ" {
        return Ok(CoefficientField::Rationals);
    }
    let digits = t
        .strip_prefix("gf:")
        .or_else(|| t.strip_prefix("GF:"))
        .or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
        .ok_or_else(|| format!("unknown field `{t}`, expected q or gf:P"))?;
    let p: u64 = digits.trim().parse().map_err(|_| format!("bad modulus `{digits}`"))?;
    CoefficientField::prime(p).map_err(|e| e.to_string())
}

pub fn parse_order(s: &str) -> Result<OrderKind, String> {
    match s.trim() {
        "grevlex" => Ok(OrderKind::GrevLex),
        "grlex" => Ok(OrderKind::GrLex),
        "lex" => Ok(OrderKind::Lex),
        o => Err(format!("unknown order `{o}`, expected grevlex, grlex or lex")),
    }
}

pub(crate) fn apply_overrides(mut f: IdealFile, opts: &Options) -> Result<IdealFile, String> {
    if let Some(field) = opts.field {
        f.field = field;
    }
    if let Some(kind) = &opts.order {
        f.order = MonomialOrder::new(kind.clone(), f.order.precedence().to_vec()).map_err(|e| e.to_string())?;
    }
    Ok(f)
}

fn load_ideal(text: &str, opts: &Options) -> Result<IdealPresentation, String> {
    let f = parse_ideal_file(text).map_err(|e| e.to_string())?;
    if f.is_parametric() {
        return Err(format!("parameters {} have no values; use `sweep`", f.params.join(", ")));
    }
    apply_overrides(f, opts)?.ideal().map_err(|e| e.to_string())
}

fn render_form_text(w: &FoliationForm) -> String {
    format!("{w}\n")
}

/// `construct`: admission, screen, construction.
pub fn construct(text: &str, opts: &Options) -> Report {
    let ideal = match load_ideal(text, opts) {
        Ok(i) => i,
        Err(e) => return Report::invalid(e),
    };
    let verdict = match decide(&ideal, !opts.strict) {
        Ok(v) => v,
        Err(Error::Internal(m)) => return Report::failed(m),
        Err(e) => return Report::invalid(e),
    };
    let code = match verdict.outcome {
        Outcome::Foliation(_) => EXIT_OK,
        Outcome::NotFoliation(Reason::BadColength) => EXIT_INVALID,
        Outcome::NotFoliation(_) => EXIT_NO_FOLIATION,
    };
    let stdout = if opts.json {
        format!("{}\n", serde_json::to_string(&verdict).expect("verdict serializes"))
    } else {
        let mut s = String::new();
        if verdict.saturation_changed {
            s.push_str("note: input was not saturated; using its saturation\n");
        }
        match &verdict.outcome {
            Outcome::Foliation(w) => {
                s.push_str(&format!("foliation of degree {} with {} singular points\n", w.degree(), verdict.n.unwrap_or(0)));
                s.push_str(&render_form_text(w));
            }
            Outcome::NotFoliation(r) => {
                s.push_str(&format!("no foliation: {r}\n"));
                if let (Some(d), Some(n)) = (verdict.d, verdict.n) {
                    s.push_str(&format!("d = {d}, N = {n}\n"));
                } else if let Some(n) = verdict.n {
                    s.push_str(&format!("N = {n}\n"));
                }
            }
        }
        s
    };
    Report::out(code, stdout)
}

/// `betti`: the screen only.
pub fn betti(text: &str, opts: &Options) -> Report {
    let ideal = match load_ideal(text, opts) {
        Ok(i) => i,
        Err(e) => return Report::invalid(e),
    };
    let admit = if opts.strict { foliation::admit_strict } else { foliation::admit };
    let cand = match admit(&ideal) {
        Ok(c) => c,
        Err(Error::NotSaturated) => {
            return Report::out(EXIT_NO_FOLIATION, format!("no foliation: {}\n", Reason::NotSaturated));
        }
        Err(e) => return Report::invalid(e),
    };
    let (profile, _) = match betti_profile(&cand.ideal, cand.d) {
        Ok(p) => p,
        Err(e) => return Report::failed(e),
    };
    let d = cand.d;
    let fail = if (0..=d).any(|s| profile.beta1(s) != 0) {
        Some(Reason::LowDegreeForm)
    } else if profile.beta1(d + 1) != 3 {
        Some(Reason::WrongGeneratorCount)
    } else if profile.beta2_dplus2 == 0 {
        Some(Reason::NoLinearSyzygy)
    } else {
        None
    };
    let code = if fail.is_some() { EXIT_NO_FOLIATION } else { EXIT_OK };
    let stdout = if opts.json {
        let mut v = serde_json::to_value(&profile).expect("profile serializes");
        v["pass"] = json!(fail.is_none());
        if let Some(r) = fail {
            v["reason"] = json!(r);
        }
        format!("{v}\n")
    } else {
        let beta1: Vec<String> = profile
            .beta1
            .iter()
            .filter(|(_, &b)| b != 0)
            .map(|(j, b)| format!("beta1[{j}] = {b}"))
            .collect();
        let mut s = format!(
            "d = {d}, N = {}\n{}\nbeta2[{}] = {}\n",
            cand.n,
            beta1.join(", "),
            d + 2,
            profile.beta2_dplus2
        );
        s.push_str(&match fail {
            None => "screen: pass\n".to_string(),
            Some(r) => format!("screen: fail ({r})\n"),
        });
        s
    };
    Report::out(code, stdout)
}

#[derive(Debug, Clone, serde::Serialize)]
struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

/// `verify`: homogeneity, Euler identity, independence and colength of a
/// user-supplied triple.
pub fn verify(text: &str, opts: &Options) -> Report {
    let file = match parse_form_file(text) {
        Ok(f) => f,
        Err(e) => return Report::invalid(e),
    };
    let mut file = file;
    if let Some(field) = opts.field {
        file.field = field;
    }
    let comps = match file.polynomials() {
        Ok(c) => c,
        Err(e) => return Report::invalid(e),
    };
    let checks = run_checks(&comps);
    let pass = checks.iter().all(|c| c.pass);
    let stdout = if opts.json {
        format!("{}\n", json!({ "pass": pass, "checks": checks }))
    } else {
        checks
            .iter()
            .map(|c| format!("{}: {} ({})\n", c.name, if c.pass { "pass" } else { "FAIL" }, c.detail))
            .collect()
    };
    Report::out(if pass { EXIT_OK } else { EXIT_CHECK_FAILED }, stdout)
}

fn run_checks(comps: &[Polynomial; 3]) -> Vec<Check> {
    let mut out = Vec::new();
    let mut push = |name, pass, detail: String| {
        out.push(Check { name, pass, detail });
        pass
    };
    let degrees: Vec<Option<u32>> = comps.iter().map(|p| p.total_degree()).collect();
    let homogeneous = comps.iter().all(|p| p.is_homogeneous());
    let common = degrees.iter().flatten().min() == degrees.iter().flatten().max() && degrees.iter().any(|d| d.is_some());
    let detail = match (homogeneous, common) {
        (true, true) => format!("degree {}", degrees.iter().flatten().next().expect("some degree")),
        (false, _) => {
            let bad: Vec<&str> = ["A", "B", "C"]
                .iter()
                .zip(comps)
                .filter(|(_, p)| !p.is_homogeneous())
                .map(|(n, _)| *n)
                .collect();
            format!("{} not homogeneous", bad.join(", "))
        }
        (true, false) => format!("degrees {degrees:?} differ"),
    };
    if !push("homogeneous", homogeneous && common, detail) {
        return out;
    }
    let ring = comps[0].ring();
    let euler = (0..3).fold(Polynomial::zero(ring), |acc, v| &acc + &(&Polynomial::var(ring, v) * &comps[v]));
    if !push("euler", euler.is_zero(), format!("xA + yB + zC = {euler}")) {
        return out;
    }
    let form = FoliationForm::new(comps[0].clone(), comps[1].clone(), comps[2].clone());
    let form = match form {
        Ok(w) => {
            push("independent", true, "A, B, C linearly independent".into());
            w
        }
        Err(e) => {
            push("independent", false, e.to_string());
            return out;
        }
    };
    let d = form.degree();
    let n = (d * d + d + 1) as u64;
    match foliation::singular_scheme(&form) {
        Ok(_) => push("colength", true, format!("{n} = d^2+d+1 with d = {d}")),
        Err(Error::DegenerateForm { found, .. }) => push("colength", false, format!("{found}, expected {n}")),
        Err(e) => push("colength", false, e.to_string()),
    };
    out
}

/// `singular`: the saturated ideal `<A, B, C>` as an ideal file.
pub fn singular(text: &str, opts: &Options) -> Report {
    let mut file = match parse_form_file(text) {
        Ok(f) => f,
        Err(e) => return Report::invalid(e),
    };
    if let Some(field) = opts.field {
        file.field = field;
    }
    let [a, b, c] = match file.polynomials() {
        Ok(c) => c,
        Err(e) => return Report::invalid(e),
    };
    let form = match FoliationForm::new(a, b, c) {
        Ok(w) => w,
        Err(e) => return Report::failed(e),
    };
    let cand = match foliation::singular_scheme(&form) {
        Ok(c) => c,
        Err(e) => return Report::failed(e),
    };
    let stdout = if opts.json {
        let gb: Vec<String> = cand.ideal.reduced_gb().iter().map(|g| g.to_string()).collect();
        format!("{}\n", json!({ "d": cand.d, "N": cand.n, "ideal": gb }))
    } else {
        render_ideal_file(&cand.ideal)
    };
    Report::out(EXIT_OK, stdout)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BULLET1: &str = "ring: Q[y,z]\nideal:\n y^2 - z^3\n y*z^2\n";

    #[test]
    fn field_flags() {
        assert_eq!(parse_field("q").unwrap(), CoefficientField::Rationals);
        assert_eq!(parse_field("gf:32003").unwrap(), CoefficientField::PrimeField(32003));
        assert_eq!(parse_field("GF(7)").unwrap(), CoefficientField::PrimeField(7));
        assert!(parse_field("gf:32004").is_err());
        assert!(parse_field("r").is_err());
    }

    #[test]
    fn construct_bullet_one() {
        let r = construct(BULLET1, &Options::default());
        assert_eq!(r.code, EXIT_OK, "{r:?}");
        assert!(r.stdout.contains("A = y^3"), "{}", r.stdout);
        let j = construct(BULLET1, &Options { json: true, ..Default::default() });
        let v: serde_json::Value = serde_json::from_str(&j.stdout).unwrap();
        assert_eq!(v["status"], "foliation");
        assert_eq!(v["d"], 2);
        assert_eq!(v["N"], 7);
        assert_eq!(v["form"]["B"], "-x*y^2 + z^3");
        assert_eq!(v["betti"]["beta1"]["3"], 3);
    }

    #[test]
    fn construct_exit_codes() {
        let eight = "ring: Q[y,z]\nideal:\n y\n z^8\n";
        let r = construct(eight, &Options { json: true, ..Default::default() });
        assert_eq!(r.code, EXIT_INVALID);
        assert!(r.stdout.contains("bad_colength"));
        assert_eq!(construct("ring: Q[y,z]\nideal:\n y +\n", &Options::default()).code, EXIT_INVALID);
        assert_eq!(construct("ring: Q[y,z]\nideal:\n y\n z^7\n", &Options::default()).code, EXIT_NO_FOLIATION);
        assert_eq!(construct("ring: Q[y,z]\nideal:\n y\n", &Options::default()).code, EXIT_INVALID);
    }

    #[test]
    fn betti_command() {
        let r = betti(BULLET1, &Options { json: true, ..Default::default() });
        assert_eq!(r.code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(v["d"], 2);
        assert_eq!(v["beta1"]["3"], 3);
        assert!(v["beta2_dplus2"].as_u64().unwrap() >= 1);
        let low = betti("ring: Q[y,z]\nideal:\n y\n z^7\n", &Options::default());
        assert_eq!(low.code, EXIT_NO_FOLIATION);
        assert!(low.stdout.contains("low_degree_form"));
        let m = betti("ring: Q[x,y,z]\nideal:\n x\n y\n z\n", &Options::default());
        assert_eq!(m.code, EXIT_INVALID);
    }

    #[test]
    fn verify_checks() {
        let ok = verify("ring: Q[x,y,z]\nA: -y^3 + x^2*z\nB: x*y^2 - z^3\nC: -x^3 + y*z^2\n", &Options::default());
        assert_eq!(ok.code, EXIT_OK, "{}", ok.stdout);
        assert!(ok.stdout.contains("colength: pass (7"));
        let cubes = verify("ring: Q[x,y,z]\nA: x^3\nB: y^3\nC: z^3\n", &Options::default());
        assert_eq!(cubes.code, EXIT_CHECK_FAILED);
        assert!(cubes.stdout.contains("euler: FAIL"));
        let printed = "ring: Q[x,y,z]\nA: y^5 + 2*x*y^4 + 3*x^2*y^3 - 4*z^5 - 5*x^2*z^3\nB: 6*y^2*z^3 - x*y^4 - 2*x^2*y^3 - 3*x^2*y^2\nC: 4*x*z^4 + 5*x^3*z^2 - 6*y^3*z^2\n";
        let r = verify(printed, &Options::default());
        assert_eq!(r.code, EXIT_CHECK_FAILED);
        assert!(r.stdout.contains("homogeneous: FAIL (B not homogeneous)"), "{}", r.stdout);
        let fixed = printed.replace("3*x^2*y^2", "3*x^3*y^2");
        let r = verify(&fixed, &Options::default());
        assert_eq!(r.code, EXIT_OK, "{}", r.stdout);
        assert_eq!(verify("ring: Q[x,y,z]\nA: x\n", &Options::default()).code, EXIT_INVALID);
    }

    #[test]
    fn singular_command() {
        let r = singular("ring: Q[x,y,z]\nA: -y^3\nB: x*y^2 - z^3\nC: y*z^2\n", &Options::default());
        assert_eq!(r.code, EXIT_OK, "{r:?}");
        // composing with construct closes the loop
        let back = construct(&r.stdout, &Options::default());
        assert_eq!(back.code, EXIT_OK);
        assert!(back.stdout.contains("A = y^3"));
        let contraction = singular("ring: Q[x,y,z]\nA: x*y - z^2\nB: y*z - x^2\nC: x*z - y^2\n", &Options::default());
        // (y, z, x) is a degree-1 field: d = 1 is rejected before the colength check
        assert_eq!(contraction.code, EXIT_CHECK_FAILED);
        // contraction of (y^2, z^2, x^2)
        let quad = singular("ring: Q[x,y,z]\nA: x^2*y - z^3\nB: y^2*z - x^3\nC: x*z^2 - y^3\n", &Options { json: true, ..Default::default() });
        assert_eq!(quad.code, EXIT_OK, "{quad:?}");
        let v: serde_json::Value = serde_json::from_str(&quad.stdout).unwrap();
        assert_eq!(v["N"], 7);
        let shared = singular("ring: Q[x,y,z]\nA: -x*y^3\nB: x^2*y^2 - x*z^3\nC: x*y*z^2\n", &Options::default());
        assert_eq!(shared.code, EXIT_CHECK_FAILED);
    }
}
