//! End-to-end runs of the `folforge` binary.

use std::path::PathBuf;
use std::process::Command;

fn write(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], file: &PathBuf) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_folforge"))
        .args(&args[..1])
        .arg(file)
        .args(&args[1..])
        .env("FOLFORGE_THREADS", "2")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

const FP_TEMPLATE: &str = "template:\nring: Q[y,z]\nparams: a,b,c\nideal:\n  y + a*z^2 + b*z^5 + c*z^8\n  z^13\n";

#[test]
fn construct_bullet_one() {
    let f = write("b1.ideal", "ring: Q[y,z]\nideal:\n y^2 - z^3\n y*z^2\n");
    let (code, out, _) = run(&["construct", "--json"], &f);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["form"]["A"], "y^3");
    assert_eq!(v["form"]["B"], "-x*y^2 + z^3");
    assert_eq!(v["form"]["C"], "-y*z^2");
    let (code, text, _) = run(&["construct"], &f);
    assert_eq!(code, 0);
    assert!(text.contains("foliation of degree 2 with 7 singular points"));
}

#[test]
fn construct_negative_and_invalid() {
    let fp = write("fp112.ideal", "ring: Q[y,z]\nideal:\n y + z^2 + z^5 + 2*z^8\n z^13\n");
    let (code, out, _) = run(&["construct", "--json"], &fp);
    assert_eq!(code, 10);
    assert_eq!(json(&out)["reason"], "wrong_generator_count");
    let eight = write("n8.ideal", "ring: Q[y,z]\nideal:\n y\n z^8\n");
    let (code, out, _) = run(&["construct", "--json"], &eight);
    assert_eq!(code, 2);
    assert_eq!(json(&out)["reason"], "bad_colength");
    let bad = write("bad.ideal", "ideal:\n y +\n");
    let (code, _, err) = run(&["construct"], &bad);
    assert_eq!(code, 2);
    assert!(err.contains("line"), "{err}");
    let (code, _, err) = run(&["construct"], &PathBuf::from("/nonexistent/file"));
    assert_eq!(code, 2);
    assert!(err.contains("cannot read"));
    let param = write("param.ideal", &FP_TEMPLATE["template:\n".len()..]);
    assert_eq!(run(&["construct"], &param).0, 2);
}

#[test]
fn flags() {
    let f = write("b1f.ideal", "ring: Q[y,z]\nideal:\n y^2 - z^3\n y*z^2\n");
    let (code, out, _) = run(&["construct", "--json", "--field", "gf:32003"], &f);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["form"]["B"], "-x*y^2 + z^3");
    assert_eq!(run(&["construct", "--field", "gf:32004"], &f).0, 2);
    assert_eq!(run(&["construct", "--order", "grevlex"], &f).0, 0);
    assert_eq!(run(&["construct", "--order", "weird"], &f).0, 2);
    let proj = write("trunc.ideal", "ring: Q[x,y,z]\nideal:\n x*y^2 - x*z^3/x\n");
    // a non-polynomial division is a parse-time evaluation error
    assert_eq!(run(&["construct"], &proj).0, 2);
}

#[test]
fn strict_mode_rejects_unsaturated() {
    // J * (x, y, z) for the bullet-1 scheme J has saturation J
    let w = write("b1s.form", "ring: Q[x,y,z]\nA: -y^3\nB: x*y^2 - z^3\nC: y*z^2\n");
    let (_, out, _) = run(&["singular", "--json"], &w);
    let gens: Vec<String> = json(&out)["ideal"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|g| ["x", "y", "z"].map(|v| format!("  {v}*({})", g.as_str().unwrap())))
        .collect();
    let f = write("unsat.ideal", &format!("ring: Q[x,y,z]\nideal:\n{}\n", gens.join("\n")));
    let (code, out, _) = run(&["construct", "--json"], &f);
    assert_eq!(code, 0, "{out}");
    assert_eq!(json(&out)["form"]["A"], "y^3");
    let (code, text, _) = run(&["construct"], &f);
    assert_eq!(code, 0);
    assert!(text.starts_with("note: input was not saturated"));
    let (code, out, _) = run(&["construct", "--json", "--no-saturate"], &f);
    assert_eq!(code, 10, "{out}");
    assert_eq!(json(&out)["reason"], "not_saturated");
}

#[test]
fn betti_examples() {
    let f = write("b1b.ideal", "ring: Q[y,z]\nideal:\n y^2 - z^3\n y*z^2\n");
    let (code, out, _) = run(&["betti", "--json"], &f);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["d"], 2);
    assert_eq!(v["beta1"]["3"], 3);
    assert!(v["beta2_dplus2"].as_u64().unwrap() >= 1);
    let low = write("yz7.ideal", "ring: Q[y,z]\nideal:\n y\n z^7\n");
    let (code, out, _) = run(&["betti", "--json"], &low);
    assert_eq!(code, 10);
    assert_eq!(json(&out)["reason"], "low_degree_form");
    let max = write("xyz.ideal", "ring: Q[x,y,z]\nideal:\n x\n y\n z\n");
    assert_eq!(run(&["betti"], &max).0, 2);
}

#[test]
fn verify_examples() {
    let b2 = write("b2.form", "ring: Q[x,y,z]\nA: -y^3 + x^2*z\nB: x*y^2 - z^3\nC: -x^3 + y*z^2\n");
    let (code, out, _) = run(&["verify", "--json"], &b2);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
    let cubes = write("cubes.form", "ring: Q[x,y,z]\nA: x^3\nB: y^3\nC: z^3\n");
    let (code, out, _) = run(&["verify"], &cubes);
    assert_eq!(code, 11);
    assert!(out.contains("euler: FAIL"));
    let garbage = write("garbage.form", "ring: Q[x,y,z]\nA: x^3\nB: y^3\n");
    assert_eq!(run(&["verify"], &garbage).0, 2);
}

#[test]
fn singular_round_trip_through_files() {
    let w = write("b1.form", "ring: Q[x,y,z]\nA: -y^3\nB: x*y^2 - z^3\nC: y*z^2\n");
    let (code, ideal_text, _) = run(&["singular"], &w);
    assert_eq!(code, 0);
    let j = write("b1.sing.ideal", &ideal_text);
    let (code, out, _) = run(&["construct", "--json"], &j);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["form"]["A"], "y^3");
    let shared = write("shared.form", "ring: Q[x,y,z]\nA: -x*y^3\nB: x^2*y^2 - x*z^3\nC: x*y*z^2\n");
    assert_eq!(run(&["singular"], &shared).0, 11);
}

#[test]
fn sweep_grid_recovers_branch() {
    let spec = format!("grid: a = 1, 2, 3\ngrid: b = 1, 2, 3\nset: c = b^2/a\nfit: 2\n{FP_TEMPLATE}");
    let f = write("grid.sweep", &spec);
    let (code, out, _) = run(&["sweep", "--json"], &f);
    assert_eq!(code, 0);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r["status"] == "foliation"));
    let fitted = v["fitted_constraints"].as_array().unwrap();
    assert_eq!(fitted.len(), 1);
    assert_eq!(fitted[0], "-a*c + b^2");
    let (_, csv, _) = run(&["sweep", "--no-timing"], &f);
    assert!(csv.starts_with("idx,params,status,reason,d,wall_us\n0,a=1;b=1;c=1,foliation,,3,0\n"), "{csv}");
    assert!(csv.ends_with("# fitted: -a*c + b^2\n"));
}

#[test]
fn sweep_random_two_branches() {
    let spec = format!("random: 50\nseed: 11\nfield: gf:32003\nnonzero: a, b\nset: c = b^2/a | -3*b^2/a\nfit: 2\n{FP_TEMPLATE}");
    let f = write("rand.sweep", &spec);
    let (code, first, _) = run(&["sweep", "--no-timing"], &f);
    assert_eq!(code, 0);
    let (_, second, _) = run(&["sweep", "--no-timing"], &f);
    assert_eq!(first, second);
    let single = Command::new(env!("CARGO_BIN_EXE_folforge"))
        .args(["sweep", f.to_str().unwrap(), "--no-timing"])
        .env("FOLFORGE_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(single.stdout).unwrap(), first);
    let foliations = first.lines().filter(|l| l.contains(",foliation,")).count();
    assert_eq!(foliations, 50);
    assert!(first.ends_with("# fitted: none\n"), "{first}");
}

#[test]
fn sweep_negatives_and_errors() {
    let spec = format!("random: 20\nseed: 3\nfield: gf:32003\nnonzero: a, b, c\nexclude: b^2 - a*c, -3*b^2 - a*c\nfit: 2\n{FP_TEMPLATE}");
    let f = write("neg.sweep", &spec);
    let (code, out, _) = run(&["sweep", "--json", "--no-timing"], &f);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["status"] == "no_foliation"));
    assert!(v["fitted_constraints"].is_null());
    // c = b^2/a with a = 0 fails per row without aborting
    let spec = format!("grid: a = 0, 1\ngrid: b = 1\nset: c = b^2/a\n{FP_TEMPLATE}");
    let f = write("div0.sweep", &spec);
    let (code, out, _) = run(&["sweep", "--no-timing"], &f);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[1].starts_with("0,,error,"), "{out}");
    assert!(lines[2].starts_with("1,a=1;b=1;c=1,foliation"));
    let bad = write("bad.sweep", "grid: a = 1\n");
    assert_eq!(run(&["sweep"], &bad).0, 2);
}

#[test]
fn usage_errors_exit_two() {
    let out = Command::new(env!("CARGO_BIN_EXE_folforge")).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
