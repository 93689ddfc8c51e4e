//! Replays the checked-in fuzz seeds through their parsers.

use std::path::Path;

use folforge_core::parse::{parse_expression, parse_form_file, parse_ideal_file, parse_ring_spec, Pos};

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| std::fs::read_to_string(e.unwrap().path()).unwrap())
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn seeds_parse_or_fail_cleanly() {
    let ok = |target: &str, f: &dyn Fn(&str) -> bool| seeds(target).iter().filter(|s| f(s)).count();
    assert!(ok("parse_expression", &|s| parse_expression(s, Pos { line: 1, column: 1 }).is_ok()) >= 4);
    assert!(ok("parse_ideal_file", &|s| parse_ideal_file(s).is_ok()) >= 3);
    assert!(ok("parse_form_file", &|s| parse_form_file(s).is_ok()) >= 1);
    assert!(ok("parse_ring_spec", &|s| parse_ring_spec(s).is_ok()) >= 2);
    assert!(ok("parse_sweep_spec", &|s| folforge::parse_sweep_spec(s).is_ok()) >= 2);
}
