#![no_main]

use folforge_core::parse::parse_ideal_file;
use libfuzzer_sys::fuzz_target;

// Parsing only: evaluating arbitrary generators can take unbounded time.
fuzz_target!(|s: &str| {
    if let Ok(f) = parse_ideal_file(s) {
        let _ = f.ring();
        assert!(f.params.iter().all(|p| !f.vars.contains(p)));
    }
});
