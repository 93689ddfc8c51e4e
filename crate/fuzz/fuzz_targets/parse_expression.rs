#![no_main]

use folforge_core::parse::{parse_expression, Pos};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(e) = parse_expression(s, Pos { line: 1, column: 1 }) {
        let _ = e.symbols();
    }
});
