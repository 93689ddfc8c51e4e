#![no_main]

use folforge_core::parse::parse_ring_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    let _ = parse_ring_spec(s);
});
