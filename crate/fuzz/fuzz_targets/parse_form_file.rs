#![no_main]

use folforge_core::parse::parse_form_file;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(f) = parse_form_file(s) {
        let _ = f.ring();
    }
});
