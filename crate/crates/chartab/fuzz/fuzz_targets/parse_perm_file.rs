//! Fuzz the permutation file parser: malformed files must error, not panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = chartab::cli::parse_perm_file(text);
    }
});
