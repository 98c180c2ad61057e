//! Fuzz the catalog loader: malformed documents must error, not panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = chartab::cli::load_catalog(text);
    }
});
