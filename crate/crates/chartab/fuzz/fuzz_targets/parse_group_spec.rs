//! Fuzz the group-spec grammar.
//!
//! Parsing must never panic, and anything that parses must survive the
//! render/reparse round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(ast) = chartab::cli::parse_group_spec(text) {
            let rendered = chartab::cli::render_group_spec(&ast);
            let reparsed =
                chartab::cli::parse_group_spec(&rendered).expect("canonical form reparses");
            assert_eq!(reparsed, ast, "round trip changed the tree");
        }
    }
});
