#![no_main]

use libfuzzer_sys::fuzz_target;
use supergrade::cli::{run_text, Command, Format, RunConfig, Source};
use supergrade::io::parse_document;

// Full report on small inputs: must not panic and must be deterministic.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = parse_document(text) else { return };
    if doc.algebra.dim() > 8 || doc.algebra.group().coordinate_count() > 3 {
        return;
    }
    let config = RunConfig {
        command: Command::Report,
        source: Source::Builtin("fuzz".into()),
        format: Format::Structured,
        oracle_depth: None,
    };
    let a = run_text(&config, "fuzz", text);
    assert!((0..=4).contains(&a.code));
    assert_ne!(a.code, 4, "verification failure on a valid input:\n{}", a.stdout);
    assert_eq!(a, run_text(&config, "fuzz", text));
});
