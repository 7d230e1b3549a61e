#![no_main]

use libfuzzer_sys::fuzz_target;
use supergrade::io::{parse_document, serialize_document};

// Anything that parses must survive serialize -> parse unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = parse_document(text) else { return };
    let out = serialize_document(&doc);
    let again = parse_document(&out).expect("serialized documents parse");
    assert_eq!(again, doc);
    assert_eq!(serialize_document(&again), out);
});
