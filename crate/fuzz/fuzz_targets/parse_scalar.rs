#![no_main]

use libfuzzer_sys::fuzz_target;
use num_integer::Integer;
use num_traits::{One, Signed};
use supergrade::linalg::{format_scalar, parse_scalar};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 256 {
        return;
    }
    let Ok(x) = parse_scalar(text) else { return };
    assert!(x.denom().is_positive() && x.numer().gcd(x.denom()).is_one(), "{text} parsed to {x}");
    let shown = format_scalar(&x);
    let back = parse_scalar(&shown).expect("formatted scalars parse");
    assert_eq!(back, x);
    assert_eq!(format_scalar(&back), shown);
});
