#![no_main]

use libfuzzer_sys::fuzz_target;
use octopara::io::{parse_octonion, to_json};

fuzz_target!(|data: &str| {
    if let Ok(x) = parse_octonion(data) {
        let back = parse_octonion(&to_json(&x).unwrap()).unwrap();
        assert_eq!(back, x);
    }
});
