#![no_main]

use libfuzzer_sys::fuzz_target;
use octopara::io::{parse_vector, to_json};

fuzz_target!(|data: &str| {
    if let Ok(x) = parse_vector(data) {
        assert_eq!(parse_vector(&to_json(&x).unwrap()).unwrap(), x);
    }
});
