#![no_main]

use libfuzzer_sys::fuzz_target;
use octopara::io::{parse_spectrum_function, to_json};

fuzz_target!(|data: &str| {
    if let Ok(f) = parse_spectrum_function(data) {
        assert_eq!(parse_spectrum_function(&to_json(&f).unwrap()).unwrap(), f);
        let _ = f.sup_norm();
    }
});
