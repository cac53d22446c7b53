#![no_main]

use libfuzzer_sys::fuzz_target;
use octopara::funcalc::eval_polynomial;
use octopara::io::parse_polynomial;

fuzz_target!(|data: &str| {
    if let Ok(coeffs) = parse_polynomial(data) {
        assert!(!coeffs.is_empty());
        let _ = eval_polynomial(&coeffs, 0.5);
    }
});
