#![no_main]

use libfuzzer_sys::fuzz_target;
use octopara::io::{parse_operator, to_json};

fuzz_target!(|data: &str| {
    let Ok(t) = parse_operator(data, 1e-10) else { return };
    // Written back in core form, so no para-linearity check applies.
    assert_eq!(parse_operator(&to_json(&t).unwrap(), 0.0).unwrap(), t);
    if t.dim() <= 4 {
        let _ = t.adjoint().operator_norm();
    }
});
