#![no_main]

use libfuzzer_sys::fuzz_target;
use zclass_core::parse_spec;

fuzz_target!(|src: &str| {
    let Ok(spec) = parse_spec(src) else { return };
    let canonical = spec.to_string();
    assert_eq!(parse_spec(&canonical).as_ref(), Ok(&spec), "{canonical}");
});
