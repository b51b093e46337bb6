#![no_main]

use libfuzzer_sys::fuzz_target;
use zclass_core::{parse_spec, BuildOptions};

fuzz_target!(|src: &str| {
    let Ok(spec) = parse_spec(src) else { return };
    let options = BuildOptions {
        cap: 256,
        ..BuildOptions::default()
    };
    if let Ok(g) = spec.build(&options) {
        assert!(g.order() <= 256);
        assert_eq!(g.label(), spec.to_string());
    }
});
