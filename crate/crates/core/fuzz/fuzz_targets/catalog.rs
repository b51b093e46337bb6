#![no_main]

use libfuzzer_sys::fuzz_target;
use zclass_core::catalog::parse_catalog;

fuzz_target!(|src: &str| {
    let Ok(entries) = parse_catalog(src) else { return };
    for entry in &entries {
        assert!(entry.line >= 1);
        let text = entry.spec.to_string();
        assert_eq!(zclass_core::parse_spec(&text).as_ref(), Ok(&entry.spec));
    }
});
