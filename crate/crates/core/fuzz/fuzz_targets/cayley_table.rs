#![no_main]

use libfuzzer_sys::fuzz_target;
use zclass_core::cayley::{read_cayley_table, write_cayley_table};
use zclass_core::Validation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(g) = read_cayley_table(text, "fuzz", 64, Validation::default()) else { return };
    let again = read_cayley_table(&write_cayley_table(&g), "fuzz", 64, Validation::default())
        .expect("written tables read back");
    assert_eq!(g.rows(), again.rows());
    let _ = zclass_core::z_class_count(&g);
});
