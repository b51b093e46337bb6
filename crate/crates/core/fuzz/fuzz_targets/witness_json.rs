#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use zclass_core::constructions::{dihedral, quaternion};
use zclass_core::isoclinism::{verify_witness, IsoclinismWitness};
use zclass_core::GroupTable;

fn pair() -> &'static (GroupTable, GroupTable) {
    static PAIR: OnceLock<(GroupTable, GroupTable)> = OnceLock::new();
    PAIR.get_or_init(|| (dihedral(8, 64).unwrap(), quaternion(8, 64).unwrap()))
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(w) = IsoclinismWitness::from_json(text) else { return };
    let (d8, q8) = pair();
    if verify_witness(d8, q8, &w).is_ok() {
        verify_witness(q8, d8, &w.inverse()).expect("inverse of a valid witness is valid");
    }
});
