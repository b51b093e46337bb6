//! Replays the checked-in fuzz seeds through the same assertions as the
//! fuzz targets, so the corpora stay meaningful on a stable toolchain.

use std::fs;
use std::path::PathBuf;

use zclass_core::catalog::parse_catalog;
use zclass_core::cayley::{read_cayley_table, write_cayley_table};
use zclass_core::constructions::{dihedral, quaternion};
use zclass_core::isoclinism::{verify_witness, IsoclinismWitness};
use zclass_core::{parse_spec, BuildOptions, Validation};

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<(PathBuf, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| entry.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_string_lossy().starts_with("seed-"))
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn parse_spec_seeds() {
    let mut parsed = 0;
    for (path, text) in seeds("parse_spec") {
        if let Ok(spec) = parse_spec(&text) {
            assert_eq!(parse_spec(&spec.to_string()), Ok(spec), "{}", path.display());
            parsed += 1;
        }
    }
    assert!(parsed >= 4);
}

#[test]
fn build_spec_seeds() {
    let options = BuildOptions {
        cap: 256,
        ..BuildOptions::default()
    };
    for (path, text) in seeds("build_spec") {
        let spec = parse_spec(&text).unwrap();
        let g = spec.build(&options).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(g.order() <= 256);
        assert_eq!(g.label(), spec.to_string());
    }
}

#[test]
fn cayley_table_seeds() {
    let mut accepted = 0;
    for (path, text) in seeds("cayley_table") {
        if let Ok(g) = read_cayley_table(&text, "seed", 64, Validation::default()) {
            let again = read_cayley_table(&write_cayley_table(&g), "seed", 64, Validation::default()).unwrap();
            assert_eq!(g.rows(), again.rows(), "{}", path.display());
            accepted += 1;
        }
    }
    assert_eq!(accepted, 3);
}

#[test]
fn catalog_seeds() {
    for (path, text) in seeds("catalog") {
        if let Ok(entries) = parse_catalog(&text) {
            for entry in entries {
                assert_eq!(parse_spec(&entry.spec.to_string()), Ok(entry.spec), "{}", path.display());
            }
        }
    }
}

#[test]
fn witness_json_seeds() {
    let (d8, q8) = (dihedral(8, 64).unwrap(), quaternion(8, 64).unwrap());
    let mut valid = 0;
    for (_, text) in seeds("witness_json") {
        if let Ok(w) = IsoclinismWitness::from_json(&text) {
            if verify_witness(&d8, &q8, &w).is_ok() {
                verify_witness(&q8, &d8, &w.inverse()).unwrap();
                valid += 1;
            }
        }
    }
    assert_eq!(valid, 1);
}
