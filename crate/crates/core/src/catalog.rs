//! Catalog files: one group spec per line with optional golden expectations.
//!
//! ```text
//! # comment
//! heisenberg(3)  expect order=27,zclasses=5,ctv=[3,1],attains=true
//! dihedral(16)
//! ```

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::{analyze, check, Analysis, CheckOptions, ReportRecord};
use crate::spec::{parse_spec, BuildOptions, GroupSpec, SpecError};
use crate::theorems::Theorem;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    pub order: Option<usize>,
    pub zclasses: Option<usize>,
    pub ctv: Option<Vec<u64>>,
    pub attains: Option<bool>,
}

impl Expectations {
    pub fn is_empty(&self) -> bool {
        *self == Expectations::default()
    }

    /// Describes every expectation `analysis` fails.
    pub fn mismatches(&self, analysis: &Analysis) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(order) = self.order.filter(|&o| o != analysis.order) {
            out.push(format!("order expected {order} got {}", analysis.order));
        }
        if let Some(z) = self.zclasses.filter(|&z| z != analysis.zclasses) {
            out.push(format!("zclasses expected {z} got {}", analysis.zclasses));
        }
        if let Some(ctv) = self.ctv.as_ref().filter(|c| **c != analysis.ctv) {
            out.push(format!("ctv expected {ctv:?} got {:?}", analysis.ctv));
        }
        if let Some(a) = self.attains.filter(|&a| a != analysis.attains) {
            out.push(format!("attains expected {a} got {}", analysis.attains));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub line: usize,
    pub spec: GroupSpec,
    pub expect: Expectations,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("line {line}: {source}")]
    Spec { line: usize, source: SpecError },
    #[error("line {line}: {message}")]
    Expect { line: usize, message: String },
}

fn split_top_level(text: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

fn parse_expectations(text: &str, line: usize) -> Result<Expectations, CatalogError> {
    let err = |message: String| CatalogError::Expect { line, message };
    let mut expect = Expectations::default();
    for pair in split_top_level(text) {
        let pair = pair.trim();
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| err(format!("expected key=value, found `{pair}`")))?;
        let (key, value) = (key.trim(), value.trim());
        let num = |v: &str| v.parse::<usize>().map_err(|_| err(format!("bad number `{v}` for {key}")));
        let duplicate = match key {
            "order" => expect.order.replace(num(value)?).is_some(),
            "zclasses" => expect.zclasses.replace(num(value)?).is_some(),
            "attains" => {
                let b = value.parse().map_err(|_| err(format!("bad boolean `{value}`")))?;
                expect.attains.replace(b).is_some()
            }
            "ctv" => {
                let inner = value
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| err(format!("ctv must be a bracketed list, found `{value}`")))?;
                let ctv = inner
                    .split(',')
                    .map(|v| v.trim().parse::<u64>().map_err(|_| err(format!("bad ctv entry `{v}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                expect.ctv.replace(ctv).is_some()
            }
            _ => return Err(err(format!("unknown expectation `{key}`"))),
        };
        if duplicate {
            return Err(err(format!("expectation `{key}` given twice")));
        }
    }
    Ok(expect)
}

fn find_expect(line: &str) -> Option<usize> {
    line.match_indices("expect").map(|(i, _)| i).find(|&i| {
        let before = line[..i].chars().next_back();
        let after = line[i + 6..].chars().next();
        before.is_some_and(char::is_whitespace) && after.is_none_or(char::is_whitespace)
    })
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (spec_text, expect) = match find_expect(content) {
            Some(at) => (&content[..at], parse_expectations(&content[at + 6..], line)?),
            None => (content, Expectations::default()),
        };
        let spec = parse_spec(spec_text.trim()).map_err(|source| CatalogError::Spec { line, source })?;
        entries.push(CatalogEntry { line, spec, expect });
    }
    Ok(entries)
}

/// The built-in catalog with frozen expectations.
pub const DEFAULT_CATALOG: &str = "\
abelian()                               expect order=1,zclasses=1,ctv=[1],attains=false
cyclic(2)                               expect order=2,zclasses=1,ctv=[1],attains=false
abelian(2,2)                            expect order=4,zclasses=1,ctv=[1],attains=false
abelian(4)                              expect order=4,zclasses=1,ctv=[1],attains=false
symmetric(3)                            expect order=6,zclasses=3,ctv=[3,2,1],attains=false
dihedral(8)                             expect order=8,zclasses=4,ctv=[2,1],attains=true
quaternion(8)                           expect order=8,zclasses=4,ctv=[2,1],attains=true
dihedral(16)                            expect order=16,zclasses=4,ctv=[4,2,1],attains=false
quaternion(16)                          expect order=16,zclasses=4,ctv=[4,2,1],attains=false
heisenberg(3)                           expect order=27,zclasses=5,ctv=[3,1],attains=true
modular_p3(3)                           expect order=27,zclasses=5,ctv=[3,1],attains=true
heisenberg(5)                           expect order=125,zclasses=7,ctv=[5,1],attains=true
extraspecial(p=2,n=2,variant=plus)      expect order=32,zclasses=16,ctv=[2,1],attains=true
extraspecial(p=2,n=2,variant=minus)     expect order=32,zclasses=16,ctv=[2,1],attains=true
extraspecial(p=3,n=2,variant=plus)      expect order=243,zclasses=41,ctv=[3,1],attains=true
product(heisenberg(3),abelian(3))       expect order=81,zclasses=5,ctv=[3,1],attains=true
product(dihedral(8),abelian(2))         expect order=16,zclasses=4,ctv=[2,1],attains=true
product(heisenberg(3),abelian(9))       expect order=243,zclasses=5,ctv=[3,1],attains=true
";

pub fn default_catalog() -> Vec<CatalogEntry> {
    parse_catalog(DEFAULT_CATALOG).expect("built-in catalog parses")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub build: BuildOptions,
    pub check: CheckOptions,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub groups: usize,
    pub confirmed: usize,
    pub vacuous: usize,
    pub refuted: usize,
    pub mismatches: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRun {
    pub records: Vec<ReportRecord>,
    pub summary: Summary,
}

/// Checks one group against every statement plus its golden expectations.
pub fn run_entry(entry: &CatalogEntry, options: &RunOptions) -> Vec<ReportRecord> {
    let label = entry.spec.to_string();
    let g = match entry.spec.build(&options.build) {
        Ok(g) => g,
        Err(e) => return vec![ReportRecord::error(&label, "construct", e.to_string())],
    };
    let analysis = analyze(&g);
    let mut records: Vec<ReportRecord> = Theorem::ALL
        .iter()
        .map(|&t| ReportRecord::from_report(&analysis, &check(&g, t, &options.check)))
        .collect();
    if !entry.expect.is_empty() {
        let mismatches = entry.expect.mismatches(&analysis);
        records.push(if mismatches.is_empty() {
            ReportRecord::with_verdict(&analysis, "golden", "confirmed", None)
        } else {
            ReportRecord::with_verdict(&analysis, "golden", "mismatch", Some(mismatches.join("; ")))
        });
    }
    records.sort_by(|a, b| a.theorem.cmp(&b.theorem));
    records
}

/// Runs every entry in parallel; records keep catalog order.
pub fn run_catalog(entries: &[CatalogEntry], options: &RunOptions) -> CatalogRun {
    let per_entry: Vec<Vec<ReportRecord>> = entries.par_iter().map(|e| run_entry(e, options)).collect();
    let mut summary = Summary {
        groups: entries.len(),
        ..Summary::default()
    };
    for record in per_entry.iter().flatten() {
        match record.verdict.as_str() {
            "confirmed" => summary.confirmed += 1,
            "vacuous" => summary.vacuous += 1,
            "REFUTED" => summary.refuted += 1,
            "mismatch" => summary.mismatches += 1,
            _ => summary.errors += 1,
        }
    }
    CatalogRun {
        records: per_entry.into_iter().flatten().collect(),
        summary,
    }
}
