//! Per-group analysis summaries and flat report records.

use serde::{Deserialize, Serialize};

use crate::constructions::{cyclic, is_extraspecial};
use crate::group::{GroupTable, DEFAULT_ORDER_CAP};
use crate::isoclinism::{is_stem_group, verify_isoclinism_invariance};
use crate::theorems::{
    verify_bounds, verify_corollary_est, verify_kulkarni, verify_lemma, verify_lemma_corollary,
    verify_phi_x, verify_size_lower_bound, verify_stem_extraspecial, verify_theorem_a,
    verify_theorem_mt, Hypothesis, Theorem, TheoremReport,
};
use crate::zclass::{
    central_index, condition_central_quotient_elementary, condition_local_center,
    conjugate_type_vector, is_type_n_1, z_class_partition, zclass_bound,
};

/// Isoclinism quotient cap used when checking statements.
pub const DEFAULT_VERIFY_QUOTIENT_CAP: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub group: String,
    pub order: usize,
    pub center: usize,
    pub derived: usize,
    pub p: Option<u64>,
    pub k: Option<u32>,
    pub ctv: Vec<u64>,
    pub type_n_1: Option<u64>,
    pub zclasses: usize,
    pub bound: Option<u64>,
    pub attains: bool,
    pub cond1: Option<bool>,
    pub cond2: Option<bool>,
    pub extraspecial: bool,
    pub stem: bool,
}

pub fn analyze(g: &GroupTable) -> Analysis {
    let index = central_index(g).ok();
    let zclasses = z_class_partition(g).len();
    let bound = index.map(|(p, k)| zclass_bound(p, k));
    let nonabelian = !g.is_abelian();
    Analysis {
        group: g.label().to_string(),
        order: g.order(),
        center: g.center().size(),
        derived: g.commutator_subgroup().size(),
        p: index.map(|(p, _)| p),
        k: index.map(|(_, k)| k),
        ctv: conjugate_type_vector(g).0,
        type_n_1: is_type_n_1(g),
        zclasses,
        bound,
        attains: bound == Some(zclasses as u64),
        cond1: nonabelian.then(|| condition_central_quotient_elementary(g)),
        cond2: nonabelian.then(|| condition_local_center(g).0),
        extraspecial: is_extraspecial(g),
        stem: nonabelian && is_stem_group(g),
    }
}

/// One flat output row: a group's summary plus one statement check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub group: String,
    pub order: Option<usize>,
    pub p: Option<u64>,
    pub k: Option<u32>,
    pub ctv: Option<Vec<u64>>,
    pub zclasses: Option<usize>,
    pub bound: Option<u64>,
    pub attains: Option<bool>,
    pub cond1: Option<bool>,
    pub cond2: Option<bool>,
    pub theorem: String,
    pub verdict: String,
    pub witness: Option<String>,
}

impl ReportRecord {
    pub fn from_report(analysis: &Analysis, report: &TheoremReport) -> ReportRecord {
        let witness = match (report.failed_hypothesis(), &report.witness) {
            (Some(h), _) => Some(format!("hypothesis fails: {h}")),
            (None, w) => w.clone(),
        };
        ReportRecord::with_verdict(analysis, report.theorem.name(), &report.verdict.to_string(), witness)
    }

    pub fn with_verdict(
        analysis: &Analysis,
        theorem: &str,
        verdict: &str,
        witness: Option<String>,
    ) -> ReportRecord {
        ReportRecord {
            group: analysis.group.clone(),
            order: Some(analysis.order),
            p: analysis.p,
            k: analysis.k,
            ctv: Some(analysis.ctv.clone()),
            zclasses: Some(analysis.zclasses),
            bound: analysis.bound,
            attains: Some(analysis.attains),
            cond1: analysis.cond1,
            cond2: analysis.cond2,
            theorem: theorem.to_string(),
            verdict: verdict.to_string(),
            witness,
        }
    }

    /// A row for a group that could not be built or analysed.
    pub fn error(group: &str, theorem: &str, message: String) -> ReportRecord {
        ReportRecord {
            group: group.to_string(),
            order: None,
            p: None,
            k: None,
            ctv: None,
            zclasses: None,
            bound: None,
            attains: None,
            cond1: None,
            cond2: None,
            theorem: theorem.to_string(),
            verdict: "error".to_string(),
            witness: Some(message),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Order cap for auxiliary groups built during a check.
    pub cap: usize,
    /// Cap on `|G/Z(G)|` for isoclinism searches.
    pub quotient_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            cap: DEFAULT_ORDER_CAP,
            quotient_cap: DEFAULT_VERIFY_QUOTIENT_CAP,
        }
    }
}

/// The isoclinism partner of `G` used for the invariance check: `G × C_p`.
fn invariance_partner(g: &GroupTable, cap: usize) -> Result<GroupTable, String> {
    let p = central_index(g)
        .map(|(p, _)| p)
        .unwrap_or_else(|_| crate::arith::smallest_prime_factor(g.order().max(2) as u64));
    let c = cyclic(p, cap).map_err(|e| e.to_string())?;
    g.direct_product(&c, cap).map_err(|e| e.to_string())
}

/// Runs one statement check against `g`.
pub fn check(g: &GroupTable, theorem: Theorem, options: &CheckOptions) -> TheoremReport {
    match theorem {
        Theorem::A => verify_theorem_a(g),
        Theorem::Bounds => verify_bounds(g),
        Theorem::Est => verify_corollary_est(g, options.quotient_cap),
        Theorem::Kulkarni => verify_kulkarni(g),
        Theorem::Lemma => verify_lemma(g),
        Theorem::LemmaCorollary => verify_lemma_corollary(g),
        Theorem::Mt => verify_theorem_mt(g),
        Theorem::PhiX => verify_phi_x(g),
        Theorem::SizeLowerBound => verify_size_lower_bound(g),
        Theorem::StemExtraspecial => verify_stem_extraspecial(g),
        Theorem::IsoclinismInvariance => {
            let unavailable = |why: String| {
                TheoremReport::new(
                    g.label(),
                    Theorem::IsoclinismInvariance,
                    vec![Hypothesis::new("isoclinic partner available", false, Some(why))],
                    true,
                    None,
                )
            };
            match invariance_partner(g, options.cap) {
                Err(why) => unavailable(why),
                Ok(partner) => match verify_isoclinism_invariance(g, &partner, options.quotient_cap) {
                    Ok(report) => report,
                    Err(e) => unavailable(e.to_string()),
                },
            }
        }
    }
}
