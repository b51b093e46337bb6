//! Executable forms of the statements about groups attaining the maximal
//! number of z-classes. Each check applies to one group and reports whether
//! its hypotheses hold and, if so, whether the conclusion does.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::constructions::{extraspecial, is_extraspecial, Variant};
use crate::group::{ElementId, GroupTable};
use crate::isoclinism::{are_isoclinic, is_stem_group, verify_witness};
use crate::zclass::{
    central_index, condition_central_quotient_elementary, condition_local_center, conjugate_type_vector,
    has_abelian_subgroup_exceeding, has_abelian_subgroup_of_index_p, is_type_n_1, kulkarni_failures,
    strict_fixed_set, z_class_partition, zclass_bound,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// Necessary conditions for attaining the bound.
    #[serde(rename = "A")]
    A,
    /// `p + 2 <= zclasses <= bound`.
    #[serde(rename = "bounds")]
    Bounds,
    /// Attaining with `|G′| = p` iff isoclinic to an extraspecial group.
    #[serde(rename = "est")]
    Est,
    #[serde(rename = "isoclinism-invariance")]
    IsoclinismInvariance,
    /// Class size equals `[G : N_G(C_G(x))]·|F′_x|`.
    #[serde(rename = "kulkarni")]
    Kulkarni,
    /// `G/Z(G)` elementary abelian with `Z(C_G(x)) = ⟨x, Z(G)⟩` forces the bound.
    #[serde(rename = "lemma")]
    Lemma,
    /// `G/Z(G)` elementary abelian with no abelian subgroup above `p|Z(G)|` forces the bound.
    #[serde(rename = "lemma-corollary")]
    LemmaCorollary,
    /// Characterization for groups of type `(n, 1)`.
    #[serde(rename = "mt")]
    Mt,
    /// `g ↦ [x, g]` maps an extraspecial group onto `G′` with kernel `C_G(x)`.
    #[serde(rename = "phi-x")]
    PhiX,
    /// Non-central z-classes have at least `(p − 1)|Z(G)|` elements.
    #[serde(rename = "size-lower-bound")]
    SizeLowerBound,
    /// A stem p-group with `|G′| = p` is extraspecial.
    #[serde(rename = "stem-extraspecial")]
    StemExtraspecial,
}

impl Theorem {
    /// Every theorem, sorted by name.
    pub const ALL: [Theorem; 11] = [
        Theorem::A,
        Theorem::Bounds,
        Theorem::Est,
        Theorem::IsoclinismInvariance,
        Theorem::Kulkarni,
        Theorem::Lemma,
        Theorem::LemmaCorollary,
        Theorem::Mt,
        Theorem::PhiX,
        Theorem::SizeLowerBound,
        Theorem::StemExtraspecial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::A => "A",
            Theorem::Bounds => "bounds",
            Theorem::Est => "est",
            Theorem::IsoclinismInvariance => "isoclinism-invariance",
            Theorem::Kulkarni => "kulkarni",
            Theorem::Lemma => "lemma",
            Theorem::LemmaCorollary => "lemma-corollary",
            Theorem::Mt => "mt",
            Theorem::PhiX => "phi-x",
            Theorem::SizeLowerBound => "size-lower-bound",
            Theorem::StemExtraspecial => "stem-extraspecial",
        }
    }

    pub fn from_name(name: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.name() == name)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "confirmed")]
    Confirmed,
    #[serde(rename = "vacuous")]
    Vacuous,
    #[serde(rename = "REFUTED")]
    Refuted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Confirmed => "confirmed",
            Verdict::Vacuous => "vacuous",
            Verdict::Refuted => "REFUTED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    pub witness: Option<String>,
}

impl Hypothesis {
    pub fn new(name: impl Into<String>, holds: bool, witness: Option<String>) -> Hypothesis {
        Hypothesis {
            name: name.into(),
            holds,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub group: String,
    pub theorem: Theorem,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: bool,
    pub verdict: Verdict,
    pub witness: Option<String>,
}

impl TheoremReport {
    /// Refuted only when every hypothesis holds and the conclusion fails.
    pub fn new(
        group: impl Into<String>,
        theorem: Theorem,
        hypotheses: Vec<Hypothesis>,
        conclusion: bool,
        witness: Option<String>,
    ) -> TheoremReport {
        let verdict = if !hypotheses.iter().all(|h| h.holds) {
            Verdict::Vacuous
        } else if conclusion {
            Verdict::Confirmed
        } else {
            Verdict::Refuted
        };
        TheoremReport {
            group: group.into(),
            theorem,
            hypotheses,
            conclusion,
            verdict,
            witness,
        }
    }

    /// Name of the first failing hypothesis, if any.
    pub fn failed_hypothesis(&self) -> Option<&str> {
        self.hypotheses.iter().find(|h| !h.holds).map(|h| h.name.as_str())
    }
}

/// Facts about `G` shared by most checks.
struct Basics {
    nonabelian: bool,
    /// `[G:Z] = p^k`
    index: Option<(u64, u32)>,
    p_group: Option<u64>,
    zclasses: usize,
}

impl Basics {
    fn of(g: &GroupTable) -> Basics {
        Basics {
            nonabelian: !g.is_abelian(),
            index: central_index(g).ok(),
            p_group: prime_power(g.order() as u64).map(|(p, _)| p),
            zclasses: z_class_partition(g).len(),
        }
    }

    fn bound(&self) -> Option<u64> {
        self.index.map(|(p, k)| zclass_bound(p, k))
    }

    fn attains(&self) -> bool {
        self.bound() == Some(self.zclasses as u64)
    }

    fn nonabelian_p_group(&self) -> Hypothesis {
        Hypothesis::new("non-abelian p-group", self.nonabelian && self.p_group.is_some(), None)
    }

    fn count_witness(&self) -> Option<String> {
        Some(match self.bound() {
            Some(b) => format!("zclasses {} bound {b}", self.zclasses),
            None => format!("zclasses {}", self.zclasses),
        })
    }
}

fn local_center(g: &GroupTable) -> (bool, Option<String>) {
    let (ok, x) = condition_local_center(g);
    (ok, x.map(|x| format!("Z(C_G({x})) != <{x}, Z(G)>")))
}

/// Type-(n, 1) characterization: attaining the bound iff `G/Z` is elementary
/// abelian and `Z(C_G(x)) = ⟨x, Z(G)⟩` for every non-central `x`.
pub fn verify_theorem_mt(g: &GroupTable) -> TheoremReport {
    let b = Basics::of(g);
    let type_n1 = is_type_n_1(g);
    let mut hyps = vec![
        Hypothesis::new("non-abelian", b.nonabelian, None),
        Hypothesis::new(
            "type (n,1)",
            type_n1.is_some(),
            Some(format!("ctv {}", conjugate_type_vector(g))),
        ),
    ];
    if !hyps.iter().all(|h| h.holds) {
        return TheoremReport::new(g.label(), Theorem::Mt, hyps, true, None);
    }
    hyps.push(Hypothesis::new("[G:Z] prime power", b.index.is_some(), None));
    if b.index.is_none() {
        return TheoremReport::new(g.label(), Theorem::Mt, hyps, true, None);
    }
    let cond1 = condition_central_quotient_elementary(g);
    let (cond2, w2) = local_center(g);
    let attains = b.attains();
    let witness = format!(
        "{}; cond1 {cond1}; cond2 {cond2}{}",
        b.count_witness().unwrap_or_default(),
        w2.map(|w| format!(" ({w})")).unwrap_or_default()
    );
    TheoremReport::new(g.label(), Theorem::Mt, hyps, attains == (cond1 && cond2), Some(witness))
}

/// Attaining the bound forces `G/Z ≅ C_p × C_p`, or else no abelian subgroup
/// of index `p` and `G/Z` elementary abelian.
pub fn verify_theorem_a(g: &GroupTable) -> TheoremReport {
    let b = Basics::of(g);
    let hyps = vec![
        b.nonabelian_p_group(),
        Hypothesis::new("attains bound", b.attains(), b.count_witness()),
    ];
    if !hyps.iter().all(|h| h.holds) {
        return TheoremReport::new(g.label(), Theorem::A, hyps, true, None);
    }
    let (p, k) = b.index.expect("attaining implies a prime-power index");
    let elementary = condition_central_quotient_elementary(g);
    if elementary && k == 2 {
        return TheoremReport::new(
            g.label(),
            Theorem::A,
            hyps,
            true,
            Some(format!("first branch: G/Z elementary abelian of order {p}^2")),
        );
    }
    let abelian_index_p = has_abelian_subgroup_of_index_p(g, p).ok().flatten();
    let second = elementary && abelian_index_p.is_none();
    let witness = match (&abelian_index_p, elementary) {
        (_, false) => "G/Z not elementary abelian".to_string(),
        (Some(h), _) => format!("abelian subgroup of index {p}: {:?}", h.members()),
        (None, true) => "second branch: no abelian subgroup of index p, G/Z elementary abelian".to_string(),
    };
    TheoremReport::new(g.label(), Theorem::A, hyps, second, Some(witness))
}

/// For `|G′| = p` and `[G:Z] = p^k`, `k >= 2`: attaining the bound iff `G` is
/// isoclinic to an extraspecial group of order `p^(1+k)`.
///
/// `cap` bounds `|G/Z|` for the isoclinism search.
pub fn verify_corollary_est(g: &GroupTable, cap: usize) -> TheoremReport {
    let b = Basics::of(g);
    let derived = g.commutator_subgroup().size() as u64;
    let mut hyps = vec![
        Hypothesis::new("non-abelian", b.nonabelian, None),
        Hypothesis::new(
            "[G:Z] = p^k, k >= 2",
            b.index.is_some_and(|(_, k)| k >= 2),
            b.index.map(|(p, k)| format!("{p}^{k}")),
        ),
    ];
    let p = b.index.map(|(p, _)| p);
    hyps.push(Hypothesis::new("|G'| = p", p == Some(derived), Some(format!("|G'| = {derived}"))));
    if !hyps.iter().all(|h| h.holds) {
        return TheoremReport::new(g.label(), Theorem::Est, hyps, true, None);
    }
    let (p, k) = b.index.expect("checked above");
    let attains = b.attains();
    let isoclinic = if k % 2 == 1 {
        Ok(false)
    } else {
        match extraspecial(p, k / 2, Variant::Plus, usize::MAX) {
            Ok(model) => match are_isoclinic(g, &model, cap) {
                Ok(Some(w)) => Ok(verify_witness(g, &model, &w).is_ok()),
                Ok(None) => Ok(false),
                Err(e) => Err(e.to_string()),
            },
            Err(e) => Err(e.to_string()),
        }
    };
    match isoclinic {
        Ok(iso) => TheoremReport::new(
            g.label(),
            Theorem::Est,
            hyps,
            attains == iso,
            Some(format!(
                "{}; isoclinic to extraspecial {p}^(1+{k}): {iso}",
                b.count_witness().unwrap_or_default()
            )),
        ),
        Err(msg) => {
            hyps.push(Hypothesis::new("isoclinism decidable", false, Some(msg)));
            TheoremReport::new(g.label(), Theorem::Est, hyps, true, None)
        }
    }
}

/// `G/Z(G)` elementary abelian and `Z(C_G(x)) = ⟨x, Z(G)⟩` imply the bound
/// is attained, with
/// `F′_x = ⟨x, Z(G)⟩ \ Z(G)` for every non-central `x`.
pub fn verify_lemma(g: &GroupTable) -> TheoremReport {
    let b = Basics::of(g);
    let cond1 = condition_central_quotient_elementary(g) && b.nonabelian;
    let (cond2, w2) = if cond1 { local_center(g) } else { (false, None) };
    let hyps = vec![
        b.nonabelian_p_group(),
        Hypothesis::new("G/Z elementary abelian", cond1, None),
        Hypothesis::new("Z(C_G(x)) = <x, Z(G)>", cond2, w2),
    ];
    if !hyps.iter().all(|h| h.holds) {
        return TheoremReport::new(g.label(), Theorem::Lemma, hyps, true, None);
    }
    let z = g.center();
    let bad_cell = g.elements().filter(|&x| !z.contains(x)).find(|&x| {
        let xz = g.join_with(&z, &[x]);
        let expected: Vec<ElementId> = xz.iter().filter(|&y| !z.contains(y)).collect();
        strict_fixed_set(g, x) != expected
    });
    let witness = match bad_cell {
        Some(x) => format!("F'_{x} != <{x}, Z(G)> \\ Z(G)"),
        None => b.count_witness().unwrap_or_default(),
    };
    TheoremReport::new(g.label(), Theorem::Lemma, hyps, b.attains() && bad_cell.is_none(), Some(witness))
}

/// No abelian subgroup of order above `p·|Z(G)|` and `G/Z` elementary abelian
/// imply `C_G(x) = ⟨x, Z(G)⟩` and the bound is attained.
pub fn verify_lemma_corollary(g: &GroupTable) -> TheoremReport {
    let b = Basics::of(g);
    let cond1 = b.nonabelian && b.p_group.is_some() && condition_central_quotient_elementary(g);
    let large = if cond1 { has_abelian_subgroup_exceeding(g).ok().flatten() } else { None };
    let hyps = vec![
        b.nonabelian_p_group(),
        Hypothesis::new("G/Z elementary abelian", cond1, None),
        Hypothesis::new(
            "no abelian subgroup of order > p|Z(G)|",
            cond1 && large.is_none(),
            large.map(|h| format!("abelian subgroup of order {}", h.size())),
        ),
    ];
    if !hyps.iter().all(|h| h.holds) {
        return TheoremReport::new(g.label(), Theorem::LemmaCorollary, hyps, true, None);
    }
    let z = g.center();
    let bad = g
        .elements()
        .filter(|&x| !z.contains(x))
        .find(|&x| g.centralizer(x) != g.join_with(&z, &[x]));
    let witness = match bad {
        Some(x) => format!("C_G({x}) != <{x}, Z(G)>"),
        None => b.count_witness().unwrap_or_default(),
    };
    TheoremReport::new(g.label(), Theorem::LemmaCorollary, hyps, b.attains() && bad.is_none(), Some(witness))
}

/// The class-size formula holds at every element.
pub fn verify_kulkarni(g: &GroupTable) -> TheoremReport {
    let failures = kulkarni_failures(g);
    let witness = failures
        .first()
        .map(|(x, c)| format!("at {x}: predicted {} actual {}", c.predicted, c.actual));
    TheoremReport::new(g.label(), Theorem::Kulkarni, vec![], failures.is_empty(), witness)
}

/// `p + 2 <= zclasses <= (p^k − 1)/(p − 1) + 1` for non-abelian p-groups.
pub fn verify_bounds(g: &GroupTable) -> TheoremReport {
    let b = Basics::of(g);
    let hyps = vec![b.nonabelian_p_group()];
    if !hyps[0].holds {
        return TheoremReport::new(g.label(), Theorem::Bounds, hyps, true, None);
    }
    let (p, _) = b.index.expect("p-group has prime-power central index");
    let bound = b.bound().expect("index known");
    let count = b.zclasses as u64;
    TheoremReport::new(
        g.label(),
        Theorem::Bounds,
        hyps,
        p + 2 <= count && count <= bound,
        Some(format!("{} <= {count} <= {bound}", p + 2)),
    )
}

/// Non-central z-classes have at least `(p − 1)|Z(G)|` elements when `G/Z`
/// has exponent `p`; groups attaining the bound meet the floor exactly.
pub fn verify_size_lower_bound(g: &GroupTable) -> TheoremReport {
    let b = Basics::of(g);
    let mut hyps = vec![b.nonabelian_p_group()];
    if !hyps[0].holds {
        return TheoremReport::new(g.label(), Theorem::SizeLowerBound, hyps, true, None);
    }
    let p = b.p_group.expect("p-group");
    let z = g.center();
    let exponent = g.quotient(&z).expect("center is normal").table.exponent();
    hyps.push(Hypothesis::new(
        "G/Z has exponent p",
        exponent == p,
        Some(format!("exponent {exponent}")),
    ));
    if !hyps[1].holds {
        return TheoremReport::new(g.label(), Theorem::SizeLowerBound, hyps, true, None);
    }
    let floor = (p as usize - 1) * z.size();
    let partition = z_class_partition(g);
    let noncentral: Vec<usize> = partition
        .classes()
        .iter()
        .filter(|c| !z.contains(c.representative))
        .map(|c| c.members.len())
        .collect();
    let above = noncentral.iter().all(|&s| s >= floor);
    let exact = !b.attains() || noncentral.iter().all(|&s| s == floor);
    TheoremReport::new(
        g.label(),
        Theorem::SizeLowerBound,
        hyps,
        above && exact,
        Some(format!("floor {floor}; sizes {noncentral:?}")),
    )
}

/// For extraspecial `G` and non-central `x`, `g ↦ [x, g]` is a homomorphism
/// onto `G′` with kernel `C_G(x)`; hence the type vector is `(p, 1)`.
pub fn verify_phi_x(g: &GroupTable) -> TheoremReport {
    let extra = is_extraspecial(g);
    let hyps = vec![Hypothesis::new("extraspecial", extra, None)];
    if !extra {
        return TheoremReport::new(g.label(), Theorem::PhiX, hyps, true, None);
    }
    let z = g.center();
    let derived = g.commutator_subgroup();
    let p = z.size() as u64;
    let failure = g.elements().filter(|&x| !z.contains(x)).find_map(|x| {
        let phi = |y: ElementId| g.commutator(x, y);
        let hom = g
            .elements()
            .all(|a| g.elements().all(|b| phi(g.mul(a, b)) == g.mul(phi(a), phi(b))));
        let kernel: Vec<ElementId> = g.elements().filter(|&y| phi(y) == ElementId::IDENTITY).collect();
        let mut image: Vec<ElementId> = g.elements().map(phi).collect();
        image.sort_unstable();
        image.dedup();
        let ok = hom && kernel == g.centralizer(x).members() && image == derived.members();
        (!ok).then(|| format!("phi_{x} fails"))
    });
    let ctv = conjugate_type_vector(g);
    let ctv_ok = ctv.0 == [p, 1];
    let witness = failure.unwrap_or_else(|| format!("ctv {ctv}"));
    TheoremReport::new(g.label(), Theorem::PhiX, hyps, ctv_ok && !witness.contains("fails"), Some(witness))
}

/// A non-abelian stem p-group with `|G′| = p` is extraspecial.
pub fn verify_stem_extraspecial(g: &GroupTable) -> TheoremReport {
    let b = Basics::of(g);
    let derived = g.commutator_subgroup().size() as u64;
    let hyps = vec![
        b.nonabelian_p_group(),
        Hypothesis::new("stem", is_stem_group(g), None),
        Hypothesis::new(
            "|G'| = p",
            b.p_group == Some(derived),
            Some(format!("|G'| = {derived}")),
        ),
    ];
    let conclusion = !hyps.iter().all(|h| h.holds) || is_extraspecial(g);
    TheoremReport::new(g.label(), Theorem::StemExtraspecial, hyps, conclusion, None)
}
