//! Commutator pairings on central quotients and a complete isoclinism search.
//!
//! An isoclinism between `G₁` and `G₂` is a pair of isomorphisms
//! `φ: G₁/Z₁ → G₂/Z₂` and `ψ: G₁′ → G₂′` with
//! `ψ([a, b]) = [φ(a), φ(b)]` on cosets.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{ElementId, GroupTable};
use crate::subgroup::{QuotientGroup, SubgroupSet};
use crate::theorems::{Hypothesis, Theorem, TheoremReport};
use crate::zclass::z_class_partition;

/// Default bound on `|G/Z(G)|` for [`are_isoclinic`].
pub const DEFAULT_QUOTIENT_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoclinismError {
    #[error("|G/Z(G)| = {size} exceeds the isoclinism search cap {cap}")]
    QuotientExceedsCap { size: usize, cap: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// The map `G/Z × G/Z → G′`, `(aZ, bZ) ↦ [a, b]`.
#[derive(Clone, Debug)]
pub struct CommutatorPairing {
    pub quotient: QuotientGroup,
    pub target: SubgroupSet,
    table: Vec<ElementId>,
}

impl CommutatorPairing {
    pub fn value(&self, a: ElementId, b: ElementId) -> ElementId {
        self.table[a.index() * self.quotient.table.order() + b.index()]
    }

    pub fn size(&self) -> usize {
        self.quotient.table.order()
    }
}

pub fn commutator_pairing(g: &GroupTable) -> CommutatorPairing {
    let center = g.center();
    let quotient = g.quotient(&center).expect("the center is normal");
    let m = quotient.table.order();
    let mut table = vec![ElementId::IDENTITY; m * m];
    // a second representative of every coset, to confirm independence of the choice
    let shift = center.iter().last().unwrap_or(ElementId::IDENTITY);
    for a in 0..m {
        let ra = quotient.representative(ElementId(a as u32));
        for b in 0..m {
            let rb = quotient.representative(ElementId(b as u32));
            let w = g.commutator(ra, rb);
            assert_eq!(
                w,
                g.commutator(g.mul(ra, shift), g.mul(shift, rb)),
                "commutator depends on the coset representative"
            );
            table[a * m + b] = w;
        }
    }
    CommutatorPairing {
        quotient,
        target: g.commutator_subgroup(),
        table,
    }
}

/// `φ` on central quotients and `ψ` on derived subgroups.
///
/// `phi[i]` is the image of coset `i` of `G₁/Z₁` (cosets numbered by smallest
/// member). `psi[j]` is the image in `G₂` of the element `psi_domain[j]` of
/// `G₁′`, with `psi_domain` sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoclinismWitness {
    pub phi: Vec<u32>,
    pub psi_domain: Vec<u32>,
    pub psi: Vec<u32>,
}

impl IsoclinismWitness {
    /// The witness for the reversed pair.
    pub fn inverse(&self) -> IsoclinismWitness {
        let mut phi = vec![0u32; self.phi.len()];
        for (i, &j) in self.phi.iter().enumerate() {
            phi[j as usize] = i as u32;
        }
        let mut pairs: Vec<(u32, u32)> = self.psi.iter().copied().zip(self.psi_domain.iter().copied()).collect();
        pairs.sort_unstable();
        IsoclinismWitness {
            phi,
            psi_domain: pairs.iter().map(|p| p.0).collect(),
            psi: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<IsoclinismWitness, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("phi has {got} entries, expected {expected}")]
    PhiLength { got: usize, expected: usize },
    #[error("phi is not a bijection")]
    PhiNotBijective,
    #[error("phi is not a homomorphism at ({0}, {1})")]
    PhiNotHomomorphism(u32, u32),
    #[error("psi domain is not the derived subgroup of the first group")]
    PsiDomain,
    #[error("psi is not a bijection onto the derived subgroup of the second group")]
    PsiNotBijective,
    #[error("psi is not a homomorphism at ({0}, {1})")]
    PsiNotHomomorphism(u32, u32),
    #[error("pairings disagree at cosets ({0}, {1})")]
    Incompatible(u32, u32),
}

/// Re-checks every isoclinism property of `w` exhaustively.
pub fn verify_witness(g1: &GroupTable, g2: &GroupTable, w: &IsoclinismWitness) -> Result<(), WitnessError> {
    let p1 = commutator_pairing(g1);
    let p2 = commutator_pairing(g2);
    let (q1, q2) = (&p1.quotient.table, &p2.quotient.table);
    if w.phi.len() != q1.order() {
        return Err(WitnessError::PhiLength {
            got: w.phi.len(),
            expected: q1.order(),
        });
    }
    let mut hit = vec![false; q2.order()];
    for &v in &w.phi {
        if v as usize >= q2.order() || std::mem::replace(&mut hit[v as usize], true) {
            return Err(WitnessError::PhiNotBijective);
        }
    }
    if q1.order() != q2.order() {
        return Err(WitnessError::PhiNotBijective);
    }
    let phi = |x: ElementId| ElementId(w.phi[x.index()]);
    for a in q1.elements() {
        for b in q1.elements() {
            if phi(q1.mul(a, b)) != q2.mul(phi(a), phi(b)) {
                return Err(WitnessError::PhiNotHomomorphism(a.0, b.0));
            }
        }
    }

    let d1: Vec<u32> = p1.target.iter().map(|x| x.0).collect();
    if w.psi_domain != d1 || w.psi.len() != d1.len() {
        return Err(WitnessError::PsiDomain);
    }
    let mut image: Vec<u32> = w.psi.clone();
    image.sort_unstable();
    let d2: Vec<u32> = p2.target.iter().map(|x| x.0).collect();
    if image != d2 {
        return Err(WitnessError::PsiNotBijective);
    }
    let psi_map: HashMap<u32, u32> = w.psi_domain.iter().copied().zip(w.psi.iter().copied()).collect();
    let psi = |x: ElementId| ElementId(psi_map[&x.0]);
    for &a in &d1 {
        for &b in &d1 {
            let (a, b) = (ElementId(a), ElementId(b));
            if psi(g1.mul(a, b)) != g2.mul(psi(a), psi(b)) {
                return Err(WitnessError::PsiNotHomomorphism(a.0, b.0));
            }
        }
    }
    for a in q1.elements() {
        for b in q1.elements() {
            if psi(p1.value(a, b)) != p2.value(phi(a), phi(b)) {
                return Err(WitnessError::Incompatible(a.0, b.0));
            }
        }
    }
    Ok(())
}

/// Greedy generating sequence: repeatedly the smallest element outside the
/// subgroup generated so far.
fn greedy_generators(g: &GroupTable) -> Vec<ElementId> {
    let mut gens = Vec::new();
    let mut span = g.subgroup_generated(&[]);
    while !span.is_whole() {
        gens.push(g.elements().find(|&x| !span.contains(x)).expect("span is proper"));
        span = g.subgroup_generated(&gens);
    }
    gens
}

/// Extends generator images to a map on the generated subgroup by walking
/// the Cayley graph from the identity. Returns `None` when two paths give
/// different images or the map is not injective.
fn extend_to_homomorphism(
    source: &GroupTable,
    target: &GroupTable,
    gens: &[ElementId],
    images: &[ElementId],
) -> Option<Vec<Option<ElementId>>> {
    let mut map: Vec<Option<ElementId>> = vec![None; source.order()];
    map[0] = Some(ElementId::IDENTITY);
    let mut used = vec![false; target.order()];
    used[0] = true;
    let mut queue = VecDeque::from([ElementId::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x.index()].expect("queued elements are mapped");
        for (&s, &t) in gens.iter().zip(images) {
            let y = source.mul(x, s);
            let fy = target.mul(fx, t);
            match map[y.index()] {
                Some(existing) if existing != fy => return None,
                Some(_) => {}
                None => {
                    if std::mem::replace(&mut used[fy.index()], true) {
                        return None;
                    }
                    map[y.index()] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(map)
}

struct Search<'a> {
    g1: &'a GroupTable,
    g2: &'a GroupTable,
    p1: CommutatorPairing,
    p2: CommutatorPairing,
    gens: Vec<ElementId>,
    orders2: Vec<u64>,
}

impl Search<'_> {
    /// ψ forced by the pairing on the current domain; `None` on a clash.
    fn forced_psi(&self, phi: &[Option<ElementId>]) -> Option<HashMap<ElementId, ElementId>> {
        let domain: Vec<ElementId> = (0..phi.len())
            .filter(|&i| phi[i].is_some())
            .map(|i| ElementId(i as u32))
            .collect();
        let mut psi: HashMap<ElementId, ElementId> = HashMap::new();
        let mut back: HashMap<ElementId, ElementId> = HashMap::new();
        for &a in &domain {
            for &b in &domain {
                let w1 = self.p1.value(a, b);
                let w2 = self.p2.value(phi[a.index()]?, phi[b.index()]?);
                if *psi.entry(w1).or_insert(w2) != w2 || *back.entry(w2).or_insert(w1) != w1 {
                    return None;
                }
            }
        }
        Some(psi)
    }

    fn finish(&self, phi: &[Option<ElementId>], psi: &HashMap<ElementId, ElementId>) -> Option<IsoclinismWitness> {
        let mut values: Vec<ElementId> = psi.keys().copied().collect();
        values.sort_unstable();
        let images: Vec<ElementId> = values.iter().map(|v| psi[v]).collect();
        let full = extend_to_homomorphism(self.g1, self.g2, &values, &images)?;
        let psi_domain: Vec<u32> = self.p1.target.iter().map(|x| x.0).collect();
        let psi: Vec<u32> = psi_domain
            .iter()
            .map(|&x| full[x as usize].map(|y| y.0))
            .collect::<Option<_>>()?;
        let mut image = psi.clone();
        image.sort_unstable();
        if image != self.p2.target.iter().map(|x| x.0).collect::<Vec<_>>() {
            return None;
        }
        Some(IsoclinismWitness {
            phi: phi.iter().map(|x| x.expect("phi is total").0).collect(),
            psi_domain,
            psi,
        })
    }

    fn descend(&self, images: &mut Vec<ElementId>) -> Option<IsoclinismWitness> {
        let depth = images.len();
        let (q1, q2) = (&self.p1.quotient.table, &self.p2.quotient.table);
        let phi = extend_to_homomorphism(q1, q2, &self.gens[..depth], images)?;
        let psi = self.forced_psi(&phi)?;
        if depth == self.gens.len() {
            return self.finish(&phi, &psi);
        }
        let mut in_image = vec![false; q2.order()];
        for v in phi.iter().flatten() {
            in_image[v.index()] = true;
        }
        let wanted = q1.element_order(self.gens[depth]);
        for h in q2.elements() {
            if in_image[h.index()] || self.orders2[h.index()] != wanted {
                continue;
            }
            images.push(h);
            if let Some(w) = self.descend(images) {
                return Some(w);
            }
            images.pop();
        }
        None
    }
}

/// Searches for an isoclinism `G₁ → G₂`.
///
/// The search backtracks over images of a greedy generating sequence of
/// `G₁/Z₁`, propagating the forced `ψ` after every choice. It is exhaustive,
/// so `Ok(None)` means the groups are not isoclinic.
pub fn are_isoclinic(
    g1: &GroupTable,
    g2: &GroupTable,
    cap: usize,
) -> Result<Option<IsoclinismWitness>, IsoclinismError> {
    let (z1, z2) = (g1.center().size(), g2.center().size());
    let (n1, n2) = (g1.order() / z1, g2.order() / z2);
    if n1 != n2 || g1.commutator_subgroup().size() != g2.commutator_subgroup().size() {
        return Ok(None);
    }
    if n1 > cap {
        return Err(IsoclinismError::QuotientExceedsCap { size: n1, cap });
    }
    let p1 = commutator_pairing(g1);
    let p2 = commutator_pairing(g2);
    if p1.quotient.table.order_census() != p2.quotient.table.order_census() {
        return Ok(None);
    }
    let gens = greedy_generators(&p1.quotient.table);
    let orders2 = p2
        .quotient
        .table
        .elements()
        .map(|x| p2.quotient.table.element_order(x))
        .collect();
    let search = Search {
        g1,
        g2,
        p1,
        p2,
        gens,
        orders2,
    };
    Ok(search.descend(&mut Vec::new()))
}

/// Center contained in the derived subgroup.
pub fn is_stem_group(g: &GroupTable) -> bool {
    g.center().is_subset(&g.commutator_subgroup())
}

/// Isoclinic groups have the same number of z-classes.
pub fn verify_isoclinism_invariance(
    g1: &GroupTable,
    g2: &GroupTable,
    cap: usize,
) -> Result<TheoremReport, IsoclinismError> {
    let witness = are_isoclinic(g1, g2, cap)?;
    let label = format!("{} ~ {}", g1.label(), g2.label());
    let Some(witness) = witness else {
        return Ok(TheoremReport::new(
            label,
            Theorem::IsoclinismInvariance,
            vec![Hypothesis::new("isoclinic", false, None)],
            true,
            None,
        ));
    };
    let verified = verify_witness(g1, g2, &witness);
    let (c1, c2) = (z_class_partition(g1), z_class_partition(g2));
    let counts_agree = c1.len() == c2.len();
    Ok(TheoremReport::new(
        label,
        Theorem::IsoclinismInvariance,
        vec![Hypothesis::new(
            "isoclinic",
            verified.is_ok(),
            verified.err().map(|e| e.to_string()),
        )],
        counts_agree,
        Some(format!("zclasses {} vs {}", c1.len(), c2.len())),
    ))
}
