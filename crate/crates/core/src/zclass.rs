//! z-classes: elements grouped by the conjugacy class of their centralizer.
//!
//! Also houses the fixed-point sets `F_x` and `F′_x`, the class-size formula
//! `[G : N_G(C_G(x))]·|F′_x|`, conjugate type vectors, the maximal class-count
//! bound and the structural conditions that characterize groups attaining it.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::prime_power;
use crate::constructions::frattini_subgroup;
use crate::group::{ElementId, GroupError, GroupTable};
use crate::subgroup::SubgroupSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZClassError {
    #[error("group is abelian")]
    AbelianGroup,
    #[error("[G : Z(G)] = {0} is not a prime power")]
    NotPrimePowerIndex(u64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug)]
pub struct ZClass {
    pub members: Vec<ElementId>,
    /// Smallest member.
    pub representative: ElementId,
    pub centralizer: SubgroupSet,
}

/// Partition of a group into z-classes, sorted by representative.
#[derive(Clone, Debug)]
pub struct ZClassPartition {
    group: u64,
    classes: Vec<ZClass>,
    class_of: Vec<usize>,
}

impl ZClassPartition {
    pub fn group_id(&self) -> u64 {
        self.group
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ZClass] {
        &self.classes
    }

    /// Index into [`classes`](Self::classes) of the class holding `x`.
    pub fn class_index(&self, x: ElementId) -> usize {
        self.class_of[x.index()]
    }

    pub fn class_of(&self, x: ElementId) -> &ZClass {
        &self.classes[self.class_index(x)]
    }

    /// Class sizes in class order.
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.members.len()).collect()
    }

    /// Class membership as sorted element lists, for comparing partitions.
    pub fn blocks(&self) -> Vec<Vec<ElementId>> {
        self.classes.iter().map(|c| c.members.clone()).collect()
    }
}

/// Computes the z-class partition.
///
/// Elements with equal centralizers are grouped first (the `F′` cells); cells
/// are then merged when their centralizers are conjugate, walking each
/// unassigned cell's orbit of conjugate subgroups once.
pub fn z_class_partition(g: &GroupTable) -> ZClassPartition {
    let centralizers = g.all_centralizers();
    let mut cell_index: HashMap<&SubgroupSet, usize> = HashMap::new();
    let mut cells: Vec<Vec<ElementId>> = Vec::new();
    let mut cell_of = Vec::with_capacity(g.order());
    for x in g.elements() {
        let c = &centralizers[x.index()];
        let idx = *cell_index.entry(c).or_insert_with(|| {
            cells.push(Vec::new());
            cells.len() - 1
        });
        cells[idx].push(x);
        cell_of.push(idx);
    }

    let mut cell_class: Vec<Option<usize>> = vec![None; cells.len()];
    let mut classes: Vec<ZClass> = Vec::new();
    for cell in 0..cells.len() {
        if cell_class[cell].is_some() {
            continue;
        }
        let class = classes.len();
        let rep = cells[cell][0];
        let centralizer = centralizers[rep.index()].clone();
        let mut orbit: HashSet<SubgroupSet> = HashSet::new();
        let mut members = Vec::new();
        for conj in g.elements() {
            let k = g.conjugate_subgroup(&centralizer, conj);
            if orbit.contains(&k) {
                continue;
            }
            if let Some(&other) = cell_index.get(&k) {
                cell_class[other] = Some(class);
                members.extend_from_slice(&cells[other]);
            }
            orbit.insert(k);
        }
        members.sort_unstable();
        classes.push(ZClass {
            members,
            representative: rep,
            centralizer,
        });
    }
    let class_of = cell_of.iter().map(|&c| cell_class[c].expect("every cell assigned")).collect();
    ZClassPartition {
        group: g.id(),
        classes,
        class_of,
    }
}

pub fn z_class_count(g: &GroupTable) -> usize {
    z_class_partition(g).len()
}

/// `F′_x = {y : C_G(y) = C_G(x)}`.
pub fn strict_fixed_set(g: &GroupTable, x: ElementId) -> Vec<ElementId> {
    let cx = g.centralizer(x);
    g.elements().filter(|&y| g.centralizer(y) == cx).collect()
}

/// `F_x = {y : C_G(y) ⊇ C_G(x)}`, containment taken non-strictly.
pub fn fixed_set(g: &GroupTable, x: ElementId) -> Vec<ElementId> {
    let cx = g.centralizer(x);
    // C_G(y) ⊇ C_G(x) iff y commutes with every element of C_G(x)
    g.elements()
        .filter(|&y| cx.iter().all(|c| g.commutes(c, y)))
        .collect()
}

/// Outcome of comparing the class-size formula with the partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCheck {
    pub predicted: usize,
    pub actual: usize,
}

impl SizeCheck {
    pub fn holds(&self) -> bool {
        self.predicted == self.actual
    }
}

/// `[G : N_G(C_G(x))]·|F′_x|` against the size of x's z-class.
pub fn kulkarni_size_check(g: &GroupTable, x: ElementId) -> SizeCheck {
    kulkarni_size_check_in(g, &z_class_partition(g), x)
}

pub fn kulkarni_size_check_in(g: &GroupTable, partition: &ZClassPartition, x: ElementId) -> SizeCheck {
    let cx = g.centralizer(x);
    let index = g.order() / g.normalizer(&cx).size();
    SizeCheck {
        predicted: index * strict_fixed_set(g, x).len(),
        actual: partition.class_of(x).members.len(),
    }
}

/// Every element where the size formula disagrees with the partition.
///
/// The formula depends on `x` only through `C_G(x)`, so each distinct
/// centralizer is evaluated once.
pub fn kulkarni_failures(g: &GroupTable) -> Vec<(ElementId, SizeCheck)> {
    let partition = z_class_partition(g);
    let centralizers = g.all_centralizers();
    let mut cell_size: HashMap<&SubgroupSet, usize> = HashMap::new();
    for c in &centralizers {
        *cell_size.entry(c).or_default() += 1;
    }
    let mut index_cache: HashMap<&SubgroupSet, usize> = HashMap::new();
    let mut failures = Vec::new();
    for x in g.elements() {
        let c = &centralizers[x.index()];
        let index = *index_cache
            .entry(c)
            .or_insert_with(|| g.order() / g.normalizer(c).size());
        let check = SizeCheck {
            predicted: index * cell_size[c],
            actual: partition.class_of(x).members.len(),
        };
        if !check.holds() {
            failures.push((x, check));
        }
    }
    failures
}

/// Distinct centralizer indices `[G : C_G(x)]`, strictly decreasing, ending in 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConjugateTypeVector(pub Vec<u64>);

impl ConjugateTypeVector {
    pub fn indices(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for ConjugateTypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn conjugate_type_vector(g: &GroupTable) -> ConjugateTypeVector {
    let n = g.order() as u64;
    let mut indices: Vec<u64> = g
        .elements()
        .map(|x| n / g.centralizer(x).size() as u64)
        .collect();
    indices.sort_unstable_by(|a, b| b.cmp(a));
    indices.dedup();
    ConjugateTypeVector(indices)
}

/// `Some(n)` iff the conjugate type vector is exactly `(n, 1)`.
pub fn is_type_n_1(g: &GroupTable) -> Option<u64> {
    match conjugate_type_vector(g).0.as_slice() {
        &[n, 1] => Some(n),
        _ => None,
    }
}

/// `(p, k)` with `[G : Z(G)] = p^k`.
pub fn central_index(g: &GroupTable) -> Result<(u64, u32), ZClassError> {
    let index = (g.order() / g.center().size()) as u64;
    if index == 1 {
        return Err(ZClassError::AbelianGroup);
    }
    prime_power(index).ok_or(ZClassError::NotPrimePowerIndex(index))
}

/// `(p^k − 1)/(p − 1) + 1`.
pub fn zclass_bound(p: u64, k: u32) -> u64 {
    (p.pow(k) - 1) / (p - 1) + 1
}

/// The largest possible z-class count for a non-abelian group with
/// `[G : Z(G)] = p^k`.
pub fn max_zclass_bound(g: &GroupTable) -> Result<u64, ZClassError> {
    let (p, k) = central_index(g)?;
    Ok(zclass_bound(p, k))
}

/// `G/Z(G)` is elementary abelian.
pub fn condition_central_quotient_elementary(g: &GroupTable) -> bool {
    g.quotient(&g.center())
        .expect("the center is normal")
        .table
        .is_elementary_abelian()
        .is_some()
}

/// Checks `Z(C_G(x)) = ⟨x, Z(G)⟩` for every non-central `x`, returning the
/// first offending element on failure.
///
/// The center of `C_G(x)` is computed inside the induced subgroup table.
pub fn condition_local_center(g: &GroupTable) -> (bool, Option<ElementId>) {
    let z = g.center();
    let mut local_centers: HashMap<SubgroupSet, SubgroupSet> = HashMap::new();
    for x in g.elements().filter(|&x| !z.contains(x)) {
        let c = g.centralizer(x);
        let zc = local_centers.entry(c).or_insert_with_key(|c| {
            let (table, embedding) = g.subgroup_table(c);
            let inside = table.center();
            SubgroupSet::from_elements(g, inside.iter().map(|i| embedding[i.index()]))
                .expect("center of a subgroup is a subgroup")
        });
        if *zc != g.join_with(&z, &[x]) {
            return (false, Some(x));
        }
    }
    (true, None)
}

fn require_p_group(g: &GroupTable) -> Result<u64, ZClassError> {
    prime_power(g.order() as u64)
        .map(|(p, _)| p)
        .ok_or_else(|| ZClassError::PreconditionViolated(format!("order {} is not a prime power", g.order())))
}

/// All subgroups of index `p` in a p-group: preimages of the hyperplanes of
/// the elementary abelian quotient `G/Φ(G)`.
pub fn index_p_subgroups(g: &GroupTable, p: u64) -> Result<Vec<SubgroupSet>, ZClassError> {
    let frattini = frattini_subgroup(g, p)?;
    let q = g.quotient(&frattini)?;
    let qt = &q.table;
    if qt.order() == 1 {
        return Ok(Vec::new());
    }
    // Greedy basis of the F_p-vector space G/Φ(G).
    let pu = p as usize;
    let mut basis: Vec<ElementId> = Vec::new();
    let mut span = qt.subgroup_generated(&[]);
    while !span.is_whole() {
        let next = qt.elements().find(|&x| !span.contains(x)).expect("span is proper");
        basis.push(next);
        span = qt.subgroup_generated(&basis);
    }
    let d = basis.len();
    let mut coords: Vec<Vec<usize>> = vec![Vec::new(); qt.order()];
    for t in 0..qt.order() {
        let digits: Vec<usize> = (0..d).map(|i| (t / pu.pow(i as u32)) % pu).collect();
        let x = digits
            .iter()
            .zip(&basis)
            .fold(ElementId::IDENTITY, |acc, (&c, &b)| qt.mul(acc, qt.pow(b, c as u64)));
        coords[x.index()] = digits;
    }
    let mut subgroups = Vec::new();
    for t in 1..pu.pow(d as u32) {
        let f: Vec<usize> = (0..d).map(|i| (t / pu.pow(i as u32)) % pu).collect();
        // one functional per hyperplane: leading nonzero coefficient is 1
        if f.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let members = g.elements().filter(|&x| {
            let v = &coords[q.project(x).index()];
            v.iter().zip(&f).map(|(a, b)| a * b).sum::<usize>() % pu == 0
        });
        subgroups.push(SubgroupSet::from_elements(g, members).expect("hyperplane preimage is a subgroup"));
    }
    Ok(subgroups)
}

/// An abelian subgroup of index `p`, if the p-group `G` has one.
pub fn has_abelian_subgroup_of_index_p(g: &GroupTable, p: u64) -> Result<Option<SubgroupSet>, ZClassError> {
    if g.order() > 1 && require_p_group(g)? != p {
        return Err(GroupError::NotPGroup { order: g.order(), p }.into());
    }
    Ok(index_p_subgroups(g, p)?
        .into_iter()
        .find(|h| h.is_abelian_in(g)))
}

/// An abelian subgroup of order greater than `p·|Z(G)|`, if one exists.
///
/// Requires a non-abelian p-group with `G/Z(G)` elementary abelian. Any such
/// abelian `A` gives the abelian `AZ(G)` whose image in `G/Z(G)` has rank at
/// least 2, so it is enough to look at `⟨x, y, Z(G)⟩` for commuting
/// non-central `x, y` with `y ∉ ⟨x, Z(G)⟩`.
pub fn has_abelian_subgroup_exceeding(g: &GroupTable) -> Result<Option<SubgroupSet>, ZClassError> {
    require_p_group(g)?;
    if g.is_abelian() {
        return Err(ZClassError::PreconditionViolated("group is abelian".into()));
    }
    if !condition_central_quotient_elementary(g) {
        return Err(ZClassError::PreconditionViolated(
            "G/Z(G) is not elementary abelian".into(),
        ));
    }
    let z = g.center();
    for x in g.elements().filter(|&x| !z.contains(x)) {
        let xz = g.join_with(&z, &[x]);
        let cx = g.centralizer(x);
        let outside = cx.iter().find(|&y| !xz.contains(y));
        if let Some(y) = outside {
            return Ok(Some(g.join_with(&z, &[x, y])));
        }
    }
    Ok(None)
}

/// Every non-central z-class has at least `(p − 1)·|Z(G)|` elements.
///
/// Returns the representative of the first class that is too small.
pub fn zclass_size_lower_bound_check(g: &GroupTable) -> Result<(bool, Option<ElementId>), ZClassError> {
    let p = require_p_group(g)?;
    if g.is_abelian() {
        return Err(ZClassError::PreconditionViolated("group is abelian".into()));
    }
    let z = g.center();
    let quotient = g.quotient(&z)?;
    if quotient.table.exponent() != p {
        return Err(ZClassError::PreconditionViolated(format!(
            "G/Z(G) does not have exponent {p}"
        )));
    }
    let floor = (p as usize - 1) * z.size();
    let partition = z_class_partition(g);
    Ok(partition
        .classes()
        .iter()
        .filter(|c| !z.contains(c.representative))
        .find(|c| c.members.len() < floor)
        .map_or((true, None), |c| (false, Some(c.representative))))
}
