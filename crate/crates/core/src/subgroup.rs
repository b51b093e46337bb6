//! Subgroups as membership bitsets, plus the standard subgroups of a group.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::group::{ElementId, GroupError, GroupTable};

/// A subgroup of one specific [`GroupTable`], stored as a membership bitset.
///
/// Equality is bitset equality together with the owning group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupSet {
    group: u64,
    members: FixedBitSet,
}

impl fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.ones()).finish()
    }
}

impl SubgroupSet {
    pub(crate) fn from_bits(group: &GroupTable, members: FixedBitSet) -> SubgroupSet {
        debug_assert_eq!(members.len(), group.order());
        SubgroupSet {
            group: group.id(),
            members,
        }
    }

    pub fn trivial(group: &GroupTable) -> SubgroupSet {
        let mut bits = FixedBitSet::with_capacity(group.order());
        bits.insert(0);
        SubgroupSet::from_bits(group, bits)
    }

    pub fn whole(group: &GroupTable) -> SubgroupSet {
        let mut bits = FixedBitSet::with_capacity(group.order());
        bits.insert_range(..);
        SubgroupSet::from_bits(group, bits)
    }

    /// Wraps an explicit element list, checking closure.
    pub fn from_elements(
        group: &GroupTable,
        elements: impl IntoIterator<Item = ElementId>,
    ) -> Option<SubgroupSet> {
        let mut bits = FixedBitSet::with_capacity(group.order());
        for x in elements {
            if x.index() >= group.order() {
                return None;
            }
            bits.insert(x.index());
        }
        let set = SubgroupSet::from_bits(group, bits);
        set.is_closed_in(group).then_some(set)
    }

    pub fn group_id(&self) -> u64 {
        self.group
    }

    pub fn size(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.contains(x.index())
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.ones().map(|i| ElementId(i as u32))
    }

    pub fn members(&self) -> Vec<ElementId> {
        self.iter().collect()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_trivial(&self) -> bool {
        self.size() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.is_full()
    }

    /// Contains the identity and is closed under products and inverses.
    pub fn is_closed_in(&self, group: &GroupTable) -> bool {
        if group.id() != self.group || !self.contains(ElementId::IDENTITY) {
            return false;
        }
        self.iter().all(|a| {
            self.contains(group.inv(a)) && self.iter().all(|b| self.contains(group.mul(a, b)))
        })
    }

    /// Every pair of members commutes.
    pub fn is_abelian_in(&self, group: &GroupTable) -> bool {
        let members = self.members();
        members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| group.commutes(a, b)))
    }
}

impl GroupTable {
    fn assert_owns(&self, h: &SubgroupSet) {
        assert_eq!(h.group, self.id(), "subgroup of a different group");
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_generated(&self, gens: &[ElementId]) -> SubgroupSet {
        let mut gens: Vec<ElementId> = gens.iter().copied().filter(|g| *g != ElementId::IDENTITY).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut bits = FixedBitSet::with_capacity(self.order());
        bits.insert(0);
        let mut queue = VecDeque::from([ElementId::IDENTITY]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = self.mul(x, s);
                if !bits.put(y.index()) {
                    queue.push_back(y);
                }
            }
        }
        SubgroupSet::from_bits(self, bits)
    }

    /// Smallest subgroup containing `h` and `extra`.
    pub fn join_with(&self, h: &SubgroupSet, extra: &[ElementId]) -> SubgroupSet {
        let mut gens = h.members();
        gens.extend_from_slice(extra);
        self.subgroup_generated(&gens)
    }

    pub fn center(&self) -> SubgroupSet {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for z in self.elements() {
            if self.elements().all(|a| self.commutes(z, a)) {
                bits.insert(z.index());
            }
        }
        SubgroupSet::from_bits(self, bits)
    }

    pub fn centralizer(&self, x: ElementId) -> SubgroupSet {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for g in self.elements() {
            if self.commutes(g, x) {
                bits.insert(g.index());
            }
        }
        SubgroupSet::from_bits(self, bits)
    }

    /// Centralizers of every element, indexed by element.
    pub fn all_centralizers(&self) -> Vec<SubgroupSet> {
        self.elements().map(|x| self.centralizer(x)).collect()
    }

    /// Elements of `h` commuting with all of `h`.
    pub fn center_of_subgroup(&self, h: &SubgroupSet) -> SubgroupSet {
        self.assert_owns(h);
        let members = h.members();
        let mut bits = FixedBitSet::with_capacity(self.order());
        for &z in &members {
            if members.iter().all(|&a| self.commutes(z, a)) {
                bits.insert(z.index());
            }
        }
        SubgroupSet::from_bits(self, bits)
    }

    /// `g⁻¹Hg`, computed elementwise.
    pub fn conjugate_subgroup(&self, h: &SubgroupSet, g: ElementId) -> SubgroupSet {
        self.assert_owns(h);
        let mut bits = FixedBitSet::with_capacity(self.order());
        for x in h.iter() {
            bits.insert(self.conjugate(x, g).index());
        }
        SubgroupSet::from_bits(self, bits)
    }

    fn conjugation_preserves(&self, h: &SubgroupSet, g: ElementId) -> Option<ElementId> {
        h.iter().find(|&x| !h.contains(self.conjugate(x, g)))
    }

    pub fn normalizer(&self, h: &SubgroupSet) -> SubgroupSet {
        self.assert_owns(h);
        let mut bits = FixedBitSet::with_capacity(self.order());
        for g in self.elements() {
            if self.conjugation_preserves(h, g).is_none() {
                bits.insert(g.index());
            }
        }
        SubgroupSet::from_bits(self, bits)
    }

    pub fn is_normal(&self, h: &SubgroupSet) -> bool {
        self.normal_witness(h).is_none()
    }

    /// Some `(g, h)` with `g⁻¹hg` outside `h`, if `h` is not normal.
    pub fn normal_witness(&self, h: &SubgroupSet) -> Option<(ElementId, ElementId)> {
        self.assert_owns(h);
        self.elements()
            .find_map(|g| self.conjugation_preserves(h, g).map(|x| (g, x)))
    }

    pub fn commutator_subgroup(&self) -> SubgroupSet {
        let mut values = FixedBitSet::with_capacity(self.order());
        for a in self.elements() {
            for b in self.elements() {
                values.insert(self.commutator(a, b).index());
            }
        }
        let gens: Vec<ElementId> = values.ones().map(|i| ElementId(i as u32)).collect();
        self.subgroup_generated(&gens)
    }

    /// Some `g` with `g⁻¹Hg = K`.
    pub fn are_subgroups_conjugate(&self, h: &SubgroupSet, k: &SubgroupSet) -> Option<ElementId> {
        self.assert_owns(h);
        self.assert_owns(k);
        if h.size() != k.size() {
            return None;
        }
        self.elements().find(|&g| self.conjugate_subgroup(h, g) == *k)
    }

    /// The subgroup as a group table of its own, with the embedding back into
    /// `self` (position `i` of the new table is `embedding[i]`).
    pub fn subgroup_table(&self, h: &SubgroupSet) -> (GroupTable, Vec<ElementId>) {
        self.assert_owns(h);
        let embedding = h.members();
        let mut position = vec![u32::MAX; self.order()];
        for (i, x) in embedding.iter().enumerate() {
            position[x.index()] = i as u32;
        }
        let n = embedding.len();
        let mut mult = vec![0u32; n * n];
        for (i, &a) in embedding.iter().enumerate() {
            for (j, &b) in embedding.iter().enumerate() {
                mult[i * n + j] = position[self.mul(a, b).index()];
            }
        }
        let table = GroupTable::from_raw(n, mult, format!("{} < {}", n, self.label()));
        (table, embedding)
    }

    /// Cosets of a normal subgroup as a new group.
    pub fn quotient(&self, n: &SubgroupSet) -> Result<QuotientGroup, GroupError> {
        if let Some((g, h)) = self.normal_witness(n) {
            return Err(GroupError::NotNormal { g, h });
        }
        let kernel: Vec<ElementId> = n.members();
        let mut projection = vec![ElementId(u32::MAX); self.order()];
        let mut representatives = Vec::new();
        for g in self.elements() {
            if projection[g.index()].0 != u32::MAX {
                continue;
            }
            let q = ElementId(representatives.len() as u32);
            for &k in &kernel {
                projection[self.mul(g, k).index()] = q;
            }
            representatives.push(g);
        }
        let m = representatives.len();
        let mut mult = vec![0u32; m * m];
        for (i, &a) in representatives.iter().enumerate() {
            for (j, &b) in representatives.iter().enumerate() {
                mult[i * m + j] = projection[self.mul(a, b).index()].0;
            }
        }
        let table = GroupTable::from_raw(m, mult, format!("{} / {}", self.label(), kernel.len()));
        Ok(QuotientGroup {
            table,
            projection,
            representatives,
            kernel: n.clone(),
        })
    }
}

/// `G/N` together with the projection from `G`.
///
/// Cosets are numbered in order of their smallest member, which is also the
/// stored representative.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub table: GroupTable,
    projection: Vec<ElementId>,
    representatives: Vec<ElementId>,
    pub kernel: SubgroupSet,
}

impl QuotientGroup {
    pub fn project(&self, x: ElementId) -> ElementId {
        self.projection[x.index()]
    }

    pub fn representative(&self, q: ElementId) -> ElementId {
        self.representatives[q.index()]
    }

    pub fn projection(&self) -> &[ElementId] {
        &self.projection
    }
}
