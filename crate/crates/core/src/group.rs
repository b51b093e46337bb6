//! Finite groups as dense multiplication tables.
//!
//! Every group is stored as an `order x order` table over contiguous element
//! indices with the identity at index 0. Conjugation is the right action
//! `x^g = g⁻¹xg` and commutators are `[a, b] = a⁻¹b⁻¹ab`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::is_prime;

/// Default bound on the order of any constructed group.
pub const DEFAULT_ORDER_CAP: usize = 4096;

/// Tables up to this order get the full O(n³) associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// Index of an element inside one specific [`GroupTable`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("group order {order} exceeds cap {cap}")]
    OrderExceedsCap { order: u128, cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("subgroup is not normal: {g}⁻¹·{h}·{g} leaves it")]
    NotNormal { g: ElementId, h: ElementId },
    #[error("element {0} is not central")]
    NotCentral(ElementId),
    #[error("central elements have different orders {left} and {right}")]
    OrderMismatch { left: u64, right: u64 },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group of order {order} is not a p-group for p = {p}")]
    NotPGroup { order: usize, p: u64 },
}

/// How thoroughly to check associativity when validating a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Validation {
    /// Run the O(n³) check regardless of order.
    pub exhaustive: bool,
    /// Seed for the sampled check above [`EXHAUSTIVE_ASSOCIATIVITY_LIMIT`].
    pub seed: u64,
}

impl Default for Validation {
    fn default() -> Self {
        Validation {
            exhaustive: false,
            seed: 0x5eed_2c1a_55e5,
        }
    }
}

/// A finite group given by its full multiplication table.
#[derive(Clone)]
pub struct GroupTable {
    id: u64,
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    label: String,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

pub(crate) fn check_cap(order: u128, cap: usize) -> Result<usize, GroupError> {
    if order > cap as u128 {
        Err(GroupError::OrderExceedsCap { order, cap })
    } else {
        Ok(order as usize)
    }
}

impl GroupTable {
    /// Builds a table that is already known to be a group with identity 0.
    pub(crate) fn from_raw(order: usize, mult: Vec<u32>, label: impl Into<String>) -> GroupTable {
        debug_assert_eq!(mult.len(), order * order);
        let mut inv = vec![0u32; order];
        for a in 0..order {
            let row = &mult[a * order..(a + 1) * order];
            inv[a] = row.iter().position(|&c| c == 0).expect("row without identity") as u32;
        }
        GroupTable {
            id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed),
            order,
            mult,
            inv,
            label: label.into(),
        }
    }

    /// Validates `rows` as a group table and relabels its identity to 0.
    pub fn from_multiplication_table(
        rows: &[Vec<usize>],
        label: impl Into<String>,
    ) -> Result<GroupTable, GroupError> {
        Self::from_multiplication_table_with(rows, label, Validation::default())
    }

    pub fn from_multiplication_table_with(
        rows: &[Vec<usize>],
        label: impl Into<String>,
        validation: Validation,
    ) -> Result<GroupTable, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        if n > u32::MAX as usize {
            return Err(GroupError::NotAGroup("table too large".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|&c| c >= n) {
                return Err(GroupError::NotAGroup(format!(
                    "entry ({i}, {j}) = {} is out of range",
                    row[j]
                )));
            }
        }
        latin_square_check(n, |a, b| rows[a][b])?;

        let e = (0..n)
            .find(|&e| (0..n).all(|a| rows[e][a] == a && rows[a][e] == a))
            .ok_or_else(|| GroupError::NotAGroup("no two-sided identity".into()))?;
        // Swap e and 0 so the identity lands on index 0.
        let relabel = |a: usize| -> usize {
            if a == e {
                0
            } else if a == 0 {
                e
            } else {
                a
            }
        };
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as u32;
            }
        }
        let table = GroupTable::from_raw(n, mult, label);
        table.validate(validation)?;
        Ok(table)
    }

    /// Enumerates the group generated by permutations of `m` points.
    ///
    /// Products compose left to right: `(a·b)(i) = b(a(i))`.
    pub fn from_permutation_generators(
        gens: &[Vec<usize>],
        label: impl Into<String>,
        cap: usize,
    ) -> Result<GroupTable, GroupError> {
        let m = gens.first().map_or(0, Vec::len);
        for (k, g) in gens.iter().enumerate() {
            if g.len() != m {
                return Err(GroupError::InvalidPermutation(format!(
                    "generator {k} acts on {} points, expected {m}",
                    g.len()
                )));
            }
            let mut seen = vec![false; m];
            for &img in g {
                if img >= m || seen[img] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "generator {k} is not a bijection of 0..{m}"
                    )));
                }
                seen[img] = true;
            }
        }
        let gens: Vec<Vec<u32>> = gens
            .iter()
            .map(|g| g.iter().map(|&i| i as u32).collect())
            .collect();
        let compose = |a: &[u32], b: &[u32]| -> Vec<u32> { a.iter().map(|&i| b[i as usize]).collect() };

        let identity: Vec<u32> = (0..m as u32).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                let next = compose(&elements[i], g);
                if !index.contains_key(&next) {
                    check_cap(elements.len() as u128 + 1, cap)?;
                    index.insert(next.clone(), elements.len() as u32);
                    elements.push(next);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let n = elements.len();
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        Ok(GroupTable::from_raw(n, mult, label))
    }

    /// Re-checks all group axioms on this table.
    pub fn validate(&self, validation: Validation) -> Result<(), GroupError> {
        let n = self.order;
        latin_square_check(n, |a, b| self.mult[a * n + b] as usize)?;
        for a in 0..n {
            if self.mult[a] as usize != a || self.mult[a * n] as usize != a {
                return Err(GroupError::NotAGroup(format!("0 is not an identity for {a}")));
            }
            let i = self.inv[a] as usize;
            if self.mult[a * n + i] != 0 || self.mult[i * n + a] != 0 {
                return Err(GroupError::NotAGroup(format!("{a} has no two-sided inverse")));
            }
        }
        let assoc = |a: usize, b: usize, c: usize| -> Result<(), GroupError> {
            let ab = self.mult[a * n + b] as usize;
            let bc = self.mult[b * n + c] as usize;
            if self.mult[ab * n + c] != self.mult[a * n + bc] {
                Err(GroupError::NotAGroup(format!(
                    "associativity fails at ({a}, {b}, {c})"
                )))
            } else {
                Ok(())
            }
        };
        if validation.exhaustive || n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(validation.seed);
            for _ in 0..10 * n * n {
                assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> GroupTable {
        self.label = label.into();
        self
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = ElementId> + ExactSizeIterator {
        (0..self.order as u32).map(ElementId)
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(self.mult[a.index() * self.order + b.index()])
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        ElementId(self.inv[a.index()])
    }

    pub fn pow(&self, x: ElementId, k: u64) -> ElementId {
        let mut acc = ElementId::IDENTITY;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Smallest `k >= 1` with `x^k = 1`.
    pub fn element_order(&self, x: ElementId) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != ElementId::IDENTITY {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// `g⁻¹·x·g`.
    #[inline]
    pub fn conjugate(&self, x: ElementId, g: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a⁻¹·b⁻¹·a·b`.
    #[inline]
    pub fn commutator(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn commutes(&self, a: ElementId, b: ElementId) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mult[a * n + b] == self.mult[b * n + a]))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.elements().map(|x| self.element_order(x)).fold(1, lcm)
    }

    /// Number of elements of each order.
    pub fn order_census(&self) -> BTreeMap<u64, usize> {
        let mut census = BTreeMap::new();
        for x in self.elements() {
            *census.entry(self.element_order(x)).or_default() += 1;
        }
        census
    }

    /// The prime `p` if this group is elementary abelian of exponent `p`.
    ///
    /// The trivial group is not counted as elementary abelian.
    pub fn is_elementary_abelian(&self) -> Option<u64> {
        if self.order < 2 || !self.is_abelian() {
            return None;
        }
        let p = self.element_order(ElementId(1));
        if !is_prime(p) {
            return None;
        }
        self.elements()
            .skip(1)
            .all(|x| self.element_order(x) == p)
            .then_some(p)
    }

    /// The table as nested rows, identity first.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mult
            .chunks(self.order)
            .map(|row| row.iter().map(|&c| c as usize).collect())
            .collect()
    }

    /// `G × H` with pair `(g, h)` stored at index `g·|H| + h`.
    pub fn direct_product(&self, other: &GroupTable, cap: usize) -> Result<GroupTable, GroupError> {
        let (ng, nh) = (self.order, other.order);
        let n = check_cap(ng as u128 * nh as u128, cap)?;
        let mut mult = vec![0u32; n * n];
        for g1 in 0..ng {
            for h1 in 0..nh {
                let row = (g1 * nh + h1) * n;
                for g2 in 0..ng {
                    let g = self.mult[g1 * ng + g2] as usize * nh;
                    for h2 in 0..nh {
                        mult[row + g2 * nh + h2] = (g + other.mult[h1 * nh + h2] as usize) as u32;
                    }
                }
            }
        }
        Ok(GroupTable::from_raw(
            n,
            mult,
            format!("product({},{})", self.label, other.label),
        ))
    }

    /// `(G × H)/⟨(zG, zH⁻¹)⟩` for central elements of the same prime order.
    ///
    /// Cosets are numbered by their smallest pair index, matching
    /// `quotient(direct_product(G, H), D)`.
    pub fn central_product(
        &self,
        other: &GroupTable,
        z_self: ElementId,
        z_other: ElementId,
        cap: usize,
    ) -> Result<GroupTable, GroupError> {
        for (grp, z) in [(self, z_self), (other, z_other)] {
            if z.index() >= grp.order {
                return Err(GroupError::BadParameter(format!("element {z} out of range")));
            }
            if !grp.elements().all(|a| grp.commutes(a, z)) {
                return Err(GroupError::NotCentral(z));
            }
        }
        let (p, q) = (self.element_order(z_self), other.element_order(z_other));
        if p != q {
            return Err(GroupError::OrderMismatch { left: p, right: q });
        }
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        let (ng, nh) = (self.order, other.order);
        let n = check_cap(ng as u128 * nh as u128 / p as u128, cap)?;

        let z_inv = other.inv(z_other);
        let mut coset = vec![u32::MAX; ng * nh];
        let mut reps = Vec::with_capacity(n);
        for pair in 0..ng * nh {
            if coset[pair] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            let (mut g, mut h) = (ElementId((pair / nh) as u32), ElementId((pair % nh) as u32));
            for _ in 0..p {
                coset[g.index() * nh + h.index()] = id;
                g = self.mul(g, z_self);
                h = other.mul(h, z_inv);
            }
            reps.push((ElementId((pair / nh) as u32), ElementId((pair % nh) as u32)));
        }
        let mut mult = vec![0u32; n * n];
        for (i, &(g1, h1)) in reps.iter().enumerate() {
            for (j, &(g2, h2)) in reps.iter().enumerate() {
                let g = self.mul(g1, g2).index();
                let h = other.mul(h1, h2).index();
                mult[i * n + j] = coset[g * nh + h];
            }
        }
        Ok(GroupTable::from_raw(
            n,
            mult,
            format!("centralproduct({},{})", self.label, other.label),
        ))
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn latin_square_check(n: usize, at: impl Fn(usize, usize) -> usize) -> Result<(), GroupError> {
    let mut seen = vec![0usize; n];
    let mut stamp = 0;
    for a in 0..n {
        stamp += 1;
        for b in 0..n {
            let c = at(a, b);
            if seen[c] == stamp {
                return Err(GroupError::NotAGroup(format!(
                    "row {a} repeats entry {c} (not a Latin square)"
                )));
            }
            seen[c] = stamp;
        }
    }
    for b in 0..n {
        stamp += 1;
        for a in 0..n {
            let c = at(a, b);
            if seen[c] == stamp {
                return Err(GroupError::NotAGroup(format!(
                    "column {b} repeats entry {c} (not a Latin square)"
                )));
            }
            seen[c] = stamp;
        }
    }
    Ok(())
}
