//! Brute-force oracles over raw multiplication rows.
//!
//! Nothing here calls into the library's subgroup, z-class or isoclinism
//! code; every answer is recomputed from the table by exhaustive search.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use zclass_core::{parse_spec, BuildOptions, GroupTable};

/// The built-in catalog, spelled out independently of the library's copy.
pub const CATALOG: &[&str] = &[
    "abelian()",
    "cyclic(2)",
    "abelian(2,2)",
    "abelian(4)",
    "symmetric(3)",
    "dihedral(8)",
    "quaternion(8)",
    "dihedral(16)",
    "quaternion(16)",
    "heisenberg(3)",
    "modular_p3(3)",
    "heisenberg(5)",
    "extraspecial(p=2,n=2,variant=plus)",
    "extraspecial(p=2,n=2,variant=minus)",
    "extraspecial(p=3,n=2,variant=plus)",
    "product(heisenberg(3),abelian(3))",
    "product(dihedral(8),abelian(2))",
    "product(heisenberg(3),abelian(9))",
];

pub fn build(spec: &str) -> GroupTable {
    parse_spec(spec)
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
        .build(&BuildOptions::default())
        .unwrap_or_else(|e| panic!("{spec}: {e}"))
}

pub fn catalog() -> Vec<(&'static str, GroupTable)> {
    CATALOG.iter().map(|&s| (s, build(s))).collect()
}

/// A group as nothing but its rows.
pub struct Oracle {
    pub n: usize,
    rows: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl Oracle {
    pub fn new(g: &GroupTable) -> Oracle {
        let rows = g.rows();
        let n = rows.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .expect("table has an identity");
        let inverse = (0..n)
            .map(|x| (0..n).find(|&y| rows[x][y] == identity).expect("inverse exists"))
            .collect();
        Oracle {
            n,
            rows,
            inverse,
            identity,
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.rows[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// `g⁻¹ x g`
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a⁻¹ b⁻¹ a b`
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn order_of(&self, x: usize) -> usize {
        let (mut y, mut k) = (x, 1);
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn power(&self, x: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, x))
    }

    pub fn is_associative(&self) -> bool {
        (0..self.n).all(|a| {
            (0..self.n).all(|b| (0..self.n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
        })
    }

    pub fn centralizer(&self, x: usize) -> BTreeSet<usize> {
        (0..self.n).filter(|&y| self.mul(x, y) == self.mul(y, x)).collect()
    }

    pub fn center(&self) -> BTreeSet<usize> {
        (0..self.n).filter(|&z| self.centralizer(z).len() == self.n).collect()
    }

    /// Closure of `gens` under multiplication.
    pub fn generated(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if seen.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        seen
    }

    pub fn derived(&self) -> BTreeSet<usize> {
        let comms: BTreeSet<usize> = (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .map(|(a, b)| self.comm(a, b))
            .collect();
        self.generated(&comms.into_iter().collect::<Vec<_>>())
    }

    pub fn conjugate_set(&self, h: &BTreeSet<usize>, g: usize) -> BTreeSet<usize> {
        h.iter().map(|&x| self.conj(x, g)).collect()
    }

    pub fn are_conjugate(&self, h: &BTreeSet<usize>, k: &BTreeSet<usize>) -> bool {
        h.len() == k.len() && (0..self.n).any(|g| h.iter().all(|&x| k.contains(&self.conj(x, g))))
    }

    pub fn centralizers(&self) -> Vec<BTreeSet<usize>> {
        (0..self.n).map(|x| self.centralizer(x)).collect()
    }

    /// z-classes by comparing each element with one member of every class
    /// found so far. Each class is sorted; classes are sorted by first member.
    pub fn z_classes(&self) -> Vec<Vec<usize>> {
        let cents = self.centralizers();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.n {
            match classes
                .iter_mut()
                .find(|c| self.are_conjugate(&cents[c[0]], &cents[x]))
            {
                Some(c) => c.push(x),
                None => classes.push(vec![x]),
            }
        }
        classes
    }

    /// The full pairwise relation, for small groups.
    pub fn z_equivalent_matrix(&self) -> Vec<Vec<bool>> {
        let cents = self.centralizers();
        let mut m = vec![vec![false; self.n]; self.n];
        for x in 0..self.n {
            for y in x..self.n {
                let c = self.are_conjugate(&cents[x], &cents[y]);
                m[x][y] = c;
                m[y][x] = c;
            }
        }
        m
    }

    pub fn conjugacy_class(&self, x: usize) -> BTreeSet<usize> {
        (0..self.n).map(|g| self.conj(x, g)).collect()
    }

    /// Distinct conjugacy class sizes, largest first.
    pub fn class_size_vector(&self) -> Vec<u64> {
        let sizes: BTreeSet<u64> = (0..self.n).map(|x| self.conjugacy_class(x).len() as u64).collect();
        sizes.into_iter().rev().collect()
    }

    pub fn normalizer(&self, h: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.n).filter(|&g| self.conjugate_set(h, g) == *h).collect()
    }

    /// `[G : N(C(x))] · |{y : C(y) = C(x)}|` for every `x`.
    pub fn kulkarni_predictions(&self) -> Vec<usize> {
        let cents = self.centralizers();
        (0..self.n)
            .map(|x| {
                let strict = cents.iter().filter(|c| **c == cents[x]).count();
                self.n / self.normalizer(&cents[x]).len() * strict
            })
            .collect()
    }

    pub fn is_abelian_set(&self, h: &BTreeSet<usize>) -> bool {
        h.iter().all(|&a| h.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `G/Z` elementary abelian of exponent `p`: `x^p` and every commutator are central.
    pub fn central_quotient_elementary(&self, p: usize) -> bool {
        let z = self.center();
        (0..self.n).all(|x| z.contains(&self.power(x, p)))
            && (0..self.n).all(|a| (0..self.n).all(|b| z.contains(&self.comm(a, b))))
    }

    /// Kernels of all nonzero homomorphisms onto `Z/p`.
    pub fn index_p_kernels(&self, p: usize) -> Vec<BTreeSet<usize>> {
        let mut gens = Vec::new();
        let mut span = BTreeSet::from([self.identity]);
        for x in 0..self.n {
            if !span.contains(&x) {
                gens.push(x);
                span = self.generated(&gens);
            }
        }
        let mut kernels = BTreeSet::new();
        let total = p.pow(gens.len() as u32);
        for code in 1..total {
            let values: Vec<usize> = (0..gens.len()).map(|i| code / p.pow(i as u32) % p).collect();
            if let Some(f) = self.extend_to_zp(&gens, &values, p) {
                kernels.insert((0..self.n).filter(|&x| f[x] == 0).collect::<BTreeSet<_>>());
            }
        }
        kernels.into_iter().collect()
    }

    fn extend_to_zp(&self, gens: &[usize], values: &[usize], p: usize) -> Option<Vec<usize>> {
        let mut f = vec![usize::MAX; self.n];
        f[self.identity] = 0;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(a) = queue.pop_front() {
            for (&g, &v) in gens.iter().zip(values) {
                let b = self.mul(a, g);
                let fb = (f[a] + v) % p;
                if f[b] == usize::MAX {
                    f[b] = fb;
                    queue.push_back(b);
                } else if f[b] != fb {
                    return None;
                }
            }
        }
        let hom = (0..self.n).all(|a| (0..self.n).all(|b| f[self.mul(a, b)] == (f[a] + f[b]) % p));
        hom.then_some(f)
    }

    /// Intersection of the kernels of all maps onto `Z/p`.
    pub fn frattini(&self, p: usize) -> BTreeSet<usize> {
        self.index_p_kernels(p)
            .into_iter()
            .fold((0..self.n).collect(), |acc: BTreeSet<usize>, k| &acc & &k)
    }

    /// Coset of `x` modulo the center, numbered by smallest member.
    pub fn central_cosets(&self) -> Vec<usize> {
        let z = self.center();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for x in 0..self.n {
            if label[x] == usize::MAX {
                for &c in &z {
                    label[self.mul(x, c)] = next;
                }
                next += 1;
            }
        }
        label
    }
}

pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// `(p^k − 1)/(p − 1) + 1`
pub fn bound(p: u64, k: u32) -> u64 {
    (0..k).map(|i| p.pow(i)).sum::<u64>() + 1
}

/// Independent exhaustive check of an isoclinism given as coset and
/// derived-subgroup index maps.
pub fn witness_is_valid(
    g1: &Oracle,
    g2: &Oracle,
    phi: &[u32],
    psi_domain: &[u32],
    psi: &[u32],
) -> Result<(), String> {
    let (c1, c2) = (g1.central_cosets(), g2.central_cosets());
    let q = c1.iter().max().map_or(0, |m| m + 1);
    if phi.len() != q || c2.iter().max().map_or(0, |m| m + 1) != q {
        return Err("quotient sizes differ".into());
    }
    let image: BTreeSet<u32> = phi.iter().copied().collect();
    if image.len() != q || image.iter().any(|&i| i as usize >= q) {
        return Err("phi is not a bijection".into());
    }
    let rep2: Vec<usize> = (0..q).map(|i| c2.iter().position(|&c| c == i).unwrap()).collect();
    let (d1, d2) = (g1.derived(), g2.derived());
    let domain: BTreeSet<usize> = psi_domain.iter().map(|&x| x as usize).collect();
    if domain != d1 || psi_domain.len() != d1.len() {
        return Err("psi domain is not G1'".into());
    }
    let psi_of = |x: usize| psi[psi_domain.iter().position(|&d| d as usize == x).unwrap()] as usize;
    let targets: BTreeSet<usize> = psi.iter().map(|&y| y as usize).collect();
    if targets != d2 || psi.len() != d2.len() {
        return Err("psi is not a bijection onto G2'".into());
    }
    for &x in &d1 {
        for &y in &d1 {
            if psi_of(g1.mul(x, y)) != g2.mul(psi_of(x), psi_of(y)) {
                return Err(format!("psi fails to be a homomorphism at ({x}, {y})"));
            }
        }
    }
    for a in 0..g1.n {
        for b in 0..g1.n {
            let phi_a = rep2[phi[c1[a]] as usize];
            let phi_b = rep2[phi[c1[b]] as usize];
            if phi[c1[g1.mul(a, b)]] as usize != c2[g2.mul(phi_a, phi_b)] {
                return Err(format!("phi fails to be a homomorphism at ({a}, {b})"));
            }
            if psi_of(g1.comm(a, b)) != g2.comm(phi_a, phi_b) {
                return Err(format!("pairings disagree at ({a}, {b})"));
            }
        }
    }
    Ok(())
}
