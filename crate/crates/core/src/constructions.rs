//! Builders for the concrete group families used throughout the crate.
//!
//! Element numbering is lexicographic over each family's natural parameter
//! tuple, so tables (and everything derived from them) are reproducible.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, prime_power};
use crate::group::{check_cap, ElementId, GroupError, GroupTable};
use crate::subgroup::SubgroupSet;

/// `C_n`, element `i` standing for the generator to the power `i`.
pub fn cyclic(n: u64, cap: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::BadParameter("cyclic group of order 0".into()));
    }
    let n = check_cap(n as u128, cap)?;
    let mut mult = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mult[a * n + b] = ((a + b) % n) as u32;
        }
    }
    Ok(GroupTable::from_raw(n, mult, format!("cyclic({n})")))
}

/// Direct product of cyclic groups; the empty list gives the trivial group.
pub fn abelian(orders: &[u64], cap: usize) -> Result<GroupTable, GroupError> {
    if let Some(&bad) = orders.iter().find(|&&n| n < 2) {
        return Err(GroupError::BadParameter(format!(
            "abelian factor of order {bad} (need >= 2)"
        )));
    }
    let total = orders
        .iter()
        .try_fold(1u128, |acc, &n| acc.checked_mul(n as u128))
        .unwrap_or(u128::MAX);
    check_cap(total, cap)?;
    let mut group = cyclic(1, cap)?;
    for &n in orders {
        group = if group.order() == 1 {
            cyclic(n, cap)?
        } else {
            group.direct_product(&cyclic(n, cap)?, cap)?
        };
    }
    let args: Vec<String> = orders.iter().map(u64::to_string).collect();
    Ok(group.with_label(format!("abelian({})", args.join(","))))
}

/// Products `(r^i s^a)(r^j s^b) = r^(i ± j + [a∧b]·twist) s^(a⊕b)`, stored at
/// index `2i + a`.
fn rotation_reflection(rotations: usize, twist: usize, label: String) -> GroupTable {
    let n = 2 * rotations;
    let mut mult = vec![0u32; n * n];
    for x in 0..n {
        let (i, a) = (x / 2, x % 2);
        for y in 0..n {
            let (j, b) = (y / 2, y % 2);
            let turned = if a == 0 { j } else { rotations - j };
            let r = (i + turned + if a & b == 1 { twist } else { 0 }) % rotations;
            mult[x * n + y] = (2 * r + (a ^ b)) as u32;
        }
    }
    GroupTable::from_raw(n, mult, label)
}

/// Dihedral group of the given (even, ≥ 4) order.
pub fn dihedral(order: u64, cap: usize) -> Result<GroupTable, GroupError> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(GroupError::BadParameter(format!(
            "dihedral order {order} must be even and >= 4"
        )));
    }
    let n = check_cap(order as u128, cap)?;
    Ok(rotation_reflection(n / 2, 0, format!("dihedral({order})")))
}

/// Generalized quaternion group of order `2^m`, `m >= 3`.
pub fn quaternion(order: u64, cap: usize) -> Result<GroupTable, GroupError> {
    if order < 8 || !order.is_power_of_two() {
        return Err(GroupError::BadParameter(format!(
            "quaternion order {order} must be a power of 2, >= 8"
        )));
    }
    let n = check_cap(order as u128, cap)?;
    Ok(rotation_reflection(n / 2, n / 4, format!("quaternion({order})")))
}

fn odd_prime(p: u64) -> Result<usize, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if p == 2 {
        return Err(GroupError::BadParameter(
            "p must be odd (use dihedral(8) or quaternion(8) for p = 2)".into(),
        ));
    }
    Ok(p as usize)
}

/// Upper unitriangular 3×3 matrices over `F_p`.
///
/// The matrix with entries `m12 = a`, `m13 = c`, `m23 = b` has index
/// `a·p² + c·p + b`.
pub fn heisenberg(p: u64, cap: usize) -> Result<GroupTable, GroupError> {
    let q = odd_prime(p)?;
    let n = check_cap((p as u128).pow(3), cap)?;
    let split = |x: usize| (x / (q * q), x % q, (x / q) % q);
    let mut mult = vec![0u32; n * n];
    for x in 0..n {
        let (a, b, c) = split(x);
        for y in 0..n {
            let (a2, b2, c2) = split(y);
            let (a3, b3, c3) = ((a + a2) % q, (b + b2) % q, (c + c2 + a * b2) % q);
            mult[x * n + y] = (a3 * q * q + c3 * q + b3) as u32;
        }
    }
    Ok(GroupTable::from_raw(n, mult, format!("heisenberg({p})")))
}

/// `⟨a, b | a^(p²) = b^p = 1, b⁻¹ab = a^(1+p)⟩`, element `a^i b^j` at `i·p + j`.
pub fn modular_p3(p: u64, cap: usize) -> Result<GroupTable, GroupError> {
    let q = odd_prime(p)?;
    let n = check_cap((p as u128).pow(3), cap)?;
    let q2 = q * q;
    let mut mult = vec![0u32; n * n];
    for x in 0..n {
        let (i, j) = (x / q, x % q);
        // b^j a^k b^-j = a^(k(1 - jp))
        let twist = (1 + q2 - (j * q) % q2) % q2;
        for y in 0..n {
            let (k, l) = (y / q, y % q);
            let i3 = (i + k * twist) % q2;
            mult[x * n + y] = (i3 * q + (j + l) % q) as u32;
        }
    }
    Ok(GroupTable::from_raw(n, mult, format!("modular_p3({p})")))
}

/// `S_m` from an m-cycle and a transposition.
pub fn symmetric(m: usize, cap: usize) -> Result<GroupTable, GroupError> {
    if m == 0 {
        return Err(GroupError::BadParameter("symmetric group on 0 points".into()));
    }
    let mut gens = Vec::new();
    if m >= 2 {
        gens.push((0..m).map(|i| (i + 1) % m).collect());
        let mut t: Vec<usize> = (0..m).collect();
        t.swap(0, 1);
        gens.push(t);
    }
    GroupTable::from_permutation_generators(&gens, format!("symmetric({m})"), cap)
}

/// Which of the two extraspecial groups of a given order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Plus,
    Minus,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Plus => "plus",
            Variant::Minus => "minus",
        })
    }
}

/// Smallest central element of prime order, if any.
pub fn smallest_central_of_prime_order(g: &GroupTable) -> Option<ElementId> {
    g.center()
        .iter()
        .find(|&z| z != ElementId::IDENTITY && is_prime(g.element_order(z)))
}

/// Extraspecial group of order `p^(1+2n)` as a central product of order-`p³`
/// factors.
///
/// For `p = 2` the plus type is `D8∘…∘D8` and the minus type ends in `Q8`.
/// For odd `p` the plus type uses Heisenberg factors only (exponent `p`) and
/// the minus type ends in the exponent-`p²` group.
pub fn extraspecial(p: u64, n: u32, variant: Variant, cap: usize) -> Result<GroupTable, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if n == 0 {
        return Err(GroupError::BadParameter("extraspecial rank n must be >= 1".into()));
    }
    let order = (p as u128).checked_pow(1 + 2 * n).unwrap_or(u128::MAX);
    check_cap(order, cap)?;
    let (plain, twisted) = if p == 2 {
        (dihedral(8, cap)?, quaternion(8, cap)?)
    } else {
        (heisenberg(p, cap)?, modular_p3(p, cap)?)
    };
    let last = match variant {
        Variant::Plus => &plain,
        Variant::Minus => &twisted,
    };
    let mut group = if n == 1 { last.clone() } else { plain.clone() };
    for i in 1..n {
        let factor = if i == n - 1 { last } else { &plain };
        let z1 = smallest_central_of_prime_order(&group).expect("extraspecial factor has a center");
        let z2 = smallest_central_of_prime_order(factor).expect("extraspecial factor has a center");
        group = group.central_product(factor, z1, z2, cap)?;
    }
    Ok(group.with_label(format!("extraspecial(p={p},n={n},variant={variant})")))
}

/// `Φ(G) = G′·G^p` for a p-group.
pub fn frattini_subgroup(g: &GroupTable, p: u64) -> Result<SubgroupSet, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let is_p_power = g.order() == 1 || prime_power(g.order() as u64).is_some_and(|(q, _)| q == p);
    if !is_p_power {
        return Err(GroupError::NotPGroup { order: g.order(), p });
    }
    let mut gens: Vec<ElementId> = g.elements().map(|x| g.pow(x, p)).collect();
    for a in g.elements() {
        for b in g.elements() {
            gens.push(g.commutator(a, b));
        }
    }
    Ok(g.subgroup_generated(&gens))
}

/// Non-abelian p-group with `Z(G) = G′ = Φ(G)` of order `p`.
pub fn is_extraspecial(g: &GroupTable) -> bool {
    let Some((p, _)) = prime_power(g.order() as u64) else {
        return false;
    };
    if g.is_abelian() {
        return false;
    }
    let z = g.center();
    if z.size() as u64 != p {
        return false;
    }
    let frattini = frattini_subgroup(g, p).expect("order is a power of p");
    z == g.commutator_subgroup() && z == frattini
}
