use std::collections::BTreeSet;

use num::BigUint;
use num::One;

use super::classes::ConjugacyData;
use super::group::Group;
use super::permutation::Perm;
use super::quotient::quotient_group;
use super::subgroups::{normal_closure, p_part_biguint, require_prime};
use crate::{Error, Result};

/// Canonical key of a subgroup: its sorted element list. Usable only at
/// desk scale, which is all this engine targets.
fn subgroup_key(g: &Group) -> Vec<Vec<u32>> {
    g.elements_sorted()
        .into_iter()
        .map(|p| p.images().to_vec())
        .collect()
}

/// All normal subgroups of `g` contained in `k` (which must be normal in
/// `g`), including the trivial group and `k` itself when normal.
///
/// Every normal subgroup is the join of normal closures of the conjugacy
/// classes it contains, so the lattice is generated by closing the class
/// closures under joins. Exponential in the class count in principle;
/// fine at desk scale.
pub fn normal_subgroups_below(g: &Group, k: &Group) -> Result<Vec<Group>> {
    if !g.has_normal_subgroup(k) {
        return Err(Error::input("normal_subgroups_below requires K normal in G"));
    }
    let classes = ConjugacyData::compute(g)?;
    let mut atoms: Vec<Group> = Vec::new();
    let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    for i in 1..classes.count() {
        let rep = classes.rep(i);
        if !k.contains(rep) {
            continue;
        }
        let n = normal_closure(g, std::slice::from_ref(rep))?;
        if !k.has_subgroup(&n) {
            // Closure escaped K: the class generates beyond K only when K
            // is not normal, which was ruled out; this class is not fully
            // inside K after all. (Cannot happen: rep in K normal means the
            // whole class and its closure lie in K.)
            return Err(Error::internal("class closure escaped a normal subgroup"));
        }
        if seen.insert(subgroup_key(&n)) {
            atoms.push(n);
        }
    }
    let mut lattice: Vec<Group> = vec![Group::trivial(g.degree())];
    let mut keys: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    keys.insert(subgroup_key(&lattice[0]));
    let mut frontier: Vec<Group> = atoms.clone();
    while let Some(n) = frontier.pop() {
        let key = subgroup_key(&n);
        if !keys.insert(key) {
            continue;
        }
        // Join with every known member to keep the set join-closed.
        let mut joins = Vec::new();
        for m in &lattice {
            let mut gens = n.generators().to_vec();
            gens.extend_from_slice(m.generators());
            let j = Group::from_generators(g.degree(), gens)?;
            joins.push(j);
        }
        lattice.push(n);
        for j in joins {
            if !keys.contains(&subgroup_key(&j)) {
                frontier.push(j);
            }
        }
    }
    lattice.sort_by_key(|n| (n.order().clone(), subgroup_key(n)));
    Ok(lattice)
}

/// All normal subgroups of `g`.
pub fn normal_subgroups(g: &Group) -> Result<Vec<Group>> {
    normal_subgroups_below(g, g)
}

/// The minimal (nontrivial) normal subgroups of `g`.
pub fn minimal_normal_subgroups(g: &Group) -> Result<Vec<Group>> {
    if g.is_trivial() {
        return Ok(Vec::new());
    }
    // Every minimal normal subgroup is the closure of one nontrivial class,
    // so the atoms suffice.
    let classes = ConjugacyData::compute(g)?;
    let mut atoms: Vec<Group> = Vec::new();
    let mut seen: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    for i in 1..classes.count() {
        let n = normal_closure(g, std::slice::from_ref(classes.rep(i)))?;
        if seen.insert(subgroup_key(&n)) {
            atoms.push(n);
        }
    }
    let mut minimal: Vec<Group> = Vec::new();
    for (i, n) in atoms.iter().enumerate() {
        let has_proper_atom_inside = atoms
            .iter()
            .enumerate()
            .any(|(j, m)| i != j && m.order() < n.order() && n.has_subgroup(m));
        if !has_proper_atom_inside {
            minimal.push(n.clone());
        }
    }
    minimal.sort_by_key(|n| (n.order().clone(), subgroup_key(n)));
    Ok(minimal)
}

/// All maximal members of the normal subgroups of `g` strictly below `k`;
/// each gives a chief factor `k/l`. Sorted canonically.
pub fn chief_factors_below(g: &Group, k: &Group) -> Result<Vec<Group>> {
    if k.is_trivial() {
        return Err(Error::input("chief_factor_below requires a nontrivial K"));
    }
    let below: Vec<Group> = normal_subgroups_below(g, k)?
        .into_iter()
        .filter(|n| n.order() < k.order())
        .collect();
    let mut maximal = Vec::new();
    for n in &below {
        if below
            .iter()
            .all(|m| m.order() <= n.order() || !m.has_subgroup(n))
        {
            maximal.push(n.clone());
        }
    }
    maximal.sort_by_key(|n| (n.order().clone(), subgroup_key(n)));
    Ok(maximal)
}

/// The canonically first `L` with `K/L` a chief factor of `g`.
pub fn chief_factor_below(g: &Group, k: &Group) -> Result<Group> {
    let all = chief_factors_below(g, k)?;
    all.into_iter()
        .next()
        .ok_or_else(|| Error::internal("nontrivial K has no normal subgroup below it"))
}

/// True when every chief factor of `g` is a p-group or a p'-group,
/// computed recursively through minimal normal subgroups of quotients.
pub fn is_p_solvable(g: &Group, p: u64) -> Result<bool> {
    require_prime(p)?;
    if g.is_trivial() {
        return Ok(true);
    }
    let minimal = minimal_normal_subgroups(g)?;
    let m = &minimal[0];
    let order = m.order();
    let ppart = p_part_biguint(order, p);
    let is_p_group = &ppart == order;
    let is_p_prime = ppart.is_one();
    if !is_p_group && !is_p_prime {
        return Ok(false);
    }
    let (q, _) = quotient_group(g, m)?;
    is_p_solvable(&q, p)
}

/// True when `|n|` is a power of `p` (1 counts).
pub fn order_is_p_power(n: &BigUint, p: u64) -> bool {
    &p_part_biguint(n, p) == n
}

/// True when `p` does not divide `|n|`.
pub fn order_is_p_prime(n: &BigUint, p: u64) -> bool {
    p_part_biguint(n, p).is_one()
}

/// Convenience: the subgroup `a·b` when one of the factors normalizes the
/// product (used for products like `L·N_G(P)` with `L` normal).
pub fn product_subgroup(degree: usize, a: &Group, b: &Group) -> Result<Group> {
    let mut gens = a.generators().to_vec();
    gens.extend_from_slice(b.generators());
    Group::from_generators(degree, gens)
}

/// Checks `|AB| = |A||B|/|A∩B|` — i.e. that the generated subgroup is the
/// set-product of the two factors.
pub fn is_set_product(ab: &Group, a: &Group, b: &Group, meet: &Group) -> bool {
    ab.order() * meet.order() == a.order() * b.order()
}
