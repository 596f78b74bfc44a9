use num::BigUint;
use num::{One, Zero};

use super::classes::MAX_ENUMERABLE_ORDER;
use super::group::Group;
use super::permutation::Perm;
use crate::{Error, Result};

fn check_enumerable(g: &Group, what: &str) -> Result<u64> {
    let order = g.order_u64()?;
    if order > MAX_ENUMERABLE_ORDER {
        return Err(Error::capacity(format!(
            "{what} needs |G| <= {MAX_ENUMERABLE_ORDER}, got {order}"
        )));
    }
    Ok(order)
}

/// Subgroup of all elements of `g` satisfying `pred`, found by a
/// depth-first scan over the stabilizer chain in canonical element order.
/// The predicate must define a subgroup.
pub fn subgroup_where(g: &Group, what: &str, pred: impl Fn(&Perm) -> bool) -> Result<Group> {
    check_enumerable(g, what)?;
    let mut found = Vec::new();
    for e in g.elements_sorted() {
        if pred(&e) {
            found.push(e);
        }
    }
    Group::generated(g.degree(), &found)
}

/// Centralizer of `x` in `g`.
pub fn centralizer(g: &Group, x: &Perm) -> Result<Group> {
    if x.degree() != g.degree() {
        return Err(Error::input("degree mismatch in centralizer"));
    }
    subgroup_where(g, "centralizer", |e| e.then(x) == x.then(e))
}

/// Normalizer of `h` in `g`; requires `h <= g`.
pub fn normalizer(g: &Group, h: &Group) -> Result<Group> {
    if !g.has_subgroup(h) {
        return Err(Error::input("normalizer requires H <= G"));
    }
    subgroup_where(g, "normalizer", |e| {
        h.generators().iter().all(|s| h.contains(&s.conjugated_by(e)))
    })
}

/// Intersection of two subgroups of a common overgroup (same degree).
pub fn intersection(a: &Group, b: &Group) -> Result<Group> {
    if a.degree() != b.degree() {
        return Err(Error::input("degree mismatch in intersection"));
    }
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    subgroup_where(small, "intersection", |e| big.contains(e))
}

/// Largest power of `p` dividing `n` (as exact integers).
pub fn p_part_biguint(n: &BigUint, p: u64) -> BigUint {
    let p = BigUint::from(p);
    let mut n = n.clone();
    let mut out = BigUint::one();
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        out *= &p;
    }
    out
}

/// The `p`-part of an element: a power of `x` generating the Sylow
/// p-subgroup of `<x>`.
pub fn element_p_part(x: &Perm, p: u64) -> Perm {
    let o = x.order();
    let mut coprime = o;
    while coprime % p == 0 {
        coprime /= p;
    }
    x.pow(coprime)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::input(format!("{p} is not prime")))
    }
}

/// A Sylow p-subgroup of `g`, by normalizer ascent: start from the cyclic
/// group on the canonically first p-element and repeatedly extend by a
/// p-element of the normalizer until the full p-part is reached.
/// Deterministic; returns the trivial group when p does not divide |G|.
pub fn sylow(g: &Group, p: u64) -> Result<Group> {
    require_prime(p)?;
    check_enumerable(g, "sylow")?;
    let target = p_part_biguint(g.order(), p);
    if target.is_one() {
        return Ok(Group::trivial(g.degree()));
    }
    let seed = g
        .elements_sorted()
        .into_iter()
        .map(|e| element_p_part(&e, p))
        .find(|y| !y.is_identity())
        .expect("p divides |G|, so a p-element exists");
    let mut q = Group::generated(g.degree(), &[seed])?;
    while q.order() < &target {
        let n = normalizer(g, &q)?;
        let ext = n
            .elements_sorted()
            .into_iter()
            .map(|e| element_p_part(&e, p))
            .find(|y| !y.is_identity() && !q.contains(y))
            .ok_or_else(|| Error::internal("sylow ascent found no extending p-element"))?;
        let mut gens = q.generators().to_vec();
        gens.push(ext);
        q = Group::from_generators(g.degree(), gens)?;
    }
    if q.order() != &target {
        return Err(Error::internal("sylow ascent overshot the p-part"));
    }
    Ok(q)
}

/// Normal closure of the subgroup generated by `seed` in `g`.
pub fn normal_closure(g: &Group, seed: &[Perm]) -> Result<Group> {
    for s in seed {
        if s.degree() != g.degree() {
            return Err(Error::input("degree mismatch in normal closure"));
        }
    }
    let mut n = Group::generated(g.degree(), seed)?;
    loop {
        let mut new_gens: Vec<Perm> = Vec::new();
        for x in n.generators() {
            for s in g.generators() {
                let c = x.conjugated_by(s);
                if !n.contains(&c) {
                    new_gens.push(c);
                }
            }
        }
        if new_gens.is_empty() {
            return Ok(n);
        }
        let mut gens = n.generators().to_vec();
        gens.extend(new_gens);
        n = Group::from_generators(g.degree(), gens)?;
    }
}

/// Which residual subgroup to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidualKind {
    /// O^p(G): the smallest normal subgroup with a p-group quotient.
    P,
    /// O^{p'}(G): the smallest normal subgroup with a p'-group quotient.
    PPrime,
}

/// The residual O^p(G) or O^{p'}(G).
///
/// O^p(G) is the normal closure of all Sylow q-subgroups for primes
/// q != p dividing |G|; O^{p'}(G) is the normal closure of a Sylow
/// p-subgroup.
pub fn residual(g: &Group, p: u64, kind: ResidualKind) -> Result<Group> {
    require_prime(p)?;
    match kind {
        ResidualKind::PPrime => normal_closure(g, sylow(g, p)?.generators()),
        ResidualKind::P => {
            let order = g.order_u64()?;
            let mut seed: Vec<Perm> = Vec::new();
            for q in prime_divisors(order) {
                if q != p {
                    seed.extend_from_slice(sylow(g, q)?.generators());
                }
            }
            normal_closure(g, &seed)
        }
    }
}

/// O^{p'p}(G) = O^p(O^{p'}(G)).
pub fn p_prime_p_residual(g: &Group, p: u64) -> Result<Group> {
    let opp = residual(g, p, ResidualKind::PPrime)?;
    residual(&opp, p, ResidualKind::P)
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
