use std::collections::HashMap;

use super::classes::MAX_ENUMERABLE_ORDER;
use super::group::Group;
use super::permutation::Perm;
use crate::{Error, Result};

/// Right-coset representatives of `h` in `g`, found by BFS over the
/// generators of `g`. The first representative is the identity.
pub fn coset_representatives(g: &Group, h: &Group) -> Result<Vec<Perm>> {
    if !g.has_subgroup(h) {
        return Err(Error::input("coset enumeration requires H <= G"));
    }
    let index = (g.order() / h.order())
        .try_into()
        .map_err(|_| Error::capacity("coset index exceeds usize"))?;
    let index: usize = index;
    if index as u64 > MAX_ENUMERABLE_ORDER {
        return Err(Error::capacity(format!(
            "coset index {index} exceeds {MAX_ENUMERABLE_ORDER}"
        )));
    }
    let mut reps = vec![Perm::identity(g.degree())];
    let mut i = 0;
    while i < reps.len() {
        let r = reps[i].clone();
        i += 1;
        for s in g.generators() {
            let u = r.then(s);
            // H·u = H·r_j  iff  u·r_j^{-1} ∈ H.
            if !reps.iter().any(|rj| h.contains(&u.then(&rj.inverse()))) {
                reps.push(u);
            }
        }
    }
    if reps.len() != index {
        return Err(Error::internal("coset enumeration miscounted the index"));
    }
    Ok(reps)
}

/// The action of a group on the right cosets of a subgroup: the image
/// permutation group together with enough data to project arbitrary
/// elements and to answer coset-membership queries.
#[derive(Clone, Debug)]
pub struct CosetAction {
    reps: Vec<Perm>,
    /// Maps every element of the parent group to the index of its coset.
    coset_of: HashMap<Perm, usize>,
    degree: usize,
}

impl CosetAction {
    pub fn representatives(&self) -> &[Perm] {
        &self.reps
    }

    pub fn num_cosets(&self) -> usize {
        self.reps.len()
    }

    /// Index of the coset `H·u`.
    pub fn coset_index(&self, u: &Perm) -> Result<usize> {
        self.coset_of
            .get(u)
            .copied()
            .ok_or_else(|| Error::input(format!("element {u} is not in the acted-on group")))
    }

    /// The permutation induced by `u` on the coset space.
    pub fn project(&self, u: &Perm) -> Result<Perm> {
        let mut images = Vec::with_capacity(self.reps.len());
        for r in &self.reps {
            images.push(self.coset_index(&r.then(u))? as u32);
        }
        Perm::from_images(images)
    }

    pub fn action_degree(&self) -> usize {
        self.degree
    }
}

/// Permutation action of `g` on the right cosets of `h`, with homomorphism
/// data. The kernel of the action is the core of `h` in `g`.
pub fn coset_action(g: &Group, h: &Group) -> Result<(Group, CosetAction)> {
    let order = g.order_u64()?;
    if order > MAX_ENUMERABLE_ORDER {
        return Err(Error::capacity(format!(
            "coset action needs |G| <= {MAX_ENUMERABLE_ORDER}, got {order}"
        )));
    }
    let reps = coset_representatives(g, h)?;
    let mut coset_of = HashMap::with_capacity(order as usize);
    let h_elements = h.elements();
    for (i, r) in reps.iter().enumerate() {
        for e in &h_elements {
            coset_of.insert(e.then(r), i);
        }
    }
    if coset_of.len() != order as usize {
        return Err(Error::internal("coset labeling did not cover the group"));
    }
    let action = CosetAction {
        degree: reps.len(),
        reps,
        coset_of,
    };
    let images: Vec<Perm> = g
        .generators()
        .iter()
        .map(|s| action.project(s))
        .collect::<Result<_>>()?;
    // The projection must be a homomorphism on all generators.
    for (a, pa) in g.generators().iter().zip(&images) {
        for (b, pb) in g.generators().iter().zip(&images) {
            if action.project(&a.then(b))? != pa.then(pb) {
                return Err(Error::internal("coset action is not a homomorphism"));
            }
        }
    }
    let image = Group::from_generators(action.degree.max(1), images)?;
    Ok((image, action))
}

/// Faithful permutation realization of `g / n` on the cosets of the normal
/// subgroup `n`, plus the element-level projection.
pub fn quotient_group(g: &Group, n: &Group) -> Result<(Group, CosetAction)> {
    if !g.has_normal_subgroup(n) {
        return Err(Error::input("quotient requires a normal subgroup"));
    }
    let (q, action) = coset_action(g, n)?;
    if q.order() != &(g.order() / n.order()) {
        return Err(Error::internal("quotient order mismatch (kernel too large?)"));
    }
    Ok((q, action))
}
