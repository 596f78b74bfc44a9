//! Exact permutation-group engine.
//!
//! Groups are held as generators plus a deterministic stabilizer chain;
//! all subgroup roles (ambient groups, normal subgroups, Sylow subgroups,
//! fixed-point subgroups, ...) are plain [`Group`] values on a common
//! degree. Everything is immutable after construction.

mod classes;
mod group;
mod lattice;
mod permutation;
mod quotient;
mod subgroups;

pub use classes::{ConjugacyData, MAX_ENUMERABLE_ORDER};
pub use group::Group;
pub use lattice::{
    chief_factor_below, chief_factors_below, is_p_solvable, is_set_product,
    minimal_normal_subgroups, normal_subgroups, normal_subgroups_below, order_is_p_power,
    order_is_p_prime, product_subgroup,
};
pub use permutation::Perm;
pub use quotient::{coset_action, coset_representatives, quotient_group, CosetAction};
pub use subgroups::{
    centralizer, element_p_part, intersection, normal_closure, normalizer, p_part_biguint,
    prime_divisors, residual, subgroup_where, sylow, p_prime_p_residual, ResidualKind,
};
pub(crate) use subgroups::require_prime;

use serde::{Deserialize, Serialize};

use crate::Result;

/// JSON form of a group input file: 1-based image lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Vec<u64>>,
}

impl GroupFile {
    pub fn to_group(&self) -> Result<Group> {
        let gens = self
            .generators
            .iter()
            .map(|imgs| {
                if imgs.len() != self.degree {
                    return Err(crate::Error::input(format!(
                        "generator length {} does not match degree {}",
                        imgs.len(),
                        self.degree
                    )));
                }
                Perm::from_images_one_based(imgs)
            })
            .collect::<Result<Vec<_>>>()?;
        Group::from_generators(self.degree, gens)
    }

    pub fn from_group(g: &Group) -> GroupFile {
        GroupFile {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images_one_based()).collect(),
        }
    }
}
