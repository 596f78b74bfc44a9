use std::collections::HashMap;

use num::BigUint;

use super::group::Group;
use super::permutation::Perm;
use crate::{Error, Result};

/// Hard cap on the order of groups whose elements the engine will
/// enumerate; the design target is well below this.
pub const MAX_ENUMERABLE_ORDER: u64 = 50_000;

/// Conjugacy-class data of a group: canonical representatives, sizes,
/// power maps for every exponent up to the group exponent, and the inverse
/// map on class indices.
///
/// Classes are ordered by the lexicographically smallest element they
/// contain, so class 0 is always the identity class. Element-to-class
/// lookup is exposed as a procedure ([`ConjugacyData::class_of`]).
#[derive(Clone, Debug)]
pub struct ConjugacyData {
    reps: Vec<Perm>,
    sizes: Vec<u64>,
    exponent: u64,
    /// `power_maps[s][i]` = class index of `rep_i^s`, for `s` in `0..exponent`.
    power_maps: Vec<Vec<usize>>,
    inverse_map: Vec<usize>,
    index: HashMap<Perm, usize>,
}

impl ConjugacyData {
    /// Enumerates the conjugacy classes of `g` by conjugation orbits.
    pub fn compute(g: &Group) -> Result<ConjugacyData> {
        let order = g.order_u64()?;
        if order > MAX_ENUMERABLE_ORDER {
            return Err(Error::capacity(format!(
                "class enumeration needs |G| <= {MAX_ENUMERABLE_ORDER}, got {order}"
            )));
        }
        let elements = g.elements_sorted();
        let mut index: HashMap<Perm, usize> = HashMap::with_capacity(elements.len());
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for e in &elements {
            if index.contains_key(e) {
                continue;
            }
            let class_idx = reps.len();
            // BFS conjugation orbit of the (lex-minimal) representative.
            let mut orbit = vec![e.clone()];
            index.insert(e.clone(), class_idx);
            let mut i = 0;
            while i < orbit.len() {
                let u = orbit[i].clone();
                i += 1;
                for s in g.generators() {
                    let v = u.conjugated_by(s);
                    if !index.contains_key(&v) {
                        index.insert(v.clone(), class_idx);
                        orbit.push(v);
                    }
                }
            }
            reps.push(e.clone());
            sizes.push(orbit.len() as u64);
        }
        let exponent = reps
            .iter()
            .fold(1u64, |acc, r| num::integer::lcm(acc, r.order()));
        // power_maps[0] sends every class to the identity class.
        let mut power_maps = vec![vec![0usize; reps.len()]];
        let mut powers: Vec<Perm> = vec![Perm::identity(g.degree()); reps.len()];
        for _s in 1..exponent {
            for (p, r) in powers.iter_mut().zip(reps.iter()) {
                *p = p.then(r);
            }
            power_maps.push(powers.iter().map(|p| index[p]).collect());
        }
        let inverse_map = reps.iter().map(|r| index[&r.inverse()]).collect();
        let data = ConjugacyData {
            reps,
            sizes,
            exponent,
            power_maps,
            inverse_map,
            index,
        };
        data.verify(g)?;
        Ok(data)
    }

    fn verify(&self, g: &Group) -> Result<()> {
        let total: BigUint = self.sizes.iter().map(|&s| BigUint::from(s)).sum();
        if &total != g.order() {
            return Err(Error::internal("class sizes do not sum to group order"));
        }
        let order = g.order_u64()?;
        if self.sizes.iter().any(|&s| order % s != 0) {
            return Err(Error::internal("class size does not divide group order"));
        }
        for (i, &j) in self.inverse_map.iter().enumerate() {
            if self.inverse_map[j] != i {
                return Err(Error::internal("inverse map is not an involution"));
            }
        }
        if self.exponent > 1 && self.power_maps[1] != (0..self.reps.len()).collect::<Vec<_>>() {
            return Err(Error::internal("power map at 1 is not the identity"));
        }
        Ok(())
    }

    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Perm] {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> &Perm {
        &self.reps[i]
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Class index of an arbitrary group element.
    pub fn class_of(&self, g: &Perm) -> Result<usize> {
        self.index
            .get(g)
            .copied()
            .ok_or_else(|| Error::input(format!("element {g} is not in the group")))
    }

    /// Class index of `rep_i^s`.
    pub fn power_class(&self, i: usize, s: u64) -> usize {
        self.power_maps[(s % self.exponent) as usize][i]
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse_map[i]
    }

    pub fn power_maps(&self) -> &[Vec<usize>] {
        &self.power_maps
    }

    pub fn inverse_map(&self) -> &[usize] {
        &self.inverse_map
    }
}
