use num::BigUint;
use num::One;

use super::permutation::Perm;
use crate::{Error, Result};

/// One level of a stabilizer chain: a base point, the strong generators
/// fixing all earlier base points, and an explicit transversal mapping the
/// base point to every point of its orbit.
#[derive(Clone, Debug)]
pub(crate) struct ChainLevel {
    pub base: usize,
    pub gens: Vec<Perm>,
    /// `transversal[v]` maps `base` to `v`; `None` outside the orbit.
    pub transversal: Vec<Option<Perm>>,
    /// Orbit points in BFS discovery order.
    pub orbit: Vec<usize>,
}

impl ChainLevel {
    fn new(base: usize, degree: usize) -> ChainLevel {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Perm::identity(degree));
        ChainLevel {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }
}

/// A permutation group given by generators together with a verified
/// stabilizer chain (deterministic Schreier–Sims, explicit transversals).
///
/// The group order is the exact product of the orbit sizes along the chain
/// and is kept as an unbounded integer.
#[derive(Clone, Debug)]
pub struct Group {
    degree: usize,
    gens: Vec<Perm>,
    chain: Vec<ChainLevel>,
    order: BigUint,
}

impl Group {
    /// Builds the group generated by `generators` on `degree` points and
    /// verifies the resulting chain.
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Group> {
        if degree == 0 {
            return Err(Error::input("degree must be at least 1"));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::input(format!(
                    "generator degree {} does not match group degree {}",
                    g.degree(),
                    degree
                )));
            }
        }
        let mut chain: Vec<ChainLevel> = Vec::new();
        for g in &generators {
            add_element(&mut chain, degree, g.clone(), 0);
        }
        let order = chain
            .iter()
            .map(|lvl| BigUint::from(lvl.orbit.len()))
            .product::<BigUint>()
            .max(BigUint::one());
        let group = Group {
            degree,
            gens: generators,
            chain,
            order,
        };
        group.verify_chain()?;
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Group {
        Group::from_generators(degree, Vec::new()).expect("trivial group")
    }

    /// Confirms the chain is a valid BSGS: every generator sifts to the
    /// identity and every Schreier generator of every level sifts to the
    /// identity (the strong generating test).
    fn verify_chain(&self) -> Result<()> {
        for g in &self.gens {
            if !self.contains(g) {
                return Err(Error::internal(format!(
                    "generator {g} does not sift to identity"
                )));
            }
        }
        for lvl in &self.chain {
            for &u in &lvl.orbit {
                let tu = lvl.transversal[u].as_ref().unwrap();
                for s in &lvl.gens {
                    let v = s.apply(u);
                    let tv = lvl.transversal[v]
                        .as_ref()
                        .ok_or_else(|| Error::internal("orbit not closed under generators"))?;
                    let sg = tu.then(s).then(&tv.inverse());
                    if !self.contains(&sg) {
                        return Err(Error::internal("Schreier generator fails to sift"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Group order as `u64`; fails with a capacity error for groups larger
    /// than the engine is meant to handle element-wise.
    pub fn order_u64(&self) -> Result<u64> {
        u64::try_from(&self.order)
            .map_err(|_| Error::capacity(format!("group order {} exceeds u64", self.order)))
    }

    pub fn is_trivial(&self) -> bool {
        self.order == BigUint::one()
    }

    /// Membership via sifting; panics on degree mismatch in debug builds
    /// (use [`Group::membership`] for checked input).
    pub fn contains(&self, g: &Perm) -> bool {
        debug_assert_eq!(g.degree(), self.degree);
        match self.sift(g) {
            Some(res) => res.is_identity(),
            None => false,
        }
    }

    /// Checked membership test.
    pub fn membership(&self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::input(format!(
                "degree mismatch: element on {} points, group on {}",
                g.degree(),
                self.degree
            )));
        }
        Ok(self.contains(g))
    }

    /// Sifts `g` through the chain; returns the residue, or `None` when an
    /// orbit lookup fails (certain non-membership).
    fn sift(&self, g: &Perm) -> Option<Perm> {
        let mut h = g.clone();
        for lvl in &self.chain {
            let image = h.apply(lvl.base);
            match &lvl.transversal[image] {
                Some(t) => h = h.then(&t.inverse()),
                None => return None,
            }
        }
        Some(h)
    }

    /// All group elements, in a fixed deterministic order determined by the
    /// chain (not sorted).
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        for lvl in self.chain.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * lvl.orbit.len());
            for &v in &lvl.orbit {
                let t = lvl.transversal[v].as_ref().unwrap();
                for e in &out {
                    next.push(e.then(t));
                }
            }
            out = next;
        }
        out
    }

    /// All group elements in lexicographic order of image sequences; this
    /// is the canonical element order used for representative selection.
    pub fn elements_sorted(&self) -> Vec<Perm> {
        let mut v = self.elements();
        v.sort_unstable();
        v
    }

    /// Right-coset representatives of `h` in `self` (BFS over generators,
    /// deterministic; the first representative is the identity).
    pub fn right_transversal(&self, h: &Group) -> Result<Vec<Perm>> {
        super::quotient::coset_representatives(self, h)
    }

    /// The conjugate subgroup `self^t`.
    pub fn conjugate_by(&self, t: &Perm) -> Group {
        let gens = self
            .gens
            .iter()
            .map(|g| g.conjugated_by(t))
            .collect::<Vec<_>>();
        Group::from_generators(self.degree, gens).expect("conjugate of a valid group")
    }

    /// True when every generator of `h` lies in `self`.
    pub fn has_subgroup(&self, h: &Group) -> bool {
        h.degree() == self.degree && h.gens.iter().all(|g| self.contains(g))
    }

    /// True when `n` is a subgroup normalized by all generators of `self`.
    pub fn normalizes(&self, n: &Group) -> bool {
        if n.degree() != self.degree {
            return false;
        }
        self.gens
            .iter()
            .all(|g| n.gens.iter().all(|x| n.contains(&x.conjugated_by(g))))
    }

    /// True when `n` is a normal subgroup of `self`.
    pub fn has_normal_subgroup(&self, n: &Group) -> bool {
        self.has_subgroup(n) && self.normalizes(n)
    }

    /// Builds the subgroup generated by `elements` inside the parent's
    /// degree, reducing the generating set as it goes.
    pub fn generated(degree: usize, elements: &[Perm]) -> Result<Group> {
        let mut g = Group::trivial(degree);
        for e in elements {
            if e.degree() != degree {
                return Err(Error::input("generator degree mismatch"));
            }
            if !g.contains(e) {
                let mut gens = g.gens.clone();
                gens.push(e.clone());
                g = Group::from_generators(degree, gens)?;
            }
        }
        Ok(g)
    }
}

/// Adds `g` to the chain. `origin` is the shallowest level whose generator
/// list may receive `g`: 0 for user generators, `i + 1` for Schreier
/// generators produced at level `i` (those already lie in the level-`i`
/// group, so shallower lists need not change).
///
/// The element is sifted from `origin`; a surviving residue fixes the base
/// points of all levels up to its failure level `j` and is appended to the
/// generator lists of levels `origin..=j`, whose orbits are then rebuilt
/// with full Schreier closure. This keeps the strong generating test true
/// at every level at all times.
fn add_element(chain: &mut Vec<ChainLevel>, degree: usize, g: Perm, origin: usize) {
    if g.is_identity() {
        return;
    }
    let mut r = g;
    let mut j = origin;
    while j < chain.len() {
        let image = r.apply(chain[j].base);
        match &chain[j].transversal[image] {
            Some(t) => {
                r = r.then(&t.inverse());
                if r.is_identity() {
                    return;
                }
                j += 1;
            }
            None => break,
        }
    }
    if j == chain.len() {
        let base = (0..degree)
            .find(|&x| r.apply(x) != x)
            .expect("non-identity residue moves a point");
        chain.push(ChainLevel::new(base, degree));
    }
    for t in origin..=j {
        chain[t].gens.push(r.clone());
    }
    for t in origin..=j {
        rebuild_orbit(chain, degree, t);
    }
}

/// Recomputes the orbit and transversal of `level` by BFS over its
/// generator list, then feeds every Schreier generator to the next level.
fn rebuild_orbit(chain: &mut Vec<ChainLevel>, degree: usize, level: usize) {
    let base = chain[level].base;
    let mut transversal: Vec<Option<Perm>> = vec![None; degree];
    transversal[base] = Some(Perm::identity(degree));
    let mut orbit = vec![base];
    let mut schreier: Vec<Perm> = Vec::new();
    let mut i = 0;
    while i < orbit.len() {
        let u = orbit[i];
        i += 1;
        let tu = transversal[u].clone().unwrap();
        for s in chain[level].gens.clone() {
            let v = s.apply(u);
            if transversal[v].is_none() {
                transversal[v] = Some(tu.then(&s));
                orbit.push(v);
            } else {
                let tv = transversal[v].as_ref().unwrap();
                let gen = tu.then(&s).then(&tv.inverse());
                if !gen.is_identity() {
                    schreier.push(gen);
                }
            }
        }
    }
    chain[level].transversal = transversal;
    chain[level].orbit = orbit;
    for gen in schreier {
        add_element(chain, degree, gen, level + 1);
    }
}
