//! Invariant characters under coprime p-group actions and the relative
//! Glauberman correspondence with full decomposition witnesses.
//!
//! The central operation takes a p-group P acting by conjugation on a
//! group K with a P-invariant normal subgroup N of p'-index, and for a
//! P-invariant irreducible theta of K produces the distinguished
//! P-invariant constituent phi of the restriction to the fixed-point
//! subgroup C, together with both exact decompositions
//!
//! `theta|_C = e*phi + p*Delta + Xi` and `phi^K = d*theta + p*Psi + rho`,
//!
//! verified before anything is returned. A failure of existence,
//! uniqueness or the congruences is a theorem-violation error, which the
//! verification layer records as a reportable event.

use serde::Serialize;

use crate::chartab::ops::{conjugate_class_function, induce, restrict, stabilizer_of_character};
use crate::chartab::{CharacterTable, ClassFunction, TableStore};
use crate::perm::{self, Group, Perm};
use crate::{Error, Result};

/// A verified coprime-action configuration: `actor` is a p-group inside
/// `ambient` normalizing `target` and `kernel_sub`, the index of
/// `kernel_sub` in `target` is coprime to p, and `fixed_sub / kernel_sub`
/// is exactly the fixed-point subgroup of the actor on the quotient.
#[derive(Clone, Debug)]
pub struct CoprimeActionContext {
    pub ambient: Group,
    pub target: Group,
    pub kernel_sub: Group,
    pub actor: Group,
    pub fixed_sub: Group,
    pub p: u64,
}

impl CoprimeActionContext {
    pub fn new(
        ambient: &Group,
        target: &Group,
        kernel_sub: &Group,
        actor: &Group,
        p: u64,
    ) -> Result<CoprimeActionContext> {
        let degree = ambient.degree();
        if [target, kernel_sub, actor]
            .iter()
            .any(|g| g.degree() != degree)
        {
            return Err(Error::input("context groups must share the ambient degree"));
        }
        for g in [target, kernel_sub, actor] {
            if !ambient.has_subgroup(g) {
                return Err(Error::input("context groups must lie in the ambient group"));
            }
        }
        let actor_order = actor.order_u64()?;
        if perm::p_part_biguint(actor.order(), p) != actor.order().clone() {
            return Err(Error::input(format!(
                "actor of order {actor_order} is not a {p}-group"
            )));
        }
        if !actor.normalizes(target) || !actor.normalizes(kernel_sub) {
            return Err(Error::input("actor must normalize the target and the kernel"));
        }
        if !target.has_normal_subgroup(kernel_sub) {
            return Err(Error::input("kernel must be normal in the target"));
        }
        let index = target.order() / kernel_sub.order();
        if !perm::order_is_p_prime(&index, p) {
            return Err(Error::input(format!(
                "index {index} of the kernel must be coprime to {p}"
            )));
        }
        // C = { k in K : [k, u] in N for every generator u of P }.
        let fixed_sub = perm::subgroup_where(target, "fixed-point subgroup", |k| {
            actor.generators().iter().all(|u| {
                let comm = k.inverse().then(&k.conjugated_by(u));
                kernel_sub.contains(&comm)
            })
        })?;
        if !fixed_sub.has_subgroup(kernel_sub) {
            return Err(Error::internal("fixed-point subgroup lost the kernel"));
        }
        // Cross-check |C:N| against the number of fixed cosets of the
        // actor acting on K/N.
        let (_, action) = perm::coset_action(target, kernel_sub)?;
        let mut fixed_cosets = 0u64;
        for rep in action.representatives() {
            let own = action.coset_index(rep)?;
            let mut fixed = true;
            for u in actor.generators() {
                if action.coset_index(&rep.conjugated_by(u))? != own {
                    fixed = false;
                    break;
                }
            }
            if fixed {
                fixed_cosets += 1;
            }
        }
        let c_index = (fixed_sub.order() / kernel_sub.order()).try_into().unwrap_or(u64::MAX);
        if fixed_cosets != c_index {
            return Err(Error::internal(
                "fixed-point subgroup disagrees with the coset action",
            ));
        }
        Ok(CoprimeActionContext {
            ambient: ambient.clone(),
            target: target.clone(),
            kernel_sub: kernel_sub.clone(),
            actor: actor.clone(),
            fixed_sub,
            p,
        })
    }
}

/// Indices of the actor-invariant irreducible characters of `table`.
/// The actor must normalize the table's group.
pub fn invariant_irreducibles(table: &CharacterTable, actor: &Group) -> Result<Vec<usize>> {
    if !actor.normalizes(table.group()) {
        return Err(Error::input("actor does not normalize the character table's group"));
    }
    let mut out = Vec::new();
    for i in 0..table.num_irr() {
        let chi = table.irreducible(i);
        let invariant = actor
            .generators()
            .iter()
            .map(|u| conjugate_class_function(table, &chi, u))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|conj| conj == chi);
        if invariant {
            out.push(i);
        }
    }
    Ok(out)
}

/// The sign of `e` modulo p: `+1` when `e ≡ 1`, `-1` when `e ≡ -1`.
/// For p = 2 the two cases coincide and the sign is not determined.
pub fn sign_mod_p(e: u64, p: u64) -> Result<Option<i8>> {
    let r = e % p;
    if p == 2 {
        return if r == 1 {
            Ok(None)
        } else {
            Err(Error::violation(format!("multiplicity {e} is even")))
        };
    }
    if r == 1 {
        Ok(Some(1))
    } else if r == p - 1 {
        Ok(Some(-1))
    } else {
        Err(Error::violation(format!(
            "multiplicity {e} is not ±1 mod {p}"
        )))
    }
}

/// Decomposition witness for one relative correspondent.
#[derive(Clone, Debug, Serialize)]
pub struct GlaubermanWitness {
    /// Index of theta in Irr(K).
    pub theta: usize,
    /// Index of phi in Irr(C).
    pub phi: usize,
    /// Multiplicity of phi in theta|_C; `e ≡ ±1 (mod p)`.
    pub e: u64,
    /// The sign `e mod p` for odd p (`None` for p = 2).
    pub e_sign: Option<i8>,
    /// Multiplicity vector of Delta over Irr(C).
    pub delta: Vec<u64>,
    /// Multiplicity vector of Xi over Irr(C).
    pub xi: Vec<u64>,
    /// Multiplicity of theta in phi^K; `d ≡ ±1 (mod p)`.
    pub dual_d: u64,
    pub dual_sign: Option<i8>,
    /// Multiplicity vector of Psi over Irr(K).
    pub dual_psi: Vec<u64>,
    /// Multiplicity vector of rho over Irr(K).
    pub dual_rho: Vec<u64>,
}

fn to_u64_mults(mults: &[num::BigRational], what: &str) -> Result<Vec<u64>> {
    mults
        .iter()
        .map(|m| {
            if !m.is_integer() {
                return Err(Error::internal(format!("{what}: non-integral multiplicity")));
            }
            u64::try_from(m.to_integer())
                .map_err(|_| Error::internal(format!("{what}: negative multiplicity")))
        })
        .collect()
}

/// Which irreducibles of `table` have a constituent of their restriction
/// to `sub` lying in `invariant_of_sub`.
fn lies_over_invariant(
    table: &CharacterTable,
    sub: &CharacterTable,
    invariant_of_sub: &[usize],
) -> Result<Vec<bool>> {
    let mut out = Vec::with_capacity(table.num_irr());
    for i in 0..table.num_irr() {
        let res = restrict(table, &table.irreducible(i), sub)?;
        let mut hit = false;
        for &j in invariant_of_sub {
            if sub.inner_u64(&res, &sub.irreducible(j))? != 0 {
                hit = true;
                break;
            }
        }
        out.push(hit);
    }
    Ok(out)
}

/// The relative Glauberman correspondent of the P-invariant irreducible
/// `theta_idx` of the target, with both decomposition witnesses verified.
pub fn relative_glauberman(
    store: &TableStore,
    ctx: &CoprimeActionContext,
    theta_idx: usize,
) -> Result<GlaubermanWitness> {
    let ktab = store.table(&ctx.target)?;
    let ctab = store.table(&ctx.fixed_sub)?;
    let ntab = store.table(&ctx.kernel_sub)?;
    let p = ctx.p;

    let theta = ktab.irreducible(theta_idx);
    let inv_k = invariant_irreducibles(&ktab, &ctx.actor)?;
    if !inv_k.contains(&theta_idx) {
        return Err(Error::input("theta must be actor-invariant"));
    }
    let inv_c = invariant_irreducibles(&ctab, &ctx.actor)?;
    let inv_n = invariant_irreducibles(&ntab, &ctx.actor)?;
    let c_over_inv = lies_over_invariant(&ctab, &ntab, &inv_n)?;

    // Decompose theta|_C.
    let res = restrict(&ktab, &theta, &ctab)?;
    let mults = to_u64_mults(&ktab_decompose(&ctab, &res)?, "theta restriction")?;

    // phi: the unique actor-invariant constituent with multiplicity not
    // divisible by p lying over an actor-invariant character of N.
    let candidates: Vec<usize> = (0..ctab.num_irr())
        .filter(|&i| mults[i] % p != 0 && inv_c.contains(&i) && c_over_inv[i])
        .collect();
    if candidates.len() != 1 {
        return Err(Error::violation(format!(
            "expected a unique correspondent candidate, found {}",
            candidates.len()
        )));
    }
    let phi_idx = candidates[0];
    let e = mults[phi_idx];
    let e_sign = sign_mod_p(e, p)?;

    // Split the remaining multiplicities into p*Delta + Xi.
    let mut delta = vec![0u64; ctab.num_irr()];
    let mut xi = vec![0u64; ctab.num_irr()];
    for i in 0..ctab.num_irr() {
        if i == phi_idx {
            continue;
        }
        if c_over_inv[i] {
            if mults[i] % p != 0 {
                return Err(Error::violation(format!(
                    "constituent {i} over an invariant kernel character has multiplicity {} not divisible by {p}",
                    mults[i]
                )));
            }
            delta[i] = mults[i] / p;
        } else {
            xi[i] = mults[i];
        }
    }
    // Exact identity check: theta|_C = e*phi + p*Delta + Xi.
    let mut recon = ctab.irreducible(phi_idx).scale_int(e as i64);
    for i in 0..ctab.num_irr() {
        if delta[i] > 0 {
            recon = recon.add(&ctab.irreducible(i).scale_int((p * delta[i]) as i64));
        }
        if xi[i] > 0 {
            recon = recon.add(&ctab.irreducible(i).scale_int(xi[i] as i64));
        }
    }
    if recon != res {
        return Err(Error::internal("restriction identity failed to reconstruct"));
    }

    // Dual decomposition: phi^K = d*theta + p*Psi + rho, with no
    // actor-invariant constituent in rho.
    let phi = ctab.irreducible(phi_idx);
    let ind = induce(&ctab, &phi, &ktab)?;
    let dual_mults = to_u64_mults(&ktab_decompose(&ktab, &ind)?, "phi induction")?;
    let dual_d = dual_mults[theta_idx];
    let dual_sign = sign_mod_p(dual_d, p)?;
    let mut dual_psi = vec![0u64; ktab.num_irr()];
    let mut dual_rho = vec![0u64; ktab.num_irr()];
    for i in 0..ktab.num_irr() {
        if i == theta_idx {
            continue;
        }
        if inv_k.contains(&i) {
            if dual_mults[i] % p != 0 {
                return Err(Error::violation(format!(
                    "invariant constituent {i} of the induction has multiplicity {} not divisible by {p}",
                    dual_mults[i]
                )));
            }
            dual_psi[i] = dual_mults[i] / p;
        } else {
            dual_rho[i] = dual_mults[i];
        }
    }
    let mut recon = ktab.irreducible(theta_idx).scale_int(dual_d as i64);
    for i in 0..ktab.num_irr() {
        if dual_psi[i] > 0 {
            recon = recon.add(&ktab.irreducible(i).scale_int((p * dual_psi[i]) as i64));
        }
        if dual_rho[i] > 0 {
            recon = recon.add(&ktab.irreducible(i).scale_int(dual_rho[i] as i64));
        }
    }
    if recon != ind {
        return Err(Error::internal("induction identity failed to reconstruct"));
    }

    Ok(GlaubermanWitness {
        theta: theta_idx,
        phi: phi_idx,
        e,
        e_sign,
        delta,
        xi,
        dual_d,
        dual_sign,
        dual_psi,
        dual_rho,
    })
}

fn ktab_decompose(
    table: &CharacterTable,
    f: &ClassFunction,
) -> Result<Vec<num::BigRational>> {
    table.decompose(f)
}

/// The full correspondence `Irr_P(K) -> Irr_P(C)`, verified to be a
/// bijection onto the actor-invariant characters of C lying over
/// actor-invariant characters of N.
pub fn correspondence_map(
    store: &TableStore,
    ctx: &CoprimeActionContext,
) -> Result<Vec<(usize, usize)>> {
    let ktab = store.table(&ctx.target)?;
    let ctab = store.table(&ctx.fixed_sub)?;
    let ntab = store.table(&ctx.kernel_sub)?;
    let inv_k = invariant_irreducibles(&ktab, &ctx.actor)?;
    let inv_c = invariant_irreducibles(&ctab, &ctx.actor)?;
    let inv_n = invariant_irreducibles(&ntab, &ctx.actor)?;
    let c_over_inv = lies_over_invariant(&ctab, &ntab, &inv_n)?;

    let mut pairs = Vec::new();
    for &theta_idx in &inv_k {
        let wit = relative_glauberman(store, ctx, theta_idx)?;
        pairs.push((theta_idx, wit.phi));
    }
    let mut image: Vec<usize> = pairs.iter().map(|&(_, phi)| phi).collect();
    image.sort_unstable();
    let before = image.len();
    image.dedup();
    if image.len() != before {
        return Err(Error::violation("correspondence is not injective"));
    }
    let mut expected: Vec<usize> = inv_c
        .iter()
        .copied()
        .filter(|&i| c_over_inv[i])
        .collect();
    expected.sort_unstable();
    if image != expected {
        return Err(Error::violation(
            "correspondence is not onto the invariant characters of the fixed-point subgroup",
        ));
    }
    Ok(pairs)
}

/// Inertia-group transfer: with the hypotheses below, the stabilizer of
/// theta in H equals the stabilizer of its relative correspondent phi.
///
/// Hypotheses, all machine-verified: K and L normal in G with K/L a
/// p'-group; PK normal in G for P a Sylow p-subgroup; H = L N_G(P);
/// C = K ∩ H; x a p-element of H whose fixed points on K/L are exactly
/// C/L; theta an x-invariant irreducible of K.
#[allow(clippy::too_many_arguments)]
pub fn stabilizer_transfer_check(
    store: &TableStore,
    g: &Group,
    k: &Group,
    l: &Group,
    h: &Group,
    c: &Group,
    x: &Perm,
    theta_idx: usize,
    p: u64,
) -> Result<bool> {
    if !g.has_normal_subgroup(k) || !g.has_normal_subgroup(l) || !k.has_subgroup(l) {
        return Err(Error::input("need L <= K both normal in G"));
    }
    if !perm::order_is_p_prime(&(k.order() / l.order()), p) {
        return Err(Error::input("K/L must be a p'-group"));
    }
    let p_sylow = perm::sylow(g, p)?;
    let v = perm::product_subgroup(g.degree(), &p_sylow, k)?;
    if !g.has_normal_subgroup(&v) {
        return Err(Error::input("PK must be normal in G"));
    }
    let ngp = perm::normalizer(g, &p_sylow)?;
    let h_expected = perm::product_subgroup(g.degree(), l, &ngp)?;
    if h.order() != h_expected.order() || !h.has_subgroup(&h_expected) {
        return Err(Error::input("H must equal L N_G(P)"));
    }
    let c_expected = perm::intersection(k, h)?;
    if c.order() != c_expected.order() || !c.has_subgroup(&c_expected) {
        return Err(Error::input("C must equal K ∩ H"));
    }
    if !h.contains(x) || perm::p_part_biguint(&x.order().into(), p) != x.order().into() {
        return Err(Error::input("x must be a p-element of H"));
    }
    // Fixed points of x on K/L must be exactly C/L.
    let fixed = perm::subgroup_where(k, "fixed points of x", |e| {
        l.contains(&e.inverse().then(&e.conjugated_by(x)))
    })?;
    if fixed.order() != c.order() || !c.has_subgroup(&fixed) {
        return Err(Error::input("fixed points of x on K/L must be C/L"));
    }

    let actor = Group::generated(g.degree(), std::slice::from_ref(x))?;
    let ctx = CoprimeActionContext::new(g, k, l, &actor, p)?;
    let ktab = store.table(k)?;
    let theta = ktab.irreducible(theta_idx);
    let inv = invariant_irreducibles(&ktab, &actor)?;
    if !inv.contains(&theta_idx) {
        return Err(Error::input("theta must be x-invariant"));
    }
    let wit = relative_glauberman(store, &ctx, theta_idx)?;
    let ctab = store.table(c)?;
    let phi = ctab.irreducible(wit.phi);

    let h_theta = stabilizer_of_character(h, k, &ktab, &theta)?;
    let h_phi = stabilizer_of_character(h, c, &ctab, &phi)?;
    Ok(h_theta.order() == h_phi.order() && h_theta.has_subgroup(&h_phi))
}

/// Constituent-orbit check for a coprime action: for every actor-invariant
/// irreducible of the target, the actor-invariant constituents of its
/// restriction to the kernel are nonempty and form a single orbit under
/// conjugation by the fixed-point subgroup.
pub fn coprime_constituent_check(
    store: &TableStore,
    ctx: &CoprimeActionContext,
) -> Result<bool> {
    // Here the coprimality hypothesis is |K : N| coprime to |actor|;
    // the context already guarantees it for the actor's prime.
    let ktab = store.table(&ctx.target)?;
    let ntab = store.table(&ctx.kernel_sub)?;
    let inv_k = invariant_irreducibles(&ktab, &ctx.actor)?;
    let inv_n: std::collections::BTreeSet<usize> =
        invariant_irreducibles(&ntab, &ctx.actor)?.into_iter().collect();
    for &ki in &inv_k {
        let res = restrict(&ktab, &ktab.irreducible(ki), &ntab)?;
        let mults = ntab.decompose(&res)?;
        let constituents: Vec<usize> = (0..ntab.num_irr())
            .filter(|&i| !num::Zero::is_zero(&mults[i]))
            .collect();
        let invariant: Vec<usize> = constituents
            .iter()
            .copied()
            .filter(|i| inv_n.contains(i))
            .collect();
        if invariant.is_empty() {
            return Ok(false);
        }
        // Orbit of the first invariant constituent under the fixed-point
        // subgroup's conjugation.
        let base = ntab.irreducible(invariant[0]);
        let mut orbit: std::collections::BTreeSet<ClassFunction> = std::collections::BTreeSet::new();
        for c in ctx.fixed_sub.elements() {
            orbit.insert(conjugate_class_function(&ntab, &base, &c)?);
        }
        for &i in &invariant {
            if !orbit.contains(&ntab.irreducible(i)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
