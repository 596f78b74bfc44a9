//! Restriction, induction, Clifford sets, and character stabilizers.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;

use super::{CharacterTable, ClassFunction};
use crate::cyclo::Cyclotomic;
use crate::perm::{self, Group, Perm};
use crate::{Error, Result};

/// Restriction of a class function on the supergroup to the subgroup:
/// each class of `sub` is looked up inside `sup`.
pub fn restrict(
    sup: &CharacterTable,
    f: &ClassFunction,
    sub: &CharacterTable,
) -> Result<ClassFunction> {
    if !sup.group().has_subgroup(sub.group()) {
        return Err(Error::input("restrict requires H <= G"));
    }
    let values = sub
        .classes()
        .reps()
        .iter()
        .map(|rep| Ok(f.values[sup.classes().class_of(rep)?].clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction { values })
}

/// Induction by the standard transversal formula:
/// `f^G(g) = sum_t f0(t g t^{-1})` over right-coset representatives `t`
/// of H in G, where `f0` vanishes outside H.
pub fn induce(
    sub: &CharacterTable,
    f: &ClassFunction,
    sup: &CharacterTable,
) -> Result<ClassFunction> {
    if !sup.group().has_subgroup(sub.group()) {
        return Err(Error::input("induce requires H <= G"));
    }
    let transversal = sup.group().right_transversal(sub.group())?;
    let mut values = Vec::with_capacity(sup.classes().count());
    for g in sup.classes().reps() {
        let mut acc = Cyclotomic::zero();
        for t in &transversal {
            let y = g.conjugated_by(&t.inverse()); // t g t^{-1}
            if sub.group().contains(&y) {
                acc = acc.add(&f.values[sub.classes().class_of(&y)?]);
            }
        }
        values.push(acc);
    }
    Ok(ClassFunction { values })
}

/// Induced value at one element through the normal-complement diamond:
/// when `K` is normal in `G` and `G = KH`, with `M = K ∩ H`,
/// `f^G(h) = (1/|M|) * sum over k in K with k h k^{-1} in H of f(khk^{-1})`.
pub fn induced_value_diamond(
    sub: &CharacterTable,
    f: &ClassFunction,
    g_group: &Group,
    k_group: &Group,
    h: &Perm,
) -> Result<Cyclotomic> {
    let h_group = sub.group();
    if !g_group.has_normal_subgroup(k_group) {
        return Err(Error::input("diamond induction requires K normal in G"));
    }
    if !g_group.has_subgroup(h_group) {
        return Err(Error::input("diamond induction requires H <= G"));
    }
    let meet = perm::intersection(k_group, h_group)?;
    if !perm::is_set_product(g_group, k_group, h_group, &meet) {
        return Err(Error::input("diamond induction requires G = KH"));
    }
    if h.degree() != g_group.degree() || !g_group.contains(h) {
        return Err(Error::input("element must lie in G"));
    }
    let mut acc = Cyclotomic::zero();
    for k in k_group.elements() {
        let y = h.conjugated_by(&k.inverse()); // k h k^{-1}
        if h_group.contains(&y) {
            acc = acc.add(&f.values[sub.classes().class_of(&y)?]);
        }
    }
    let m_order = BigRational::new(BigInt::one(), BigInt::from(meet.order_u64()?));
    Ok(acc.scale(&m_order))
}

/// Clifford set `Irr(G | theta)`: indices of irreducibles of `sup` whose
/// restriction to the normal subgroup contains `theta`.
pub fn irr_over(
    sup: &CharacterTable,
    sub: &CharacterTable,
    theta: &ClassFunction,
) -> Result<Vec<usize>> {
    if !sup.group().has_normal_subgroup(sub.group()) {
        return Err(Error::input("irr_over requires K normal in G"));
    }
    require_irreducible(sub, theta)?;
    let mut out = Vec::new();
    for i in 0..sup.num_irr() {
        let res = restrict(sup, &sup.irreducible(i), sub)?;
        if sub.inner_u64(&res, theta)? != 0 {
            out.push(i);
        }
    }
    Ok(out)
}

pub(crate) fn require_irreducible(table: &CharacterTable, f: &ClassFunction) -> Result<()> {
    let norm = table.inner(f, f)?;
    let degree_ok = f.degree().map(|d| d > BigInt::from(0)).unwrap_or(false);
    if norm != BigRational::one() || !degree_ok {
        return Err(Error::input("class function is not an irreducible character"));
    }
    Ok(())
}

/// The conjugate class function `f^g` on `K`, defined by
/// `f^g(k) = f(g k g^{-1})`; requires `g` to normalize `K`.
pub fn conjugate_class_function(
    ktab: &CharacterTable,
    f: &ClassFunction,
    g: &Perm,
) -> Result<ClassFunction> {
    let g_inv = g.inverse();
    let values = ktab
        .classes()
        .reps()
        .iter()
        .map(|k| {
            let conj = k.conjugated_by(&g_inv); // g k g^{-1}
            Ok(f.values[ktab.classes().class_of(&conj)?].clone())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction { values })
}

/// Stabilizer `{ g in G : theta^g = theta }` of a character of `K`, by a
/// scan over the chain of `G`. `G` must normalize `K` (it need not
/// contain it).
pub fn stabilizer_of_character(
    g_group: &Group,
    k_group: &Group,
    ktab: &CharacterTable,
    theta: &ClassFunction,
) -> Result<Group> {
    if !g_group.normalizes(k_group) {
        return Err(Error::input("character stabilizer requires G to normalize K"));
    }
    let reps = ktab.classes().reps();
    perm::subgroup_where(g_group, "character stabilizer", |g| {
        let g_inv = g.inverse();
        reps.iter().enumerate().all(|(i, k)| {
            let conj = k.conjugated_by(&g_inv);
            match ktab.classes().class_of(&conj) {
                Ok(ci) => theta.values[ci] == theta.values[i],
                Err(_) => false,
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;

    fn table(name: &str) -> CharacterTable {
        CharacterTable::build(&groups::by_name(name).unwrap()).unwrap()
    }

    #[test]
    fn restriction_of_trivial_is_trivial() {
        let s4 = table("S4");
        let s3sub = Group::from_generators(
            4,
            vec![
                Perm::parse_cycles("(1,2,3)", 4).unwrap(),
                Perm::parse_cycles("(1,2)", 4).unwrap(),
            ],
        )
        .unwrap();
        let s3tab = CharacterTable::build(&s3sub).unwrap();
        let trivial_idx = (0..s4.num_irr())
            .find(|&i| s4.row(i).iter().all(|v| *v == Cyclotomic::one()))
            .unwrap();
        let res = restrict(&s4, &s4.irreducible(trivial_idx), &s3tab).unwrap();
        assert!(res.values.iter().all(|v| *v == Cyclotomic::one()));
        assert_eq!(s3tab.inner_u64(&res, &res).unwrap(), 1);
    }

    #[test]
    fn induce_trivial_degree_is_index() {
        let s4 = table("S4");
        let c2 = Group::from_generators(4, vec![Perm::parse_cycles("(1,2)", 4).unwrap()]).unwrap();
        let c2tab = CharacterTable::build(&c2).unwrap();
        let trivial_idx = (0..2)
            .find(|&i| c2tab.row(i).iter().all(|v| *v == Cyclotomic::one()))
            .unwrap();
        let ind = induce(&c2tab, &c2tab.irreducible(trivial_idx), &s4).unwrap();
        assert_eq!(ind.degree().unwrap(), BigInt::from(12));
    }

    #[test]
    fn diamond_agrees_with_standard_induction_on_s3() {
        // G = S3, K = A3 (normal), H = <(1,2)>, delta nontrivial on H:
        // delta^G((1,2)) = -1 by both formulas.
        let g = groups::symmetric(3).unwrap();
        let gtab = CharacterTable::build(&g).unwrap();
        let k = Group::from_generators(3, vec![Perm::parse_cycles("(1,2,3)", 3).unwrap()]).unwrap();
        let h = Group::from_generators(3, vec![Perm::parse_cycles("(1,2)", 3).unwrap()]).unwrap();
        let htab = CharacterTable::build(&h).unwrap();
        let sign_idx = (0..2)
            .find(|&i| !htab.row(i).iter().all(|v| *v == Cyclotomic::one()))
            .unwrap();
        let delta = htab.irreducible(sign_idx);
        let x = Perm::parse_cycles("(1,2)", 3).unwrap();
        let standard = induce(&htab, &delta, &gtab).unwrap();
        let std_val = gtab.value_at(&standard, &x).unwrap();
        let diamond = induced_value_diamond(&htab, &delta, &g, &k, &x).unwrap();
        assert_eq!(std_val, diamond);
        assert_eq!(std_val.as_integer().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn stabilizer_contains_the_normal_subgroup() {
        let sl = groups::sl2_3().unwrap();
        let q8 = perm::p_prime_p_residual(&sl, 3).unwrap();
        let qtab = CharacterTable::build(&q8).unwrap();
        for i in 0..qtab.num_irr() {
            let st = stabilizer_of_character(&sl, &q8, &qtab, &qtab.irreducible(i)).unwrap();
            assert!(st.has_subgroup(&q8));
        }
    }
}
