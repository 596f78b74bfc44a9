//! Oracles for the character-table layer.
//!
//! Two independent checks back the modular method:
//!
//! * classical tables of S4, Q8, SL(2,3) are frozen here as explicit
//!   values at explicit representatives, re-verified for orthogonality
//!   inside the test (so the oracle itself is checked), and compared
//!   row-for-row against the computed tables;
//! * degree multisets are recovered independently from brute-force group
//!   data alone: class count, abelianization order, divisibility, and the
//!   degree-square sum pin a unique solution for the corpus groups.

use std::collections::BTreeSet;

use num::bigint::BigInt;
use num::rational::BigRational;

use charcheck::chartab::ops::{
    induce, induced_value_diamond, irr_over, restrict, stabilizer_of_character,
};
use charcheck::chartab::{CharacterTable, ClassFunction};
use charcheck::cyclo::Cyclotomic;
use charcheck::groups;
use charcheck::perm::*;

fn cyc(v: i64) -> Cyclotomic {
    Cyclotomic::from_integer(v)
}

fn omega(e: u64) -> Cyclotomic {
    Cyclotomic::root_of_unity(3, e).unwrap()
}

/// A frozen table: representatives and the value matrix at them.
struct FrozenTable {
    reps: Vec<Perm>,
    sizes: Vec<u64>,
    rows: Vec<Vec<Cyclotomic>>,
}

impl FrozenTable {
    /// Verifies the frozen data itself: row orthogonality with the stated
    /// sizes. This guards the oracle against transcription mistakes.
    fn self_check(&self, order: u64) {
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                let mut acc = Cyclotomic::zero();
                for k in 0..self.reps.len() {
                    let term = a[k]
                        .mul(&b[k].conj())
                        .scale(&BigRational::from_integer(BigInt::from(self.sizes[k])));
                    acc = acc.add(&term);
                }
                let expected = if i == j { BigInt::from(order) } else { BigInt::from(0) };
                assert_eq!(acc.as_integer(), Some(expected), "frozen rows {i},{j}");
            }
        }
    }

    /// Every frozen row appears exactly once among the computed rows.
    fn matches(&self, t: &CharacterTable) {
        for (i, frozen) in self.rows.iter().enumerate() {
            let hits = (0..t.num_irr())
                .filter(|&r| {
                    let chi = t.irreducible(r);
                    self.reps
                        .iter()
                        .zip(frozen)
                        .all(|(g, v)| t.value_at(&chi, g).unwrap() == *v)
                })
                .count();
            assert_eq!(hits, 1, "frozen row {i} matched {hits} computed rows");
        }
    }
}

fn s4_frozen() -> FrozenTable {
    let p = |s: &str| Perm::parse_cycles(s, 4).unwrap();
    FrozenTable {
        reps: vec![p("()"), p("(1,2)"), p("(1,2)(3,4)"), p("(1,2,3)"), p("(1,2,3,4)")],
        sizes: vec![1, 6, 3, 8, 6],
        rows: vec![
            vec![cyc(1), cyc(1), cyc(1), cyc(1), cyc(1)],
            vec![cyc(1), cyc(-1), cyc(1), cyc(1), cyc(-1)],
            vec![cyc(2), cyc(0), cyc(2), cyc(-1), cyc(0)],
            vec![cyc(3), cyc(1), cyc(-1), cyc(0), cyc(-1)],
            vec![cyc(3), cyc(-1), cyc(-1), cyc(0), cyc(1)],
        ],
    }
}

fn q8_frozen() -> FrozenTable {
    let q8 = groups::quaternion().unwrap();
    let a = q8.generators()[0].clone();
    let b = q8.generators()[1].clone();
    FrozenTable {
        reps: vec![
            Perm::identity(8),
            a.pow(2),
            a.clone(),
            b.clone(),
            a.then(&b),
        ],
        sizes: vec![1, 1, 2, 2, 2],
        rows: vec![
            vec![cyc(1), cyc(1), cyc(1), cyc(1), cyc(1)],
            vec![cyc(1), cyc(1), cyc(1), cyc(-1), cyc(-1)],
            vec![cyc(1), cyc(1), cyc(-1), cyc(1), cyc(-1)],
            vec![cyc(1), cyc(1), cyc(-1), cyc(-1), cyc(1)],
            vec![cyc(2), cyc(-2), cyc(0), cyc(0), cyc(0)],
        ],
    }
}

fn sl23_frozen() -> FrozenTable {
    let sl = groups::sl2_3().unwrap();
    let s = sl.generators()[0].clone(); // order 4
    let t = sl.generators()[1].clone(); // order 3
    let z = s.pow(2); // the central involution
    assert_eq!(s.order(), 4);
    assert_eq!(t.order(), 3);
    assert_eq!(z.order(), 2);
    let w = omega(1);
    let w2 = omega(2);
    // Classes: 1, z, order-4, t, t^2, z t, z t^2.
    FrozenTable {
        reps: vec![
            Perm::identity(8),
            z.clone(),
            s.clone(),
            t.clone(),
            t.pow(2),
            z.then(&t),
            z.then(&t.pow(2)),
        ],
        sizes: vec![1, 1, 6, 4, 4, 4, 4],
        rows: vec![
            vec![cyc(1), cyc(1), cyc(1), cyc(1), cyc(1), cyc(1), cyc(1)],
            vec![cyc(1), cyc(1), cyc(1), w.clone(), w2.clone(), w.clone(), w2.clone()],
            vec![cyc(1), cyc(1), cyc(1), w2.clone(), w.clone(), w2.clone(), w.clone()],
            vec![cyc(2), cyc(-2), cyc(0), cyc(-1), cyc(-1), cyc(1), cyc(1)],
            vec![
                cyc(2),
                cyc(-2),
                cyc(0),
                w.neg(),
                w2.neg(),
                w.clone(),
                w2.clone(),
            ],
            vec![
                cyc(2),
                cyc(-2),
                cyc(0),
                w2.neg(),
                w.neg(),
                w2.clone(),
                w.clone(),
            ],
            vec![cyc(3), cyc(3), cyc(-1), cyc(0), cyc(0), cyc(0), cyc(0)],
        ],
    }
}

#[test]
fn frozen_tables_match_computed_tables() {
    for (name, frozen, order) in [
        ("S4", s4_frozen(), 24u64),
        ("Q8", q8_frozen(), 8),
        ("SL(2,3)", sl23_frozen(), 24),
    ] {
        frozen.self_check(order);
        let g = groups::by_name(name).unwrap();
        let t = CharacterTable::build(&g).unwrap();
        frozen.matches(&t);
    }
}

/// Degree multiset pinned down by brute-force group data alone.
fn degree_multiset_oracle(g: &Group) -> Vec<u64> {
    let degree = g.degree();
    // Brute element enumeration (no chains).
    let mut elements: BTreeSet<Perm> = BTreeSet::new();
    elements.insert(Perm::identity(degree));
    loop {
        let fresh: Vec<Perm> = elements
            .iter()
            .flat_map(|e| g.generators().iter().map(move |s| e.then(s)))
            .filter(|x| !elements.contains(x))
            .collect();
        if fresh.is_empty() {
            break;
        }
        elements.extend(fresh);
    }
    let order = elements.len() as u64;
    // Class count by conjugation orbits.
    let mut remaining = elements.clone();
    let mut class_count = 0usize;
    while let Some(rep) = remaining.iter().next().cloned() {
        for t in &elements {
            remaining.remove(&rep.conjugated_by(t));
        }
        class_count += 1;
    }
    // Linear character count = |G : G'| with G' the brute derived subgroup.
    let commutators: Vec<Perm> = elements
        .iter()
        .flat_map(|a| {
            elements
                .iter()
                .map(move |b| a.inverse().then(&b.inverse()).then(a).then(b))
        })
        .collect();
    let mut derived: BTreeSet<Perm> = BTreeSet::new();
    derived.insert(Perm::identity(degree));
    loop {
        let fresh: Vec<Perm> = derived
            .iter()
            .flat_map(|e| commutators.iter().map(move |c| e.then(c)))
            .filter(|x| !derived.contains(x))
            .collect();
        if fresh.is_empty() {
            break;
        }
        derived.extend(fresh);
    }
    let linear = order / derived.len() as u64;
    // Unique sorted multiset of nonlinear degrees with sum of squares
    // |G| - linear, each dividing |G|.
    let nonlinear = class_count - linear as usize;
    let divisors: Vec<u64> = (2..=order).filter(|d| order % d == 0).collect();
    let mut solutions = Vec::new();
    let mut current = Vec::new();
    fn search(
        divisors: &[u64],
        start: usize,
        slots: usize,
        target: u64,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if slots == 0 {
            if target == 0 {
                out.push(current.clone());
            }
            return;
        }
        for (i, &d) in divisors.iter().enumerate().skip(start) {
            if d * d > target {
                break;
            }
            current.push(d);
            search(divisors, i, slots - 1, target - d * d, current, out);
            current.pop();
        }
    }
    search(
        &divisors,
        0,
        nonlinear,
        order - linear,
        &mut current,
        &mut solutions,
    );
    assert_eq!(
        solutions.len(),
        1,
        "degree oracle must be unambiguous (|G|={order}, r={class_count}, lin={linear})"
    );
    let mut degrees = vec![1u64; linear as usize];
    degrees.extend(&solutions[0]);
    degrees
}

#[test]
fn degrees_match_brute_forced_oracle() {
    for name in [
        "S3", "S4", "A4", "A5", "Q8", "SL(2,3)", "GL(2,3)", "F20", "F21", "D9", "D10", "C12",
        "ES27",
    ] {
        let g = groups::by_name(name).unwrap();
        let t = CharacterTable::build(&g).unwrap();
        let oracle = degree_multiset_oracle(&g);
        assert_eq!(t.degrees(), &oracle[..], "{name} degrees");
        // Degrees divide the group order.
        let order = g.order_u64().unwrap();
        assert!(t.degrees().iter().all(|d| order % d == 0));
    }
}

#[test]
fn value_examples_from_the_table() {
    let s4 = groups::symmetric(4).unwrap();
    let t = CharacterTable::build(&s4).unwrap();
    // Any character at the identity gives its degree.
    for i in 0..t.num_irr() {
        let chi = t.irreducible(i);
        assert_eq!(
            t.value_at(&chi, &Perm::identity(4)).unwrap().as_integer(),
            Some(BigInt::from(t.degrees()[i]))
        );
    }
    // The degree-2 character of S4 takes -1 on 3-cycles.
    let deg2 = (0..t.num_irr()).find(|&i| t.degrees()[i] == 2).unwrap();
    let x = Perm::parse_cycles("(1,2,3)", 4).unwrap();
    assert_eq!(
        t.value_at(&t.irreducible(deg2), &x).unwrap(),
        Cyclotomic::from_integer(-1)
    );
    // Element outside the group is an input error.
    let t3 = CharacterTable::build(&groups::cyclic(3).unwrap()).unwrap();
    assert!(t3
        .value_at(&t3.irreducible(0), &Perm::parse_cycles("(1,2)", 3).unwrap())
        .is_err());
}

#[test]
fn restriction_examples() {
    // deg-2 of S4 restricted to S3 is the deg-2 irreducible of S3.
    let s4 = groups::symmetric(4).unwrap();
    let t4 = CharacterTable::build(&s4).unwrap();
    let s3 = Group::from_generators(
        4,
        vec![
            Perm::parse_cycles("(1,2,3)", 4).unwrap(),
            Perm::parse_cycles("(1,2)", 4).unwrap(),
        ],
    )
    .unwrap();
    let t3 = CharacterTable::build(&s3).unwrap();
    let deg2 = (0..5).find(|&i| t4.degrees()[i] == 2).unwrap();
    let res = restrict(&t4, &t4.irreducible(deg2), &t3).unwrap();
    let target = (0..3).find(|&i| t3.degrees()[i] == 2).unwrap();
    assert_eq!(res, t3.irreducible(target));

    // theta2 of Q8 restricted to the center is 2 * (faithful linear).
    let q8 = groups::quaternion().unwrap();
    let tq = CharacterTable::build(&q8).unwrap();
    let z = centralizer(&q8, &Perm::identity(8)).unwrap(); // whole group
    assert_eq!(z.order_u64().unwrap(), 8);
    let center = Group::from_generators(8, vec![q8.generators()[0].pow(2)]).unwrap();
    let tz = CharacterTable::build(&center).unwrap();
    let theta2 = (0..5).find(|&i| tq.degrees()[i] == 2).unwrap();
    let res = restrict(&tq, &tq.irreducible(theta2), &tz).unwrap();
    let lambda = (0..2)
        .find(|&i| !tz.row(i).iter().all(|v| *v == Cyclotomic::one()))
        .unwrap();
    assert_eq!(tz.inner_u64(&res, &tz.irreducible(lambda)).unwrap(), 2);

    // Induction of the faithful central character back to Q8 is 2*theta2.
    let ind = induce(&tz, &tz.irreducible(lambda), &tq).unwrap();
    assert_eq!(ind.degree().unwrap(), BigInt::from(4));
    assert_eq!(tq.inner_u64(&ind, &tq.irreducible(theta2)).unwrap(), 2);
}

#[test]
fn clifford_sets_for_sl23_over_q8() {
    let sl = groups::sl2_3().unwrap();
    let tsl = CharacterTable::build(&sl).unwrap();
    let q8 = p_prime_p_residual(&sl, 3).unwrap();
    let tq = CharacterTable::build(&q8).unwrap();
    let trivial_idx = (0..tq.num_irr())
        .find(|&i| tq.row(i).iter().all(|v| *v == Cyclotomic::one()))
        .unwrap();
    let over_trivial = irr_over(&tsl, &tq, &tq.irreducible(trivial_idx)).unwrap();
    assert_eq!(over_trivial.len(), 3);
    assert!(over_trivial.iter().all(|&i| tsl.degrees()[i] == 1));
    let theta2 = (0..tq.num_irr()).find(|&i| tq.degrees()[i] == 2).unwrap();
    let over_theta2 = irr_over(&tsl, &tq, &tq.irreducible(theta2)).unwrap();
    assert_eq!(over_theta2.len(), 3);
    assert!(over_theta2.iter().all(|&i| tsl.degrees()[i] == 2));
    // Non-irreducible theta is rejected.
    let bogus = tq.irreducible(trivial_idx).scale_int(2);
    assert!(irr_over(&tsl, &tq, &bogus).is_err());
}

#[test]
fn character_stabilizers_in_sl23() {
    let sl = groups::sl2_3().unwrap();
    let q8 = p_prime_p_residual(&sl, 3).unwrap();
    let tq = CharacterTable::build(&q8).unwrap();
    // The three nontrivial linear characters have stabilizer Q8 itself.
    for i in 0..tq.num_irr() {
        let chi = tq.irreducible(i);
        let st = stabilizer_of_character(&sl, &q8, &tq, &chi).unwrap();
        if tq.degrees()[i] == 2 || chi.values.iter().all(|v| *v == Cyclotomic::one()) {
            assert_eq!(st.order_u64().unwrap(), 24, "invariant character");
        } else {
            assert_eq!(st.order_u64().unwrap(), 8, "permuted linear character");
        }
        assert!(st.has_subgroup(&q8));
    }
}

#[test]
fn frobenius_reciprocity_and_diamond_agreement() {
    // (G, H) pairs: all irreducibles delta of H and chi of G satisfy
    // <delta^G, chi> = <delta, chi|_H>.
    let s4 = groups::symmetric(4).unwrap();
    let sl = groups::sl2_3().unwrap();
    let pairs: Vec<(Group, Group)> = vec![
        (
            s4.clone(),
            Group::from_generators(
                4,
                vec![
                    Perm::parse_cycles("(1,2,3)", 4).unwrap(),
                    Perm::parse_cycles("(1,2)", 4).unwrap(),
                ],
            )
            .unwrap(),
        ),
        (s4.clone(), sylow(&s4, 2).unwrap()),
        (sl.clone(), p_prime_p_residual(&sl, 3).unwrap()),
        (sl.clone(), sylow(&sl, 3).unwrap()),
    ];
    for (g, h) in pairs {
        let tg = CharacterTable::build(&g).unwrap();
        let th = CharacterTable::build(&h).unwrap();
        for d in 0..th.num_irr() {
            let delta = th.irreducible(d);
            let ind = induce(&th, &delta, &tg).unwrap();
            for c in 0..tg.num_irr() {
                let chi = tg.irreducible(c);
                let res = restrict(&tg, &chi, &th).unwrap();
                assert_eq!(
                    tg.inner(&ind, &chi).unwrap(),
                    th.inner(&delta, &res).unwrap(),
                    "reciprocity"
                );
            }
        }
    }

    // Diamond formula agrees with standard induction on every element of
    // G = KH configurations.
    let v4 = normal_closure(&s4, &[Perm::parse_cycles("(1,2)(3,4)", 4).unwrap()]).unwrap();
    let s3 = Group::from_generators(
        4,
        vec![
            Perm::parse_cycles("(1,2,3)", 4).unwrap(),
            Perm::parse_cycles("(1,2)", 4).unwrap(),
        ],
    )
    .unwrap();
    let q8 = p_prime_p_residual(&sl, 3).unwrap();
    let c6 = {
        let z = sylow(&centralizer(&sl, &sylow(&sl, 3).unwrap().generators()[0]).unwrap(), 2)
            .unwrap();
        let mut gens = sylow(&sl, 3).unwrap().generators().to_vec();
        gens.extend_from_slice(z.generators());
        Group::from_generators(8, gens).unwrap()
    };
    assert_eq!(c6.order_u64().unwrap(), 6);
    let configs: Vec<(Group, Group, Group)> =
        vec![(s4.clone(), v4, s3), (sl.clone(), q8, c6)];
    for (g, k, h) in configs {
        let tg = CharacterTable::build(&g).unwrap();
        let th = CharacterTable::build(&h).unwrap();
        for d in 0..th.num_irr() {
            let delta = th.irreducible(d);
            let standard = induce(&th, &delta, &tg).unwrap();
            for x in h.elements() {
                let lhs = tg.value_at(&standard, &x).unwrap();
                let rhs = induced_value_diamond(&th, &delta, &g, &k, &x).unwrap();
                assert_eq!(lhs, rhs, "diamond agreement");
            }
        }
        // Mis-specified diamond (G != KH) is an input error.
        let tiny = Group::trivial(g.degree());
        let t_tiny = CharacterTable::build(&tiny).unwrap();
        assert!(induced_value_diamond(
            &t_tiny,
            &t_tiny.irreducible(0),
            &g,
            &k,
            &Perm::identity(g.degree())
        )
        .is_err());
    }
}

#[test]
fn table_cache_round_trip_via_store() {
    use charcheck::chartab::TableStore;
    let dir = tempfile::tempdir().unwrap();
    let g = groups::by_name("F21").unwrap();
    {
        let store = TableStore::new(Some(dir.path().to_path_buf()));
        store.table(&g).unwrap();
    }
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let first = std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    // Reload from disk; bytes are unchanged afterwards.
    {
        let store = TableStore::new(Some(dir.path().to_path_buf()));
        let t = store.table(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 3, 3]);
    }
    let second = std::fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    assert_eq!(first, second);
}

#[test]
fn class_function_arithmetic() {
    let t = CharacterTable::build(&groups::cyclic(6).unwrap()).unwrap();
    let a = t.irreducible(1);
    let b = t.irreducible(2);
    let combo = a.add(&b).sub(&a);
    assert_eq!(combo, b);
    assert!(ClassFunction::zero(6).is_zero());
    assert_eq!(a.scale_int(3).degree().unwrap(), BigInt::from(3));
}
