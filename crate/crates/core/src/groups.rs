//! Named group constructors.
//!
//! Every constructor returns a verified group of the documented order;
//! the CLI resolves `--group` names through [`by_name`].

use crate::perm::{Group, Perm};
use crate::{Error, Result};

fn image_perm(degree: usize, f: impl Fn(usize) -> usize) -> Perm {
    Perm::from_images((0..degree).map(|i| f(i) as u32).collect())
        .expect("constructor images are bijections")
}

fn checked(name: &str, degree: usize, gens: Vec<Perm>, order: u64) -> Result<Group> {
    let g = Group::from_generators(degree, gens)?;
    if g.order_u64()? != order {
        return Err(Error::internal(format!(
            "constructor {name} built a group of order {} instead of {order}",
            g.order()
        )));
    }
    Ok(g)
}

/// Cyclic group of order n, acting naturally on n points (C1 is the
/// trivial group on one point).
pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::input("cyclic group order must be positive"));
    }
    if n == 1 {
        return Ok(Group::trivial(1));
    }
    let rot = image_perm(n, |i| (i + 1) % n);
    checked("Cn", n, vec![rot], n as u64)
}

/// Symmetric group on n points.
pub fn symmetric(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::input("symmetric group needs n >= 1"));
    }
    if n == 1 {
        return Ok(Group::trivial(1));
    }
    let cycle = image_perm(n, |i| (i + 1) % n);
    let swap = image_perm(n, |i| match i {
        0 => 1,
        1 => 0,
        _ => i,
    });
    checked("Sn", n, vec![cycle, swap], factorial(n))
}

/// Alternating group on n points.
pub fn alternating(n: usize) -> Result<Group> {
    if n <= 2 {
        return Ok(Group::trivial(n.max(1)));
    }
    let three_cycle = image_perm(n, |i| match i {
        0 => 1,
        1 => 2,
        2 => 0,
        _ => i,
    });
    let big = if n % 2 == 1 {
        image_perm(n, |i| (i + 1) % n)
    } else {
        // (2,3,...,n)
        image_perm(n, |i| if i == 0 { 0 } else { i % (n - 1) + 1 })
    };
    checked("An", n, vec![three_cycle, big], factorial(n) / 2)
}

/// Dihedral group of order 2n acting on the n-gon (D1 = C2, D2 = V4).
pub fn dihedral(n: usize) -> Result<Group> {
    match n {
        0 => Err(Error::input("dihedral parameter must be positive")),
        1 => checked("D1", 2, vec![image_perm(2, |i| 1 - i)], 2),
        2 => checked(
            "D2",
            4,
            vec![
                Perm::parse_cycles("(1,2)", 4)?,
                Perm::parse_cycles("(3,4)", 4)?,
            ],
            4,
        ),
        _ => {
            let rot = image_perm(n, |i| (i + 1) % n);
            let refl = image_perm(n, |i| (n - i) % n);
            checked("Dn", n, vec![rot, refl], 2 * n as u64)
        }
    }
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> Result<Group> {
    let a = Perm::parse_cycles("(1,2,3,4)(5,6,7,8)", 8)?;
    let b = Perm::parse_cycles("(1,5,3,7)(2,8,4,6)", 8)?;
    checked("Q8", 8, vec![a, b], 8)
}

fn gl2_3_action(m: [[u64; 2]; 2]) -> Perm {
    // Points are the nonzero vectors of F3^2 in the fixed order below.
    let vectors: Vec<(u64, u64)> = (0..3u64)
        .flat_map(|a| (0..3u64).map(move |b| (a, b)))
        .filter(|&(a, b)| (a, b) != (0, 0))
        .collect();
    let index = |v: (u64, u64)| vectors.iter().position(|&w| w == v).unwrap();
    let images: Vec<u32> = vectors
        .iter()
        .map(|&(a, b)| {
            let va = (m[0][0] * a + m[0][1] * b) % 3;
            let vb = (m[1][0] * a + m[1][1] * b) % 3;
            index((va, vb)) as u32
        })
        .collect();
    Perm::from_images(images).expect("matrix action is a bijection")
}

/// SL(2,3) acting on the 8 nonzero vectors of F3^2.
pub fn sl2_3() -> Result<Group> {
    let s = gl2_3_action([[0, 2], [1, 0]]);
    let t = gl2_3_action([[1, 1], [0, 1]]);
    checked("SL(2,3)", 8, vec![s, t], 24)
}

/// GL(2,3) acting on the 8 nonzero vectors of F3^2.
pub fn gl2_3() -> Result<Group> {
    let s = gl2_3_action([[0, 2], [1, 0]]);
    let t = gl2_3_action([[1, 1], [0, 1]]);
    let d = gl2_3_action([[1, 0], [0, 2]]);
    checked("GL(2,3)", 8, vec![s, t, d], 48)
}

/// Frobenius group of order 20 (C5 : C4, the affine group of F5).
pub fn frobenius20() -> Result<Group> {
    let shift = image_perm(5, |i| (i + 1) % 5);
    let mult = image_perm(5, |i| (2 * i) % 5);
    checked("F20", 5, vec![shift, mult], 20)
}

/// Frobenius group of order 21 (C7 : C3).
pub fn frobenius21() -> Result<Group> {
    let shift = image_perm(7, |i| (i + 1) % 7);
    let mult = image_perm(7, |i| (2 * i) % 7);
    checked("F21", 7, vec![shift, mult], 21)
}

/// Extraspecial group of order 27 and exponent 3, acting on F3 x F3 by
/// the affine maps (i,j) -> (i+1,j) and (i,j) -> (i,j+i).
pub fn extraspecial27() -> Result<Group> {
    let a = image_perm(9, |x| {
        let (i, j) = (x / 3, x % 3);
        ((i + 1) % 3) * 3 + j
    });
    let b = image_perm(9, |x| {
        let (i, j) = (x / 3, x % 3);
        i * 3 + (j + i) % 3
    });
    checked("ES27", 9, vec![a, b], 27)
}

/// The extension of the exponent-3 extraspecial group of order 27 by the
/// order-2 automorphism inverting it modulo its center.
pub fn extraspecial27_c2() -> Result<Group> {
    let e = extraspecial27()?;
    let inv = image_perm(9, |x| {
        let (i, j) = (x / 3, x % 3);
        ((3 - i) % 3) * 3 + j
    });
    let mut gens = e.generators().to_vec();
    gens.push(inv);
    checked("ES27C2", 9, gens, 54)
}

/// Direct product acting on the disjoint union of the factors' points.
pub fn direct_product(factors: &[Group]) -> Result<Group> {
    if factors.is_empty() {
        return Err(Error::input("direct product needs at least one factor"));
    }
    let degree: usize = factors.iter().map(|g| g.degree()).sum();
    let mut gens = Vec::new();
    let mut offset = 0usize;
    for f in factors {
        for g in f.generators() {
            let images: Vec<u32> = (0..degree)
                .map(|i| {
                    if i >= offset && i < offset + f.degree() {
                        (g.apply(i - offset) + offset) as u32
                    } else {
                        i as u32
                    }
                })
                .collect();
            gens.push(Perm::from_images(images)?);
        }
        offset += f.degree();
    }
    let expected: num::BigUint = factors.iter().map(|f| f.order().clone()).product();
    let g = Group::from_generators(degree, gens)?;
    if g.order() != &expected {
        return Err(Error::internal("direct product order mismatch"));
    }
    Ok(g)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Resolves a group name: `C<n>`, `S<n>` (n <= 6), `A<n>` (n <= 6),
/// `D<n>` (order 2n, n <= 20), `Q8`, `SL(2,3)`/`SL23`, `GL(2,3)`/`GL23`,
/// `F20`, `F21`, `ES27`, `ES27C2`, and `prod:<name>,<name>,...`.
pub fn by_name(name: &str) -> Result<Group> {
    let name = name.trim();
    let upper = name.to_ascii_uppercase();
    if let Some(rest) = upper.strip_prefix("PROD:") {
        let factors = rest.split(',').map(by_name).collect::<Result<Vec<_>>>()?;
        return direct_product(&factors);
    }
    match upper.as_str() {
        "Q8" => return quaternion(),
        "SL(2,3)" | "SL23" => return sl2_3(),
        "GL(2,3)" | "GL23" => return gl2_3(),
        "F20" => return frobenius20(),
        "F21" => return frobenius21(),
        "ES27" => return extraspecial27(),
        "ES27C2" => return extraspecial27_c2(),
        _ => {}
    }
    if let Some(n) = parse_family(&upper, 'C') {
        return cyclic(n);
    }
    if let Some(n) = parse_family(&upper, 'S') {
        if n > 6 {
            return Err(Error::input(format!("S{n} exceeds the shipped range n <= 6")));
        }
        return symmetric(n);
    }
    if let Some(n) = parse_family(&upper, 'A') {
        if n > 6 {
            return Err(Error::input(format!("A{n} exceeds the shipped range n <= 6")));
        }
        return alternating(n);
    }
    if let Some(n) = parse_family(&upper, 'D') {
        if n > 20 {
            return Err(Error::input(format!("D{n} exceeds the shipped range n <= 20")));
        }
        return dihedral(n);
    }
    Err(Error::input(format!("unknown group name: {name}")))
}

fn parse_family(name: &str, letter: char) -> Option<usize> {
    let rest = name.strip_prefix(letter)?;
    rest.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_orders() {
        assert_eq!(by_name("C12").unwrap().order_u64().unwrap(), 12);
        assert_eq!(by_name("S4").unwrap().order_u64().unwrap(), 24);
        assert_eq!(by_name("A5").unwrap().order_u64().unwrap(), 60);
        assert_eq!(by_name("A6").unwrap().order_u64().unwrap(), 360);
        assert_eq!(by_name("D20").unwrap().order_u64().unwrap(), 40);
        assert_eq!(by_name("Q8").unwrap().order_u64().unwrap(), 8);
        assert_eq!(by_name("SL(2,3)").unwrap().order_u64().unwrap(), 24);
        assert_eq!(by_name("GL23").unwrap().order_u64().unwrap(), 48);
        assert_eq!(by_name("F20").unwrap().order_u64().unwrap(), 20);
        assert_eq!(by_name("F21").unwrap().order_u64().unwrap(), 21);
        assert_eq!(by_name("ES27").unwrap().order_u64().unwrap(), 27);
        assert_eq!(by_name("ES27C2").unwrap().order_u64().unwrap(), 54);
        assert_eq!(by_name("prod:S3,C7").unwrap().order_u64().unwrap(), 42);
        assert!(by_name("S9").is_err());
        assert!(by_name("X99").is_err());
    }

    #[test]
    fn q8_has_unique_involution() {
        let q8 = quaternion().unwrap();
        let involutions = q8.elements().into_iter().filter(|e| e.order() == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn extraspecial_is_nonabelian_of_exponent_3() {
        let e = extraspecial27().unwrap();
        let gens = e.generators();
        assert_ne!(gens[0].then(&gens[1]), gens[1].then(&gens[0]));
        assert!(e.elements().iter().all(|x| x.order() == 1 || x.order() == 3));
    }
}
