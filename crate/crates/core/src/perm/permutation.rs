use std::fmt;

use crate::{Error, Result};

/// A permutation of the points `0..n`, stored by its image sequence:
/// `images[i]` is the image of point `i`.
///
/// Points are 0-based internally; all parsing and printing of cycle
/// notation is 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    /// Builds a permutation from an image sequence, verifying bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if (x as usize) >= n || seen[x as usize] {
                return Err(Error::input(format!(
                    "image sequence {images:?} is not a bijection on 1..{n}"
                )));
            }
            seen[x as usize] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation from a 1-based image sequence (file format).
    pub fn from_images_one_based(images: &[u64]) -> Result<Perm> {
        let n = images.len();
        let mut v = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x as usize > n {
                return Err(Error::input(format!(
                    "1-based image {x} out of range 1..={n}"
                )));
            }
            v.push((x - 1) as u32);
        }
        Perm::from_images(v)
    }

    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Parses cycle notation such as `"(1,2,3)(4,5)"` on `degree` points.
    /// Whitespace is ignored; points are 1-based; `"()"` and the empty
    /// string denote the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut rest = compact.as_str();
        let mut touched = vec![false; degree];
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::input(format!("malformed cycles: {s:?}")));
            }
            let close = rest
                .find(')')
                .ok_or_else(|| Error::input(format!("malformed cycles (unclosed): {s:?}")))?;
            let body = &rest[1..close];
            rest = &rest[close + 1..];
            if body.is_empty() {
                continue;
            }
            let mut cycle = Vec::new();
            for part in body.split(',') {
                let p: usize = part
                    .parse()
                    .map_err(|_| Error::input(format!("malformed cycle entry {part:?} in {s:?}")))?;
                if p == 0 || p > degree {
                    return Err(Error::input(format!(
                        "cycle point {p} out of range 1..={degree}"
                    )));
                }
                let q = p - 1;
                if touched[q] {
                    return Err(Error::input(format!("point {p} repeated in cycles {s:?}")));
                }
                touched[q] = true;
                cycle.push(q as u32);
            }
            for i in 0..cycle.len() {
                images[cycle[i] as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// 1-based image sequence, as used by the JSON formats.
    pub fn images_one_based(&self) -> Vec<u64> {
        self.images.iter().map(|&x| x as u64 + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Composition in application order: `a.then(b)` applies `a` first.
    /// This is the group product `a * b` under the right-action convention
    /// `x^(ab) = (x^a)^b` used throughout the crate.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// The conjugate `t^{-1} * self * t` (i.e. `self^t`), computed by point
    /// relabeling in O(degree).
    pub fn conjugated_by(&self, t: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), t.degree());
        let mut images = vec![0u32; self.images.len()];
        for x in 0..self.images.len() {
            images[t.images[x] as usize] = t.images[self.images[x] as usize];
        }
        Perm { images }
    }

    pub fn pow(&self, e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Order of the permutation (lcm of its cycle lengths).
    pub fn order(&self) -> u64 {
        let mut order = 1u64;
        for len in self.cycle_lengths() {
            order = num::integer::lcm(order, len as u64);
        }
        order
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Cycle decomposition with 1-based points, fixed points omitted.
    /// The identity is rendered as `"()"`.
    pub fn cycle_string(&self) -> String {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(',');
                }
                first = false;
                out.push_str(&(x + 1).to_string());
                x = self.images[x] as usize;
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}
