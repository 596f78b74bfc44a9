//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclotomic`] is stored in the standard reduced basis used by
//! computer algebra systems (the Zumbroich basis) at its minimal
//! conductor, with exact rational coefficients. Equality of values is
//! therefore structural equality of representations. No floating point
//! appears anywhere.
//!
//! Basis convention, for `n` with prime-power parts `q = p^k`:
//! `zeta_n^e` is a basis element iff for every `q` the CRT component
//! `a_q = e * (n/q)^{-1} mod q` satisfies
//!
//! * `p` odd: `a_q` in `[p^{k-1}, p^k)`;
//! * `p = 2`: `a_q` in `[0, 2^{k-1})`.
//!
//! Conductors `n ≡ 2 (mod 4)` reduce away automatically.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An element of a cyclotomic field in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: BTreeMap<u64, BigRational>,
}

#[derive(Clone, Copy, Debug)]
struct PrimePower {
    p: u64,
    q: u64,
    k: u32,
    /// Reconstruction multiplier `n/q`: an exponent with components
    /// `(a_q)` is `sum a_q * (n/q) mod n`.
    mult: u64,
    /// `(n/q)^{-1} mod q`, for extracting the component of an exponent.
    inv_m: u64,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut k = 0;
            while n % d == 0 {
                n /= d;
                k += 1;
            }
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    // Extended Euclid; gcd(a, m) = 1 is guaranteed by the callers.
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

fn prime_powers(n: u64) -> Vec<PrimePower> {
    factorize(n)
        .into_iter()
        .map(|(p, k)| {
            let q = p.pow(k);
            let m = n / q;
            let inv_m = mod_inverse(m % q, q);
            PrimePower { p, q, k, mult: m, inv_m }
        })
        .collect()
}

impl PrimePower {
    fn component(&self, e: u64) -> u64 {
        ((e % self.q) as u128 * self.inv_m as u128 % self.q as u128) as u64
    }

    fn in_basis(&self, a: u64) -> bool {
        if self.p == 2 {
            a < self.q / 2
        } else {
            a >= self.q / self.p
        }
    }

    /// Rewrites `zeta_q^a` (not in basis) as a signed sum of basis powers.
    fn expand(&self, a: u64) -> Vec<(u64, i64)> {
        if self.p == 2 {
            // zeta_{2^k}^{a} = -zeta_{2^k}^{a - 2^{k-1}}.
            vec![(a - self.q / 2, -1)]
        } else {
            let step = self.q / self.p;
            (1..self.p).map(|j| (a + j * step, -1)).collect()
        }
    }
}

impl Cyclotomic {
    pub fn zero() -> Cyclotomic {
        Cyclotomic {
            conductor: 1,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Cyclotomic {
        Cyclotomic::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Cyclotomic {
        Cyclotomic::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(v: BigRational) -> Cyclotomic {
        let mut coeffs = BTreeMap::new();
        if !v.is_zero() {
            coeffs.insert(0, v);
        }
        Cyclotomic { conductor: 1, coeffs }
    }

    /// `zeta_n^e`, canonicalized.
    pub fn root_of_unity(n: u64, e: u64) -> Result<Cyclotomic> {
        if n == 0 {
            return Err(Error::input("root of unity needs n >= 1"));
        }
        Ok(Cyclotomic::build(n, vec![(e, BigRational::one())]))
    }

    /// `sum_i c_i * zeta_n^{e_i}` with integer coefficients, canonicalized.
    pub fn from_integer_terms(n: u64, terms: &[(u64, BigInt)]) -> Result<Cyclotomic> {
        if n == 0 {
            return Err(Error::input("cyclotomic terms need n >= 1"));
        }
        Ok(Cyclotomic::build(
            n,
            terms
                .iter()
                .map(|(e, c)| (*e, BigRational::from_integer(c.clone())))
                .collect(),
        ))
    }

    /// Canonicalizes an arbitrary list of `(exponent, coefficient)` terms
    /// over Q(zeta_n).
    fn build(n: u64, terms: Vec<(u64, BigRational)>) -> Cyclotomic {
        let pps = prime_powers(n);
        let mut coeffs: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            reduce_term(n, &pps, e % n, &c, &mut coeffs);
        }
        coeffs.retain(|_, c| !c.is_zero());
        let mut value = Cyclotomic { conductor: n, coeffs };
        value.reduce_conductor();
        value
    }

    /// Repeatedly descends to smaller conductors while the value lies in a
    /// proper cyclotomic subfield.
    fn reduce_conductor(&mut self) {
        'outer: loop {
            if self.coeffs.is_empty() {
                self.conductor = 1;
                return;
            }
            if self.conductor == 1 {
                return;
            }
            let pps = prime_powers(self.conductor);
            for pp in &pps {
                if let Some(reduced) = self.try_descend(pp) {
                    *self = reduced;
                    continue 'outer;
                }
            }
            return;
        }
    }

    /// Attempts removal of one factor `p` from the conductor.
    fn try_descend(&self, pp: &PrimePower) -> Option<Cyclotomic> {
        let n = self.conductor;
        let n_new = n / pp.p;
        let pps_new = prime_powers(n_new);
        let mut terms: Vec<(u64, BigRational)> = Vec::new();
        if pp.p == 2 || pp.k >= 2 {
            // Descend iff every component at q is divisible by p; the new
            // component is a/p (dropped when the prime power disappears).
            for (&e, c) in &self.coeffs {
                let a = pp.component(e);
                if a % pp.p != 0 {
                    return None;
                }
                let e_new = rebuild_exponent(n, e, pp, a / pp.p, n_new, &pps_new);
                terms.push((e_new, c.clone()));
            }
        } else {
            // p odd, k = 1: basis components run over 1..p-1; the value
            // descends iff within every group of terms agreeing away from
            // q all p-1 components appear with one common coefficient c,
            // in which case the group collapses to -c.
            let m = n / pp.q;
            let mut groups: BTreeMap<u64, Vec<(u64, BigRational)>> = BTreeMap::new();
            for (&e, c) in &self.coeffs {
                groups
                    .entry(e % m)
                    .or_default()
                    .push((pp.component(e), c.clone()));
            }
            for (&r, entries) in &groups {
                if entries.len() as u64 != pp.p - 1 {
                    return None;
                }
                let c0 = &entries[0].1;
                if entries.iter().any(|(_, c)| c != c0) {
                    return None;
                }
                let e_any = *self
                    .coeffs
                    .keys()
                    .find(|&&e| e % m == r)
                    .expect("group has a member");
                let e_new = rebuild_exponent(n, e_any, pp, 0, n_new, &pps_new);
                terms.push((e_new, -c0.clone()));
            }
        }
        let coeffs: BTreeMap<u64, BigRational> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Some(Cyclotomic {
            conductor: n_new,
            coeffs,
        })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Canonical `(exponent, coefficient)` view of the support.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let n = num::integer::lcm(self.conductor, other.conductor);
        let mut terms: Vec<(u64, BigRational)> = Vec::new();
        for (e, c) in self.terms() {
            terms.push((e * (n / self.conductor), c.clone()));
        }
        for (e, c) in other.terms() {
            terms.push((e * (n / other.conductor), c.clone()));
        }
        Cyclotomic::build(n, terms)
    }

    pub fn neg(&self) -> Cyclotomic {
        // Negation preserves canonical form.
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        let n = num::integer::lcm(self.conductor, other.conductor);
        let sa = n / self.conductor;
        let sb = n / other.conductor;
        let mut terms: Vec<(u64, BigRational)> = Vec::new();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                terms.push(((ea * sa + eb * sb) % n, ca * cb));
            }
        }
        Cyclotomic::build(n, terms)
    }

    pub fn scale(&self, r: &BigRational) -> Cyclotomic {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * r)).collect(),
        }
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Cyclotomic {
        if self.conductor == 1 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
            .expect("conjugation is a valid Galois map")
    }

    /// The Galois map `sigma_s: zeta -> zeta^s`; requires gcd(s, n) = 1.
    pub fn galois(&self, s: u64) -> Result<Cyclotomic> {
        if self.conductor == 1 {
            return Ok(self.clone());
        }
        let s = s % self.conductor;
        if num::integer::gcd(s, self.conductor) != 1 {
            return Err(Error::input(format!(
                "sigma_{s} is not a Galois map for conductor {}",
                self.conductor
            )));
        }
        let terms = self
            .terms()
            .map(|(e, c)| (e * s % self.conductor, c.clone()))
            .collect();
        Ok(Cyclotomic::build(self.conductor, terms))
    }

    /// Exact integer value, when the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Some(r.to_integer())
        } else {
            None
        }
    }

    /// Exact rational value, when the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.conductor != 1 {
            return None;
        }
        match self.coeffs.get(&0) {
            Some(c) => Some(c.clone()),
            None => Some(BigRational::zero()),
        }
    }

    /// Returns `+1` when `a = b`, `-1` when `a = -b`, `None` otherwise;
    /// `+1` when both are zero.
    pub fn equal_up_to_sign(&self, other: &Cyclotomic) -> Option<i8> {
        if self == other {
            Some(1)
        } else if *self == other.neg() {
            Some(-1)
        } else {
            None
        }
    }

    /// Stable string form, usable as a canonical sort key.
    pub fn canonical_string(&self) -> String {
        let mut s = format!("n{};", self.conductor);
        for (e, c) in self.terms() {
            s.push_str(&format!("{e}:{};", format_rational(c)));
        }
        s
    }
}

/// Rewrites the basis term `zeta_n^e`, replacing the component at the
/// removed prime power by `a_new`, producing the exponent in the smaller
/// conductor.
fn rebuild_exponent(
    n: u64,
    e: u64,
    removed: &PrimePower,
    a_new: u64,
    n_new: u64,
    pps_new: &[PrimePower],
) -> u64 {
    if n_new == 1 {
        return 0;
    }
    let pps_old = prime_powers(n);
    let mut e_new: u128 = 0;
    for pp_new in pps_new {
        let a = if pp_new.p == removed.p {
            a_new
        } else {
            let old = pps_old
                .iter()
                .find(|pp| pp.p == pp_new.p)
                .expect("surviving prime power");
            old.component(e)
        };
        e_new += a as u128 * pp_new.mult as u128;
    }
    (e_new % n_new as u128) as u64
}

/// Expands one term into the Zumbroich basis of Q(zeta_n), accumulating
/// into `out`.
fn reduce_term(
    n: u64,
    pps: &[PrimePower],
    e: u64,
    c: &BigRational,
    out: &mut BTreeMap<u64, BigRational>,
) {
    if n == 1 {
        add_coeff(out, 0, c.clone());
        return;
    }
    // Per-factor alternatives: (component, sign).
    let alts: Vec<Vec<(u64, i64)>> = pps
        .iter()
        .map(|pp| {
            let a = pp.component(e);
            if pp.in_basis(a) {
                vec![(a, 1)]
            } else {
                pp.expand(a)
            }
        })
        .collect();
    let mut stack: Vec<(usize, u128, i64)> = vec![(0, 0, 1)];
    while let Some((i, acc, sign)) = stack.pop() {
        if i == pps.len() {
            let e_new = (acc % n as u128) as u64;
            let value = if sign > 0 { c.clone() } else { -c.clone() };
            add_coeff(out, e_new, value);
            continue;
        }
        for &(a, s) in &alts[i] {
            stack.push((i + 1, acc + a as u128 * pps[i].mult as u128, sign * s));
        }
    }
}

fn add_coeff(out: &mut BTreeMap<u64, BigRational>, e: u64, v: BigRational) {
    let entry = out.entry(e).or_insert_with(BigRational::zero);
    *entry += v;
    if entry.is_zero() {
        out.remove(&e);
    }
}

pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let n: BigInt = num
        .trim()
        .parse()
        .map_err(|_| Error::input(format!("bad rational numerator {num:?}")))?;
    let d: BigInt = den
        .trim()
        .parse()
        .map_err(|_| Error::input(format!("bad rational denominator {den:?}")))?;
    if d.is_zero() {
        return Err(Error::input("rational with zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::input("p_part of 0 is undefined"));
    }
    crate::perm::require_prime(p)?;
    let mut n = n;
    let mut out = 1;
    while n % p == 0 {
        out *= p;
        n /= p;
    }
    Ok(out)
}

// --- serialization -------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CycloJson {
    n: u64,
    terms: Vec<(u64, String)>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        CycloJson {
            n: self.conductor,
            terms: self
                .terms()
                .map(|(e, c)| (e, format_rational(c)))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = CycloJson::deserialize(deserializer)?;
        if raw.n == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        let terms = raw
            .terms
            .into_iter()
            .map(|(e, s)| Ok((e, parse_rational(&s).map_err(serde::de::Error::custom)?)))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Ok(Cyclotomic::build(raw.n, terms))
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let coeff = if mag.is_one() && e != 0 {
                String::new()
            } else if mag.is_integer() {
                format!("{}", mag.numer())
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            if e == 0 {
                let shown = if coeff.is_empty() { "1".to_string() } else { coeff };
                write!(f, "{shown}")?;
            } else {
                let star = if coeff.is_empty() {
                    String::new()
                } else {
                    format!("{coeff}*")
                };
                if e == 1 {
                    write!(f, "{star}E({})", self.conductor)?;
                } else {
                    write!(f, "{star}E({})^{e}", self.conductor)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
