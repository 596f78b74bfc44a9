//! The modular (Dixon/Burnside) character-table method.
//!
//! Pipeline: class-algebra structure constants; the smallest prime
//! `ell ≡ 1 (mod exponent)` with `ell > 2 sqrt(|G|)`; simultaneous
//! diagonalization of the class matrices over F_ell by deterministic
//! sequential splitting in class-index order; degree recovery from the
//! norm condition; and exact lifting of values through the power-map
//! discrete Fourier transform.

use num::bigint::BigInt;

use super::modl::{mat_vec, null_space, rref, Fp};
use crate::cyclo::Cyclotomic;
use crate::perm::{ConjugacyData, Group};
use crate::{Error, Result};

pub(crate) const MAX_CLASSES: usize = 100;
pub(crate) const MAX_EXPONENT: u64 = 5040;
const MAX_LIFTING_PRIME: u64 = 2_000_000;

/// Class-algebra structure constants `a[i][j][k] = #{(u,v) in C_i x C_j :
/// uv = z_k}` for the fixed representatives `z_k`.
pub fn structure_constants(g: &Group, classes: &ConjugacyData) -> Result<Vec<Vec<Vec<u64>>>> {
    let r = classes.count();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for u in g.elements() {
        let i = classes.class_of(&u)?;
        let u_inv = u.inverse();
        for k in 0..r {
            // u * v = z_k  =>  v = u^{-1} z_k.
            let v = u_inv.then(classes.rep(k));
            let j = classes.class_of(&v)?;
            a[i][j][k] += 1;
        }
    }
    Ok(a)
}

/// Smallest prime `ell ≡ 1 (mod e)` with `ell^2 > 4 |G|`.
pub fn lifting_prime(order: u64, exponent: u64) -> Result<u64> {
    let mut ell = exponent + 1;
    loop {
        if ell > MAX_LIFTING_PRIME {
            return Err(Error::capacity("no small lifting prime found"));
        }
        if ell as u128 * ell as u128 > 4 * order as u128 && is_prime(ell) {
            return Ok(ell);
        }
        ell += exponent.max(1);
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact irreducible character values and degrees, in the (unsorted)
/// order the splitting produces.
pub fn irreducible_values(
    g: &Group,
    classes: &ConjugacyData,
) -> Result<(Vec<Vec<Cyclotomic>>, Vec<u64>)> {
    let r = classes.count();
    if r > MAX_CLASSES {
        return Err(Error::capacity(format!(
            "class count {r} exceeds the supported {MAX_CLASSES}"
        )));
    }
    let e = classes.exponent();
    if e > MAX_EXPONENT {
        return Err(Error::capacity(format!(
            "group exponent {e} exceeds the supported {MAX_EXPONENT}"
        )));
    }
    let order = g.order_u64()?;
    let a = structure_constants(g, classes)?;
    let ell = lifting_prime(order, e)?;
    let fp = Fp { ell };

    // Simultaneously diagonalize the class matrices.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for i in 1..r {
        if spaces.iter().all(|w| w.len() == 1) {
            break;
        }
        // Row j, column k of the i-th class matrix.
        let m: Vec<Vec<u64>> = (0..r)
            .map(|j| (0..r).map(|k| a[i][j][k] % ell).collect())
            .collect();
        let mut next = Vec::new();
        for w in spaces {
            if w.len() == 1 {
                next.push(w);
                continue;
            }
            next.extend(split_space(fp, &m, &w)?);
        }
        spaces = next;
    }
    if spaces.iter().any(|w| w.len() != 1) {
        return Err(Error::internal(
            "class matrices failed to separate the central characters",
        ));
    }

    // Normalize each eigenvector so its identity-class entry is 1; these
    // are the central character values omega(K_j) mod ell.
    let mut omegas: Vec<Vec<u64>> = Vec::with_capacity(r);
    for w in &spaces {
        let v = &w[0];
        if v[0] == 0 {
            return Err(Error::internal("central character vanishes at the identity"));
        }
        let inv = fp.inv(v[0]);
        omegas.push(v.iter().map(|&x| fp.mul(x, inv)).collect());
    }

    // Degrees from the norm condition: d^2 = |G| / sum_j w_j w_{j*} / s_j.
    let mut degrees = Vec::with_capacity(r);
    for omega in &omegas {
        let mut t = 0u64;
        for j in 0..r {
            let term = fp.mul(
                fp.mul(omega[j], omega[classes.inverse_class(j)]),
                fp.inv(classes.sizes()[j] % ell),
            );
            t = fp.add(t, term);
        }
        if t == 0 {
            return Err(Error::internal("degenerate norm sum in degree recovery"));
        }
        let d2 = fp.mul(order % ell, fp.inv(t));
        let mut found = None;
        let mut d = 1u64;
        while d * d <= order {
            if fp.mul(d, d) == d2 {
                found = Some(d);
                break;
            }
            d += 1;
        }
        let d = found.ok_or_else(|| Error::internal("no degree matches the norm condition"))?;
        degrees.push(d);
    }

    // Lift values: chi(g_j) = sum_t m_t zeta_e^t with
    // m_t = (1/e) sum_s chi(g_j^s) omega^{-st} computed in F_ell.
    let omega_root = fp.pow(fp.primitive_root(), (ell - 1) / e);
    let inv_e = fp.inv(e % ell);
    let mut values = Vec::with_capacity(r);
    for (omega, &d) in omegas.iter().zip(&degrees) {
        // chi(g_j) mod ell = d * omega_j / s_j.
        let val_mod: Vec<u64> = (0..r)
            .map(|j| fp.mul(fp.mul(d % ell, omega[j]), fp.inv(classes.sizes()[j] % ell)))
            .collect();
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            let mut terms: Vec<(u64, BigInt)> = Vec::new();
            let mut total = 0u64;
            for t in 0..e {
                let mut acc = 0u64;
                for s in 0..e {
                    let cls = classes.power_class(j, s);
                    // omega^{-st}: omega_root has order e, so reduce the
                    // exponent (e - t) * s modulo e.
                    let w = fp.pow(omega_root, ((e - t) % e) * s % e);
                    acc = fp.add(acc, fp.mul(val_mod[cls], w));
                }
                let m_t = fp.mul(acc, inv_e);
                if m_t > d {
                    return Err(Error::internal(
                        "eigenvalue multiplicity exceeds the degree",
                    ));
                }
                total += m_t;
                if m_t > 0 {
                    terms.push((t, BigInt::from(m_t)));
                }
            }
            if total != d {
                return Err(Error::internal(
                    "eigenvalue multiplicities do not sum to the degree",
                ));
            }
            row.push(Cyclotomic::from_integer_terms(e, &terms)?);
        }
        values.push(row);
    }
    Ok((values, degrees))
}

/// Splits a joint eigenspace by one class matrix, scanning eigenvalues in
/// ascending order.
fn split_space(fp: Fp, m: &[Vec<u64>], w: &[Vec<u64>]) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = w.len();
    // Pivot columns of the rref basis give coordinates for free.
    let mut wcopy = w.to_vec();
    let pivots = rref(fp, &mut wcopy);
    if wcopy.len() != d {
        return Err(Error::internal("subspace basis was not independent"));
    }
    let w = wcopy;
    // Restriction matrix B: column j = coordinates of M * w_j.
    let mut b = vec![vec![0u64; d]; d];
    for (j, wj) in w.iter().enumerate() {
        let y = mat_vec(fp, m, wj);
        let coords: Vec<u64> = pivots.iter().map(|&c| y[c]).collect();
        // The subspace must be M-invariant.
        let mut recon = vec![0u64; y.len()];
        for (t, wt) in w.iter().enumerate() {
            for (ri, &x) in wt.iter().enumerate() {
                recon[ri] = fp.add(recon[ri], fp.mul(coords[t], x));
            }
        }
        if recon != y {
            return Err(Error::internal("class matrix does not preserve the subspace"));
        }
        for t in 0..d {
            b[t][j] = coords[t];
        }
    }
    let mut out = Vec::new();
    let mut found = 0;
    for lambda in 0..fp.ell {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        if i == j {
                            fp.sub(b[i][j], lambda)
                        } else {
                            b[i][j]
                        }
                    })
                    .collect()
            })
            .collect();
        let kernel = null_space(fp, &shifted);
        if kernel.is_empty() {
            continue;
        }
        found += kernel.len();
        // Lift kernel coordinates back to ambient vectors.
        let mut lifted: Vec<Vec<u64>> = kernel
            .iter()
            .map(|coords| {
                let mut v = vec![0u64; w[0].len()];
                for (t, wt) in w.iter().enumerate() {
                    for (ri, &x) in wt.iter().enumerate() {
                        v[ri] = fp.add(v[ri], fp.mul(coords[t], x));
                    }
                }
                v
            })
            .collect();
        rref(fp, &mut lifted);
        out.push(lifted);
        if found == d {
            break;
        }
    }
    if found != d {
        return Err(Error::internal("eigenspaces do not fill the subspace"));
    }
    Ok(out)
}
