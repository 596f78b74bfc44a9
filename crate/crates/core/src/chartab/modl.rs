//! Dense linear algebra over the prime field F_ell used by the modular
//! character-table method. ell stays well below 2^31, so products fit in
//! u64 via u128 intermediates.

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub ell: u64,
}

impl Fp {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.ell
    }
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.ell - b % self.ell) % self.ell
    }
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.ell as u128) as u64
    }
    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.ell;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.ell != 0);
        self.pow(a, self.ell - 2)
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        let phi = self.ell - 1;
        let fac = crate::perm::prime_divisors(phi);
        'outer: for g in 2..self.ell {
            for &p in &fac {
                if self.pow(g, phi / p) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("every prime field has a primitive root")
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(fp: Fp, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..rows.len()).find(|&r| rows[r][col] % fp.ell != 0) else {
            continue;
        };
        rows.swap(row, pr);
        let inv = fp.inv(rows[row][col]);
        for x in rows[row].iter_mut() {
            *x = fp.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r != row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..ncols {
                    let sub = fp.mul(factor, rows[row][c]);
                    rows[r][c] = fp.sub(rows[r][c], sub);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows.len() {
            break;
        }
    }
    rows.truncate(row);
    pivots
}

/// Basis of the null space of the square matrix `m` (rows), in rref form.
pub fn null_space(fp: Fp, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut work: Vec<Vec<u64>> = m.to_vec();
    let pivots = rref(fp, &mut work);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = fp.sub(0, work[r][free]);
        }
        basis.push(v);
    }
    // Canonical form for determinism.
    rref(fp, &mut basis);
    basis
}

/// `m * v` for a square matrix given by rows.
pub fn mat_vec(fp: Fp, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            let mut acc = 0u128;
            for (a, b) in row.iter().zip(v) {
                acc += *a as u128 * *b as u128 % fp.ell as u128;
            }
            (acc % fp.ell as u128) as u64
        })
        .collect()
}
