//! Exact character tables and class-function operations.

mod dixon;
mod modl;
pub mod ops;
pub mod store;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};

use crate::cyclo::Cyclotomic;
use crate::perm::{ConjugacyData, Group, Perm};
use crate::{Error, Result};

pub use dixon::lifting_prime;
pub use store::TableStore;

/// A class function, stored as one value per conjugacy class of the table
/// it belongs to. Irreducible characters are rows of a table; restricted,
/// induced and remainder characters are standalone values of this type.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassFunction {
    pub values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub fn zero(len: usize) -> ClassFunction {
        ClassFunction {
            values: vec![Cyclotomic::zero(); len],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> ClassFunction {
        let r = BigRational::from_integer(BigInt::from(c));
        ClassFunction {
            values: self.values.iter().map(|v| v.scale(&r)).collect(),
        }
    }

    /// Value at the identity class.
    pub fn degree(&self) -> Option<BigInt> {
        self.values.first().and_then(|v| v.as_integer())
    }

    pub fn canonical_string(&self) -> String {
        self.values
            .iter()
            .map(|v| v.canonical_string())
            .collect::<Vec<_>>()
            .join("|")
    }
}

/// An exact character table: the group, its conjugacy data, and the matrix
/// of irreducible character values (rows ordered canonically by degree,
/// then lexicographically on serialized values).
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Group,
    classes: ConjugacyData,
    values: Vec<Vec<Cyclotomic>>,
    degrees: Vec<u64>,
}

impl CharacterTable {
    /// Computes the exact table with the modular method and verifies both
    /// orthogonality relations before returning.
    pub fn build(group: &Group) -> Result<CharacterTable> {
        let classes = ConjugacyData::compute(group)?;
        let (mut rows, mut degrees) = dixon::irreducible_values(group, &classes)?;
        // Canonical row order: by degree, then by serialized values.
        let mut idx: Vec<usize> = (0..rows.len()).collect();
        let keys: Vec<(u64, Vec<String>)> = rows
            .iter()
            .zip(&degrees)
            .map(|(row, &d)| (d, row.iter().map(|v| v.canonical_string()).collect()))
            .collect();
        idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        rows = idx.iter().map(|&i| rows[i].clone()).collect();
        degrees = idx.iter().map(|&i| degrees[i]).collect();
        let table = CharacterTable {
            group: group.clone(),
            classes,
            values: rows,
            degrees,
        };
        table.verify()?;
        Ok(table)
    }

    /// Reassembles a table from parts (used by the cache); the caller must
    /// run [`CharacterTable::verify`].
    pub(crate) fn from_parts(
        group: Group,
        classes: ConjugacyData,
        values: Vec<Vec<Cyclotomic>>,
        degrees: Vec<u64>,
    ) -> CharacterTable {
        CharacterTable {
            group,
            classes,
            values,
            degrees,
        }
    }

    /// Both orthogonality relations, the degree sum, and shape checks.
    pub fn verify(&self) -> Result<()> {
        let r = self.classes.count();
        if self.values.len() != r || self.values.iter().any(|row| row.len() != r) {
            return Err(Error::internal("table is not square"));
        }
        let order = BigInt::from(self.group.order_u64()?);
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if BigInt::from(sum_sq) != order {
            return Err(Error::internal("degrees do not satisfy sum d^2 = |G|"));
        }
        for (i, row) in self.values.iter().enumerate() {
            if row[0].as_integer() != Some(BigInt::from(self.degrees[i])) {
                return Err(Error::internal("first column disagrees with degrees"));
            }
        }
        // Row orthogonality.
        for i in 0..r {
            for j in i..r {
                let mut acc = Cyclotomic::zero();
                for k in 0..r {
                    let term = self.values[i][k]
                        .mul(&self.values[j][k].conj())
                        .scale(&BigRational::from_integer(BigInt::from(
                            self.classes.sizes()[k],
                        )));
                    acc = acc.add(&term);
                }
                let expected = if i == j { order.clone() } else { BigInt::zero() };
                if acc.as_integer() != Some(expected) {
                    return Err(Error::internal(format!(
                        "row orthogonality fails at ({i},{j})"
                    )));
                }
            }
        }
        // Column orthogonality.
        for k in 0..r {
            for l in k..r {
                let mut acc = Cyclotomic::zero();
                for i in 0..r {
                    acc = acc.add(&self.values[i][k].mul(&self.values[i][l].conj()));
                }
                let expected = if k == l {
                    BigInt::from(self.group.order_u64()? / self.classes.sizes()[k])
                } else {
                    BigInt::zero()
                };
                if acc.as_integer() != Some(expected) {
                    return Err(Error::internal(format!(
                        "column orthogonality fails at ({k},{l})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn classes(&self) -> &ConjugacyData {
        &self.classes
    }

    pub fn num_irr(&self) -> usize {
        self.values.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn value(&self, row: usize, class: usize) -> &Cyclotomic {
        &self.values[row][class]
    }

    pub fn row(&self, row: usize) -> &[Cyclotomic] {
        &self.values[row]
    }

    pub fn irreducible(&self, row: usize) -> ClassFunction {
        ClassFunction {
            values: self.values[row].clone(),
        }
    }

    /// Value of a class function at an arbitrary group element.
    pub fn value_at(&self, f: &ClassFunction, g: &Perm) -> Result<Cyclotomic> {
        if f.values.len() != self.classes.count() {
            return Err(Error::input("class function does not match the table"));
        }
        Ok(f.values[self.classes.class_of(g)?].clone())
    }

    /// Hermitian inner product `(1/|G|) sum_k |C_k| a(k) conj(b(k))`;
    /// errors if the result is not rational (never for characters).
    pub fn inner(&self, a: &ClassFunction, b: &ClassFunction) -> Result<BigRational> {
        let r = self.classes.count();
        if a.values.len() != r || b.values.len() != r {
            return Err(Error::input("class functions do not match the table"));
        }
        let mut acc = Cyclotomic::zero();
        for k in 0..r {
            let term = a.values[k]
                .mul(&b.values[k].conj())
                .scale(&BigRational::from_integer(BigInt::from(
                    self.classes.sizes()[k],
                )));
            acc = acc.add(&term);
        }
        let total = acc.as_rational().ok_or_else(|| {
            Error::input("inner product is not rational; arguments are not characters")
        })?;
        Ok(total / BigRational::from_integer(BigInt::from(self.group.order_u64()?)))
    }

    /// Nonnegative-integer inner product of two characters.
    pub fn inner_u64(&self, a: &ClassFunction, b: &ClassFunction) -> Result<u64> {
        let v = self.inner(a, b)?;
        if !v.is_integer() || v.is_negative() {
            return Err(Error::input(format!(
                "inner product {v} is not a nonnegative integer"
            )));
        }
        u64::try_from(v.to_integer())
            .map_err(|_| Error::capacity("inner product exceeds u64".to_string()))
    }

    /// Multiplicities of every irreducible in `f`.
    pub fn decompose(&self, f: &ClassFunction) -> Result<Vec<BigRational>> {
        (0..self.num_irr())
            .map(|i| self.inner(f, &self.irreducible(i)))
            .collect()
    }

    /// True when `f` is a character: nonzero with nonnegative integer
    /// multiplicities on all irreducibles.
    pub fn is_character(&self, f: &ClassFunction) -> Result<bool> {
        if f.is_zero() {
            return Ok(false);
        }
        for m in self.decompose(f)? {
            if !m.is_integer() || m.is_negative() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Index of the irreducible equal to `f`, if any.
    pub fn find_irreducible(&self, f: &ClassFunction) -> Option<usize> {
        (0..self.num_irr()).find(|&i| self.values[i] == f.values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups;

    #[test]
    fn s3_table() {
        let g = groups::symmetric(3).unwrap();
        let t = CharacterTable::build(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        // The trivial character appears among the rows.
        let all_ones = |row: &[Cyclotomic]| row.iter().all(|v| *v == Cyclotomic::one());
        assert!((0..3).any(|i| all_ones(t.row(i))));
    }

    #[test]
    fn s4_lifting_prime_is_13() {
        // 13 = 1 mod 12 and 13 > 2 sqrt(24).
        assert_eq!(lifting_prime(24, 12).unwrap(), 13);
    }

    #[test]
    fn s4_degrees() {
        let g = groups::symmetric(4).unwrap();
        let t = CharacterTable::build(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2, 3, 3]);
    }

    #[test]
    fn sl23_degrees() {
        let g = groups::sl2_3().unwrap();
        let t = CharacterTable::build(&g).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn trivial_group_table() {
        let g = Group::trivial(1);
        let t = CharacterTable::build(&g).unwrap();
        assert_eq!(t.degrees(), &[1]);
        assert_eq!(t.num_irr(), 1);
    }

    #[test]
    fn determinism() {
        let g = groups::by_name("D12").unwrap();
        let t1 = CharacterTable::build(&g).unwrap();
        let t2 = CharacterTable::build(&g).unwrap();
        assert_eq!(t1.values, t2.values);
    }
}
