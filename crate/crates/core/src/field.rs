//! Field contexts for the two fibers of `O`: the fraction field `E = Q` and
//! the residue field `F_p`.
//!
//! The prime is only known at run time, so fields are value-level contexts
//! (`&F`) that operate on plain element types instead of trait bounds on the
//! elements themselves.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::matrix::Matrix;
use crate::scalar::{inv_mod, LocalScalar};

pub trait Field: Clone + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of an integral scalar of `O`.
    fn from_scalar(&self, s: &LocalScalar) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// The fraction field `E`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_scalar(&self, s: &LocalScalar) -> BigRational {
        s.clone()
    }
}

/// The residue field `F_p`, elements stored as reduced `u64`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    pub p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        crate::scalar::pow_mod(a, e, self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p)
    }
    fn from_scalar(&self, s: &LocalScalar) -> u64 {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let p = BigInt::from(self.p);
        let num = s.numer().mod_floor(&p).to_u64().unwrap();
        let den = s.denom().mod_floor(&p).to_u64().unwrap();
        assert!(den != 0, "residue of a non-integral scalar");
        self.mul(&num, &inv_mod(den, self.p))
    }
}

/// Reduced row echelon form, in place. Returns the pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !f.is_zero(&m[(i, c)])) else {
            continue;
        };
        m.swap_rows(r, pr);
        let inv = f.inv(&m[(r, c)]);
        for j in c..cols {
            m[(r, j)] = f.mul(&m[(r, j)], &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[(i, c)]) {
                let factor = m[(i, c)].clone();
                for j in c..cols {
                    let t = f.mul(&factor, &m[(r, j)]);
                    m[(i, j)] = f.sub(&m[(i, j)], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    let mut m = m.clone();
    rref(f, &mut m).len()
}

/// Basis of `{x : m x = 0}` as the columns of the result.
pub fn nullspace<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (_, cols) = m.shape();
    let mut r = m.clone();
    let pivots = rref(f, &mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Matrix::filled(cols, free.len(), f.zero());
    for (k, &fc) in free.iter().enumerate() {
        out[(fc, k)] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            out[(pc, k)] = f.neg(&r[(i, fc)]);
        }
    }
    out
}

/// Some solution of `m x = b`, or `None`.
pub fn solve<F: Field>(f: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let (rows, cols) = m.shape();
    assert_eq!(rows, b.len());
    let mut aug = Matrix::filled(rows, cols + 1, f.zero());
    for i in 0..rows {
        for j in 0..cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, cols)] = b[i].clone();
    }
    let pivots = rref(f, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[(i, cols)].clone();
    }
    Some(x)
}

/// Indices of a maximal linearly independent subset of the columns.
pub fn independent_columns<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<usize> {
    let mut r = m.clone();
    rref(f, &mut r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn nullspace_over_e() {
        // [[1,2],[2,4]] has kernel spanned by (-2, 1)
        let m = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]);
        let k = nullspace(&Rationals, &m);
        assert_eq!(k.shape(), (2, 1));
        assert_eq!(k.col(0), vec![int(-2), int(1)]);
    }

    #[test]
    fn prime_field_ops() {
        let f = PrimeField::new(5);
        assert_eq!(f.inv(&3), 2);
        assert_eq!(f.sub(&1, &3), 3);
        let m = Matrix::from_rows(vec![vec![1u64, 2], vec![2, 4]]);
        assert_eq!(rank(&f, &m), 1);
        assert_eq!(solve(&f, &m, &[1, 3]), None);
        assert_eq!(solve(&f, &m, &[1, 2]), Some(vec![1, 0]));
    }
}
