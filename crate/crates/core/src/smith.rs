//! Smith normal form over `O = Z_(p)`.
//!
//! Pivoting always takes an entry of minimal valuation in the remaining
//! block (ties: smallest numerator magnitude, then first in row-major order).
//! Such a pivot divides every other entry in `O`, so one sweep per pivot
//! suffices and the divisor chain comes out sorted.

use num_traits::{One, Zero};

use crate::matrix::Matrix;
use crate::scalar::{magnitude_cmp, Dvr, LocalScalar, Valuation};

pub type OMatrix = Matrix<LocalScalar>;

/// `u * a * v = s`, with `u`, `v` invertible over `O` and their inverses kept.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: OMatrix,
    pub u_inv: OMatrix,
    pub s: OMatrix,
    pub v: OMatrix,
    pub v_inv: OMatrix,
    /// Valuations of the nonzero diagonal entries, nondecreasing; the
    /// diagonal entry is exactly `p^d`.
    pub divisors: Vec<u64>,
    /// Columns of `s` beyond the rank.
    pub zero_cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

fn pick_pivot(o: &Dvr, a: &OMatrix, t: usize) -> Option<(usize, usize)> {
    let (rows, cols) = a.shape();
    let mut best: Option<(usize, usize, Valuation)> = None;
    for i in t..rows {
        for j in t..cols {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let v = o.valuation(x);
            let better = match &best {
                None => true,
                Some((bi, bj, bv)) => {
                    v < *bv || (v == *bv && magnitude_cmp(x, &a[(*bi, *bj)]).is_lt())
                }
            };
            if better {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

pub fn smith_normal_form(o: &Dvr, a: &OMatrix) -> SmithForm {
    let (rows, cols) = a.shape();
    let mut s = a.clone();
    let mut u = OMatrix::identity(rows);
    let mut u_inv = OMatrix::identity(rows);
    let mut v = OMatrix::identity(cols);
    let mut v_inv = OMatrix::identity(cols);
    let mut divisors = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = pick_pivot(o, &s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        u_inv.swap_cols(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        let (unit, d) = o.unit_part(&s[(t, t)]);
        debug_assert!(d >= 0, "pivot outside O");
        let c = unit.recip();
        if !c.is_one() {
            for j in 0..cols {
                s[(t, j)] = &s[(t, j)] * &c;
            }
            for j in 0..rows {
                u[(t, j)] = &u[(t, j)] * &c;
            }
            for i in 0..rows {
                u_inv[(i, t)] = &u_inv[(i, t)] * &unit;
            }
        }
        let pivot = s[(t, t)].clone();

        for i in t + 1..rows {
            if s[(i, t)].is_zero() {
                continue;
            }
            let f = &s[(i, t)] / &pivot;
            for j in t..cols {
                let delta = &f * &s[(t, j)];
                s[(i, j)] -= delta;
            }
            for j in 0..rows {
                let delta = &f * &u[(t, j)];
                u[(i, j)] -= delta;
            }
            for r in 0..rows {
                let delta = &f * &u_inv[(r, i)];
                u_inv[(r, t)] += delta;
            }
        }
        for j in t + 1..cols {
            if s[(t, j)].is_zero() {
                continue;
            }
            let f = &s[(t, j)] / &pivot;
            s[(t, j)] = LocalScalar::zero();
            for r in 0..cols {
                let delta = &f * &v[(r, t)];
                v[(r, j)] -= delta;
            }
            for c in 0..cols {
                let delta = &f * &v_inv[(j, c)];
                v_inv[(t, c)] += delta;
            }
        }
        divisors.push(d as u64);
    }
    let rank = divisors.len();
    SmithForm { u, u_inv, s, v, v_inv, divisors, zero_cols: cols - rank }
}

/// Valuation of the determinant of a square matrix (`Infinite` if singular).
pub fn det_valuation(o: &Dvr, a: &OMatrix) -> Valuation {
    assert_eq!(a.rows(), a.cols());
    let snf = smith_normal_form(o, a);
    if snf.rank() < a.rows() {
        Valuation::Infinite
    } else {
        Valuation::Finite(snf.divisors.iter().sum::<u64>() as i64)
    }
}
