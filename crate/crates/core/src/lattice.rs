//! Sublattices of `O^n`, given by generator columns.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{self, Rationals};
use crate::scalar::{Dvr, LocalScalar};
use crate::smith::{smith_normal_form, OMatrix};

/// An `O`-basis of the span of the columns of `gens`.
pub fn span_basis(o: &Dvr, gens: &OMatrix) -> OMatrix {
    let n = gens.rows();
    if gens.cols() == 0 {
        return OMatrix::zeros(n, 0);
    }
    let f = smith_normal_form(o, gens);
    let mut cols = Vec::with_capacity(f.rank());
    for (k, d) in f.divisors.iter().enumerate() {
        let scale = o.uniformizer_pow(*d);
        cols.push(f.u_inv.col(k).iter().map(|x| x * &scale).collect::<Vec<_>>());
    }
    OMatrix::from_cols(n, &cols)
}

/// Basis of `(span ⊗ E) ∩ O^n`.
pub fn saturate(o: &Dvr, gens: &OMatrix) -> OMatrix {
    let n = gens.rows();
    if gens.cols() == 0 {
        return OMatrix::zeros(n, 0);
    }
    let f = smith_normal_form(o, gens);
    let idx: Vec<usize> = (0..f.rank()).collect();
    f.u_inv.select_cols(&idx)
}

/// Saturated `O`-basis of `{x : a x = 0}`.
pub fn kernel(o: &Dvr, a: &OMatrix) -> OMatrix {
    let n = a.cols();
    if a.rows() == 0 {
        return OMatrix::identity(n);
    }
    let f = smith_normal_form(o, a);
    let idx: Vec<usize> = (f.rank()..n).collect();
    f.v.select_cols(&idx)
}

/// Basis over `E` of `{x : a x = 0}`.
pub fn kernel_field(a: &OMatrix) -> OMatrix {
    field::nullspace(&Rationals, a)
}

/// Basis of `{x in O^g : d x ∈ span(w)}`.
pub fn preimage(o: &Dvr, d: &OMatrix, w: &OMatrix) -> OMatrix {
    let g = d.cols();
    if w.cols() == 0 {
        return kernel(o, d);
    }
    let joint = d.hcat(&w.map(|x| -x));
    let k = kernel(o, &joint);
    let idx: Vec<usize> = (0..g).collect();
    span_basis(o, &k.select_rows(&idx))
}

/// `O`-coefficients `c` with `gens * c = target`, if any.
pub fn solve_in_lattice(o: &Dvr, gens: &OMatrix, target: &[LocalScalar]) -> Option<Vec<LocalScalar>> {
    let n = gens.rows();
    assert_eq!(n, target.len());
    if gens.cols() == 0 {
        return target.iter().all(Zero::is_zero).then(Vec::new);
    }
    let f = smith_normal_form(o, gens);
    let y = f.u.mul_vec(target);
    let mut z = vec![LocalScalar::zero(); gens.cols()];
    for (i, yi) in y.iter().enumerate() {
        if i < f.rank() {
            let q = yi / &f.s[(i, i)];
            if !o.is_integral(&q) {
                return None;
            }
            z[i] = q;
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(f.v.mul_vec(&z))
}

pub fn contains(o: &Dvr, gens: &OMatrix, v: &[LocalScalar]) -> bool {
    solve_in_lattice(o, gens, v).is_some()
}

/// True when every column of `sub` lies in the span of `sup`.
pub fn is_sublattice(o: &Dvr, sub: &OMatrix, sup: &OMatrix) -> bool {
    sub.columns().iter().all(|c| contains(o, sup, c))
}

pub fn lattices_equal(o: &Dvr, a: &OMatrix, b: &OMatrix) -> bool {
    is_sublattice(o, a, b) && is_sublattice(o, b, a)
}

/// Coordinates of the columns of `w` in the basis `z`; the matrix returned
/// presents `span(z) / span(w)`. Fails if some column of `w` is not an
/// `O`-combination of `z`.
pub fn relative_coordinates(o: &Dvr, z: &OMatrix, w: &OMatrix) -> Result<OMatrix> {
    let r = z.cols();
    let mut cols = Vec::with_capacity(w.cols());
    for col in w.columns() {
        let c = field::solve(&Rationals, z, &col)
            .ok_or_else(|| Error::InternalInconsistency("vector outside the ambient lattice span".into()))?;
        if !c.iter().all(|x| o.is_integral(x)) {
            return Err(Error::InternalInconsistency("vector outside the ambient lattice".into()));
        }
        cols.push(c);
    }
    Ok(OMatrix::from_cols(r, &cols))
}

/// Lifts to `O^n` of a minimal generating set of `span(z) / span(w)`, where
/// `z` is a basis and `w ⊆ span(z)`.
pub fn quotient_generators(o: &Dvr, z: &OMatrix, w: &OMatrix) -> Result<OMatrix> {
    let coords = relative_coordinates(o, z, w)?;
    let f = smith_normal_form(o, &coords);
    let keep: Vec<usize> = (0..z.cols()).filter(|&i| i >= f.rank() || f.divisors[i] > 0).collect();
    Ok(z.mul_mat(&f.u_inv.select_cols(&keep)))
}

/// The rank over `E` of a generator matrix.
pub fn rank_e(gens: &OMatrix) -> usize {
    field::rank(&Rationals, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalar::int;

    fn m(rows: Vec<Vec<i64>>) -> OMatrix {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect())
    }

    #[test]
    fn saturated_kernel_drops_factor_two() {
        let o = Dvr::new(2).unwrap();
        let k = kernel(&o, &m(vec![vec![2, -2]]));
        assert_eq!(k.cols(), 1);
        assert!(lattices_equal(&o, &k, &m(vec![vec![1], vec![1]])));
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let o = Dvr::new(5).unwrap();
        assert_eq!(kernel(&o, &OMatrix::identity(3)).cols(), 0);
    }

    #[test]
    fn saturation_and_membership() {
        let o = Dvr::new(3).unwrap();
        let l = m(vec![vec![3], vec![6]]);
        let s = saturate(&o, &l);
        assert!(contains(&o, &s, &[int(1), int(2)]));
        assert!(!contains(&o, &l, &[int(1), int(2)]));
        assert!(contains(&o, &l, &[int(-3), int(-6)]));
    }

    #[test]
    fn preimage_of_torsion_target() {
        // {x : 2x ∈ 4O} = 2O
        let o = Dvr::new(2).unwrap();
        let pre = preimage(&o, &m(vec![vec![2]]), &m(vec![vec![4]]));
        assert!(lattices_equal(&o, &pre, &m(vec![vec![2]])));
    }
}
