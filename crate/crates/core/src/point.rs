//! `O`-valued points `λ: A -> O` of a flat finite algebra.

use num_traits::{One, Zero};

use crate::algebra::{FinAlgebra, Vector};
use crate::error::{Error, Result};
use crate::lattice;
use crate::smith::OMatrix;

#[derive(Clone, Debug)]
pub struct OPoint {
    values: Vector,
    kernel: OMatrix,
}

impl OPoint {
    /// `λ` evaluated on the basis.
    pub fn values(&self) -> &Vector {
        &self.values
    }

    /// Saturated `O`-basis of `p = ker λ`, as columns.
    pub fn kernel(&self) -> &OMatrix {
        &self.kernel
    }

    pub fn eval(&self, a: &[crate::LocalScalar]) -> crate::LocalScalar {
        a.iter().zip(&self.values).fold(crate::LocalScalar::zero(), |acc, (x, y)| acc + x * y)
    }
}

/// Validates `λ` as an algebra map and computes its kernel.
pub fn point_kernel(a: &FinAlgebra, values: Vector) -> Result<OPoint> {
    let d = a.rank();
    if values.len() != d {
        return Err(Error::Dimension(format!("point needs {d} values, got {}", values.len())));
    }
    if !a.is_flat() {
        return Err(Error::Validation("torsion algebras have no O-valued points".into()));
    }
    if let Some(i) = values.iter().position(|v| !a.dvr().is_integral(v)) {
        return Err(Error::Validation(format!("point value {i} is not in O")));
    }
    let point = OPoint { kernel: OMatrix::zeros(d, 0), values };
    if !point.eval(a.unit()).is_one() {
        return Err(Error::NotAlgebraMap(0, 0));
    }
    for i in 0..d {
        for j in i..d {
            let prod = a.basis_action(i).col(j);
            if point.eval(&prod) != &point.values[i] * &point.values[j] {
                return Err(Error::NotAlgebraMap(i, j));
            }
        }
    }
    let row = OMatrix::from_rows(vec![point.values.clone()]);
    Ok(OPoint { kernel: lattice::kernel(a.dvr(), &row), ..point })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::testutil::hyper;

    #[test]
    fn kernel_at_zero() {
        let a = hyper(2, 2);
        let pt = point_kernel(&a, vec![int(1), int(0)]).unwrap();
        let x = OMatrix::from_cols(2, &[vec![int(0), int(1)]]);
        assert!(lattice::lattices_equal(a.dvr(), pt.kernel(), &x));
    }

    #[test]
    fn kernel_at_other_branch() {
        // λ(x) = p: λ(x^2 - p x) = p^2 - p^2 = 0, kernel spanned by x - p
        let a = hyper(2, 2);
        let pt = point_kernel(&a, vec![int(1), int(2)]).unwrap();
        let xm = OMatrix::from_cols(2, &[vec![int(-2), int(1)]]);
        assert!(lattice::lattices_equal(a.dvr(), pt.kernel(), &xm));
    }

    #[test]
    fn rejects_non_multiplicative_values() {
        let a = hyper(2, 2);
        assert_eq!(point_kernel(&a, vec![int(1), int(1)]).unwrap_err(), Error::NotAlgebraMap(1, 1));
        assert_eq!(point_kernel(&a, vec![int(2), int(0)]).unwrap_err(), Error::NotAlgebraMap(0, 0));
    }
}
