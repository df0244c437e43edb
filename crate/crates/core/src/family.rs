//! Explicit families of finite flat local algebras with an `O`-point,
//! for experiments and tests.

use crate::algebra::{FinAlgebra, FinModule, Vector};
use crate::error::Result;
use crate::point::{point_kernel, OPoint};
use crate::scalar::{int, Dvr, LocalScalar};
use crate::smith::OMatrix;

/// `k + 1` copies of `O` glued to the first one modulo `p^{m_i}`: the
/// subring of `O^{k+1}` on `1` and `e_i = p^{m_i}` in slot `i`.
/// Products: `e_i e_i = p^{m_i} e_i`, `e_i e_j = 0`. The main point is the
/// first projection; [`branch_points`] gives the others.
pub fn star(o: &Dvr, ms: &[u64]) -> Result<(FinAlgebra, OPoint)> {
    let d = ms.len() + 1;
    let zero = || vec![int(0); d];
    let mut constants = vec![vec![zero(); d]; d];
    for i in 0..d {
        constants[0][i][i] = int(1);
        constants[i][0][i] = int(1);
    }
    for (i, &m) in ms.iter().enumerate() {
        constants[i + 1][i + 1][i + 1] = o.uniformizer_pow(m);
    }
    let mut labels = vec!["1".to_string()];
    labels.extend((1..d).map(|i| format!("e{i}")));
    let mut unit = zero();
    unit[0] = int(1);
    let a = FinAlgebra::from_structure_constants(o.clone(), labels, constants, unit.clone(), vec![None; d])?;
    let pt = point_kernel(&a, unit)?;
    Ok((a, pt))
}

/// The projections of [`star`] onto branches `1..=k`.
pub fn branch_points(a: &FinAlgebra, ms: &[u64]) -> Result<Vec<OPoint>> {
    let o = a.dvr();
    (0..ms.len())
        .map(|i| {
            let mut v = vec![int(0); ms.len() + 1];
            v[0] = int(1);
            v[i + 1] = o.uniformizer_pow(ms[i]);
            point_kernel(a, v)
        })
        .collect()
}

/// `A ⊗_O B` on the product basis, index `i * rank(B) + j`, with the
/// product point. Both factors must be flat.
pub fn tensor(a: &FinAlgebra, pa: &OPoint, b: &FinAlgebra, pb: &OPoint) -> Result<(FinAlgebra, OPoint)> {
    let (da, db) = (a.rank(), b.rank());
    let d = da * db;
    let mut mult = Vec::with_capacity(d);
    for i in 0..da {
        for j in 0..db {
            mult.push(kron(a.basis_action(i), b.basis_action(j)));
        }
    }
    let mut labels = Vec::with_capacity(d);
    for la in a.labels() {
        for lb in b.labels() {
            labels.push(match (la.as_str(), lb.as_str()) {
                ("1", l) | (l, "1") => l.to_string(),
                _ => format!("{la}*{lb}"),
            });
        }
    }
    let unit = kron_vec(a.unit(), b.unit());
    let t = FinAlgebra::from_actions(a.dvr().clone(), labels, mult, unit, vec![None; d])?;
    let pt = point_kernel(&t, kron_vec(pa.values(), pb.values()))?;
    Ok((t, pt))
}

fn kron(x: &OMatrix, y: &OMatrix) -> OMatrix {
    let (r1, c1) = x.shape();
    let (r2, c2) = y.shape();
    let mut out = OMatrix::zeros(r1 * r2, c1 * c2);
    for i in 0..r1 {
        for j in 0..c1 {
            for k in 0..r2 {
                for l in 0..c2 {
                    out[(i * r2 + k, j * c2 + l)] = &x[(i, j)] * &y[(k, l)];
                }
            }
        }
    }
    out
}

fn kron_vec(x: &[LocalScalar], y: &[LocalScalar]) -> Vector {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

/// `A / p^k A`, an `O`-torsion module, so unsupported at every `O`-point.
pub fn torsion_quotient(a: &FinAlgebra, k: u64) -> FinModule {
    let mut g = OMatrix::zeros(a.rank(), 1);
    for (i, u) in a.unit().iter().enumerate() {
        g[(i, 0)] = u * a.dvr().uniformizer_pow(k);
    }
    FinModule::quotient(a, &g)
}

/// `A / p`, where `p` is the kernel of the point: a copy of `O` on which
/// `A` acts through the point.
pub fn point_module(a: &FinAlgebra, pt: &OPoint) -> FinModule {
    FinModule::quotient(a, pt.kernel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::certify_c0;

    #[test]
    fn star_invariants() {
        let o = Dvr::new(2).unwrap();
        for ms in [vec![], vec![2], vec![1, 1], vec![1, 3, 2]] {
            let (a, pt) = star(&o, &ms).unwrap();
            let c = certify_c0(&a, &FinModule::regular(&a), &pt).unwrap();
            let sum: u64 = ms.iter().sum();
            let max = ms.iter().copied().max().unwrap_or(0);
            assert_eq!(c.length_cotangent_tors, sum);
            assert_eq!(c.length_psi, max);
            assert_eq!(c.ci_flag, ms.len() <= 1);
        }
    }

    #[test]
    fn tensor_of_hypersurfaces() {
        let o = Dvr::new(3).unwrap();
        let (a, pa) = star(&o, &[1]).unwrap();
        let (b, pb) = star(&o, &[2]).unwrap();
        let (t, pt) = tensor(&a, &pa, &b, &pb).unwrap();
        assert_eq!(t.rank(), 4);
        let c = certify_c0(&t, &FinModule::regular(&t), &pt).unwrap();
        assert_eq!((c.length_cotangent_tors, c.length_psi, c.delta), (3, 3, 0));
    }

    #[test]
    fn auxiliary_modules() {
        let o = Dvr::new(2).unwrap();
        let (a, pt) = star(&o, &[1, 1]).unwrap();
        assert_eq!(torsion_quotient(&a, 2).o_module(&o).torsion_length(), 6);
        let n = point_module(&a, &pt).o_module(&o);
        assert_eq!((n.free_rank(), n.torsion_length()), (1, 0));
        let others = branch_points(&a, &[1, 1]).unwrap();
        assert_eq!(others.len(), 2);
        // a branch module is invisible at the main point
        let w = point_module(&a, &others[1]);
        let c = certify_c0(&a, &FinModule::regular(&a).direct_sum(&w), &pt).unwrap();
        assert_eq!((c.mu, c.length_psi), (1, 1));
    }
}
