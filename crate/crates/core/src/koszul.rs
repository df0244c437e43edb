//! Koszul complexes over finite `O`-algebras and the multiplicative
//! structure of their homology.

use std::collections::HashMap;

use num_traits::Zero;

use crate::algebra::{check_algebra, minimal_generators, zero_vec, FinAlgebra, FinModule, Vector};
use crate::congruence::lex_subsets;
use crate::error::{Error, Result};
use crate::lattice;
use crate::omodule::{FinOModule, Length};
use crate::scalar::LocalScalar;
use crate::smith::OMatrix;

/// The Koszul complex on `a_1, ..., a_n` in `A`. Degree `i` has basis
/// `e_S ⊗ b` for `i`-subsets `S` in lexicographic order, and
/// `d(e_S) = Σ_k (-1)^k a_{s_k} e_{S - s_k}`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    algebra: FinAlgebra,
    elems: Vec<Vector>,
    subsets: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

/// Sign of the shuffle taking `S ++ T` to sorted order.
fn shuffle_sign(s: &[usize], t: &[usize]) -> bool {
    let inversions: usize = s.iter().map(|x| t.iter().filter(|y| *y < x).count()).sum();
    inversions % 2 == 1
}

fn neg_if(v: Vector, neg: bool) -> Vector {
    if neg {
        v.into_iter().map(|x| -x).collect()
    } else {
        v
    }
}

fn add_into(acc: &mut [LocalScalar], v: &[LocalScalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

pub fn build_koszul(a: &FinAlgebra, elems: &[Vector]) -> Result<KoszulComplex> {
    for e in elems {
        if e.len() != a.rank() || !e.iter().all(|x| a.dvr().is_integral(x)) {
            return Err(Error::Validation("Koszul element is not in the algebra".into()));
        }
    }
    let n = elems.len();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| lex_subsets(n, i)).collect();
    let index = subsets.iter().map(|ss| ss.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect()).collect();
    let k = KoszulComplex { algebra: a.clone(), elems: elems.to_vec(), subsets, index };
    let reg = FinModule::regular(a);
    for i in 2..=n {
        let dd = k.differential(&reg, i - 1).mul_mat(&k.differential(&reg, i));
        if !dd.is_zero() {
            return Err(Error::InternalInconsistency(format!("d^2 != 0 in degree {i}")));
        }
    }
    Ok(k)
}

impl KoszulComplex {
    pub fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }

    pub fn elems(&self) -> &[Vector] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn subsets(&self, i: usize) -> &[Vec<usize>] {
        &self.subsets[i]
    }

    /// Rank over `O` of the free part of `(K ⊗ M)_i`.
    pub fn rank(&self, m: &FinModule, i: usize) -> usize {
        self.subsets.get(i).map_or(0, |s| s.len()) * m.rank()
    }

    /// `d_i: (K ⊗ M)_i -> (K ⊗ M)_{i-1}`; zero outside `1..=n`.
    pub fn differential(&self, m: &FinModule, i: usize) -> OMatrix {
        let g = m.rank();
        let rows = if i == 0 { 0 } else { self.rank(m, i - 1) };
        let mut d = OMatrix::zeros(rows, self.rank(m, i));
        if i == 0 || i > self.len() {
            return d;
        }
        let acts: Vec<OMatrix> = self.elems.iter().map(|e| m.act(e)).collect();
        for (col, s) in self.subsets[i].iter().enumerate() {
            for (pos, &k) in s.iter().enumerate() {
                let mut rest = s.clone();
                rest.remove(pos);
                let row = self.index[i - 1][&rest];
                for r in 0..g {
                    for c in 0..g {
                        let v = &acts[k][(r, c)];
                        let v = if pos % 2 == 1 { -v } else { v.clone() };
                        set_add(&mut d, row * g + r, col * g + c, v);
                    }
                }
            }
        }
        d
    }

    /// Relations of `(K ⊗ M)_i` as an `O`-module.
    pub fn relations(&self, m: &FinModule, i: usize) -> OMatrix {
        let blocks = self.subsets.get(i).map_or(0, |s| s.len());
        let mut rel = OMatrix::zeros(0, 0);
        for _ in 0..blocks {
            rel = rel.block_diag(m.relations());
        }
        rel
    }

    /// Chain-level product `(K)_i × (K ⊗ M)_j -> (K ⊗ M)_{i+j}`.
    pub fn product(&self, m: &FinModule, x: &[LocalScalar], i: usize, y: &[LocalScalar], j: usize) -> Vector {
        let d = self.algebra.rank();
        let g = m.rank();
        if i + j > self.len() {
            return Vec::new();
        }
        let mut out = zero_vec(self.rank(m, i + j));
        for (si, s) in self.subsets[i].iter().enumerate() {
            let xs = &x[si * d..(si + 1) * d];
            if xs.iter().all(Zero::is_zero) {
                continue;
            }
            let act = m.act(xs);
            for (ti, t) in self.subsets[j].iter().enumerate() {
                if s.iter().any(|v| t.contains(v)) {
                    continue;
                }
                let yt = &y[ti * g..(ti + 1) * g];
                if yt.iter().all(Zero::is_zero) {
                    continue;
                }
                let mut u: Vec<usize> = s.iter().chain(t).copied().collect();
                u.sort_unstable();
                let ui = self.index[i + j][&u];
                let v = neg_if(act.mul_vec(yt), shuffle_sign(s, t));
                add_into(&mut out[ui * g..(ui + 1) * g], &v);
            }
        }
        out
    }

    /// Exterior multiplication by `u e_k` on `K_i -> K_{i+1}` (over `A`).
    pub fn wedge_basis(&self, k: usize, u: &[LocalScalar], i: usize) -> OMatrix {
        let d = self.algebra.rank();
        let reg = FinModule::regular(&self.algebra);
        let mut h = OMatrix::zeros(self.rank(&reg, i + 1), self.rank(&reg, i));
        if i >= self.len() {
            return h;
        }
        let act = self.algebra.action(u);
        for (si, s) in self.subsets[i].iter().enumerate() {
            if s.contains(&k) {
                continue;
            }
            let sign = s.iter().filter(|&&v| v < k).count() % 2 == 1;
            let mut t = s.clone();
            t.push(k);
            t.sort_unstable();
            let ti = self.index[i + 1][&t];
            for r in 0..d {
                for c in 0..d {
                    let v = &act[(r, c)];
                    set_add(&mut h, ti * d + r, si * d + c, if sign { -v } else { v.clone() });
                }
            }
        }
        h
    }
}

fn set_add(m: &mut OMatrix, r: usize, c: usize, v: LocalScalar) {
    m[(r, c)] += v;
}

/// Cycles, boundaries and homology of `K ⊗ M` in one degree.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: usize,
    /// `O`-basis of the cycle lattice (contains the relations).
    pub cycles: OMatrix,
    /// Generators of boundaries plus relations.
    pub boundaries: OMatrix,
    pub module: FinOModule,
}

impl Homology {
    pub fn is_boundary(&self, o: &crate::Dvr, v: &[LocalScalar]) -> bool {
        lattice::contains(o, &self.boundaries, v)
    }

    /// Lifts of a minimal generating set of the homology, as cycles.
    pub fn generators(&self, o: &crate::Dvr) -> Result<OMatrix> {
        lattice::quotient_generators(o, &self.cycles, &lattice::span_basis(o, &self.boundaries))
    }
}

pub fn homology(k: &KoszulComplex, m: &FinModule, i: usize) -> Result<Homology> {
    let o = k.algebra.dvr();
    let n = k.rank(m, i);
    let rel = k.relations(m, i);
    let cycles = if i == 0 {
        OMatrix::identity(n)
    } else {
        lattice::preimage(o, &k.differential(m, i), &k.relations(m, i - 1))
    };
    let cycles = lattice::span_basis(o, &cycles.hcat(&rel));
    let boundaries = k.differential(m, i + 1).hcat(&rel);
    let module = FinOModule::lattice_quotient(o, &cycles, &boundaries)?;
    Ok(Homology { degree: i, cycles, boundaries, module })
}

pub fn koszul_homology(k: &KoszulComplex, m: &FinModule, i: usize) -> Result<FinOModule> {
    Ok(homology(k, m, i)?.module)
}

/// The image of `∧^j H_1(K) ⊗ H_0(K ⊗ M)` in `H_j(K ⊗ M)` and its cokernel.
#[derive(Clone, Debug)]
pub struct WedgeImage {
    pub degree: usize,
    /// Products of cycles, as columns of `(K ⊗ M)_j`.
    pub image: OMatrix,
    pub homology: Homology,
    pub cokernel: FinOModule,
}

impl WedgeImage {
    /// The image fills the homology.
    pub fn is_onto(&self) -> bool {
        self.cokernel.is_zero()
    }

    /// The image is nonzero in homology.
    pub fn is_nonzero(&self, o: &crate::Dvr) -> bool {
        self.image.columns().iter().any(|v| !self.homology.is_boundary(o, v))
    }
}

pub fn wedge_image(k: &KoszulComplex, m: &FinModule, j: usize) -> Result<WedgeImage> {
    let o = k.algebra.dvr();
    let reg = FinModule::regular(&k.algebra);
    let h = homology(k, m, j)?;
    let ambient = k.rank(m, j);
    let mut cols: Vec<Vector> = Vec::new();
    if j <= k.len() {
        let z1: Vec<Vector> = if j == 0 { Vec::new() } else { homology(k, &reg, 1)?.generators(o)?.columns() };
        let basis: Vec<Vector> = (0..m.rank()).map(|t| crate::algebra::unit_vec(m.rank(), t)).collect();
        for sel in lex_subsets(z1.len(), j) {
            // left-nested product z_1 (z_2 (... (z_j m)))
            for b in &basis {
                let mut cur = b.clone();
                let mut deg = 0;
                for &zi in sel.iter().rev() {
                    cur = k.product(m, &z1[zi], 1, &cur, deg);
                    deg += 1;
                }
                if cur.iter().any(|x| !x.is_zero()) {
                    cols.push(cur);
                }
            }
        }
    }
    let image = OMatrix::from_cols(ambient, &cols);
    let cokernel = FinOModule::lattice_quotient(o, &h.cycles, &image.hcat(&h.boundaries))?;
    Ok(WedgeImage { degree: j, image, homology: h, cokernel })
}

/// Checks that `elems` minimally generate the ideal spanned by `ideal`.
pub fn check_minimal_generators(a: &FinAlgebra, elems: &[Vector], ideal: &OMatrix) -> Result<()> {
    let o = a.dvr();
    let maximal = check_algebra(a)?.maximal_ideal;
    let needed = minimal_generators(a, ideal, &maximal)?.cols();
    let given = OMatrix::from_cols(a.rank(), elems);
    let spans = lattice::lattices_equal(o, &a.ideal_lattice(&given), &a.ideal_lattice(ideal));
    if !spans {
        return Err(Error::NotMinimalGenerators("elements do not generate the ideal".into()));
    }
    if elems.len() != needed {
        return Err(Error::NotMinimalGenerators(format!("{} elements given, {} needed", elems.len(), needed)));
    }
    Ok(())
}

/// Koszul complex on a minimal generating set of an ideal.
pub fn koszul_on_ideal(a: &FinAlgebra, ideal: &OMatrix) -> Result<KoszulComplex> {
    let maximal = check_algebra(a)?.maximal_ideal;
    let gens = minimal_generators(a, ideal, &maximal)?;
    build_koszul(a, &gens.columns())
}

/// `∧^{n-c} H_1(K) -> H_{n-c}(K)` for `K` on minimal generators of `ideal`.
pub fn wedge_top_map(k: &KoszulComplex, ideal: &OMatrix, c: usize) -> Result<WedgeImage> {
    check_minimal_generators(&k.algebra, &k.elems, ideal)?;
    let j = k.len().checked_sub(c).ok_or_else(|| Error::Validation("codimension exceeds generator count".into()))?;
    wedge_image(k, &FinModule::regular(&k.algebra), j)
}

#[derive(Clone, Debug)]
pub struct WiebeVerdict {
    pub embedding_dim: usize,
    /// `∧^e H_1(K) ≠ 0`; forces an artinian complete intersection.
    pub ci_signal: bool,
    pub wedge: WedgeImage,
}

/// Koszul complex on minimal generators of the maximal ideal of an
/// artinian algebra, and whether the top wedge of `H_1` survives.
pub fn wiebe_test(r: &FinAlgebra) -> Result<WiebeVerdict> {
    if !r.is_artinian() {
        return Err(Error::NotArtinian);
    }
    let maximal = check_algebra(r)?.maximal_ideal;
    let k = koszul_on_ideal(r, &maximal)?;
    let e = k.len();
    let wedge = wedge_image(&k, &FinModule::regular(r), e)?;
    Ok(WiebeVerdict { embedding_dim: e, ci_signal: wedge.is_nonzero(r.dvr()), wedge })
}

#[derive(Clone, Debug)]
pub struct DefectModule {
    pub module: FinOModule,
    pub length: Length,
}

/// Cokernel of `∧^{n-c} H_1(K) ⊗ H_0(K ⊗ M) -> H_{n-c}(K ⊗ M)`.
pub fn defect_module(k: &KoszulComplex, m: &FinModule, c: usize) -> Result<DefectModule> {
    let j = k.len().checked_sub(c).ok_or_else(|| Error::Validation("codimension exceeds generator count".into()))?;
    let w = wedge_image(k, m, j)?;
    let length = w.cokernel.length();
    Ok(DefectModule { module: w.cokernel, length })
}

/// Null-homotopy of multiplication by `u a_k`: `h = u e_k ∧ -`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub element: Vector,
    /// `h_i: K_i -> K_{i+1}` for `i = 0..=n`.
    pub maps: Vec<OMatrix>,
}

pub fn koszul_homotopy_witness(k: &KoszulComplex, generator: usize, scale: Option<&[LocalScalar]>) -> Result<Homotopy> {
    let a = &k.algebra;
    let n = k.len();
    if generator >= n {
        return Err(Error::Validation(format!("no Koszul generator with index {generator}")));
    }
    let u: Vector = scale.map_or_else(|| a.unit().clone(), <[LocalScalar]>::to_vec);
    let element = a.mul(&u, &k.elems[generator]);
    let reg = FinModule::regular(a);
    let maps: Vec<OMatrix> = (0..=n).map(|i| k.wedge_basis(generator, &u, i)).collect();
    let act = a.action(&element);
    for i in 0..=n {
        let size = k.rank(&reg, i);
        let dh = k.differential(&reg, i + 1).mul_mat(&maps[i]);
        let hd = if i == 0 { OMatrix::zeros(size, size) } else { maps[i - 1].mul_mat(&k.differential(&reg, i)) };
        let mut expected = OMatrix::zeros(0, 0);
        for _ in 0..k.subsets[i].len() {
            expected = expected.block_diag(&act);
        }
        let lhs = if dh.rows() == 0 { hd } else { dh.add_mat(&hd) };
        let diff = lhs.sub_mat(&expected);
        let rel = k.relations(&reg, i);
        if diff.columns().iter().any(|c| !lattice::contains(a.dvr(), &rel, c)) {
            return Err(Error::UnsolvableHomotopy {
                generator,
                reason: format!("dh + hd differs from multiplication in degree {i}"),
            });
        }
    }
    Ok(Homotopy { element, maps })
}

/// Spot-checks `z w = (-1)^{|z||w|} w z` on cycles of `K` in the given
/// degrees. Returns the first failing pair of degrees.
pub fn graded_commutativity_check(k: &KoszulComplex, samples: &[(usize, Vector)]) -> Option<(usize, usize)> {
    let reg = FinModule::regular(&k.algebra);
    for (i, z) in samples {
        for (j, w) in samples {
            if i + j > k.len() {
                continue;
            }
            let zw = k.product(&reg, z, *i, w, *j);
            let wz = k.product(&reg, w, *j, z, *i);
            let sign = (i * j) % 2 == 1;
            let wz = neg_if(wz, sign);
            if zw != wz {
                return Some((*i, *j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::point_kernel;
    use crate::scalar::{int, Dvr};
    use crate::testutil::{dual_numbers_fp, fiber3, hyper, square_zero_fp, truncated};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn base_ring_on_p() {
        let o = FinAlgebra::base_ring(Dvr::new(3).unwrap());
        let k = build_koszul(&o, &[v(&[3])]).unwrap();
        let reg = FinModule::regular(&o);
        assert_eq!(k.differential(&reg, 1), OMatrix::from_rows(vec![v(&[3])]));
        assert_eq!(koszul_homology(&k, &reg, 0).unwrap(), FinOModule::cyclic(o.dvr(), 1));
        assert!(koszul_homology(&k, &reg, 1).unwrap().is_zero());
    }

    #[test]
    fn hypersurface_homology() {
        let a = hyper(2, 2);
        let k = build_koszul(&a, &[v(&[0, 1])]).unwrap();
        let reg = FinModule::regular(&a);
        assert_eq!(k.differential(&reg, 1), *a.basis_action(1));
        assert_eq!(koszul_homology(&k, &reg, 0).unwrap(), FinOModule::free(1));
        let h1 = homology(&k, &reg, 1).unwrap();
        assert_eq!(h1.module, FinOModule::free(1));
        assert!(lattice::lattices_equal(a.dvr(), &h1.cycles, &OMatrix::from_cols(2, &[v(&[-2, 1])])));
    }

    #[test]
    fn ranks_and_d_squared() {
        let a = fiber3(3);
        let k = build_koszul(&a, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let reg = FinModule::regular(&a);
        assert_eq!((0..3).map(|i| k.rank(&reg, i)).collect::<Vec<_>>(), vec![3, 6, 3]);
        assert!(k.differential(&reg, 1).mul_mat(&k.differential(&reg, 2)).is_zero());
    }

    #[test]
    fn square_zero_top_homology() {
        let r = square_zero_fp(2);
        let k = build_koszul(&r, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let h2 = koszul_homology(&k, &FinModule::regular(&r), 2).unwrap();
        // H_2 = socle (x, y) e_12
        assert_eq!(h2.torsion_divisors(), &[1, 1]);
    }

    #[test]
    fn order_independence() {
        let a = fiber3(2);
        let reg = FinModule::regular(&a);
        let k1 = build_koszul(&a, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let k2 = build_koszul(&a, &[v(&[0, 0, 1]), v(&[0, 1, 0])]).unwrap();
        for i in 0..3 {
            assert_eq!(koszul_homology(&k1, &reg, i).unwrap(), koszul_homology(&k2, &reg, i).unwrap());
        }
    }

    #[test]
    fn wedge_verdicts() {
        let a = hyper(2, 8);
        let pt = point_kernel(&a, v(&[1, 0])).unwrap();
        let k = koszul_on_ideal(&a, pt.kernel()).unwrap();
        assert!(wedge_top_map(&k, pt.kernel(), 0).unwrap().is_onto());

        let f = fiber3(2);
        let pt = point_kernel(&f, v(&[1, 0, 0])).unwrap();
        let k = koszul_on_ideal(&f, pt.kernel()).unwrap();
        assert_eq!(k.len(), 2);
        assert!(!wedge_top_map(&k, pt.kernel(), 0).unwrap().is_onto());

        let o = FinAlgebra::base_ring(Dvr::new(2).unwrap());
        let pt = point_kernel(&o, v(&[1])).unwrap();
        let k = koszul_on_ideal(&o, pt.kernel()).unwrap();
        assert!(k.is_empty());
        assert!(wedge_top_map(&k, pt.kernel(), 0).unwrap().is_onto());
    }

    #[test]
    fn non_minimal_generators_rejected() {
        let f = fiber3(2);
        let pt = point_kernel(&f, v(&[1, 0, 0])).unwrap();
        let k = build_koszul(&f, &[v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[0, 1, 1])]).unwrap();
        assert!(matches!(wedge_top_map(&k, pt.kernel(), 0), Err(Error::NotMinimalGenerators(_))));
        let k = build_koszul(&f, &[v(&[0, 1, 0])]).unwrap();
        assert!(matches!(wedge_top_map(&k, pt.kernel(), 0), Err(Error::NotMinimalGenerators(_))));
    }

    #[test]
    fn wiebe_examples() {
        let w = wiebe_test(&dual_numbers_fp(3)).unwrap();
        assert_eq!((w.embedding_dim, w.ci_signal), (1, true));
        let w = wiebe_test(&square_zero_fp(2)).unwrap();
        assert_eq!((w.embedding_dim, w.ci_signal), (2, false));
        let w = wiebe_test(&truncated(2, 2)).unwrap();
        assert_eq!((w.embedding_dim, w.ci_signal), (1, true));
        assert_eq!(wiebe_test(&hyper(2, 2)).unwrap_err(), Error::NotArtinian);
    }

    #[test]
    fn defect_module_matches_delta() {
        use crate::congruence::wiles_defect_c0;
        for (a, values) in [(hyper(2, 8), v(&[1, 0])), (fiber3(2), v(&[1, 0, 0])), (fiber3(3), v(&[1, 0, 0]))] {
            let pt = point_kernel(&a, values).unwrap();
            let reg = FinModule::regular(&a);
            let k = koszul_on_ideal(&a, pt.kernel()).unwrap();
            let dm = defect_module(&k, &reg, 0).unwrap();
            let cert = wiles_defect_c0(&a, &reg, &pt).unwrap();
            assert_eq!(dm.length, Length::Finite(cert.delta as u64));
        }
        let o = FinAlgebra::base_ring(Dvr::new(5).unwrap());
        let k = build_koszul(&o, &[]).unwrap();
        assert!(defect_module(&k, &FinModule::regular(&o), 0).unwrap().module.is_zero());
    }

    #[test]
    fn homotopy_witnesses() {
        let o = FinAlgebra::base_ring(Dvr::new(2).unwrap());
        let k = build_koszul(&o, &[v(&[2])]).unwrap();
        let h = koszul_homotopy_witness(&k, 0, None).unwrap();
        assert_eq!(h.maps[0], OMatrix::from_rows(vec![v(&[1])]));

        let a = fiber3(2);
        let k = build_koszul(&a, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert!(koszul_homotopy_witness(&k, 0, None).is_ok());
        let h = koszul_homotopy_witness(&k, 1, Some(&v(&[3, 1, 0]))).unwrap();
        assert_eq!(h.element, a.mul(&v(&[3, 1, 0]), &v(&[0, 0, 1])));
        assert!(koszul_homotopy_witness(&k, 2, None).is_err());
    }

    #[test]
    fn graded_commutativity() {
        let a = fiber3(2);
        let k = build_koszul(&a, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let reg = FinModule::regular(&a);
        let z1 = homology(&k, &reg, 1).unwrap().cycles.columns();
        let mut samples: Vec<(usize, Vector)> = z1.into_iter().map(|z| (1, z)).collect();
        samples.push((0, v(&[1, 2, 0])));
        assert_eq!(graded_commutativity_check(&k, &samples), None);
    }
}
