//! Finite free complexes over finite algebras, derived actions of quotient
//! rings on them, minimal free resolutions and projective dimension.

use num_traits::Zero;

use crate::algebra::{check_algebra, minimal_generators, module_minimal_generators, quotient_algebra, unit_vec, zero_vec, FinAlgebra, FinModule, Vector};
use crate::congruence::lex_subsets;
use crate::error::{Error, Result};
use crate::koszul::KoszulComplex;
use crate::lattice;
use crate::matrix::Matrix;
use crate::omodule::FinOModule;
use crate::smith::OMatrix;

/// A matrix with entries in `A`.
pub type AMatrix = Matrix<Vector>;

fn a_zeros(d: usize, rows: usize, cols: usize) -> AMatrix {
    Matrix::filled(rows, cols, zero_vec(d))
}

/// The `O`-matrix of an `A`-matrix acting on `A^cols -> A^rows`.
pub fn expand(a: &FinAlgebra, m: &AMatrix) -> OMatrix {
    let d = a.rank();
    let mut out = OMatrix::zeros(m.rows() * d, m.cols() * d);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let act = a.action(&m[(r, c)]);
            for i in 0..d {
                for j in 0..d {
                    out[(r * d + i, c * d + j)] = act[(i, j)].clone();
                }
            }
        }
    }
    out
}

fn free_relations(a: &FinAlgebra, r: usize) -> OMatrix {
    FinModule::free(a, r).relations().clone()
}

/// `0 -> F_n -> ... -> F_0 -> 0` with `F_i = A^{r_i}`.
#[derive(Clone, Debug)]
pub struct FiniteFreeComplex {
    algebra: FinAlgebra,
    ranks: Vec<usize>,
    /// `diffs[i - 1]` is `d_i: F_i -> F_{i-1}`.
    diffs: Vec<AMatrix>,
}

impl FiniteFreeComplex {
    pub fn new(a: &FinAlgebra, ranks: Vec<usize>, diffs: Vec<AMatrix>) -> Result<Self> {
        if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
            return Err(Error::Dimension("a complex of length n needs n + 1 ranks and n differentials".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.shape() != (ranks[i], ranks[i + 1]) {
                return Err(Error::Dimension(format!("differential {} has the wrong shape", i + 1)));
            }
        }
        let f = FiniteFreeComplex { algebra: a.clone(), ranks, diffs };
        for i in 2..=f.len() {
            let dd = f.o_diff(i - 1).mul_mat(&f.o_diff(i));
            let rel = free_relations(a, f.ranks[i - 2]);
            if dd.columns().iter().any(|c| !c.iter().all(Zero::is_zero) && !lattice::contains(a.dvr(), &rel, c)) {
                return Err(Error::Validation(format!("d^2 != 0 in degree {i}")));
            }
        }
        if f.homology(0)?.is_zero() {
            return Err(Error::Validation("H_0 of the complex is zero".into()));
        }
        Ok(f)
    }

    pub fn from_koszul(k: &KoszulComplex) -> Result<Self> {
        let a = k.algebra();
        let d = a.rank();
        let n = k.len();
        let ranks: Vec<usize> = (0..=n).map(|i| k.subsets(i).len()).collect();
        let mut diffs = Vec::new();
        for i in 1..=n {
            let mut m = a_zeros(d, ranks[i - 1], ranks[i]);
            let lower = k.subsets(i - 1);
            for (col, s) in k.subsets(i).iter().enumerate() {
                for (pos, &j) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(pos);
                    let row = lower.iter().position(|t| *t == rest).expect("face of a subset");
                    let e = &k.elems()[j];
                    m[(row, col)] = if pos % 2 == 1 { e.iter().map(|x| -x).collect() } else { e.clone() };
                }
            }
            diffs.push(m);
        }
        FiniteFreeComplex::new(a, ranks, diffs)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let d = self.algebra.rank();
        let n = self.len().max(other.len());
        let rank = |f: &Self, i: usize| f.ranks.get(i).copied().unwrap_or(0);
        let ranks: Vec<usize> = (0..=n).map(|i| rank(self, i) + rank(other, i)).collect();
        let mut diffs = Vec::new();
        for i in 1..=n {
            let mut m = a_zeros(d, ranks[i - 1], ranks[i]);
            for (f, ro, co) in [(self, 0, 0), (other, rank(self, i - 1), rank(self, i))] {
                if let Some(di) = f.diffs.get(i - 1) {
                    for r in 0..di.rows() {
                        for c in 0..di.cols() {
                            m[(ro + r, co + c)] = di[(r, c)].clone();
                        }
                    }
                }
            }
            diffs.push(m);
        }
        FiniteFreeComplex::new(&self.algebra, ranks, diffs)
    }

    pub fn algebra(&self) -> &FinAlgebra {
        &self.algebra
    }

    pub fn len(&self) -> usize {
        self.diffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diffs.is_empty()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// `d_i` over `A`.
    pub fn diff(&self, i: usize) -> &AMatrix {
        &self.diffs[i - 1]
    }

    /// `d_i` over `O`; zero outside `1..=n`.
    pub fn o_diff(&self, i: usize) -> OMatrix {
        let d = self.algebra.rank();
        let rank = |j: usize| self.ranks.get(j).copied().unwrap_or(0) * d;
        if i == 0 || i > self.len() {
            return OMatrix::zeros(if i == 0 { 0 } else { rank(i - 1) }, rank(i));
        }
        expand(&self.algebra, &self.diffs[i - 1])
    }

    /// First degree whose differential has an entry outside `m_A`.
    pub fn non_minimal_degree(&self, maximal: &OMatrix) -> Option<usize> {
        let o = self.algebra.dvr();
        (1..=self.len()).find(|&i| {
            let d = &self.diffs[i - 1];
            d.entries().any(|x| !lattice::contains(o, maximal, x))
        })
    }

    pub fn homology(&self, i: usize) -> Result<FinOModule> {
        let a = &self.algebra;
        let o = a.dvr();
        let rank = self.ranks.get(i).copied().unwrap_or(0);
        let rel = free_relations(a, rank);
        let cycles = if i == 0 {
            OMatrix::identity(rank * a.rank())
        } else {
            lattice::preimage(o, &self.o_diff(i), &free_relations(a, self.ranks[i - 1]))
        };
        let cycles = lattice::span_basis(o, &cycles.hcat(&rel));
        FinOModule::lattice_quotient(o, &cycles, &self.o_diff(i + 1).hcat(&rel))
    }

    /// `H_0(F)` as an `A`-module.
    pub fn h0_module(&self) -> FinModule {
        let a = &self.algebra;
        let free = FinModule::free(a, self.ranks[0]);
        let rel = lattice::span_basis(a.dvr(), &self.o_diff(1).hcat(free.relations()));
        FinModule::new(a, free.rank(), free.actions().to_vec(), rel).expect("cokernel of an A-linear map").simplify(a.dvr())
    }
}

/// Null-homotopies `h_a` with `d h_a + h_a d = a` for each ideal generator.
#[derive(Clone, Debug)]
pub struct DerivedAction {
    pub generators: Vec<Vector>,
    /// `homotopies[g][i]` is `h_i: F_i -> F_{i+1}` for generator `g`.
    pub homotopies: Vec<Vec<AMatrix>>,
}

/// Re-checks `d h + h d = a * id` on the expanded `O`-matrices.
pub fn check_homotopy(f: &FiniteFreeComplex, a_elem: &[crate::LocalScalar], h: &[AMatrix]) -> bool {
    let a = &f.algebra;
    let o = a.dvr();
    let n = f.len();
    let act = a.action(a_elem);
    for i in 0..=n {
        let size = f.ranks[i] * a.rank();
        let mut lhs = OMatrix::zeros(size, size);
        if i < n {
            lhs = lhs.add_mat(&f.o_diff(i + 1).mul_mat(&expand(a, &h[i])));
        }
        if i > 0 {
            lhs = lhs.add_mat(&expand(a, &h[i - 1]).mul_mat(&f.o_diff(i)));
        }
        let mut expected = OMatrix::zeros(0, 0);
        for _ in 0..f.ranks[i] {
            expected = expected.block_diag(&act);
        }
        let rel = free_relations(a, f.ranks[i]);
        let diff = lhs.sub_mat(&expected);
        if diff.columns().iter().any(|c| !c.iter().all(Zero::is_zero) && !lattice::contains(o, &rel, c)) {
            return false;
        }
    }
    true
}

/// Solves for a null-homotopy of multiplication by `a_elem` as an
/// `O`-linear system in the entries of `h`.
pub fn solve_homotopy(f: &FiniteFreeComplex, a_elem: &[crate::LocalScalar]) -> Option<Vec<AMatrix>> {
    let a = &f.algebra;
    let o = a.dvr();
    let d = a.rank();
    let n = f.len();
    let r = &f.ranks;
    // equation blocks: degree i, entry (row, col) of an r_i x r_i matrix
    let mut eq_offset = vec![0usize; n + 2];
    for i in 0..=n {
        eq_offset[i + 1] = eq_offset[i] + r[i] * r[i] * d;
    }
    let eq_len = eq_offset[n + 1];
    let eq_index = |i: usize, row: usize, col: usize, t: usize| eq_offset[i] + (row * r[i] + col) * d + t;
    let mut cols: Vec<Vector> = Vec::new();
    let mut unknowns: Vec<(usize, usize, usize, usize)> = Vec::new();
    for i in 0..n {
        let di = &f.diffs[i];
        for q in 0..r[i + 1] {
            for c in 0..r[i] {
                for t in 0..d {
                    let et = unit_vec(d, t);
                    let mut v = zero_vec(eq_len);
                    // d_{i+1} h_i in degree i
                    for row in 0..r[i] {
                        let prod = a.mul(&di[(row, q)], &et);
                        for s in 0..d {
                            v[eq_index(i, row, c, s)] += &prod[s];
                        }
                    }
                    // h_i d_{i+1} in degree i + 1
                    for col in 0..r[i + 1] {
                        let prod = a.mul(&et, &di[(c, col)]);
                        for s in 0..d {
                            v[eq_index(i + 1, q, col, s)] += &prod[s];
                        }
                    }
                    cols.push(v);
                    unknowns.push((i, q, c, t));
                }
            }
        }
    }
    let nunk = cols.len();
    let rel = a.relations();
    for i in 0..=n {
        for row in 0..r[i] {
            for col in 0..r[i] {
                for rc in rel.columns() {
                    let mut v = zero_vec(eq_len);
                    for s in 0..d {
                        v[eq_index(i, row, col, s)] = rc[s].clone();
                    }
                    cols.push(v);
                }
            }
        }
    }
    let mut target = zero_vec(eq_len);
    for i in 0..=n {
        for k in 0..r[i] {
            for s in 0..d {
                target[eq_index(i, k, k, s)] = a_elem[s].clone();
            }
        }
    }
    let sol = lattice::solve_in_lattice(o, &OMatrix::from_cols(eq_len, &cols), &target)?;
    let mut h: Vec<AMatrix> = (0..=n).map(|i| a_zeros(d, r.get(i + 1).copied().unwrap_or(0), r[i])).collect();
    for (k, &(i, q, c, t)) in unknowns.iter().enumerate().take(nunk) {
        h[i][(q, c)][t] = sol[k].clone();
    }
    Some(h)
}

/// A derived action of `B = A/(gens)` on `F`.
pub fn verify_derived_action(f: &FiniteFreeComplex, gens: &[Vector]) -> Result<DerivedAction> {
    let mut homotopies = Vec::new();
    let h0 = f.h0_module();
    for (g, a_elem) in gens.iter().enumerate() {
        let acts_on_h0 = h0.act(a_elem);
        if acts_on_h0.columns().iter().any(|c| !c.iter().all(Zero::is_zero) && !lattice::contains(f.algebra.dvr(), h0.relations(), c)) {
            return Err(Error::UnsolvableHomotopy { generator: g, reason: "multiplication is nonzero on H_0".into() });
        }
        let h = solve_homotopy(f, a_elem)
            .ok_or_else(|| Error::UnsolvableHomotopy { generator: g, reason: "homotopy equations have no solution over A".into() })?;
        if !check_homotopy(f, a_elem, &h) {
            return Err(Error::InternalInconsistency("homotopy solution fails re-verification".into()));
        }
        homotopies.push(h);
    }
    Ok(DerivedAction { generators: gens.to_vec(), homotopies })
}

/// Embedding dimension of a local finite algebra.
pub fn edim(a: &FinAlgebra) -> Result<usize> {
    let m = check_algebra(a)?.maximal_ideal;
    Ok(minimal_generators(a, &m, &m)?.cols())
}

/// Minimal number of generators of a module.
pub fn min_generators(a: &FinAlgebra, m: &FinModule) -> Result<usize> {
    let maximal = check_algebra(a)?.maximal_ideal;
    Ok(module_minimal_generators(a, m, &OMatrix::identity(m.rank()), &maximal)?.cols())
}

/// `M ≅ A^μ(M)`: the surjection `A^μ -> M` is an isomorphism exactly when
/// both sides have the same `O`-module structure.
pub fn is_free_module(a: &FinAlgebra, m: &FinModule) -> Result<bool> {
    let o = a.dvr();
    let mu = min_generators(a, m)?;
    Ok(m.o_module(o) == FinModule::free(a, mu).o_module(o))
}

fn binomial(n: usize, k: usize) -> usize {
    lex_subsets(n, k).len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub b: usize,
    pub n: usize,
    pub ranks: Vec<usize>,
    pub expected: Vec<usize>,
    pub matches: bool,
    pub edim_a: usize,
    pub edim_b: usize,
    /// `n <= edim A - edim B`.
    pub within_bound: bool,
}

/// Compares `rank F_i` with `b * C(n, i)` for `B = A/(gens)`.
pub fn rank_profile_check(f: &FiniteFreeComplex, gens: &[Vector]) -> Result<RankProfile> {
    let a = &f.algebra;
    let maximal = check_algebra(a)?.maximal_ideal;
    if let Some(i) = f.non_minimal_degree(&maximal) {
        return Err(Error::NotMinimalComplex(i));
    }
    let q = quotient_algebra(a, &OMatrix::from_cols(a.rank(), gens))?;
    let edim_a = edim(a)?;
    let edim_b = edim(&q.algebra)?;
    let b = min_generators(a, &f.h0_module())?;
    let n = f.len();
    let expected: Vec<usize> = (0..=n).map(|i| b * binomial(n, i)).collect();
    Ok(RankProfile {
        b,
        n,
        matches: expected == f.ranks,
        ranks: f.ranks.clone(),
        expected,
        edim_a,
        edim_b,
        within_bound: n + edim_b <= edim_a,
    })
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub betti: Vec<usize>,
    pub terminated: bool,
    /// Differentials `F_i -> F_{i-1}` over `A`, `i >= 1`.
    pub diffs: Vec<AMatrix>,
}

impl Resolution {
    pub fn projective_dimension(&self) -> Option<usize> {
        (self.terminated && !self.betti.is_empty()).then(|| self.betti.len() - 1)
    }
}

/// Minimal free resolution up to homological degree `length_bound`.
pub fn minimal_free_resolution(a: &FinAlgebra, m: &FinModule, length_bound: usize) -> Result<Resolution> {
    let o = a.dvr();
    let d = a.rank();
    let maximal = check_algebra(a)?.maximal_ideal;
    let mut ambient = m.clone();
    let mut z = OMatrix::identity(m.rank());
    let mut betti = Vec::new();
    let mut diffs = Vec::new();
    for k in 0..=length_bound {
        let gens = module_minimal_generators(a, &ambient, &z, &maximal)?;
        let b = gens.cols();
        if b == 0 {
            return Ok(Resolution { betti, terminated: true, diffs });
        }
        betti.push(b);
        if k > 0 {
            let prev = ambient.rank() / d;
            let mut dm = a_zeros(d, prev, b);
            for (j, g) in gens.columns().iter().enumerate() {
                for q in 0..prev {
                    dm[(q, j)] = g[q * d..(q + 1) * d].to_vec();
                }
            }
            diffs.push(dm);
        }
        // A^b -> ambient, column (j, t) = e_t * g_j
        let mut cols = Vec::with_capacity(b * d);
        for g in gens.columns() {
            for t in 0..d {
                cols.push(ambient.actions()[t].mul_vec(&g));
            }
        }
        let phi = OMatrix::from_cols(ambient.rank(), &cols);
        let free = FinModule::free(a, b);
        let kernel = lattice::preimage(o, &phi, ambient.relations());
        let kernel = lattice::span_basis(o, &kernel.hcat(free.relations()));
        if lattice::is_sublattice(o, &kernel, free.relations()) {
            return Ok(Resolution { betti, terminated: true, diffs });
        }
        ambient = free;
        z = kernel;
    }
    Ok(Resolution { betti, terminated: false, diffs })
}

#[derive(Clone, Debug)]
pub struct NagataReport {
    pub edim_a: usize,
    pub edim_b: usize,
    pub resolution_a: Resolution,
    pub resolution_b: Resolution,
    /// `pd_A N = pd_B N + edim A - edim B`, when both resolutions end.
    pub holds: Option<bool>,
}

/// Compares projective dimensions over `A` and `B = A/(seq)` for a
/// `B`-module `n` given over `A`.
pub fn nagata_check(a: &FinAlgebra, seq: &[Vector], n: &FinModule, length_bound: usize) -> Result<NagataReport> {
    let o = a.dvr();
    let d = a.rank();
    let rep = check_algebra(a)?;
    let maximal = rep.maximal_ideal;
    let gens = OMatrix::from_cols(d, seq);
    for (i, s) in seq.iter().enumerate() {
        if !lattice::contains(o, &maximal, s) {
            return Err(Error::NotCompleteIntersectionQuotient(format!("element {i} is a unit")));
        }
        let q = if i == 0 { FinModule::regular(a) } else { FinModule::quotient(a, &gens.select_cols(&(0..i).collect::<Vec<_>>())) };
        let act = q.act(s);
        let ker = lattice::preimage(o, &act, q.relations());
        if !lattice::is_sublattice(o, &ker, q.relations()) {
            return Err(Error::NotCompleteIntersectionQuotient(format!("element {i} is a zero divisor")));
        }
    }
    let m2 = a.product_lattice(&maximal, &maximal);
    let span = lattice::span_basis(o, &a.ideal_lattice(&gens).hcat(&m2));
    let image_len = FinOModule::lattice_quotient(o, &span, &m2)?.torsion_length() as usize;
    if image_len != seq.len() * rep.residue_degree {
        return Err(Error::NotCompleteIntersectionQuotient("images in m/m^2 are dependent".into()));
    }
    for s in seq {
        let act = n.act(s);
        if act.columns().iter().any(|c| !c.iter().all(Zero::is_zero) && !lattice::contains(o, n.relations(), c)) {
            return Err(Error::Validation("module is not killed by the quotient sequence".into()));
        }
    }
    let q = quotient_algebra(a, &gens)?;
    let nb = q.descend(n)?;
    let resolution_a = minimal_free_resolution(a, n, length_bound)?;
    let resolution_b = minimal_free_resolution(&q.algebra, &nb, length_bound)?;
    let edim_a = edim(a)?;
    let edim_b = edim(&q.algebra)?;
    let holds = match (resolution_a.projective_dimension(), resolution_b.projective_dimension()) {
        (Some(pa), Some(pb)) => Some(pa == pb + edim_a - edim_b),
        _ => None,
    };
    Ok(NagataReport { edim_a, edim_b, resolution_a, resolution_b, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::build_koszul;
    use crate::scalar::int;
    use crate::testutil::{dual_numbers_fp, fiber3, hyper, square_zero_fp, truncated};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn koszul_as_derived_complex() {
        let a = fiber3(2);
        let gens = vec![v(&[0, 1, 0]), v(&[0, 0, 1])];
        let k = build_koszul(&a, &gens).unwrap();
        let f = FiniteFreeComplex::from_koszul(&k).unwrap();
        assert_eq!(f.ranks(), &[1, 2, 1]);
        let act = verify_derived_action(&f, &gens).unwrap();
        for (g, h) in act.generators.iter().zip(&act.homotopies) {
            assert!(check_homotopy(&f, g, h));
        }
    }

    #[test]
    fn unit_action_is_unsolvable() {
        let a = dual_numbers_fp(2);
        let k = build_koszul(&a, &[v(&[0, 1])]).unwrap();
        let f = FiniteFreeComplex::from_koszul(&k).unwrap();
        assert!(matches!(verify_derived_action(&f, &[v(&[1, 0])]), Err(Error::UnsolvableHomotopy { generator: 0, .. })));
    }

    #[test]
    fn truncated_resolution_of_quotient_by_regular_element() {
        // A = O[x]/(x^2), B = A/(2): resolution 0 -> A -(2)-> A of B
        let a = hyper(2, 0);
        let b = FinModule::quotient(&a, &OMatrix::from_cols(2, &[v(&[2, 0])]));
        let res = minimal_free_resolution(&a, &b, 4).unwrap();
        assert_eq!((res.betti.clone(), res.terminated), (vec![1, 1], true));
        let f = FiniteFreeComplex::new(&a, res.betti.clone(), res.diffs.clone()).unwrap();
        assert!(verify_derived_action(&f, &[v(&[2, 0])]).is_ok());
    }

    #[test]
    fn rank_profiles() {
        let a = square_zero_fp(3);
        let x = v(&[0, 1, 0]);
        let k1 = FiniteFreeComplex::from_koszul(&build_koszul(&a, &[x.clone()]).unwrap()).unwrap();
        let r = rank_profile_check(&k1, &[x.clone()]).unwrap();
        assert_eq!((r.b, r.expected.clone(), r.matches, r.within_bound), (1, vec![1, 1], true, true));
        let both = vec![x.clone(), v(&[0, 0, 1])];
        let k2 = FiniteFreeComplex::from_koszul(&build_koszul(&a, &both).unwrap()).unwrap();
        let r = rank_profile_check(&k2, &both).unwrap();
        assert_eq!((r.expected.clone(), r.matches), (vec![1, 2, 1], true));
        let doubled = k1.direct_sum(&k1).unwrap();
        let r = rank_profile_check(&doubled, &[x]).unwrap();
        assert_eq!((r.b, r.ranks.clone(), r.matches), (2, vec![2, 2], true));

        let f = FiniteFreeComplex::new(&a, vec![1, 1], vec![Matrix::from_rows(vec![vec![v(&[1, 1, 0])]])]);
        assert!(f.is_err(), "H_0 of a unit differential is zero");
    }

    #[test]
    fn non_minimal_rejected() {
        let a = hyper(2, 0);
        let f = FiniteFreeComplex::new(&a, vec![1, 1], vec![Matrix::from_rows(vec![vec![v(&[1, 0])]])]);
        assert!(f.is_err());
        let g = FiniteFreeComplex::new(&a, vec![2, 1], vec![Matrix::from_rows(vec![vec![v(&[1, 0])], vec![v(&[0, 0])]])]).unwrap();
        assert_eq!(rank_profile_check(&g, &[]).unwrap_err(), Error::NotMinimalComplex(1));
    }

    #[test]
    fn resolutions() {
        let a = dual_numbers_fp(2);
        let k = FinModule::quotient(&a, &OMatrix::from_cols(2, &[v(&[0, 1])]));
        let res = minimal_free_resolution(&a, &k, 4).unwrap();
        assert_eq!((res.betti.clone(), res.terminated), (vec![1, 1, 1, 1, 1], false));

        let f = truncated(3, 1);
        let res = minimal_free_resolution(&f, &FinModule::regular(&f), 4).unwrap();
        assert_eq!((res.betti.clone(), res.projective_dimension()), (vec![1], Some(0)));

        let a = square_zero_fp(2);
        let res = minimal_free_resolution(&a, &FinModule::regular(&a), 3).unwrap();
        assert_eq!(res.projective_dimension(), Some(0));
        let k = FinModule::quotient(&a, &OMatrix::from_cols(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]));
        let res = minimal_free_resolution(&a, &k, 3).unwrap();
        // Betti numbers of the residue field grow like 2^i
        assert_eq!(res.betti, vec![1, 2, 4, 8]);
    }

    #[test]
    fn nagata_instances() {
        let a = hyper(2, 0);
        let p = v(&[2, 0]);
        let q = quotient_algebra(&a, &OMatrix::from_cols(2, &[p.clone()])).unwrap();
        let b_over_a = q.restrict(&a, &FinModule::regular(&q.algebra));
        let r = nagata_check(&a, &[p.clone()], &b_over_a, 4).unwrap();
        assert_eq!((r.edim_a, r.edim_b), (2, 1));
        assert_eq!(r.resolution_a.projective_dimension(), Some(1));
        assert_eq!(r.resolution_b.projective_dimension(), Some(0));
        assert_eq!(r.holds, Some(true));

        let r = nagata_check(&a, &[p.clone()], &b_over_a.direct_sum(&b_over_a), 4).unwrap();
        assert_eq!(r.holds, Some(true));
        assert!(matches!(nagata_check(&a, &[p], &FinModule::regular(&a), 4), Err(Error::Validation(_))));
        assert!(matches!(
            nagata_check(&a, &[v(&[0, 1])], &FinModule::regular(&a), 4),
            Err(Error::NotCompleteIntersectionQuotient(_))
        ));
    }
}
