//! Codimension-zero invariants at an `O`-valued point: annihilators,
//! congruence modules, the cotangent module, the rank at the point, the
//! Künneth map and the Wiles defect.

use num_traits::Zero;

use crate::algebra::{check_algebra, minimal_generators, zero_vec, FinAlgebra, FinModule, Vector};
use crate::error::{Error, Result};
use crate::lattice;
use crate::omodule::{FinOModule, Length};
use crate::point::OPoint;
use crate::scalar::Valuation;
use crate::smith::OMatrix;

/// `M[I] = {m : I m = 0}`.
#[derive(Clone, Debug)]
pub struct Annihilator {
    /// Generators in `O^g` of the preimage of `M[I]` (contains the relations).
    pub lattice: OMatrix,
    pub module: FinOModule,
}

pub fn annihilator(a: &FinAlgebra, m: &FinModule, ideal_gens: &OMatrix) -> Result<Annihilator> {
    let o = a.dvr();
    let g = m.rank();
    let gens = ideal_gens.columns();
    let lat = if gens.is_empty() {
        OMatrix::identity(g)
    } else {
        let mut stacked = m.act(&gens[0]);
        let mut rel = m.relations().clone();
        for x in &gens[1..] {
            stacked = stacked.vcat(&m.act(x));
            rel = rel.block_diag(m.relations());
        }
        lattice::preimage(o, &stacked, &rel)
    };
    let lat = lattice::span_basis(o, &lat.hcat(m.relations()));
    let module = FinOModule::lattice_quotient(o, &lat, m.relations())?;
    Ok(Annihilator { lattice: lat, module })
}

/// `A[p]`, the annihilator of the kernel of the point in `A`.
pub fn ring_annihilator(a: &FinAlgebra, pt: &OPoint) -> Result<OMatrix> {
    Ok(annihilator(a, &FinModule::regular(a), pt.kernel())?.lattice)
}

fn images(m: &FinModule, elems: &OMatrix) -> Vec<Vector> {
    let g = m.rank();
    let mut out = Vec::new();
    for x in elems.columns() {
        let act = m.act(&x);
        for j in 0..g {
            out.push(act.col(j));
        }
    }
    out
}

/// `I * M` for an ideal given by generators, plus the module relations.
fn ideal_times_module(a: &FinAlgebra, m: &FinModule, elems: &OMatrix) -> OMatrix {
    let mut cols = images(m, elems);
    cols.extend(m.relations().columns());
    lattice::span_basis(a.dvr(), &OMatrix::from_cols(m.rank(), &cols))
}

/// `Ψ_λ(M) = M / (M[p] + M[A[p]])`.
pub fn congruence_module_c0(a: &FinAlgebra, m: &FinModule, pt: &OPoint) -> Result<FinOModule> {
    let o = a.dvr();
    if m.is_zero(o) {
        return Err(Error::ZeroModule);
    }
    let mp = annihilator(a, m, pt.kernel())?;
    let ap = ring_annihilator(a, pt)?;
    let mi = annihilator(a, m, &ap)?;
    let psi = FinOModule::from_presentation(o, mp.lattice.hcat(&mi.lattice));
    if psi.length() == Length::Infinite {
        return Err(Error::NonFiniteCongruenceModule);
    }
    Ok(psi)
}

/// The conormal module `p / p^2`.
pub fn cotangent(a: &FinAlgebra, pt: &OPoint) -> Result<FinOModule> {
    let p = pt.kernel();
    let p2 = a.product_lattice(p, p);
    FinOModule::lattice_quotient(a.dvr(), p, &p2)
}

pub fn is_regular_codim0(a: &FinAlgebra, pt: &OPoint) -> Result<bool> {
    Ok(cotangent(a, pt)?.length() != Length::Infinite)
}

fn require_regular(a: &FinAlgebra, pt: &OPoint) -> Result<FinOModule> {
    let cot = cotangent(a, pt)?;
    if cot.length() == Length::Infinite {
        return Err(Error::NotRegularPoint);
    }
    Ok(cot)
}

/// `η_λ(M): M[p] -> tfree(M / pM)` at codimension zero.
#[derive(Clone, Debug)]
pub struct EtaMap {
    /// `O`-basis of `M[p]` in `O^g`.
    pub source: OMatrix,
    pub target_rank: usize,
    /// Matrix of the map in the chosen bases.
    pub matrix: OMatrix,
    pub cokernel: FinOModule,
}

pub fn eta_c0(a: &FinAlgebra, m: &FinModule, pt: &OPoint) -> Result<EtaMap> {
    require_regular(a, pt)?;
    let o = a.dvr();
    let source = annihilator(a, m, pt.kernel())?.lattice;
    let pm = ideal_times_module(a, m, pt.kernel());
    let quotient = FinOModule::from_presentation(o, pm);
    let split = quotient.tors_tfree(o);
    let matrix = split.projection.mul_mat(&source);
    let cokernel = FinOModule::from_presentation(o, matrix.clone());
    Ok(EtaMap { source, target_rank: split.tfree.free_rank(), matrix, cokernel })
}

/// Rank data of `M` at `λ`, computed on the `λ`-local factor of `A ⊗ E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankAtPoint {
    pub mu: usize,
    pub free: bool,
    pub supported: bool,
    /// `dim_E` of the local factor `A_p`.
    pub ring_factor_dim: usize,
    /// `dim_E` of `M_p`.
    pub module_factor_dim: usize,
    /// `dim_E` of the complement of `M_p` in `M ⊗ E`.
    pub complement_dim: usize,
}

/// `E`-basis (as columns) of the stable power of `p ⊗ E`, which cuts out
/// every local factor of `A ⊗ E` except the one at `λ`.
fn stable_power(a: &FinAlgebra, pt: &OPoint) -> OMatrix {
    let d = a.rank();
    let p = pt.kernel();
    let mut cur = p.clone();
    loop {
        let mut cols = Vec::new();
        for x in cur.columns() {
            let ax = a.action(&x);
            for y in p.columns() {
                cols.push(ax.mul_vec(&y));
            }
        }
        let next = OMatrix::from_cols(d, &cols);
        let next = next.select_cols(&crate::field::independent_columns(&crate::field::Rationals, &next));
        if next.cols() == cur.cols() {
            return next;
        }
        cur = next;
    }
}

pub fn rank_at_point(a: &FinAlgebra, m: &FinModule, pt: &OPoint) -> Result<RankAtPoint> {
    let d = a.rank();
    let g = m.rank();
    let j = stable_power(a, pt);
    let ring_factor_dim = d - j.cols();
    let rel = m.relations().clone();
    let jm = OMatrix::from_cols(g, &images(m, &j));
    let pm = OMatrix::from_cols(g, &images(m, pt.kernel()));
    let rel_rank = lattice::rank_e(&rel);
    let with_j = lattice::rank_e(&rel.hcat(&jm));
    let module_factor_dim = g - with_j;
    let mu = g - lattice::rank_e(&rel.hcat(&jm).hcat(&pm));
    Ok(RankAtPoint {
        mu,
        free: module_factor_dim == mu * ring_factor_dim,
        supported: module_factor_dim > 0,
        ring_factor_dim,
        module_factor_dim,
        complement_dim: with_j - rel_rank,
    })
}

/// `κ_λ(M): A[p] ⊗ M -> M[p]` at codimension zero.
#[derive(Clone, Debug)]
pub struct KappaMap {
    /// Generators of the image in `O^g`.
    pub image: OMatrix,
    /// `O`-basis of `M[p]`.
    pub target: OMatrix,
    pub cokernel: FinOModule,
}

pub fn kappa_c0(a: &FinAlgebra, m: &FinModule, pt: &OPoint) -> Result<KappaMap> {
    require_regular(a, pt)?;
    let o = a.dvr();
    if !m.o_module(o).is_torsion_free() {
        return Err(Error::ZeroDepth);
    }
    let ap = ring_annihilator(a, pt)?;
    let image = OMatrix::from_cols(m.rank(), &images(m, &ap));
    let target = annihilator(a, m, pt.kernel())?.lattice;
    let cokernel = FinOModule::lattice_quotient(o, &target, &image)?;
    Ok(KappaMap { image, target, cokernel })
}

/// `depth_A M >= 1`, decided as: `M` nonzero and `O`-torsion-free, so that
/// `p ∈ m_A` is `M`-regular.
pub fn depth_ge1(a: &FinAlgebra, m: &FinModule) -> bool {
    let om = m.o_module(a.dvr());
    !om.is_zero() && om.is_torsion_free()
}

/// One named identity checked while building a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckRecord { name: name.into(), passed, detail: detail.into() }
    }
}

/// Evidence for `M ≅ A^μ ⊕ W` when the defect vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub mu: usize,
    /// `dim_E (W ⊗ E)`, the part of `M ⊗ E` away from `λ`.
    pub complement_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub mu: usize,
    pub free_at_point: bool,
    pub length_cotangent_tors: u64,
    pub length_psi: u64,
    pub delta: i64,
    /// Defect of `A` itself at the same point.
    pub delta_ring: i64,
    pub kappa_coker_length: u64,
    pub ci_flag: bool,
    pub split_flag: bool,
    /// False when the numbers fall outside the theorem's hypotheses
    /// (not free at the point, or a negative defect).
    pub applicable: bool,
    pub decomposition: Option<Decomposition>,
    pub ledger: Vec<CheckRecord>,
}

/// `δ_λ(M) = μ · length(p/p^2) - length Ψ_λ(M)` with the codimension-zero
/// cross-checks recorded in the ledger.
pub fn wiles_defect_c0(a: &FinAlgebra, m: &FinModule, pt: &OPoint) -> Result<Certificate> {
    let o = a.dvr();
    if m.is_zero(o) {
        return Err(Error::ZeroModule);
    }
    let cot = require_regular(a, pt)?;
    if !depth_ge1(a, m) {
        return Err(Error::ZeroDepth);
    }
    let rk = rank_at_point(a, m, pt)?;
    if !rk.supported {
        return Err(Error::NotSupported);
    }
    let cot_len = cot.torsion_length();
    let psi = congruence_module_c0(a, m, pt)?.torsion_length();
    let delta = rk.mu as i64 * cot_len as i64 - psi as i64;

    let psi_ring = congruence_module_c0(a, &FinModule::regular(a), pt)?.torsion_length();
    let delta_ring = cot_len as i64 - psi_ring as i64;
    let kappa = kappa_c0(a, m, pt)?.cokernel.torsion_length();

    let mut ledger = Vec::new();
    ledger.push(CheckRecord::new(
        "numerical-inequality",
        delta >= 0,
        format!("{} * {} >= {}", rk.mu, cot_len, psi),
    ));
    if rk.free {
        let rhs = rk.mu as i64 * delta_ring + kappa as i64;
        ledger.push(CheckRecord::new(
            "defect-formula",
            delta == rhs,
            format!("{delta} = {} * {delta_ring} + {kappa}", rk.mu),
        ));
    }
    let eta = eta_c0(a, m, pt)?;
    let psi_mod = congruence_module_c0(a, m, pt)?;
    ledger.push(CheckRecord::new(
        "eta-cokernel",
        eta.cokernel == psi_mod,
        format!("coker eta = {}, psi = {}", eta.cokernel, psi_mod),
    ));

    Ok(Certificate {
        mu: rk.mu,
        free_at_point: rk.free,
        length_cotangent_tors: cot_len,
        length_psi: psi,
        delta,
        delta_ring,
        kappa_coker_length: kappa,
        ci_flag: delta_ring == 0,
        split_flag: delta == 0,
        applicable: rk.free && delta >= 0,
        decomposition: None,
        ledger,
    })
}

/// The numerical criterion: a vanishing defect certifies that `A` is a
/// complete intersection and `M ≅ A^μ ⊕ W` with `W` away from `λ`.
pub fn certify_c0(a: &FinAlgebra, m: &FinModule, pt: &OPoint) -> Result<Certificate> {
    let mut cert = wiles_defect_c0(a, m, pt)?;
    if cert.split_flag {
        let rk = rank_at_point(a, m, pt)?;
        cert.decomposition = Some(Decomposition { mu: rk.mu, complement_dim: rk.complement_dim });
        cert.ledger.push(CheckRecord::new(
            "split-implies-ci",
            cert.ci_flag,
            format!("delta(M) = 0 and delta(A) = {}", cert.delta_ring),
        ));
    }
    Ok(cert)
}

/// Result of [`fitting_inclusion_check`].
#[derive(Clone, Debug)]
pub struct FittingInclusion {
    /// `O`-basis of `Fitt_0(p)` in `A`.
    pub fitting_ideal: OMatrix,
    /// Minimal number of `A`-generators of `p`.
    pub generators: usize,
    /// `λ(Fitt_0^A(p)) = Fitt_0^O(p/p^2)`, compared by valuation.
    pub base_change_matches: bool,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn lex_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// Determinant of a square matrix with entries in `A`, by Laplace expansion.
pub fn algebra_det(a: &FinAlgebra, rows: &[Vec<Vector>]) -> Vector {
    let n = rows.len();
    if n == 0 {
        return a.unit().clone();
    }
    let mut acc = zero_vec(a.rank());
    for j in 0..n {
        if rows[0][j].iter().all(Zero::is_zero) {
            continue;
        }
        let minor: Vec<Vec<Vector>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = a.mul(&rows[0][j], &algebra_det(a, &minor));
        for (s, t) in acc.iter_mut().zip(term) {
            if j % 2 == 0 {
                *s += t;
            } else {
                *s -= t;
            }
        }
    }
    acc
}

/// Checks `Fitt_0(p) ⊆ A[p]` from an explicit `A`-presentation of `p`.
pub fn fitting_inclusion_check(a: &FinAlgebra, pt: &OPoint) -> Result<FittingInclusion> {
    let o = a.dvr();
    let d = a.rank();
    let maximal = check_algebra(a)?.maximal_ideal;
    let gens = minimal_generators(a, pt.kernel(), &maximal)?;
    let n = gens.cols();
    // relations among the generators: kernel of A^n -> A, (b_i) -> Σ b_i g_i
    let fitt_gens: Vec<Vector> = if n == 0 {
        vec![a.unit().clone()]
    } else {
        let mut phi = a.action(&gens.col(0));
        for i in 1..n {
            phi = phi.hcat(&a.action(&gens.col(i)));
        }
        let rel = lattice::kernel(o, &phi);
        let entry = |col: usize, i: usize| -> Vector { (0..d).map(|k| rel[(i * d + k, col)].clone()).collect() };
        let mut out = Vec::new();
        for cols in subsets(rel.cols(), n) {
            let rows: Vec<Vec<Vector>> = (0..n).map(|i| cols.iter().map(|&c| entry(c, i)).collect()).collect();
            let det = algebra_det(a, &rows);
            if det.iter().any(|x| !x.is_zero()) {
                out.push(det);
            }
        }
        out
    };
    let fitt = if fitt_gens.is_empty() {
        OMatrix::zeros(d, 0)
    } else {
        a.ideal_lattice(&OMatrix::from_cols(d, &fitt_gens))
    };
    for f in fitt.columns() {
        let af = a.action(&f);
        if pt.kernel().columns().iter().any(|x| af.mul_vec(x).iter().any(|c| !c.is_zero())) {
            return Err(Error::InternalInconsistency(format!(
                "Fitting ideal element {} does not annihilate the point's kernel",
                a.format_element(&f)
            )));
        }
    }
    let min_val = fitt.columns().iter().map(|f| o.valuation(&pt.eval(f))).min().unwrap_or(Valuation::Infinite);
    let cot = cotangent(a, pt)?;
    let expected = match cot.length() {
        Length::Finite(l) => Valuation::Finite(l as i64),
        Length::Infinite => Valuation::Infinite,
    };
    Ok(FittingInclusion { fitting_ideal: fitt, generators: n, base_change_matches: min_val == expected })
}
