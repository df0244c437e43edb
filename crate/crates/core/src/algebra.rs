//! Finite local `O`-algebras given by structure constants, and modules over
//! them given by action matrices.
//!
//! An algebra's underlying `O`-module is `⊕ O/p^{e_i}` on its basis, where
//! `e_i = None` means the coordinate is free. Flat algebras have no torsion
//! coordinates; artinian ones (e.g. `F_p`-algebras) have all of them.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{self, Field, PrimeField};
use crate::lattice;
use crate::matrix::Matrix;
use crate::omodule::FinOModule;
use crate::scalar::{format_scalar, Dvr, LocalScalar};
use crate::smith::{smith_normal_form, OMatrix};

pub type Vector = Vec<LocalScalar>;

#[derive(Clone, Debug)]
pub struct FinAlgebra {
    dvr: Dvr,
    labels: Vec<String>,
    /// `mult[i]` is the action of `basis[i]`: column `j` holds `basis[i]*basis[j]`.
    mult: Vec<OMatrix>,
    unit: Vector,
    torsion: Vec<Option<u64>>,
}

pub(crate) fn zero_vec(n: usize) -> Vector {
    vec![LocalScalar::zero(); n]
}

pub(crate) fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = LocalScalar::one();
    v
}

fn lift_fp(v: &[u64]) -> Vector {
    v.iter().map(|&x| LocalScalar::from_integer((x as i64).into())).collect()
}

impl FinAlgebra {
    /// `constants[i][j][k]` is the coefficient of `basis[k]` in `basis[i]*basis[j]`.
    pub fn from_structure_constants(
        dvr: Dvr,
        labels: Vec<String>,
        constants: Vec<Vec<Vec<LocalScalar>>>,
        unit: Vector,
        torsion: Vec<Option<u64>>,
    ) -> Result<Self> {
        let d = labels.len();
        let shape_ok = constants.len() == d
            && constants.iter().all(|row| row.len() == d && row.iter().all(|c| c.len() == d));
        if !shape_ok || unit.len() != d || torsion.len() != d {
            return Err(Error::Dimension(format!("structure constants must be {d}x{d}x{d}")));
        }
        let mult = (0..d)
            .map(|i| {
                let cols: Vec<Vector> = (0..d).map(|j| constants[i][j].clone()).collect();
                OMatrix::from_cols(d, &cols)
            })
            .collect();
        Self::from_actions(dvr, labels, mult, unit, torsion)
    }

    pub fn from_actions(dvr: Dvr, labels: Vec<String>, mult: Vec<OMatrix>, unit: Vector, torsion: Vec<Option<u64>>) -> Result<Self> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::Validation("algebra must have positive rank".into()));
        }
        if mult.len() != d || mult.iter().any(|m| m.shape() != (d, d)) || unit.len() != d || torsion.len() != d {
            return Err(Error::Dimension(format!("rank {d} algebra data has inconsistent shapes")));
        }
        let integral = |v: &LocalScalar| dvr.is_integral(v);
        if !mult.iter().all(|m| m.entries().all(integral)) || !unit.iter().all(integral) {
            return Err(Error::Validation("structure constants must lie in O".into()));
        }
        if torsion.contains(&Some(0)) {
            return Err(Error::Validation("torsion exponents must be positive".into()));
        }
        Ok(FinAlgebra { dvr, labels, mult, unit, torsion })
    }

    /// `O` itself.
    pub fn base_ring(dvr: Dvr) -> Self {
        Self::from_actions(dvr, vec!["1".into()], vec![OMatrix::identity(1)], vec![LocalScalar::one()], vec![None]).unwrap()
    }

    pub fn dvr(&self) -> &Dvr {
        &self.dvr
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn basis_action(&self, i: usize) -> &OMatrix {
        &self.mult[i]
    }

    pub fn torsion(&self) -> &[Option<u64>] {
        &self.torsion
    }

    pub fn is_flat(&self) -> bool {
        self.torsion.iter().all(Option::is_none)
    }

    pub fn is_artinian(&self) -> bool {
        self.torsion.iter().all(Option::is_some)
    }

    /// Generators of the torsion relations `⊕ p^{e_i} O e_i`, as columns.
    pub fn relations(&self) -> OMatrix {
        let d = self.rank();
        let cols: Vec<Vector> = self
            .torsion
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                e.map(|e| {
                    let mut v = zero_vec(d);
                    v[i] = self.dvr.uniformizer_pow(e);
                    v
                })
            })
            .collect();
        OMatrix::from_cols(d, &cols)
    }

    /// Multiplication operator of an element.
    pub fn action(&self, a: &[LocalScalar]) -> OMatrix {
        let d = self.rank();
        let mut out = OMatrix::zeros(d, d);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out = out.add_mat(&self.mult[i].scale(c));
            }
        }
        out
    }

    pub fn mul(&self, a: &[LocalScalar], b: &[LocalScalar]) -> Vector {
        self.action(a).mul_vec(b)
    }

    /// `O`-basis of the ideal generated by the given elements (columns),
    /// including the torsion relations.
    pub fn ideal_lattice(&self, gens: &OMatrix) -> OMatrix {
        let d = self.rank();
        let mut cols = Vec::new();
        for g in gens.columns() {
            for i in 0..d {
                cols.push(self.mult[i].mul_vec(&g));
            }
        }
        cols.extend(self.relations().columns());
        lattice::span_basis(&self.dvr, &OMatrix::from_cols(d, &cols))
    }

    /// `O`-span of all products `x*y`, `x ∈ a`, `y ∈ b`, plus relations.
    pub fn product_lattice(&self, a: &OMatrix, b: &OMatrix) -> OMatrix {
        let d = self.rank();
        let mut cols = Vec::new();
        for x in a.columns() {
            let ax = self.action(&x);
            for y in b.columns() {
                cols.push(ax.mul_vec(&y));
            }
        }
        cols.extend(self.relations().columns());
        lattice::span_basis(&self.dvr, &OMatrix::from_cols(d, &cols))
    }

    pub(crate) fn equal_mod_relations(&self, a: &[LocalScalar], b: &[LocalScalar]) -> bool {
        let diff: Vector = a.iter().zip(b).map(|(x, y)| x - y).collect();
        if diff.iter().all(Zero::is_zero) {
            return true;
        }
        lattice::contains(&self.dvr, &self.relations(), &diff)
    }

    pub fn residue_field(&self) -> PrimeField {
        PrimeField::new(self.dvr.p())
    }

    /// Action matrices reduced mod `p`.
    pub fn residue_tables(&self) -> Vec<Matrix<u64>> {
        self.mult.iter().map(|m| m.map(|x| self.dvr.residue(x))).collect()
    }

    pub fn format_element(&self, v: &[LocalScalar]) -> String {
        let mut parts = Vec::new();
        for (c, l) in v.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let cs = format_scalar(c);
            parts.push(if l == "1" {
                cs
            } else if c.is_one() {
                l.clone()
            } else if (-c).is_one() {
                format!("-{l}")
            } else {
                format!("{cs}*{l}")
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

/// Result of [`check_algebra`].
#[derive(Clone, Debug)]
pub struct LocalityReport {
    /// `O`-basis of the maximal ideal.
    pub maximal_ideal: OMatrix,
    /// `[k_A : F_p]`.
    pub residue_degree: usize,
}

struct ResidueAlgebra {
    f: PrimeField,
    tables: Vec<Matrix<u64>>,
    unit: Vec<u64>,
}

impl ResidueAlgebra {
    fn new(a: &FinAlgebra) -> Self {
        ResidueAlgebra {
            f: a.residue_field(),
            tables: a.residue_tables(),
            unit: a.unit.iter().map(|x| a.dvr.residue(x)).collect(),
        }
    }

    fn dim(&self) -> usize {
        self.unit.len()
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let d = self.dim();
        let mut out = vec![0u64; d];
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if *yj == 0 {
                    continue;
                }
                let c = self.f.mul(xi, yj);
                for (k, o) in out.iter_mut().enumerate() {
                    let t = self.f.mul(&c, &self.tables[i][(k, j)]);
                    *o = self.f.add(o, &t);
                }
            }
        }
        out
    }

    fn pow(&self, x: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = x.to_vec();
        let mut acc = self.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Matrix of `x -> x^(p^k)` on the basis.
    fn frobenius_power(&self, k: u32) -> Matrix<u64> {
        let d = self.dim();
        let e = self.f.p.pow(k);
        let cols: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                let mut v = vec![0u64; d];
                v[i] = 1;
                self.pow(&v, e)
            })
            .collect();
        Matrix::from_cols(d, &cols)
    }
}

/// Verifies the algebra axioms and locality; returns the maximal ideal.
pub fn check_algebra(a: &FinAlgebra) -> Result<LocalityReport> {
    let d = a.rank();
    let rel = a.relations();
    for r in rel.columns() {
        for k in 0..d {
            if !lattice::contains(&a.dvr, &rel, &a.mult[k].mul_vec(&r)) {
                return Err(Error::Validation(format!("torsion relations are not stable under basis element {k}")));
            }
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            if !a.equal_mod_relations(&a.mult[i].col(j), &a.mult[j].col(i)) {
                return Err(Error::NotCommutative(i, j));
            }
        }
    }
    let ua = a.action(&a.unit);
    for i in 0..d {
        if !a.equal_mod_relations(&ua.col(i), &unit_vec(d, i)) {
            return Err(Error::NotUnital(i));
        }
    }
    for i in 0..d {
        for j in 0..d {
            let eij = a.mult[i].col(j);
            let left = a.action(&eij);
            for k in 0..d {
                let rhs = a.mult[i].mul_vec(&a.mult[j].col(k));
                if !a.equal_mod_relations(&left.col(k), &rhs) {
                    return Err(Error::NotAssociative(i, j, k));
                }
            }
        }
    }

    // Locality on the residue fiber: the Frobenius-fixed subalgebra of a
    // finite F_p-algebra is F_p^(number of local factors).
    let r = ResidueAlgebra::new(a);
    let f = r.f;
    let mut phi_minus_id = r.frobenius_power(1);
    for i in 0..d {
        phi_minus_id[(i, i)] = f.sub(&phi_minus_id[(i, i)], &1);
    }
    let fixed = field::nullspace(&f, &phi_minus_id);
    if fixed.cols() > 1 {
        return Err(Error::NotLocal { witness: idempotent_witness(a, &r, &fixed) });
    }
    let mut k = 0u32;
    while (f.p as u128).pow(k) < d as u128 {
        k += 1;
    }
    let nil = field::nullspace(&f, &r.frobenius_power(k.max(1)));
    let mut cols: Vec<Vector> = nil.columns().iter().map(|c| lift_fp(c)).collect();
    let p = a.dvr.uniformizer_pow(1);
    cols.extend((0..d).map(|i| {
        let mut v = zero_vec(d);
        v[i] = p.clone();
        v
    }));
    let maximal = lattice::span_basis(&a.dvr, &OMatrix::from_cols(d, &cols));
    Ok(LocalityReport { maximal_ideal: maximal, residue_degree: d - nil.cols() })
}

fn idempotent_witness(a: &FinAlgebra, r: &ResidueAlgebra, fixed: &Matrix<u64>) -> String {
    let d = a.rank();
    let f = r.f;
    let one = &r.unit;
    for col in fixed.columns() {
        for c in 0..f.p {
            let shifted: Vec<u64> = col.iter().zip(one).map(|(x, u)| f.sub(x, &f.mul(&c, u))).collect();
            let e = r.pow(&shifted, f.p - 1);
            if e.iter().any(|&x| x != 0) && e != *one {
                return a.format_element(&lift_fp(&e));
            }
        }
    }
    debug_assert!(false, "fixed space of dim > 1 without idempotent in rank {d}");
    "?".into()
}

/// A module over a [`FinAlgebra`]: `O^g / relations` with action matrices
/// for each algebra basis element.
#[derive(Clone, Debug)]
pub struct FinModule {
    relations: OMatrix,
    actions: Vec<OMatrix>,
}

impl FinModule {
    pub fn new(a: &FinAlgebra, rank: usize, actions: Vec<OMatrix>, relations: OMatrix) -> Result<Self> {
        if actions.len() != a.rank() || actions.iter().any(|m| m.shape() != (rank, rank)) || relations.rows() != rank {
            return Err(Error::Dimension("module action matrices have wrong shape".into()));
        }
        if !actions.iter().all(|m| m.entries().all(|x| a.dvr.is_integral(x))) {
            return Err(Error::Validation("action matrices must have entries in O".into()));
        }
        let m = FinModule { relations, actions };
        m.validate(a)?;
        Ok(m)
    }

    fn validate(&self, a: &FinAlgebra) -> Result<()> {
        let o = a.dvr();
        let g = self.rank();
        let d = a.rank();
        let rel = &self.relations;
        let in_rel = |v: &Vector| v.iter().all(Zero::is_zero) || lattice::contains(o, rel, v);
        let same = |x: &OMatrix, y: &OMatrix| x.sub_mat(y).columns().iter().all(&in_rel);
        for act in &self.actions {
            for c in rel.columns() {
                if !in_rel(&act.mul_vec(&c)) {
                    return Err(Error::Validation("action does not preserve the module relations".into()));
                }
            }
        }
        if !same(&self.act(&a.unit), &OMatrix::identity(g)) {
            return Err(Error::Validation("unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let prod = self.act(&a.mult[i].col(j));
                if !same(&self.actions[i].mul_mat(&self.actions[j]), &prod) {
                    return Err(Error::Validation(format!("action is not multiplicative on basis pair ({i}, {j})")));
                }
            }
        }
        for (k, e) in a.torsion.iter().enumerate() {
            if let Some(e) = e {
                let z = self.actions[k].scale(&o.uniformizer_pow(*e));
                if !same(&z, &OMatrix::zeros(g, g)) {
                    return Err(Error::Validation("algebra torsion does not annihilate the module".into()));
                }
            }
        }
        Ok(())
    }

    /// `A` as a module over itself.
    pub fn regular(a: &FinAlgebra) -> Self {
        FinModule { relations: a.relations(), actions: a.mult.clone() }
    }

    pub fn free(a: &FinAlgebra, rank: usize) -> Self {
        let one = Self::regular(a);
        (1..rank).fold(if rank == 0 { Self::zero(a) } else { one.clone() }, |acc, _| acc.direct_sum(&one))
    }

    pub fn zero(a: &FinAlgebra) -> Self {
        FinModule { relations: OMatrix::zeros(0, 0), actions: vec![OMatrix::zeros(0, 0); a.rank()] }
    }

    /// `A / I` for the ideal generated by the given elements.
    pub fn quotient(a: &FinAlgebra, gens: &OMatrix) -> Self {
        let ideal = a.ideal_lattice(gens);
        FinModule { relations: ideal, actions: a.mult.clone() }.simplify(a.dvr())
    }

    /// The `A`-submodule of a module spanned by a lattice (which must be
    /// stable under the action). Only for torsion-free modules.
    pub fn submodule(&self, o: &Dvr, lattice_gens: &OMatrix) -> Result<Self> {
        if self.relations.cols() > 0 && !self.o_module(o).is_torsion_free() {
            return Err(Error::ZeroDepth);
        }
        let basis = lattice::span_basis(o, lattice_gens);
        let r = basis.cols();
        let mut actions = Vec::with_capacity(self.actions.len());
        for act in &self.actions {
            let img = act.mul_mat(&basis);
            actions.push(lattice::relative_coordinates(o, &basis, &img).map_err(|_| {
                Error::Validation("lattice is not stable under the algebra action".into())
            })?);
        }
        Ok(FinModule { relations: OMatrix::zeros(r, 0), actions })
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        FinModule {
            relations: self.relations.block_diag(&other.relations),
            actions: self.actions.iter().zip(&other.actions).map(|(x, y)| x.block_diag(y)).collect(),
        }
    }

    /// Coordinates in which the relations are diagonal; generators that
    /// die in the module are dropped.
    pub fn simplify(&self, o: &Dvr) -> Self {
        if self.relations.cols() == 0 {
            return self.clone();
        }
        let f = smith_normal_form(o, &self.relations);
        let g = self.rank();
        let keep: Vec<usize> = (0..g).filter(|&i| i >= f.rank() || f.divisors[i] > 0).collect();
        let mut rel_cols = Vec::new();
        for (new_i, &i) in keep.iter().enumerate() {
            if i < f.rank() {
                let mut v = zero_vec(keep.len());
                v[new_i] = o.uniformizer_pow(f.divisors[i]);
                rel_cols.push(v);
            }
        }
        let u_keep = f.u.select_rows(&keep);
        let uinv_keep = f.u_inv.select_cols(&keep);
        FinModule {
            relations: OMatrix::from_cols(keep.len(), &rel_cols),
            actions: self.actions.iter().map(|act| u_keep.mul_mat(act).mul_mat(&uinv_keep)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &OMatrix {
        &self.relations
    }

    pub fn actions(&self) -> &[OMatrix] {
        &self.actions
    }

    /// Action of an algebra element.
    pub fn act(&self, a: &[LocalScalar]) -> OMatrix {
        let g = self.rank();
        let mut out = OMatrix::zeros(g, g);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out = out.add_mat(&self.actions[i].scale(c));
            }
        }
        out
    }

    /// The underlying `O`-module.
    pub fn o_module(&self, o: &Dvr) -> FinOModule {
        FinOModule::from_presentation(o, self.relations.clone())
    }

    pub fn is_zero(&self, o: &Dvr) -> bool {
        self.o_module(o).is_zero()
    }
}

/// Greedy choice of a minimal subset of `candidates` whose `A`-span together
/// with `base` contains every candidate; `orbit(c)` lists `e_t c` over the
/// algebra basis.
fn greedy_generators(o: &Dvr, rows: usize, candidates: &[Vector], base: &OMatrix, orbit: impl Fn(&Vector) -> Vec<Vector>) -> Vec<Vector> {
    let mut span = base.clone();
    let mut kept = Vec::new();
    for c in candidates {
        if c.iter().all(Zero::is_zero) || lattice::contains(o, &span, c) {
            continue;
        }
        let mut cols = span.columns();
        cols.extend(orbit(c));
        span = lattice::span_basis(o, &OMatrix::from_cols(rows, &cols));
        kept.push(c.clone());
    }
    kept
}

/// A minimal generating set (as columns) of an ideal, by Nakayama: lifts of
/// a `k_A`-basis of `I / m I`. `ideal` is any generating lattice of `I`.
pub fn minimal_generators(a: &FinAlgebra, ideal: &OMatrix, maximal: &OMatrix) -> Result<OMatrix> {
    let o = a.dvr();
    let d = a.rank();
    let z = lattice::span_basis(o, &ideal.hcat(&a.relations()));
    let mi = a.product_lattice(maximal, &z);
    let candidates = lattice::quotient_generators(o, &z, &mi)?.columns();
    let gens = greedy_generators(o, d, &candidates, &mi, |c| a.action(c).columns());
    Ok(OMatrix::from_cols(d, &gens))
}

/// Minimal generators of the `A`-submodule of `m` whose preimage in `O^g`
/// is the lattice `z` (which must contain the relations).
pub fn module_minimal_generators(a: &FinAlgebra, m: &FinModule, z: &OMatrix, maximal: &OMatrix) -> Result<OMatrix> {
    let o = a.dvr();
    let g = m.rank();
    let z = lattice::span_basis(o, &z.hcat(m.relations()));
    let mut cols = m.relations().columns();
    for x in maximal.columns() {
        let act = m.act(&x);
        cols.extend(z.columns().iter().map(|v| act.mul_vec(v)));
    }
    let mz = lattice::span_basis(o, &OMatrix::from_cols(g, &cols));
    let candidates = lattice::quotient_generators(o, &z, &mz)?.columns();
    let gens = greedy_generators(o, g, &candidates, &mz, |c| m.actions().iter().map(|t| t.mul_vec(c)).collect());
    Ok(OMatrix::from_cols(g, &gens))
}

/// `B = A / I` together with maps between the two bases.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    pub algebra: FinAlgebra,
    /// Columns: lifts to `A` of the basis of `B`.
    pub lift: OMatrix,
    /// Coordinates in `B` of an element of `A`.
    pub projection: OMatrix,
}

impl QuotientAlgebra {
    pub fn project(&self, x: &[LocalScalar]) -> Vector {
        self.projection.mul_vec(x)
    }

    /// A module over `B` viewed over `A`.
    pub fn restrict(&self, a: &FinAlgebra, n: &FinModule) -> FinModule {
        let actions = (0..a.rank()).map(|i| n.act(&self.project(&unit_vec(a.rank(), i)))).collect();
        FinModule { relations: n.relations.clone(), actions }
    }

    /// An `A`-module killed by `I`, viewed over `B`.
    pub fn descend(&self, n: &FinModule) -> Result<FinModule> {
        let actions = self.lift.columns().iter().map(|c| n.act(c)).collect();
        FinModule::new(&self.algebra, n.rank(), actions, n.relations.clone())
    }
}

/// `A / (gens)`, on coordinates where the quotient is `⊕ O/p^{e_i}`.
pub fn quotient_algebra(a: &FinAlgebra, gens: &OMatrix) -> Result<QuotientAlgebra> {
    let o = a.dvr();
    let d = a.rank();
    let ideal = a.ideal_lattice(gens);
    let f = smith_normal_form(o, &ideal);
    let keep: Vec<usize> = (0..d).filter(|&i| i >= f.rank() || f.divisors[i] > 0).collect();
    let torsion: Vec<Option<u64>> = keep.iter().map(|&i| (i < f.rank()).then(|| f.divisors[i])).collect();
    let lift = f.u_inv.select_cols(&keep);
    let projection = f.u.select_rows(&keep);
    let n = keep.len();
    if n == 0 {
        return Err(Error::Validation("quotient by the unit ideal".into()));
    }
    let reduce = |v: Vector| -> Vector {
        v.into_iter()
            .zip(&torsion)
            .map(|(x, t)| match t {
                Some(e) => {
                    let q = o.uniformizer_pow(*e);
                    let r = o.residue_mod(&x, *e);
                    debug_assert!(o.is_integral(&((&x - &r) / &q)));
                    r
                }
                None => x,
            })
            .collect()
    };
    let lifts = lift.columns();
    let constants: Vec<Vec<Vector>> = lifts
        .iter()
        .map(|x| lifts.iter().map(|y| reduce(projection.mul_vec(&a.mul(x, y)))).collect())
        .collect();
    let unit = reduce(projection.mul_vec(a.unit()));
    let labels = lifts.iter().map(|x| a.format_element(x)).collect();
    let algebra = FinAlgebra::from_structure_constants(o.clone(), labels, constants, unit, torsion)?;
    Ok(QuotientAlgebra { algebra, lift, projection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::testutil::hyper;

    #[test]
    fn base_ring_is_local() {
        let a = FinAlgebra::base_ring(Dvr::new(2).unwrap());
        let rep = check_algebra(&a).unwrap();
        assert!(lattice::lattices_equal(a.dvr(), &rep.maximal_ideal, &OMatrix::from_rows(vec![vec![int(2)]])));
        assert_eq!(rep.residue_degree, 1);
    }

    #[test]
    fn split_algebra_is_not_local() {
        // idempotent enumeration in F_3[x]/(x^2 - 2x): e^2 = e
        let f = PrimeField::new(3);
        let mut idem = Vec::new();
        for a0 in 0..3u64 {
            for a1 in 0..3u64 {
                // (a0 + a1 x)^2 = a0^2 + (2 a0 a1 + 2 a1^2) x
                let s0 = f.mul(&a0, &a0);
                let s1 = f.add(&f.mul(&2, &f.mul(&a0, &a1)), &f.mul(&2, &f.mul(&a1, &a1)));
                if (s0, s1) == (a0, a1) {
                    idem.push((a0, a1));
                }
            }
        }
        assert_eq!(idem.len(), 4);
        match check_algebra(&hyper(3, 2)) {
            Err(Error::NotLocal { witness }) => {
                assert!(witness == "2*x" || witness == "1 - 2*x" || witness == "1 + x", "{witness}");
            }
            other => panic!("expected NotLocal, got {other:?}"),
        }
    }

    #[test]
    fn hypersurface_is_local() {
        let a = hyper(2, 2);
        let rep = check_algebra(&a).unwrap();
        let expected = OMatrix::from_rows(vec![vec![int(2), int(0)], vec![int(0), int(1)]]);
        assert!(lattice::lattices_equal(a.dvr(), &rep.maximal_ideal, &expected));
    }

    #[test]
    fn detects_non_associative_table() {
        let o = Dvr::new(2).unwrap();
        let z = int(0);
        let one = int(1);
        // x*x = 1 + x but unit row broken: 1*x = 2x
        let constants = vec![
            vec![vec![one.clone(), z.clone()], vec![z.clone(), int(2)]],
            vec![vec![z.clone(), int(2)], vec![one.clone(), one.clone()]],
        ];
        let a = FinAlgebra::from_structure_constants(o, vec!["1".into(), "x".into()], constants, vec![one, z], vec![None, None]).unwrap();
        assert!(check_algebra(&a).is_err());
    }

    #[test]
    fn quotient_modules() {
        let a = hyper(2, 2);
        let x = OMatrix::from_cols(2, &[vec![int(0), int(1)]]);
        let m = FinModule::quotient(&a, &x);
        assert_eq!(m.rank(), 1);
        assert!(m.o_module(a.dvr()).is_torsion_free());
        assert_eq!(m.act(&[int(0), int(1)]), OMatrix::from_rows(vec![vec![int(0)]]));
        let xm2 = OMatrix::from_cols(2, &[vec![int(-2), int(1)]]);
        let m = FinModule::quotient(&a, &xm2);
        assert_eq!(m.act(&[int(0), int(1)]), OMatrix::from_rows(vec![vec![int(2)]]));
        let p = OMatrix::from_cols(2, &[vec![int(2), int(0)]]);
        let m = FinModule::quotient(&a, &p);
        assert_eq!(m.o_module(a.dvr()).torsion_divisors(), &[1, 1]);
    }

    #[test]
    fn minimal_generators_over_larger_residue_field() {
        // O[x]/(x^2 + x + 1) at p = 2 has residue field F_4; m = (2)
        let o = Dvr::new(2).unwrap();
        let z = int(0);
        let one = int(1);
        let constants = vec![
            vec![vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]],
            vec![vec![z.clone(), one.clone()], vec![int(-1), int(-1)]],
        ];
        let a = FinAlgebra::from_structure_constants(o, vec!["1".into(), "x".into()], constants, vec![one, z], vec![None, None]).unwrap();
        let rep = check_algebra(&a).unwrap();
        assert_eq!(rep.residue_degree, 2);
        assert_eq!(minimal_generators(&a, &rep.maximal_ideal, &rep.maximal_ideal).unwrap().cols(), 1);
    }

    #[test]
    fn quotient_algebras() {
        // F_2[x,y]/(x^2, xy, y^2) modulo y
        let a = crate::testutil::square_zero_fp(2);
        let q = quotient_algebra(&a, &OMatrix::from_cols(3, &[vec![int(0), int(0), int(1)]])).unwrap();
        assert_eq!(q.algebra.rank(), 2);
        assert_eq!(q.algebra.torsion(), &[Some(1), Some(1)]);
        assert!(check_algebra(&q.algebra).is_ok());
        // O[x]/(x^2 - 2x) modulo 2 is F_2[x]/(x^2)
        let h = hyper(2, 2);
        let q = quotient_algebra(&h, &OMatrix::from_cols(2, &[vec![int(2), int(0)]])).unwrap();
        assert!(q.algebra.is_artinian());
        let x = q.project(&[int(0), int(1)]);
        assert!(q.algebra.equal_mod_relations(&q.algebra.mul(&x, &x), &zero_vec(2)));
        let b = FinModule::regular(&q.algebra);
        let over_a = q.restrict(&h, &b);
        assert!(FinModule::new(&h, over_a.rank(), over_a.actions().to_vec(), over_a.relations().clone()).is_ok());
    }
}
