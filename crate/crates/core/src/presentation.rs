//! Polynomially presented algebras `O[x_1..x_n]/(f_1..f_m)` with an
//! `O`-valued point, and reduction to codimension zero by cutting.

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::{check_algebra, FinAlgebra, FinModule};
use crate::congruence::{certify_c0, Certificate, CheckRecord};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::groebner::{colon_is_trivial, groebner, GroebnerBasis};
use crate::koszul::{defect_module, koszul_on_ideal};
use crate::lattice;
use crate::omodule::{FinOModule, Length};
use crate::point::{point_kernel, OPoint};
use crate::poly::{eval, is_integral, translate, Monomial, MonomialOrder, Poly, QPoly};
use crate::scalar::{int, Dvr, LocalScalar, Valuation};
use crate::smith::OMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct PolyPresentation {
    dvr: Dvr,
    names: Vec<String>,
    relations: Vec<QPoly>,
    point: Vec<LocalScalar>,
}

impl PolyPresentation {
    pub fn new(dvr: Dvr, names: Vec<String>, relations: Vec<QPoly>, point: Vec<LocalScalar>) -> Result<Self> {
        let n = names.len();
        if point.len() != n {
            return Err(Error::Dimension(format!("point needs {n} values, got {}", point.len())));
        }
        if let Some(i) = point.iter().position(|v| !dvr.is_integral(v)) {
            return Err(Error::Validation(format!("point value for {} is not in O", names[i])));
        }
        for (k, r) in relations.iter().enumerate() {
            if r.nvars() != n {
                return Err(Error::Dimension(format!("relation {k} has the wrong variable count")));
            }
            if !is_integral(&dvr, r) {
                return Err(Error::Validation(format!("relation {k} has a coefficient outside O")));
            }
            if !eval(r, &point).is_zero() {
                return Err(Error::Validation(format!("relation {k} does not vanish at the point")));
            }
        }
        Ok(PolyPresentation { dvr, names, relations, point })
    }

    pub fn dvr(&self) -> &Dvr {
        &self.dvr
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn relations(&self) -> &[QPoly] {
        &self.relations
    }

    pub fn point(&self) -> &[LocalScalar] {
        &self.point
    }

    pub fn is_normalized(&self) -> bool {
        self.point.iter().all(Zero::is_zero)
    }

    /// `f` in coordinates centered at the point.
    pub fn centered(&self, f: &QPoly) -> QPoly {
        translate(f, &self.point)
    }
}

/// Translates so that the point becomes `0`.
pub fn normalize_point(p: &PolyPresentation) -> PolyPresentation {
    PolyPresentation {
        dvr: p.dvr.clone(),
        names: p.names.clone(),
        relations: p.relations.iter().map(|r| p.centered(r)).collect(),
        point: vec![LocalScalar::zero(); p.nvars()],
    }
}

/// `p/p^2` presented by the Jacobian at the point.
#[derive(Clone, Debug)]
pub struct Conormal {
    /// `n x m`; column `j` is the linear part of relation `j`.
    pub jacobian: OMatrix,
    pub module: FinOModule,
    pub codimension: usize,
    pub tors_length: u64,
}

pub fn jacobian_conormal(p: &PolyPresentation) -> Conormal {
    let n = p.nvars();
    let cols: Vec<Vec<LocalScalar>> = p.relations.iter().map(|r| p.centered(r).linear_part(&Rationals)).collect();
    let jacobian = OMatrix::from_cols(n, &cols);
    let module = FinOModule::from_presentation(&p.dvr, jacobian.clone());
    Conormal { codimension: module.free_rank(), tors_length: module.torsion_length(), module, jacobian }
}

/// Krull dimension of `A ⊗ E`. It bounds the codimension of every point,
/// so a tangent space of larger dimension rules out regularity.
pub fn generic_dimension(p: &PolyPresentation, degree_cap: u32) -> Result<usize> {
    let g = groebner(&Rationals, p.nvars(), &p.relations, MonomialOrder::Grevlex, degree_cap)?;
    g.dimension().ok_or_else(|| Error::Validation("the generic fiber is empty".into()))
}

/// Valuation of the class of `f` in `tfree(p/p^2)`; infinite when the class
/// is torsion.
pub fn class_valuation(p: &PolyPresentation, f: &QPoly) -> Result<Valuation> {
    let g = p.centered(f);
    if !g.constant_term(&Rationals).is_zero() {
        return Err(Error::NotInIdeal);
    }
    let conormal = jacobian_conormal(p);
    let split = conormal.module.tors_tfree(&p.dvr);
    let image = split.projection.mul_vec(&g.linear_part(&Rationals));
    Ok(image.iter().map(|x| p.dvr.valuation(x)).min().unwrap_or(Valuation::Infinite))
}

/// `f ∉ p^(2)`: the class of `f` in `p/p^2` is not torsion.
pub fn not_in_symbolic_square(p: &PolyPresentation, f: &QPoly) -> Result<bool> {
    let g = p.centered(f);
    if !g.constant_term(&Rationals).is_zero() {
        return Err(Error::NotInIdeal);
    }
    let j = jacobian_conormal(p).jacobian;
    let ell = OMatrix::from_cols(p.nvars(), &[g.linear_part(&Rationals)]);
    Ok(lattice::rank_e(&j.hcat(&ell)) > lattice::rank_e(&j))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fiber {
    Fraction,
    Residue,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FiberBasis {
    Fraction(GroebnerBasis<LocalScalar>),
    Residue(GroebnerBasis<u64>),
}

impl FiberBasis {
    pub fn staircase(&self) -> Option<Vec<Monomial>> {
        match self {
            FiberBasis::Fraction(g) => g.staircase(),
            FiberBasis::Residue(g) => g.staircase(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            FiberBasis::Fraction(g) => g.basis.len(),
            FiberBasis::Residue(g) => g.basis.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn residue_polys(o: &Dvr, rels: &[QPoly]) -> Vec<Poly<u64>> {
    let f = PrimeField::new(o.p());
    rels.iter().map(|r| r.map(&f, |c| f.from_scalar(c))).collect()
}

pub fn groebner_fiber(p: &PolyPresentation, fiber: Fiber, degree_cap: u32) -> Result<FiberBasis> {
    let n = p.nvars();
    Ok(match fiber {
        Fiber::Fraction => FiberBasis::Fraction(groebner(&Rationals, n, &p.relations, MonomialOrder::Grevlex, degree_cap)?),
        Fiber::Residue => FiberBasis::Residue(groebner(
            &PrimeField::new(p.dvr.p()),
            n,
            &residue_polys(&p.dvr, &p.relations),
            MonomialOrder::Grevlex,
            degree_cap,
        )?),
    })
}

pub fn monomial_label(m: &Monomial, names: &[String]) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.0.iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
        .collect::<Vec<_>>()
        .join("*")
}

/// The finite flat algebra `O[x]/I` on a monomial basis, when the two fibers
/// have the same finite staircase and the fraction-field basis is integral
/// and reduces to the residue-field basis.
pub fn certify_relations(o: &Dvr, names: &[String], relations: &[QPoly], degree_cap: u32) -> Result<(FinAlgebra, Vec<Monomial>)> {
    let n = names.len();
    let e = Rationals;
    let fp = PrimeField::new(o.p());
    let ge = groebner(&e, n, relations, MonomialOrder::Grevlex, degree_cap)?;
    let gp = groebner(&fp, n, &residue_polys(o, relations), MonomialOrder::Grevlex, degree_cap)?;
    let se = ge.staircase().ok_or_else(|| Error::NotCertifiablyFinite("generic fiber is infinite".into()))?;
    let sp = gp.staircase().ok_or_else(|| Error::NotCertifiablyFinite("special fiber is infinite".into()))?;
    if se != sp {
        return Err(Error::NotCertifiablyFinite(format!("fiber dimensions differ ({} vs {})", se.len(), sp.len())));
    }
    if se.is_empty() {
        return Err(Error::NotCertifiablyFinite("quotient is zero".into()));
    }
    for g in &ge.basis {
        if !is_integral(o, g) {
            return Err(Error::CoefficientLeavesRing(g.display(names).to_string()));
        }
    }
    if residue_polys(o, &ge.basis) != gp.basis {
        return Err(Error::NotCertifiablyFinite("Gröbner basis does not reduce to the special fiber".into()));
    }
    let d = se.len();
    let mut constants = vec![vec![vec![LocalScalar::zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            let prod = Poly::from_terms(&e, n, [(se[i].mul(&se[j]), LocalScalar::one())]);
            let nf = ge.reduce(&e, &prod);
            for (m, c) in nf.terms() {
                if !o.is_integral(c) {
                    return Err(Error::CoefficientLeavesRing(nf.display(names).to_string()));
                }
                let k = se.iter().position(|s| s == m).expect("normal form outside the staircase");
                constants[i][j][k] = c.clone();
            }
        }
    }
    let labels = se.iter().map(|m| monomial_label(m, names)).collect();
    let mut unit = vec![LocalScalar::zero(); d];
    unit[se.iter().position(Monomial::is_one).expect("1 is standard")] = LocalScalar::one();
    let a = FinAlgebra::from_structure_constants(o.clone(), labels, constants, unit, vec![None; d])?;
    Ok((a, se))
}

#[derive(Clone, Debug)]
pub struct CertifiedAlgebra {
    pub algebra: FinAlgebra,
    pub basis: Vec<Monomial>,
    pub point: OPoint,
}

/// Bridges a presentation to a finite algebra with its point, checked local.
pub fn finite_basis_certificate(p: &PolyPresentation, degree_cap: u32) -> Result<CertifiedAlgebra> {
    let q = normalize_point(p);
    let (algebra, basis) = certify_relations(&q.dvr, &q.names, &q.relations, degree_cap)?;
    check_algebra(&algebra)?;
    let values = basis.iter().map(|m| if m.is_one() { int(1) } else { int(0) }).collect();
    let point = point_kernel(&algebra, values)?;
    Ok(CertifiedAlgebra { algebra, basis, point })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Regularity {
    /// `(I : f) = I` on both fibers.
    Verified,
    /// Not certified; the reason is recorded.
    Assumed(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutAnnotation {
    pub element: String,
    pub in_ideal: bool,
    pub not_in_symbolic_square: bool,
    /// Valuation of the class in `tfree(p/p^2)`; the torsion of the
    /// conormal grows by this much.
    pub class_valuation: u64,
    pub regularity: Regularity,
    /// Variable solved for and removed, if any.
    pub eliminated: Option<String>,
}

#[derive(Clone, Debug)]
pub struct CutResult {
    pub presentation: PolyPresentation,
    pub annotation: CutAnnotation,
    /// Images of the old variables as polynomials in the new ones.
    pub substitution: Vec<QPoly>,
}

fn regularity(p: &PolyPresentation, f: &QPoly, degree_cap: u32) -> Regularity {
    let n = p.nvars();
    let e = colon_is_trivial(&Rationals, n, &p.relations, f, degree_cap);
    let fp = PrimeField::new(p.dvr.p());
    let fres = f.map(&fp, |c| fp.from_scalar(c));
    let r = colon_is_trivial(&fp, n, &residue_polys(&p.dvr, &p.relations), &fres, degree_cap);
    match (e, r) {
        (Ok(true), Ok(true)) => Regularity::Verified,
        (Ok(false), _) => Regularity::Assumed("zero divisor on the generic fiber of the polynomial ring".into()),
        (_, Ok(false)) => Regularity::Assumed("zero divisor on the special fiber of the polynomial ring".into()),
        (Err(err), _) | (_, Err(err)) => Regularity::Assumed(err.to_string()),
    }
}

/// Variable `k` with `g = u x_k + h`, `u` a unit and `h` free of `x_k`.
fn solvable_variable(o: &Dvr, g: &QPoly) -> Option<(usize, LocalScalar)> {
    let n = g.nvars();
    let lin = g.linear_part(&Rationals);
    (0..n).rev().find_map(|k| {
        let u = &lin[k];
        if u.is_zero() || !o.is_unit(u) {
            return None;
        }
        let rest = g.sub(&Rationals, &Poly::from_terms(&Rationals, n, [(Monomial::var(n, k), u.clone())]));
        (!rest.involves(k)).then(|| (k, u.clone()))
    })
}

/// `A -> A/(f)`, solving for a variable when `f` is linear in one with a
/// unit coefficient.
pub fn cut(p: &PolyPresentation, f: &QPoly, degree_cap: u32) -> Result<CutResult> {
    let e = Rationals;
    let n = p.nvars();
    if !not_in_symbolic_square(p, f)? {
        return Err(Error::SymbolicSquareViolation);
    }
    let v = match class_valuation(p, f)? {
        Valuation::Finite(v) => v as u64,
        Valuation::Infinite => return Err(Error::SymbolicSquareViolation),
    };
    let regularity = regularity(p, f, degree_cap);
    let g = p.centered(f);
    let names = p.names.clone();
    let (presentation, substitution, eliminated) = match solvable_variable(&p.dvr, &g) {
        Some((k, u)) => {
            let rest = g.sub(&e, &Poly::from_terms(&e, n, [(Monomial::var(n, k), u.clone())]));
            let solved = rest.scale(&e, &(-u.recip())).remove_var(k);
            let mut point = p.point.clone();
            let lk = point.remove(k);
            let mut new_names = names.clone();
            let dropped = new_names.remove(k);
            // back to the original coordinates of the remaining variables
            let neg: Vec<LocalScalar> = point.iter().map(|x| -x).collect();
            let xk = translate(&solved, &neg).add(&e, &Poly::constant(&e, n - 1, lk));
            let subst: Vec<QPoly> = (0..n)
                .map(|i| match i.cmp(&k) {
                    std::cmp::Ordering::Less => Poly::var(&e, n - 1, i),
                    std::cmp::Ordering::Equal => xk.clone(),
                    std::cmp::Ordering::Greater => Poly::var(&e, n - 1, i - 1),
                })
                .collect();
            let rels: Vec<QPoly> = p.relations.iter().map(|r| r.compose(&e, &subst)).filter(|r| !r.is_zero()).collect();
            (PolyPresentation::new(p.dvr.clone(), new_names, rels, point)?, subst, Some(dropped))
        }
        None => {
            let mut rels = p.relations.clone();
            rels.push(f.clone());
            let subst = (0..n).map(|i| Poly::var(&e, n, i)).collect();
            (PolyPresentation::new(p.dvr.clone(), names.clone(), rels, p.point.clone())?, subst, None)
        }
    };
    let annotation = CutAnnotation {
        element: f.display(&names).to_string(),
        in_ideal: true,
        not_in_symbolic_square: true,
        class_valuation: v,
        regularity,
        eliminated,
    };
    Ok(CutResult { presentation, annotation, substitution })
}

/// Certificate for a positive-codimension point, reduced along a cut chain.
#[derive(Clone, Debug)]
pub struct ChainCertificate {
    pub certificate: Certificate,
    pub codimension: usize,
    /// Torsion length of `p/p^2` for the original presentation.
    pub original_tors_length: u64,
    pub annotations: Vec<CutAnnotation>,
    pub final_presentation: PolyPresentation,
    pub final_algebra: FinAlgebra,
    pub defect_module_length: Length,
}

/// Cuts along `chain` (given in the variables of `p`) and certifies the
/// codimension-zero quotient with `M = A^rank`.
pub fn defect_via_chain(p: &PolyPresentation, rank: usize, chain: &[QPoly], degree_cap: u32) -> Result<ChainCertificate> {
    let conormal = jacobian_conormal(p);
    let c = conormal.codimension;
    if chain.len() != c {
        return Err(Error::ChainLengthMismatch { expected: c, found: chain.len() });
    }
    let e = Rationals;
    let mut cur = p.clone();
    let mut pending: Vec<QPoly> = chain.to_vec();
    let mut annotations = Vec::new();
    while !pending.is_empty() {
        let f = pending.remove(0);
        let step = cut(&cur, &f, degree_cap)?;
        pending = pending.iter().map(|g| g.compose(&e, &step.substitution)).collect();
        annotations.push(step.annotation);
        cur = step.presentation;
    }
    let fin = finite_basis_certificate(&cur, degree_cap)?;
    let a = &fin.algebra;
    let m = FinModule::free(a, rank);
    let mut certificate = certify_c0(a, &m, &fin.point)?;

    let k = koszul_on_ideal(a, fin.point.kernel())?;
    let dm = defect_module(&k, &m, 0)?.length;
    certificate.ledger.push(CheckRecord::new(
        "defect-module",
        dm == Length::Finite(certificate.delta.max(0) as u64) && certificate.delta >= 0,
        format!("length {} vs delta {}", length_text(dm), certificate.delta),
    ));
    let growth: u64 = annotations.iter().map(|a| a.class_valuation).sum();
    certificate.ledger.push(CheckRecord::new(
        "conormal-torsion",
        certificate.length_cotangent_tors == conormal.tors_length + growth,
        format!("{} = {} + {}", certificate.length_cotangent_tors, conormal.tors_length, growth),
    ));
    Ok(ChainCertificate {
        certificate,
        codimension: c,
        original_tors_length: conormal.tors_length,
        annotations,
        final_presentation: cur,
        final_algebra: fin.algebra,
        defect_module_length: dm,
    })
}

pub(crate) fn length_text(l: Length) -> String {
    match l {
        Length::Finite(n) => n.to_string(),
        Length::Infinite => "inf".into(),
    }
}

/// A random element of `p`: a linear form in the centered variables with
/// small coefficients, optionally plus one quadratic term.
pub fn random_cut_element<R: Rng>(p: &PolyPresentation, rng: &mut R, quadratic: bool) -> QPoly {
    let e = Rationals;
    let n = p.nvars();
    let bound = (p.dvr.p() * p.dvr.p()) as i64;
    let mut g = Poly::zero(n);
    for i in 0..n {
        g.add_term(&e, Monomial::var(n, i), &int(rng.gen_range(-bound..=bound)));
    }
    if quadratic && n > 0 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        g = g.add(&e, &Poly::var(&e, n, i).mul(&e, &Poly::var(&e, n, j)).scale(&e, &int(rng.gen_range(-3..=3))));
    }
    let neg: Vec<LocalScalar> = p.point.iter().map(|x| -x).collect();
    translate(&g, &neg)
}

/// Searches random chains until one certifies, within `budget` attempts.
pub fn find_chain<R: Rng>(p: &PolyPresentation, rank: usize, rng: &mut R, budget: usize, degree_cap: u32) -> Result<(Vec<QPoly>, ChainCertificate)> {
    let c = jacobian_conormal(p).codimension;
    let mut last = None;
    for attempt in 0..budget {
        let chain: Vec<QPoly> = (0..c).map(|_| random_cut_element(p, rng, attempt % 2 == 1)).collect();
        match defect_via_chain(p, rank, &chain, degree_cap) {
            Ok(cert) => return Ok((chain, cert)),
            Err(err) => last = Some(err),
        }
    }
    Err(Error::NotCertifiablyFinite(format!(
        "no admissible cut chain in {budget} attempts{}",
        last.map(|e| format!(" (last: {e})")).unwrap_or_default()
    )))
}

/// Parses relations and builds a presentation; `names` declares variables.
pub fn parse_presentation(o: &Dvr, names: &[String], relations: &[String], point: Vec<LocalScalar>) -> Result<PolyPresentation> {
    let rels = relations.iter().map(|r| QPoly::parse(r, names)).collect::<Result<Vec<_>>>()?;
    PolyPresentation::new(o.clone(), names.to_vec(), rels, point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::wiles_defect_c0;
    use crate::testutil::fiber3;
    use rand::SeedableRng;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn pres(p: u64, vars: &[&str], rels: &[&str], point: &[i64]) -> PolyPresentation {
        let v = names(vars);
        let rels: Vec<String> = rels.iter().map(|s| s.to_string()).collect();
        parse_presentation(&Dvr::new(p).unwrap(), &v, &rels, point.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn poly(s: &str, vars: &[&str]) -> QPoly {
        QPoly::parse(s, &names(vars)).unwrap()
    }

    #[test]
    fn normalization_examples() {
        let p = pres(2, &["x"], &["x^2 - 8*x"], &[8]);
        let q = normalize_point(&p);
        assert_eq!(q.relations[0].display(q.names()).to_string(), "x^2 + 8*x");
        let p = pres(2, &["x", "y"], &["x*y - 4"], &[2, 2]);
        let q = normalize_point(&p);
        assert_eq!(q.relations[0].display(q.names()).to_string(), "x*y + 2*x + 2*y");
        let p = pres(2, &["x"], &["x^2 - 8*x"], &[0]);
        assert_eq!(normalize_point(&p), p);
        assert!(parse_presentation(&Dvr::new(2).unwrap(), &names(&["x"]), &["x^2 - 2".into()], vec![int(0)]).is_err());
    }

    #[test]
    fn conormal_examples() {
        let c = jacobian_conormal(&pres(2, &["x", "y"], &["x^2 - 8*x"], &[0, 0]));
        assert_eq!((c.codimension, c.tors_length), (1, 3));
        let c = jacobian_conormal(&pres(2, &["x"], &[], &[0]));
        assert_eq!((c.codimension, c.tors_length), (1, 0));
        let c = jacobian_conormal(&pres(2, &["x", "y"], &["x^2 - 2*x", "y^2 - 2*y", "x*y"], &[0, 0]));
        assert_eq!((c.codimension, c.tors_length), (0, 2));
        assert_eq!(c.module.torsion_divisors(), &[1, 1]);
    }

    #[test]
    fn symbolic_square_examples() {
        let p = pres(2, &["x", "y"], &["x^2 - 8*x"], &[0, 0]);
        assert!(not_in_symbolic_square(&p, &poly("y", &["x", "y"])).unwrap());
        assert!(!not_in_symbolic_square(&p, &poly("x", &["x", "y"])).unwrap());
        assert!(!not_in_symbolic_square(&p, &poly("x^2", &["x", "y"])).unwrap());
        assert_eq!(not_in_symbolic_square(&p, &poly("y + 1", &["x", "y"])), Err(Error::NotInIdeal));
    }

    #[test]
    fn finite_certificates() {
        let (a, basis) = certify_relations(&Dvr::new(2).unwrap(), &names(&["x"]), &[poly("x^2 - 8*x", &["x"])], 24).unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(a.basis_action(1).col(1), vec![int(0), int(8)]);
        let (a, _) = certify_relations(&Dvr::new(2).unwrap(), &names(&["x"]), &[poly("x^2 - 2", &["x"])], 24).unwrap();
        assert_eq!(a.basis_action(1).col(1), vec![int(2), int(0)]);

        let p = pres(2, &["x", "y"], &["x^2 - 2*x", "y^2 - 2*y", "x*y"], &[0, 0]);
        let fin = finite_basis_certificate(&p, 24).unwrap();
        assert_eq!(fin.algebra.labels(), &["1", "y", "x"]);
        let cot = crate::congruence::cotangent(&fin.algebra, &fin.point).unwrap();
        assert_eq!(cot.torsion_divisors(), jacobian_conormal(&p).module.torsion_divisors());
        let reference = fiber3(2);
        let c1 = wiles_defect_c0(&fin.algebra, &FinModule::regular(&fin.algebra), &fin.point).unwrap();
        let pt = point_kernel(&reference, vec![int(1), int(0), int(0)]).unwrap();
        let c2 = wiles_defect_c0(&reference, &FinModule::regular(&reference), &pt).unwrap();
        assert_eq!(c1.delta, c2.delta);

        let bad = pres(2, &["x"], &["2*x"], &[0]);
        assert!(matches!(finite_basis_certificate(&bad, 24), Err(Error::NotCertifiablyFinite(_))));
        let regular = pres(2, &["x"], &[], &[0]);
        assert!(matches!(finite_basis_certificate(&regular, 24), Err(Error::NotCertifiablyFinite(_))));
    }

    #[test]
    fn cut_examples() {
        let v = ["x", "y"];
        let p = pres(2, &v, &["x^2 - 8*x"], &[0, 0]);
        let r = cut(&p, &poly("y", &v), 24).unwrap();
        assert_eq!(r.presentation.nvars(), 1);
        assert_eq!(r.annotation.regularity, Regularity::Verified);
        assert_eq!(r.annotation.eliminated.as_deref(), Some("y"));
        assert!(matches!(cut(&p, &poly("x", &v), 24), Err(Error::SymbolicSquareViolation)));

        let regular = pres(2, &["y"], &[], &[0]);
        let r = cut(&regular, &poly("y", &["y"]), 24).unwrap();
        assert_eq!(r.presentation.nvars(), 0);
        let fin = finite_basis_certificate(&r.presentation, 24).unwrap();
        assert_eq!(fin.algebra.rank(), 1);
    }

    #[test]
    fn chain_examples() {
        let v = ["x", "y"];
        let p = pres(2, &v, &["x^2 - 8*x"], &[0, 0]);
        let c = defect_via_chain(&p, 1, &[poly("y", &v)], 24).unwrap();
        assert_eq!((c.certificate.delta, c.certificate.ci_flag), (0, true));
        assert!(c.certificate.ledger.iter().all(|r| r.passed), "{:?}", c.certificate.ledger);

        let v3 = ["x", "y", "z"];
        let p = pres(2, &v3, &["x^2 - 2*x", "y^2 - 2*y", "x*y"], &[0, 0, 0]);
        let c = defect_via_chain(&p, 1, &[poly("z", &v3)], 24).unwrap();
        assert_eq!((c.certificate.delta, c.certificate.ci_flag), (1, false));
        assert_eq!(c.defect_module_length, Length::Finite(1));

        let p = pres(2, &["y"], &[], &[0]);
        let c = defect_via_chain(&p, 1, &[poly("y", &["y"])], 24).unwrap();
        assert_eq!((c.certificate.delta, c.certificate.ci_flag), (0, true));

        let p = pres(2, &v, &["x^2 - 8*x"], &[0, 0]);
        assert_eq!(
            defect_via_chain(&p, 1, &[], 24).unwrap_err(),
            Error::ChainLengthMismatch { expected: 1, found: 0 }
        );
    }

    #[test]
    fn chain_with_shifted_point() {
        // the point x = 8 of x^2 - 8x, with a free variable at y = 3
        let v = ["x", "y"];
        let p = pres(2, &v, &["x^2 - 8*x"], &[8, 3]);
        let c = defect_via_chain(&p, 1, &[poly("y - 3", &v)], 24).unwrap();
        assert_eq!(c.certificate.delta, 0);
        let c = defect_via_chain(&p, 2, &[poly("y - 3 + 5*x - 40", &v)], 24).unwrap();
        assert_eq!((c.certificate.delta, c.certificate.mu), (0, 2));
    }

    #[test]
    fn chains_agree() {
        let v = ["x", "y", "z"];
        let p = pres(2, &v, &["x^2 - 8*x"], &[0, 0, 0]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let (_, c) = find_chain(&p, 1, &mut rng, 50, 24).unwrap();
            assert_eq!((c.certificate.delta, c.certificate.ci_flag), (0, true));
            assert!(c.certificate.ledger.iter().all(|r| r.passed));
        }
    }
}
