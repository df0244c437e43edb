//! Random artinian instances: `F_p`-algebras, finite extensions of them and
//! modules over the extensions, for testing flatness and edim statements.

use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{check_algebra, quotient_algebra, unit_vec, zero_vec, FinAlgebra, FinModule, Vector};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::{groebner, DEFAULT_DEGREE_CAP};
use crate::koszul::build_koszul;
use crate::lab::{edim, is_free_module, minimal_free_resolution, rank_profile_check, verify_derived_action, FiniteFreeComplex};
use crate::poly::{default_names, Monomial, MonomialOrder, Poly};
use crate::presentation::monomial_label;
use crate::scalar::{int, Dvr, LocalScalar};
use crate::smith::OMatrix;

/// `F_p[x_1..x_n]/(relations)` on its standard monomial basis.
pub fn fp_algebra(o: &Dvr, nvars: usize, relations: &[Poly<u64>]) -> Result<(FinAlgebra, Vec<Monomial>)> {
    let f = PrimeField::new(o.p());
    let g = groebner(&f, nvars, relations, MonomialOrder::Grevlex, DEFAULT_DEGREE_CAP)?;
    let stairs = g.staircase().ok_or_else(|| Error::NotCertifiablyFinite("quotient is infinite".into()))?;
    if stairs.is_empty() {
        return Err(Error::Validation("quotient by the unit ideal".into()));
    }
    let d = stairs.len();
    let mut constants = vec![vec![zero_vec(d); d]; d];
    for i in 0..d {
        for j in 0..d {
            let prod = Poly::from_terms(&f, nvars, [(stairs[i].mul(&stairs[j]), 1)]);
            for (m, c) in g.reduce(&f, &prod).terms() {
                let k = stairs.iter().position(|s| s == m).expect("normal form outside the staircase");
                constants[i][j][k] = int(*c as i64);
            }
        }
    }
    let names = default_names(nvars);
    let labels = stairs.iter().map(|m| monomial_label(m, &names)).collect();
    let unit = unit_vec(d, stairs.iter().position(Monomial::is_one).expect("1 is standard"));
    let a = FinAlgebra::from_structure_constants(o.clone(), labels, constants, unit, vec![Some(1); d])?;
    Ok((a, stairs))
}

fn reduce_torsion(o: &Dvr, torsion: &[Option<u64>], v: Vector) -> Vector {
    v.into_iter()
        .zip(torsion)
        .map(|(x, t)| match t {
            Some(e) => o.residue_mod(&x, *e),
            None => x,
        })
        .collect()
}

/// `B = A[t]/(t^e - c)` on the basis `a_i t^j`, index `j * rank(A) + i`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub algebra: FinAlgebra,
    /// Images in `B` of the basis of `A`.
    pub inclusion: Vec<Vector>,
}

impl Extension {
    /// A `B`-module viewed over `A`.
    pub fn restrict(&self, a: &FinAlgebra, n: &FinModule) -> Result<FinModule> {
        let actions = self.inclusion.iter().map(|x| n.act(x)).collect();
        FinModule::new(a, n.rank(), actions, n.relations().clone())
    }
}

pub fn monogenic_extension(a: &FinAlgebra, c: &[LocalScalar], e: usize) -> Result<Extension> {
    if e == 0 {
        return Err(Error::Validation("extension degree must be positive".into()));
    }
    let o = a.dvr();
    let d = a.rank();
    let n = d * e;
    let torsion: Vec<Option<u64>> = (0..e).flat_map(|_| a.torsion().iter().copied()).collect();
    let place = |v: &Vector, block: usize| {
        let mut out = zero_vec(n);
        out[block * d..(block + 1) * d].clone_from_slice(v);
        out
    };
    let mut constants = vec![vec![zero_vec(n); n]; n];
    for j in 0..e {
        for i in 0..d {
            for l in 0..e {
                for k in 0..d {
                    let v = a.mul(&unit_vec(d, i), &unit_vec(d, k));
                    let prod = if j + l < e { place(&v, j + l) } else { place(&a.mul(c, &v), j + l - e) };
                    constants[j * d + i][l * d + k] = reduce_torsion(o, &torsion, prod);
                }
            }
        }
    }
    let labels = (0..e)
        .flat_map(|j| {
            a.labels().iter().map(move |lab| match (j, lab.as_str()) {
                (0, _) => lab.clone(),
                (1, "1") => "t".into(),
                (_, "1") => format!("t^{j}"),
                (1, _) => format!("{lab}*t"),
                _ => format!("{lab}*t^{j}"),
            })
        })
        .collect();
    let algebra = FinAlgebra::from_structure_constants(o.clone(), labels, constants, place(a.unit(), 0), torsion)?;
    let inclusion = (0..d).map(|i| place(&unit_vec(d, i), 0)).collect();
    Ok(Extension { algebra, inclusion })
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub p: u64,
    pub max_vars: usize,
    /// Relations contain all monomials of this degree (at least 2).
    pub max_power: u32,
    pub max_rank: usize,
    pub max_extension_degree: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { p: 2, max_vars: 2, max_power: 3, max_rank: 2, max_extension_degree: 2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Quotient,
    Extension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: u64,
    pub kind: InstanceKind,
    pub detail: String,
}

/// Observations on derived actions, kept apart from theorem checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Observations {
    pub complexes: usize,
    pub witnesses_verified: usize,
    /// Truncated resolutions on which some generator is not null-homotopic.
    pub truncations_without_action: usize,
    /// `n <= edim A - edim B`.
    pub within_bound: usize,
    pub h0_free_within_bound: usize,
    pub h0_not_free_within_bound: usize,
    pub profiles_checked: usize,
    pub profiles_matching: usize,
}

impl Observations {
    fn absorb(&mut self, o: &Observations) {
        self.complexes += o.complexes;
        self.witnesses_verified += o.witnesses_verified;
        self.truncations_without_action += o.truncations_without_action;
        self.within_bound += o.within_bound;
        self.h0_free_within_bound += o.h0_free_within_bound;
        self.h0_not_free_within_bound += o.h0_not_free_within_bound;
        self.profiles_checked += o.profiles_checked;
        self.profiles_matching += o.profiles_matching;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub seed: u64,
    pub budget: u64,
    /// Instances meeting the flatness and edim hypotheses.
    pub checked: usize,
    pub skipped: usize,
    pub errors: Vec<String>,
    pub violations: Vec<Violation>,
    pub observations: Observations,
}

fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ index)
}

fn monomials_of_degree(n: usize, deg: u32) -> Vec<Monomial> {
    if n == 0 {
        return if deg == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in monomials_of_degree(n - 1, deg - first).into_iter().map(|m| m.0) {
            rest.insert(0, first);
            out.push(Monomial(rest));
        }
    }
    out
}

fn random_local_fp_algebra(o: &Dvr, cfg: &SearchConfig, rng: &mut ChaCha8Rng) -> Result<FinAlgebra> {
    let f = PrimeField::new(o.p());
    let n = rng.gen_range(1..=cfg.max_vars.max(1));
    let s = rng.gen_range(2..=cfg.max_power.max(2));
    let mut rels: Vec<Poly<u64>> = monomials_of_degree(n, s).into_iter().map(|m| Poly::from_terms(&f, n, [(m, 1)])).collect();
    let middle: Vec<Monomial> = (2..s).flat_map(|k| monomials_of_degree(n, k)).collect();
    if !middle.is_empty() {
        for _ in 0..rng.gen_range(0..=2) {
            let terms = middle.iter().map(|m| (m.clone(), rng.gen_range(0..o.p())));
            rels.push(Poly::from_terms(&f, n, terms.collect::<Vec<_>>()));
        }
    }
    Ok(fp_algebra(o, n, &rels)?.0)
}

/// A random element of the maximal ideal, coordinates reduced by torsion.
fn random_maximal(a: &FinAlgebra, maximal: &OMatrix, rng: &mut ChaCha8Rng) -> Vector {
    let o = a.dvr();
    let mut v = zero_vec(a.rank());
    for c in maximal.columns() {
        let r = int(rng.gen_range(0..o.p()) as i64);
        for (x, y) in v.iter_mut().zip(&c) {
            *x += &r * y;
        }
    }
    reduce_torsion(o, a.torsion(), v)
}

/// `B^free ⊕ ⊕ B/(x_i)` with `x_i` random in `m_B`.
fn random_module(b: &FinAlgebra, cfg: &SearchConfig, rng: &mut ChaCha8Rng) -> Result<FinModule> {
    let maximal = check_algebra(b)?.maximal_ideal;
    let total = rng.gen_range(1..=cfg.max_rank.max(1));
    let free = rng.gen_range(0..=total);
    let mut n = FinModule::free(b, free);
    for _ in free..total {
        let x = random_maximal(b, &maximal, rng);
        n = n.direct_sum(&FinModule::quotient(b, &OMatrix::from_cols(b.rank(), &[x])));
    }
    Ok(n)
}

enum Outcome {
    Skipped,
    Checked(Option<Violation>),
}

fn run_instance(cfg: &SearchConfig, seed: u64, index: u64, obs: &mut Observations) -> Result<Outcome> {
    let o = Dvr::new(cfg.p)?;
    let mut rng = instance_rng(seed, index);
    let a = random_local_fp_algebra(&o, cfg, &mut rng)?;
    let ma = check_algebra(&a)?.maximal_ideal;
    observe_derived_actions(&a, &ma, &mut rng, obs)?;

    let kind = if rng.gen_bool(0.5) { InstanceKind::Quotient } else { InstanceKind::Extension };
    let (b, n_b, n_a) = match kind {
        InstanceKind::Quotient => {
            let k = rng.gen_range(1..=2);
            let gens: Vec<Vector> = (0..k).map(|_| random_maximal(&a, &ma, &mut rng)).collect();
            let q = quotient_algebra(&a, &OMatrix::from_cols(a.rank(), &gens))?;
            let n = random_module(&q.algebra, cfg, &mut rng)?;
            let na = q.restrict(&a, &n);
            (q.algebra, n, na)
        }
        InstanceKind::Extension => {
            let c = random_maximal(&a, &ma, &mut rng);
            let e = rng.gen_range(2..=cfg.max_extension_degree.max(2));
            let ext = monogenic_extension(&a, &c, e)?;
            check_algebra(&ext.algebra)?;
            let n = random_module(&ext.algebra, cfg, &mut rng)?;
            let na = ext.restrict(&a, &n)?;
            (ext.algebra, n, na)
        }
    };
    let (edim_a, edim_b) = (edim(&a)?, edim(&b)?);
    if !is_free_module(&a, &n_a)? || edim_a < edim_b {
        return Ok(Outcome::Skipped);
    }
    let free_b = is_free_module(&b, &n_b)?;
    let violation = (!free_b || edim_a != edim_b).then(|| Violation {
        index,
        kind,
        detail: format!(
            "dim A = {}, dim B = {}, edim A = {edim_a}, edim B = {edim_b}, N free over B: {free_b}",
            a.rank(),
            b.rank()
        ),
    });
    Ok(Outcome::Checked(violation))
}

/// Koszul complexes and truncated resolutions over `A` carrying an action
/// of `A/(a)`; records whether `H_0` is free over the quotient.
fn observe_derived_actions(a: &FinAlgebra, ma: &OMatrix, rng: &mut ChaCha8Rng, obs: &mut Observations) -> Result<()> {
    let k = rng.gen_range(1..=2);
    let gens: Vec<Vector> = (0..k).map(|_| random_maximal(a, ma, rng)).collect();
    let q = quotient_algebra(a, &OMatrix::from_cols(a.rank(), &gens))?;
    let gap = edim(a)?.saturating_sub(edim(&q.algebra)?);
    let koszul = FiniteFreeComplex::from_koszul(&build_koszul(a, &gens)?)?;
    let mut complexes = vec![(true, koszul.clone())];
    if rng.gen_bool(0.3) {
        complexes.push((true, koszul.direct_sum(&koszul)?));
    }
    let b_over_a = q.restrict(a, &FinModule::regular(&q.algebra));
    let res = minimal_free_resolution(a, &b_over_a, gap.max(1))?;
    if res.diffs.len() >= gap.max(1) {
        let len = gap.max(1);
        complexes.push((false, FiniteFreeComplex::new(a, res.betti[..=len].to_vec(), res.diffs[..len].to_vec())?));
    }
    for (is_koszul, f) in complexes {
        obs.complexes += 1;
        match verify_derived_action(&f, &gens) {
            Ok(_) => obs.witnesses_verified += 1,
            Err(Error::UnsolvableHomotopy { .. }) if !is_koszul => {
                obs.truncations_without_action += 1;
                continue;
            }
            Err(e) => return Err(e),
        }
        if f.len() <= gap {
            obs.within_bound += 1;
            let h0 = q.descend(&f.h0_module())?;
            if is_free_module(&q.algebra, &h0)? {
                obs.h0_free_within_bound += 1;
            } else {
                obs.h0_not_free_within_bound += 1;
            }
        }
        if f.non_minimal_degree(ma).is_none() {
            obs.profiles_checked += 1;
            if rank_profile_check(&f, &gens)?.matches {
                obs.profiles_matching += 1;
            }
        }
    }
    Ok(())
}

/// Runs `budget` seeded instances on `jobs` threads. Results depend only on
/// `(config, budget, seed)`.
pub fn desmit_search(cfg: &SearchConfig, budget: u64, seed: u64, jobs: usize) -> Result<SearchReport> {
    Dvr::new(cfg.p)?;
    let jobs = jobs.max(1) as u64;
    let chunks: Vec<(usize, usize, Vec<String>, Vec<Violation>, Observations)> = thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                s.spawn(move || {
                    let (mut checked, mut skipped, mut errors, mut violations) = (0, 0, Vec::new(), Vec::new());
                    let mut obs = Observations::default();
                    for index in (j..budget).step_by(jobs as usize) {
                        let mut local = Observations::default();
                        match run_instance(cfg, seed, index, &mut local) {
                            Ok(Outcome::Skipped) => skipped += 1,
                            Ok(Outcome::Checked(v)) => {
                                checked += 1;
                                violations.extend(v);
                            }
                            Err(e) => errors.push(format!("instance {index}: {e}")),
                        }
                        obs.absorb(&local);
                    }
                    (checked, skipped, errors, violations, obs)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
    });
    let mut report = SearchReport {
        seed,
        budget,
        checked: 0,
        skipped: 0,
        errors: Vec::new(),
        violations: Vec::new(),
        observations: Observations::default(),
    };
    for (c, s, e, v, o) in chunks {
        report.checked += c;
        report.skipped += s;
        report.errors.extend(e);
        report.violations.extend(v);
        report.observations.absorb(&o);
    }
    report.errors.sort();
    report.violations.sort_by_key(|v| v.index);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_algebra_from_relations() {
        let o = Dvr::new(3).unwrap();
        let f = PrimeField::new(3);
        let x = Poly::var(&f, 1, 0);
        let (a, basis) = fp_algebra(&o, 1, &[x.pow(&f, 3)]).unwrap();
        assert_eq!(basis.len(), 3);
        assert_eq!(edim(&a).unwrap(), 1);
        let res = minimal_free_resolution(&a, &FinModule::regular(&a), 3).unwrap();
        assert_eq!(res.betti, vec![1]);
    }

    #[test]
    fn extension_by_a_generator_keeps_edim() {
        let o = Dvr::new(2).unwrap();
        let f = PrimeField::new(2);
        let x = Poly::var(&f, 1, 0);
        let (a, _) = fp_algebra(&o, 1, &[x.pow(&f, 2)]).unwrap();
        // F_2[x]/(x^2) -> F_2[x,t]/(x^2, t^2 - x) = F_2[t]/(t^4)
        let ext = monogenic_extension(&a, &[int(0), int(1)], 2).unwrap();
        assert_eq!(check_algebra(&ext.algebra).unwrap().residue_degree, 1);
        assert_eq!(edim(&ext.algebra).unwrap(), 1);
        let b_over_a = ext.restrict(&a, &FinModule::regular(&ext.algebra)).unwrap();
        assert!(is_free_module(&a, &b_over_a).unwrap());
        // t^2 - x^2 with x^2 = 0 gives edim 2
        let ext = monogenic_extension(&a, &[int(0), int(0)], 2).unwrap();
        assert_eq!(edim(&ext.algebra).unwrap(), 2);
    }

    #[test]
    fn monomials_enumerated() {
        assert_eq!(monomials_of_degree(2, 3).len(), 4);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
    }

    #[test]
    fn search_is_deterministic_and_clean() {
        let cfg = SearchConfig::default();
        let r1 = desmit_search(&cfg, 12, 5, 1).unwrap();
        let r2 = desmit_search(&cfg, 12, 5, 3).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.errors.is_empty(), "{:?}", r1.errors);
        assert!(r1.violations.is_empty());
        assert_eq!(r1.checked + r1.skipped, 12);
        assert!(r1.observations.witnesses_verified > 0);
        assert!(r1.checked > 0);
    }

    #[test]
    fn unit_ring_rejected() {
        let o = Dvr::new(2).unwrap();
        let f = PrimeField::new(2);
        assert!(fp_algebra(&o, 1, &[Poly::constant(&f, 1, 1)]).is_err());
    }
}
