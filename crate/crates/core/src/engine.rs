//! Full analyses of problems: reduction to codimension zero, the certificate,
//! and every applicable cross-check.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{quotient_algebra, FinAlgebra, FinModule, Vector};
use crate::congruence::{certify_c0, fitting_inclusion_check, Certificate, CheckRecord};
use crate::error::{Error, Result};
use crate::groebner::DEFAULT_DEGREE_CAP;
use crate::koszul::{build_koszul, defect_module, homology, koszul_on_ideal, wedge_top_map, wiebe_test};
use crate::lab::{is_free_module, rank_profile_check, verify_derived_action, FiniteFreeComplex};
use crate::omodule::Length;
use crate::oracle::{oracle_invariants, Invariants};
use crate::point::OPoint;
use crate::presentation::{defect_via_chain, finite_basis_certificate, find_chain, generic_dimension, jacobian_conormal, CutAnnotation, Regularity};
use crate::problem::{Problem, Ring};
use crate::smith::OMatrix;

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub degree_cap: u32,
    /// Seed for cut-chain search when the problem gives no chain.
    pub seed: u64,
    pub chain_budget: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { degree_cap: DEFAULT_DEGREE_CAP, seed: 0, chain_budget: 64 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Setting {
    CodimZero,
    Chain {
        codimension: usize,
        original_tors_length: u64,
        elements: Vec<String>,
        annotations: Vec<CutAnnotation>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `δ = 0`: complete intersection and `M ≅ A^μ ⊕ W`.
    Split,
    NotSplit,
    OutsideHypotheses,
}

impl Verdict {
    pub fn key(self) -> &'static str {
        match self {
            Verdict::Split => "complete-intersection-split",
            Verdict::NotSplit => "not-split",
            Verdict::OutsideHypotheses => "outside-hypotheses",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedActionSummary {
    pub elements: Vec<String>,
    pub ranks: Vec<usize>,
    pub verified: bool,
    pub edim_gap: usize,
    pub within_bound: bool,
    pub h0_free: bool,
    pub profile_matches: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub prime: u64,
    pub ring_kind: &'static str,
    /// Rank over `O` of the codimension-zero algebra.
    pub ring_rank: usize,
    pub module_rank: usize,
    pub setting: Setting,
    pub certificate: Certificate,
    pub wedge_onto: Option<bool>,
    pub defect_module_length: Option<Length>,
    pub special_fiber_ci: Option<bool>,
    pub derived_action: Option<DerivedActionSummary>,
    pub ledger: Vec<CheckRecord>,
    pub warnings: Vec<String>,
    pub verdict: Verdict,
}

impl AnalysisReport {
    pub fn invariants(&self) -> Invariants {
        Invariants::from(&self.certificate)
    }

    /// A failed identity inside the hypotheses of the theorems.
    pub fn has_inconsistency(&self) -> bool {
        self.verdict != Verdict::OutsideHypotheses && self.ledger.iter().any(|r| !r.passed)
    }
}

/// The codimension-zero data a problem reduces to.
#[derive(Clone, Debug)]
pub struct Reduced {
    pub algebra: FinAlgebra,
    pub point: OPoint,
    pub module: FinModule,
    pub setting: Setting,
    /// Present when the reduction went through a cut chain.
    pub certificate: Option<Certificate>,
}

pub fn reduce(problem: &Problem, opts: &AnalyzeOptions) -> Result<Reduced> {
    match &problem.ring {
        Ring::Table(a) => Ok(Reduced {
            algebra: a.clone(),
            point: problem.table_point(a)?,
            module: problem.module_over(a)?,
            setting: Setting::CodimZero,
            certificate: None,
        }),
        Ring::Poly(p) => {
            let rank = match problem.module {
                crate::problem::ModuleSpec::Free(r) => r,
                crate::problem::ModuleSpec::Table(_) => return Err(Error::Validation("table modules need a table ring".into())),
            };
            let codim = jacobian_conormal(p).codimension;
            if codim > generic_dimension(p, opts.degree_cap)? {
                return Err(Error::NotRegularPoint);
            }
            if codim == 0 {
                let c = finite_basis_certificate(p, opts.degree_cap)?;
                let module = FinModule::free(&c.algebra, rank);
                return Ok(Reduced { algebra: c.algebra, point: c.point, module, setting: Setting::CodimZero, certificate: None });
            }
            let (chain, cc) = match &problem.chain {
                Some(chain) => (chain.clone(), defect_via_chain(p, rank, chain, opts.degree_cap)?),
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                    find_chain(p, rank, &mut rng, opts.chain_budget, opts.degree_cap)?
                }
            };
            let fin = finite_basis_certificate(&cc.final_presentation, opts.degree_cap)?;
            let module = FinModule::free(&fin.algebra, rank);
            Ok(Reduced {
                algebra: fin.algebra,
                point: fin.point,
                module,
                setting: Setting::Chain {
                    codimension: cc.codimension,
                    original_tors_length: cc.original_tors_length,
                    elements: chain.iter().map(|f| f.display(p.names()).to_string()).collect(),
                    annotations: cc.annotations,
                },
                certificate: Some(cc.certificate),
            })
        }
    }
}

fn push_check(ledger: &mut Vec<CheckRecord>, name: &str, r: Result<(bool, String)>) -> Result<()> {
    match r {
        Ok((passed, detail)) => ledger.push(CheckRecord::new(name, passed, detail)),
        Err(e @ Error::InternalInconsistency(_)) => ledger.push(CheckRecord::new(name, false, e.to_string())),
        Err(e) => return Err(e),
    }
    Ok(())
}

/// `A / pA`, the fiber over the residue field.
pub fn special_fiber(a: &FinAlgebra) -> Result<FinAlgebra> {
    let p = a.unit().iter().map(|x| x * a.dvr().uniformizer_pow(1)).collect::<Vector>();
    Ok(quotient_algebra(a, &OMatrix::from_cols(a.rank(), &[p]))?.algebra)
}

fn derived_action_summary(a: &FinAlgebra, elems: &[Vector]) -> Result<DerivedActionSummary> {
    let f = FiniteFreeComplex::from_koszul(&build_koszul(a, elems)?)?;
    let verified = match verify_derived_action(&f, elems) {
        Ok(_) => true,
        Err(Error::UnsolvableHomotopy { .. }) => false,
        Err(e) => return Err(e),
    };
    let q = quotient_algebra(a, &OMatrix::from_cols(a.rank(), elems))?;
    let h0_free = is_free_module(&q.algebra, &q.descend(&f.h0_module())?)?;
    let profile = match rank_profile_check(&f, elems) {
        Ok(p) => Some(p),
        Err(Error::NotMinimalComplex(_)) => None,
        Err(e) => return Err(e),
    };
    let (edim_a, edim_b) = (crate::lab::edim(a)?, crate::lab::edim(&q.algebra)?);
    Ok(DerivedActionSummary {
        elements: elems.iter().map(|e| a.format_element(e)).collect(),
        ranks: f.ranks().to_vec(),
        verified,
        edim_gap: edim_a.saturating_sub(edim_b),
        within_bound: f.len() + edim_b <= edim_a,
        h0_free,
        profile_matches: profile.map(|p| p.matches),
    })
}

pub fn analyze(problem: &Problem, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let red = reduce(problem, opts)?;
    let (a, pt, m) = (&red.algebra, &red.point, &red.module);
    let cert = match &red.certificate {
        Some(c) => c.clone(),
        None => certify_c0(a, m, pt)?,
    };
    let checks = &problem.checks;
    let mut ledger = if checks.identities { cert.ledger.clone() } else { Vec::new() };
    let mut warnings = Vec::new();
    let (mut wedge_onto, mut defect_module_length, mut special_fiber_ci) = (None, None, None);
    let mut defect_mismatch = false;

    if checks.koszul {
        let k = koszul_on_ideal(a, pt.kernel())?;
        let w = wedge_top_map(&k, pt.kernel(), 0)?;
        wedge_onto = Some(w.is_onto());
        ledger.push(CheckRecord::new(
            "wedge-criterion",
            w.is_onto() == cert.ci_flag,
            format!("top wedge of H_1 onto: {}, ci: {}", w.is_onto(), cert.ci_flag),
        ));
        let dm = defect_module(&k, &FinModule::regular(a), 0)?;
        defect_mismatch = dm.length != Length::Finite(cert.delta_ring.max(0) as u64) || cert.delta_ring < 0;
        ledger.push(CheckRecord::new(
            "defect-module-ring",
            !defect_mismatch,
            format!("length {} vs delta(A) = {}", dm.length, cert.delta_ring),
        ));
        defect_module_length = Some(dm.length);
    }
    if checks.fitting {
        push_check(
            &mut ledger,
            "fitting-inclusion",
            fitting_inclusion_check(a, pt).map(|f| (true, format!("{} generators of p", f.generators))),
        )?;
        push_check(
            &mut ledger,
            "fitting-base-change",
            fitting_inclusion_check(a, pt).map(|f| (f.base_change_matches, "lambda(Fitt_0(p)) = Fitt_0(p/p^2)".to_string())),
        )?;
    }
    if checks.wiebe {
        let fiber = special_fiber(a)?;
        let v = wiebe_test(&fiber)?;
        special_fiber_ci = Some(v.ci_signal);
        ledger.push(CheckRecord::new(
            "wiebe-special-fiber",
            v.ci_signal == cert.ci_flag,
            format!("edim {} top wedge nonzero: {}, ci: {}", v.embedding_dim, v.ci_signal, cert.ci_flag),
        ));
    }
    if checks.oracle {
        let mine = Invariants::from(&cert);
        let (passed, detail) = match oracle_invariants(a, m, pt.values()) {
            Ok(inv) if inv == mine => (true, "all invariant fields agree".to_string()),
            Ok(inv) => (false, format!("oracle {inv:?} vs {mine:?}")),
            Err(e) => (false, format!("oracle failed: {e}")),
        };
        ledger.push(CheckRecord::new("oracle-agreement", passed, detail));
    }
    let derived_action = if checks.derived_action.is_empty() {
        None
    } else {
        let s = derived_action_summary(a, &problem.derived_action_elements())?;
        ledger.push(CheckRecord::new("derived-action-witness", s.verified, format!("Koszul ranks {:?}", s.ranks)));
        Some(s)
    };

    if let Setting::Chain { annotations, .. } = &red.setting {
        for (i, ann) in annotations.iter().enumerate() {
            if let Regularity::Assumed(reason) = &ann.regularity {
                warnings.push(format!("cut {}: regularity assumed ({reason})", i + 1));
            }
        }
    }
    if !cert.free_at_point {
        warnings.push("module is not free at the point".into());
    }
    if cert.delta < 0 {
        warnings.push(format!("delta = {} < 0", cert.delta));
    }
    if defect_mismatch {
        warnings.push("defect module length differs from delta(A)".into());
    }
    let verdict = if !cert.applicable || defect_mismatch {
        Verdict::OutsideHypotheses
    } else if cert.split_flag {
        Verdict::Split
    } else {
        Verdict::NotSplit
    };
    Ok(AnalysisReport {
        prime: problem.dvr.p(),
        ring_kind: match problem.ring {
            Ring::Table(_) => "table",
            Ring::Poly(_) => "poly",
        },
        ring_rank: a.rank(),
        module_rank: m.rank(),
        setting: red.setting,
        certificate: cert,
        wedge_onto,
        defect_module_length,
        special_fiber_ci,
        derived_action,
        ledger,
        warnings,
        verdict,
    })
}

/// Recomputes the invariants of a problem on the brute-force path. The
/// reduction to codimension zero is shared with [`analyze`].
pub fn oracle_recompute(problem: &Problem, opts: &AnalyzeOptions) -> Result<Invariants> {
    let red = reduce(problem, opts)?;
    oracle_invariants(&red.algebra, &red.module, red.point.values())
}

#[derive(Clone, Debug)]
pub struct KoszulReport {
    pub prime: u64,
    pub generators: Vec<String>,
    pub ranks: Vec<usize>,
    /// `H_i(K ⊗ M)` for `i = 0..=n`, as `O`-modules.
    pub homology: Vec<String>,
    pub wedge_onto: bool,
    pub defect_module_length: Length,
    pub special_fiber_ci: bool,
    pub derived_action: Option<DerivedActionSummary>,
}

/// Koszul complex on minimal generators of the kernel of the point.
pub fn koszul_report(problem: &Problem, opts: &AnalyzeOptions) -> Result<KoszulReport> {
    let red = reduce(problem, opts)?;
    let (a, pt, m) = (&red.algebra, &red.point, &red.module);
    let k = koszul_on_ideal(a, pt.kernel())?;
    let n = k.len();
    let homology = (0..=n).map(|i| homology(&k, m, i).map(|h| h.module.to_string())).collect::<Result<_>>()?;
    let wedge = wedge_top_map(&k, pt.kernel(), 0)?;
    let dm = defect_module(&k, m, 0)?;
    let derived_action = if problem.checks.derived_action.is_empty() {
        None
    } else {
        Some(derived_action_summary(a, &problem.derived_action_elements())?)
    };
    Ok(KoszulReport {
        prime: problem.dvr.p(),
        generators: k.elems().iter().map(|e| a.format_element(e)).collect(),
        ranks: (0..=n).map(|i| k.subsets(i).len()).collect(),
        homology,
        wedge_onto: wedge.is_onto(),
        defect_module_length: dm.length,
        special_fiber_ci: wiebe_test(&special_fiber(a)?)?.ci_signal,
        derived_action,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(rel: &str, vars: &str, point: &str) -> Problem {
        let text = format!("[dvr]\nprime = 2\n[ring]\nkind = \"poly\"\nvariables = [{vars}]\nrelations = [{rel}]\n[point]\nvalues = [{point}]\n");
        Problem::parse(&text).unwrap()
    }

    #[test]
    fn hypersurface_analysis() {
        let r = analyze(&poly("\"x^2 - 8*x\"", "\"x\"", "0"), &AnalyzeOptions::default()).unwrap();
        let c = &r.certificate;
        assert_eq!((c.length_psi, c.length_cotangent_tors, c.delta, c.ci_flag), (3, 3, 0, true));
        assert_eq!(r.verdict, Verdict::Split);
        assert!(r.ledger.iter().all(|x| x.passed), "{:?}", r.ledger);
        assert_eq!(r.wedge_onto, Some(true));
        assert_eq!(oracle_recompute(&poly("\"x^2 - 8*x\"", "\"x\"", "0"), &AnalyzeOptions::default()).unwrap(), r.invariants());
    }

    #[test]
    fn fiber_product_analysis() {
        let p = poly("\"x^2 - 2*x\", \"y^2 - 2*y\", \"x*y\"", "\"x\", \"y\"", "0, 0");
        let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
        let c = &r.certificate;
        assert_eq!((c.length_psi, c.length_cotangent_tors, c.delta, c.ci_flag), (1, 2, 1, false));
        assert_eq!((r.wedge_onto, r.special_fiber_ci), (Some(false), Some(false)));
        assert_eq!(r.verdict, Verdict::NotSplit);
        assert!(r.ledger.iter().all(|x| x.passed), "{:?}", r.ledger);
    }

    #[test]
    fn lifted_hypersurface_through_chain() {
        let p = poly("\"x^2 - 8*x\"", "\"x\", \"y\"", "0, 0");
        let r = analyze(&p, &AnalyzeOptions::default()).unwrap();
        assert!(matches!(r.setting, Setting::Chain { codimension: 1, .. }));
        assert_eq!((r.certificate.delta, r.certificate.ci_flag), (0, true));
        assert!(r.ledger.iter().all(|x| x.passed), "{:?}", r.ledger);
    }

    #[test]
    fn derived_action_on_table_ring() {
        let text = r#"
[dvr]
prime = 2
[ring]
kind = "table"
basis = ["1", "x"]
products = [[[1, 0], [0, 1]], [[0, 1], [0, 2]]]
[point]
values = [1, 0]
[checks]
derived_action = [[0, 1]]
"#;
        let r = analyze(&Problem::parse(text).unwrap(), &AnalyzeOptions::default()).unwrap();
        let s = r.derived_action.unwrap();
        assert_eq!(s.ranks, vec![1, 1]);
        assert!(s.verified && s.h0_free && s.within_bound);
        assert_eq!(s.profile_matches, Some(true));
    }

    #[test]
    fn checks_can_be_switched_off() {
        let text = "[dvr]\nprime = 3\n[ring]\nkind = \"poly\"\nvariables = []\nrelations = []\n[point]\nvalues = []\n[checks]\nidentities = false\nkoszul = false\nfitting = false\nwiebe = false\noracle = false\n";
        let r = analyze(&Problem::parse(text).unwrap(), &AnalyzeOptions::default()).unwrap();
        assert!(r.ledger.is_empty());
        assert_eq!(r.certificate.delta, 0);
    }
}
