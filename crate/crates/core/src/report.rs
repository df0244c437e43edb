//! Text and machine-readable rendering of reports. The machine format is an
//! indented `key: value` tree described in `docs/report-format.md`.

use std::fmt::Write;

use crate::engine::{AnalysisReport, DerivedActionSummary, KoszulReport, Setting};
use crate::presentation::Regularity;
use crate::search::SearchReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

/// Writer for the machine format.
struct Tree {
    out: String,
    depth: usize,
}

impl Tree {
    fn new() -> Self {
        Tree { out: String::new(), depth: 0 }
    }

    fn pad(&self) -> String {
        "  ".repeat(self.depth)
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let pad = self.pad();
        writeln!(self.out, "{pad}{key}: {value}").unwrap();
    }

    fn text(&mut self, key: &str, value: &str) {
        self.kv(key, format!("{value:?}"));
    }

    fn open(&mut self, key: &str) {
        let pad = self.pad();
        writeln!(self.out, "{pad}{key}:").unwrap();
        self.depth += 1;
    }

    /// A list that renders as `key: []` when empty.
    fn list<T>(&mut self, key: &str, items: &[T], mut f: impl FnMut(&mut Tree, &T)) {
        if items.is_empty() {
            self.kv(key, "[]");
            return;
        }
        self.open(key);
        for item in items {
            let pad = self.pad();
            writeln!(self.out, "{pad}-").unwrap();
            self.depth += 1;
            f(self, item);
            self.depth -= 1;
        }
        self.close();
    }

    fn close(&mut self) {
        self.depth -= 1;
    }
}

fn opt<T: std::fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(|| "none".to_string(), T::to_string)
}

fn list_text(xs: &[usize]) -> String {
    format!("[{}]", xs.iter().map(usize::to_string).collect::<Vec<_>>().join(", "))
}

fn derived_tree(t: &mut Tree, s: &DerivedActionSummary) {
    t.open("derived_action");
    t.list("elements", &s.elements, |t, e| t.text("element", e));
    t.kv("ranks", list_text(&s.ranks));
    t.kv("verified", s.verified);
    t.kv("edim_gap", s.edim_gap);
    t.kv("within_bound", s.within_bound);
    t.kv("h0_free", s.h0_free);
    t.kv("profile_matches", opt(&s.profile_matches));
    t.close();
}

fn regularity_key(r: &Regularity) -> (&'static str, String) {
    match r {
        Regularity::Verified => ("verified", String::new()),
        Regularity::Assumed(why) => ("assumed", why.clone()),
    }
}

pub fn emit_analysis(r: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Machine => analysis_machine(r),
        Format::Text => analysis_text(r),
    }
}

fn analysis_machine(r: &AnalysisReport) -> String {
    let c = &r.certificate;
    let mut t = Tree::new();
    t.kv("report", "analysis");
    t.kv("prime", r.prime);
    t.kv("ring_kind", r.ring_kind);
    t.kv("ring_rank", r.ring_rank);
    t.kv("module_rank", r.module_rank);
    match &r.setting {
        Setting::CodimZero => {
            t.kv("setting", "codim0");
            t.kv("codimension", 0);
        }
        Setting::Chain { codimension, original_tors_length, annotations, .. } => {
            t.kv("setting", "chain");
            t.kv("codimension", codimension);
            t.kv("original_cotangent_tors", original_tors_length);
            t.list("chain", annotations, |t, a| {
                t.text("element", &a.element);
                t.kv("in_ideal", a.in_ideal);
                t.kv("not_in_symbolic_square", a.not_in_symbolic_square);
                t.kv("class_valuation", a.class_valuation);
                let (key, why) = regularity_key(&a.regularity);
                t.kv("regularity", key);
                if !why.is_empty() {
                    t.text("regularity_reason", &why);
                }
                t.kv("eliminated", opt(&a.eliminated));
            });
        }
    }
    t.kv("mu", c.mu);
    t.kv("free_at_point", c.free_at_point);
    t.kv("length_cotangent_tors", c.length_cotangent_tors);
    t.kv("length_psi", c.length_psi);
    t.kv("delta", c.delta);
    t.kv("delta_ring", c.delta_ring);
    t.kv("kappa_coker_length", c.kappa_coker_length);
    t.kv("ci", c.ci_flag);
    t.kv("split", c.split_flag);
    t.kv("applicable", c.applicable);
    t.kv("verdict", r.verdict.key());
    match &c.decomposition {
        Some(d) => {
            t.open("decomposition");
            t.kv("free_rank", d.mu);
            t.kv("complement_dim", d.complement_dim);
            t.close();
        }
        None => t.kv("decomposition", "none"),
    }
    t.kv("wedge_onto", opt(&r.wedge_onto));
    t.kv("defect_module_length", opt(&r.defect_module_length));
    t.kv("special_fiber_ci", opt(&r.special_fiber_ci));
    if let Some(s) = &r.derived_action {
        derived_tree(&mut t, s);
    }
    t.list("ledger", &r.ledger, |t, rec| {
        t.kv("name", &rec.name);
        t.kv("passed", rec.passed);
        t.text("detail", &rec.detail);
    });
    t.list("warnings", &r.warnings, |t, w| t.text("warning", w));
    t.out
}

fn analysis_text(r: &AnalysisReport) -> String {
    let c = &r.certificate;
    let mut s = String::new();
    let setting = match &r.setting {
        Setting::CodimZero => "codimension 0".to_string(),
        Setting::Chain { codimension, elements, .. } => format!("codimension {codimension}, cut along {}", elements.join(", ")),
    };
    writeln!(s, "O = Z_({}), {} ring, rank {} after reduction ({setting})", r.prime, r.ring_kind, r.ring_rank).unwrap();
    if let Setting::Chain { annotations, original_tors_length, .. } = &r.setting {
        writeln!(s, "  original length tors(p/p^2) = {original_tors_length}").unwrap();
        for a in annotations {
            let (key, why) = regularity_key(&a.regularity);
            let why = if why.is_empty() { String::new() } else { format!(" ({why})") };
            writeln!(s, "  cut {}: class valuation {}, regularity {key}{why}", a.element, a.class_valuation).unwrap();
        }
    }
    writeln!(s, "mu = {}, free at the point: {}", c.mu, c.free_at_point).unwrap();
    writeln!(s, "length tors(p/p^2) = {}", c.length_cotangent_tors).unwrap();
    writeln!(s, "length Psi = {}", c.length_psi).unwrap();
    writeln!(s, "delta = {}   (delta of A = {}, length coker kappa = {})", c.delta, c.delta_ring, c.kappa_coker_length).unwrap();
    let verdict = match r.verdict {
        crate::engine::Verdict::Split => match &c.decomposition {
            Some(d) => format!("complete intersection, M = A^{} + W (dim W = {})", d.mu, d.complement_dim),
            None => "complete intersection".to_string(),
        },
        crate::engine::Verdict::NotSplit if c.ci_flag => "A is a complete intersection; M has no free summand of full rank".to_string(),
        crate::engine::Verdict::NotSplit => "not a complete intersection".to_string(),
        crate::engine::Verdict::OutsideHypotheses => "outside the hypotheses of the criterion".to_string(),
    };
    writeln!(s, "verdict: {verdict}").unwrap();
    if let Some(d) = &r.derived_action {
        writeln!(
            s,
            "derived action of A/({}): ranks {:?}, witnesses {}, H_0 free: {}",
            d.elements.join(", "),
            d.ranks,
            if d.verified { "verified" } else { "missing" },
            d.h0_free
        )
        .unwrap();
    }
    if r.ledger.is_empty() {
        writeln!(s, "checks: none").unwrap();
    } else {
        writeln!(s, "checks:").unwrap();
        for rec in &r.ledger {
            writeln!(s, "  [{}] {}: {}", if rec.passed { "ok" } else { "FAIL" }, rec.name, rec.detail).unwrap();
        }
    }
    for w in &r.warnings {
        writeln!(s, "warning: {w}").unwrap();
    }
    s
}

pub fn emit_koszul(r: &KoszulReport, format: Format) -> String {
    match format {
        Format::Machine => {
            let mut t = Tree::new();
            t.kv("report", "koszul");
            t.kv("prime", r.prime);
            t.list("generators", &r.generators, |t, g| t.text("element", g));
            t.kv("ranks", list_text(&r.ranks));
            t.list("homology", &r.homology, |t, h| t.text("module", h));
            t.kv("wedge_onto", r.wedge_onto);
            t.kv("defect_module_length", r.defect_module_length);
            t.kv("special_fiber_ci", r.special_fiber_ci);
            if let Some(s) = &r.derived_action {
                derived_tree(&mut t, s);
            }
            t.out
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "Koszul complex on {}: ranks {:?}", r.generators.join(", "), r.ranks).unwrap();
            for (i, h) in r.homology.iter().enumerate() {
                writeln!(s, "  H_{i} = {h}").unwrap();
            }
            writeln!(s, "top wedge of H_1 onto: {}", r.wedge_onto).unwrap();
            writeln!(s, "defect module length: {}", r.defect_module_length).unwrap();
            writeln!(s, "special fiber is a complete intersection: {}", r.special_fiber_ci).unwrap();
            if let Some(d) = &r.derived_action {
                writeln!(s, "derived action: ranks {:?}, verified {}, H_0 free {}", d.ranks, d.verified, d.h0_free).unwrap();
            }
            s
        }
    }
}

pub fn emit_search(r: &SearchReport, format: Format) -> String {
    let o = &r.observations;
    match format {
        Format::Machine => {
            let mut t = Tree::new();
            t.kv("report", "search");
            t.kv("seed", r.seed);
            t.kv("budget", r.budget);
            t.kv("checked", r.checked);
            t.kv("skipped", r.skipped);
            t.list("violations", &r.violations, |t, v| {
                t.kv("index", v.index);
                t.kv("kind", format!("{:?}", v.kind).to_lowercase());
                t.text("detail", &v.detail);
            });
            t.list("errors", &r.errors, |t, e| t.text("error", e));
            t.open("observations");
            t.kv("complexes", o.complexes);
            t.kv("witnesses_verified", o.witnesses_verified);
            t.kv("truncations_without_action", o.truncations_without_action);
            t.kv("within_bound", o.within_bound);
            t.kv("h0_free_within_bound", o.h0_free_within_bound);
            t.kv("h0_not_free_within_bound", o.h0_not_free_within_bound);
            t.kv("profiles_checked", o.profiles_checked);
            t.kv("profiles_matching", o.profiles_matching);
            t.close();
            t.out
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "seed {}, {} instances: {} checked, {} skipped (not flat or edim A < edim B)", r.seed, r.budget, r.checked, r.skipped).unwrap();
            writeln!(s, "violations: {}", r.violations.len()).unwrap();
            for v in &r.violations {
                writeln!(s, "  #{} {:?}: {}", v.index, v.kind, v.detail).unwrap();
            }
            for e in &r.errors {
                writeln!(s, "error: {e}").unwrap();
            }
            writeln!(s, "complexes with derived actions: {} of {}", o.witnesses_verified, o.complexes).unwrap();
            writeln!(
                s,
                "within n <= edim A - edim B: {} (H_0 free {}, not free {})",
                o.within_bound, o.h0_free_within_bound, o.h0_not_free_within_bound
            )
            .unwrap();
            writeln!(s, "rank profiles b*C(n,i): {} of {} minimal complexes", o.profiles_matching, o.profiles_checked).unwrap();
            s
        }
    }
}
