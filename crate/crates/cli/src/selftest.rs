//! Built-in suites run by `wdefect selftest`. Each returns a list of failures.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wdefect_core::engine::{analyze, oracle_recompute, AnalyzeOptions};
use wdefect_core::problem::Problem;
use wdefect_core::search::{desmit_search, SearchConfig};
use wdefect_core::smith::{smith_normal_form, OMatrix};
use wdefect_core::Dvr;

use crate::catalog;

/// Every catalog entry must reproduce its hand-derived invariants, agree
/// with the oracle and pass its own ledger.
pub fn catalog_suite() -> Vec<String> {
    let opts = AnalyzeOptions::default();
    let mut failures = Vec::new();
    for e in catalog::ENTRIES {
        let problem = match Problem::parse(e.text) {
            Ok(p) => p,
            Err(err) => {
                failures.push(format!("{}: {err}", e.name));
                continue;
            }
        };
        let report = match analyze(&problem, &opts) {
            Ok(r) => r,
            Err(err) => {
                failures.push(format!("{}: {err}", e.name));
                continue;
            }
        };
        let inv = report.invariants();
        let got = catalog::Expected {
            length_psi: inv.length_psi,
            length_cotangent_tors: inv.length_cotangent_tors,
            delta: inv.delta,
            ci: inv.ci_flag,
        };
        if got != e.expected {
            failures.push(format!("{}: expected {:?}, got {:?}", e.name, e.expected, got));
        }
        if report.has_inconsistency() {
            failures.push(format!("{}: ledger has a failed check", e.name));
        }
        match oracle_recompute(&problem, &opts) {
            Ok(o) if o == inv => {}
            Ok(o) => failures.push(format!("{}: oracle disagrees: {o:?} vs {inv:?}", e.name)),
            Err(err) => failures.push(format!("{}: oracle: {err}", e.name)),
        }
    }
    failures
}

fn random_unit(rng: &mut impl Rng, p: u64) -> BigRational {
    loop {
        let n: i64 = rng.gen_range(-9..=9);
        let d: i64 = rng.gen_range(1..=9);
        if n % p as i64 != 0 && d % p as i64 != 0 {
            return BigRational::new(n.into(), d.into());
        }
    }
}

/// A random matrix over `O` whose nonzero entries have valuation at most `max_val`.
pub fn random_o_matrix(rng: &mut impl Rng, p: u64, rows: usize, cols: usize, max_val: u32) -> OMatrix {
    let mut m = OMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(0.2) {
                continue;
            }
            let v = rng.gen_range(0..=max_val);
            m[(i, j)] = random_unit(rng, p) * BigRational::from_integer(BigInt::from(p).pow(v));
        }
    }
    m
}

/// Checks `u a v = s`, the inverses, the diagonal shape and the divisor chain.
pub fn check_smith(o: &Dvr, a: &OMatrix) -> Result<(), String> {
    let f = smith_normal_form(o, a);
    let (rows, cols) = a.shape();
    if f.u.mul_mat(a).mul_mat(&f.v) != f.s {
        return Err("u*a*v != s".into());
    }
    if f.u.mul_mat(&f.u_inv) != OMatrix::identity(rows) || f.v.mul_mat(&f.v_inv) != OMatrix::identity(cols) {
        return Err("transform inverses are wrong".into());
    }
    for m in [&f.u, &f.u_inv, &f.v, &f.v_inv] {
        if m.entries().any(|x| !o.is_integral(x)) {
            return Err("transform leaves O".into());
        }
    }
    if f.divisors.windows(2).any(|w| w[0] > w[1]) {
        return Err(format!("divisors not monotone: {:?}", f.divisors));
    }
    for i in 0..rows {
        for j in 0..cols {
            let want = if i == j && i < f.rank() {
                BigRational::from_integer(BigInt::from(o.p()).pow(f.divisors[i] as u32))
            } else {
                BigRational::zero()
            };
            if f.s[(i, j)] != want {
                return Err(format!("s[{i},{j}] = {}", f.s[(i, j)]));
            }
        }
    }
    Ok(())
}

pub fn smith_suite(seed: u64, count: usize, max_dim: usize, max_val: u32) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for k in 0..count {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let o = Dvr::new(p).expect("small primes");
        let rows = rng.gen_range(1..=max_dim);
        let cols = rng.gen_range(1..=max_dim);
        let a = random_o_matrix(&mut rng, p, rows, cols, max_val);
        if let Err(e) = check_smith(&o, &a) {
            failures.push(format!("matrix {k} ({rows}x{cols}, p = {p}): {e}"));
        }
    }
    failures
}

/// Text of a local hypersurface `O[x]/(x g(x))` at `x = 0`, where
/// `g = x^(d-1) + p h(x)` has `g(0)` of valuation `k`. Both lengths equal `k`.
pub fn hypersurface_text(rng: &mut impl Rng, p: u64) -> (String, u64) {
    let d = rng.gen_range(2..=3u32);
    let k = rng.gen_range(1..=3u32);
    let pk = (p as i64).pow(k);
    let unit = loop {
        let u: i64 = rng.gen_range(1..=4);
        if u % p as i64 != 0 {
            break u;
        }
    };
    // coefficients of x g(x) by degree; the constant of g lands on x
    let mut coeffs = vec![0i64; d as usize + 1];
    coeffs[d as usize] = 1;
    coeffs[1] = unit * pk;
    for c in coeffs.iter_mut().take(d as usize).skip(2) {
        *c = p as i64 * rng.gen_range(-2..=2);
    }
    let mut body = format!("x^{d}");
    for e in (1..d as usize).rev() {
        let c = coeffs[e];
        if c != 0 {
            let sign = if c < 0 { '-' } else { '+' };
            body.push_str(&format!(" {sign} {}*x^{e}", c.abs()));
        }
    }
    let text = format!(
        "[dvr]\nprime = {p}\n\n[ring]\nkind = \"poly\"\nvariables = [\"x\"]\nrelations = [\"{body}\"]\n\n[point]\nvalues = [0]\n"
    );
    (text, k as u64)
}

pub fn hypersurface_suite(seed: u64, count: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = AnalyzeOptions::default();
    let mut failures = Vec::new();
    for i in 0..count {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let (text, k) = hypersurface_text(&mut rng, p);
        let outcome = Problem::parse(&text).and_then(|pr| Ok((analyze(&pr, &opts)?, oracle_recompute(&pr, &opts)?)));
        match outcome {
            Ok((r, o)) => {
                let inv = r.invariants();
                if inv.length_psi != k || inv.length_cotangent_tors != k || inv.delta != 0 || !inv.ci_flag {
                    failures.push(format!("hypersurface {i}: expected lengths {k} and delta 0, got {inv:?}\n{text}"));
                }
                if o != inv {
                    failures.push(format!("hypersurface {i}: oracle disagrees\n{text}"));
                }
                if r.has_inconsistency() {
                    failures.push(format!("hypersurface {i}: ledger has a failed check\n{text}"));
                }
            }
            Err(e) => failures.push(format!("hypersurface {i}: {e}\n{text}")),
        }
    }
    failures
}

pub fn search_suite(budget: u64, jobs: usize) -> Vec<String> {
    match desmit_search(&SearchConfig::default(), budget, 7, jobs) {
        Ok(r) => {
            let mut f: Vec<String> = r.violations.iter().map(|v| format!("violation at {}: {}", v.index, v.detail)).collect();
            f.extend(r.errors.iter().map(|e| format!("search error: {e}")));
            if r.observations.profiles_matching != r.observations.profiles_checked {
                f.push("rank profile mismatch".into());
            }
            f
        }
        Err(e) => vec![format!("search: {e}")],
    }
}

pub fn run(jobs: usize, out: &mut dyn Write) -> i32 {
    let suites: [(&str, Box<dyn Fn() -> Vec<String>>); 4] = [
        ("catalog", Box::new(catalog_suite)),
        ("smith", Box::new(|| smith_suite(1, 100, 8, 4))),
        ("hypersurfaces", Box::new(|| hypersurface_suite(2, 20))),
        ("search", Box::new(move || search_suite(100, jobs))),
    ];
    let mut code = crate::EXIT_OK;
    for (name, suite) in suites.iter() {
        let failures = suite();
        if failures.is_empty() {
            let _ = writeln!(out, "{name}: ok");
        } else {
            let _ = writeln!(out, "{name}: {} failure(s)", failures.len());
            for f in &failures {
                let _ = writeln!(out, "  {f}");
            }
            code = crate::EXIT_INTERNAL;
        }
    }
    code
}
