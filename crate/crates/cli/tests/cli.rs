use std::path::PathBuf;

use wdefect_cli::{run, EXIT_HYPOTHESES, EXIT_INPUT, EXIT_OK};
use wdefect_core::problem::ProblemFile;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn catalog_file(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog").join(format!("{name}.prob")).display().to_string()
}

fn wdefect(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("wdefect").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn analyze_hypersurface() {
    let f = catalog_file("hyper_m3");
    let (code, out, _) = wdefect(&["analyze", "--format", "machine", &f]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\ndelta: 0\n"));
    assert!(out.contains("\nlength_psi: 3\n"));
    assert!(out.contains("\nverdict: complete-intersection-split\n"));
}

#[test]
fn corrupt_table_is_an_input_error() {
    let (code, out, err) = wdefect(&["analyze", &fixture("corrupt.prob")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.is_empty());
    assert!(err.contains("[ring]"), "{err}");
    assert!(err.contains("associative"), "{err}");
}

#[test]
fn input_errors() {
    for name in ["syntax.prob", "nonprime.prob", "missing.prob"] {
        let (code, _, err) = wdefect(&["analyze", &fixture(name)]);
        assert_eq!(code, EXIT_INPUT, "{name}: {err}");
    }
    let (_, _, err) = wdefect(&["analyze", &fixture("syntax.prob")]);
    assert!(err.contains("line 3"), "{err}");
    assert_eq!(wdefect(&["analyze"]).0, EXIT_INPUT);
    assert_eq!(wdefect(&["frobnicate"]).0, EXIT_INPUT);
}

#[test]
fn singular_point_is_outside_hypotheses() {
    let (code, _, err) = wdefect(&["analyze", &fixture("nonregular.prob")]);
    assert_eq!(code, EXIT_HYPOTHESES, "{err}");
}

#[test]
fn non_split_module() {
    let (code, out, _) = wdefect(&["analyze", "--format", "machine", &fixture("module.prob")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\nmu: 2\n"));
    assert!(out.contains("\ndelta: 1\n"));
    assert!(out.contains("\nci: true\n"));
    assert!(out.contains("\nsplit: false\n"));
}

#[test]
fn disabled_checks_leave_an_empty_ledger() {
    let (code, out, _) = wdefect(&["analyze", "--format", "machine", &fixture("no_checks.prob")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\nledger: []\n"), "{out}");
}

#[test]
fn machine_output_is_deterministic() {
    let files: Vec<String> = ["fiber3", "hyper_m1_lift", "hyper_codim2", "koszul_action"].iter().map(|n| catalog_file(n)).collect();
    let mut args = vec!["analyze", "--format", "machine"];
    args.extend(files.iter().map(String::as_str));
    let serial = wdefect(&args);
    args.extend(["--jobs", "4"]);
    let parallel = wdefect(&args);
    assert_eq!(serial.0, EXIT_OK);
    assert_eq!(serial, parallel);
    assert_eq!(serial, wdefect(&args));
}

#[test]
fn koszul_subcommand() {
    let (code, out, _) = wdefect(&["koszul", "--format", "machine", &catalog_file("fiber3")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("wedge_onto: false"), "{out}");
}

#[test]
fn small_search() {
    let (code, out, _) = wdefect(&["desmit", "--budget", "30", "--seed", "3", "--format", "machine"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("violations: []"), "{out}");
}

#[test]
fn catalog_subcommand() {
    let (code, out, _) = wdefect(&["catalog", "list"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), wdefect_cli::catalog::ENTRIES.len());
    let (code, out, _) = wdefect(&["catalog", "show", "fiber3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("kind = \"table\""));
    assert_eq!(wdefect(&["catalog", "run"]).0, EXIT_OK);
    assert_eq!(wdefect(&["catalog", "show", "nope"]).0, EXIT_INPUT);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = wdefect(&["selftest"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn parse_print_round_trip() {
    let mut files: Vec<String> = wdefect_cli::catalog::ENTRIES.iter().map(|e| catalog_file(e.name)).collect();
    files.extend(["corrupt.prob", "module.prob", "no_checks.prob", "nonprime.prob", "nonregular.prob"].map(fixture));
    for f in files {
        let text = std::fs::read_to_string(&f).unwrap();
        let parsed = ProblemFile::parse(&text).unwrap();
        let again = ProblemFile::parse(&parsed.print()).unwrap();
        assert_eq!(parsed, again, "{f}");
    }
}
