use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use goppa_fold::field::Field;
use goppa_fold::harness::{InstanceFile, ReportFile};
use goppa_fold::poly::Poly;
use goppa_fold::code::CodeKind;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_goppa-fold"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn goppa-fold")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen_to(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut all: Vec<&str> = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path_str(&path)]);
    let out = run(&all);
    assert_eq!(code(&out), 0, "gen failed: {}", String::from_utf8_lossy(&out.stderr));
    path
}

fn report(path: &Path) -> ReportFile {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Index of a primitive cube root of unity in GF(16) under the default modulus.
fn omega16() -> u32 {
    let f = Field::new(2, 4, None).unwrap();
    f.element_of_order(3).unwrap().index()
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let group = format!("qc:{},0", omega16());
    let args = ["--field", "2:4", "--group", &group, "--degree", "4", "--d", "1", "--seed", "11"];
    let a = gen_to(&dir, "a.toml", &args);
    let b = gen_to(&dir, "b.toml", &args);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn dependent_shifts_are_an_error() {
    let out = run(&["gen", "--field", "2:4", "--group", "qm:1,1", "--degree", "2"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("independent"));
}

#[test]
fn bad_field_is_an_error() {
    let out = run(&["gen", "--field", "4:2", "--group", "qm:1", "--degree", "2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn qc_every_d_folds() {
    let dir = TempDir::new().unwrap();
    let group = format!("qc:{},0", omega16());
    for d in 0..3 {
        let ds = d.to_string();
        let inst = gen_to(
            &dir,
            &format!("qc{d}.toml"),
            &["--field", "2:4", "--group", &group, "--degree", "5", "--d", &ds, "--blocks", "4", "--seed", "5"],
        );
        let rep = dir.path().join(format!("qc{d}.json"));
        let out = run(&["fold", path_str(&inst), "--out", path_str(&rep)]);
        assert_eq!(code(&out), 0);
        let r = report(&rep);
        assert!(r.entries[0].verdict);
        assert_eq!(r.entries[0].d, d);
        assert_eq!(r.entries[0].n_folded * 3, r.entries[0].n);
    }
}

#[test]
fn qd_goppa_fold_and_folded_instance() {
    let dir = TempDir::new().unwrap();
    let inst = gen_to(&dir, "qd.toml", &["--field", "2:6", "--group", "qm:1,2", "--kind", "goppa", "--degree", "2", "--blocks", "6", "--seed", "9"]);
    let rep = dir.path().join("r.json");
    let folded = dir.path().join("f.toml");
    let csv = dir.path().join("r.csv");
    let out = run(&["fold", path_str(&inst), "--out", path_str(&rep), "--folded", path_str(&folded), "--csv", path_str(&csv)]);
    assert_eq!(code(&out), 0);
    let r = report(&rep);
    let e = &r.entries[0];
    assert!(e.verdict);
    assert_eq!(e.degree, 8);
    assert_eq!(e.folded_degree, 2);
    assert_eq!(e.n, 24);
    assert_eq!(e.n_folded, 6);
    let f = InstanceFile::load(&folded).unwrap();
    assert_eq!(f.code.len(), 6);
    assert!(std::fs::read_to_string(&csv).unwrap().lines().count() >= 2);

    let out = run(&["verify", path_str(&inst), "--claimed", path_str(&folded)]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: true"));
}

#[test]
fn corrupted_claim_is_rejected() {
    let dir = TempDir::new().unwrap();
    let inst = gen_to(&dir, "qd.toml", &["--field", "2:6", "--group", "qm:1,2", "--kind", "goppa", "--degree", "2", "--blocks", "16", "--seed", "9"]);
    let folded = dir.path().join("f.toml");
    assert_eq!(code(&run(&["fold", path_str(&inst), "--out", path_str(&dir.path().join("r.json")), "--folded", path_str(&folded)])), 0);

    let mut claim = InstanceFile::load(&folded).unwrap();
    if let CodeKind::Goppa { polynomial } = &claim.code.kind {
        let mut c = polynomial.coeffs().to_vec();
        c[0] = goppa_fold::field::Elem(c[0].index() ^ 1);
        claim.code.kind = CodeKind::Goppa { polynomial: Poly::new(c) };
    } else {
        panic!("expected a Goppa claim");
    }
    let bad = dir.path().join("bad.toml");
    claim.save(&bad).unwrap();
    let out = run(&["verify", path_str(&inst), "--claimed", path_str(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("verdict: false"));
}

#[test]
fn broken_input_symmetry_is_reported() {
    let dir = TempDir::new().unwrap();
    let group = format!("qc:{},0", omega16());
    let inst = gen_to(&dir, "qc.toml", &["--field", "2:4", "--group", &group, "--degree", "4", "--d", "0", "--blocks", "4", "--seed", "2"]);
    let mut f = InstanceFile::load(&inst).unwrap();
    if let CodeKind::Alternant { multiplier, .. } = &mut f.code.kind {
        let v = multiplier[1].index();
        multiplier[1] = goppa_fold::field::Elem(if v == 1 { 2 } else { 1 });
    }
    f.save(&inst).unwrap();
    let out = run(&["verify", path_str(&inst)]);
    assert_ne!(code(&out), 0);
}

#[test]
fn small_degree_translation_folds_to_zero_degree() {
    let dir = TempDir::new().unwrap();
    // a = 1, t < p: the predicted dual is the zero code
    let inst = gen_to(&dir, "qc.toml", &["--field", "3:4", "--group", "qc:1,5", "--degree", "2", "--blocks", "6", "--seed", "4"]);
    let rep = dir.path().join("r.json");
    assert_eq!(code(&run(&["fold", path_str(&inst), "--out", path_str(&rep)])), 0);
    let r = report(&rep);
    let e = &r.entries[0];
    assert_eq!(e.folded_degree, 0);
    assert_eq!(e.k_folded, e.n_folded);
    assert!(e.verdict);
}

#[test]
fn empty_grid_sweep() {
    let dir = TempDir::new().unwrap();
    let grid = dir.path().join("g.toml");
    std::fs::write(&grid, "seed = 3\n").unwrap();
    let rep = dir.path().join("r.json");
    let out = run(&["sweep", "--grid", path_str(&grid), "--out", path_str(&rep)]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&rep).summary.total, 0);
}

#[test]
fn sweep_is_independent_of_job_count() {
    let dir = TempDir::new().unwrap();
    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    assert_eq!(code(&run(&["sweep", "--jobs", "1", "--seed", "7", "--out", path_str(&r1)])), 0);
    assert_eq!(code(&run(&["sweep", "--jobs", "2", "--seed", "7", "--out", path_str(&r2)])), 0);
    assert_eq!(std::fs::read(r1).unwrap(), std::fs::read(r2).unwrap());
}

// Codes with a nontrivial folded dual, where every corruption is visible.
const GRID: &str = r#"
seed = 21

[[entry]]
field = "2:8"
family = "qc"
kind = "alternant"
orders = [3, 5]
degrees = [3, 6]
blocks = 16
trials = 3

[[entry]]
field = "2:8"
family = "qm"
kind = "alternant"
lambda = [1, 2]
degrees = [3, 10]
blocks = 16
trials = 4
"#;

#[test]
fn sweep_corruption_is_flagged() {
    let dir = TempDir::new().unwrap();
    let rep = dir.path().join("r.json");
    let grid = dir.path().join("g.toml");
    std::fs::write(&grid, GRID).unwrap();
    let out = run(&["sweep", "--grid", path_str(&grid), "--corrupt", "0.1", "--out", path_str(&rep)]);
    let r = report(&rep);
    let s = &r.summary;
    assert!(s.total >= 150, "total {}", s.total);
    assert_eq!(s.errors, 0);
    let rate = s.failed as f64 / s.total as f64;
    assert!((0.05..0.16).contains(&rate), "{} false verdicts of {}", s.failed, s.total);
    assert_eq!(s.injected, s.injected_flagged);
    assert_eq!(s.failed, s.injected_flagged);
    assert_eq!(code(&out), 1);
}

#[test]
fn keysize_lines() {
    let out = run(&["keysize", "--n", "64", "--k", "32", "--group-order", "4"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[64, 32]"));
    assert!(text.contains("[16, 8]"));
    assert!(text.contains("factor 4"));
}
