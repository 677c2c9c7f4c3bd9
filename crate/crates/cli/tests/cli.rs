use std::process::{Command, Output};

use hslocal::engine::HomologyReport;
use hslocal::simplicial::load_complex;
use hslocal::theorem::{Stabilization, Theorem1Report};
use hslocal::verify::Ledger;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hslocal")).args(args).env_remove("HSLOCAL_BASIS_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    format!("{}/../../data/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn simplicial_homology_of_the_hexagon_file() {
    let o = run(&["homology", "--complex", &data("hexagon"), "--family", "simplicial", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<HomologyReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports[0].betti[..2], [1, 1]);
}

#[test]
fn local_reduced_homology_on_the_raw_hexagon() {
    let args = ["homology", "--complex", "hexagon", "--family", "hochschild-reduced", "--max-degree", "2", "-M", "1"];
    let at = |local: &str| {
        let mut a = args.to_vec();
        a.extend(["--local", local, "--format", "json"]);
        let o = run(&a);
        assert_eq!(o.status.code(), Some(0));
        serde_json::from_str::<Vec<HomologyReport>>(&stdout(&o)).unwrap()[0].betti.clone()
    };
    assert_eq!(at("N=0"), [1, 1, 0]);
    // Six edges at distance ≤ 1 fill in to an octahedral sphere.
    assert_eq!(at("N=1"), [1, 0, 1]);
    assert_eq!(at("none"), [1, 0, 0]);
}

#[test]
fn missing_file_exits_with_two() {
    let o = run(&["homology", "--complex", "/nonexistent/complex.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no such file"));
}

#[test]
fn invalid_flags_exit_with_two() {
    assert_eq!(run(&["homology", "--complex", "hexagon", "--local", "N=x"]).status.code(), Some(2));
    assert_eq!(run(&["homology", "--complex", "hexagon", "-M", "0"]).status.code(), Some(2));
}

#[test]
fn basis_cap_exhaustion_exits_with_three() {
    let o = run(&["homology", "--complex", "octahedron", "--family", "full", "--basis-cap", "100"]);
    assert_eq!(o.status.code(), Some(3));
    let env = Command::new(env!("CARGO_BIN_EXE_hslocal"))
        .args(["homology", "--complex", "octahedron", "--family", "full"])
        .env("HSLOCAL_BASIS_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = ["homology", "--complex", "hexagon", "--family", "reduced,as,symbol-i", "--local", "N=1", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let v = ["verify", "--trials", "3", "--complex", "hexagon", "--format", "json"];
    assert_eq!(run(&v).stdout, run(&v).stdout);
}

#[test]
fn verify_with_zero_trials_is_an_empty_pass() {
    let o = run(&["verify", "--trials", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let ledgers: Vec<Ledger> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(ledgers.iter().all(|l| l.cases.is_empty()));
}

#[test]
fn verify_passes_and_mutations_fail() {
    let ok = run(&["verify", "--trials", "5", "--seed", "1", "--field", "complex"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("PASS"));
    for m in ["theta-sign-flip", "s-insert-before", "b-without-cyclic-face", "first-gap-off-by-one", "s-tilde-short-sum"] {
        let o = run(&["verify", "--trials", "20", "--complex", "hexagon", "--mutate", m, "--format", "json"]);
        assert_eq!(o.status.code(), Some(1), "{m}");
        let ledgers: Vec<Ledger> = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(ledgers[0].cases.iter().any(|c| c.counterexample.is_some()), "{m}");
    }
}

#[test]
fn theorem1_on_the_hexagon_passes() {
    let o = run(&["theorem1", "--complex", "hexagon", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Theorem1Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.pass);
    assert!(r.columns.iter().all(|c| c.betti == [1, 1, 0]));
    assert_eq!(r.nonlocal_reduced, [1, 0, 0]);
    let table = run(&["theorem1", "--complex", "hexagon"]);
    assert!(stdout(&table).trim_end().ends_with("PASS"));
}

#[test]
fn theorem1_with_one_huge_level_fails_with_a_warning() {
    let o = run(&["theorem1", "--complex", "hexagon", "--eps-ladder", "100"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("not tubular"));
    assert!(text.trim_end().ends_with("FAIL"));
}

#[test]
fn theorem1_without_stabilization_exits_with_four() {
    let o = run(&["theorem1", "--complex", "hexagon", "--eps-subdivisions", "1", "--eps-ladder", "1/1000000,1/2"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn quotient_mode_reports_levels() {
    let o = run(&["homology", "--complex", "hexagon", "--subdivisions", "2", "--eps-from-edges", "3/2,2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let st: Stabilization = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(st.levels.len(), 2);
}

#[test]
fn subdivide_writes_a_loadable_complex() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hex1.json");
    let o = run(&["subdivide", "--complex", &data("hexagon"), "--times", "1", "-o", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let x = load_complex(&path).unwrap();
    assert_eq!(x.num_simplices(), 12);
    let o = run(&["homology", "--complex", path.to_str().unwrap(), "--family", "simplicial", "--format", "json"]);
    let reports: Vec<HomologyReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports[0].betti[..2], [1, 1]);
}
