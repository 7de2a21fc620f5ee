use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use smallcover::io::{load_charmap, load_polytope, load_report};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smallcover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_matches_fixture() {
    let out = run(&["gen", "dual-cyclic", "--dim", "4", "--facets", "15"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), std::fs::read_to_string(fixture("dual_cyclic_4_15.json")).unwrap());

    let out = run(&["gen", "segment"]);
    assert_eq!(stdout(&out), std::fs::read_to_string(fixture("segment.json")).unwrap());

    let pentagon = fixture("pentagon.json");
    let segment = fixture("segment.json");
    let out = run(&["gen", "product", p(&pentagon), p(&segment)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), std::fs::read_to_string(fixture("pentagonal_prism.json")).unwrap());

    let out = run(&["gen", "dual-cyclic", "--dim", "4", "--facets", "4"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn decorate_matches_fixture() {
    let poly = fixture("dual_cyclic_4_15.json");
    let out = run(&["decorate", p(&poly), "--preset", "paper-example"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), std::fs::read_to_string(fixture("example_map.json")).unwrap());
    let out = run(&["decorate", p(&poly), "--preset", "odd-bijection"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn check_reports_findings() {
    let poly = fixture("dual_cyclic_4_15.json");
    let map = fixture("example_map.json");
    let out = run(&["check", p(&poly), p(&map)]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("31 bad faces"), "{}", stdout(&out));
    assert!(stdout(&out).contains("F3∩F6∩F7"));

    let out = run(&["check", p(&fixture("main-polytope.json")), p(&fixture("main-map.json"))]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("0 bad faces"));

    let out = run(&["check", p(&poly), p(&fixture("invalid_zero_vector.json")), "--format", "json"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("vectors[4]"));
}

#[test]
fn resolve_writes_fixture_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (op, om, ot) = (dir.path().join("p.json"), dir.path().join("m.json"), dir.path().join("t.json"));
    let out = run(&[
        "resolve",
        p(&fixture("dual_cyclic_4_15.json")),
        p(&fixture("example_map.json")),
        "-o",
        p(&op),
        p(&om),
        "--trace",
        p(&ot),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for (written, expected) in [(&op, "main-polytope.json"), (&om, "main-map.json"), (&ot, "main-trace.json")] {
        assert_eq!(
            std::fs::read(written).unwrap(),
            std::fs::read(fixture(expected)).unwrap(),
            "{expected}"
        );
    }
    load_polytope(&op).unwrap();
    load_charmap(&om).unwrap();
    load_report(&ot).unwrap();

    let out = run(&[
        "resolve",
        p(&fixture("dual_cyclic_4_15.json")),
        p(&fixture("example_map.json")),
        "-o",
        p(&op),
        p(&om),
        "--budget",
        "3",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn fvector_and_lift_check() {
    let out = run(&["fvector", p(&fixture("main-polytope.json")), "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "{\"f_vector\":[197,394,243,46],\"euler_sum\":0,\"euler_expected\":0}\n");

    let out = run(&["lift-check", p(&fixture("main-polytope.json")), p(&fixture("main-map.json"))]);
    assert!(matches!(code(&out), 0 | 2));
    assert!(stdout(&out).contains("all odd: true"));
}

#[test]
fn chromatic_is_exact() {
    let out = run(&[
        "chromatic",
        p(&fixture("main-polytope.json")),
        "--hint",
        p(&fixture("main-map.json")),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("chi = 15 (exact)"), "{}", stdout(&out));

    let out = run(&["chromatic", p(&fixture("pentagon.json")), "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("\"chi\":3"));
}

#[test]
fn reproduce_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("summary.json");
    let out = run(&["reproduce", "main2", "-o", p(&summary), "--artifacts", p(dir.path())]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("chi = 8"));
    assert!(summary.exists());
    load_polytope(&dir.path().join("main2-polytope.json")).unwrap();
    load_charmap(&dir.path().join("main2-map.json")).unwrap();
    load_report(&dir.path().join("main2-trace.json")).unwrap();

    // the worked decoration has one more bad edge than its printed list
    let out = run(&["reproduce", "main"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("bad edges: 14, bad vertices: 17"));

    assert_eq!(code(&run(&["reproduce", "main4"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}
