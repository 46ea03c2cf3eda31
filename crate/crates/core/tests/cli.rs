use std::fs;
use std::path::PathBuf;

use mnv_core::cli::{dispatch, EXIT_CAP, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use mnv_core::io::{parse_betti, parse_complex, parse_family, parse_key_values, write_poset};
use mnv_core::poset::SimplicialComplex;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mnv").chain(args.iter().copied());
    let code = dispatch(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn homology_of_double_edge() {
    let (code, out, _) = run(&["homology", &fixture("double_edge.poset")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse_betti(&out).unwrap().get(1), 1);
}

#[test]
fn identity_violation_is_an_input_error() {
    let (code, out, err) = run(&["homology", &fixture("identity_violation.poset")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("cell 30"), "{err}");
}

#[test]
fn nerve_of_four_interval_unions_is_a_sphere() {
    let (code, out, _) = run(&["nerve", &fixture("four_interval_unions.family")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse_complex(&out).unwrap(), SimplicialComplex::simplex_boundary(4));
}

#[test]
fn multinerve_of_two_paths_is_a_double_edge() {
    let (code, out, _) = run(&["multinerve", &fixture("two_arcs.family")]);
    assert_eq!(code, EXIT_OK);
    let (code, betti, _) = run(&["homology", &write_to_temp(&out)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse_betti(&betti).unwrap().get(1), 1);
}

fn write_to_temp(text: &str) -> String {
    let dir = tempfile::tempdir().unwrap().keep();
    let path = dir.join("input.txt");
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn helly_bound_is_tight_on_interval_unions() {
    let (code, out, _) = run(&["verify", "helly", &fixture("four_interval_unions.family")]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (kv, checks) = parse_key_values(&out, "report v1").unwrap();
    assert_eq!(kv["h"], "4");
    assert_eq!(kv["r"], "2");
    assert_eq!(kv["margin.helly_bound"], "0");
    assert!(checks.iter().all(|c| c.ends_with("PASS")));
}

#[test]
fn projection_and_multinerve_reports_pass() {
    for name in ["two_arcs.family", "four_interval_unions.family", "intervals.family", "interval_union.family"] {
        let (code, out, err) = run(&["verify", "projection", &fixture(name), "--t", "2"]);
        assert_eq!(code, EXIT_OK, "{name}: {out}{err}");
        let (code, out, err) = run(&["verify", "multinerve", &fixture(name)]);
        assert_eq!(code, EXIT_OK, "{name}: {out}{err}");
    }
}

#[test]
fn failed_acyclicity_exits_with_one() {
    let ring = "family v1 subcomplex 1\ncomplex v1\n0 0\n1 1\n2 2\n3 0 1\n4 1 2\n5 0 2\nend\nmember 0 1 2 3 4 5\n";
    let path = write_to_temp(ring);
    let (code, out, _) = run(&["check-acyclic", &path]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(out.contains("status = FAIL"));
    let (code, _, _) = run(&["check-acyclic", &path, "--s", "3"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn cap_refusal_exits_with_three() {
    let twelve = SimplicialComplex::from_facets((0..12u32).map(|v| vec![v])).unwrap();
    let path = write_to_temp(&write_poset(&twelve.to_poset()));
    let (code, _, err) = run(&["leray", &path, "--cap", "10"]);
    assert_eq!(code, EXIT_CAP);
    assert!(err.contains("10"), "{err}");
    let (code, out, _) = run(&["leray", &path, "--sample", "50"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("mode = sampled"), "{out}");
    let (code, out, _) = run(&["j-index", &path]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("value = 1"), "{out}");
}

#[test]
fn zero_denominator_is_rejected() {
    let path = write_to_temp("family v1 box 1\nmember\nbox 1/0 2\n");
    let (code, _, err) = run(&["nerve", &path]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["leray"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["leray", "/nonexistent/file"]).0, EXIT_USAGE);
    assert_eq!(run(&["leray", &fixture("double_edge.poset"), "--cap", "3", "--sample", "4"]).0, EXIT_USAGE);
    assert_eq!(run(&["multinerve", &fixture("two_arcs.family"), "--t", "0"]).0, EXIT_USAGE);
}

#[test]
fn version_lists_formats() {
    let (code, out, _) = run(&["--version"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("mnv "));
    assert!(out.contains("family v1"));
}

#[test]
fn generated_families_parse_back() {
    let (code, out, _) = run(&["gen", "box", "--members", "3", "--dim", "2", "--seed", "7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse_family(&out).unwrap().len(), 3);
    let (code, again, _) = run(&["gen", "box", "--members", "3", "--dim", "2", "--seed", "7"]);
    assert_eq!((code, again), (EXIT_OK, out));
    let (code, out, _) = run(&["gen", "subcomplex", "--members", "2", "--grid", "3", "--rings"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(parse_family(&out).unwrap().len(), 2);
}

#[test]
fn output_flag_and_archive_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("nerve.txt");
    let (code, out, _) = run(&["nerve", &fixture("intervals.family"), "-o", out_path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    assert!(fs::read_to_string(&out_path).unwrap().starts_with("complex v1"));
    let archive = dir.path().join("archive");
    let (code, _, _) = run(&["verify", "helly", &fixture("intervals.family"), "--archive", archive.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(fs::read_dir(&archive).unwrap().count() > 0);
}

#[test]
fn j_candidates_directory_only_gets_gaps() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = run(&["j-index", &fixture("double_edge.poset"), "--candidates", dir.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains("candidate ="), "{out}");
}
