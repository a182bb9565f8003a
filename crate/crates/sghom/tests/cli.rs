//! End-to-end tests of the `sghom` binary: output formats, exit codes, and
//! file round trips.

use std::path::Path;
use std::process::{Command, Output};

fn sghom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sghom"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

const UNBALANCED_TRIANGLE: &str = "sg 3 3\n0 1 +\n0 2 -\n1 2 +\n";

#[test]
fn bounds_output() {
    let out = sghom(&["bounds", "--delta", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "lower 1.4142135624\nupper 18\n");
    let out = sghom(&["bounds", "--delta", "4"]);
    assert_eq!(stdout(&out), "lower 2.0000000000\nupper 74\n");
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.sg");
    write(&f, "sg 2 1\n0 2 +\n");
    let out = sghom(&["chi-s", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error:"));

    let out = sghom(&["bounds", "--delta", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_property_pass_and_fail() {
    let dir = tempfile::tempdir().unwrap();
    // All-positive K6 has empty negative neighborhoods, so t=3 fails.
    let mut text = String::from("sg 6 15\n");
    for u in 0..6 {
        for v in u + 1..6 {
            text.push_str(&format!("{u} {v} +\n"));
        }
    }
    let f = dir.path().join("k6.sg");
    write(&f, &text);
    let out = sghom(&["verify-property", "--t", "3", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("failed t=3 witness"));

    let g = dir.path().join("target.sg");
    let gen = sghom(&["gen-target", "--t", "2", "--seed", "0", "-o", g.to_str().unwrap()]);
    assert!(gen.status.success());
    for mode in [&["--full"][..], &["--parallel"][..], &[][..]] {
        let mut args = vec!["verify-property", "--t", "2", g.to_str().unwrap()];
        args.extend_from_slice(mode);
        let out = sghom(&args);
        assert_eq!(out.status.code(), Some(0), "{mode:?}");
        assert!(stdout(&out).starts_with("passed t=2"));
    }
}

#[test]
fn gen_target_verify_cert_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("t.sg");
    let c = dir.path().join("t.cert");
    let out = sghom(&[
        "gen-target", "--t", "3", "--order", "48", "--seed", "11",
        "-o", g.to_str().unwrap(), "--cert", c.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("order 48"));
    let out = sghom(&["verify-cert", c.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "valid\n");
}

#[test]
fn hom_search_and_verification() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("g.sg");
    let tgt = dir.path().join("h.sg");
    let hom = dir.path().join("g.hom");
    write(&src, UNBALANCED_TRIANGLE);
    write(&tgt, UNBALANCED_TRIANGLE);
    let out = sghom(&[
        "hom", src.to_str().unwrap(), tgt.to_str().unwrap(),
        "-o", hom.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = sghom(&[
        "verify-hom", src.to_str().unwrap(), tgt.to_str().unwrap(), hom.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "valid\n");

    // An unbalanced triangle has no homomorphism to a single positive edge.
    let k2 = dir.path().join("k2.sg");
    write(&k2, "sg 2 1\n0 1 +\n");
    let out = sghom(&["hom", src.to_str().unwrap(), k2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "no homomorphism\n");
}

#[test]
fn switch_equiv_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.sg");
    let b = dir.path().join("b.sg");
    let c = dir.path().join("c.sg");
    write(&a, UNBALANCED_TRIANGLE);
    // Switching the triangle at vertex 0 flips both incident edges.
    write(&b, "sg 3 3\n0 1 -\n0 2 +\n1 2 +\n");
    // The balanced triangle is not equivalent to the unbalanced one.
    write(&c, "sg 3 3\n0 1 +\n0 2 +\n1 2 +\n");
    let out = sghom(&["switch-equiv", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = sghom(&["switch-equiv", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "not equivalent\n");
}

#[test]
fn chromatic_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("tri.sg");
    write(&f, UNBALANCED_TRIANGLE);
    let out = sghom(&["chi-s", f.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("chi-s 3\n"));
    let out = sghom(&["chi-2", f.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("chi-2 3\n"));
    // A too-small cap reports exceedance with exit code 1.
    let out = sghom(&["chi-s", f.to_str().unwrap(), "--max-order", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "chi-s exceeds 2\n");
}

#[test]
fn random_graph_reproducible() {
    let a = sghom(&["random-graph", "--n", "12", "--delta", "3", "--seed", "4"]);
    let b = sghom(&["random-graph", "--n", "12", "--delta", "3", "--seed", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("# seed 4\nsg 12 "));
}

#[test]
fn pipeline_smoke() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g.sg");
    let gen = sghom(&[
        "random-graph", "--n", "14", "--delta", "3", "--seed", "2",
        "-o", f.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let out = sghom(&["pipeline", f.to_str().unwrap(), "--seed", "0"]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("target-order 48"));
    assert!(text.contains("verified true"));
}
