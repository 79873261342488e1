use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn rankwl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rankwl")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const C6: &str = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n";
const TWO_TRIANGLES: &str = "6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n";
const K5: &str = "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";

#[test]
fn iso_on_relabelled_paths() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "p3_a.el", "3 2\n0 1\n1 2\n");
    let b = write(&dir, "p3_b.el", "3 2\n0 2\n1 2\n");
    let out = rankwl(&["iso", path(&a), path(&b), "--dim", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "isomorphic");
}

#[test]
fn iso_reports_non_isomorphic_with_exit_one() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "c6.el", C6);
    let b = write(&dir, "twoc3.el", TWO_TRIANGLES);
    let out = rankwl(&["iso", path(&a), path(&b)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "non-isomorphic");
}

#[test]
fn pebble_hexagon_against_triangles() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "c6.el", C6);
    let b = write(&dir, "twoc3.el", TWO_TRIANGLES);
    let out = rankwl(&["pebble", path(&a), path(&b), "--pebbles", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "Spoiler");
    let out = rankwl(&["pebble", path(&a), path(&b), "--pebbles", "2"]);
    assert_eq!(stdout(&out).trim(), "Duplicator");
}

#[test]
fn rankwidth_of_k5_is_one() {
    let dir = TempDir::new().unwrap();
    let k5 = write(&dir, "k5.el", K5);
    let out = rankwl(&["rankwidth", path(&k5)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("1"));
    let witness = lines.next().unwrap();
    let leaves: Vec<usize> = witness
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().unwrap())
        .collect();
    let mut sorted = leaves.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, vec![0, 1, 2, 3, 4]);
}

#[test]
fn canon_is_deterministic_and_label_free() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.el", C6);
    let b = write(&dir, "b.g6", "E?~o\n");
    let first = stdout(&rankwl(&["canon", path(&a)]));
    assert_eq!(first, stdout(&rankwl(&["canon", path(&a)])));
    assert!(first.starts_with("n=6;colours=0,0,0,0,0,0;edges="));
    let relabelled = write(&dir, "c.el", "6 6\n0 3\n3 1\n1 5\n5 2\n2 4\n0 4\n");
    assert_eq!(first, stdout(&rankwl(&["canon", path(&relabelled)])));
    // graph6 input is accepted too
    assert_eq!(rankwl(&["canon", path(&b)]).status.code(), Some(0));
}

#[test]
fn wl_prints_a_histogram() {
    let dir = TempDir::new().unwrap();
    let p3 = write(&dir, "p3.el", "3 2\n0 1\n1 2\n");
    let out = rankwl(&["wl", path(&p3), "--dim", "1"]);
    assert_eq!(stdout(&out), "dimension 1, 1 rounds, 2 colours\n0 2\n1 1\n");
}

#[test]
fn cwexpr_evaluates_to_an_edge_list() {
    let dir = TempDir::new().unwrap();
    let e = write(&dir, "k2.cw", "(eta 1 2 (u (v 1) (v 2)))\n");
    let out = rankwl(&["cwexpr", path(&e)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("2 1\n0 1\n"), "{text}");
    assert!(text.trim_end().ends_with("# labels 1 2"), "{text}");
}

#[test]
fn splitpair_and_flipext() {
    let dir = TempDir::new().unwrap();
    let c6 = write(&dir, "c6.el", C6);
    let out = rankwl(&["splitpair", path(&c6), "--set", "0,1,2"]);
    assert_eq!(stdout(&out).trim(), "a=(0,2) b=(3,5)");
    let out = rankwl(&["flipext", path(&c6), "--set", "0,1,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("components: {0,1,2} {3,4,5}"), "{text}");
    assert!(text.trim_end().ends_with("respects cut: yes"), "{text}");
}

#[test]
fn usage_errors_exit_two_and_name_the_flag() {
    let dir = TempDir::new().unwrap();
    let c6 = write(&dir, "c6.el", C6);
    let out = rankwl(&["splitpair", path(&c6), "--set", "0,x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--set"));
    let out = rankwl(&["pebble", path(&c6), path(&c6)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--pebbles"));
    let bad = write(&dir, "bad.el", "3 1\n0 7\n");
    assert_eq!(rankwl(&["canon", path(&bad)]).status.code(), Some(2));
    assert_eq!(rankwl(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(rankwl(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn guard_violations_exit_three() {
    let dir = TempDir::new().unwrap();
    let c6 = write(&dir, "c6.el", C6);
    assert_eq!(rankwl(&["wl", path(&c6), "--dim", "12"]).status.code(), Some(3));
    let big = write(&dir, "e9.el", "9 0\n");
    assert_eq!(rankwl(&["pebble", path(&big), path(&big), "--pebbles", "2"]).status.code(), Some(3));
    let e17 = write(&dir, "e17.el", "17 0\n");
    assert_eq!(rankwl(&["rankwidth", path(&e17)]).status.code(), Some(3));
}

#[test]
fn verify_runs_a_suite() {
    let out = rankwl(&["verify", "widths", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("PASS criterion 8 [widths]"));
}
