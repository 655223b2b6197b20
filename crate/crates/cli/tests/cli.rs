use std::process::Command as Proc;

use fplift::doc::{self, without_timing};
use fplift::{run, Command, DemoMode, Format, JobSpec, Outcome};
use serde_json::Value;

fn bin(args: &[&str]) -> (i32, String) {
    let out = Proc::new(env!("CARGO_BIN_EXE_fplift")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn rectify_spec(p: u64, k: u32, set: &[u64]) -> JobSpec {
    let mut s = JobSpec::new(Command::Rectify);
    (s.p, s.k, s.set) = (Some(p), Some(k), set.to_vec());
    s
}

fn verify_file(src: &str) -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("doc.txt");
    std::fs::write(&path, src).unwrap();
    let mut s = JobSpec::new(Command::Verify);
    s.input = Some(path);
    run(&s)
}

#[test]
fn rectify_golden() {
    let (code, out) = bin(&["rectify", "--p", "13", "--k", "2", "--set", "1,5"]);
    assert_eq!(code, 0);
    let d = doc::parse(&out).unwrap();
    assert_eq!(d["status"], "verified");
    assert_eq!(d["tower"]["levels"][0]["poly"], "g1^2 + 1");
    assert_eq!(d["tower"]["levels"][0]["anchor"], 5);
    assert_eq!(d["points"][1]["lift"], "g1");
    assert_eq!(d["anchors"], serde_json::json!([1, 5]));
    assert_eq!(d["flags"]["verified"], true);
    assert_eq!(d["flags"]["guaranteed"], false);
}

#[test]
fn require_guarantee_aborts_with_status_2() {
    let (code, out) = bin(&["rectify", "--p", "13", "--k", "2", "--set", "1,5", "--require-guarantee"]);
    assert_eq!(code, 2);
    assert_eq!(doc::parse(&out).unwrap()["status"], "bound-exceeded");
}

#[test]
fn mersenne_chain() {
    let (code, out) = bin(&["chain", "--target", "127", "--k", "2", "--special", "mersenne", "--format", "json"]);
    assert_eq!(code, 0);
    let d: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(d["chain"]["steps"], 7);
    assert_eq!(d["chain"]["lines"].as_array().unwrap().last().unwrap(), "127: x6 - 1");
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(bin(&["rectify", "--p", "13"]).0, 1);
    assert_eq!(bin(&["no-such-command"]).0, 1);
    assert_eq!(bin(&["demo", "--mode", "incidence", "--p", "13", "--points", "1:2:3", "--lines", "1:1:1"]).0, 1);
    assert_eq!(bin(&["--help"]).0, 0);
    // Composite modulus and a bad elimination order are rejected before running.
    assert_eq!(run(&rectify_spec(15, 2, &[1, 5])).code, 1);
    let mut s = rectify_spec(13, 2, &[1, 5]);
    s.order = Some(vec![1, 1]);
    assert_eq!(run(&s).code, 1);
    assert_eq!(run(&JobSpec::new(Command::Demo)).code, 1);
}

/// Every emitted document parses back to itself in both formats, the same
/// job gives the same document, and re-verification reproduces the recorded
/// verification block.
#[test]
fn rectify_documents_round_trip() {
    for (p, k, set) in [(13u64, 2u32, vec![1u64, 5]), (11, 2, vec![3]), (101, 2, vec![4]), (1031, 2, vec![2, 5]), (10007, 3, vec![17])] {
        let a = run(&rectify_spec(p, k, &set));
        let b = run(&rectify_spec(p, k, &set));
        assert_eq!(without_timing(&a.doc), without_timing(&b.doc));
        for fmt in [Format::Text, Format::Json] {
            let text = doc::render(&a.doc, fmt);
            assert_eq!(doc::parse(&text).unwrap(), a.doc, "{p} {set:?}");
            if a.code == 0 {
                let v = verify_file(&text);
                assert_eq!(v.code, 0, "{}", doc::render(&v.doc, Format::Text));
                assert_eq!(v.doc["verification"], a.doc["verification"]);
                assert_eq!(v.doc["flags"]["matches_recorded"], true);
            }
        }
    }
}

#[test]
fn tampered_documents_fail_verification() {
    let a = run(&rectify_spec(13, 2, &[1, 5]));
    let mut d = a.doc.clone();
    d["points"][1]["lift"] = "g1 + 13".into();
    // Still anchored at 5, but 1 + 2*(g1 + 13) etc. break relations.
    assert_eq!(verify_file(&doc::render(&d, Format::Text)).code, 3);
    let mut d = a.doc.clone();
    d["verification"]["checked"] = 41.into();
    let v = verify_file(&doc::render(&d, Format::Json));
    assert_eq!(v.code, 3);
    assert_eq!(v.doc["flags"]["verified"], true);
    assert_eq!(v.doc["flags"]["matches_recorded"], false);
    // A reducible defining polynomial is refused outright.
    let mut d = a.doc.clone();
    d["tower"]["levels"][0]["poly"] = "g1^2 - 1".into();
    assert_ne!(verify_file(&doc::render(&d, Format::Text)).code, 0);
}

#[test]
fn chain_documents_round_trip() {
    let mut c = JobSpec::new(Command::Chain);
    (c.target, c.k) = (Some("1000003".into()), Some(3));
    let mut adv = JobSpec::new(Command::Adversarial);
    (adv.p, adv.k) = (Some(8191), Some(3));
    for spec in [c, adv] {
        let out = run(&spec);
        assert_eq!(out.code, 0);
        let v = verify_file(&doc::render(&out.doc, Format::Text));
        assert_eq!(v.code, 0, "{}", doc::render(&v.doc, Format::Text));
    }
}

#[test]
fn resultants_and_subresultants() {
    let (code, out) = bin(&["resultant", "--f", "x1^2 + 1", "--g", "x1 - 5"]);
    assert_eq!(code, 0);
    assert_eq!(doc::parse(&out).unwrap()["resultant"], "26");
    let (code, out) = bin(&["resultant", "--f", "x1^2 + x2", "--g", "x1 - x2", "--var", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc::parse(&out).unwrap()["resultant"], "x2^2 + x2");
    let (code, out) = bin(&["subres", "--f", "x1^2 - 3*x1 + 2", "--g", "x1^2 - 4*x1 + 3"]);
    assert_eq!(code, 0);
    let d = doc::parse(&out).unwrap();
    assert_eq!(d["first_nonzero_principal"], 1);
    // S_1 = -(x1 - 1): a non-zero multiple of the gcd.
    assert_eq!(d["subresultants"][1]["poly"], "-x1 + 1");
    assert_eq!(d["subresultants"][0]["principal"], "0");
}

#[test]
fn demos() {
    let mut s = JobSpec::new(Command::Demo);
    (s.mode, s.n) = (Some(DemoMode::Lattice), Some(64));
    let d = run(&s);
    assert_eq!(d.code, 0);
    assert_eq!((d.doc["r"].clone(), d.doc["incidences"].clone()), (2.into(), 16.into()));

    let mut s = JobSpec::new(Command::Demo);
    (s.mode, s.p, s.set) = (Some(DemoMode::Sumproduct), Some(13), vec![1, 5]);
    let d = run(&s);
    assert_eq!(d.code, 0, "{}", doc::render(&d.doc, Format::Text));
    assert_eq!(d.doc["all_equal"], true);

    let mut s = JobSpec::new(Command::Demo);
    (s.mode, s.polys) = (Some(DemoMode::SparseSquare), vec!["x1^2 + x1 + 1".into()]);
    let d = run(&s);
    assert_eq!((d.doc["terms"].clone(), d.doc["square_terms"].clone()), (3.into(), 5.into()));

    let mut s = JobSpec::new(Command::Demo);
    (s.mode, s.count, s.seed) = (Some(DemoMode::Sweep), Some(4), 7);
    let a = run(&s);
    assert_eq!(a.code, 0);
    assert_eq!(without_timing(&a.doc), without_timing(&run(&s).doc));
}

#[test]
fn out_flag_writes_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (code, stdout) = bin(&["rectify", "--p", "13", "--k", "2", "--set", "1,5", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let d: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(d["status"], "verified");
    let (code, out) = bin(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
}
