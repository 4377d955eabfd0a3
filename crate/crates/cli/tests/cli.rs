mod common;

use common::{golden_dir, lineact, run_case, scratch, CASES};

#[test]
fn golden_fixtures_match() {
    for (i, case) in CASES.iter().enumerate() {
        let out = scratch(&format!("golden-{i}"));
        let produced = run_case(case, &out).unwrap();
        for (name, bytes) in case.outputs.iter().zip(produced) {
            let expected = std::fs::read(golden_dir().join(name)).unwrap();
            assert!(bytes == expected, "{} differs from golden {name}", case.name);
        }
    }
}

#[test]
fn realize_single_row() {
    let out = lineact(&["realize", "--spec", "z_natural.txt", "--n", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("row")).count(), 1);
}

#[test]
fn malformed_spec_is_an_input_error() {
    let out = lineact(&["realize", "--spec", "identity.json", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = lineact(&["realize", "--spec", "missing-file.txt", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn inconsistent_transcript_exits_with_three() {
    let dir = scratch("inconsistent");
    let spec = dir.join("spec.txt");
    std::fs::write(
        &spec,
        "lineact-preorder v1\nkind transcript\nlineact-transcript v1\ngenerators a\nnormalizer abelian\n\
         word 0 e\nword 1 a\nword 2 a^-1\n\
         cmp 0 0 =\ncmp 0 1 <\ncmp 0 2 >\ncmp 1 0 >\ncmp 1 1 =\ncmp 1 2 <\ncmp 2 0 <\ncmp 2 1 >\ncmp 2 2 =\nend\n",
    )
    .unwrap();
    let out = lineact(&["realize", "--spec", spec.to_str().unwrap(), "--n", "3"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn conrad_on_affine_model_reports_non_invariance() {
    let dir = scratch("conrad");
    let rep = dir.join("bs.txt");
    let out = lineact(&["family", "bs", "--m", "2", "--n", "3", "--output", rep.to_str().unwrap()]);
    assert!(out.status.success());
    let out = lineact(&["analyze", "conrad", "--rep", rep.to_str().unwrap(), "--word", "a"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("generator a"));
    let out = lineact(&["analyze", "conrad", "--rep", rep.to_str().unwrap(), "--word", "b^3"]);
    assert_eq!(out.status.code(), Some(3));
    let out = lineact(&["analyze", "scaling", "--rep", rep.to_str().unwrap(), "--word", "a^2 b", "--format", "json"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"9/4\""));
}

#[test]
fn semiconjugacy_between_shifted_family_members() {
    let dir = scratch("semiconj");
    let a = dir.join("a.txt");
    let b = dir.join("b.txt");
    let ok = |args: &[&str]| assert!(lineact(args).status.success());
    ok(&["family", "f2", "--omega", "+", "--output", a.to_str().unwrap()]);
    ok(&["family", "f2", "--omega", "-+", "--output", b.to_str().unwrap()]);
    let out = lineact(&[
        "analyze", "semiconj", "--rep", a.to_str().unwrap(), "--other", b.to_str().unwrap(), "--depth", "3",
        "--basepoints", "1/4,1/4", "--window", "-6,6",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("VIOLATION"));
    let out = lineact(&[
        "analyze", "semiconj", "--rep", a.to_str().unwrap(), "--other", a.to_str().unwrap(), "--depth", "3",
        "--basepoints", "1/4,1/4",
    ]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS"));
}

#[test]
fn suspension_demo_edge_cases() {
    let out = lineact(&["suspension", "demo", "--max-n", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip_while(|l| *l != "n t distance").skip(1).take_while(|l| !l.starts_with("threshold")).collect();
    assert_eq!(rows.len(), 1);
    let out = lineact(&["suspension", "demo", "--window", "-20,20", "--max-n", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stdout).contains("threshold not reached in range"));
    let out = lineact(&["suspension", "demo", "--base", "1(0)", "--max-n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn brin_navas_irreducible_check_on_base_interval() {
    let out = lineact(&["analyze", "irreducible", "--rep", "brin_navas_rep.txt", "--interval", "-1,1", "--depth", "2"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("not wandering"));
}

#[test]
fn empty_plot_spec_is_rejected() {
    let dir = scratch("plot-empty");
    let spec = dir.join("empty.json");
    std::fs::write(&spec, r#"{"window": "0,1", "items": []}"#).unwrap();
    let out = lineact(&["plot", "--spec", spec.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
