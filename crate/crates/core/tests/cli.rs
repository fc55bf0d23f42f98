use std::fs;
use std::path::Path;

use frobnc::cli::{run, EXIT_BUDGET, EXIT_INPUT, EXIT_OK};
use serde_json::Value;

fn frobnc(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["frobnc"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Compares with `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = Path::new("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
        return;
    }
    let want = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, want, "output differs from {}", path.display());
}

fn json_roundtrip(text: &str) -> Value {
    let v: Value = serde_json::from_str(text).unwrap();
    assert_eq!(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()), text);
    v
}

#[test]
fn check_hermitian_cubic() {
    let (code, out, _) = frobnc(&["check", "tests/fixtures/hermitian_cubic.poly", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v = json_roundtrip(&out);
    let r = &v["results"][0];
    assert_eq!(r["classification"][0]["nonclassical"], true);
    assert_eq!(r["classification"][0]["kind"], "scalar_power");
    assert_eq!(r["classification"][0]["e"], 2);
    assert_eq!(r["smoothness"]["smooth"], true);
    assert_eq!(r["points"]["counts"][0]["count"], 9);
    golden("check_hermitian_cubic.json", &out);
}

#[test]
fn check_dgz() {
    let (code, out, _) = frobnc(&["check", "tests/fixtures/dgz.poly", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v = json_roundtrip(&out);
    let r = &v["results"][0];
    assert_eq!(r["classification"][0]["kind"], "zero");
    assert_eq!(r["smoothness"]["smooth"], true);
    assert_eq!(r["points"]["counts"][0]["count"], 0);
    assert_eq!(r["separated_variables"], Value::Null);
    golden("check_dgz.json", &out);
}

#[test]
fn check_classical_cubic() {
    let (code, out, _) = frobnc(&["check", "tests/fixtures/classical_cubic.poly", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v = json_roundtrip(&out);
    assert_eq!(v["results"][0]["classification"][0]["nonclassical"], false);
    golden("check_classical_cubic.json", &out);
}

#[test]
fn text_output_matches_json_data() {
    let (_, json, _) = frobnc(&["check", "tests/fixtures/dgz.poly", "--json"]);
    let (_, text, _) = frobnc(&["check", "tests/fixtures/dgz.poly"]);
    let v: Value = serde_json::from_str(&json).unwrap();
    assert_eq!(text, frobnc::cli::to_text(&v));
}

#[test]
fn points_lines_blocking_golden() {
    for (cmd, name) in [
        ("points", "points_hermitian_cubic.json"),
        ("lines", "lines_hermitian_cubic.json"),
        ("blocking", "blocking_hermitian_cubic.json"),
    ] {
        let (code, out, _) = frobnc(&[cmd, "tests/fixtures/hermitian_cubic.poly", "--json"]);
        assert_eq!(code, EXIT_OK, "{cmd}");
        json_roundtrip(&out);
        golden(name, &out);
    }
    let (_, out, _) = frobnc(&["blocking", "tests/fixtures/hermitian_cubic.poly", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"][0]["blocking"], true);
    assert_eq!(v["results"][0]["nontrivial"], true);
}

#[test]
fn gen_manifests() {
    let (code, out, _) = frobnc(&["gen", "hermitian", "q=4", "n=2", "r=2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v = json_roundtrip(&out);
    assert_eq!(v["manifest"]["polynomial"], "x0^3 + x1^3 + x2^3");
    golden("gen_hermitian.json", &out);

    let (code, out, _) = frobnc(&["gen", "q-plus-2", "q=2", "builtin=dgz", "--json", "--verify"]);
    assert_eq!(code, EXIT_OK);
    let v = json_roundtrip(&out);
    let dgz = fs::read_to_string("tests/fixtures/dgz.poly").unwrap();
    let body: String = dgz.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(v["manifest"]["polynomial"], body.as_str());
    assert!(v["manifest"]["verification"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    golden("gen_dgz.json", &out);
}

#[test]
fn gen_every_family_and_verify() {
    let cases: &[&[&str]] = &[
        &["space-filling", "q=3", "n=3"],
        &["skew-form", "q=3", "matrix=0,1;-1,0"],
        &["hermitian", "q=9", "n=2"],
        &["char2-even", "builtin=f4"],
        &["q-plus-2", "builtin=f8"],
        &["norm-pointless", "q=2", "n=2"],
        &["diagonal-pointless", "q=5", "n=2"],
        &["separated", "q=4", "g=x0^3 + x1^3", "h=x0^3"],
        &["separated", "q=2", "fermat=2", "n=2"],
    ];
    for args in cases {
        let mut a = vec!["gen"];
        a.extend_from_slice(args);
        a.extend(["--verify", "--json"]);
        let (code, out, err) = frobnc(&a);
        assert_eq!(code, EXIT_OK, "{args:?}: {err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(!v["manifest"]["verification"].as_array().unwrap().is_empty(), "{args:?}");
    }
}

#[test]
fn gen_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("h.poly");
    let (code, _, _) = frobnc(&["gen", "hermitian", "q=4", "n=3", "--out", p.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let text = fs::read_to_string(&p).unwrap();
    assert_eq!(text, "p=2 k=2 mod=[1,1,1] n=3\nx0^3 + x1^3 + x2^3 + x3^3\n");
    let m: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("h.poly.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["family"], "hermitian");
    let (code, out, _) = frobnc(&["points", p.to_str().unwrap(), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["results"][0]["counts"][0]["count"], 45);
}

#[test]
fn text_gen_output_is_a_polynomial_file() {
    let (code, out, _) = frobnc(&["gen", "space-filling", "q=2", "n=3"]);
    assert_eq!(code, EXIT_OK);
    let pf = frobnc::mpoly::parse_file(&out).unwrap();
    assert_eq!(pf.polys.len(), 1);
    assert_eq!(pf.polys[0].to_string(), "x0^2*x1 + x0*x1^2 + x2^2*x3 + x2*x3^2");
}

#[test]
fn input_errors_exit_3() {
    let (code, _, err) = frobnc(&["gen", "skew-form", "q=3", "n=2"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("odd"), "{err}");
    let (code, _, err) = frobnc(&["check", "tests/fixtures/bad.poly"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line 2") && err.contains("position 7"), "{err}");
    let (code, _, _) = frobnc(&["check", "tests/fixtures/missing.poly"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = frobnc(&["gen", "no-such-family"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, err) = frobnc(&["verify", "no-such-suite"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("hermitian-f10"));
    let (code, _, _) = frobnc(&["census", "--p", "2", "--d", "2", "--shard", "4/4"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = frobnc(&["gen", "diagonal-pointless", "q=4", "n=2"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn census_budget_exit_4() {
    let (code, _, err) = frobnc(&["census", "--p", "3", "--d", "4", "--budget", "1000"]);
    assert_eq!(code, EXIT_BUDGET);
    assert!(err.contains("--shard"), "{err}");
}

#[test]
fn census_golden_and_deterministic() {
    let args = ["census", "--p", "2", "--d", "4", "--filter", "fn,smooth"];
    let (code, a, _) = frobnc(&args);
    assert_eq!(code, EXIT_OK);
    let (_, b, _) = frobnc(&args);
    assert_eq!(a, b);
    golden("census_q2_d4.jsonl", &a);
}

#[test]
fn census_shards_merge_to_unsharded_output() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["census", "--p", "2", "--d", "3", "--filter", "fn"];
    let (_, whole, _) = frobnc(&base);
    let mut files = Vec::new();
    for i in [2, 0, 3, 1] {
        let path = dir.path().join(format!("s{i}.jsonl"));
        let shard = format!("{i}/4");
        let mut a = base.to_vec();
        a.extend(["--shard", &shard, "--out", path.to_str().unwrap()]);
        assert_eq!(frobnc(&a).0, EXIT_OK);
        files.push(path);
    }
    let mut a = vec!["census", "--merge"];
    a.extend(files.iter().map(|p| p.to_str().unwrap()));
    let (code, merged, err) = frobnc(&a);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(merged, whole);

    let (code, _, _) = frobnc(&["census", "--merge", files[0].to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn verify_suite_golden() {
    let (code, out, _) = frobnc(&["verify", "curve-count-hermitian-f4", "--json"]);
    assert_eq!(code, EXIT_OK);
    json_roundtrip(&out);
    golden("verify_curve_count.json", &out);
    let (code, text, _) = frobnc(&["verify", "blocking-hermitian-f4"]);
    assert_eq!(code, EXIT_OK);
    assert!(text.starts_with("PASS blocking-hermitian-f4"));
}

#[test]
fn timing_is_opt_in() {
    let (_, out, _) = frobnc(&["blocking", "tests/fixtures/hermitian_cubic.poly", "--json"]);
    assert!(!out.contains("elapsed_ms"));
    let (_, out, _) = frobnc(&["blocking", "tests/fixtures/hermitian_cubic.poly", "--json", "--timing"]);
    assert!(out.contains("elapsed_ms"));
}
