use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("tracelog").chain(args.iter().copied()).map(String::from).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = tracelog_cli::run(&argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"))
}

#[test]
fn linear_resultant_text() {
    let (code, out, err) = run(&["resultant", "--degrees", "1,1", "--symbolic"]);
    assert_eq!((code, err.as_str()), (0, ""));
    assert_eq!(out, "f1_1*f2_2 - f1_2*f2_1\n");
}

#[test]
fn schur_p3() {
    let (code, out, _) = run(&["schur", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "t3 + t1*t2 + 1/6*t1^3");
    let (_, multi, _) = run(&["schur", "--target", "1,1", "--method", "enumerate"]);
    assert_eq!(multi.trim(), "t1_1 + t0_1*t1_0");
}

#[test]
fn three_quadrics_stats_only() {
    let (code, out, _) = run(&["resultant", "--degrees", "2,2,2", "--symbolic", "--stats-only", "--jobs", "4"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["term_count"], 21894);
    assert_eq!(doc["degree_data"]["d_total"], 12);
    assert!(doc.get("value").is_none());
}

#[test]
fn budget_refusal_exits_3_and_names_the_grading() {
    let (code, out, err) = run(&["resultant", "--degrees", "2,2,2", "--symbolic", "--budget", "100"]);
    assert_eq!(code, 3);
    assert!(out.is_empty());
    assert!(err.contains("[4, 4, 4]"), "{err}");
    let (code, _, err) = run(&["traces", "--degrees", "3,3", "--symbolic", "--budget", "5", "--format", "json"]);
    assert_eq!(code, 3);
    let doc = json(&err);
    assert_eq!(doc["error"]["kind"], "budget");
    assert!(doc["error"]["grading"].is_array());
}

#[test]
fn input_errors_exit_2() {
    let cases: [&[&str]; 8] = [
        &["resultant", "--degrees", "1,1"],
        &["resultant", "--system", "{not json"],
        &["resultant", "--degrees", "1,1", "--symbolic", "--budget", "0"],
        &["resultant", "--degrees", "1,1", "--symbolic", "--unknown-flag"],
        &["resultant", "--degrees", "0,1", "--symbolic"],
        &["probe", "--degrees", "1,1", "--symbolic"],
        &["schur"],
        &["frobnicate"],
    ];
    for args in cases {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty(), "{args:?} wrote {out}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("resultant"));
}

#[test]
fn inline_and_file_documents_agree() {
    let doc = r#"{"n":2,"degrees":[2,2],"mode":"numeric","polynomials":[
        {"monomials":[{"index":[1,1],"coeff":"1"},{"index":[1,2],"coeff":"-3"},{"index":[2,2],"coeff":"2"}]},
        {"monomials":[{"index":[1,1],"coeff":"1"},{"index":[2,2],"coeff":"-1"}]}]}"#;
    let (code, inline, _) = run(&["probe", "--system", doc]);
    assert_eq!(code, 0);
    // x^2 - 3xy + 2y^2 and x^2 - y^2 share the root (1, 1)
    assert_eq!(inline.trim(), "0");
    let path = std::env::temp_dir().join(format!("tracelog-cli-{}.json", std::process::id()));
    std::fs::write(&path, doc).unwrap();
    let (code, from_file, _) = run(&["probe", "--input", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!((code, from_file), (0, inline));
}

#[test]
fn forced_root_probe_vanishes() {
    let (code, out, _) = run(&["probe", "--degrees", "2,3", "--random", "--root", "-1/2,3", "--seed", "9"]);
    assert_eq!((code, out.trim()), (0, "0"));
}

#[test]
fn output_is_deterministic() {
    let args = ["probe", "--degrees", "2,2", "--random", "--seed", "42", "--format", "json"];
    let first = run(&args);
    assert_eq!(first.0, 0);
    assert_eq!(first, run(&args));
    let doc = json(&first.1);
    assert_eq!(doc["vanishes"], false);
    assert_eq!(doc["system"]["degrees"], serde_json::json!([2, 2]));
    let res = ["resultant", "--degrees", "3,3", "--symbolic", "--format", "json", "--jobs", "3"];
    assert_eq!(run(&res), run(&res));
}

#[test]
fn modes_and_methods_agree() {
    let base = ["resultant", "--degrees", "2,2", "--symbolic"];
    let (_, multi, _) = run(&base);
    for extra in [["--mode", "single"], ["--method", "enumerate"]] {
        let args: Vec<&str> = base.iter().copied().chain(extra).collect();
        assert_eq!(run(&args).1, multi, "{extra:?}");
    }
}

#[test]
fn determinants() {
    let (_, sym, _) = run(&["det", "--n", "2"]);
    assert_eq!(sym.trim(), "f1_1*f2_2 - f1_2*f2_1");
    for method in ["traces", "leibniz", "minors"] {
        let (code, out, _) = run(&["det", "--matrix", r#"[[2, 1, 0], [1, "1/2", 3], [0, 4, 1]]"#, "--method", method]);
        assert_eq!((code, out.trim()), (0, "-24"), "{method}");
    }
    assert_eq!(run(&["det", "--matrix", "[[1, 2]]"]).0, 2);
}

#[test]
fn traces_by_grading_and_total() {
    let (_, one, _) = run(&["traces", "--degrees", "2,2", "--symbolic", "--grading", "1,1"]);
    assert_eq!(one.trim(), "T1_1 = f1_12*f2_12 + 2*f1_22*f2_11");
    let (code, out, _) = run(&["traces", "--degrees", "1,1", "--symbolic", "--k", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["traces"][1]["k"], 2);
    assert_eq!(doc["traces"][1]["value"], "f1_1^2 + 2*f1_2*f2_1 + f2_2^2");
    assert_eq!(run(&["traces", "--degrees", "1,1", "--symbolic", "--grading", "1"]).0, 2);
}

#[test]
fn check_passes() {
    let (code, out, _) = run(&["check", "--samples", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["passed"], true);
    assert!(doc["results"].as_array().unwrap().len() >= 20);
}

#[test]
fn stats_without_computing() {
    let (code, out, _) = run(&["stats", "--degrees", "3,3,3", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("d_total: 27"), "{out}");
    let (_, out, _) = run(&["stats", "--degrees", "2,2,2", "--budget", "10"]);
    assert_eq!(json(&out)["within_budget"], false);
}
