//! End-to-end command tests through the dispatch function.

use treehopf_cli::run;

fn invoke(args: &[&str], stdin: &str) -> (i32, String) {
    let argv: Vec<String> = std::iter::once("treehopf".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect();
    let mut out = Vec::new();
    let code = run(&argv, stdin, &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn mul_text_output() {
    let (code, out) = invoke(&["mul", "--family", "T", "(())", "(())"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "1*(()()) + 1*((()))\n");
}

#[test]
fn mul_reads_stdin() {
    let (code, out) = invoke(&["mul", "--family", "T", "-", "-"], "(())\n(())\n");
    assert_eq!(code, 0);
    assert_eq!(out, "1*(()()) + 1*((()))\n");
}

#[test]
fn count_csv_rows() {
    let (code, out) = invoke(&["count", "--family", "HOT", "--upto", "4"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "0,1\n1,1\n2,2\n3,6\n4,24\n");
}

#[test]
fn count_json() {
    let (code, out) = invoke(
        &[
            "count", "--family", "LT", "--m", "2", "--upto", "2", "--format", "json",
        ],
        "",
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["family"], "LT");
    assert_eq!(v["M"], 2);
    assert_eq!(v["counts"], serde_json::json!(["1", "2", "7"]));
}

#[test]
fn enumerate_round_trips_through_the_parser() {
    let (code, out) = invoke(&["enumerate", "--family", "OT", "--degree", "3"], "");
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    let family = treehopf::family::FamilyId::ordered();
    for line in lines {
        let t = treehopf::text::parse_tree(family, line).unwrap();
        assert_eq!(t.to_string(), line);
    }
}

#[test]
fn coprod_json_shape() {
    let (code, out) = invoke(&["coprod", "--family", "T", "(())", "--format", "json"], "");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terms"][0]["left"], "()");
    assert_eq!(v["terms"][0]["right"], "(())");
    assert_eq!(v["terms"][0]["coeff"], "1");
}

#[test]
fn antipode_text() {
    let (code, out) = invoke(&["antipode", "--family", "T", "(()())"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "1*(()()) + 2*((()))\n");
}

#[test]
fn primitive_dim_value() {
    let (code, out) = invoke(&["primitive-dim", "--family", "T", "--degree", "3"], "");
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "2");
}

#[test]
fn factor_heap_cherry() {
    let (code, out) = invoke(&["factor", "--family", "HOT", "h:[1,1]"], "");
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "h:[1] ⊙ h:[1]");
}

#[test]
fn label_count_is_inferred_from_input() {
    let (code, out) = invoke(&["mul", "--family", "LT", "(E2())", "()"], "");
    assert_eq!(code, 0);
    assert_eq!(out, "1*(E2())\n");
}

#[test]
fn series_check_passes() {
    let (code, out) = invoke(&["series-check", "--m", "1", "--order", "8"], "");
    assert_eq!(code, 0);
    assert!(out.starts_with("ok:"));
    let (code, out) = invoke(
        &[
            "series-check",
            "--m",
            "2",
            "--order",
            "6",
            "--format",
            "json",
        ],
        "",
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], true);
    assert!(v["first_mismatch"].is_null());
}

#[test]
fn verify_exit_codes_and_json() {
    let (code, out) = invoke(
        &[
            "verify",
            "--family",
            "OT",
            "--suite",
            "hopf",
            "--max-degree",
            "4",
        ],
        "",
    );
    assert_eq!(code, 0);
    assert!(out.contains("all checks passed"));

    let (code, out) = invoke(
        &[
            "verify",
            "--family",
            "HOT",
            "--suite",
            "graded",
            "--max-degree",
            "3",
            "--format",
            "json",
        ],
        "",
    );
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["suite"], "associated-graded");
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["ok"].as_bool().unwrap()));
}

#[test]
fn verify_family_suite_small_bound() {
    let (code, _) = invoke(
        &[
            "verify",
            "--family",
            "HOT",
            "--suite",
            "family",
            "--max-nodes",
            "3",
        ],
        "",
    );
    assert_eq!(code, 0);
}

#[test]
fn usage_and_parse_errors_exit_2() {
    let (code, _) = invoke(&["mul", "--family", "T", "(()", "()"], "");
    assert_eq!(code, 2, "unbalanced tree text");
    let (code, _) = invoke(&["mul", "--family", "Q", "()", "()"], "");
    assert_eq!(code, 2, "unknown family");
    let (code, _) = invoke(&["frobnicate"], "");
    assert_eq!(code, 2, "unknown subcommand");
    let (code, _) = invoke(&["factor", "--family", "T", "()"], "");
    assert_eq!(code, 2, "the unit has no factorization");
    let (code, _) = invoke(&["verify", "--family", "T", "--suite", "freeness"], "");
    assert_eq!(code, 2, "T has no unique decomposition");
}

#[test]
fn output_is_byte_stable() {
    let args = ["coprod", "--family", "T", "(()(()))", "--format", "json"];
    let (c1, first) = invoke(&args, "");
    let (c2, second) = invoke(&args, "");
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(first, second);
}
