//! End-to-end command tests through the library entry point.

use gordian_cli::run;
use serde_json::Value;

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args.iter().copied());
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("bad JSON ({e}): {out}"));
    (code, v)
}

#[test]
fn validate_fixture() {
    let (code, v) = run_json(&["validate", "--fixture", "trefoil3"]);
    assert_eq!(code, 0);
    assert_eq!(v["valid"], true);
    assert_eq!(v["crossings"], 3);
}

#[test]
fn validate_rejects_broken_pairing() {
    let dir = tempdir();
    let path = dir.join("broken.json");
    std::fs::write(
        &path,
        r#"{"nodes":[{"id":0,"kind":"crossing","rotation":[0,1,2,3],"over":[0,2]}],
           "pairing":[[0,1],[2,0]],"freeLoops":0}"#,
    )
    .unwrap();
    let (code, v) = run_json(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["valid"], false);
}

#[test]
fn resolve_unknot() {
    let (code, v) = run_json(&["resolve", "--kind", "a", "--fixture", "unknot0"]);
    assert_eq!(code, 0);
    assert_eq!(v["circleCount"], 1);
    assert_eq!(v["grey"].as_array().unwrap().len(), 0);
}

#[test]
fn resolve_kink_kinds_differ() {
    let (_, a) = run_json(&["resolve", "--kind", "a", "--fixture", "kink1"]);
    let (_, b) = run_json(&["resolve", "--kind", "a-inverse", "--fixture", "kink1"]);
    assert_eq!(a["circleCount"], 2);
    assert_eq!(b["circleCount"], 1);
    assert_eq!(a["adequate"], true);
    assert_eq!(b["adequate"], false);
}

#[test]
fn check_fig4l_fails_adequate_with_witness() {
    let (code, v) = run_json(&["check", "--adequate", "--fixture", "fig4L"]);
    assert_eq!(code, 1);
    assert_eq!(v["checks"]["adequate"]["holds"], false);
    assert!(v["checks"]["adequate"]["witness"].is_object());
}

#[test]
fn check_adams_fig10() {
    let (code, v) = run_json(&["check", "--adams", "--fixture", "fig10"]);
    // hypotheses fail on even valence only
    assert_eq!(code, 1);
    let report = &v["checks"]["adams"]["report"];
    assert_eq!(report["even_valent"], false);
    assert_eq!(report["alternating"], true);
    assert_eq!(report["reduced"], true);
    assert_eq!(report["no_uncrossed_cycle"], true);
    assert_eq!(
        v["checks"]["adams"]["circleThroughCrossingAndEdge"]
            .as_array()
            .unwrap()
            .len(),
        0
    );
}

#[test]
fn certify_fig7_and_refuse_fig4l() {
    let (code, v) = run_json(&["certify", "--fixture", "fig7"]);
    assert_eq!(code, 0);
    assert_eq!(v["outcome"], "certified");
    assert_eq!(v["certificate"]["claim"], 6);

    let (code, v) = run_json(&["certify", "--fixture", "fig4L"]);
    assert_eq!(code, 1);
    assert_eq!(v["outcome"], "refused");
}

#[test]
fn certify_links() {
    for (name, claim) in [("trefoil3", 3), ("hopf2", 2), ("fig8-4", 4)] {
        let (code, v) = run_json(&["certify", "--fixture", name]);
        assert_eq!(code, 0, "{name}");
        assert_eq!(v["certificate"]["claim"], claim);
        assert_eq!(v["certificate"]["route"]["kind"], "adequate-link");
    }
    let (code, _) = run_json(&["certify", "--fixture", "kink1"]);
    assert_eq!(code, 1);
}

#[test]
fn double_fig5g() {
    let (code, v) = run_json(&["double", "--fixture", "fig5G"]);
    assert_eq!(code, 0);
    assert_eq!(v["strings"], 2);
    assert_eq!(v["crossings"], 6);
}

#[test]
fn compose_fig8() {
    let (code, v) = run_json(&["compose", "--fixture", "fig8"]);
    assert_eq!(code, 0);
    assert_eq!(v["crossings"], 13);
    assert_eq!(v["certification"]["outcome"], "certified");
    assert_eq!(v["certification"]["certificate"]["claim"], 13);
    assert_eq!(
        v["certification"]["certificate"]["children"]
            .as_array()
            .unwrap()
            .len(),
        4
    );
}

#[test]
fn compose_from_file() {
    // single-edge framework, fragment = plain edge beside a trefoil
    let framework = r#"{"nodes":[{"id":0,"kind":"vertex","rotation":[0]},
                                 {"id":1,"kind":"vertex","rotation":[1]}],
                        "pairing":[[0,1]],"freeLoops":0}"#;
    let fragment = {
        let d = gordian_core::fixtures::orange_fragment();
        serde_json::to_string(&gordian_core::codec::diagram_to_json(&d)).unwrap()
    };
    let marks: Vec<u32> = gordian_core::fixtures::orange_fragment()
        .vertices()
        .map(|v| v.id.0)
        .collect();
    let input = format!(
        r#"{{"framework": {framework},
             "replacements": [{{"target": {{"edge": 0}},
                                "fragment": {fragment},
                                "attachments": {marks:?},
                                "evidence": {{"kind": "adequate"}}}}]}}"#
    );
    let dir = tempdir();
    let path = dir.join("compose.json");
    std::fs::write(&path, input).unwrap();
    let (code, v) = run_json(&["compose", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["crossings"], 3);
    assert_eq!(v["certification"]["outcome"], "certified");
}

#[test]
fn search_kink_reaches_zero() {
    let (code, v) = run_json(&["search", "--budget", "10", "--seeds", "2", "--fixture", "kink1"]);
    assert_eq!(code, 0);
    assert_eq!(v["bestCrossings"], 0);
}

#[test]
fn fixtures_listing() {
    let (code, v) = run_json(&["fixtures"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["fixtures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap())
        .collect();
    for expect in [
        "unknot0",
        "kink1",
        "hopf2",
        "trefoil3",
        "fig8-4",
        "theta",
        "fig4L",
        "fig5G",
        "fig5G'",
        "fig7",
        "fig9adams",
        "fig10",
        "kinoshita5",
    ] {
        assert!(names.contains(&expect), "missing fixture {expect}");
    }
}

#[test]
fn malformed_input_is_exit_2() {
    let dir = tempdir();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let (code, v) = run_json(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"].is_string());

    let (code, _) = run_json(&["resolve", "--kind", "a", "--fixture", "no-such"]);
    assert_eq!(code, 2);

    // resolving a spatial graph is an input error for the link-only command
    let (code, _) = run_json(&["resolve", "--kind", "a", "--fixture", "theta"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_byte_stable() {
    for args in [
        vec!["resolve", "--kind", "a", "--fixture", "trefoil3"],
        vec!["certify", "--fixture", "fig7"],
        vec!["double", "--fixture", "fig5G"],
        vec!["search", "--budget", "40", "--seeds", "2", "--fixture", "trefoil3"],
    ] {
        let (_, a) = run(args.iter().copied());
        let (_, b) = run(args.iter().copied());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn emitted_diagrams_reparse_isomorphic() {
    use gordian_core::codec::parse_diagram;
    use gordian_core::tangle;
    let (_, v) = run_json(&["double", "--fixture", "fig5G"]);
    let text = serde_json::to_string(&v["diagram"]).unwrap();
    let parsed = parse_diagram(&text).unwrap();
    let t = tangle::associated_tangle(&gordian_core::fixtures::fig5g()).unwrap();
    let direct = tangle::double_tangle(&t).unwrap();
    assert!(parsed.isomorphic(&direct));
}

fn tempdir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("gordian-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
