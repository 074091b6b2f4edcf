use std::io::Write;
use std::process::{Command, Output, Stdio};

fn dalpha(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dalpha"))
        .args(args)
        .env_remove("DALPHA_WORKERS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn dalpha");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn records(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn compute_closed_forms() {
    // K_4 and C_5.
    let out = dalpha(&["compute", "--alpha", "0.3"], "C~\nDhc\n");
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    assert_eq!(recs.len(), 2);
    assert!((recs[0]["mu"].as_f64().unwrap() - 3.0).abs() < 1e-10);
    assert!((recs[1]["mu"].as_f64().unwrap() - 6.0).abs() < 1e-10);
    assert_eq!(recs[1]["sigma"], 15);
    assert_eq!(recs[0]["alpha"].to_string(), "0.3");
}

#[test]
fn record_level_errors_keep_order() {
    // P_3, a malformed line, a disconnected graph (2 isolated vertices), K_4.
    let out = dalpha(&["compute", "--alpha", "0"], "Bg\nbad!\nA?\nC~\n");
    assert_eq!(out.status.code(), Some(0));
    let recs = records(&out);
    let idx: Vec<u64> = recs.iter().map(|r| r["index"].as_u64().unwrap()).collect();
    assert_eq!(idx, vec![0, 1, 2, 3]);
    assert!(recs[1]["error"].as_str().unwrap().contains("graph6"));
    assert!(recs[2]["error"].as_str().unwrap().contains("disconnected"));
    assert!((recs[0]["mu"].as_f64().unwrap() - (1.0 + 3f64.sqrt())).abs() < 1e-10);
}

#[test]
fn edge_list_lines_are_accepted() {
    let out = dalpha(&["compute", "--alpha", "0"], "{\"n\":3,\"edges\":[[0,1],[1,2]]}\n");
    let recs = records(&out);
    assert!((recs[0]["mu"].as_f64().unwrap() - (1.0 + 3f64.sqrt())).abs() < 1e-10);
}

#[test]
fn parallel_and_sequential_output_match() {
    let census = dalpha(&["census", "--family", "trees", "--n", "9"], "");
    let text = String::from_utf8(census.stdout).unwrap();
    assert_eq!(text.lines().count(), 47);
    let seq = dalpha(&["compute", "--workers", "1"], &text);
    let par = dalpha(&["compute", "--workers", "4"], &text);
    assert_eq!(seq.stdout, par.stdout);
}

#[test]
fn bounds_on_complete_and_regular_graphs() {
    let out = dalpha(&["bounds", "--alpha", "0.4"], "C~\n");
    let rec = &records(&out)[0];
    for b in rec["bounds"].as_array().unwrap() {
        assert_eq!(b["holds"], true, "{b}");
    }
    assert!(rec["gap_skipped"].as_str().unwrap().contains("transmission regular"));
}

#[test]
fn census_export_writes_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u4.g6");
    let out = dalpha(
        &["census", "--family", "unicyclic", "--n", "4", "--out", path.to_str().unwrap()],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("u4.g6.json")).unwrap()).unwrap();
    assert_eq!(side["count"], 2);
    assert_eq!(side["family"], "unicyclic");
}

#[test]
fn census_cap_is_a_usage_error() {
    let out = dalpha(&["census", "--family", "connected", "--n", "9"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit of 8"));
}

#[test]
fn verify_config_errors() {
    let out = dalpha(&["verify", "--alpha", "1.0"], "");
    assert_eq!(out.status.code(), Some(2));
    let out = dalpha(&["verify", "--n", "9"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap 8"));
}

#[test]
fn verify_small_run_passes_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.json");
    std::fs::write(
        &cfg,
        r#"{"alphas":["0","0.5"],"tree_min":[5],"tree_second_min":[],"unicyclic_min":[],
            "unicyclic_exploratory":[],"global_max_trees":[],"global_max_connected":[5],
            "max_degree_trees":[],"max_degree_connected":[],"clique_max":[],
            "odd_unicyclic_max":[5],"transform_instances":3}"#,
    )
    .unwrap();
    let csv = dir.path().join("out.csv");
    let out = dalpha(
        &[
            "verify",
            "--config",
            cfg.to_str().unwrap(),
            "--format",
            "csv",
            "--out",
            csv.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("theorem_id,n,params,alpha,verdict,margin,witness_graph6,mu"));
    assert!(text.lines().any(|l| l.starts_with("tree_min,5,") && l.contains(",pass,")));
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--n", "5", "--alpha", "0.25", "--seed", "7"];
    let a = dalpha(&args, "");
    let b = dalpha(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn transform_contract_on_path() {
    let out = dalpha(
        &["transform", "contract", "--graph", "path:4", "--params", r#"{"u":1,"v":2}"#, "--alpha", "0.5"],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["claim_verified"], true);
    assert_eq!(v[0]["direction_claim"], "decrease");
}

#[test]
fn transform_precondition_errors() {
    let out = dalpha(
        &["transform", "shift_pair", "--graph", "path:3", "--params", r#"{"u":1,"p":1,"q":3}"#],
        "",
    );
    assert_eq!(out.status.code(), Some(2));
    // P_4 has no automorphism sending vertex 0 to its neighbour 1.
    let out = dalpha(
        &["transform", "shift_two_site", "--graph", "path:4", "--params", r#"{"u":0,"v":1,"p":2,"q":1}"#],
        "",
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("automorphism"));
}

#[test]
fn help_documents_flags() {
    let out = dalpha(&["compute", "--help"], "");
    let text = String::from_utf8_lossy(&out.stdout);
    for flag in ["--alpha", "--tol-residual", "--tol-strict", "--workers", "--format", "--out", "DALPHA_WORKERS"] {
        assert!(text.contains(flag), "missing {flag}");
    }
}
