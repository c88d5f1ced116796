use std::path::PathBuf;
use std::process::{Command, Output};

fn drgsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drgsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("{}-{name}", std::process::id()))
}

#[test]
fn certify_heawood() {
    let out = drgsym(&["certify", "--family", "named:heawood"]);
    assert_eq!(out.status.code(), Some(0));
    let cert = json(&out);
    assert_eq!(cert["verdict"]["kind"], "NO_QSYM");
    assert_eq!(cert["applications"].as_array().unwrap().len(), 3);
}

#[test]
fn tables_one() {
    let out = drgsym(&["tables", "--which", "1", "--format", "json"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report = json(&out);
    let rows = report["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    for row in rows {
        assert_eq!(row["array"], row["expected_array"]);
        assert!(row["mismatches"].as_array().unwrap().is_empty());
    }
}

#[test]
fn analyze_paley_17() {
    let out = drgsym(&["analyze", "--family", "paley:17"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("intersection array: {8,4;1,4}"), "{text}");
    assert!(text.contains("aut order: 136"), "{text}");
    assert!(text.contains("distance-transitive: yes"));
    let j = json(&drgsym(&[
        "analyze",
        "--family",
        "named:shrikhande",
        "--format",
        "json",
    ]));
    assert_eq!(j["aut_order"], "192");
    assert_eq!(j["distance_transitive"], false);
    assert_eq!(j["clique_number"], 3);
}

#[test]
fn family_flags_and_specs_agree() {
    let a = drgsym(&["family", "odd", "--k", "4", "--as", "graph6"]);
    let b = drgsym(&["family", "odd:4", "--as", "graph6"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let named = json(&drgsym(&[
        "family", "named", "--name", "foster", "--format", "json",
    ]));
    assert_eq!(named["order"], 90);
    assert_eq!(named["edges"], 135);
}

#[test]
fn certify_from_file_then_audit() {
    let g6 = scratch("coxeter.g6");
    let cert = scratch("coxeter.json");
    let out = drgsym(&[
        "family",
        "named:coxeter",
        "--as",
        "graph6",
        "--out",
        g6.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = drgsym(&[
        "certify",
        "--graph",
        g6.to_str().unwrap(),
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = drgsym(&[
        "audit",
        "--cert",
        cert.to_str().unwrap(),
        "--graph",
        g6.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("audit passed"));

    // Auditing against a different graph is a mismatch.
    let out = drgsym(&[
        "audit",
        "--cert",
        cert.to_str().unwrap(),
        "--family",
        "named:heawood",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("audit FAILED"));
}

#[test]
fn edge_list_input() {
    let edges = scratch("petersen.edges");
    drgsym(&["family", "named:petersen", "--out", edges.to_str().unwrap()]);
    let out = drgsym(&[
        "certify",
        "--graph",
        edges.to_str().unwrap(),
        "--in",
        "edges",
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("NO_QSYM"));
}

#[test]
fn audit_defaults_to_certificate_family() {
    let cert = scratch("k33.json");
    let out = drgsym(&[
        "certify",
        "--family",
        "named:k33",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = drgsym(&[
        "audit",
        "--cert",
        cert.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "HAS_QSYM");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["certify"][..],
        &["certify", "--family", "nonsense:3"],
        &["certify", "--family", "named:shrikhande", "--mode", "orbit"],
        &["family", "odd"],
        &["tables", "--which", "3"],
        &["frobnicate"],
    ] {
        assert_eq!(drgsym(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = drgsym(&["certify", "--family", "hamming:3,3", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["verdict"]["kind"], "INCONCLUSIVE");
    let out = drgsym(&["analyze", "--family", "named:foster", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(3));
}
