use std::process::Command;

use serde_json::Value;

fn gjs3(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gjs3"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let json = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("invalid json ({e}): {stdout}"))
    };
    (out.status.code().unwrap(), json, stderr)
}

fn check_schema(v: &Value) {
    let obj = v.as_object().expect("object");
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    assert_eq!(keys, ["op", "params", "provenance", "result", "version"]);
    assert!(obj["op"].is_string() && obj["params"].is_object() && obj["version"].is_string());
    assert!(matches!(
        obj["provenance"].as_str(),
        Some("exact" | "montecarlo")
    ));
    // Deterministic serialization: reparsing and printing gives the same text.
    let text = serde_json::to_string(v).unwrap();
    assert_eq!(
        serde_json::to_string(&serde_json::from_str::<Value>(&text).unwrap()).unwrap(),
        text
    );
}

#[test]
fn m3_at_two() {
    let (code, v, _) = gjs3(&["factor", "m3", "--n", "2"]);
    assert_eq!(code, 0);
    check_schema(&v);
    assert_eq!(v["result"], "LF(3/2)");
    assert_eq!(gjs3(&["factor", "m3", "--n", "3"]).1["result"], "LF(13/9)");
}

#[test]
fn pitilde_instance() {
    let (code, v, _) = gjs3(&[
        "nc",
        "pitilde",
        "--q",
        "18",
        "--d",
        "2,5,8,11,13,14,17",
        "--pi",
        "{2,8,11}{5}{13,14,17}",
    ]);
    assert_eq!(code, 0);
    check_schema(&v);
    assert_eq!(v["result"]["pi_tilde"], "{1,12,18}{3,4,6,7}{9,10}{15,16}");
    assert_eq!(
        v["result"]["blocks"],
        serde_json::json!([[1, 12, 18], [3, 4, 6, 7], [9, 10], [15, 16]])
    );
    assert_eq!(v["result"]["floating_loops"], 2);
    let brute = gjs3(&[
        "nc",
        "pitilde",
        "--q",
        "18",
        "--d",
        "2,5,8,11,13,14,17",
        "--pi",
        "{2,8,11}{5}{13,14,17}",
        "--brute",
    ]);
    assert_eq!(brute.1["result"]["pi_tilde"], v["result"]["pi_tilde"]);
}

#[test]
fn z_moment_value() {
    let (code, v, _) = gjs3(&["model", "z-moment", "--n", "2", "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "11");
}

#[test]
fn every_exact_subcommand_emits_schema_json() {
    let e11 = "M[[1,0],[0,0]]";
    let word = format!("Z {e11} Z {e11}");
    let cases: Vec<Vec<&str>> = vec![
        vec!["nc", "enum", "--q", "5", "--list"],
        vec!["nc", "mobius", "--pi", "{1}{2}{3}", "--sigma", "{1,2,3}"],
        vec!["cumulants", "from-moments", "--moments", "1,3,11"],
        vec!["cumulants", "to-moments", "--cumulants", "1,2,4"],
        vec!["model", "tau", "--n", "2", "--word", &word],
        vec![
            "model", "pi-term", "--n", "2", "--word", &word, "--pi", "{1,3}",
        ],
        vec!["model", "dims", "--n", "3", "--k", "3"],
        vec!["free", "check", "--n", "2", "--max-q", "3"],
        vec!["free", "product-moment", "--n", "2", "--word", &word],
        vec![
            "factor", "dykema", "--r", "3", "--alpha", "1/20", "--d", "4",
        ],
        vec!["verify", "all", "--criteria", "1,4,8"],
    ];
    for args in cases {
        let (code, v, stderr) = gjs3(&args);
        assert_eq!(code, 0, "{args:?}: {stderr}");
        check_schema(&v);
        assert_eq!(v["provenance"], "exact");
    }
}

#[test]
fn exact_values_through_cli() {
    let e11 = "M[[1,0],[0,0]]";
    let word = format!("Z {e11} Z {e11}");
    assert_eq!(
        gjs3(&["model", "tau", "--n", "2", "--word", &word]).1["result"],
        "1"
    );
    assert_eq!(
        gjs3(&["free", "product-moment", "--n", "2", "--word", &word]).1["result"],
        "1"
    );
    assert_eq!(
        gjs3(&["nc", "mobius", "--pi", "{1}{2}{3}", "--sigma", "{1,2,3}"]).1["result"],
        "2"
    );
    assert_eq!(
        gjs3(&["cumulants", "from-moments", "--moments", "1,3,11"]).1["result"],
        serde_json::json!(["1", "2", "4"])
    );
    assert_eq!(
        gjs3(&["cumulants", "to-moments", "--cumulants", "1,2,4"]).1["result"],
        serde_json::json!(["1", "3", "11"])
    );
    assert_eq!(
        gjs3(&["model", "dims", "--n", "3", "--k", "3"]).1["result"],
        "9"
    );
    assert_eq!(gjs3(&["nc", "enum", "--q", "6"]).1["result"]["count"], 132);
    assert_eq!(
        gjs3(&["factor", "dykema", "--r", "3", "--alpha", "1/20", "--d", "4"]).1["result"],
        "M4(C)[1/5] + LF(273/256)[4/5]"
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["nope"],
        vec!["model", "tau", "--n", "2", "--word", "Z Q"],
        vec!["model", "tau", "--n", "2", "--word", "M[[1,0],[0,1]"],
        vec!["model", "tau", "--n", "1", "--word", "Z"],
        vec![
            "model",
            "tau",
            "--n",
            "2",
            "--word",
            "Z M[[1,0,0],[0,1,0],[0,0,1]]",
        ],
        vec!["nc", "mobius", "--pi", "{1,3}{2,4}", "--sigma", "{1,2,3,4}"],
        vec!["nc", "enum", "--q", "17"],
        vec!["nc", "enum", "--q", "13", "--list"],
        vec!["verify", "all", "--criteria", "9"],
        vec!["rmt", "sample", "--n", "2", "--size", "101"],
    ] {
        let (code, v, stderr) = gjs3(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(v.is_null());
        assert!(!stderr.is_empty());
    }
}

#[test]
fn mutation_flips_verify() {
    let (code, v, stderr) = gjs3(&["verify", "all", "--criteria", "5,7"]);
    assert_eq!(code, 0, "{stderr}");
    assert_eq!(v["result"]["passed"], true);
    assert!(stderr.contains("[PASS] 5."));
    for kind in ["exponent", "single"] {
        let (code, v, stderr) = gjs3(&["verify", "all", "--criteria", "5,7", "--mutate", kind]);
        assert_eq!(code, 1, "{kind}");
        check_schema(&v);
        assert_eq!(v["result"]["passed"], false);
        assert!(
            stderr.contains("[FAIL] 5.") && stderr.contains("[FAIL] 7."),
            "{stderr}"
        );
    }
}

#[test]
fn rmt_subcommands() {
    let dir = std::env::temp_dir().join(format!("gjs3-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("eig.csv");
    let (code, v, stderr) = gjs3(&[
        "rmt",
        "sample",
        "--size",
        "120",
        "--n",
        "2",
        "--trials",
        "2",
        "--seed",
        "4",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stderr}");
    check_schema(&v);
    assert_eq!(v["provenance"], "montecarlo");
    assert_eq!(v["result"]["atom_fraction"]["value"], 0.5);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("# N=120 n=2"));
    assert_eq!(text.lines().count(), 2 + 240);

    let (code, v, stderr) = gjs3(&[
        "--threads",
        "2",
        "rmt",
        "estimate",
        "--size",
        "120",
        "--n",
        "2",
        "--trials",
        "3",
        "--word",
        "Z Z",
        "--word",
        "M[[0,1],[1,0]] M[[0,1],[1,0]]",
    ]);
    assert_eq!(code, 0, "{stderr}");
    check_schema(&v);
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["exact"], "3");
    assert!((rows[1]["estimate"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    std::fs::remove_dir_all(dir).unwrap();
}
