use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn permblock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permblock")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: stdout {} stderr {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn check<'a>(r: &'a Value, name: &str) -> &'a Value {
    r["result"]["checks"].as_array().unwrap().iter().find(|c| c["check"] == name).unwrap_or_else(|| panic!("no {name}"))
}

#[test]
fn verify_planar_suite() {
    let out = permblock(&["verify", "2d", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "verified");
    assert_eq!(r["line_ordering"], "lex");
    assert_eq!(check(&r, "planar-block")["outcome"]["verdict"], "verified");
    let block = check(&r, "planar-block")["details"]["block"].to_string();
    assert!(block.contains("2*a*b*c"), "{block}");
}

#[test]
fn verify_scalar_structure_sampled() {
    let out = permblock(&["verify", "b3", "--p", "5", "--trials", "32", "--seed", "7", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    for name in ["scalar-structure p=5", "triple-product-spectrum p=5"] {
        let bound = check(&r, name)["outcome"]["log2_failure_bound"].as_f64().unwrap();
        assert!(bound <= -100.0, "{name}: {bound}");
    }
    assert_eq!(check(&r, "triple-product-spectrum p=5")["details"]["multiplicities"], serde_json::json!([10, 15]));
}

#[test]
fn malformed_brick_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"field\": ");
    assert_eq!(permblock(&["verify", "2d", "--brick", &bad]).status.code(), Some(2));
    assert_eq!(permblock(&["census", &bad]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(permblock(&["evolve", missing.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(permblock(&["verify", "no-such-suite"]).status.code(), Some(2));
}

#[test]
fn verify_with_brick_file() {
    let dir = tempfile::tempdir().unwrap();
    let poly = write(
        dir.path(),
        "poly.json",
        r#"{"ring": "poly", "vars": ["a", "b", "c", "d"], "entries": [["a", "b"], ["c", "d"]]}"#,
    );
    let out = permblock(&["verify", "2d", "--brick", &poly, "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0));
    let field = write(dir.path(), "f.json", r#"{"field": {"p": 2, "m": 8}, "entries": [[3, 5, 7], [11, 13, 17], [19, 23, 29]]}"#);
    assert_eq!(permblock(&["verify", "cubic", "--brick", &field]).status.code(), Some(0));
    assert_eq!(permblock(&["verify", "all", "--brick", &field]).status.code(), Some(2));
}

#[test]
fn identity_census() {
    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "id.json", r#"{"field": {"p": 2, "m": 1}, "entries": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}"#);
    let out = permblock(&["census", &id, "--edge", "2", "--bcs", "periodic,periodic,periodic", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["q"], 2);
    assert_eq!(r["result"]["exponent"], 12);
    assert_eq!(r["result"]["oracle_checked"], false);
}

#[test]
fn census_with_oracle_and_cap() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(dir.path(), "b.json", r#"{"field": {"p": 2, "m": 1}, "entries": [[1, 0, 1], [0, 1, 1], [1, 1, 0]]}"#);
    for bcs in ["p,p,p", "z,f,p", "f,f,f"] {
        let out = permblock(&["census", &b, "--bcs", bcs, "--oracle", "--no-timestamp"]);
        assert_eq!(out.status.code(), Some(0));
        let r = report(&out);
        assert_eq!(r["result"]["oracle_checked"], true);
        assert_eq!(r["result"]["oracle"]["exponent"], r["result"]["exponent"]);
    }
    let out = permblock(&["census", &b, "--oracle", "--cap-points", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap-points"));
}

fn step_counts(r: &Value, step: usize) -> Vec<u64> {
    r["result"]["steps"][step]["prediction"]["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["multiplicity"].as_u64().unwrap())
        .collect()
}

#[test]
fn evolve_predictions() {
    let dir = tempfile::tempdir().unwrap();
    let generic = write(dir.path(), "g.json", r#"{"field": {"p": 2, "m": 16}, "entries": [[3, 5, 7], [11, 13, 17], [19, 23, 29]]}"#);
    let out = permblock(&["evolve", &generic, "--steps", "1", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["case"], "generic");
    assert_eq!(step_counts(&r, 0), [3, 1]);
    assert_eq!(r["result"]["steps"][0]["confirmed"], true);

    let sym = write(dir.path(), "s.json", r#"{"field": {"p": 2, "m": 16}, "entries": [[3, 5, 7], [5, 11, 13], [7, 13, 17]]}"#);
    let r = report(&permblock(&["evolve", &sym, "--steps", "2", "--no-timestamp"]));
    assert_eq!(r["result"]["case"], "symmetric");
    assert_eq!(step_counts(&r, 1), [8, 4]);
    assert_eq!(r["result"]["steps"][1]["confirmed"], true);

    let id = write(dir.path(), "id.json", r#"{"field": {"p": 2, "m": 1}, "entries": [[1, 0], [0, 1]]}"#);
    let r = report(&permblock(&["evolve", &id, "--steps", "3", "--no-timestamp"]));
    for k in 0..3 {
        assert_eq!(r["result"]["steps"][k]["prediction"]["summands"][0]["kind"], "identity-brick");
        assert_eq!(r["result"]["steps"][k]["confirmed"], true);
    }
    assert_eq!(permblock(&["evolve", &generic, "--steps", "3", "--cap-dim", "50"]).status.code(), Some(2));
}

#[test]
fn reduce4d_reports() {
    let dir = tempfile::tempdir().unwrap();
    let b = write(
        dir.path(),
        "b4.json",
        r#"{"field": {"p": 2, "m": 8}, "d": 4, "entries": [[3, 5, 7, 2], [11, 13, 17, 9], [19, 23, 29, 4], [6, 8, 10, 0]]}"#,
    );
    for case in ["periodic", "zero-input"] {
        let out = permblock(&["reduce4d", &b, "--case", case, "--stratify", "1", "--census-check", "--no-timestamp"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let r = report(&out);
        assert_eq!(r["result"]["case"], case);
        assert_eq!(r["result"]["l"], 2);
        assert_eq!(r["result"]["stratification"]["verdict"]["verdict"], "verified");
        for row in r["result"]["census_check"].as_array().unwrap() {
            assert_eq!(row["genuine"], row["reduced"]);
        }
    }
    let three = write(dir.path(), "three.json", r#"{"field": {"p": 2, "m": 8}, "entries": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}"#);
    assert_eq!(permblock(&["reduce4d", &three]).status.code(), Some(2));
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for p in [&a, &b] {
        let out = permblock(&["verify", "symmetric", "--seed", "11", "--no-timestamp", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let r: Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(r["seed"], 11);
    assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
    let stamped = report(&permblock(&["verify", "2d"]));
    assert!(stamped["timestamp"].is_string());
}

#[test]
fn assemble_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let poly = write(
        dir.path(),
        "poly.json",
        r#"{"ring": "poly", "vars": ["a", "b", "c", "d"], "coeffs": "integer", "entries": [["a", "b"], ["c", "d"]]}"#,
    );
    let r = report(&permblock(&["assemble", &poly, "--edges", "2,2", "--no-timestamp"]));
    assert_eq!(r["result"]["block"]["rows"], 4);
    assert_eq!(r["result"]["lattice"]["thick_dims"], serde_json::json!([2, 2]));
    let out = permblock(&["assemble", &poly, "--format", "csv", "--no-timestamp"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("result.block.rows,4"));
}
