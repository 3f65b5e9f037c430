use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(format!("{name}.toml"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stunted"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_arg(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn betti_of_circle_and_sphere() {
    let o = run(&["betti", path_arg(&fixture("circle")), "--max-dim", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "b0 = 0\nb1 = 1\nb2 = 0\n");
    let o = run(&["betti", path_arg(&fixture("sphere_two_disc")), "--max-dim", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("b2 = 1"));
    let o = run(&["betti", path_arg(&fixture("sphere_two_disc")), "--max-dim", "3", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["values"], serde_json::json!([0, 0, 1, 0]));
}

#[test]
fn betti_refuses_uncertified_degrees() {
    let o = run(&["betti", path_arg(&fixture("circle")), "--max-dim", "12"]);
    assert!(!o.status.success());
}

#[test]
fn malformed_faces_name_the_simplex() {
    let path = std::env::temp_dir().join(format!("stunted-bad-{}.toml", std::process::id()));
    std::fs::write(
        &path,
        "truncation = 3\nsimplices = [[\"*\"], [\"e\"], [\"g\"]]\n\n[faces]\ne = [\"*\", \"*\"]\ng = [\"e\", \"s0@*\"]\n",
    )
    .unwrap();
    let o = run(&["betti", path_arg(&path)]);
    std::fs::remove_file(&path).unwrap();
    assert!(!o.status.success());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("simplex `g`"), "{err}");
}

#[test]
fn verify_hemisphere_fixture() {
    let o = run(&["verify", path_arg(&fixture("four_discs")), "--s-max", "4", "--t-max", "6", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_agree"], true);
    let rows: Vec<u64> = v["loop_rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["formula"].as_u64().unwrap())
        .collect();
    assert_eq!(rows, vec![0, 2, 1, 5, 5, 14]);
    for r in v["loop_rows"].as_array().unwrap().iter().take(4) {
        assert_eq!(r["brute"], r["formula"]);
    }
    assert_eq!(v["cells"].as_array().unwrap().len(), 3 * 7);
}

#[test]
fn verify_trivial_circle() {
    let o = run(&["verify", path_arg(&fixture("trivial_circle")), "--s-max", "3", "--t-max", "5"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("all paths agree"));
}

#[test]
fn verify_without_section() {
    let o = run(&["verify", path_arg(&fixture("free_double_cover")), "--s-max", "3", "--t-max", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("no section"));
    assert!(text.contains("  2   1        0"));
}

#[test]
fn verify_needs_an_involution() {
    let o = run(&["verify", path_arg(&fixture("circle"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("involution"));
}

#[test]
fn verify_csv() {
    let o = run(&["verify", path_arg(&fixture("four_discs")), "--s-max", "2", "--t-max", "3", "--csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,s,t,n,brute,mv,formula,agree"));
    assert_eq!(lines.next(), Some("pinched,2,0,,0,0,0,true"));
    assert!(text.contains("loop,,,2,2,2,2,true"));
}

/// Checks the subset of JSON Schema used by the shipped schema.
fn validate(schema: &Value, defs: &Value, v: &Value, path: &str) {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let name = r.trim_start_matches("#/$defs/");
        return validate(&defs[name], defs, v, path);
    }
    if let Some(ty) = schema.get("type") {
        let types: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => panic!("bad schema type"),
        };
        let ok = types.iter().any(|t| match *t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_u64() || v.is_i64(),
            "number" => v.is_number(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            _ => false,
        });
        assert!(ok, "{path}: expected {types:?}, got {v}");
    }
    if let (Some(min), Some(x)) = (schema.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        assert!(x >= min, "{path}: {x} < {min}");
    }
    if let Some(req) = schema.get("required").and_then(Value::as_array) {
        for k in req {
            let k = k.as_str().unwrap();
            assert!(v.get(k).is_some(), "{path}: missing {k}");
        }
    }
    if let (Some(props), Some(obj)) = (schema.get("properties").and_then(Value::as_object), v.as_object()) {
        for (k, sub) in props {
            if let Some(x) = obj.get(k) {
                validate(sub, defs, x, &format!("{path}.{k}"));
            }
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), v.as_array()) {
        for (i, x) in arr.iter().enumerate() {
            validate(items, defs, x, &format!("{path}[{i}]"));
        }
    }
}

#[test]
fn json_report_matches_schema() {
    let schema: Value =
        serde_json::from_str(&std::fs::read_to_string(root().join("schema/run_report.schema.json")).unwrap()).unwrap();
    for (name, s, t) in [("four_discs", "3", "4"), ("free_double_cover", "2", "2"), ("trivial_circle", "3", "3")] {
        let o = run(&["verify", path_arg(&fixture(name)), "--s-max", s, "--t-max", t, "--json"]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        validate(&schema, &schema["$defs"], &v, name);
    }
}

#[test]
fn conjecture_rows() {
    let o = run(&["conjecture", "--n-max", "12"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let body: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(body.len(), 12);
    assert!(body.iter().all(|l| l.ends_with(" ok")));
    assert!(body[11].contains("417"));

    let o = run(&["conjecture", "--n-max", "6", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let values: Vec<u64> = v.as_array().unwrap().iter().map(|r| r["closed_form"].as_u64().unwrap()).collect();
    assert_eq!(values, vec![0, 2, 1, 5, 5, 14]);

    let o = run(&["conjecture", "--n-max", "24"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let body: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(body.len(), 24);
    assert!(body[12..].iter().all(|l| l.contains("conjectured")));
    assert!(body[..12].iter().all(|l| !l.contains("conjectured")));

    assert!(!run(&["conjecture", "--n-max", "0"]).status.success());
}
