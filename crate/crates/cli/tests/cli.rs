use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

fn circact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circact"))
        .args(args)
        .output()
        .expect("run circact")
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn catalog_file(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["catalog", name];
    full.extend_from_slice(args);
    let out = circact(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let path = dir.path().join(format!("{name}-{}.json", args.join("_")));
    fs::write(&path, &out.stdout).unwrap();
    path
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let kt = catalog_file(&dir, "kodaira-thurston", &[]);
    let out = circact(&["validate", kt.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "ok\n");

    let bad = fs::read_to_string(&kt).unwrap().replace("\"isotropy\": []", "\"isotropy\": [[4, 1]]");
    let bad = write(&dir, "bad.json", &bad);
    let out = circact(&["--format", "json", "validate", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("\"SumNotInteger\""));

    let broken = write(&dir, "broken.json", "{\"schema_version\": \"1\"");
    assert_eq!(code(&circact(&["validate", broken.to_str().unwrap()])), 3);
    assert_eq!(code(&circact(&["validate", "/nonexistent/file.json"])), 3);
}

#[test]
fn unknown_fields_are_parse_errors() {
    let dir = TempDir::new().unwrap();
    let kt = catalog_file(&dir, "kodaira-thurston", &[]);
    let text = fs::read_to_string(&kt).unwrap().replace("\"genus\"", "\"genus\": 1, \"colour\"");
    let path = write(&dir, "extra.json", &text);
    let out = circact(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}

#[test]
fn compare_exit_codes_name_the_invariant() {
    let dir = TempDir::new().unwrap();
    let a = catalog_file(&dir, "t2xs2", &["k=5", "l=2"]);
    let b = catalog_file(&dir, "t2xs2", &["k=5", "l=3"]);
    let c = catalog_file(&dir, "t2xs2", &["k=5", "l=1"]);
    let (a, b, c) = (a.to_str().unwrap(), b.to_str().unwrap(), c.to_str().unwrap());
    assert_eq!(code(&circact(&["compare", a, b])), 0);
    let out = circact(&["compare", a, c]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("distinct: isotropy"));

    let out = circact(&["--format", "json", "compare", a, c]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["invariant"], "isotropy");
    assert_eq!(v["verdict"], "distinct");
}

#[test]
fn compare_undecided_exits_four() {
    let dir = TempDir::new().unwrap();
    // Identity monodromy on a genus-2 surface with nonzero fibration classes.
    let doc = r#"{
  "presentation": {
    "c_dh": {"pi": "2"},
    "derham": [{}, {}, {}, {}],
    "fibration": [1, 0, 0, 0],
    "genus": 2,
    "isotropy": [],
    "monodromy": {"kind": "identity"},
    "tau": {"pi^-1": "1/2"}
  },
  "schema_version": "1"
}
"#;
    let a = write(&dir, "a.json", doc);
    let b = write(&dir, "b.json", &doc.replace("[1, 0, 0, 0]", "[0, 1, 0, 0]"));
    let out = circact(&["compare", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(code(&out), 4, "{}", stdout(&out));
}

#[test]
fn invariants_report() {
    let dir = TempDir::new().unwrap();
    let kt = catalog_file(&dir, "kodaira-thurston", &[]);
    let out = circact(&["invariants", kt.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("monodromy canonical form: parabolic(+, shear 1)"));
    assert!(text.contains("b1=2, b2=2"));
    assert!(text.contains("(euler number 0)"));

    let out = circact(&["--format", "json", "invariants", kt.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["b1"], 2);
    assert_eq!(v["euler_number"], "0");
}

#[test]
fn model_fills_zero_classes_and_witness() {
    let out = circact(&[
        "model",
        r#"{"tau": {"1": "1"}, "c_dh": {"1": "1"}, "genus": 0, "isotropy": [[5, 2], [5, 3]], "monodromy": {"kind": "identity"}}"#,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["witness"]["level_set"]["b"], -1);
    assert_eq!(v["presentation"]["fibration"], serde_json::json!([]));

    let out = circact(&["model", r#"{"tau": {"1": "-1"}, "c_dh": {"1": "1"}, "genus": 0, "isotropy": [], "monodromy": {"kind": "identity"}}"#]);
    assert_eq!(code(&out), 2);
}

#[test]
fn catalog_errors_and_usage() {
    assert_eq!(code(&circact(&["catalog", "nowhere"])), 64);
    assert_eq!(code(&circact(&["catalog", "t2xs2", "k=4", "l=2"])), 2);
    assert_eq!(code(&circact(&["catalog", "t2xs2", "q=1"])), 64);
    assert_eq!(code(&circact(&["frobnicate"])), 64);
    assert_eq!(code(&circact(&["--search-budget", "many", "catalog", "t2xs2"])), 64);
    assert_eq!(code(&circact(&["--help"])), 0);
}

#[test]
fn catalog_output_is_deterministic() {
    let a = circact(&["catalog", "t2xt2", "k=2", "l=3"]);
    let b = circact(&["catalog", "t2xt2", "k=2", "l=3"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
