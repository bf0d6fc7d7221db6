use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use squanta_cli::workspace::{Value, FIXTURES};
use squanta_cli::{load, load_sources, CliError, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION};
use squanta_core::fixtures;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn squanta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_squanta"))
        .args(args)
        .env_remove("SQUANTA_WORKERS")
        .output()
        .expect("run squanta")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn src(name: &str, text: &str) -> Vec<(String, String)> {
    vec![(name.to_string(), text.to_string())]
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("squanta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
    p
}

#[test]
fn base_file_loads() {
    let ws = load(&[fixture_dir().join("base.json")]).unwrap();
    assert_eq!(ws.names().collect::<Vec<_>>(), ["D2", "C2", "N2", "M2", "A3"]);
    assert!(ws.entries.iter().all(|e| e.value.is_ok()));
    assert_eq!(ws.get("N2").unwrap().line, 5);
}

#[test]
fn fixtures_match_library() {
    let all: Vec<(String, String)> = FIXTURES.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect();
    let ws = load_sources(&all).unwrap();
    let get = |n: &str| ws.get(n).unwrap().value.as_ref().unwrap();
    let Value::Quantale(q) = get("N2") else { panic!() };
    assert_eq!(q, &fixtures::n2());
    let Value::Module(m) = get("A3-mod") else { panic!() };
    assert_eq!(m.table(), fixtures::a3_module().table());
    let Value::Module(m) = get("A·2") else { panic!() };
    assert_eq!(m.table(), fixtures::a_dot_2().table());
    let Value::Module(m) = get("P(M2)-two") else { panic!() };
    assert_eq!(m.table(), fixtures::pm2_two().table());
    let Value::Poset(x) = get("C2") else { panic!() };
    assert_eq!(x, &fixtures::c2());
}

#[test]
fn broken_entries_are_kept() {
    let all: Vec<(String, String)> = FIXTURES.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect();
    let ws = load_sources(&all).unwrap();
    for n in ["A3-broken", "C2-nonmonotone", "bad-hom", "lopsided-quotient"] {
        let b = ws.get(n).unwrap().value.as_ref().unwrap_err();
        assert!(b.error.is_violation(), "{n}: {:?}", b.error);
    }
}

#[test]
fn duplicate_names_are_rejected() {
    let text = r#"{"structures": [
        {"name": "N2", "poset": {"elements": ["x"], "leq": []}}
    ]}"#;
    let mut s = src("base.json", &std::fs::read_to_string(fixture_dir().join("base.json")).unwrap());
    s.extend(src("dup.json", text));
    let e = load_sources(&s).unwrap_err();
    assert!(matches!(&e, CliError::DuplicateName { name, line: 2, .. } if name == "N2"), "{e}");
    assert_eq!(e.exit_code(), EXIT_INPUT);
}

#[test]
fn reference_cycles_dangle() {
    let text = r#"{"structures": [
        {"name": "P", "submodule": {"module": "Q", "generator": "0"}},
        {"name": "Q", "submodule": {"module": "P", "generator": "0"}}
    ]}"#;
    let e = load_sources(&src("cycle.json", text)).unwrap_err();
    assert!(matches!(e, CliError::DanglingReference { .. }), "{e}");
    let text = r#"{"structures": [{"name": "P", "submodule": {"module": "nowhere", "generator": "0"}}]}"#;
    let e = load_sources(&src("missing.json", text)).unwrap_err();
    assert!(matches!(&e, CliError::DanglingReference { reference, .. } if reference == "nowhere"), "{e}");
}

#[test]
fn parse_errors_report_position() {
    let text = "{\"structures\": [\n  {\"name\": \"x\",\n  oops\n]}";
    let e = load_sources(&src("bad.json", text)).unwrap_err();
    let CliError::Parse { line, .. } = e else { panic!("{e}") };
    assert_eq!(line, 3);
}

#[test]
fn exit_codes() {
    assert_eq!(squanta(&["correspond", "N2"]).status.code(), Some(EXIT_OK));
    assert_eq!(squanta(&["validate", "A3-broken"]).status.code(), Some(EXIT_VIOLATION));
    assert_eq!(squanta(&["projective", "P(M2)-two"]).status.code(), Some(EXIT_VIOLATION));
    assert_eq!(squanta(&["validate", "no-such-thing"]).status.code(), Some(EXIT_INPUT));
    assert_eq!(squanta(&["search", "--size", "9"]).status.code(), Some(EXIT_INPUT));
    let bad = temp_file("bad.json", "{ nope");
    assert_eq!(squanta(&["--config", bad.to_str().unwrap(), "list"]).status.code(), Some(EXIT_INPUT));
}

#[test]
fn summaries() {
    let out = stdout(&squanta(&["correspond", "N2"]));
    assert!(out.contains("N2: nuclei: 3, consequences: 3, congruences: 3, round-trips: OK"), "{out}");
    let out = stdout(&squanta(&["projective", "A·2"]));
    assert!(out.contains("A·2: conditions (ii)-(v): PASS, lifting: not run"), "{out}");
    let out = stdout(&squanta(&["quotient", "A3-mod", "gamma"]));
    assert!(out.contains("result: PASS"), "{out}");
}

#[test]
fn json_output() {
    let o = squanta(&["--json", "correspond", "N2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["command"], "correspond");
    assert!(v["lines"].as_array().unwrap().iter().all(|l| l["status"] == "pass"));
    let o = squanta(&["--json", "validate", "nothing-here"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exit"], EXIT_INPUT);
}

#[test]
fn config_files_extend_fixtures() {
    let text = r#"{"settings": {"fragment": 2}, "structures": [
        {"name": "C3", "poset": {"elements": ["x", "y", "z"], "leq": [["x", "y"], ["y", "z"], ["x", "z"]]}},
        {"name": "open", "poset": {"elements": ["x", "y", "z"], "leq": [["x", "y"], ["y", "z"]]}}
    ]}"#;
    let p = temp_file("c3.json", text);
    let out = stdout(&squanta(&["--config", p.to_str().unwrap(), "list"]));
    assert!(out.contains("C3: poset"), "{out}");
    assert!(out.contains("multiplicity <= 2"), "{out}");
    let o = squanta(&["--config", p.to_str().unwrap(), "validate", "open"]);
    assert_eq!(o.status.code(), Some(EXIT_VIOLATION));
    assert!(stdout(&o).contains("transitivity fails at (x, y, z)"));
    let out = stdout(&squanta(&["--no-fixtures", "--config", p.to_str().unwrap(), "list"]));
    assert!(!out.contains("N2"), "{out}");
}

#[test]
fn workers_from_env_and_determinism() {
    let o = Command::new(env!("CARGO_BIN_EXE_squanta"))
        .args(["search", "--suite", "gen-distributivity", "--size", "3"])
        .env("SQUANTA_WORKERS", "1")
        .output()
        .unwrap();
    let one = stdout(&o);
    assert!(one.contains("workers 1"), "{one}");
    let many = stdout(&squanta(&["--workers", "3", "search", "--suite", "gen-distributivity", "--size", "3"]));
    let strip = |s: &str| s.lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(strip(&one), strip(&many));
}
