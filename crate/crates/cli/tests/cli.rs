use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const K5: &str = r#"{"n": 5, "edges": [[0,1,1],[0,2,1],[0,3,1],[0,4,1],[1,2,1],[1,3,1],[1,4,1],[2,3,1],[2,4,1],[3,4,1]]}"#;
const C4: &str = "# square\na b 1\nb c 1\nc d 1\nd a 1\n";
const LOOPY: &str = r#"{"n": 3, "edges": [[0,0,0.5],[0,1,1],[1,2,2],[2,0,1]]}"#;

struct Fixture {
    dir: TempDir,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        for (name, text) in [("k5.json", K5), ("c4.txt", C4), ("loopy.json", LOOPY), ("split.txt", "a b 1\nc d 1\n")] {
            std::fs::write(dir.path().join(name), text).unwrap();
        }
        Fixture { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_graph-spectra"))
            .current_dir(self.dir.path())
            .args(args)
            .output()
            .unwrap()
    }

    fn ok(&self, args: &[&str]) -> String {
        let out = self.run(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        String::from_utf8(out.stdout).unwrap()
    }

    fn json(&self, args: &[&str]) -> Value {
        serde_json::from_str(&self.ok(args)).unwrap()
    }
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(name: &str, value: &Value) {
    let v = schema(name);
    let errors: Vec<String> = v.iter_errors(value).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn schemas_reject_malformed_reports() {
    let bad = serde_json::json!({"eigenvalues": [0.0], "eigenfunctions": [[1.0]]});
    assert!(!schema("spectrum").is_valid(&bad));
    let bad = serde_json::json!({"n": 2, "edges": [[0, 1, -1.0]]});
    assert!(!schema("graph").is_valid(&bad));
}

#[test]
fn complete_graph_constants() {
    let f = Fixture::new();
    let v = f.json(&["constants", "--input", "k5.json"]);
    assert_eq!(v["h"]["value"], 0.75);
    assert_eq!(v["hbar"]["value"], 0.6);
    assert_eq!(v["h"]["method"], "exact");
    assert_eq!(v["C"], 1.0);
}

#[test]
fn bipartite_sandwich_is_vacuous() {
    let f = Fixture::new();
    let v = f.json(&["bounds", "--input", "c4.txt", "--l", "2"]);
    let sandwich = v.as_array().unwrap().iter().find(|r| r["name"] == "neighborhood_sandwich").unwrap();
    assert_eq!(sandwich["lower"], 0.0);
    assert_eq!(sandwich["upper"], 2.0);
}

#[test]
fn lattice_synchronizes_inside_the_window() {
    let f = Fixture::new();
    let v = f.json(&["cml", "--input", "k5.json", "--map", "logistic:4", "--eps", "0.8", "--steps", "5000"]);
    assert_eq!(v["synchronized"], true);
    assert_eq!(v["guaranteed"], true);
    let v = f.json(&["cml", "--input", "k5.json", "--eps", "0.05", "--steps", "2000"]);
    assert_eq!(v["synchronized"], false);
}

#[test]
fn csv_outputs() {
    let f = Fixture::new();
    let walk = f.ok(&["walk", "--input", "k5.json", "--steps", "4", "--l", "2"]);
    assert!(walk.starts_with("t,deviation,bound_rho,bound_hl\n"));
    assert_eq!(walk.lines().count(), 6);
    let walk = f.ok(&["walk", "--input", "c4.txt", "--f", "1,-1,1,-1", "--steps", "2"]);
    assert!(walk.lines().nth(1).unwrap().ends_with(','), "no h[l] bound requested");
    let curves = f.ok(&["curves", "--family", "example3", "--params", "1,3", "--l-list", "1,2"]);
    assert!(curves.starts_with("param,l,lower,upper_coro6,coro6_applicable,upper_coro59,lambda1,lambdaMax\n"));
    assert_eq!(curves.lines().count(), 5);
    let spread = f.ok(&["cml", "--input", "k5.json", "--eps", "0.8", "--steps", "100", "--format", "csv"]);
    assert!(spread.starts_with("t,max_spread\n"));
    assert_eq!(spread.lines().count(), 102);
}

#[test]
fn every_json_output_matches_its_schema() {
    let f = Fixture::new();
    for input in ["k5.json", "c4.txt", "loopy.json"] {
        assert_valid("spectrum", &f.json(&["spectrum", "--input", input]));
        assert_valid("constants", &f.json(&["constants", "--input", input]));
        assert_valid("bounds", &f.json(&["bounds", "--input", input, "--l-list", "1,2,3,4"]));
        assert_valid("graph", &f.json(&["neighborhood", "--input", input, "--l", "3"]));
        assert_valid("walk", &f.json(&["walk", "--input", input, "--l", "2", "--steps", "5", "--format", "json"]));
        assert_valid("cml", &f.json(&["cml", "--input", input, "--eps", "0.5", "--steps", "200"]));
    }
    assert_valid("curves", &f.json(&["curves", "--family", "example4", "--params", "0.5,1", "--format", "json"]));
    assert_valid("curves", &f.json(&["curves", "--family", "complete", "--params", "2.5,4", "--format", "json"]));
    // beyond the caps: null constants with recorded errors
    let v = f.json(&["constants", "--input", "k5.json", "--cap-h", "4", "--cap-hbar", "4"]);
    assert_valid("constants", &v);
    assert!(v["h"].is_null());
    assert_eq!(v["hbar"]["method"], "greedy");
    assert_eq!(v["R"]["method"], "greedy");
    assert!(v["errors"]["h"].as_str().unwrap().starts_with("SizeCapExceeded"));
    // divergent lattice: infinite spreads serialize as null
    let v = f.json(&["cml", "--input", "k5.json", "--eps", "3", "--steps", "200"]);
    assert_valid("cml", &v);
}

#[test]
fn identical_runs_give_identical_bytes() {
    let f = Fixture::new();
    let commands: [&[&str]; 7] = [
        &["spectrum", "--input", "loopy.json"],
        &["constants", "--input", "loopy.json"],
        &["bounds", "--input", "k5.json"],
        &["neighborhood", "--input", "c4.txt", "--l", "5"],
        &["curves", "--family", "example4"],
        &["walk", "--input", "loopy.json", "--l", "4"],
        &["cml", "--input", "loopy.json", "--eps", "0.6", "--steps", "500", "--seed", "7"],
    ];
    for (k, args) in commands.iter().enumerate() {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let name = format!("out{k}_{rep}");
            let mut full = args.to_vec();
            full.extend(["--output", &name]);
            f.ok(&full);
            outputs.push(std::fs::read(f.path(&name)).unwrap());
        }
        assert_eq!(outputs[0], outputs[1], "{args:?}");
        assert_eq!(outputs[0], f.ok(args).into_bytes(), "{args:?} stdout vs file");
    }
    let a = f.ok(&["cml", "--input", "loopy.json", "--eps", "0.6", "--steps", "500", "--seed", "7", "--format", "csv"]);
    let b = f.ok(&["cml", "--input", "loopy.json", "--eps", "0.6", "--steps", "500", "--seed", "8", "--format", "csv"]);
    assert_ne!(a, b, "seed must matter");
}

#[test]
fn output_is_written_atomically_in_place() {
    let f = Fixture::new();
    std::fs::write(f.path("report.json"), "stale").unwrap();
    f.ok(&["spectrum", "--input", "k5.json", "--output", "report.json"]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(f.path("report.json")).unwrap()).unwrap();
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 5);
    f.ok(&["cml", "--input", "k5.json", "--eps", "0.8", "--steps", "50", "--output", "sync.json", "--spread-csv", "spread.csv"]);
    assert!(std::fs::read_to_string(f.path("spread.csv")).unwrap().starts_with("t,max_spread\n"));
    let mut names: Vec<String> = std::fs::read_dir(f.dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["c4.txt", "k5.json", "loopy.json", "report.json", "split.txt", "spread.csv", "sync.json"]);
}

#[test]
fn exit_codes() {
    let f = Fixture::new();
    let out = f.run(&["constants", "--input", "split.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Disconnected"));
    let out = f.run(&["walk", "--input", "k5.json", "--l", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("InvalidInput"));
    std::fs::write(f.path("bad.json"), r#"{"n": 2, "edges": [[0, 1, -1]]}"#).unwrap();
    let out = f.run(&["spectrum", "--input", "bad.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NegativeWeight"));
    let out = f.run(&["spectrum", "--input", "missing.json"]);
    assert_eq!(out.status.code(), Some(1));
    for args in [
        &["spectrum"][..],
        &["frobnicate", "--input", "k5.json"],
        &["constants", "--input", "k5.json", "--cap-h", "25"],
        &["constants", "--input", "k5.json", "--cap-hbar", "15"],
        &["bounds", "--input", "k5.json", "--format", "csv"],
        &["neighborhood", "--input", "k5.json", "--l", "0"],
        &["cml", "--input", "k5.json", "--eps", "0.5", "--map", "sine:1"],
        &["curves", "--family", "petersen"],
        &["spectrum", "k5.json"],
    ] {
        assert_eq!(f.run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn help_documents_every_flag() {
    let f = Fixture::new();
    let flags = [
        ("cml", &["--input", "--output", "--format", "--map", "--eps", "--steps", "--transient", "--tol", "--trials", "--seed"][..]),
        ("bounds", &["--l", "--l-list", "--cap-h", "--cap-hbar"]),
        ("curves", &["--family", "--params", "--l-list"]),
        ("walk", &["--f", "--steps", "--l"]),
    ];
    for (cmd, names) in flags {
        let help = f.ok(&[cmd, "--help"]);
        for name in names {
            let line = help.lines().find(|l| l.trim_start().starts_with(name)).unwrap_or_else(|| panic!("{cmd} {name}"));
            assert!(line.trim().len() > name.len() + 4, "{cmd} {name} undocumented");
        }
    }
}
