use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    root().join("tests/fixtures").join(name).display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    json: Value,
}

fn run_env(args: &[&str], env: &[(&str, &Path)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coxsheaf"));
    cmd.args(args).env_remove("COXSHEAF_CORPUS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8");
    let json = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{args:?}: not JSON ({e}): {stdout}"));
    Run { code: out.status.code().expect("exit code"), stdout, json }
}

fn run(args: &[&str]) -> Run {
    run_env(args, &[])
}

fn schema_for(command: &str) -> Value {
    let file = format!("{}.schema.json", command.replace([' ', '-'], "_"));
    let text = std::fs::read_to_string(root().join("schemas").join(file)).expect("schema file");
    serde_json::from_str(&text).expect("schema parses")
}

fn assert_valid(schema: &Value, instance: &Value) {
    let validator = jsonschema::validator_for(schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(instance).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}\n{instance:#}");
}

/// Runs twice, checks exit 0, byte-identical output and the schema.
fn ok(args: &[&str]) -> Value {
    let a = run(args);
    assert_eq!(a.code, 0, "{args:?}: {}", a.stdout);
    let b = run(args);
    assert_eq!(a.stdout, b.stdout, "{args:?} is not deterministic");
    let command = a.json["command"].as_str().expect("command name").to_string();
    assert_valid(&schema_for(&command), &a.json);
    a.json["result"].clone()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().expect("array").iter().map(|x| x.as_str().expect("string").to_string()).collect()
}

fn binomial(n: i64, k: i64) -> i64 {
    if n < k || k < 0 {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn every_subcommand_validates_and_is_deterministic() {
    let free = fixture("free_pair.json");
    let diag = fixture("diagonal.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["fan", "validate", "p2"],
        vec!["fan", "report", "p112"],
        vec!["fan", "report", "rays_only", "--no-default-flags", "--flag", "noetherian=true"],
        vec!["grading", "build", "p1xp1"],
        vec!["pic", "quadric_cone"],
        vec!["subgroup", "classify", "p112", "--subgroup", "[[2]]"],
        vec!["cox", "build", "p2", "--subgroup", "[[2]]"],
        vec!["cox", "build", "rays_only", "--bound", "3"],
        vec!["chart", "p112", "0,2"],
        vec!["ideal", "saturate", "p2", "--ideal", "Z1^2,Z1*Z2,Z1*Z3"],
        vec!["module", "sections", "p2", "--degrees", "0..2"],
        vec!["module", "torsion", "p2", "--quotient", "Z1,Z2,Z3"],
        vec!["sheaf", "xi-check", "p2", "--module", &free, "--elements", &diag],
        vec!["sheaf", "lift", "p2", "--ideal", "Z1^2,Z1*Z2,Z1*Z3"],
        vec!["corpus", "list"],
    ];
    for args in runs {
        ok(&args);
    }
}

#[test]
fn p2_fixture_has_seven_cones() {
    let r = ok(&["fan", "validate", "p2"]);
    let text = std::fs::read_to_string(root().join("corpus/p2.json")).unwrap();
    let input: Value = serde_json::from_str(&text).unwrap();
    // Faces of simplicial maximal cones are all subsets of their rays.
    let mut faces = BTreeSet::new();
    for c in input["max_cones"].as_array().unwrap() {
        let ids: Vec<u64> = c.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
        for mask in 0..(1u32 << ids.len()) {
            faces.insert(ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| *x).collect::<Vec<_>>());
        }
    }
    assert_eq!(faces.len(), 7);
    assert_eq!(r["cone_count"], 7);
    assert_eq!(r["fan"]["rays"], input["rays"]);
}

#[test]
fn fan_round_trips_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["p2", "p1xp1", "p112", "quadric_cone", "rays_only", "empty"] {
        let first = ok(&["fan", "validate", name]);
        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, first["fan"].to_string()).unwrap();
        let second = ok(&["fan", "validate", path.to_str().unwrap()]);
        assert_eq!(first, second, "{name}");
    }
}

#[test]
fn report_for_p2() {
    let r = ok(&["fan", "report", "p2"]);
    assert_eq!(r["properties"]["complete"], true);
    let proper = r["verdicts"].as_array().unwrap().iter().find(|v| v["property"] == "proper").unwrap();
    assert_eq!(proper["verdict"], "holds");
}

#[test]
fn undeclared_flags_give_conditional_verdicts() {
    let r = ok(&["fan", "report", "p2", "--no-default-flags"]);
    let reduced = r["verdicts"].as_array().unwrap().iter().find(|v| v["property"] == "reduced").unwrap();
    assert_eq!(reduced["verdict"], "conditional");
    assert_eq!(reduced["condition"], "reduced");
}

#[test]
fn grading_and_picard_of_p112() {
    let g = ok(&["grading", "build", "p112"]);
    assert_eq!(g["ray_degrees"], serde_json::json!([["1"], ["2"], ["1"]]));
    let p = ok(&["pic", "p112"]);
    assert_eq!(p["index"], "2");
    assert_eq!(ok(&["pic", "quadric_cone"])["generators"], serde_json::json!([]));
}

#[test]
fn saturation_examples() {
    let r = ok(&["ideal", "saturate", "p2", "--ideal", "Z1^2,Z1*Z2,Z1*Z3"]);
    assert_eq!(strings(&r["generators"]), ["Z1"]);
    assert_eq!(r["already_saturated"], false);
    // ⟨Z1Z2, Z1Z3⟩ = ⟨Z1⟩ ∩ ⟨Z2, Z3⟩ and ⟨Z2, Z3⟩ is not irrelevant.
    let r = ok(&["ideal", "saturate", "p2", "--ideal", "Z1*Z2,Z1*Z3"]);
    assert_eq!(strings(&r["generators"]), ["Z1*Z2", "Z1*Z3"]);
    assert_eq!(r["already_saturated"], true);
}

#[test]
fn sections_of_p2_match_monomial_counts() {
    let r = ok(&["module", "sections", "p2", "--degrees=-2..4"]);
    for row in r["sections"].as_array().unwrap() {
        let d: i64 = row["degree"][0].as_str().unwrap().parse().unwrap();
        let expected = binomial(d + 2, 2);
        assert_eq!(row["via_shift"], expected, "degree {d}");
        assert_eq!(row["via_twist"], expected, "degree {d}");
        assert_eq!(row["eta_bijective"], true);
    }
}

#[test]
fn module_file_with_relation() {
    // Z1·e0 = e1/2 makes the module free of rank one.
    let m = fixture("free2.json");
    let r = ok(&["module", "sections", "p2", "--module", &m, "--degrees", "[[0],[1],[2]]"]);
    let dims: Vec<i64> = r["sections"].as_array().unwrap().iter().map(|s| s["via_shift"].as_i64().unwrap()).collect();
    assert_eq!(dims, [1, 3, 6]);
    assert_eq!(r["module"]["relations"][0][1]["coefficient"], "-1/2");
}

#[test]
fn irrelevant_quotients_are_torsion() {
    for ideal in ["Z1,Z2,Z3", "Z1^2,Z1*Z2,Z1*Z3,Z2^2,Z2*Z3,Z3^2"] {
        let r = ok(&["module", "torsion", "p2", "--quotient", ideal]);
        assert_eq!(r["torsion"], true);
        assert_eq!(r["zero_sheaf"], true);
    }
    let r = ok(&["module", "torsion", "p2", "--quotient", "Z1"]);
    assert_eq!(r["torsion"], false);
    assert_eq!(r["zero_sheaf"], false);
}

#[test]
fn xi_check_and_lift() {
    let r = ok(&["sheaf", "xi-check", "p2", "--ideal", "Z1^2,Z1*Z2,Z1*Z3"]);
    assert_eq!(r["preimage_equals_saturation"], true);
    assert_eq!(r["saturated"], false);
    assert_eq!(r["family_compatible"], true);
    let r = ok(&["sheaf", "lift", "p2", "--ideal", "Z1^2,Z1*Z2,Z1*Z3"]);
    assert_eq!(r["round_trip"], true);
}

#[test]
fn broken_fan_exits_1() {
    let r = run(&["fan", "validate", &fixture("broken.json")]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json["error"]["reason"], "FanInvalid");
    assert_valid(&schema_for("fan validate"), &r.json);
}

#[test]
fn malformed_json_exits_2() {
    let r = run(&["fan", "validate", &fixture("malformed.json")]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json["error"]["reason"], "ParseError");
    assert_eq!(r.json["error"]["line"], 4);
    assert_valid(&schema_for("fan validate"), &r.json);
}

#[test]
fn missing_file_and_bad_usage_exit_2() {
    let r = run(&["fan", "validate", "no/such/fan.json"]);
    assert_eq!((r.code, r.json["error"]["reason"].as_str()), (2, Some("Io")));
    let r = run(&["fan", "frobnicate"]);
    assert_eq!((r.code, r.json["error"]["reason"].as_str()), (2, Some("Usage")));
    assert_valid(&schema_for("error"), &r.json);
    let r = run(&["ideal", "saturate", "p2", "--ideal", "Z9"]);
    assert_eq!((r.code, r.json["error"]["reason"].as_str()), (2, Some("ParseError")));
}

#[test]
fn domain_errors_exit_1() {
    let r = run(&["cox", "build", "p2", "--subgroup", "[[0]]"]);
    assert_eq!((r.code, r.json["error"]["reason"].as_str()), (1, Some("NotBig")));
    let r = run(&["chart", "p2", "0,1,2"]);
    assert_eq!((r.code, r.json["error"]["reason"].as_str()), (1, Some("ConeNotInFan")));
    let r = run(&["module", "sections", "p2", "--degrees", "0..1", "--k", "0"]);
    assert_eq!((r.code, r.json["error"]["reason"].as_str()), (1, Some("ZeroBound")));
}

#[test]
fn non_primitive_rays_are_normalized() {
    let r = run(&["fan", "validate", &fixture("nonprimitive.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["result"]["fan"]["rays"][0], serde_json::json!([1, 0]));
    let w = &r.json["warnings"][0];
    assert_eq!(w["reason"], "NonPrimitiveRay");
    assert_eq!(w["ray"], 0);
    assert_eq!(w["given"], serde_json::json!([2, 0]));
    assert_valid(&schema_for("fan validate"), &r.json);
}

#[test]
fn corpus_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(root().join("corpus/p112.json"), dir.path().join("mine.json")).unwrap();
    let r = run_env(&["pic", "mine"], &[("COXSHEAF_CORPUS", dir.path())]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json["result"]["index"], "2");
    assert_eq!(run(&["pic", "mine"]).code, 2);
}

#[test]
fn bundled_corpus_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("export");
    ok(&["corpus", "export", out.to_str().unwrap()]);
    for entry in std::fs::read_dir(&out).unwrap() {
        let path = entry.unwrap().path();
        let bundled = root().join("corpus").join(path.file_name().unwrap());
        assert_eq!(std::fs::read_to_string(&path).unwrap(), std::fs::read_to_string(bundled).unwrap(), "{path:?}");
    }
}

#[test]
fn input_schemas_accept_fixtures() {
    let load = |p: PathBuf| -> Value { serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap() };
    let fan = load(root().join("schemas/fan.schema.json"));
    for entry in std::fs::read_dir(root().join("corpus")).unwrap() {
        assert_valid(&fan, &load(entry.unwrap().path()));
    }
    let module = load(root().join("schemas/module.schema.json"));
    assert_valid(&module, &load(root().join("tests/fixtures/free2.json")));
    assert_valid(&module, &load(root().join("tests/fixtures/free_pair.json")));
    assert_valid(&load(root().join("schemas/elements.schema.json")), &load(root().join("tests/fixtures/diagonal.json")));
}
