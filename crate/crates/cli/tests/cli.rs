use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::OnceLock;

use serde_json::Value;
use sigred::{parse_expression, print_elem, TowerFile, TowerSpec};

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    repo().join("fixtures").join(name).display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn sigred(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sigred"));
    cmd.args(args).env_remove("SIGRED_MAX_INT_BITS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn schema() -> &'static jsonschema::JSONSchema {
    static SCHEMA: OnceLock<jsonschema::JSONSchema> = OnceLock::new();
    SCHEMA.get_or_init(|| {
        let src = std::fs::read_to_string(repo().join("docs/result-schema.json")).unwrap();
        let value: Value = serde_json::from_str(&src).unwrap();
        jsonschema::JSONSchema::options()
            .with_draft(jsonschema::Draft::Draft202012)
            .compile(&value)
            .expect("schema compiles")
    })
}

/// Runs with `--json`, checks the document against the schema and the exit
/// code against the document.
fn json(args: &[&str], env: &[(&str, &str)]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let run = sigred(&all, env);
    let doc: Value =
        serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}\n{}", run.stdout, run.stderr));
    if let Err(errors) = schema().validate(&doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("document violates the schema: {msgs:?}\n{doc:#}");
    }
    assert_eq!(doc["exit_code"].as_i64(), Some(run.code as i64));
    (run.code, doc)
}

fn tower(name: &str) -> TowerSpec {
    TowerFile::load(Path::new(&fixture(name))).unwrap().tower().unwrap()
}

fn assert_round_trips(tower: &TowerSpec, s: &str) {
    let e = parse_expression(s, tower).unwrap_or_else(|err| panic!("`{s}` does not parse: {err}"));
    assert_eq!(print_elem(tower, &e), s);
}

#[test]
fn reduce_nested_quotient() {
    let nested = fixture("nested.toml");
    let (code, doc) = json(&["reduce", "--tower", &nested, "--expr", "t2/x"], &[]);
    assert_eq!(code, 0);
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["pair"]["r"], "1/(3*x^3)");
    assert_eq!(doc["pair"]["summable"], false);
    let t = tower("nested.toml");
    let g = parse_expression(doc["pair"]["g"].as_str().unwrap(), &t).unwrap();
    let expected = parse_expression("(3*x^3*t1*t2 - x^3*t1^3 - 3*x^2*t2 + 1)/(3*x^3)", &t).unwrap();
    assert!(t.is_constant(&(&g - &expected)));
    for key in ["g", "r"] {
        assert_round_trips(&t, doc["pair"][key].as_str().unwrap());
    }
}

#[test]
fn telescope_zero() {
    let (code, doc) = json(&["telescope", "--tower", &fixture("nested.toml"), "--expr", "0"], &[]);
    assert_eq!(code, 0);
    assert_eq!(doc["pair"]["g"], "0");
    assert_eq!(doc["pair"]["r"], "0");
    assert_eq!(doc["pair"]["summable"], true);
}

#[test]
fn parameterized_basis() {
    let nested = fixture("nested.toml");
    let (code, doc) = json(
        &[
            "param-telescope",
            "--tower",
            &nested,
            "--expr",
            "(1+t1-t2-x*t2)/((1+t1)*(1+x))",
            "--expr",
            "(x*t1+t1-x)/((x*t1+t1+1)*t1)",
            "--expr",
            "3*t2/(1+t1)",
        ],
        &[],
    );
    assert_eq!(code, 0);
    let rows = doc["basis"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let coeffs =
        |i: usize| -> Vec<&str> { rows[i]["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect() };
    assert_eq!(coeffs(0), ["0", "0", "0"]);
    assert_eq!(rows[0]["certificate"], "1");
    // rows are normalized, so (3, 0, 1; 3*t1) appears scaled by 1/3
    assert_eq!(coeffs(1), ["1", "0", "1/3"]);
    assert_eq!(rows[1]["certificate"], "t1");
    assert_eq!(coeffs(2), ["0", "1", "0"]);
    assert_eq!(rows[2]["certificate"], "x/t1");
}

#[test]
fn creative_recurrence_row() {
    let (code, doc) = json(
        &[
            "param-telescope",
            "--tower",
            &fixture("creative.toml"),
            "--expr",
            "t1/(n-x+1)",
            "--expr",
            "t1/(n-x+2)",
            "--expr",
            "t1/(n-x+3)",
        ],
        &[],
    );
    assert_eq!(code, 0);
    let rows = doc["basis"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let t = tower("creative.toml");
    let row: Vec<_> = rows[1]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| parse_expression(c.as_str().unwrap(), &t).unwrap())
        .collect();
    let expected: Vec<_> = ["-n-2", "2*n+5", "-n-3"].iter().map(|s| parse_expression(s, &t).unwrap()).collect();
    let scale = &expected[0] / &row[0];
    for (c, e) in row.iter().zip(&expected) {
        assert_eq!(&scale * c, *e);
    }
}

#[test]
fn sigma_check_verdicts() {
    let nested = fixture("nested.toml");
    let (_, doc) = json(&["sigma-check", "--tower", &nested, "--expr", "1/(3*x^3)"], &[]);
    assert_eq!(doc["sigma_check"]["is_sigma_monomial"], true);
    let (_, doc) = json(&["sigma-check", "--tower", &nested, "--expr", "2*x+1", "--level", "1"], &[]);
    assert_eq!(doc["sigma_check"]["is_sigma_monomial"], false);
    assert_eq!(doc["sigma_check"]["r"], "0");
}

#[test]
fn well_generated_tower() {
    let nested = fixture("nested.toml");
    let (code, doc) = json(&["well-generate", "--tower", &nested], &[]);
    assert_eq!(code, 0);
    let gens = doc["tower"]["generators"].as_array().unwrap();
    let names: Vec<&str> = gens.iter().map(|g| g["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["x", "u1", "u2"]);
    assert_eq!(gens[1]["delta"], "1/x");
    assert_eq!(gens[2]["delta"], "1/(2*x^2)");
    // the emitted file is itself a valid tower description
    let file = TowerFile::parse(doc["tower"]["file"].as_str().unwrap()).unwrap();
    let rebuilt = file.tower().unwrap();
    let image = parse_expression(gens[2]["image"].as_str().unwrap(), &rebuilt).unwrap();
    let expected = parse_expression("u2 + u1^2/2 + u1/x + 1/x^2", &rebuilt).unwrap();
    assert_eq!(image, expected);
}

#[test]
fn depth_reduction() {
    let (code, doc) = json(&["depth-reduce", "--tower", &fixture("nested.toml"), "--expr", "t2/x"], &[]);
    assert_eq!(code, 0);
    assert_eq!(doc["depth"]["depth_before"], 2);
    assert_eq!(doc["depth"]["depth_after"], 1);
    assert_eq!(doc["depth"]["r"], "1/(3*x^3)");
    assert_eq!(doc["depth"]["g"], "u1*u2 + 1/6*u1^3");
}

#[test]
fn numeric_verification() {
    let (code, doc) =
        json(&["verify", "--tower", &fixture("nested.toml"), "--expr", "t2/x", "--verify-range", "1..50"], &[]);
    assert_eq!(code, 0);
    assert_eq!(doc["verification"]["checked"], 50);
    assert_eq!(doc["verification"]["passed"], true);
    let (code, doc) = json(
        &[
            "reduce",
            "--tower",
            &fixture("creative.toml"),
            "--expr",
            "t1/(n-x+1)",
            "--verify-range",
            "0..20",
            "--param",
            "n=7/2",
        ],
        &[],
    );
    assert_eq!(code, 0);
    assert_eq!(doc["verification"]["passed"], true);
}

#[test]
fn bench_smoke() {
    let (code, doc) = json(&["bench", "--degrees", "0,3", "--trials", "2", "--seed", "5"], &[]);
    assert_eq!(code, 0);
    let rows = doc["bench"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["all_summable"] == true && r["trials"] == 2));
}

#[test]
fn exit_codes() {
    let nested = fixture("nested.toml");
    let harmonic = fixture("harmonic.toml");
    let missing = repo().join("fixtures/missing.toml").display().to_string();
    let cases: &[(&[&str], i32, &str)] = &[
        (&["reduce", "--tower", &nested, "--expr", "t2/x"], 0, "ok"),
        (&["reduce", "--tower", &nested, "--expr", "t2/x", "--require-summable"], 1, "not_summable"),
        (&["telescope", "--tower", &harmonic, "--expr", "1/(x+1)", "--require-summable"], 0, "ok"),
        (&["telescope", "--tower", &harmonic, "--expr", "t1/x", "--require-summable"], 1, "not_summable"),
        (&["param-telescope", "--tower", &harmonic, "--expr", "1/x^2", "--require-summable"], 1, "not_summable"),
        (&["reduce", "--tower", &nested, "--expr", "x/(x-x)"], 2, "error"),
        (&["reduce", "--tower", &nested, "--expr", "y+1"], 2, "error"),
        (&["reduce", "--tower", &nested, "--expr", "(x+"], 2, "error"),
        (&["reduce", "--tower", &missing, "--expr", "x"], 2, "error"),
        (&["reduce", "--tower", &nested, "--expr", "x", "--seed-reps", "t1=t1^2-1"], 2, "error"),
        (&["reduce", "--tower", &nested, "--expr", "1/t1", "--fast-path", "on"], 2, "error"),
        (&["sigma-check", "--tower", &nested, "--expr", "t2", "--level", "1"], 2, "error"),
    ];
    for (args, code, status) in cases {
        let (got, doc) = json(args, &[]);
        assert_eq!((got, doc["status"].as_str().unwrap()), (*code, *status), "{args:?}");
    }
}

#[test]
fn error_kinds() {
    let nested = fixture("nested.toml");
    let kind = |args: &[&str], env: &[(&str, &str)]| json(args, env).1["error"]["kind"].as_str().unwrap().to_string();
    assert_eq!(kind(&["reduce", "--tower", &nested, "--expr", "x/(x-x)"], &[]), "division_by_zero");
    assert_eq!(kind(&["reduce", "--tower", &nested, "--expr", "y"], &[]), "unknown_symbol");
    assert_eq!(kind(&["reduce", "--tower", &nested, "--expr", "x^^2"], &[]), "syntax");
    assert_eq!(
        kind(&["reduce", "--tower", &nested, "--expr", "(x+1)^40*t1"], &[("SIGRED_MAX_INT_BITS", "16")]),
        "size_limit"
    );
    let dir = std::env::temp_dir().join(format!("sigred-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let summable_gen = dir.join("summable.toml");
    std::fs::write(
        &summable_gen,
        "[[generator]]\nname = \"x\"\ndelta = \"1\"\n[[generator]]\nname = \"t\"\ndelta = \"2*x+1\"\n",
    )
    .unwrap();
    let path = summable_gen.display().to_string();
    assert_eq!(kind(&["reduce", "--tower", &path, "--expr", "1/t"], &[]), "not_sigma_monomial");
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "[[generator]]\nname = \"x\"\n").unwrap();
    assert_eq!(kind(&["reduce", "--tower", &bad.display().to_string(), "--expr", "1"], &[]), "invalid_tower");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn text_output_and_usage_errors() {
    let run = sigred(&["reduce", "--tower", &fixture("nested.toml"), "--expr", "t2/x"], &[]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("r = 1/(3*x^3)"), "{}", run.stdout);
    assert!(run.stdout.contains("summable: false"));
    let run = sigred(&["reduce", "--tower", &fixture("nested.toml"), "--expr", "1/(x-x)"], &[]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.starts_with("error: division by zero"), "{}", run.stderr);
    // malformed invocations are reported by the argument parser
    assert_eq!(sigred(&["reduce"], &[]).code, 2);
    assert_eq!(sigred(&["frobnicate"], &[]).code, 2);
}
