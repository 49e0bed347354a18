use std::process::Command as Process;

use gaudin_cli::*;
use serde_json::Value;

fn flagship() -> InstanceFile {
    parse_instance_str(fixture("flagship").unwrap().json).unwrap()
}

fn rejected(text: &str) -> InputError {
    parse_instance_str(text).unwrap_err()
}

fn edit(f: impl FnOnce(&mut Value)) -> String {
    let mut v: Value = serde_json::from_str(fixture("flagship").unwrap().json).unwrap();
    f(&mut v);
    v.to_string()
}

#[test]
fn fixtures_round_trip() {
    for f in FIXTURES {
        let once = parse_instance_str(f.json).unwrap_or_else(|e| {
            if f.expected_exit == 2 {
                // input-error fixtures are rejected by the parser itself
                return serde_json::from_str(f.json).unwrap();
            }
            panic!("{}: {e}", f.name)
        });
        let text = once.to_json();
        let twice: InstanceFile = serde_json::from_str(&text).unwrap();
        assert_eq!(once, twice, "{}", f.name);
        assert_eq!(text, twice.to_json(), "{}", f.name);
    }
}

#[test]
fn corpus_exit_codes() {
    for f in FIXTURES {
        let report = match parse_instance_str(f.json) {
            Ok(file) => run(f.command, &file, None),
            Err(e) => input_error_report(f.command, None, e),
        };
        assert_eq!(report.exit_code(), f.expected_exit, "{}: {}", f.name, report.summary());
    }
}

#[test]
fn distinctness_errors() {
    let e = rejected(&edit(|v| v["z"] = serde_json::json!(["1", "1"])));
    assert_eq!((e.path.as_str(), e.reason.as_str()), ("z", "evalPoints not distinct"));
    let e = rejected(&edit(|v| v["bethe"][0]["w"] = "0".into()));
    assert_eq!((e.path.as_str(), e.reason.as_str()), ("bethe[0].w", "root collides with evaluation point"));
    let e = rejected(&edit(|v| v["bethe"] = serde_json::json!([{"w": "1/3", "color": 1}, {"w": "2/6", "color": 1}])));
    assert_eq!(e.path, "bethe[1].w");
}

#[test]
fn schema_errors_carry_field_paths() {
    let e = rejected(&edit(|v| v["operators"][1]["kind"] = "det".into()));
    assert_eq!(e.path, "operators[1].kind");
    let e = rejected(&edit(|v| v["operators"][2] = serde_json::json!({"kind": "antisym-trace"})));
    assert_eq!(e.path, "operators[2].m");
    let e = rejected(&edit(|v| v["weights"][1] = serde_json::json!(["1", "0", "0"])));
    assert_eq!(e.path, "weights[1]");
    let e = rejected(&edit(|v| v["weights"][0][1] = "x".into()));
    assert_eq!(e.path, "weights[0][1]");
    let e = rejected(&edit(|v| v["bethe"][0]["color"] = 2.into()));
    assert_eq!(e.path, "bethe[0].color");
    let e = rejected(&edit(|v| v["family"] = "E".into()));
    assert_eq!(e.path, "family");
    let e = rejected(&edit(|v| v["sites"] = 3.into()));
    assert_eq!(e.path, "sites");
    let e = rejected(&edit(|v| v["extra"] = 1.into()));
    assert!(e.reason.contains("extra"), "{e}");
    assert_eq!(rejected("{").code, "schema");
}

#[test]
fn decimals_only_in_float_mode() {
    let e = rejected(&edit(|v| v["bethe"][0]["w"] = "0.5".into()));
    assert_eq!(e.path, "bethe[0].w");
    let e = rejected(&edit(|v| v["z"][1] = "1.0".into()));
    assert_eq!(e.path, "z[1]");
    let file = parse_instance_str(&edit(|v| {
        v["bethe"][0]["w"] = "0.45".into();
        v["mode"] = "float".into();
    }))
    .unwrap();
    assert_eq!(file.mode, Mode::Float);
    // the mode override re-validates
    assert_eq!(run(Command::Verify, &file, Some(Mode::Exact)).exit_code(), 2);
}

#[test]
fn exact_reports_are_deterministic() {
    let file = flagship();
    let a = run(Command::Verify, &file, None).to_json();
    let b = std::thread::spawn(move || run(Command::Verify, &file, None).to_json()).join().unwrap();
    assert_eq!(a, b);
    let r: Report = serde_json::from_str(&a).unwrap();
    assert_eq!(r.schema_version, SCHEMA_VERSION);
    assert!(r.checks.iter().flat_map(|c| &c.slices).all(|s| s.status == "exact-equal"));
    assert_eq!(r.bae_residuals, vec!["0"]);
}

#[test]
fn float_override_solves_the_seed() {
    let r = run(Command::Verify, &flagship(), Some(Mode::Float));
    assert_eq!(r.status, Status::Error, "masterfn needs exact roots: {}", r.summary());
    let mut file = flagship();
    file.checks = vec![Check::Eigen];
    let r = run(Command::Verify, &file, Some(Mode::Float));
    assert_eq!(r.status, Status::Pass, "{}", r.summary());
    assert!(r.checks.iter().flat_map(|c| &c.slices).all(|s| s.status == "float-close"));
}

#[test]
fn bethe_build_and_solve() {
    let r = run(Command::BetheBuild, &flagship(), None);
    let c = &r.checks[0];
    assert_eq!(c.status, Status::Pass);
    assert_eq!(c.data["terms"], 2);
    assert_eq!(c.data["weight"], serde_json::json!(["1", "1"]));
    // f at site 1 over (w − 0), f at site 2 over (w − 1)
    let f = gaudin_core::LieAlgebraSpec::gl(2).unwrap().index_of(1, 0).unwrap();
    let mut expected = serde_json::Map::new();
    expected.insert(format!("[[{f}], []]"), "2".into());
    expected.insert(format!("[[], [{f}]]"), "-2".into());
    assert_eq!(c.data["state"], Value::Object(expected));
    let r = run(Command::BaeSolve, &flagship(), None);
    assert_eq!(r.checks[0].data["solution"], "exact");
    assert_eq!(r.checks[0].data["roots"], serde_json::json!(["1/2"]));
    let file = parse_instance_str(fixture("gl3_bae").unwrap().json).unwrap();
    let r = run(Command::BaeSolve, &file, None);
    let roots = r.checks[0].data["roots"].as_array().unwrap();
    let w1: f64 = roots[0].as_str().unwrap().parse().unwrap();
    assert!((w1 - (1.0 - 0.5f64.sqrt())).abs() < 1e-12, "{w1}");
}

#[test]
fn character_commands() {
    let file = parse_instance_str(fixture("reduced_lambda_sum").unwrap().json).unwrap();
    let r = run(Command::Gr, &file, None);
    assert_eq!(r.checks[0].data["image"], "mu1^(0) + mu2^(0) + mu3^(0)");
    let file = parse_instance_str(fixture("lambda_sum").unwrap().json).unwrap();
    assert_eq!(run(Command::Gr, &file, None).checks[0].data["image"], "3");
    let r = run(Command::ScreenCheck, &parse_instance_str(fixture("not_a_character").unwrap().json).unwrap(), None);
    assert_eq!(r.status, Status::Fail);
    assert_ne!(r.checks[0].data["screenings"]["S1"], "0");
    let bad = parse_instance_str(r#"{"family": "A", "n": 2, "character": "l1(0"}"#).unwrap();
    let r = run(Command::Gr, &bad, None);
    assert_eq!(r.error.unwrap().path, "character");
    let missing = parse_instance_str(r#"{"family": "A", "n": 2}"#).unwrap();
    assert_eq!(run(Command::ScreenCheck, &missing, None).exit_code(), 2);
    let cdet = parse_instance_str(r#"{"family": "A", "n": 2, "operators": [{"kind": "cdet"}]}"#).unwrap();
    assert_eq!(run(Command::HcImage, &cdet, None).exit_code(), 2);
}

fn gaudin(args: &[&str]) -> (i32, Value, String) {
    let out = Process::new(env!("CARGO_BIN_EXE_gaudin")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

#[test]
fn binary_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flagship.json");
    std::fs::write(&path, fixture("flagship").unwrap().json).unwrap();
    let report = dir.path().join("out.json");
    let (code, json, stderr) =
        gaudin(&["verify", "--instance", path.to_str().unwrap(), "--report", report.to_str().unwrap()]);
    assert_eq!(code, 0, "{stderr}");
    assert_eq!(json["status"], "pass");
    assert!(stderr.contains("elapsed"));
    assert!(!json.to_string().contains("elapsed"));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written, json);

    let (code, json, _) = gaudin(&["verify", "--instance", "builtin:flagship_perturbed"]);
    assert_eq!(code, 1);
    let slices = json["checks"][0]["slices"].as_array().unwrap();
    assert!(slices.iter().any(|s| s["status"] == "mismatch" && s["k"] == 0));

    let (code, json, _) = gaudin(&["gr", "--instance", "builtin:reduced_lambda_sum"]);
    assert_eq!(code, 0);
    assert_eq!(json["checks"][0]["data"]["image"], "mu1^(0) + mu2^(0) + mu3^(0)");

    let (code, json, _) = gaudin(&["verify", "--instance", "builtin:bad_eval_points"]);
    assert_eq!(code, 2);
    assert_eq!(json["error"]["message"], "evalPoints not distinct");
    assert_eq!(gaudin(&["verify", "--instance", "/nonexistent.json"]).0, 2);
    assert_eq!(gaudin(&["frobnicate", "--instance", "builtin:flagship"]).0, 2);
}
