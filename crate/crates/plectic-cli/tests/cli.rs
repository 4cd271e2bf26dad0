//! End-to-end tests of the scenario pipeline: JSON loading, report shapes,
//! determinism, the builtin registry, and the binary's exit codes.

use plectic_cli::builtins::{builtin, list_builtins};
use plectic_cli::expr::{parse_expression, print_parsed};
use plectic_cli::report::{reports_to_json, Report};
use plectic_cli::scenario::{load_file, resolve, run_scenario, ScenarioFile};
use std::io::Write;
use std::process::Command;

#[test]
fn registry_contains_the_expected_scenarios() {
    let names = list_builtins();
    assert!(names.len() >= 12);
    for expect in [
        "sorn-2",
        "sphere-3",
        "string-su2",
        "sutraces",
        "noteq-torus",
        "translations-obstructed",
        "cartan3form-su2",
    ] {
        assert!(
            names.contains(&expect),
            "{expect} missing from the registry"
        );
    }
    for name in names {
        builtin(name).unwrap();
    }
    assert!(builtin("no-such-scenario").is_err());
}

#[test]
fn json_scenario_round_trips_and_runs() {
    let json = r#"{
        "name": "rotations-on-the-plane",
        "algebra": {"dim": 1, "names": ["e12"], "brackets": []},
        "action": {"type": "fields", "fields": ["x2 @x1 - x1 @x2"]},
        "manifold": {"type": "chart", "coords": ["x1", "x2"]},
        "omega": "dx1^dx2",
        "cartan": [{"args": [1], "value": "1/2 x1^2 + 1/2 x2^2"}],
        "moment": [{"args": [1], "value": "-1/2 x1^2 - 1/2 x2^2"}],
        "checks": ["jacobi", "extension", "verify-moment", "build-from-extension"]
    }"#;
    let file: ScenarioFile = serde_json::from_str(json).unwrap();
    let scenario = resolve(&file).unwrap();
    let report = run_scenario(&scenario);
    assert!(report.passed(), "{}", report.to_text());
    // the schema serializes back
    let again = serde_json::to_string(&file).unwrap();
    let file2: ScenarioFile = serde_json::from_str(&again).unwrap();
    assert!(run_scenario(&resolve(&file2).unwrap()).passed());
}

#[test]
fn json_scenario_with_levelset_manifold() {
    let json = r#"{
        "name": "sphere-area",
        "algebra": {"dim": 1, "names": ["e12"], "brackets": []},
        "action": {"type": "fields", "fields": ["x2 @x1 - x1 @x2"]},
        "manifold": {"type": "levelset", "coords": ["x1", "x2", "x3"],
                     "constraint": "x1^2 + x2^2 + x3^2 - 1", "points": 12},
        "omega": "x1 dx2^dx3 - x2 dx1^dx3 + x3 dx1^dx2",
        "cartan": [{"args": [1], "value": "-x3"}],
        "checks": ["jacobi", "extension", "build-from-cartan"]
    }"#;
    let file: ScenarioFile = serde_json::from_str(json).unwrap();
    let scenario = resolve(&file).unwrap();
    let report = run_scenario(&scenario);
    assert!(report.passed(), "{}", report.to_text());
}

#[test]
fn reports_are_deterministic() {
    for name in ["sorn-2", "noteq-torus", "string-su2"] {
        let a = run_scenario(&builtin(name).unwrap()).normalized();
        let b = run_scenario(&builtin(name).unwrap()).normalized();
        assert_eq!(
            reports_to_json(std::slice::from_ref(&a)),
            reports_to_json(&[b]),
            "{name}"
        );
        assert!(a.passed());
    }
}

#[test]
fn report_json_shape() {
    let r = run_scenario(&builtin("sutraces").unwrap());
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(json["scenario"], "sutraces");
    assert!(json["checks"].as_array().unwrap().len() >= 2);
    let first = &json["checks"][0];
    assert!(first.get("name").is_some());
    assert!(first.get("status").is_some());
    assert!(first.get("millis").is_some());
    let back: Report = serde_json::from_value(json).unwrap();
    assert_eq!(back.normalized(), r.normalized());
}

#[test]
fn builtin_expressions_round_trip_through_the_printer() {
    use plectic::chart::Chart;
    let charts = [
        Chart::standard(3),
        Chart::standard(4),
        Chart::new(vec!["theta1", "theta2", "z"]).unwrap(),
    ];
    let sources = [
        "x1 dx2^dx3 - x2 dx1^dx3 + x3 dx1^dx2",
        "-1/2 x1^2 - 1/2 x2^2",
        "x2 @x1 - x1 @x2",
        "dx1^dx2^dx3",
        "2/3 x1^2*x3 dx2",
    ];
    for chart in &charts {
        for src in &sources {
            let Ok(v) = parse_expression(src, chart) else {
                continue; // a source can reference coordinates absent here
            };
            let printed = print_parsed(&v);
            let reparsed = parse_expression(&printed, chart).unwrap();
            assert_eq!(v, reparsed, "{src} -> {printed}");
        }
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_plectic"))
}

#[test]
fn binary_runs_builtins_with_clean_exit() {
    let out = bin()
        .args(["builtin", "sorn-2", "heisenberg", "--format", "json"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let reports: Vec<Report> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(Report::passed));
}

#[test]
fn parallel_jobs_produce_the_same_reports() {
    let serial = bin()
        .args([
            "builtin",
            "sorn-2",
            "sorn-3",
            "heisenberg",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    let parallel = bin()
        .args([
            "builtin",
            "sorn-2",
            "sorn-3",
            "heisenberg",
            "--format",
            "json",
            "--jobs",
            "3",
        ])
        .output()
        .unwrap();
    assert!(serial.status.success() && parallel.status.success());
    let a: Vec<Report> = serde_json::from_slice(&serial.stdout).unwrap();
    let b: Vec<Report> = serde_json::from_slice(&parallel.stdout).unwrap();
    let norm = |rs: Vec<Report>| -> Vec<Report> { rs.iter().map(Report::normalized).collect() };
    assert_eq!(norm(a), norm(b));
}

#[test]
fn binary_lists_and_rejects_unknown_names() {
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() >= 12);
    let bad = bin().args(["builtin", "nope"]).output().unwrap();
    assert!(!bad.status.success());
}

#[test]
fn binary_checks_scenario_files_and_reports_failures() {
    let dir = std::env::temp_dir();
    let good = dir.join("plectic-good-scenario.json");
    let mut f = std::fs::File::create(&good).unwrap();
    write!(
        f,
        r#"{{
            "name": "plane-area",
            "algebra": "so2",
            "manifold": {{"type": "chart", "coords": ["x1", "x2"]}},
            "omega": "dx1^dx2",
            "cartan": [{{"args": [1], "value": "1/2 x1^2 + 1/2 x2^2"}}],
            "checks": ["jacobi", "extension", "build-from-extension"]
        }}"#
    )
    .unwrap();
    let out = bin()
        .args(["check", good.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    // a deliberately wrong potential fails the extension check, exit code 1
    let bad = dir.join("plectic-bad-scenario.json");
    let mut f = std::fs::File::create(&bad).unwrap();
    write!(
        f,
        r#"{{
            "name": "broken-extension",
            "algebra": "so2",
            "manifold": {{"type": "chart", "coords": ["x1", "x2"]}},
            "omega": "dx1^dx2",
            "cartan": [{{"args": [1], "value": "x1^2"}}],
            "checks": ["extension"]
        }}"#
    )
    .unwrap();
    let out = bin()
        .args(["check", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL"), "{text}");
    let _ = std::fs::remove_file(good);
    let _ = std::fs::remove_file(bad);
}

#[test]
fn load_file_reports_missing_and_malformed_inputs() {
    assert!(load_file(std::path::Path::new("/nonexistent/scenario.json")).is_err());
    let dir = std::env::temp_dir();
    let p = dir.join("plectic-malformed.json");
    std::fs::write(&p, "{not json").unwrap();
    assert!(load_file(&p).is_err());
    let _ = std::fs::remove_file(p);
}

#[test]
fn randomized_print_parse_round_trip() {
    use plectic::chart::Chart;
    use plectic::rng::Rng;
    use plectic::suite::{random_form, random_multivec, random_poly};
    use plectic_cli::expr::Parsed;
    let mut rng = Rng::new(0xf00d);
    for _ in 0..120 {
        let n = 2 + rng.usize(4);
        let chart = Chart::standard(n);
        let pick = rng.usize(3);
        let value = match pick {
            0 => Parsed::Poly(random_poly(&mut rng, &chart, 4, 4)),
            1 => {
                let deg = 1 + rng.usize(n);
                Parsed::Form(random_form(&mut rng, &chart, deg, 3))
            }
            _ => {
                let deg = 1 + rng.usize(n);
                Parsed::MultiVec(random_multivec(&mut rng, &chart, deg, 3))
            }
        };
        // zero forms print as "0", which reparses as the zero polynomial
        let is_zero = match &value {
            Parsed::Poly(p) => p.is_zero(),
            Parsed::Form(f) => f.is_zero(),
            Parsed::MultiVec(v) => v.is_zero(),
        };
        if is_zero {
            continue;
        }
        let printed = print_parsed(&value);
        let reparsed = parse_expression(&printed, &chart).unwrap();
        assert_eq!(value, reparsed, "{printed}");
    }
}

#[test]
fn shipped_scenario_files_pass() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let scenario = load_file(&path).unwrap();
        let report = run_scenario(&scenario);
        assert!(report.passed(), "{}: {}", path.display(), report.to_text());
        seen += 1;
    }
    assert!(
        seen >= 4,
        "expected the shipped scenario files to be present"
    );
}

#[test]
fn malformed_scenario_data_yields_errors_not_panics() {
    let cases = [
        // wrong form degree in the Cartan table
        r#"{"name":"x","algebra":"so2","manifold":{"type":"chart","coords":["x1","x2"]},
            "omega":"dx1^dx2","cartan":[{"args":[1],"value":"dx1"}],"checks":["extension"]}"#,
        // out-of-range basis index
        r#"{"name":"x","algebra":"so2","manifold":{"type":"chart","coords":["x1","x2"]},
            "omega":"dx1^dx2","cartan":[{"args":[4],"value":"x1"}],"checks":["extension"]}"#,
        // wrong moment component degree
        r#"{"name":"x","algebra":"so2","manifold":{"type":"chart","coords":["x1","x2"]},
            "omega":"dx1^dx2","moment":[{"args":[1],"value":"dx1"}],"checks":["verify-moment"]}"#,
        // zero-based index
        r#"{"name":"x","algebra":"su2","extension":{"n":2,"cocycle":[{"args":[0,1,2],"value":"1"}]},
            "checks":["central-extension"]}"#,
        // cocycle arity mismatch
        r#"{"name":"x","algebra":"su2","extension":{"n":2,"cocycle":[{"args":[1,2],"value":"1"}]},
            "checks":["central-extension"]}"#,
        // non-polynomial level-set constraint
        r#"{"name":"x","algebra":"abelian1","manifold":{"type":"levelset","coords":["x1","x2"],
            "constraint":"dx1","points":4},"checks":["jacobi"]}"#,
    ];
    for (t, json) in cases.iter().enumerate() {
        let file: ScenarioFile = serde_json::from_str(json).unwrap();
        let outcome = std::panic::catch_unwind(|| resolve(&file));
        match outcome {
            Ok(Err(_)) => {}
            Ok(Ok(_)) => panic!("case {t} resolved although malformed"),
            Err(_) => panic!("case {t} panicked instead of erroring"),
        }
    }
}
