use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use codoku::bundle::Bundle;
use codoku::palette::PaletteGrid;
use codoku::presets::Setting;
use serde_json::{json, Value};

fn codoku(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codoku")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = codoku(args);
    assert!(
        out.status.success(),
        "codoku {args:?} failed:\n{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_example_palettes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ex");
    let stdout = ok(&["construct", "--perfect", "-t", "1", "--swap", "--out", s(&out)]);
    assert!(stdout.contains("minimum distance 3"));
    let palette = PaletteGrid::from_json(&fs::read_to_string(out.join("palette.json")).unwrap()).unwrap();
    let expected = vec![
        vec![1, 1, 2, 5, 1],
        vec![1, 2, 2, 2, 3],
        vec![3, 4, 2, 3, 3],
        vec![4, 4, 4, 5, 3],
        vec![1, 4, 5, 5, 5],
    ];
    assert_eq!(palette.rows(), expected);
    let code = read_json(&out.join("code.json"));
    assert_eq!(code["codewords"].as_array().unwrap().len(), 5);

    // the translate used for the games
    let out = dir.path().join("z5");
    ok(&["construct", "--perfect", "-t", "1", "--swap", "--offset", "2,2", "--out", s(&out)]);
    let palette = PaletteGrid::from_json(&fs::read_to_string(out.join("palette.json")).unwrap()).unwrap();
    assert_eq!(palette.cells(), Setting::Z5.palette().cells());

    let stdout = ok(&["construct", "--diameter", "--case", "II", "-t", "1"]);
    assert!(stdout.contains("diameter-II code t=1 over Z_8: 8 codewords, minimum distance 4"));
    let printed: Vec<Vec<u8>> = stdout
        .lines()
        .skip(2)
        .map(|l| l.split_whitespace().map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(printed, Setting::Z8CaseII.palette().rows());

    let out = dir.path().join("t2");
    ok(&["construct", "--perfect", "-t", "2", "--out", s(&out)]);
    let summary = read_json(&out.join("summary.json"));
    assert_eq!(summary["n"], 13);
    assert_eq!(summary["region_size"], 13);
    let palette = PaletteGrid::from_json(&fs::read_to_string(out.join("palette.json")).unwrap()).unwrap();
    assert!(palette.regions().iter().all(|r| r.len() == 13));
}

#[test]
fn construct_rejects_bad_parameters() {
    assert!(!codoku(&["construct", "--perfect", "--offset", "9,0"]).status.success());
    assert!(!codoku(&["construct", "--diameter", "--case", "II", "--index", "0"]).status.success());
    assert!(!codoku(&["construct", "--diameter", "--case", "II", "--index", "2"]).status.success());
    assert!(!codoku(&["construct", "-t", "1"]).status.success());
}

#[test]
fn enumerate_classify_and_expect() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    ok(&["construct", "--perfect", "--swap", "--offset", "2,2", "--out", s(&p.join("c"))]);
    let stdout = ok(&["enumerate", "--palette", s(&p.join("c/palette.json")), "--out", s(&p.join("e"))]);
    assert_eq!(stdout.trim(), "canonical=17 total=2040");

    let golden = p.join("table1.json");
    fs::write(
        &golden,
        json!({"groups": {
            "rot": {"histogram": {"4": 3, "2": 1, "1": 3}, "classes": 7, "order": 4},
            "trans": {"histogram": {"5": 3, "1": 2}, "classes": 5, "order": 5},
            "full": {"histogram": {"10": 1, "5": 1, "1": 2}, "classes": 4, "order": 20}
        }})
        .to_string(),
    )
    .unwrap();
    let census = p.join("e/census.bin");
    let table = ok(&["classify", "--census", s(&census), "--expect", s(&golden), "--out", s(&p.join("o"))]);
    assert!(table.contains("|      Total |   7 |         5 |            4 |"));
    assert!(p.join("o/orbits.md").exists());

    let wrong = p.join("wrong.json");
    fs::write(&wrong, json!({"groups": {"full": {"classes": 5}}}).to_string()).unwrap();
    let out = codoku(&["classify", "--census", s(&census), "--group", "full", "--expect", s(&wrong)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("/groups/full/classes: expected 5, got 4"));

    // generator words, and a census refused for a different palette
    let stdout = ok(&["classify", "--census", s(&census), "--group", "r; t1^3 t2"]);
    assert!(stdout.contains("|      Total |"));
    let out = codoku(&["classify", "--census", s(&census), "--setting", "z8-i"]);
    assert!(!out.status.success());
}

#[test]
fn special_grids_over_z5() {
    let stdout = ok(&["special", "--setting", "z5"]);
    assert!(stdout.contains("family of 10 codes: special canonical=2 total=240"));
}

#[test]
fn minimal_then_rate() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let golden = p.join("k4.json");
    fs::write(
        &golden,
        json!({"weights": [1200, 600, 120, 120], "rows": {"4": {"up_to_equivalence": 507, "total": 154200}}}).to_string(),
    )
    .unwrap();
    ok(&["minimal", "--setting", "z5", "--k", "4", "--out", s(p), "--expect", s(&golden)]);
    let files = fs::read_dir(p.join("minimal_k4")).unwrap().count();
    assert_eq!(files, 507);
    let csv = fs::read_to_string(p.join("minimal.csv")).unwrap();
    assert_eq!(csv.lines().nth(1), Some("4,42,100,340,25,507,154200"));

    let rated = p.join("rated");
    let stdout = ok(&["rate", "--puzzles", s(&p.join("minimal_k4")), "--runs", "10", "--seed", "1", "--out", s(&rated)]);
    assert!(stdout.starts_with("k=4: easy 219 "));
    let csv = fs::read_to_string(rated.join("levels.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("4,219,"));
    assert!(csv.lines().nth(1).unwrap().ends_with(",507"));
}

#[test]
fn outputs_do_not_depend_on_workers() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    for w in ["1", "3"] {
        let out = p.join(w);
        ok(&["--workers", w, "sample", "--setting", "z5", "--count", "6", "--seed", "9", "--out", s(&out.join("s"))]);
        ok(&["--workers", w, "rate", "--puzzles", s(&out.join("s/puzzles")), "--runs", "20", "--out", s(&out.join("r"))]);
        ok(&["--workers", w, "enumerate", "--setting", "z5", "--out", s(&out.join("e"))]);
    }
    for f in ["s/summary.json", "r/reports.json", "r/levels.csv", "e/census.bin", "e/summary.json"] {
        assert_eq!(fs::read(p.join("1").join(f)).unwrap(), fs::read(p.join("3").join(f)).unwrap(), "{f}");
    }
    let reports = read_json(&p.join("1/r/reports.json"));
    assert_eq!(reports[0]["base_seed"], 1);
    assert_eq!(reports[0]["runs"], 20);
}

#[test]
fn bundle_export() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    ok(&["sample", "--setting", "z5", "--count", "10", "--seed", "4", "--k", "4..7", "--out", s(&p.join("s"))]);
    ok(&["export-bundle", "--puzzles", s(&p.join("s/puzzles")), "--runs", "20", "--out", s(&p.join("b"))]);
    let bundle = Bundle::from_json(&fs::read_to_string(p.join("b/bundle.json")).unwrap()).unwrap();
    assert_eq!(bundle.puzzles.len(), 10);
    assert!(bundle.colors.len() >= 4);
    assert!(bundle.puzzles.iter().all(|e| e.puzzle.meta.difficulty.is_some()));

    let empty = p.join("empty");
    fs::create_dir(&empty).unwrap();
    let text = ok(&["export-bundle", "--puzzles", s(&empty)]);
    assert!(Bundle::from_json(&text).unwrap().puzzles.is_empty());

    fs::write(p.join("broken.json"), "{\"version\": 1}").unwrap();
    assert!(!codoku(&["export-bundle", "--puzzles", s(&p.join("broken.json"))]).status.success());
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(name);
    jsonschema::JSONSchema::compile(&read_json(&path)).expect("schema compiles")
}

fn assert_valid(schema: &jsonschema::JSONSchema, doc: &Value, what: &str) {
    if let Err(errors) = schema.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{what} violates its schema: {msgs:?}");
    }
}

#[test]
fn outputs_match_shipped_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    ok(&["construct", "--diameter", "-t", "1", "--out", s(&p.join("c"))]);
    assert_valid(&schema("palette.schema.json"), &read_json(&p.join("c/palette.json")), "palette");

    ok(&["sample", "--setting", "z5", "--count", "3", "--seed", "2", "--out", s(&p.join("s"))]);
    ok(&["export-bundle", "--puzzles", s(&p.join("s/puzzles")), "--runs", "5", "--out", s(&p.join("b"))]);
    let puzzle_schema = schema("puzzle.schema.json");
    let bundle = read_json(&p.join("b/bundle.json"));
    assert_valid(&schema("bundle.schema.json"), &bundle, "bundle");
    for entry in bundle["puzzles"].as_array().unwrap() {
        assert_valid(&puzzle_schema, entry, "bundle entry");
    }
    for f in fs::read_dir(p.join("s/puzzles")).unwrap() {
        assert_valid(&puzzle_schema, &read_json(&f.unwrap().path()), "puzzle");
    }

    let mut broken = bundle.clone();
    broken["colors"] = json!(["red"]);
    assert!(!schema("bundle.schema.json").is_valid(&broken));
}
