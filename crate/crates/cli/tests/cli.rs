mod support;

use serde_json::json;
use support::{fixture, json, refinery, refinery_env, schema_errors};

#[test]
fn verify_hexagon_text() {
    let run = refinery(&["verify-hexagon"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("conjecture 1 disproved: yes"));
    assert!(run.stdout.contains("conjecture 3 disproved: yes"));
    assert!(run.stdout.contains("gamma = 1/2"));
    assert!(run.stdout.contains("v1: 1 1 1/2 0 0 1/2"));
}

#[test]
fn verify_hexagon_json_is_schema_valid_and_stable() {
    let a = refinery(&["verify-hexagon", "--format", "json"]);
    let b = refinery(&["verify-hexagon", "--format", "json"]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(schema_errors("verify-hexagon", &doc), Vec::<String>::new());
    assert_eq!(
        doc["conjectures"],
        json!({"c1_disproved": true, "c3_disproved": true})
    );
    assert_eq!(doc["gamma"], "1/2");
    assert_eq!(doc["compatibility"]["pairs_checked"], 48);
    for f in ["a", "b", "c", "d", "e"] {
        assert_eq!(doc["features"][f]["verdict"], true, "feature {f}");
    }
}

#[test]
fn corrupted_fixture_exits_two_and_names_features() {
    let run = refinery(&["verify-hexagon", "--corrupt-fixture", "--format", "json"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("failing features"), "{}", run.stderr);
    let doc = json(&run);
    assert_eq!(schema_errors("verify-hexagon", &doc), Vec::<String>::new());
    let failing: Vec<&str> = doc["failing_features"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert!(failing.contains(&"a"));
    assert_eq!(doc["verdict"], false);
}

#[test]
fn scan_four_to_eight_json() {
    let run = refinery(&["scan", "--n", "4..8", "--format", "json"]);
    assert_eq!(run.code, 0);
    let doc = json(&run);
    assert_eq!(schema_errors("scan", &doc), Vec::<String>::new());
    assert_eq!(doc["passing"], json!([[6, 3]]));
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2 + 3 + 4 + 5 + 6);
    let pass: Vec<_> = rows.iter().filter(|r| r["verdict"] == "PASS").collect();
    assert_eq!(pass.len(), 1);
}

#[test]
fn scan_single_cell() {
    let run = refinery(&["scan", "--n", "6", "--k", "3", "--format", "json"]);
    assert_eq!(run.code, 0);
    let doc = json(&run);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["verdict"], "PASS");
}

#[test]
fn scan_heptagon_fails_at_realizability() {
    let run = refinery(&["scan", "--n", "7", "--format", "json"]);
    assert_eq!(run.code, 0);
    let doc = json(&run);
    for row in doc["rows"].as_array().unwrap() {
        assert_eq!(row["failure_stage"], "realizability");
        assert!(!row["certificate"].as_array().unwrap().is_empty());
    }
}

#[test]
fn scan_rejects_bad_ranges() {
    for bad in ["2..5", "4..17", "8..4", "four"] {
        let run = refinery(&["scan", "--n", bad]);
        assert_eq!(run.code, 1, "--n {bad}");
    }
    assert_eq!(refinery(&["scan", "--k", "1..3"]).code, 1);
}

#[test]
fn thread_cap_does_not_change_output() {
    let base = refinery(&["scan", "--n", "3..8", "--format", "json"]);
    let one = refinery_env(
        &["scan", "--n", "3..8", "--format", "json"],
        &[("REFINERY_THREADS", "1")],
    );
    assert_eq!(base.stdout, one.stdout);
    let bad = refinery_env(&["scan"], &[("REFINERY_THREADS", "zero")]);
    assert_eq!(bad.code, 1);
}

#[test]
fn inspect_hexagon() {
    let run = refinery(&[
        "inspect",
        "--fixture",
        &fixture("hexagon.txt"),
        "--format",
        "json",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = json(&run);
    assert_eq!(schema_errors("inspect", &doc), Vec::<String>::new());
    assert_eq!(doc["dimension"], 2);
    assert_eq!(doc["vertex_count"], 6);
    assert_eq!(doc["facet_count"], 6);
    assert_eq!(doc["form_space"]["extreme_forms"], 8);
}

#[test]
fn inspect_simplex() {
    let run = refinery(&[
        "inspect",
        "--fixture",
        &fixture("simplex5.txt"),
        "--format",
        "json",
    ]);
    let doc = json(&run);
    assert_eq!(doc["dimension"], 5);
    assert_eq!(doc["is_simplex"], true);
    assert_eq!(doc["form_space"]["extreme_forms"], 64);
}

#[test]
fn inspect_notes_duplicates() {
    let run = refinery(&["inspect", "--fixture", &fixture("square_duplicates.txt")]);
    assert_eq!(run.code, 0);
    assert!(
        run.stdout.contains("duplicates removed: 2"),
        "{}",
        run.stdout
    );
    assert!(run.stdout.contains("extreme points: 4"));
}

#[test]
fn inspect_quadratic_field() {
    let run = refinery(&[
        "inspect",
        "--fixture",
        &fixture("pentagon_sqrt5.txt"),
        "--format",
        "json",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc = json(&run);
    assert_eq!(schema_errors("inspect", &doc), Vec::<String>::new());
    assert_eq!(doc["field"], "Q(sqrt 5)");
    assert_eq!(doc["vertex_count"], 5);
}

#[test]
fn inspect_input_errors_exit_one() {
    assert_eq!(
        refinery(&["inspect", "--fixture", "/definitely/not/here.txt"]).code,
        1
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 2\n3 nope\n").unwrap();
    let run = refinery(&["inspect", "--fixture", bad.to_str().unwrap()]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("line 2"), "{}", run.stderr);
    let ragged = dir.path().join("ragged.txt");
    std::fs::write(&ragged, "1 2\n3\n").unwrap();
    assert_eq!(
        refinery(&["inspect", "--fixture", ragged.to_str().unwrap()]).code,
        1
    );
}

/// Direction of each `<line>` in an SVG, normalised to a unit vector with
/// nonnegative first nonzero coordinate.
fn line_directions(svg: &str) -> Vec<(f64, f64)> {
    svg.lines()
        .filter(|l| l.trim_start().starts_with("<line"))
        .map(|l| {
            let attr = |name: &str| -> f64 {
                let key = format!("{name}=\"");
                let start = l.find(&key).unwrap() + key.len();
                l[start..].split('"').next().unwrap().parse().unwrap()
            };
            let (dx, dy) = (attr("x2") - attr("x1"), attr("y2") - attr("y1"));
            let n = (dx * dx + dy * dy).sqrt();
            let (dx, dy) = (dx / n, dy / n);
            if dx < -1e-9 || (dx.abs() < 1e-9 && dy < 0.0) {
                (-dx, -dy)
            } else {
                (dx, dy)
            }
        })
        .collect()
}

#[test]
fn svg_level_lines() {
    let v1 = refinery(&["svg"]);
    assert_eq!(v1.code, 0);
    assert!(v1.stdout.starts_with("<svg"));
    let d1 = line_directions(&v1.stdout);
    assert_eq!(d1.len(), 2);
    let parallel = |a: (f64, f64), b: (f64, f64)| (a.0 * b.1 - a.1 * b.0).abs() < 1e-6;
    assert!(parallel(d1[0], d1[1]));

    let v4 = refinery(&["svg", "--form", "v4"]);
    let d4 = line_directions(&v4.stdout);
    assert_eq!(d4.len(), 2);
    assert!(parallel(d1[0], d4[0]));

    let u = refinery(&["svg", "--form", "u"]);
    assert_eq!(u.code, 0);
    assert!(line_directions(&u.stdout).is_empty());

    assert_eq!(refinery(&["svg", "--form", "w2"]).code, 1);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let run = refinery(&[
        "scan",
        "--n",
        "6",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.is_empty());
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["command"], "scan");

    let svg = dir.path().join("pic.svg");
    assert_eq!(refinery(&["svg", "--out", svg.to_str().unwrap()]).code, 0);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("</svg>"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(refinery(&[]).code, 1);
    assert_eq!(refinery(&["frobnicate"]).code, 1);
    assert_eq!(refinery(&["scan", "--format", "yaml"]).code, 1);
    assert_eq!(refinery(&["--help"]).code, 0);
}
