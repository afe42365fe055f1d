use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_snakepoly"))
        .args(args)
        .output()
        .expect("spawn snakepoly")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(o.status.success(), "{}", stderr(&o));
    serde_json::from_str(&stdout(&o)).expect("json output")
}

#[test]
fn expand_hexagon_text() {
    let o = run(&["expand", "--input", &fixture("hexagon.json")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = run(&[
        "expand",
        "--specialize",
        "--input",
        &fixture("hexagon.json"),
    ]);
    assert_eq!(stdout(&o).trim(), "(x1*x3 + x2^2 + 2*x2 + 1)/(x1*x2*x3)");
}

#[test]
fn expand_json_record() {
    let v = json(&[
        "expand",
        "--format",
        "json",
        "--input",
        &fixture("nonagon.json"),
    ]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 11);
    assert_eq!(v["denominator"], serde_json::json!([2, 3, 4, 5, 6]));
    assert!(v["terms"][0]["exponents"].as_array().unwrap().len() == 15);
}

#[test]
fn polytope_json_shape() {
    let v = json(&[
        "polytope",
        "--format",
        "json",
        "--input",
        &fixture("nonagon.json"),
    ]);
    assert_eq!(v["dimension"], 5);
    assert_eq!(v["facet_count"], 8);
    assert_eq!(v["inequalities"].as_array().unwrap().len(), 8);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 11);
    assert_eq!(v["form"], "shifted");

    let u = json(&[
        "polytope",
        "--unshifted",
        "--format",
        "json",
        "--input",
        &fixture("nonagon.json"),
    ]);
    assert_eq!(u["form"], "unshifted");
    // matching vectors are nonnegative
    for vert in u["vertices"].as_array().unwrap() {
        assert!(vert
            .as_array()
            .unwrap()
            .iter()
            .all(|x| x.as_i64().unwrap() >= 0));
    }
}

#[test]
fn fvector_and_lattice() {
    let o = run(&["fvector", "--input", &fixture("nonagon.json")]);
    assert_eq!(stdout(&o).trim(), "(11,31,39,25,8)");

    let v = json(&[
        "lattice",
        "--format",
        "json",
        "--input",
        &fixture("pentagon.json"),
    ]);
    // triangle: bottom, 3 vertices, 3 edges, top
    assert_eq!(v["elements"].as_array().unwrap().len(), 8);
    let dot = stdout(&run(&[
        "lattice",
        "--format",
        "dot",
        "--input",
        &fixture("quadrilateral.json"),
    ]));
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 4);
}

#[test]
fn snake_emitters() {
    let dot = stdout(&run(&[
        "snake",
        "--emit",
        "dot",
        "--input",
        &fixture("nonagon.json"),
    ]));
    assert!(dot.contains("graph"));
    let ascii = stdout(&run(&[
        "snake",
        "--emit",
        "ascii",
        "--input",
        &fixture("nonagon.json"),
    ]));
    assert!(ascii.contains('*'));
    let v = json(&[
        "snake",
        "--format",
        "json",
        "--input",
        &fixture("nonagon.json"),
    ]);
    let checks = v["structure_report"]["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn verify_exits_zero_on_fixtures() {
    for f in [
        "nonagon.json",
        "hexagon.json",
        "pentagon.json",
        "quadrilateral.json",
    ] {
        let o = run(&["verify", "--input", &fixture(f)]);
        assert!(o.status.success(), "{f}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn label_permutation_renames_output() {
    let spec =
        r#"{"vertex_count":4,"diagonals":[[0,2]],"gamma":[1,3],"label_permutation":[5,4,3,2,1]}"#;
    let o = run(&["expand", "--spec", spec]);
    assert!(o.status.success(), "{}", stderr(&o));
    // identity gives (x2*x4 + x3*x5)/(x1)
    assert_eq!(stdout(&o).trim(), "(x1*x3 + x2*x4)/(x5)");
}

#[test]
fn malformed_specs_name_the_field() {
    let cases = [
        (r#"{"vertex_count":6,"diagonal":[[1,3]]}"#, "diagonals"),
        (
            r#"{"vertex_count":6,"diagonals":[[1,3],[0,3]],"gamma":[2,5]}"#,
            "diagonals",
        ),
        (
            r#"{"vertex_count":6,"diagonals":[[1,3],[0,3],[0,4]],"gamma":[2,9]}"#,
            "gamma",
        ),
        (r#"{"vertex_count":2,"diagonals":[]}"#, "vertex_count"),
        (
            r#"{"vertex_count":4,"diagonals":[[0,2]],"gamma":[1,3],"label_permutation":[1,1,2,3,4]}"#,
            "label_permutation",
        ),
        (r#"{"vertex_count":4,"diagonals":[[0,2]]}"#, "gamma"),
    ];
    for (spec, field) in cases {
        let o = run(&["expand", "--spec", spec]);
        assert!(!o.status.success(), "{spec}");
        assert!(stderr(&o).contains(field), "{spec}: {}", stderr(&o));
    }
}

#[test]
fn sweep_cap_and_small_sweep() {
    let o = run(&["sweep", "--max-polygon", "11"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("--unchecked"));

    let o = run(&["sweep", "--max-polygon", "6", "--jobs", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("conjecture"));

    let v = json(&[
        "sweep",
        "--max-polygon",
        "7",
        "--random",
        "10",
        "--seed",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["total"]["instances"], 10);
}

#[test]
fn nonagon_polytope_golden() {
    let out = stdout(&run(&["polytope", "--input", &fixture("nonagon.json")]));
    for line in [
        "x14 = 0",
        "x15 = 0",
        "x1 + x2 + x3 + x4 + x7 = 0",
        "x5 + x6 + x7 + x8 = 0",
        "x8 + x9 = 1",
        "x6 + x9 + x10 = 0",
        "x4 + x5 + x10 + x11 = 0",
        "x3 + x11 + x12 = 0",
        "x2 + x12 + x13 = 0",
        "x1 + x13 = 1",
        "x7 >= 0",
        "x10 >= 0",
        "x11 >= 0",
        "x12 >= 0",
        "x13 >= 0",
        "x9 >= 0",
        "x6 >= -1",
        "x4 + x7 + x11 <= 1",
    ] {
        assert!(out.lines().any(|l| l.trim() == line), "missing {line}");
    }
    // 10 equations + 8 facets + 2 headers
    assert_eq!(
        out.lines()
            .take_while(|l| !l.starts_with("dimension"))
            .count(),
        20
    );
}

#[test]
fn hexagon_expand_golden() {
    let out = stdout(&run(&["expand", "--input", &fixture("hexagon.json")]));
    let (num, den) = out.trim().split_once('/').unwrap();
    assert_eq!(den, "(x1*x2*x3)");
    let terms: std::collections::BTreeSet<&str> = num
        .trim_matches(|c| c == '(' || c == ')')
        .split(" + ")
        .collect();
    let want: std::collections::BTreeSet<&str> = [
        "x2^2*x5*x8",
        "x2*x4*x6*x8",
        "x1*x3*x6*x9",
        "x2*x5*x7*x9",
        "x4*x6*x7*x9",
    ]
    .into_iter()
    .collect();
    assert_eq!(terms, want);
}
