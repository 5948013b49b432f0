use std::io::Write;
use std::process::{Command, Stdio};

use affine_atlas_cli::run;
use serde_json::Value;

const EXAMPLES: [&str; 6] = [
    "TranslationTorus",
    "HopfCylinder",
    "SimilarityTorus",
    "InvariantLine3Torus",
    "IrrationalScrew",
    "HopfManifold",
];

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str], stdin: &str) -> Outcome {
    let mut argv = vec!["affine-atlas"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn ok_json(args: &[&str], stdin: &str) -> Value {
    let o = cli(args, stdin);
    assert_eq!(o.code, 0, "{args:?}: {}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

fn example(name: &str) -> String {
    let o = cli(&["example", name], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    o.stdout
}

#[test]
fn binary_pipes_example_into_tile() {
    let bin = env!("CARGO_BIN_EXE_affine-atlas");
    let ex = Command::new(bin)
        .args(["example", "SimilarityTorus"])
        .output()
        .unwrap();
    assert!(ex.status.success());
    let mut child = Command::new(bin)
        .args(["tile", "--max-word-length", "6"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&ex.stdout).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"data-word="e" d="M 0 0 L 2 0 L 1 1 L 0 1 Z""#));
}

#[test]
fn outputs_are_deterministic() {
    let ex = example("SimilarityTorus");
    assert_eq!(cli(&["tile"], &ex).stdout, cli(&["tile"], &ex).stdout);
    let line3 = example("InvariantLine3Torus");
    let args = [
        "avoid-line",
        "--samples",
        "500",
        "--max-word-length",
        "4",
        "--seed",
        "9",
    ];
    assert_eq!(cli(&args, &line3).stdout, cli(&args, &line3).stdout);
}

#[test]
fn every_example_parses_back() {
    for name in EXAMPLES {
        let text = example(name);
        let o = cli(&["fixed-point"], &text);
        assert_eq!(o.code, 0, "{name}: {}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert!(v["radiant"].is_boolean(), "{name}");
        // Non-planar or non-line-preserving inputs are rejected as bad input, never as a crash.
        for args in [&["classify"][..], &["tile", "--max-word-length", "2"]] {
            let code = cli(args, &text).code;
            assert!(code == 0 || code == 1, "{name} {args:?}: exit {code}");
        }
    }
}

#[test]
fn classify_reports_each_generator() {
    let v = ok_json(&["classify"], &example("InvariantLine3Torus"));
    let verdicts = v["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 2);
    assert_eq!(verdicts[0]["verdict"]["tag"], "NonCompactInvariantPlane");
    assert_eq!(verdicts[1]["verdict"]["tag"], "LineFixedPoints");
}

#[test]
fn classify_single_map() {
    let map = r#"{"linear": [[0.5, 0.0], [0.0, 1.0]], "translation": [0.0, 0.0]}"#;
    let v = ok_json(&["classify"], map);
    assert_eq!(v["tag"], "NonProperScaling");
}

#[test]
fn develop_two_charts() {
    let job = r#"{
        "complex": {"dimension": 2, "charts": ["0", "1"],
                    "transitions": [{"from": "0", "to": "1",
                                     "map": {"linear": [[1, 0], [0, 1]], "translation": [1, 0]}}]},
        "path": {"segments": [{"chart": "0", "points": [[0, 0]]},
                              {"chart": "1", "points": [[-1, 0], [-1, 1]]}]}
    }"#;
    let v = ok_json(&["develop"], job);
    assert_eq!(v["terminal"], serde_json::json!([0.0, 1.0]));
}

#[test]
fn saturate_and_avoid_line() {
    let v = ok_json(
        &["saturate"],
        r#"{"ball": {"center": [5, 0], "radius": 1}, "points": [[0, 1], [10, 0]]}"#,
    );
    assert_eq!(v["forward_absorbing"], false);
    assert_eq!(v["results"], serde_json::json!([false, true]));

    let v = ok_json(
        &["avoid-line", "--samples", "1000", "--max-word-length", "5"],
        &example("InvariantLine3Torus"),
    );
    assert_eq!(v["avoids_line"], true);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("affine-atlas-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("torus.json");
    let o = cli(
        &["example", "TranslationTorus", "-o", path.to_str().unwrap()],
        "",
    );
    assert_eq!(o.code, 0);
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, example("TranslationTorus"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bad_input_exits_one() {
    let o = cli(&["classify"], "{\"linear\": [[1, 0],\n [0 1]]}");
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("line 2"), "{}", o.stderr);
    assert_eq!(cli(&["classify"], "[1, 2]").code, 1);
    assert_eq!(cli(&["classify"], r#"{"neither": 1}"#).code, 1);
    assert_eq!(cli(&["no-such-command"], "").code, 1);
    assert_eq!(cli(&["example", "Klein"], "").code, 1);
    assert_eq!(cli(&["--help"], "").code, 0);
}
