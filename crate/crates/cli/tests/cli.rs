//! End-to-end checks of the command-line interface: exit codes, deterministic
//! output, and re-readability of everything it emits.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn cotilt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cotilt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_temp(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const VALID_SEQ: &str =
    r#"{"ring":{"ring":"Z"},"n":1,"levels":[{"kind":"finite","elems":["(0)","(2)"]}]}"#;
const INVALID_SEQ: &str =
    r#"{"ring":{"ring":"Z"},"n":1,"levels":[{"kind":"finite","elems":["(2)"]}]}"#;
const DEDEKIND_RING: &str = r#"{"ring":"synthetic","primes":["0","m1","m2"],"order":[["0","m1"],["0","m2"]],"gorenstein_heights":true}"#;
const INCOMPATIBLE_FAMILY: &str = r#"{
    "ring": {"ring":"synthetic","primes":["0","q","m1","m2"],
             "order":[["0","q"],["q","m1"],["q","m2"]],
             "gorenstein_heights":true},
    "n": 1,
    "exceptions": {
        "m1": [{"kind":"bitset","elems":["0","q","m1"]}],
        "m2": [{"kind":"finite","elems":["0"]}]
    }
}"#;

#[test]
fn validate_exit_codes() {
    let ok = write_temp(VALID_SEQ);
    let out = cotilt(&["validate", ok.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");

    let bad = write_temp(INVALID_SEQ);
    let out = cotilt(&["validate", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("clause (i)"), "got: {text}");
    assert!(text.contains("clause (iii)"), "got: {text}");

    let garbage = write_temp("{not json");
    let out = cotilt(&["validate", garbage.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = cotilt(&["validate", "/nonexistent/path.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/path.json"));
}

#[test]
fn inline_input_matches_file_input() {
    let file = write_temp(VALID_SEQ);
    let from_file = cotilt(&["validate", file.path().to_str().unwrap()]);
    let from_inline = cotilt(&["validate", "--inline", VALID_SEQ]);
    assert_eq!(from_file.stdout, from_inline.stdout);
    assert_eq!(from_file.status.code(), from_inline.status.code());
}

#[test]
fn enumerate_and_count() {
    let ring = write_temp(DEDEKIND_RING);
    let path = ring.path().to_str().unwrap();
    let out = cotilt(&["enumerate", path, "-n", "1", "--count"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "4");

    let out2 = cotilt(&["count", path, "-n", "1"]);
    assert_eq!(out2.stdout, out.stdout);

    // enumerating over the integers is unsupported
    let z = write_temp(r#"{"ring":"Z"}"#);
    let out = cotilt(&["enumerate", z.path().to_str().unwrap(), "-n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn emitted_documents_reload() {
    let ring = write_temp(DEDEKIND_RING);
    let out = cotilt(&["--json", "enumerate", ring.path().to_str().unwrap(), "-n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let payload: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(payload["count"], 4);
    for seq in payload["sequences"].as_array().unwrap() {
        let text = serde_json::to_string(seq).unwrap();
        let file = write_temp(&text);
        let check = cotilt(&["validate", file.path().to_str().unwrap()]);
        assert_eq!(check.status.code(), Some(0), "emitted sequence must validate");
    }
}

#[test]
fn localize_then_glue_roundtrip_through_files() {
    let seq = write_temp(
        r#"{"ring":{"ring":"Z"},"n":1,"levels":[{"kind":"dim1","zero":true,"max":{"cofinite_excluding":["(3)"]}}]}"#,
    );
    let out = cotilt(&["--json", "localize", seq.path().to_str().unwrap(), "--at", "(3)"]);
    assert_eq!(out.status.code(), Some(0));
    let payload: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(payload["local"]["maximal"], "(3)");

    let family = write_temp(
        r#"{"ring":{"ring":"Z"},"n":1,"default":[["zero","max"]],"exceptions":{"(3)":[{"kind":"finite","elems":["(0)"]}]}}"#,
    );
    let out = cotilt(&["--json", "glue", family.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let payload: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let glued = serde_json::to_string(&payload["sequence"]).unwrap();
    // the glued sequence is the original one
    let original: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(seq.path()).unwrap(),
    )
    .unwrap();
    let reglued: serde_json::Value = serde_json::from_str(&glued).unwrap();
    assert_eq!(original["levels"], reglued["levels"]);
}

#[test]
fn glue_reports_incompatibility_with_witness() {
    let family = write_temp(INCOMPATIBLE_FAMILY);
    let out = cotilt(&["--json", "glue", family.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let payload: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(payload["status"], "violation");
    let pair = &payload["verdict"]["pairs"][0];
    assert_eq!(pair["index"], 0);
    assert_eq!(pair["first"], "m1");
    assert_eq!(pair["second"], "m2");
    assert_eq!(pair["witness"], "q");

    let check = cotilt(&["check-family", family.path().to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(1));
}

#[test]
fn member_exit_codes() {
    let seq = write_temp(VALID_SEQ);
    let in_class = write_temp(r#"{"rank":0,"torsion":[[2,3,1]]}"#);
    let out = cotilt(&[
        "member",
        "--module",
        in_class.path().to_str().unwrap(),
        "--seq",
        seq.path().to_str().unwrap(),
        "--side",
        "tilting",
    ]);
    assert_eq!(out.status.code(), Some(0));

    let not_in_class = write_temp(r#"{"rank":0,"torsion":[[2,1,1],[3,1,1]]}"#);
    let out = cotilt(&[
        "member",
        "--module",
        not_in_class.path().to_str().unwrap(),
        "--seq",
        seq.path().to_str().unwrap(),
        "--side",
        "tilting",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let dual = write_temp(r#"{"divisible_rank":0,"torsion":[[2,2,1]]}"#);
    let out = cotilt(&[
        "member",
        "--module",
        dual.path().to_str().unwrap(),
        "--seq",
        seq.path().to_str().unwrap(),
        "--side",
        "cotilting",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oracle_subcommands_pass() {
    let out = cotilt(&["oracle", "bass"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cotilt(&["oracle", "cartanei", "--part", "a", "--max-order", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cotilt(&["oracle", "dual-coloc", "--max-order", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cotilt(&["oracle", "coloc-limit", "--max-order", "32"]);
    assert_eq!(out.status.code(), Some(0));
    let out = cotilt(&["oracle", "snf", "--trials", "25", "--size", "4"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let ring = write_temp(DEDEKIND_RING);
    let path = ring.path().to_str().unwrap();
    let args_sets: Vec<Vec<&str>> = vec![
        vec!["--json", "enumerate", path, "-n", "2"],
        vec!["enumerate", path, "-n", "2"],
        vec!["--json", "validate", "--inline", INVALID_SEQ],
        vec!["oracle", "snf", "--trials", "10", "--size", "4", "--seed", "7"],
    ];
    for args in args_sets {
        let first = cotilt(&args);
        let second = cotilt(&args);
        assert_eq!(first.stdout, second.stdout, "non-deterministic output for {args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn unknown_subcommand_is_an_input_error() {
    let out = cotilt(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn golden_outputs_are_stable() {
    let enumerate = cotilt(&[
        "--json",
        "enumerate",
        "--inline",
        DEDEKIND_RING,
        "-n",
        "1",
    ]);
    assert_eq!(enumerate.status.code(), Some(0));
    let golden = include_str!("golden/enumerate_dedekind2_n1.json");
    assert_eq!(String::from_utf8_lossy(&enumerate.stdout), golden);

    let glue = cotilt(&[
        "glue",
        "--inline",
        r#"{"ring":{"ring":"Z"},"n":2,"default":[["zero"],["zero","max"]],"exceptions":{"(2)":[{"kind":"finite","elems":["(0)","(2)"]},{"kind":"finite","elems":["(0)","(2)"]}]}}"#,
        "--json",
    ]);
    assert_eq!(glue.status.code(), Some(0));
    let golden = include_str!("golden/glue_z_n2.json");
    assert_eq!(String::from_utf8_lossy(&glue.stdout), golden);
}
