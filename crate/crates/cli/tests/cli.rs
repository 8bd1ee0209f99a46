use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    let p: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "core",
        "corpus",
        &format!("{name}.ato"),
    ]
    .iter()
    .collect();
    p.to_string_lossy().into_owned()
}

fn spantl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spantl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn field(o: &Output, key: &str) -> String {
    let prefix = format!("{key}: ");
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
        .unwrap_or_else(|| panic!("no `{key}` in:\n{}", stdout(o)))
}

const BINARY: &str = "\
states: q
alphabet: \"a\"
init: q
delta:
(q, \"a\") -> ()
(q, \"a\") -> (q)
(q, \"a\") -> (q, q)
";

#[test]
fn validate_exit_codes() {
    assert_eq!(
        spantl(&["validate", &corpus("ex1_forced_accept")])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        spantl(&["validate", "/no/such/file.ato"]).status.code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ato");
    std::fs::write(
        &bad,
        "states: q0 acc rej\nalphabet: a\ninit: q0\naccept: acc\nreject: rej\nexistential: q0\nuniversal: q0\nlabeling: q0\ndelta:\n",
    )
    .unwrap();
    let o = spantl(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("violation: partition-overlap"),
        "{}",
        stdout(&o)
    );

    let garbled = dir.path().join("garbled.ato");
    std::fs::write(&garbled, "states q0\n").unwrap();
    assert_eq!(
        spantl(&["validate", garbled.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn span_values() {
    let o = spantl(&["span", &corpus("ex2_existential"), "x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&o, "span"), "2");
    assert_eq!(
        field(&spantl(&["span", &corpus("ex3_universal"), "x"]), "span"),
        "1"
    );
    let o = spantl(&[
        "span",
        &corpus("ex12_sibling_order"),
        "--mode",
        "ordered",
        "--list",
    ]);
    assert_eq!(field(&o, "span"), "2");
    assert!(stdout(&o).contains("\"\"(b,a)"), "{}", stdout(&o));
}

#[test]
fn loop_hits_bound() {
    let o = spantl(&["span", &corpus("ex5_loop")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("max_nodes exceeded"), "{}", stderr(&o));
    let o = spantl(&["reduce", &corpus("ex5_loop")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cycle"), "{}", stderr(&o));
}

#[test]
fn illegal_input_is_a_parse_error() {
    assert_eq!(
        spantl(&["span", &corpus("ex2_existential"), "z"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn reduce_then_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ex2.nfta");
    let o = spantl(&[
        "reduce",
        &corpus("ex2_existential"),
        "x",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let bound = field(&o, "size_bound");
    assert_eq!(bound, "50");
    for method in ["dp", "enum"] {
        let o = spantl(&[
            "count",
            out.to_str().unwrap(),
            "--size",
            &bound,
            "--cumulative",
            "--method",
            method,
        ]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(field(&o, "cumulative"), "2");
    }
}

#[test]
fn reduce_to_stdout_is_parseable() {
    let o = spantl(&["reduce", &corpus("ex1_forced_accept")]);
    assert_eq!(o.status.code(), Some(0));
    let a = spantl::nfta::parse_nfta(&stdout(&o)).unwrap();
    assert_eq!(spantl::nfta::enumerate_accepted(&a, 50).unwrap().len(), 1);
}

#[test]
fn count_per_size() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("binary.nfta");
    std::fs::write(&path, BINARY).unwrap();
    let p = path.to_str().unwrap();
    let o = spantl(&["count", p, "--size", "5"]);
    let sizes: Vec<String> = (1..=5).map(|n| field(&o, &format!("size {n}"))).collect();
    assert_eq!(sizes, ["1", "1", "2", "4", "9"]);
    assert_eq!(field(&o, "count"), "9");
    assert_eq!(field(&spantl(&["count", p, "--size", "0"]), "count"), "0");
    assert_eq!(
        field(
            &spantl(&["count", p, "--size", "0", "--cumulative"]),
            "cumulative"
        ),
        "0"
    );
}

#[test]
fn check_agrees_on_corpus() {
    for (name, w) in [
        ("ex1_forced_accept", ""),
        ("ex2_existential", "x"),
        ("ex3_universal", ""),
        ("ex8_input_reading", "abab"),
    ] {
        let o = spantl(&["check", &corpus(name), w]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
        assert_eq!(field(&o, "span ordered"), field(&o, "automaton count"));
    }
    let o = spantl(&["check", &corpus("ex12_sibling_order")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("INFO:"));
}

#[test]
fn json_report() {
    let o = spantl(&[
        "--format",
        "machine-readable",
        "span",
        &corpus("ex2_existential"),
        "x",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"]["span"], 2);
    assert_eq!(v["exit_status"], 0);
    let o = spantl(&["--format", "json", "span", &corpus("ex5_loop")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exit_status"], 3);
    assert!(v["error"]
        .as_str()
        .unwrap()
        .starts_with("max_nodes exceeded"));
}

#[test]
fn bounds_override() {
    let o = spantl(&["run", &corpus("ex4_universal_chain"), "--bounds", "k=1"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o).matches("violation:").count(), 1);
    assert_eq!(
        spantl(&["run", &corpus("ex4_universal_chain"), "--bounds", "k=2"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        spantl(&["run", &corpus("ex4_universal_chain"), "--bounds", "depth=3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn dag_stats_and_export() {
    let o = spantl(&["dag", &corpus("ex3_universal")]);
    assert_eq!(
        (field(&o, "nodes"), field(&o, "edges"), field(&o, "depth")),
        ("4".into(), "4".into(), "2".into())
    );
    let o = spantl(&["dag", &corpus("ex1_forced_accept"), "--export", "-"]);
    assert!(stdout(&o).contains("q0|>||1|1 -> acc|>||1|1"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--format", "json", "check", &corpus("ex6_nested_fanout")];
    assert_eq!(spantl(&args).stdout, spantl(&args).stdout);
}
