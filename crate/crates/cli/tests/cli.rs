use std::io::Write;
use std::process::{Command, Output};

const CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/corpus");

fn corpus(file: &str) -> String {
    format!("{CORPUS}/{file}")
}

fn agt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agt"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(contents: &str, suffix: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(suffix).tempfile().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn certify_bundled_suites() {
    for (group, suite) in [
        ("grigorchuk.agt", "grigorchuk_nea.cert"),
        ("grigorchuk.agt", "grigorchuk_identities.cert"),
        ("basilica.agt", "basilica_nea.cert"),
        ("basilica.agt", "basilica_identities.cert"),
    ] {
        let o = agt(&[
            "certify",
            "--group",
            &corpus(group),
            "--suite",
            &corpus(suite),
        ]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn trivial_and_equal() {
    let g = corpus("grigorchuk.agt");
    assert_eq!(
        stdout(&agt(&["trivial", "--group", &g, "--word", "b c d"])).trim(),
        "true"
    );
    assert_eq!(
        stdout(&agt(&["trivial", "--group", &g, "--word", "a b"])).trim(),
        "false"
    );
    let o = agt(&["equal", "--group", &g, "--word", "b", "--other", "c d"]);
    assert_eq!(stdout(&o).trim(), "true");
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn eval_basilica_square() {
    let o = agt(&["eval", "--group", &corpus("basilica.agt"), "--word", "b b"]);
    assert_eq!(stdout(&o).trim(), "(a, a) id");
    let o = agt(&[
        "eval",
        "--group",
        &corpus("basilica.agt"),
        "--word",
        "b b",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coords"]["slots"], serde_json::json!(["a", "a"]));
    assert_eq!(v["coords"]["perm"], serde_json::json!([1, 2]));
}

#[test]
fn bundled_names_resolve() {
    let o = agt(&["order", "--group", "grigorchuk", "--word", "a d"]);
    assert_eq!(stdout(&o).trim(), "4");
    let o = agt(&["certify", "--group", "basilica", "--suite", "basilica_nea"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_is_deterministic() {
    let g = corpus("grigorchuk.agt");
    let suite = corpus("grigorchuk_nea.cert");
    let runs = [
        vec!["certify", "--group", &g, "--suite", &suite, "--json"],
        vec!["orbits", "--group", &g, "--depth", "4", "--json"],
        vec!["closure", "--group", &g, "--word", "b", "--json"],
        vec!["stab", "--group", &g, "--level", "2", "--json"],
        vec![
            "portrait", "--group", &g, "--word", "(a b)^2", "--depth", "3", "--json",
        ],
        vec![
            "freesemigroup",
            "--group",
            &g,
            "--gen",
            "a",
            "--gen",
            "b",
            "--max-len",
            "4",
            "--json",
        ],
    ];
    for args in runs {
        let first = agt(&args).stdout;
        let second = agt(&args).stdout;
        assert_eq!(first, second, "{args:?}");
        serde_json::from_slice::<serde_json::Value>(&first).unwrap();
    }
}

#[test]
fn failing_certificate_exits_one() {
    let cert = temp_file("group grigorchuk\ntrivial a b\nequal b = c d\n", ".cert");
    let o = agt(&[
        "certify",
        "--group",
        &corpus("grigorchuk.agt"),
        "--suite",
        cert.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL 2: trivial a b"));
    assert!(out.contains("PASS 3: equal b = c d"));
}

#[test]
fn colliding_semigroup_exits_one() {
    let o = agt(&[
        "freesemigroup",
        "--group",
        "grigorchuk",
        "--gen",
        "a",
        "--gen",
        "b",
        "--max-len",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first collision: a a = b b"));
}

#[test]
fn parse_errors_exit_three_with_position() {
    let bad = temp_file("group g\nalphabet 2\ngen a = (1, 1) (1 3)\n", ".agt");
    let o = agt(&[
        "trivial",
        "--group",
        bad.path().to_str().unwrap(),
        "--word",
        "a",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3, column 16"), "{err}");

    let empty = temp_file("group g\nalphabet 2\n", ".agt");
    let o = agt(&[
        "trivial",
        "--group",
        empty.path().to_str().unwrap(),
        "--word",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(3));

    let o = agt(&[
        "trivial",
        "--group",
        &corpus("grigorchuk.agt"),
        "--word",
        "a z",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(agt(&["trivial", "--word", "a"]).status.code(), Some(2));
    assert_eq!(agt(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        agt(&["stab", "--group", "grigorchuk"]).status.code(),
        Some(2)
    );
}

#[test]
fn section_act_and_activity() {
    let g = corpus("grigorchuk.agt");
    let o = agt(&[
        "section",
        "--group",
        &g,
        "--word",
        "(a b a d)^2",
        "--vertex",
        "2",
    ]);
    assert!(stdout(&o).starts_with("a b a b"));
    let o = agt(&["act", "--group", &g, "--word", "a", "--vertex", "1.2.1"]);
    assert_eq!(stdout(&o).trim(), "2.2.1");
    let o = agt(&["activity", "--group", &g, "--word", "b", "--levels", "5"]);
    assert_eq!(stdout(&o).trim(), "1 2 2 1 2 2");
}

#[test]
fn dot_outputs() {
    let g = corpus("grigorchuk.agt");
    for args in [
        vec![
            "portrait", "--group", &g, "--word", "b", "--depth", "2", "--dot",
        ],
        vec!["closure", "--group", &g, "--word", "b", "--dot"],
        vec!["orbits", "--group", &g, "--depth", "3", "--dot"],
        vec![
            "chain", "--group", &g, "--vertex", "1", "--depth", "3", "--dot",
        ],
    ] {
        let out = stdout(&agt(&args));
        assert!(out.starts_with("digraph"), "{args:?}");
        assert!(out.trim_end().ends_with('}'));
    }
}

#[test]
fn subgroup_commands() {
    let g = corpus("grigorchuk.agt");
    let o = agt(&["project", "--group", &g, "--vertex", "1"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    for x in ["a", "b", "c", "d"] {
        assert!(lines.contains(&x), "{lines:?}");
    }
    let o = agt(&["rist", "--group", &g, "--vertex", "2", "--max-len", "8"]);
    assert!(!stdout(&o).trim().is_empty());
    let o = agt(&["chain", "--group", &g, "--vertex", "1", "--depth", "5"]);
    assert!(stdout(&o).contains("orbit counts 1 1 1 1 1 1"));
    let o = agt(&["ball", "--group", &g, "--radius", "2"]);
    assert!(stdout(&o).contains("|B(1)| = 5"));
}

#[test]
fn commutator_witness_command() {
    let o = agt(&[
        "commutator-witness",
        "--group",
        "basilica",
        "--word",
        "a",
        "--k",
        "2",
        "--m",
        "1",
        "--w",
        "a b",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified true"));
    // a moves the first level: rejected as invalid input
    let o = agt(&[
        "commutator-witness",
        "--group",
        "basilica",
        "--word",
        "b",
        "--k",
        "1",
        "--m",
        "1",
        "--w",
        "a",
    ]);
    assert_eq!(o.status.code(), Some(3));
}
