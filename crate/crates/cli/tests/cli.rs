use std::path::PathBuf;
use std::process::{Command, Output};

fn graph(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../graphs")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsproto"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn p(name: &str) -> String {
    graph(name).to_string_lossy().into_owned()
}

#[test]
fn check_verdicts_and_exit_codes() {
    let star = run(&["check", &p("star4.graph")]);
    assert_eq!(star.status.code(), Some(2));
    assert!(stdout(&star).contains("NOT VIABLE, rank(Γ_T)=1/2"));

    let path = run(&["check", &p("path4.graph")]);
    assert_eq!(path.status.code(), Some(0));
    assert!(stdout(&path).contains("VIABLE, rank(Γ_T)=2/2"));

    let missing = run(&["check", "/nonexistent/graph.txt"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(!stderr(&missing).is_empty());
}

#[test]
fn check_flags_disconnected_graphs() {
    let o = run(&["check", &p("matching6.graph"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["graph"]["connected"], false);
}

#[test]
fn parse_errors_exit_one_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.graph");
    std::fs::write(&f, "pairs: 1\nsenders: 1\nedges: 1-1\n").unwrap();
    let o = run(&["check", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn json_report_shape() {
    let o = run(&["check", &p("path4.graph"), "--json"]);
    let v = json(&o);
    for key in [
        "graph",
        "viability",
        "matrices",
        "results",
        "timing",
        "version",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["viability"]["rank"], 2);
    assert_eq!(
        v["matrices"]["gamma_t"]["rows"],
        serde_json::json!(["10", "11"])
    );
    assert_eq!(
        v["matrices"]["gamma_t"]["row_labels"],
        serde_json::json!([1, 3])
    );
    assert_eq!(
        v["matrices"]["gamma_t"]["col_labels"],
        serde_json::json!([2, 4])
    );
    assert!(v["timing"].is_null());

    let timed = json(&run(&["check", &p("path4.graph"), "--json", "--timing"]));
    assert!(timed["timing"]["elapsed_ms"].as_f64().is_some());
}

#[test]
fn dense_all_on_path() {
    let o = run(&["dense", &p("path4.graph"), "--all", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("16/16 decoded, bijective"));
    assert!(out.contains("oracle: 16/16 syndromes confirmed"));
}

#[test]
fn dense_single_message_on_matching() {
    let o = run(&[
        "dense",
        &p("matching4.graph"),
        "--message",
        "10,01",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let r = &v["results"];
    assert_eq!(r["syndrome"]["b_prime"], "01");
    assert_eq!(r["syndrome"]["a_prime"], "10");
    assert_eq!(r["decoded"]["a"], "10");
    assert_eq!(r["decoded"]["b"], "01");
}

#[test]
fn dense_rejects_star_and_oversized_oracle() {
    let o = run(&["dense", &p("star4.graph"), "--all", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["results"]["bijective"], false);
    assert!(v["results"]["collision"].is_object());

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("m5.graph");
    std::fs::write(
        &f,
        "pairs: 5\nsenders: 1 2 3 4 5\nedges: 1-6 2-7 3-8 4-9 5-10\n",
    )
    .unwrap();
    let o = run(&["dense", f.to_str().unwrap(), "--all", "--oracle"]);
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["dense", &p("path4.graph")]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn teleport_path_is_faithful() {
    let o = run(&[
        "teleport",
        &p("path4.graph"),
        "--trials",
        "5",
        "--all-outcomes",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let min = v["results"]["min_fidelity"].as_f64().unwrap();
    assert!(min >= 1.0 - 1e-10);
    for s in v["results"]["prob_sums"].as_array().unwrap() {
        assert!((s.as_f64().unwrap() - 1.0).abs() < 1e-10);
    }
    assert_eq!(v["results"]["resources"]["classical_bits_per_run"], 4);
}

#[test]
fn teleport_bell_case() {
    let o = run(&[
        "teleport",
        &p("edge.graph"),
        "--trials",
        "1",
        "--all-outcomes",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let outcomes = v["results"]["per_trial"][0]["outcomes"].as_array().unwrap();
    assert_eq!(outcomes.len(), 4);
    for r in outcomes {
        assert!((r["probability"].as_f64().unwrap() - 0.25).abs() < 1e-12);
        assert!(r["fidelity"].as_f64().unwrap() >= 1.0 - 1e-10);
    }
}

#[test]
fn teleport_star_is_rejected() {
    let o = run(&["teleport", &p("star4.graph")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn seeded_reports_are_byte_identical() {
    let args = [
        "teleport",
        &p("coupled6.graph"),
        "--trials",
        "3",
        "--seed",
        "42",
        "--json",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "teleport",
        &p("coupled6.graph"),
        "--trials",
        "3",
        "--seed",
        "43",
        "--json",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn lc_leaf_centre_and_involution() {
    let original = std::fs::read_to_string(graph("path4.graph")).unwrap();
    let canonical: String = original
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let leaf = run(&["lc", &p("path4.graph"), "1"]);
    assert_eq!(leaf.status.code(), Some(0));
    assert_eq!(stdout(&leaf), canonical);

    let centre = run(&["lc", &p("star4.graph"), "1", "--check-rank"]);
    assert_eq!(centre.status.code(), Some(0));
    assert!(stderr(&centre).contains("rank 1 → 1, invariant holds"));
    assert_eq!(
        stdout(&centre),
        "pairs: 2\nsenders: 1 2\nedges: 1-2 1-3 1-4 2-3 2-4 3-4\n"
    );

    let dir = tempfile::tempdir().unwrap();
    let once = dir.path().join("once.graph");
    std::fs::write(&once, stdout(&centre)).unwrap();
    let twice = run(&["lc", once.to_str().unwrap(), "1"]);
    assert_eq!(
        stdout(&twice),
        "pairs: 2\nsenders: 1 2\nedges: 1-2 1-3 1-4\n"
    );

    let bad = run(&["lc", &p("path4.graph"), "9"]);
    assert_eq!(bad.status.code(), Some(1));
}
