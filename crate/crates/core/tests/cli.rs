use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn sofic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sofic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> (i32, Value) {
    let o = sofic(&[args, &["--json"]].concat());
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("json report"))
}

#[test]
fn ambiguous_automaton_exits_one_with_witness() {
    let o = sofic(&["unambiguous", &fixture("fig3.aut")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "ambiguous; witness: word 00, runs 2→1→1 and 2→2→1");
    let o = sofic(&["unambiguous", &fixture("fig2_right.aut")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "unambiguous");
}

#[test]
fn golden_mean_entropy() {
    let o = sofic(&["entropy", &fixture("golden.aut")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0.481212");
}

#[test]
fn measure_check_json_report() {
    let (code, v) = json(&["theorem2", &fixture("fig2_right.aut"), "--measure", &fixture("uniform2.msr")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["equivalence_holds"], Value::Bool(true));
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["command"], "theorem2");
    let inputs = v["inputs"].as_array().unwrap();
    assert_eq!(inputs.len(), 2);
    for input in inputs {
        assert_eq!(input["sha256"].as_str().unwrap().len(), 64);
    }
}

#[test]
fn counterexample_breaks_the_equivalence() {
    let (code, v) = json(&["theorem2", &fixture("fig3.aut"), "--measure", &fixture("uniform2.msr")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["hypotheses_ok"], Value::Bool(false));
    assert_eq!(v["result"]["all_bifutures_null"], Value::Bool(true));
}

#[test]
fn bifuture_and_support_queries() {
    let right = fixture("fig2_right.aut");
    assert_eq!(sofic(&["bifuture-null", &right, "-q", "1", "--measure", &fixture("uniform2.msr")]).status.code(), Some(0));
    let (code, v) = json(&["bifuture-null", &right, "-q", "1", "--measure", &fixture("point_masses.msr")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["witness"]["term_measure"], "1/2");
    let o = sofic(&["support-check", &fixture("fig3.aut"), "--measure", &fixture("uniform2.msr")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample: 11"));
}

#[test]
fn measure_word_is_exact() {
    let o = sofic(&["measure-word", "-w", "0110", "--measure", &fixture("uniform2.msr")]);
    assert_eq!(stdout(&o).trim(), "1/16");
    let o = sofic(&["measure-word", "-w", "0101", "--measure", &fixture("point_masses.msr")]);
    assert_eq!(stdout(&o).trim(), "1/2");
}

#[test]
fn spectral_commands() {
    let (code, v) = json(&["spectral", &fixture("fig3.aut")]);
    assert_eq!(code, 0);
    assert!((v["result"]["radius"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    let (code, v) = json(&["theorem1", &fixture("fig3.aut"), "--shift", &fixture("golden.aut")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["unambiguous"], Value::Bool(false));
    assert_eq!(v["result"]["accepts_x"], Value::Bool(true));
    assert_eq!(v["result"]["entropy_matches"], Value::Bool(false));
}

#[test]
fn cover_commands() {
    let o = sofic(&["fischer", &fixture("fig3.aut")]);
    let cover = sofic::format::parse_automaton(&stdout(&o)).expect("cover re-parses");
    assert_eq!(cover.num_states(), 2);
    let (code, v) = json(&["syncword", &fixture("golden.aut")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["word"], "0");
    let (_, v) = json(&["scc", &fixture("fig2_right.aut")]);
    assert_eq!(v["result"]["components"].as_array().unwrap().len(), 1);
    let (_, v) = json(&["validate", &fixture("golden.aut")]);
    assert_eq!(v["result"]["strongly_connected"], Value::Bool(true));
}

#[test]
fn estimate_is_deterministic() {
    let args = ["estimate", &fixture("fig3.aut"), "-q", "2", "-L", "20", "-N", "2000", "--seed", "7"];
    let args: Vec<&str> = args.iter().map(|s| &**s).collect();
    let mut with_measure = args.clone();
    let m = fixture("golden_markov.msr");
    with_measure.extend(["--measure", &m]);
    let (a, b) = (sofic(&with_measure), sofic(&with_measure));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("L = 20, K = 10, seed 7"));
}

#[test]
fn dot_export() {
    let o = sofic(&["export-dot", &fixture("golden.aut")]);
    assert!(stdout(&o).starts_with("digraph automaton {"));
    let o = sofic(&["export-dot", &fixture("fig3.aut"), "--pair", "2", "--measure", &fixture("golden_markov.msr")]);
    assert!(stdout(&o).starts_with("digraph pair_graph {"));
    assert!(stdout(&o).contains("α = 1"));
}

#[test]
fn errors_exit_two_with_positions() {
    let dir = std::env::temp_dir().join(format!("sofic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.aut");
    std::fs::write(&bad, "alphabet: 0\nstates: 1\ntrans: 1 0 2\n").unwrap();
    let o = sofic(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, column 12"));
    let bad = dir.join("bad.msr");
    std::fs::write(&bad, "dim: 1\nalphabet: 0\npi: 0.5\nnu 0:\n1\n").unwrap();
    let o = sofic(&["measure-word", "-w", "0", "--measure", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(sofic(&["theorem2", &fixture("fig3.aut")]).status.code(), Some(2));
    assert_eq!(sofic(&["bifuture-null", &fixture("fig3.aut"), "-q", "9", "--measure", &fixture("uniform2.msr")]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
