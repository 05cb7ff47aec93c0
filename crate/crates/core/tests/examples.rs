//! Every example runs and reports the values it documents.

#[allow(dead_code)]
#[path = "../examples/ambiguity_check.rs"]
mod ambiguity_check;

#[allow(dead_code)]
#[path = "../examples/spectral_entropy.rs"]
mod spectral_entropy;

#[allow(dead_code)]
#[path = "../examples/minimal_cover.rs"]
mod minimal_cover;

#[allow(dead_code)]
#[path = "../examples/exact_measures.rs"]
mod exact_measures;

#[allow(dead_code)]
#[path = "../examples/bifuture_nullity.rs"]
mod bifuture_nullity;

#[allow(dead_code)]
#[path = "../examples/witnesses.rs"]
mod witnesses;

#[allow(dead_code)]
#[path = "../examples/monte_carlo.rs"]
mod monte_carlo;

#[allow(dead_code)]
#[path = "../examples/file_formats.rs"]
mod file_formats;

#[test]
fn ambiguity_check_finds_one_ambiguous_presentation() {
    let out = ambiguity_check::run_example();
    assert_eq!(out.matches(": unambiguous").count(), 5);
    assert!(out.contains("ambiguous; witness: word 00, runs 2→1→1 and 2→2→1"));
}

#[test]
fn spectral_entropy_reports_radii() {
    let out = spectral_entropy::run_example();
    assert!(out.contains("golden mean cover: radius 1.618033989, entropy 0.481212"));
    assert!(out.contains("ambiguous golden mean: radius 2.000000000"));
    assert_eq!(out.matches("consistent true").count(), 2);
}

#[test]
fn minimal_cover_counts_factors() {
    let out = minimal_cover::run_example();
    assert!(out.contains("isomorphic to the golden cover: true"));
    assert!(out.contains("distinguishing word 11"));
    assert!(out.contains("factors of length 8: golden 55, full 256"));
}

#[test]
fn exact_measures_values() {
    let out = exact_measures::run_example();
    assert!(out.contains("1001: 5/8"));
    assert!(out.contains("golden mean shift: 0"));
    assert!(out.contains("μ(0101) = 1/2, μ(00) = 0"));
}

#[test]
fn bifuture_nullity_reports_both_counterexamples() {
    let out = bifuture_nullity::run_example();
    assert!(out.contains("fig2 right + uniform: hypotheses true, unambiguous true, all null true, equivalence true"));
    assert!(out.contains("fig2 right + point masses: hypotheses false, unambiguous true, all null false, equivalence false"));
    assert!(out.contains("fig3 + uniform: hypotheses false, unambiguous false, all null true, equivalence false"));
    assert!(out.contains("fig3 + golden Markov: hypotheses true, unambiguous false, all null false, equivalence true"));
    assert!(out.contains("has measure 1/2"));
}

#[test]
fn witnesses_are_found() {
    let out = witnesses::run_example();
    assert!(out.contains("sync extension from state 1: v = 0, r = 1"));
    assert!(out.contains("μ(Fut(1) ∩ Fut(2)) = 3/4"));
    assert!(out.contains("common cylinder exists false"));
}

#[test]
fn monte_carlo_runs() {
    let out = monte_carlo::run_example();
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().all(|l| l.contains("L = 30, K = 15, N = 20000")));
}

#[test]
fn file_formats_round_trip() {
    let out = file_formats::run_example();
    assert!(out.contains("μ(010) = 3/8"));
    assert!(out.contains("rejected: line 4, column 8: duplicate transition"));
    assert!(out.contains("digraph automaton {"));
}
