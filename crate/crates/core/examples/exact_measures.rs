//! Exact measures of cylinders and of closed regular sets.

use sofic::catalog;
use sofic::measure::{
    cylinder_union_measure, is_invariant, make_markov_from_cover, make_periodic_point_masses, make_uniform,
    word_measure,
};
use sofic::pair_graph::closed_set_measure;
use sofic::rational::{format, ratio};
use sofic::DeterministicCover;

pub fn run_example() -> String {
    let golden = catalog::golden_mean();
    let alphabet = golden.alphabet().clone();
    let uniform = make_uniform(alphabet.clone()).expect("valid");
    let words: Vec<_> = ["00", "11", "0110", "1001"]
        .iter()
        .map(|w| alphabet.parse_word(w).expect("binary"))
        .collect();
    let mut out = format!(
        "uniform measure of the cylinders 00, 11, 0110, 1001: {}\n",
        format(&cylinder_union_measure(&uniform, &words).expect("measure"))
    );

    let cover = DeterministicCover::new(golden).expect("deterministic");
    out += &format!(
        "uniform measure of the golden mean shift: {}\n",
        format(&closed_set_measure(&uniform, &cover, 0, &[]).expect("measure"))
    );

    let markov = make_markov_from_cover(&cover).expect("every state has an edge");
    let w = alphabet.parse_word("0100").expect("binary");
    out += &format!(
        "golden Markov measure: μ(0100) = {}, μ(golden shift) = {}, invariant {}\n",
        format(&word_measure(&markov, &w).expect("measure")),
        format(&closed_set_measure(&markov, &cover, 0, &[]).expect("measure")),
        is_invariant(&markov)
    );

    let points = [(vec![0, 1], ratio(1, 2)), (vec![1, 0], ratio(1, 2))];
    let pm = make_periodic_point_masses(alphabet.clone(), &points).expect("valid");
    out += &format!(
        "point masses: μ(0101) = {}, μ(00) = {}\n",
        format(&word_measure(&pm, &[0, 1, 0, 1]).expect("measure")),
        format(&word_measure(&pm, &[0, 0]).expect("measure"))
    );
    out
}

fn main() {
    print!("{}", run_example());
}
