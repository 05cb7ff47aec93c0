//! Constructive witnesses: synchronizing extensions, positive-measure
//! cylinders and common cylinders of two futures. Every witness is checked
//! by a language comparison before it is returned.

use sofic::bifuture::future_intersection_measure;
use sofic::measure::{make_markov_from_cover, make_uniform};
use sofic::rational::format;
use sofic::witness::{common_cylinder, positive_measure_witness, witness_sync_extension};
use sofic::{catalog, DeterministicCover};

pub fn run_example() -> String {
    let golden = catalog::golden_mean();
    let cover = DeterministicCover::new(golden.clone()).expect("deterministic");
    let markov = make_markov_from_cover(&cover).expect("valid");
    let mut out = String::new();

    let (v, r) = witness_sync_extension(&golden, 0, &[]).expect("ε is in every past");
    out += &format!("sync extension from state 1: v = {}, r = {}\n", golden.format_word(&v), r + 1);

    let right = catalog::fig2_right();
    let (v, r) = witness_sync_extension(&right, 0, &[]).expect("ε is in every past");
    out += &format!("fig2 right, state 1: v = {}, cover state {}\n", right.format_word(&v), r + 1);

    let (w, r) = positive_measure_witness(&markov, &cover, 0, &cover)
        .expect("support matches")
        .expect("positive measure");
    out += &format!("cylinder inside Fut(1): w = {}, r = {}\n", golden.format_word(&w), r + 1);

    let w = common_cylinder(&golden, 0, 1, &markov).expect("hypotheses").expect("positive");
    out += &format!(
        "μ(Fut(1) ∩ Fut(2)) = {}, common cylinder w = {}\n",
        format(&future_intersection_measure(&golden, 0, 1, &markov).expect("measure")),
        golden.format_word(&w)
    );

    let middle = catalog::fig2_middle();
    let uniform = make_uniform(middle.alphabet().clone()).expect("valid");
    let none = common_cylinder(&middle, 0, 1, &uniform).expect("hypotheses");
    out += &format!("fig2 middle, states 1 and 2: common cylinder exists {}\n", none.is_some());
    out
}

fn main() {
    print!("{}", run_example());
}
