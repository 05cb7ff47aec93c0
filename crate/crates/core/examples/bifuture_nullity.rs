//! Exact decision of whether the sequences with two runs from a state form
//! a null set, and the resulting cross-check against unambiguity.

use sofic::bifuture::{bifuture_is_null, theorem2_check, union_term_measure};
use sofic::measure::{make_markov_from_cover, make_periodic_point_masses, make_uniform};
use sofic::rational::{format, ratio};
use sofic::subshift::fischer_cover;
use sofic::{catalog, Automaton, RationalMeasure};

fn report(out: &mut String, name: &str, a: &Automaton, mu: &RationalMeasure) {
    let r = theorem2_check(a, mu).expect("alphabets agree");
    *out += &format!(
        "{name}: hypotheses {}, unambiguous {}, all null {}, equivalence {}\n",
        r.hypotheses_ok, r.unambiguous, r.all_bifutures_null, r.equivalence_holds
    );
    for reason in &r.reasons {
        *out += &format!("  {reason}\n");
    }
}

pub fn run_example() -> String {
    let right = catalog::fig2_right();
    let fig3 = catalog::fig3();
    let alphabet = right.alphabet().clone();
    let uniform = make_uniform(alphabet.clone()).expect("valid");
    let points = make_periodic_point_masses(alphabet, &[(vec![0, 1], ratio(1, 2)), (vec![1, 0], ratio(1, 2))])
        .expect("valid");
    let golden_markov = make_markov_from_cover(&fischer_cover(&fig3).expect("irreducible")).expect("valid");

    let mut out = String::new();
    report(&mut out, "fig2 right + uniform", &right, &uniform);
    report(&mut out, "fig2 right + point masses", &right, &points);
    report(&mut out, "fig3 + uniform", &fig3, &uniform);
    report(&mut out, "fig3 + golden Markov", &fig3, &golden_markov);

    let d = bifuture_is_null(&right, 0, &points).expect("alphabets agree");
    let w = d.witness.expect("positive");
    let term = union_term_measure(&right, &points, &w.prefix, w.symbol, w.branch).expect("measure");
    out += &format!(
        "point masses: term {}·{}(Fut({}) ∩ Fut({})) has measure {}\n",
        right.format_word(&w.prefix),
        right.alphabet().symbol(w.symbol),
        right.state_name(w.branch.0),
        right.state_name(w.branch.1),
        format(&term)
    );
    out
}

fn main() {
    print!("{}", run_example());
}
