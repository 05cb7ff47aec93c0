//! Seeded Monte-Carlo estimates of the mass of sequences with two runs.

use sofic::measure::{make_markov_from_cover, make_periodic_point_masses, make_uniform};
use sofic::rational::ratio;
use sofic::simulation::{estimate_bifuture, SampleConfig};
use sofic::subshift::fischer_cover;
use sofic::catalog;

pub fn run_example() -> String {
    let right = catalog::fig2_right();
    let fig3 = catalog::fig3();
    let alphabet = right.alphabet().clone();
    let cases = [
        ("fig2 right, uniform", &right, 0, make_uniform(alphabet.clone()).expect("valid")),
        (
            "fig2 right, point masses",
            &right,
            0,
            make_periodic_point_masses(alphabet, &[(vec![0, 1], ratio(1, 2)), (vec![1, 0], ratio(1, 2))])
                .expect("valid"),
        ),
        (
            "fig3 state 2, golden Markov",
            &fig3,
            1,
            make_markov_from_cover(&fischer_cover(&fig3).expect("irreducible")).expect("valid"),
        ),
    ];
    let cfg = SampleConfig::new(42, 30, 20_000);
    let mut out = String::new();
    for (name, a, q, mu) in &cases {
        let e = estimate_bifuture(a, *q, mu, &cfg).expect("valid config");
        out += &format!(
            "{name}: {:.4} in [{:.4}, {:.4}] (L = {}, K = {}, N = {})\n",
            e.estimate, e.wilson_interval.0, e.wilson_interval.1, e.prefix_length, e.horizon, e.trials
        );
    }
    out
}

fn main() {
    print!("{}", run_example());
}
