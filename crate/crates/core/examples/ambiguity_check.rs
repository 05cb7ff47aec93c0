//! Decide unambiguity of the standard presentations by pair-graph search.
//!
//! Run with `cargo run --example ambiguity_check`.

use sofic::catalog;
use sofic::unambiguity::check_unambiguous;

pub fn run_example() -> String {
    let cases = [
        ("golden mean, deterministic", catalog::golden_mean()),
        ("golden mean, reverse-deterministic", catalog::golden_mean_reversed()),
        ("full shift, deterministic", catalog::fig2_left()),
        ("full shift, reverse-deterministic", catalog::fig2_middle()),
        ("full shift, neither", catalog::fig2_right()),
        ("golden mean, ambiguous", catalog::fig3()),
    ];
    let mut out = String::new();
    for (name, a) in &cases {
        let verdict = check_unambiguous(a);
        let line = match &verdict.witness {
            None => format!("{name}: unambiguous\n"),
            Some(w) => format!("{name}: ambiguous; witness: {}\n", w.describe(a)),
        };
        out.push_str(&line);
    }
    out
}

fn main() {
    print!("{}", run_example());
}
