//! Reading and writing automaton and measure files, and DOT export.

use sofic::format::{automaton_to_dot, export_automaton, export_measure, parse_automaton, parse_measure};
use sofic::measure::word_measure;
use sofic::rational::format;

const AUTOMATON: &str = "\
# ambiguous golden mean presentation
alphabet: 0 1
states: 1 2
trans: 1 0 1
trans: 1 1 2
trans: 2 0 1
trans: 2 0 2
";

const MEASURE: &str = "\
dim: 2
alphabet: 0 1
pi: 1/2 1/2
nu 0:
1/2 0
1 0
nu 1:
0 1/2
0 0
";

pub fn run_example() -> String {
    let a = parse_automaton(AUTOMATON).expect("well formed");
    let mu = parse_measure(MEASURE).expect("well formed");
    let mut out = export_automaton(&a);
    out += &export_measure(&mu);
    out += &format!("μ(010) = {}\n", format(&word_measure(&mu, &[0, 1, 0]).expect("measure")));
    if let Err(e) = parse_automaton("alphabet: 0\nstates: 1\ntrans: 1 0 1\ntrans: 1 0 1\n") {
        out += &format!("rejected: {e}\n");
    }
    out += &automaton_to_dot(&a);
    out
}

fn main() {
    print!("{}", run_example());
}
