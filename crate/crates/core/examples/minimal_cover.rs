//! Fischer covers, synchronizing words and factor counts.

use sofic::catalog;
use sofic::subshift::{factor_count, fischer_cover, isomorphic, shift_language_equal, synchronizing_word};
use sofic::DeterministicCover;

pub fn run_example() -> String {
    let golden = DeterministicCover::new(catalog::golden_mean()).expect("deterministic");
    let from_ambiguous = fischer_cover(&catalog::fig3()).expect("irreducible");
    let from_reversed = fischer_cover(&catalog::golden_mean_reversed()).expect("irreducible");
    let mut out = format!(
        "fischer cover of fig3 has {} states, isomorphic to the golden cover: {}\n",
        from_ambiguous.num_states(),
        isomorphic(&from_ambiguous, &golden)
    );
    out += &format!("reversed presentation gives the same cover: {}\n", isomorphic(&from_reversed, &golden));

    let w = synchronizing_word(&golden).expect("irreducible covers synchronize");
    out += &format!("shortest synchronizing word of the golden cover: {}\n", golden.automaton().format_word(&w));

    let full = catalog::full_shift(&["0", "1"]);
    let eq = shift_language_equal(&catalog::golden_mean(), &full).expect("same alphabet");
    let witness = eq.counterexample.map(|w| full.format_word(&w)).unwrap_or_default();
    out += &format!("golden mean = full shift: {} (distinguishing word {witness})\n", eq.equal);
    for n in [4, 8, 16] {
        out += &format!(
            "factors of length {n}: golden {}, full {}\n",
            factor_count(&catalog::golden_mean(), n).expect("count"),
            factor_count(&full, n).expect("count")
        );
    }
    out
}

fn main() {
    print!("{}", run_example());
}
