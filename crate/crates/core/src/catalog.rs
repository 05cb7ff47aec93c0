//! The standard small examples: golden mean and full shift presentations,
//! three unambiguous full-shift automata and an ambiguous golden-mean one.
//! All of them are shift-space automata over `{0, 1}` with states named
//! `1`, `2`, ...

use crate::automaton::Automaton;

fn build(states: &[&str], transitions: &[(&str, &str, &str)]) -> Automaton {
    Automaton::shift(&["0", "1"], states, transitions).expect("catalog automaton is valid")
}

/// Deterministic golden mean presentation (its Fischer cover).
pub fn golden_mean() -> Automaton {
    build(&["1", "2"], &[("1", "0", "1"), ("1", "1", "2"), ("2", "0", "1")])
}

/// Reverse-deterministic golden mean presentation.
pub fn golden_mean_reversed() -> Automaton {
    build(&["1", "2"], &[("1", "0", "1"), ("1", "0", "2"), ("2", "1", "1")])
}

/// Deterministic full shift presentation with two states.
pub fn fig2_left() -> Automaton {
    build(
        &["1", "2"],
        &[("1", "0", "1"), ("1", "1", "2"), ("2", "0", "1"), ("2", "1", "2")],
    )
}

/// Reverse-deterministic full shift presentation: `Fut(1) = 0Aℕ`,
/// `Fut(2) = 1Aℕ`.
pub fn fig2_middle() -> Automaton {
    build(
        &["1", "2"],
        &[("1", "0", "1"), ("1", "0", "2"), ("2", "1", "1"), ("2", "1", "2")],
    )
}

/// Unambiguous full shift presentation that is neither deterministic nor
/// reverse-deterministic; `(01)ℕ` labels two infinite runs from state 1.
pub fn fig2_right() -> Automaton {
    build(
        &["1", "2", "3", "4"],
        &[
            ("1", "0", "1"),
            ("1", "1", "2"),
            ("2", "0", "1"),
            ("1", "0", "3"),
            ("3", "1", "4"),
            ("4", "0", "3"),
            ("4", "1", "3"),
            ("4", "1", "1"),
        ],
    )
}

/// Ambiguous golden mean presentation: `00` labels `2→1→1` and `2→2→1`.
pub fn fig3() -> Automaton {
    build(
        &["1", "2"],
        &[("1", "0", "1"), ("1", "1", "2"), ("2", "0", "1"), ("2", "0", "2")],
    )
}

/// One state with a loop per symbol of `alphabet`.
pub fn full_shift(alphabet: &[&str]) -> Automaton {
    let transitions: Vec<(&str, &str, &str)> = alphabet.iter().map(|a| ("1", *a, "1")).collect();
    Automaton::shift(alphabet, &["1"], &transitions).expect("full shift is valid")
}
