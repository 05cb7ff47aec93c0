//! Seeded generation of random strongly connected shift-space automata,
//! used by the property suites and the exploration example.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automaton::{Automaton, Transition};
use crate::automaton::Alphabet;

fn below(rng: &mut impl RngCore, n: usize) -> usize {
    (rng.next_u64() % n as u64) as usize
}

/// A random strongly connected automaton with exactly `states` states over
/// the alphabet `{0, …, symbols-1}`, every state initial and final.
///
/// A random Hamiltonian cycle guarantees strong connectivity; each other
/// triple is then added with probability `d/16`, where the density `d` is
/// drawn from `0..=4` once per automaton so that sparse (often
/// unambiguous) and dense (often ambiguous) automata both occur.
pub fn strongly_connected(rng: &mut impl RngCore, states: usize, symbols: usize) -> Automaton {
    assert!(states >= 1 && symbols >= 1);
    let names: Vec<String> = (1..=states).map(|i| i.to_string()).collect();
    let letters: Vec<String> = (0..symbols).map(|i| i.to_string()).collect();
    let mut order: Vec<usize> = (0..states).collect();
    for i in (1..states).rev() {
        let j = below(rng, i + 1);
        order.swap(i, j);
    }
    let mut transitions = Vec::new();
    for i in 0..states {
        transitions.push(Transition {
            source: order[i],
            symbol: below(rng, symbols),
            target: order[(i + 1) % states],
        });
    }
    let density = below(rng, 5);
    for source in 0..states {
        for symbol in 0..symbols {
            for target in 0..states {
                if below(rng, 16) < density {
                    transitions.push(Transition { source, symbol, target });
                }
            }
        }
    }
    let all: Vec<usize> = (0..states).collect();
    let alphabet = Alphabet::new(&letters).expect("distinct symbols");
    Automaton::from_indices(alphabet, names, transitions, &all, &all).expect("well formed")
}

pub fn strongly_connected_with_seed(seed: u64, states: usize, symbols: usize) -> Automaton {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    strongly_connected(&mut rng, states, symbols)
}

/// Draws sizes uniformly from `1..=max_states` and `1..=max_symbols`.
pub fn strongly_connected_up_to(rng: &mut impl RngCore, max_states: usize, max_symbols: usize) -> Automaton {
    let n = 1 + below(rng, max_states);
    let k = 1 + below(rng, max_symbols);
    strongly_connected(rng, n, k)
}
