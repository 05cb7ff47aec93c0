//! Exact unambiguity decision on the flagged pair graph.

use std::collections::VecDeque;

use serde::Serialize;

use crate::automaton::{Automaton, Word};

/// Two distinct runs with the same endpoints and label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunWitness {
    pub start: usize,
    pub end: usize,
    pub label: Word,
    /// State sequences, each of length `label.len() + 1`.
    pub run1: Vec<usize>,
    pub run2: Vec<usize>,
}

impl RunWitness {
    /// Replays both runs against `a`.
    pub fn is_valid_for(&self, a: &Automaton) -> bool {
        let ok = |run: &[usize]| {
            run.len() == self.label.len() + 1
                && run[0] == self.start
                && run[run.len() - 1] == self.end
                && run
                    .windows(2)
                    .zip(&self.label)
                    .all(|(w, &sym)| a.successors(w[0], sym).contains(&w[1]))
        };
        ok(&self.run1) && ok(&self.run2) && self.run1 != self.run2
    }

    pub fn describe(&self, a: &Automaton) -> String {
        let run = |r: &[usize]| {
            r.iter()
                .map(|&q| a.state_name(q))
                .collect::<Vec<_>>()
                .join("→")
        };
        format!(
            "word {}, runs {} and {}",
            a.format_word(&self.label),
            run(&self.run1),
            run(&self.run2)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmbiguityVerdict {
    pub unambiguous: bool,
    pub witness: Option<RunWitness>,
}

/// Decides whether some word labels two distinct runs with equal start and
/// end states. Breadth-first search over triples `(r, r', diverged)` from
/// every `(p, p, 0)`; a reachable `(q, q, 1)` is an ambiguity, and the BFS
/// parents give a shortest witness.
pub fn check_unambiguous(a: &Automaton) -> AmbiguityVerdict {
    let n = a.num_states();
    let k = a.alphabet().len();
    let id = |r: usize, s: usize, f: usize| (r * n + s) * 2 + f;
    let total = n * n * 2;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; total];
    let mut seen = vec![false; total];
    let mut queue = VecDeque::new();
    for p in 0..n {
        let v = id(p, p, 0);
        seen[v] = true;
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        let f = v % 2;
        let r = v / 2 / n;
        let s = v / 2 % n;
        for sym in 0..k {
            for &r2 in a.successors(r, sym) {
                for &s2 in a.successors(s, sym) {
                    let f2 = usize::from(f == 1 || r2 != s2);
                    let w = id(r2, s2, f2);
                    if seen[w] {
                        continue;
                    }
                    seen[w] = true;
                    parent[w] = Some((v, sym));
                    if f2 == 1 && r2 == s2 {
                        return AmbiguityVerdict {
                            unambiguous: false,
                            witness: Some(backtrack(&parent, w, n)),
                        };
                    }
                    queue.push_back(w);
                }
            }
        }
    }
    AmbiguityVerdict {
        unambiguous: true,
        witness: None,
    }
}

fn backtrack(parent: &[Option<(usize, usize)>], end: usize, n: usize) -> RunWitness {
    let decode = |v: usize| (v / 2 / n, v / 2 % n);
    let mut label = Vec::new();
    let mut run1 = Vec::new();
    let mut run2 = Vec::new();
    let mut v = end;
    loop {
        let (r, s) = decode(v);
        run1.push(r);
        run2.push(s);
        match parent[v] {
            Some((u, sym)) => {
                label.push(sym);
                v = u;
            }
            None => break,
        }
    }
    label.reverse();
    run1.reverse();
    run2.reverse();
    RunWitness {
        start: run1[0],
        end: *run1.last().expect("non-empty run"),
        label,
        run1,
        run2,
    }
}
