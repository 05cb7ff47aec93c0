//! Subset-construction machinery shared by the sofic-shift algorithms.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Automaton, Word};

/// Reachable non-empty subsets `S · w`, discovered breadth-first with
/// symbols in alphabet order. Subset 0 is the start set.
#[derive(Clone, Debug)]
pub(crate) struct SubsetGraph {
    pub subsets: Vec<Vec<usize>>,
    pub succ: Vec<Vec<Option<usize>>>,
}

impl SubsetGraph {
    pub fn explore(a: &Automaton, start: &[usize], mask: Option<&[bool]>) -> Self {
        let k = a.alphabet().len();
        let restrict = |set: Vec<usize>| -> Vec<usize> {
            match mask {
                Some(m) => set.into_iter().filter(|&q| m[q]).collect(),
                None => set,
            }
        };
        let mut start = restrict(start.to_vec());
        start.sort_unstable();
        start.dedup();
        let mut g = SubsetGraph {
            subsets: Vec::new(),
            succ: Vec::new(),
        };
        if start.is_empty() {
            return g;
        }
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(start.clone(), 0);
        g.subsets.push(start);
        g.succ.push(vec![None; k]);
        let mut i = 0;
        while i < g.subsets.len() {
            for sym in 0..k {
                let next = restrict(a.step_set(&g.subsets[i], sym));
                if next.is_empty() {
                    continue;
                }
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        let j = g.subsets.len();
                        index.insert(next.clone(), j);
                        g.subsets.push(next);
                        g.succ.push(vec![None; k]);
                        j
                    }
                };
                g.succ[i][sym] = Some(j);
            }
            i += 1;
        }
        g
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn graph(&self) -> Vec<Vec<usize>> {
        self.succ
            .iter()
            .map(|row| {
                let mut r: Vec<usize> = row.iter().flatten().copied().collect();
                r.sort_unstable();
                r.dedup();
                r
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Relation {
    /// Languages are equal.
    Equal,
    /// Every word of the left language is in the right one.
    Included,
}

/// Shortest word (shortlex) separating the finite-word languages
/// `{w : S · w ≠ ∅}` of `(a, sa)` and `(b, sb)` with respect to `rel`,
/// computed over live states only, so that the languages compared are the
/// prefix sets of the closed sets `Fut(sa)` and `Fut(sb)`.
pub(crate) fn first_difference(
    a: &Automaton,
    sa: &[usize],
    b: &Automaton,
    sb: &[usize],
    rel: Relation,
) -> Option<Word> {
    let la = a.live_states();
    let lb = b.live_states();
    let norm = |set: &[usize], live: &[bool]| {
        let mut s: Vec<usize> = set.iter().copied().filter(|&q| live[q]).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    let start = (norm(sa, &la), norm(sb, &lb));
    let violates = |x: bool, y: bool| match rel {
        Relation::Equal => x != y,
        Relation::Included => x && !y,
    };
    if violates(!start.0.is_empty(), !start.1.is_empty()) {
        return Some(Vec::new());
    }
    if start.0.is_empty() || start.1.is_empty() {
        return None;
    }
    let k = a.alphabet().len();
    let mut seen: HashMap<(Vec<usize>, Vec<usize>), usize> = HashMap::new();
    // Each node is a pair of subsets and its BFS parent with the symbol read.
    type Node = ((Vec<usize>, Vec<usize>), Option<(usize, usize)>);
    let mut nodes: Vec<Node> = Vec::new();
    seen.insert(start.clone(), 0);
    nodes.push((start, None));
    let mut queue = VecDeque::from([0usize]);
    let word_to = |nodes: &[Node], mut i: usize| {
        let mut w = Vec::new();
        while let Some((p, sym)) = nodes[i].1 {
            w.push(sym);
            i = p;
        }
        w.reverse();
        w
    };
    while let Some(i) = queue.pop_front() {
        for sym in 0..k {
            let (x, y) = &nodes[i].0;
            let nx = norm(&a.step_set(x, sym), &la);
            let ny = norm(&b.step_set(y, sym), &lb);
            if violates(!nx.is_empty(), !ny.is_empty()) {
                let mut w = word_to(&nodes, i);
                w.push(sym);
                return Some(w);
            }
            if nx.is_empty() || ny.is_empty() {
                continue;
            }
            let key = (nx, ny);
            if !seen.contains_key(&key) {
                let j = nodes.len();
                seen.insert(key.clone(), j);
                nodes.push((key, Some((i, sym))));
                queue.push_back(j);
            }
        }
    }
    None
}

pub(crate) fn subset_name(a: &Automaton, set: &[usize]) -> String {
    let names: Vec<&str> = set.iter().map(|&q| a.state_name(q)).collect();
    format!("{{{}}}", names.join(","))
}

/// Shortest path (shortlex) in a deterministic successor table from `from`
/// to any node satisfying `goal`.
pub(crate) fn shortest_word_to(
    succ: &[Vec<Option<usize>>],
    from: usize,
    goal: impl Fn(usize) -> bool,
) -> Option<(Word, usize)> {
    if goal(from) {
        return Some((Vec::new(), from));
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; succ.len()];
    let mut seen = vec![false; succ.len()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(i) = queue.pop_front() {
        for (sym, t) in succ[i].iter().enumerate() {
            let Some(j) = *t else { continue };
            if seen[j] {
                continue;
            }
            seen[j] = true;
            parent[j] = Some((i, sym));
            if goal(j) {
                let mut w = Vec::new();
                let mut v = j;
                while let Some((p, s)) = parent[v] {
                    w.push(s);
                    v = p;
                }
                w.reverse();
                return Some((w, j));
            }
            queue.push_back(j);
        }
    }
    None
}
