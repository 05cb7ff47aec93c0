//! Bi-futures: `bifut(q)` is the set of sequences labelling two distinct
//! runs from `q`. It decomposes as the countable union of the closed sets
//! `wa(Fut(s) ∩ Fut(s′))` over runs `q →w p`, transitions `p →a s`,
//! `p →a s′` with `s ≠ s′`. Its measure is zero iff every term is null.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::automaton::{is_strongly_connected, Automaton, Transition, Word};
use crate::error::Result;
use crate::measure::{support_counterexample, RationalMeasure};
use crate::pair_graph::{closed_set_measure, WeightedPairGraph};
use crate::rational::Rational;
use crate::subshift::DeterministicCover;
use crate::unambiguity::check_unambiguous;

/// Deterministic all-final recognizer of `Fut(q) ∩ Fut(q′)`: states are the
/// pairs `({q}·w, {q′}·w)` of non-empty live subsets. `None` when the
/// intersection is empty.
pub fn intersection_recognizer(a: &Automaton, q: usize, q2: usize) -> Result<Option<DeterministicCover>> {
    a.check_state(q)?;
    a.check_state(q2)?;
    let live = a.live_states();
    let k = a.alphabet().len();
    let step = |set: &[usize], sym: usize| -> Vec<usize> { a.step_set(set, sym).into_iter().filter(|&s| live[s]).collect() };
    let start = (
        vec![q].into_iter().filter(|&s| live[s]).collect::<Vec<_>>(),
        vec![q2].into_iter().filter(|&s| live[s]).collect::<Vec<_>>(),
    );
    if start.0.is_empty() || start.1.is_empty() {
        return Ok(None);
    }
    let mut nodes = vec![start.clone()];
    let mut index = HashMap::from([(start, 0usize)]);
    let mut transitions = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        for sym in 0..k {
            let next = (step(&nodes[i].0, sym), step(&nodes[i].1, sym));
            if next.0.is_empty() || next.1.is_empty() {
                continue;
            }
            let j = *index.entry(next.clone()).or_insert_with(|| {
                nodes.push(next);
                nodes.len() - 1
            });
            transitions.push(Transition {
                source: i,
                symbol: sym,
                target: j,
            });
        }
        i += 1;
    }
    let names: Vec<String> = nodes
        .iter()
        .map(|(x, y)| format!("{}|{}", crate::subset::subset_name(a, x), crate::subset::subset_name(a, y)))
        .collect();
    let all: Vec<usize> = (0..names.len()).collect();
    let rec = Automaton::from_indices(a.alphabet().clone(), names, transitions, &all, &all)?;
    // Live components need not share an infinite continuation.
    if !rec.live_states()[0] {
        return Ok(None);
    }
    Ok(Some(DeterministicCover::new(rec)?))
}

/// `μ(Fut(q) ∩ Fut(q′))`, exactly.
pub fn future_intersection_measure(a: &Automaton, q: usize, q2: usize, mu: &RationalMeasure) -> Result<Rational> {
    mu.alphabet().check_same(a.alphabet())?;
    match intersection_recognizer(a, q, q2)? {
        None => Ok(Rational::from_integer(0.into())),
        Some(d) => closed_set_measure(mu, &d, 0, &[]),
    }
}

/// A union term `wa(Fut(s) ∩ Fut(s′))` of positive measure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BifutureWitness {
    /// Labels a run from the queried state to `branch_state`.
    pub prefix: Word,
    pub branch_state: usize,
    pub symbol: usize,
    pub branch: (usize, usize),
}

impl BifutureWitness {
    /// `wa`.
    pub fn word(&self) -> Word {
        let mut w = self.prefix.clone();
        w.push(self.symbol);
        w
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BifutureDecision {
    pub null: bool,
    /// The shortest positive union term, when not null.
    pub witness: Option<BifutureWitness>,
}

/// Positivity of `α` on vertices `(p, start)` of the intersection
/// recognizer of an unordered branch, for every measure state `p`.
struct BranchCache<'a> {
    a: &'a Automaton,
    mu: &'a RationalMeasure,
    positive: HashMap<(usize, usize), Vec<bool>>,
}

impl BranchCache<'_> {
    fn positive_at(&mut self, s: usize, s2: usize, p: usize) -> Result<bool> {
        let key = (s.min(s2), s.max(s2));
        if !self.positive.contains_key(&key) {
            let m = self.mu.dim();
            let flags = match intersection_recognizer(self.a, key.0, key.1)? {
                None => vec![false; m],
                Some(d) => {
                    let init: Vec<(usize, usize)> = (0..m).map(|p| (p, 0)).collect();
                    let g = WeightedPairGraph::explore(self.mu, &d, &init)?;
                    let pos = g.positive_vertices();
                    (0..m).map(|p| pos[g.index_of(p, 0).expect("initial vertex")]).collect()
                }
            };
            self.positive.insert(key, flags);
        }
        Ok(self.positive[&key][p])
    }
}

/// Exact decision of `μ(bifut(q)) = 0`.
///
/// Searches the product of `a` with the support automaton of `μ` from
/// `(q, p)` for `π_p > 0`; a configuration `(r, p)` with `r →a s`,
/// `r →a s′`, `s ≠ s′`, `ν(a)_{p,p′} > 0` and `α_{p′,(s,s′)} > 0` is a union
/// term of positive measure. Breadth-first order makes the witness prefix
/// shortest.
pub fn bifuture_is_null(a: &Automaton, q: usize, mu: &RationalMeasure) -> Result<BifutureDecision> {
    a.check_state(q)?;
    mu.alphabet().check_same(a.alphabet())?;
    let n = a.num_states();
    let m = mu.dim();
    let k = a.alphabet().len();
    let support = mu.support_automaton();
    let mut cache = BranchCache {
        a,
        mu,
        positive: HashMap::new(),
    };
    let id = |r: usize, p: usize| r * m + p;
    let mut parent: Vec<Option<Option<(usize, usize)>>> = vec![None; n * m];
    let mut queue = VecDeque::new();
    for p in support.initial_states() {
        parent[id(q, p)] = Some(None);
        queue.push_back(id(q, p));
    }
    while let Some(v) = queue.pop_front() {
        let (r, p) = (v / m, v % m);
        for sym in 0..k {
            let succ = a.successors(r, sym);
            let measure_succ = support.successors(p, sym);
            for (i, &s) in succ.iter().enumerate() {
                for &s2 in &succ[i + 1..] {
                    for &p2 in measure_succ {
                        if cache.positive_at(s, s2, p2)? {
                            let mut prefix = Vec::new();
                            let mut u = v;
                            while let Some(Some((from, b))) = parent[u] {
                                prefix.push(b);
                                u = from;
                            }
                            prefix.reverse();
                            return Ok(BifutureDecision {
                                null: false,
                                witness: Some(BifutureWitness {
                                    prefix,
                                    branch_state: r,
                                    symbol: sym,
                                    branch: (s, s2),
                                }),
                            });
                        }
                    }
                }
            }
            for &r2 in succ {
                for &p2 in measure_succ {
                    let u = id(r2, p2);
                    if parent[u].is_none() {
                        parent[u] = Some(Some((v, sym)));
                        queue.push_back(u);
                    }
                }
            }
        }
    }
    Ok(BifutureDecision {
        null: true,
        witness: None,
    })
}

/// `μ(wa(Fut(s) ∩ Fut(s′)))`, the exact measure of one union term (terms
/// overlap, so their sum only bounds `μ(bifut(q))` from above).
pub fn union_term_measure(
    a: &Automaton,
    mu: &RationalMeasure,
    prefix: &[usize],
    symbol: usize,
    branch: (usize, usize),
) -> Result<Rational> {
    mu.alphabet().check_same(a.alphabet())?;
    let mut word = prefix.to_vec();
    word.push(symbol);
    match intersection_recognizer(a, branch.0, branch.1)? {
        None => Ok(Rational::from_integer(0.into())),
        Some(d) => closed_set_measure(mu, &d, 0, &word),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    pub hypotheses_ok: bool,
    /// One line per failed hypothesis.
    pub reasons: Vec<String>,
    /// Whether the accessible, live part of the support automaton is
    /// strongly connected. The equivalence can fail without it even when
    /// every other hypothesis holds.
    pub irreducible_support: bool,
    pub unambiguous: bool,
    pub all_bifutures_null: bool,
    /// `bifut(q)` is null, per state.
    pub per_state: Vec<bool>,
    pub equivalence_holds: bool,
}

/// Evaluates both sides of the equivalence between unambiguity and the
/// nullity of every bi-future, reporting hypothesis failures instead of
/// failing.
pub fn theorem2_check(a: &Automaton, mu: &RationalMeasure) -> Result<Theorem2Report> {
    mu.alphabet().check_same(a.alphabet())?;
    let mut reasons = Vec::new();
    if !is_strongly_connected(a) {
        reasons.push("automaton is not strongly connected".to_string());
    }
    if !a.is_shift_space() {
        reasons.push("automaton is not in shift-space mode (every state initial and final)".to_string());
    } else if let Some(w) = support_counterexample(mu, a)? {
        let side = if crate::measure::word_measure(mu, &w)? > Rational::from_integer(0.into()) {
            "has positive measure but is not a factor"
        } else {
            "is a factor but has measure zero"
        };
        reasons.push(format!("support differs from the factor language: `{}` {side}", a.format_word(&w)));
    }
    let unambiguous = check_unambiguous(a).unambiguous;
    let per_state = (0..a.num_states())
        .map(|q| bifuture_is_null(a, q, mu).map(|d| d.null))
        .collect::<Result<Vec<bool>>>()?;
    let all_bifutures_null = per_state.iter().all(|&x| x);
    Ok(Theorem2Report {
        hypotheses_ok: reasons.is_empty(),
        reasons,
        irreducible_support: support_is_irreducible(mu),
        unambiguous,
        all_bifutures_null,
        per_state,
        equivalence_holds: unambiguous == all_bifutures_null,
    })
}

fn support_is_irreducible(mu: &RationalMeasure) -> bool {
    let s = mu.support_automaton();
    let live = s.live_states();
    let mut seen = vec![false; s.num_states()];
    let mut stack: Vec<usize> = s.initial_states().filter(|&p| live[p]).collect();
    for &p in &stack {
        seen[p] = true;
    }
    while let Some(p) = stack.pop() {
        for t in s.transitions().iter().filter(|t| t.source == p && live[t.target]) {
            if !seen[t.target] {
                seen[t.target] = true;
                stack.push(t.target);
            }
        }
    }
    let keep: Vec<usize> = (0..s.num_states()).filter(|&p| seen[p]).collect();
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let graph: Vec<Vec<usize>> = keep
        .iter()
        .map(|&p| {
            s.transitions()
                .iter()
                .filter(|t| t.source == p)
                .filter_map(|t| pos.get(&t.target).copied())
                .collect()
        })
        .collect();
    crate::scc::tarjan(&graph).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;
    use crate::catalog;
    use crate::measure::{make_markov_from_cover, make_mixture, make_periodic_point_masses, make_uniform, word_measure};
    use crate::pair_graph::closed_set_is_positive;
    use crate::rational::{int, ratio};
    use crate::subshift::{determinize_futures, fischer_cover, synchronizing_word};
    use num_traits::Zero;

    fn bin() -> Alphabet {
        Alphabet::new(&["0", "1"]).unwrap()
    }

    fn uniform() -> RationalMeasure {
        make_uniform(bin()).unwrap()
    }

    fn point_masses() -> RationalMeasure {
        make_periodic_point_masses(bin(), &[(vec![0, 1], ratio(1, 2)), (vec![1, 0], ratio(1, 2))]).unwrap()
    }

    fn golden_markov() -> RationalMeasure {
        make_markov_from_cover(&DeterministicCover::new(catalog::golden_mean()).unwrap()).unwrap()
    }

    #[test]
    fn future_intersections() {
        let u = uniform();
        assert_eq!(future_intersection_measure(&catalog::golden_mean(), 0, 1, &u).unwrap(), int(0));
        assert_eq!(future_intersection_measure(&catalog::fig2_middle(), 0, 1, &u).unwrap(), int(0));
        assert!(intersection_recognizer(&catalog::fig2_middle(), 0, 1).unwrap().is_none());
        let full = catalog::full_shift(&["0", "1"]);
        assert_eq!(future_intersection_measure(&full, 0, 0, &u).unwrap(), int(1));
        // Fut(1) ∩ Fut(2) in the golden-mean automaton is Fut(2) = 0·X, of
        // measure μ(0) = 1/2·1/2 + 1/2·1.
        let g = golden_markov();
        assert_eq!(future_intersection_measure(&catalog::golden_mean(), 0, 1, &g).unwrap(), ratio(3, 4));
    }

    #[test]
    fn bifuture_examples() {
        let fig2 = catalog::fig2_right();
        assert!(bifuture_is_null(&fig2, 0, &uniform()).unwrap().null);
        let d = bifuture_is_null(&fig2, 0, &point_masses()).unwrap();
        assert!(!d.null);
        let w = d.witness.unwrap();
        assert_eq!((w.prefix.clone(), w.symbol, w.branch), (vec![], 0, (0, 2)));
        assert_eq!(union_term_measure(&fig2, &point_masses(), &w.prefix, w.symbol, w.branch).unwrap(), ratio(1, 2));
        for q in 0..2 {
            assert!(bifuture_is_null(&catalog::fig3(), q, &uniform()).unwrap().null);
        }
        for q in 0..2 {
            let d = bifuture_is_null(&catalog::fig3(), q, &golden_markov()).unwrap();
            assert!(!d.null, "state {q}");
            let w = d.witness.unwrap();
            assert!(union_term_measure(&catalog::fig3(), &golden_markov(), &w.prefix, w.symbol, w.branch).unwrap() > int(0));
        }
    }

    #[test]
    fn measure_check_examples() {
        let r = theorem2_check(&catalog::fig2_right(), &uniform()).unwrap();
        assert!(r.hypotheses_ok && r.unambiguous && r.all_bifutures_null && r.equivalence_holds);

        let r = theorem2_check(&catalog::fig3(), &uniform()).unwrap();
        assert!(!r.hypotheses_ok);
        assert!(r.reasons[0].contains("`11`"), "{:?}", r.reasons);
        assert!(!r.unambiguous && r.all_bifutures_null && !r.equivalence_holds);

        let r = theorem2_check(&catalog::fig3(), &golden_markov()).unwrap();
        assert!(r.hypotheses_ok && !r.unambiguous && !r.all_bifutures_null && r.equivalence_holds);

        let r = theorem2_check(&catalog::fig2_right(), &point_masses()).unwrap();
        assert!(!r.hypotheses_ok && r.unambiguous && !r.all_bifutures_null && !r.equivalence_holds);
    }

    /// A measure whose support is all of fact(X) but whose representation
    /// is reducible: the equivalence fails although the stated hypotheses
    /// hold.
    #[test]
    fn reducible_support_breaks_the_equivalence() {
        let mu = make_mixture(&uniform(), &point_masses(), &ratio(1, 2)).unwrap();
        let r = theorem2_check(&catalog::fig2_right(), &mu).unwrap();
        assert!(r.hypotheses_ok);
        assert!(!r.irreducible_support);
        assert!(r.unambiguous);
        assert!(!r.all_bifutures_null);
        assert!(!r.equivalence_holds);
        assert_eq!(union_term_measure(&catalog::fig2_right(), &mu, &[], 0, (0, 2)).unwrap(), ratio(1, 4));
    }

    fn irreducible_measure(a: &Automaton) -> RationalMeasure {
        make_markov_from_cover(&fischer_cover(a).unwrap()).unwrap()
    }

    fn small_automata() -> Vec<Automaton> {
        let mut out = vec![
            catalog::golden_mean(),
            catalog::golden_mean_reversed(),
            catalog::fig2_left(),
            catalog::fig2_middle(),
            catalog::fig2_right(),
            catalog::fig3(),
        ];
        out.extend((0..40u64).map(|s| crate::random::strongly_connected_with_seed(s, 1 + (s as usize % 4), 1 + (s as usize % 2) + (s as usize % 3 == 0) as usize)));
        out
    }

    fn words_up_to(k: usize, len: usize) -> Vec<Word> {
        let mut out = vec![vec![]];
        let mut layer: Vec<Word> = vec![vec![]];
        for _ in 0..len {
            layer = layer.iter().flat_map(|w| (0..k).map(move |a| [w.clone(), vec![a]].concat())).collect();
            out.extend(layer.clone());
        }
        out
    }

    #[test]
    fn synchronizing_cylinders_have_full_measure() {
        for a in small_automata() {
            let cover = fischer_cover(&a).unwrap();
            let mu = irreducible_measure(&a);
            let Some(v) = synchronizing_word(&cover) else { continue };
            let all: Vec<usize> = (0..cover.num_states()).collect();
            for u in words_up_to(a.alphabet().len(), 2) {
                let w = [u, v.clone()].concat();
                let reached = cover.automaton().read_set(&all, &w);
                let [r] = reached[..] else { continue };
                assert_eq!(closed_set_measure(&mu, &cover, r, &w).unwrap(), word_measure(&mu, &w).unwrap());
                assert!(word_measure(&mu, &w).unwrap() > int(0));
            }
        }
    }

    #[test]
    fn futures_of_pasts_are_positive() {
        for a in small_automata().into_iter().filter(|a| a.num_states() <= 4) {
            let mu = irreducible_measure(&a);
            for q in 0..a.num_states() {
                let d = determinize_futures(&a, &[q]).unwrap();
                for w in words_up_to(a.alphabet().len(), 4) {
                    let in_past = (0..a.num_states()).any(|p| a.read_set(&[p], &w).contains(&q));
                    if in_past {
                        assert!(closed_set_is_positive(&mu, &d, 0, &w).unwrap());
                        assert!(closed_set_measure(&mu, &d, 0, &w).unwrap() > int(0));
                    }
                }
            }
        }
    }

    #[test]
    fn prefixes_preserve_null_sets() {
        let mut checked = 0;
        for a in small_automata().into_iter().filter(|a| a.num_states() <= 4) {
            let mu = irreducible_measure(&a);
            for q in 0..a.num_states() {
                for q2 in q + 1..a.num_states() {
                    let Some(d) = intersection_recognizer(&a, q, q2).unwrap() else { continue };
                    if !closed_set_measure(&mu, &d, 0, &[]).unwrap().is_zero() {
                        continue;
                    }
                    checked += 1;
                    for w in words_up_to(a.alphabet().len(), 4) {
                        assert!(closed_set_measure(&mu, &d, 0, &w).unwrap().is_zero());
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn branching_pairs_of_unambiguous_automata_are_null() {
        let mut checked = 0;
        for a in small_automata().into_iter().filter(|a| check_unambiguous(a).unambiguous) {
            let mu = irreducible_measure(&a);
            for (q, q2) in reachable_branch_pairs(&a) {
                checked += 1;
                assert!(future_intersection_measure(&a, q, q2, &mu).unwrap().is_zero());
            }
        }
        assert!(checked > 0);
    }

    /// Pairs `(q, q′)`, `q < q′`, with runs `p →u q` and `p →u q′`.
    pub(crate) fn reachable_branch_pairs(a: &Automaton) -> Vec<(usize, usize)> {
        let n = a.num_states();
        let mut seen = vec![vec![false; n]; n];
        let mut stack: Vec<(usize, usize)> = (0..n).map(|p| (p, p)).collect();
        for &(p, _) in &stack {
            seen[p][p] = true;
        }
        while let Some((x, y)) = stack.pop() {
            for sym in 0..a.alphabet().len() {
                for &x2 in a.successors(x, sym) {
                    for &y2 in a.successors(y, sym) {
                        if !seen[x2][y2] {
                            seen[x2][y2] = true;
                            stack.push((x2, y2));
                        }
                    }
                }
            }
        }
        (0..n).flat_map(|q| (q + 1..n).map(move |q2| (q, q2))).filter(|&(q, q2)| seen[q][q2] || seen[q2][q]).collect()
    }

    #[test]
    fn measure_check_on_random_automata() {
        for seed in 0..80u64 {
            let a = crate::random::strongly_connected_with_seed(1000 + seed, 1 + (seed as usize % 5), 1 + (seed as usize % 3));
            let r = theorem2_check(&a, &irreducible_measure(&a)).unwrap();
            assert!(r.hypotheses_ok, "{:?}", r.reasons);
            assert!(r.irreducible_support);
            assert!(r.equivalence_holds, "seed {seed}");
        }
    }
}
