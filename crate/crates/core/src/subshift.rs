//! Sofic-shift algorithms: determinization of futures, the Fischer cover,
//! synchronizing words, factor counting and shift equality.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::automaton::{Automaton, Transition, Word};
use crate::error::{Error, Result};
use crate::scc;
use crate::subset::{first_difference, subset_name, Relation, SubsetGraph};

/// A deterministic automaton (at most one transition per state and symbol)
/// in which every state is final.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterministicCover {
    automaton: Automaton,
    subset_map: Option<Vec<Vec<usize>>>,
    start: usize,
}

impl DeterministicCover {
    /// Wraps a deterministic automaton. `start` defaults to state 0.
    pub fn new(automaton: Automaton) -> Result<Self> {
        automaton.check_deterministic_transitions()?;
        Ok(DeterministicCover {
            automaton,
            subset_map: None,
            start: 0,
        })
    }

    pub fn with_start(mut self, start: usize) -> Result<Self> {
        self.automaton.check_state(start)?;
        self.start = start;
        Ok(self)
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn into_automaton(self) -> Automaton {
        self.automaton
    }

    /// For covers built by subset construction: the source states each
    /// state stands for.
    pub fn subset_map(&self) -> Option<&[Vec<usize>]> {
        self.subset_map.as_deref()
    }

    /// The designated start state (the start subset for
    /// [`determinize_futures`]).
    pub fn start(&self) -> usize {
        self.start
    }

    pub fn num_states(&self) -> usize {
        self.automaton.num_states()
    }

    pub fn next(&self, q: usize, a: usize) -> Option<usize> {
        self.automaton.successors(q, a).first().copied()
    }

    /// `q · w`, if defined.
    pub fn read(&self, q: usize, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(q, |q, &a| self.next(q, a))
    }

    fn from_table(
        source: &Automaton,
        subsets: Vec<Vec<usize>>,
        table: &[Vec<Option<usize>>],
    ) -> Self {
        let names: Vec<String> = subsets.iter().map(|s| subset_name(source, s)).collect();
        let transitions = table
            .iter()
            .enumerate()
            .flat_map(|(q, row)| {
                row.iter().enumerate().filter_map(move |(a, t)| {
                    t.map(|target| Transition {
                        source: q,
                        symbol: a,
                        target,
                    })
                })
            })
            .collect();
        let all: Vec<usize> = (0..names.len()).collect();
        let automaton = Automaton::from_indices(source.alphabet().clone(), names, transitions, &all, &all)
            .expect("subset automaton is well formed");
        DeterministicCover {
            automaton,
            subset_map: Some(subsets),
            start: 0,
        }
    }
}

/// Subset construction restricted to the non-empty subsets `start · w`.
/// State 0 is `start`; every state is initial and final.
pub fn determinize_futures(a: &Automaton, start: &[usize]) -> Result<DeterministicCover> {
    for &q in start {
        a.check_state(q)?;
    }
    if start.is_empty() {
        return Err(Error::Hypothesis("start set must be non-empty".into()));
    }
    let g = SubsetGraph::explore(a, start, None);
    let table = g.succ.clone();
    Ok(DeterministicCover::from_table(a, g.subsets, &table))
}

/// The minimal deterministic presentation of the irreducible sofic shift
/// accepted by `a`.
///
/// Determinizes from the full state set, keeps the recurrent component of
/// the subset automaton holding the lexicographically smallest subset, and
/// merges states with equal futures by Moore refinement, starting from the
/// partition by sets of defined symbols.
pub fn fischer_cover(a: &Automaton) -> Result<DeterministicCover> {
    a.require_shift_space()?;
    a.require_strongly_connected()?;
    let all: Vec<usize> = (0..a.num_states()).collect();
    let live = a.live_states();
    let mut g = SubsetGraph::explore(a, &all, Some(&live));
    if g.len() == 0 {
        // No infinite run at all: the empty shift. Keep a single state.
        g = SubsetGraph::explore(a, &all, None);
    }
    let comps = scc::classify(&g.graph());
    let component = comps
        .into_iter()
        .filter(|(_, recurrent)| *recurrent)
        .map(|(c, _)| c)
        .min_by(|x, y| {
            let mx = x.iter().map(|&i| &g.subsets[i]).min();
            let my = y.iter().map(|&i| &g.subsets[i]).min();
            mx.cmp(&my)
        })
        .ok_or_else(|| Error::Internal("subset automaton has no recurrent component".into()))?;
    Ok(quotient(a, &g, &component))
}

/// Moore refinement of a deterministic, transition-closed set of subset
/// states, then the quotient automaton.
fn quotient(source: &Automaton, g: &SubsetGraph, members: &[usize]) -> DeterministicCover {
    let k = source.alphabet().len();
    let mut local = vec![usize::MAX; g.len()];
    for (i, &m) in members.iter().enumerate() {
        local[m] = i;
    }
    let renumber = |keys: Vec<Vec<Option<usize>>>| -> (Vec<usize>, usize) {
        let mut seen: Vec<Vec<Option<usize>>> = Vec::new();
        let mut out = Vec::with_capacity(keys.len());
        for key in keys {
            let id = match seen.iter().position(|s| *s == key) {
                Some(id) => id,
                None => {
                    seen.push(key);
                    seen.len() - 1
                }
            };
            out.push(id);
        }
        (out, seen.len())
    };
    let defined: Vec<Vec<Option<usize>>> = members
        .iter()
        .map(|&m| (0..k).map(|a| g.succ[m][a].map(|_| 0)).collect())
        .collect();
    let (mut class, mut count) = renumber(defined);
    loop {
        let keys: Vec<Vec<Option<usize>>> = members
            .iter()
            .enumerate()
            .map(|(i, &m)| {
                let mut key = vec![Some(class[i])];
                key.extend((0..k).map(|a| g.succ[m][a].map(|t| class[local[t]])));
                key
            })
            .collect();
        let (next, next_count) = renumber(keys);
        class = next;
        if next_count == count {
            break;
        }
        count = next_count;
    }
    let mut reps = vec![usize::MAX; count];
    for (i, &c) in class.iter().enumerate() {
        if reps[c] == usize::MAX {
            reps[c] = members[i];
        }
    }
    let table: Vec<Vec<Option<usize>>> = reps
        .iter()
        .map(|&m| (0..k).map(|a| g.succ[m][a].map(|t| class[local[t]])).collect())
        .collect();
    let subsets = reps.iter().map(|&m| g.subsets[m].clone()).collect();
    DeterministicCover::from_table(source, subsets, &table)
}

/// Shortest (then lexicographically least) word `w` such that exactly one
/// state has a run ending in it labelled `w`, or `None` if there is none.
pub fn synchronizing_word(c: &DeterministicCover) -> Option<Word> {
    let a = c.automaton();
    let all: Vec<usize> = (0..a.num_states()).collect();
    let g = SubsetGraph::explore(a, &all, None);
    crate::subset::shortest_word_to(&g.succ, 0, |i| g.subsets[i].len() == 1).map(|(w, _)| w)
}

/// Number of words of length `n` that are factors of the accepted shift.
pub fn factor_count(a: &Automaton, n: usize) -> Result<BigUint> {
    a.require_shift_space()?;
    let all: Vec<usize> = (0..a.num_states()).collect();
    let live = a.live_states();
    let g = SubsetGraph::explore(a, &all, Some(&live));
    if g.len() == 0 {
        return Ok(if n == 0 { BigUint::one() } else { BigUint::zero() });
    }
    let mut counts = vec![BigUint::zero(); g.len()];
    counts[0] = BigUint::one();
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); g.len()];
        for (i, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for t in g.succ[i].iter().flatten() {
                next[*t] += c;
            }
        }
        counts = next;
    }
    Ok(counts.into_iter().sum())
}

/// Result of comparing two factor languages.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LanguageCheck {
    pub equal: bool,
    /// Shortest word in exactly one of the languages.
    pub counterexample: Option<Word>,
}

/// Compares the shifts accepted by two shift-space automata through their
/// factor languages.
pub fn shift_language_equal(a: &Automaton, b: &Automaton) -> Result<LanguageCheck> {
    a.require_shift_space()?;
    b.require_shift_space()?;
    a.alphabet().check_same(b.alphabet())?;
    let sa: Vec<usize> = (0..a.num_states()).collect();
    let sb: Vec<usize> = (0..b.num_states()).collect();
    let counterexample = first_difference(a, &sa, b, &sb, Relation::Equal);
    Ok(LanguageCheck {
        equal: counterexample.is_none(),
        counterexample,
    })
}

/// Shortest factor of `a` that is not a factor of `b`.
pub fn factor_excess(a: &Automaton, b: &Automaton) -> Result<Option<Word>> {
    a.require_shift_space()?;
    b.require_shift_space()?;
    a.alphabet().check_same(b.alphabet())?;
    let sa: Vec<usize> = (0..a.num_states()).collect();
    let sb: Vec<usize> = (0..b.num_states()).collect();
    Ok(first_difference(a, &sa, b, &sb, Relation::Included))
}

/// Isomorphism of deterministic covers whose states are all reachable from
/// some state (in particular, strongly connected ones).
pub fn isomorphic(x: &DeterministicCover, y: &DeterministicCover) -> bool {
    if x.num_states() != y.num_states() || x.automaton().alphabet() != y.automaton().alphabet() {
        return false;
    }
    let n = x.num_states();
    let k = x.automaton().alphabet().len();
    'candidate: for image in 0..n {
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[0] = image;
        used[image] = true;
        let mut todo = vec![0];
        while let Some(q) = todo.pop() {
            for a in 0..k {
                match (x.next(q, a), y.next(map[q], a)) {
                    (None, None) => {}
                    (Some(s), Some(t)) => {
                        if map[s] == usize::MAX {
                            if used[t] {
                                continue 'candidate;
                            }
                            map[s] = t;
                            used[t] = true;
                            todo.push(s);
                        } else if map[s] != t {
                            continue 'candidate;
                        }
                    }
                    _ => continue 'candidate,
                }
            }
        }
        if map.iter().all(|&m| m != usize::MAX) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::count_runs;
    use crate::catalog;

    fn subset_names(c: &DeterministicCover) -> Vec<String> {
        c.automaton().state_names().to_vec()
    }

    #[test]
    fn determinize_reversed_golden_mean() {
        let a = catalog::golden_mean_reversed();
        let d = determinize_futures(&a, &[0, 1]).unwrap();
        // {1,2} -0-> {1,2}, {1,2} -1-> {1}, {1} -0-> {1,2}, {1} -1-> ∅.
        // Starting from {1,2} the reachable subsets are {1,2} and {1};
        // {2} only appears when starting below, from {2} itself.
        assert_eq!(subset_names(&d), vec!["{1,2}", "{1}"]);
        let from_two = determinize_futures(&a, &[1]).unwrap();
        assert_eq!(subset_names(&from_two), vec!["{2}", "{1}", "{1,2}"]);
        assert!(d.automaton().is_deterministic_transitions());
    }

    #[test]
    fn determinize_deterministic_input_is_identity() {
        let a = catalog::golden_mean();
        let d = determinize_futures(&a, &[0]).unwrap();
        let c = DeterministicCover::new(a).unwrap();
        assert!(isomorphic(&d, &c));
    }

    #[test]
    fn determinize_fig2_right_accepts_full_shift() {
        let a = catalog::fig2_right();
        let d = determinize_futures(&a, &[0, 1, 2, 3]).unwrap();
        let check = shift_language_equal(d.automaton(), &catalog::full_shift(&["0", "1"])).unwrap();
        assert!(check.equal);
    }

    #[test]
    fn fischer_cover_of_golden_mean_presentations() {
        let left = DeterministicCover::new(catalog::golden_mean()).unwrap();
        let c = fischer_cover(&catalog::golden_mean_reversed()).unwrap();
        assert_eq!(c.num_states(), 2);
        assert!(isomorphic(&c, &left));
        let c3 = fischer_cover(&catalog::fig3()).unwrap();
        assert!(isomorphic(&c3, &left));
    }

    #[test]
    fn fischer_cover_of_full_shifts() {
        let full = catalog::full_shift(&["0", "1"]);
        let c = fischer_cover(&full).unwrap();
        assert!(isomorphic(&c, &DeterministicCover::new(full).unwrap()));
        for a in [catalog::fig2_left(), catalog::fig2_middle(), catalog::fig2_right()] {
            let c = fischer_cover(&a).unwrap();
            assert_eq!(c.num_states(), 1);
            assert_eq!(c.automaton().transitions().len(), 2);
        }
    }

    #[test]
    fn fischer_cover_rejects_bad_input() {
        let loops = Automaton::shift(&["0"], &["a", "b"], &[("a", "0", "a"), ("b", "0", "b")]).unwrap();
        assert_eq!(fischer_cover(&loops), Err(Error::NotStronglyConnected));
        let mut raw = catalog::golden_mean().to_raw();
        raw.initial.pop();
        let partial = Automaton::from_raw(&raw).unwrap();
        assert_eq!(fischer_cover(&partial), Err(Error::NotShiftSpace));
    }

    #[test]
    fn synchronizing_words() {
        let c = DeterministicCover::new(catalog::golden_mean()).unwrap();
        assert_eq!(synchronizing_word(&c), Some(vec![0]));
        let one = DeterministicCover::new(catalog::full_shift(&["0", "1"])).unwrap();
        assert_eq!(synchronizing_word(&one), Some(vec![]));
        let perm = Automaton::shift(
            &["0", "1"],
            &["1", "2"],
            &[("1", "0", "2"), ("2", "0", "1"), ("1", "1", "2"), ("2", "1", "1")],
        )
        .unwrap();
        assert_eq!(synchronizing_word(&DeterministicCover::new(perm).unwrap()), None);
    }

    #[test]
    fn non_deterministic_cover_is_rejected() {
        assert!(matches!(
            DeterministicCover::new(catalog::fig3()),
            Err(Error::NotDeterministic { .. })
        ));
    }

    #[test]
    fn factor_counts() {
        let g = catalog::golden_mean();
        let counts: Vec<BigUint> = (0..4).map(|n| factor_count(&g, n).unwrap()).collect();
        assert_eq!(counts, [1u32, 2, 3, 5].map(BigUint::from));
        let full = catalog::full_shift(&["0", "1"]);
        assert_eq!(factor_count(&full, 10).unwrap(), BigUint::from(1024u32));
    }

    #[test]
    fn shift_equality() {
        let check = shift_language_equal(&catalog::golden_mean(), &catalog::golden_mean_reversed()).unwrap();
        assert!(check.equal);
        let check = shift_language_equal(&catalog::fig2_left(), &catalog::fig3()).unwrap();
        assert!(!check.equal);
        assert_eq!(check.counterexample, Some(vec![1, 1]));
        let a = catalog::fig2_right();
        assert!(shift_language_equal(&a, &a).unwrap().equal);
    }

    #[test]
    fn entropy_separation_golden_in_full() {
        // X ⊊ Y: counts separate, and so do the growth-rate estimates.
        let x = catalog::golden_mean();
        let y = catalog::full_shift(&["0", "1"]);
        assert!(factor_excess(&x, &y).unwrap().is_none());
        assert_eq!(factor_excess(&y, &x).unwrap(), Some(vec![1, 1]));
        let n = 40;
        let cx = factor_count(&x, n).unwrap();
        let cy = factor_count(&y, n).unwrap();
        assert!(cx < cy);
        let hx = (cx.to_string().parse::<f64>().unwrap()).ln() / n as f64;
        let hy = (cy.to_string().parse::<f64>().unwrap()).ln() / n as f64;
        assert!(hy - hx > 0.1);
    }

    fn brute_force_factor_count(a: &Automaton, n: usize) -> usize {
        let k = a.alphabet().len();
        let total = k.pow(n as u32);
        (0..total)
            .filter(|&code| {
                let mut w = Vec::with_capacity(n);
                let mut c = code;
                for _ in 0..n {
                    w.push(c % k);
                    c /= k;
                }
                (0..a.num_states()).any(|q| !count_runs(a, q, &w).unwrap().is_zero())
            })
            .count()
    }

    fn arb_strongly_connected() -> impl proptest::strategy::Strategy<Value = Automaton> {
        use proptest::prelude::*;
        (any::<u64>(), 1usize..=4, 1usize..=2).prop_map(|(seed, n, k)| {
            crate::random::strongly_connected_with_seed(seed, n, k)
        })
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(60))]
        #[test]
        fn factor_count_matches_enumeration(a in arb_strongly_connected(), n in 0usize..=9) {
            let exact = factor_count(&a, n).unwrap();
            proptest::prop_assert_eq!(exact, BigUint::from(brute_force_factor_count(&a, n)));
        }

        #[test]
        fn fischer_cover_properties(a in arb_strongly_connected()) {
            let c = fischer_cover(&a).unwrap();
            proptest::prop_assert!(crate::automaton::is_strongly_connected(c.automaton()));
            proptest::prop_assert!(shift_language_equal(&a, c.automaton()).unwrap().equal);
            let again = fischer_cover(c.automaton()).unwrap();
            proptest::prop_assert!(isomorphic(&c, &again));
            if let Some(w) = synchronizing_word(&c) {
                let all: Vec<usize> = (0..c.num_states()).collect();
                proptest::prop_assert_eq!(c.automaton().read_set(&all, &w).len(), 1);
            } else if !c.automaton().transitions().is_empty() {
                proptest::prop_assert!(false, "minimal cover without synchronizing word");
            }
        }
    }
}
