//! Constructive witnesses: synchronizing extensions of pasts, cylinders
//! `wFut(r)` inside closed sets of positive measure, and common cylinders
//! of two futures. Every witness is checked by an independent language
//! comparison before it is returned.

use std::collections::{HashMap, VecDeque};

use crate::automaton::{Automaton, Word};
use crate::bifuture::intersection_recognizer;
use crate::error::{Error, Result};
use crate::measure::{support_counterexample, RationalMeasure};
use crate::pair_graph::build_pair_graph;
use crate::scc;
use crate::subset::{first_difference, Relation, SubsetGraph};
use crate::subshift::{fischer_cover, DeterministicCover};

/// From the live part of `start`, a word `v = v₁v₂` and a cover state `r`:
/// `v₁` reaches a recurrent component of the subset automaton and `v₂`,
/// read inside it, synchronizes `cover` to `{r}`. Both searches are
/// breadth-first, so `v₁` and `v₂` are shortest.
fn sync_extension(a: &Automaton, start: &[usize], cover: &DeterministicCover) -> Option<(Word, usize)> {
    let live = a.live_states();
    let g = SubsetGraph::explore(a, start, Some(&live));
    if g.len() == 0 {
        return None;
    }
    let mut in_recurrent = vec![false; g.len()];
    for (members, recurrent) in scc::classify(&g.graph()) {
        for v in members {
            in_recurrent[v] = recurrent;
        }
    }
    let (v1, entry) = crate::subset::shortest_word_to(&g.succ, 0, |i| in_recurrent[i])?;

    let k = a.alphabet().len();
    let all: Vec<usize> = (0..cover.num_states()).collect();
    let ca = cover.automaton();
    let init = (entry, all);
    type Config = (usize, Vec<usize>);
    let mut parent: HashMap<Config, Option<(Config, usize)>> = HashMap::new();
    parent.insert(init.clone(), None);
    let mut queue = VecDeque::from([init]);
    while let Some(node) = queue.pop_front() {
        if node.1.len() == 1 {
            let r = node.1[0];
            let mut v2 = Vec::new();
            let mut cur = node;
            while let Some(Some((prev, sym))) = parent.get(&cur).cloned() {
                v2.push(sym);
                cur = prev;
            }
            v2.reverse();
            return Some(([v1, v2].concat(), r));
        }
        for sym in 0..k {
            let Some(i) = g.succ[node.0][sym] else { continue };
            let c = ca.step_set(&node.1, sym);
            if c.is_empty() {
                continue;
            }
            let next = (i, c);
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((node.clone(), sym)));
                queue.push_back(next);
            }
        }
    }
    None
}

/// A word `v` and a state `r` of `fischer_cover(a)` with `uv ∈ past(r)` and
/// `Fut(q) ∩ vAℕ = vFut(r)`.
pub fn witness_sync_extension(a: &Automaton, q: usize, u: &[usize]) -> Result<(Word, usize)> {
    a.check_state(q)?;
    a.alphabet().check_word(u)?;
    let all: Vec<usize> = (0..a.num_states()).collect();
    if !a.read_set(&all, u).contains(&q) {
        return Err(Error::NotInPast {
            word: a.format_word(u),
            state: a.state_name(q).to_string(),
        });
    }
    let cover = fischer_cover(a)?;
    let (v, r) = sync_extension(a, &[q], &cover)
        .ok_or_else(|| Error::Internal("no synchronizing extension found".into()))?;
    let uv = [u, &v[..]].concat();
    let cover_all: Vec<usize> = (0..cover.num_states()).collect();
    let after = a.read_set(&[q], &v);
    let verified = cover.automaton().read_set(&cover_all, &uv).contains(&r)
        && first_difference(a, &after, cover.automaton(), &[r], Relation::Equal).is_none();
    if !verified {
        return Err(Error::Internal("synchronizing extension failed verification".into()));
    }
    Ok((v, r))
}

/// For the closed set `F = Fut(start)` recognized by `d`: a word `w` and a
/// state `r` of `x_cover` with `w ∈ past(r)` and `wFut(r) ⊆ F`, or `None`
/// when `μ(F) = 0`.
///
/// A positive path in the pair graph leads to a vertex `(p, s)` of a
/// stochastic recurrent class, so the support futures of `p` lie in
/// `Fut(s)`; a synchronizing extension of `p` then fixes `r`.
pub fn positive_measure_witness(
    mu: &RationalMeasure,
    d: &DeterministicCover,
    start: usize,
    x_cover: &DeterministicCover,
) -> Result<Option<(Word, usize)>> {
    let xa = x_cover.automaton();
    if xa.is_shift_space() {
        if let Some(w) = support_counterexample(mu, xa)? {
            return Err(Error::Hypothesis(format!(
                "support of the measure differs from the factor language at `{}`",
                xa.format_word(&w)
            )));
        }
    }
    let g = build_pair_graph(mu, d, start)?;
    let stochastic: Vec<bool> = (0..g.len())
        .map(|i| {
            let c = &g.classes()[g.class_of(i)];
            c.recurrent && c.stochastic
        })
        .collect();
    let Some((u, vertex)) = g.shortest_path_to(|i| stochastic[i]) else {
        return Ok(None);
    };
    let (p, _) = g.vertex(vertex);
    let support = mu.support_automaton();
    let (v, r) = sync_extension(&support, &[p], x_cover).ok_or_else(|| {
        Error::Hypothesis(format!(
            "measure state {} does not reach a synchronizing word of the cover",
            p + 1
        ))
    })?;
    let w = [u, v.clone()].concat();
    let cover_all: Vec<usize> = (0..x_cover.num_states()).collect();
    let in_past = xa.read_set(&cover_all, &w).contains(&r);
    let contained = match d.read(start, &w) {
        Some(t) => first_difference(xa, &[r], d.automaton(), &[t], Relation::Included).is_none(),
        None => false,
    };
    if !(in_past && contained) {
        // With an irreducible representation the construction cannot fail;
        // reaching here means the futures of `p` do not span the shift.
        return Err(Error::Hypothesis(format!(
            "futures of measure state {} do not generate the shift of the cover",
            p + 1
        )));
    }
    Ok(Some((w, r)))
}

/// A word `w` with `Fut(q) ∩ wAℕ = Fut(q′) ∩ wAℕ`, or `None` when
/// `μ(Fut(q) ∩ Fut(q′)) = 0`.
pub fn common_cylinder(a: &Automaton, q: usize, q2: usize, mu: &RationalMeasure) -> Result<Option<Word>> {
    a.require_shift_space()?;
    a.require_strongly_connected()?;
    mu.alphabet().check_same(a.alphabet())?;
    let Some(f) = intersection_recognizer(a, q, q2)? else {
        return Ok(None);
    };
    let cover = fischer_cover(a)?;
    let Some((u, s)) = positive_measure_witness(mu, &f, 0, &cover)? else {
        return Ok(None);
    };
    let (v, _) = sync_extension(cover.automaton(), &[s], &cover)
        .ok_or_else(|| Error::Internal("cover has no synchronizing word".into()))?;
    let w = [u, v].concat();
    let left = a.read_set(&[q], &w);
    let right = a.read_set(&[q2], &w);
    if left.is_empty() || first_difference(a, &left, a, &right, Relation::Equal).is_some() {
        return Err(Error::Internal("common cylinder failed verification".into()));
    }
    Ok(Some(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;
    use crate::catalog;
    use crate::measure::{make_markov_from_cover, make_mixture, make_periodic_point_masses, make_uniform};
    use crate::pair_graph::closed_set_is_positive;
    use crate::rational::ratio;
    use num_traits::Zero;

    fn bin() -> Alphabet {
        Alphabet::new(&["0", "1"]).unwrap()
    }

    #[test]
    fn sync_extension_examples() {
        let golden = catalog::golden_mean();
        let (v, r) = witness_sync_extension(&golden, 0, &[]).unwrap();
        let cover = fischer_cover(&golden).unwrap();
        assert_eq!(v, vec![0]);
        // The cover state reached by 0 has the futures of golden-mean state 1.
        assert!(cover.next(r, 1).is_some());
        assert!(first_difference(&golden, &[0], cover.automaton(), &[r], Relation::Equal).is_none());

        let full = catalog::full_shift(&["0", "1"]);
        assert_eq!(witness_sync_extension(&full, 0, &[1, 0, 1]).unwrap(), (vec![], 0));

        let fig2 = catalog::fig2_right();
        let (v, r) = witness_sync_extension(&fig2, 0, &[]).unwrap();
        assert_eq!(r, 0);
        assert!(first_difference(&fig2, &fig2.read_set(&[0], &v), &full, &[0], Relation::Equal).is_none());

        assert!(matches!(
            witness_sync_extension(&golden, 1, &[1, 1]),
            Err(Error::NotInPast { .. })
        ));
    }

    #[test]
    fn sync_extensions_of_random_automata_verify() {
        for seed in 0..80u64 {
            let a = crate::random::strongly_connected_with_seed(500 + seed, 1 + (seed as usize % 5), 1 + (seed as usize % 3));
            let all: Vec<usize> = (0..a.num_states()).collect();
            for q in 0..a.num_states() {
                for u in [vec![], vec![0], vec![0, 0]] {
                    if a.read_set(&all, &u).contains(&q) {
                        witness_sync_extension(&a, q, &u).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn positive_measure_witness_examples() {
        let u = make_uniform(bin()).unwrap();
        let full = DeterministicCover::new(catalog::full_shift(&["0", "1"])).unwrap();
        assert_eq!(positive_measure_witness(&u, &full, 0, &full).unwrap(), Some((vec![], 0)));

        let golden = DeterministicCover::new(catalog::golden_mean()).unwrap();
        let mu = make_markov_from_cover(&golden).unwrap();
        let (w, r) = positive_measure_witness(&mu, &golden, 0, &golden).unwrap().unwrap();
        let t = golden.read(0, &w).unwrap();
        assert!(first_difference(golden.automaton(), &[r], golden.automaton(), &[t], Relation::Included).is_none());

        assert!(matches!(
            positive_measure_witness(&u, &golden, 0, &golden),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn reducible_measures_are_reported() {
        let pm = make_periodic_point_masses(bin(), &[(vec![0, 1], ratio(1, 2)), (vec![1, 0], ratio(1, 2))]).unwrap();
        let mu = make_mixture(&make_uniform(bin()).unwrap(), &pm, &ratio(1, 2)).unwrap();
        let a = catalog::fig2_right();
        let f = intersection_recognizer(&a, 0, 2).unwrap().unwrap();
        let full = DeterministicCover::new(catalog::full_shift(&["0", "1"])).unwrap();
        assert!(closed_set_is_positive(&mu, &f, 0, &[]).unwrap());
        assert!(matches!(positive_measure_witness(&mu, &f, 0, &full), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn common_cylinder_examples() {
        let full = catalog::full_shift(&["0", "1"]);
        let u = make_uniform(bin()).unwrap();
        assert_eq!(common_cylinder(&full, 0, 0, &u).unwrap(), Some(vec![]));
        assert_eq!(common_cylinder(&catalog::fig2_middle(), 0, 1, &u).unwrap(), None);
        let golden = catalog::golden_mean();
        let mu = make_markov_from_cover(&DeterministicCover::new(golden.clone()).unwrap()).unwrap();
        let w = common_cylinder(&golden, 0, 1, &mu).unwrap().unwrap();
        let (l, r) = (golden.read_set(&[0], &w), golden.read_set(&[1], &w));
        assert!(first_difference(&golden, &l, &golden, &r, Relation::Equal).is_none());
    }

    #[test]
    fn common_cylinders_exist_exactly_for_positive_intersections() {
        let mut found = 0;
        for seed in 0..60u64 {
            let a = crate::random::strongly_connected_with_seed(900 + seed, 1 + (seed as usize % 4), 1 + (seed as usize % 3));
            let mu = make_markov_from_cover(&fischer_cover(&a).unwrap()).unwrap();
            for q in 0..a.num_states() {
                for q2 in q..a.num_states() {
                    let positive = !crate::bifuture::future_intersection_measure(&a, q, q2, &mu).unwrap().is_zero();
                    let w = common_cylinder(&a, q, q2, &mu).unwrap();
                    assert_eq!(w.is_some(), positive, "seed {seed} states {q},{q2}");
                    if q != q2 && positive {
                        found += 1;
                    }
                }
            }
        }
        assert!(found > 0);
    }
}
