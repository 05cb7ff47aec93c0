//! The weighted pair graph of a rational measure and a deterministic
//! all-final automaton, and exact measures of the closed sets such
//! automata recognize.
//!
//! Vertex `(p, q)` pairs a measure state `p` with an automaton state `q`.
//! The edge `(p, q) → (p′, q′)` carries `∑_{q →a q′} ν(a)_{p,p′}`, and
//! `α_{p,q} = μ_p(Fut(q))` is the limit of `Mⁿ𝟙`.

use std::collections::{HashMap, VecDeque};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::measure::RationalMeasure;
use crate::rational::{self, to_f64, Rational};
use crate::scc;
use crate::subshift::DeterministicCover;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClass {
    pub vertices: Vec<usize>,
    pub recurrent: bool,
    /// Only meaningful for recurrent classes: every row sums to exactly 1.
    pub stochastic: bool,
}

#[derive(Clone, Debug)]
pub struct WeightedPairGraph {
    vertices: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    /// Aggregated weights, one entry per distinct target, sorted by target.
    rows: Vec<Vec<(usize, Rational)>>,
    /// Labelled positive edges `(symbol, target)`, for path reconstruction.
    labelled: Vec<Vec<(usize, usize)>>,
    initial: Vec<usize>,
    classes: Vec<PairClass>,
    class_of: Vec<usize>,
}

impl WeightedPairGraph {
    /// Accessible part from `initial` (pairs of measure and cover states).
    pub(crate) fn explore(mu: &RationalMeasure, d: &DeterministicCover, initial: &[(usize, usize)]) -> Result<Self> {
        mu.alphabet().check_same(d.automaton().alphabet())?;
        let k = mu.alphabet().len();
        let mut g = WeightedPairGraph {
            vertices: Vec::new(),
            index: HashMap::new(),
            rows: Vec::new(),
            labelled: Vec::new(),
            initial: Vec::new(),
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        let mut queue = VecDeque::new();
        for &v in initial {
            let (i, fresh) = g.intern(v);
            if fresh {
                queue.push_back(i);
            }
            if !g.initial.contains(&i) {
                g.initial.push(i);
            }
        }
        while let Some(i) = queue.pop_front() {
            let (p, q) = g.vertices[i];
            let mut weights: Vec<(usize, Rational)> = Vec::new();
            let mut labelled = Vec::new();
            for a in 0..k {
                let Some(q2) = d.next(q, a) else { continue };
                for (p2, w) in mu.nu(a)[p].iter().enumerate() {
                    if w.is_zero() {
                        continue;
                    }
                    let (j, fresh) = g.intern((p2, q2));
                    if fresh {
                        queue.push_back(j);
                    }
                    labelled.push((a, j));
                    match weights.iter_mut().find(|(t, _)| *t == j) {
                        Some((_, acc)) => *acc += w,
                        None => weights.push((j, w.clone())),
                    }
                }
            }
            weights.sort_by_key(|(t, _)| *t);
            g.rows[i] = weights;
            g.labelled[i] = labelled;
        }
        g.classify();
        Ok(g)
    }

    fn intern(&mut self, v: (usize, usize)) -> (usize, bool) {
        if let Some(&i) = self.index.get(&v) {
            return (i, false);
        }
        let i = self.vertices.len();
        self.vertices.push(v);
        self.index.insert(v, i);
        self.rows.push(Vec::new());
        self.labelled.push(Vec::new());
        (i, true)
    }

    fn classify(&mut self) {
        let graph: Vec<Vec<usize>> = self.rows.iter().map(|r| r.iter().map(|(t, _)| *t).collect()).collect();
        self.class_of = vec![0; self.vertices.len()];
        self.classes = scc::classify(&graph)
            .into_iter()
            .enumerate()
            .map(|(c, (vertices, recurrent))| {
                for &v in &vertices {
                    self.class_of[v] = c;
                }
                let stochastic = recurrent && vertices.iter().all(|&v| self.row_sum(v).is_one());
                PairClass {
                    vertices,
                    recurrent,
                    stochastic,
                }
            })
            .collect();
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// `(measure state, automaton state)` of vertex `i`.
    pub fn vertex(&self, i: usize) -> (usize, usize) {
        self.vertices[i]
    }

    pub fn vertices(&self) -> &[(usize, usize)] {
        &self.vertices
    }

    pub fn index_of(&self, p: usize, q: usize) -> Option<usize> {
        self.index.get(&(p, q)).copied()
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    pub fn labelled_edges(&self, i: usize) -> &[(usize, usize)] {
        &self.labelled[i]
    }

    pub fn weight(&self, i: usize, j: usize) -> Rational {
        self.rows[i]
            .iter()
            .find(|(t, _)| *t == j)
            .map(|(_, w)| w.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn row_sum(&self, i: usize) -> Rational {
        self.rows[i].iter().map(|(_, w)| w).sum()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    /// Components in topological order, sources first.
    pub fn classes(&self) -> &[PairClass] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Vertices from which a stochastic recurrent class is reachable, which
    /// are exactly those with `α > 0`.
    pub fn positive_vertices(&self) -> Vec<bool> {
        let mut positive = vec![false; self.len()];
        // Reverse topological order: every successor class is settled first.
        for class in self.classes.iter().rev() {
            let value = if class.recurrent {
                class.stochastic
            } else {
                class
                    .vertices
                    .iter()
                    .any(|&v| self.rows[v].iter().any(|(t, _)| self.class_of[*t] != self.class_of[v] && positive[*t]))
            };
            for &v in &class.vertices {
                positive[v] = value;
            }
        }
        positive
    }

    /// `Mⁿ𝟙` in floating point; converges monotonically down to `α`.
    pub fn iterate_ones(&self, n: usize) -> Vec<f64> {
        let rows: Vec<Vec<(usize, f64)>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(t, w)| (*t, to_f64(w))).collect())
            .collect();
        let mut v = vec![1.0; self.len()];
        for _ in 0..n {
            v = rows.iter().map(|r| r.iter().map(|(t, w)| w * v[*t]).sum()).collect();
        }
        v
    }

    /// Shortest positive-weight path, as a word, from an initial vertex to
    /// a vertex satisfying `goal`; returns the word and the vertex reached.
    pub fn shortest_path_to(&self, goal: impl Fn(usize) -> bool) -> Option<(Vec<usize>, usize)> {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        for &i in &self.initial {
            if goal(i) {
                return Some((Vec::new(), i));
            }
            seen[i] = true;
            queue.push_back(i);
        }
        while let Some(i) = queue.pop_front() {
            for &(a, j) in &self.labelled[i] {
                if seen[j] {
                    continue;
                }
                seen[j] = true;
                parent[j] = Some((i, a));
                if goal(j) {
                    let mut w = Vec::new();
                    let mut v = j;
                    while let Some((u, sym)) = parent[v] {
                        w.push(sym);
                        v = u;
                    }
                    w.reverse();
                    return Some((w, j));
                }
                queue.push_back(j);
            }
        }
        None
    }
}

/// The pair graph with initial vertices `(p, start)` for every `π_p > 0`.
pub fn build_pair_graph(mu: &RationalMeasure, d: &DeterministicCover, start: usize) -> Result<WeightedPairGraph> {
    d.automaton().check_state(start)?;
    let initial: Vec<(usize, usize)> = (0..mu.dim())
        .filter(|&p| !mu.pi()[p].is_zero())
        .map(|p| (p, start))
        .collect();
    WeightedPairGraph::explore(mu, d, &initial)
}

/// `α_{p,q} = μ_p(Fut(q))` for every vertex of the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaVector {
    pub values: Vec<Rational>,
}

impl AlphaVector {
    pub fn get(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    /// `Mα = α`, exactly.
    pub fn is_fixed_point(&self, g: &WeightedPairGraph) -> bool {
        (0..g.len()).all(|i| {
            let image: Rational = g.row(i).iter().map(|(t, w)| w * &self.values[*t]).sum();
            image == self.values[i]
        })
    }
}

/// Exact `α`: 1 on stochastic recurrent classes, 0 on the other recurrent
/// classes, and on each transient class the solution of
/// `(I − M₁) α₁ = M₃ α₂` given the already solved successor classes.
pub fn solve_alpha(g: &WeightedPairGraph) -> Result<AlphaVector> {
    let mut values = vec![Rational::zero(); g.len()];
    let qualitative = g.positive_vertices();
    for class in g.classes().iter().rev() {
        if class.recurrent {
            let v = if class.stochastic { Rational::one() } else { Rational::zero() };
            for &i in &class.vertices {
                values[i] = v.clone();
            }
            continue;
        }
        // A transient class that cannot reach a stochastic class has α = 0.
        if !qualitative[class.vertices[0]] {
            continue;
        }
        let local: HashMap<usize, usize> = class.vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let n = class.vertices.len();
        let mut a = vec![vec![Rational::zero(); n]; n];
        let mut b = vec![Rational::zero(); n];
        for (k, &v) in class.vertices.iter().enumerate() {
            a[k][k] = Rational::one();
            for (t, w) in g.row(v) {
                match local.get(t) {
                    Some(&l) => a[k][l] -= w,
                    None => b[k] += w * &values[*t],
                }
            }
        }
        let x = rational::solve(a, b)
            .ok_or_else(|| Error::Internal("singular transient system in pair graph".into()))?;
        for (k, &v) in class.vertices.iter().enumerate() {
            values[v] = x[k].clone();
        }
    }
    Ok(AlphaVector { values })
}

/// `μ(prefix · Fut(start))` for the closed set `Fut(start)` recognized by
/// `d`: `∑_p (π ν(prefix))_p α_{p,start}`.
pub fn closed_set_measure(mu: &RationalMeasure, d: &DeterministicCover, start: usize, prefix: &[usize]) -> Result<Rational> {
    d.automaton().check_state(start)?;
    let dist = mu.distribution_after(prefix)?;
    let initial: Vec<(usize, usize)> = (0..mu.dim()).filter(|&p| !dist[p].is_zero()).map(|p| (p, start)).collect();
    let g = WeightedPairGraph::explore(mu, d, &initial)?;
    let alpha = solve_alpha(&g)?;
    Ok(initial
        .iter()
        .map(|&(p, q)| &dist[p] * alpha.get(g.index_of(p, q).expect("initial vertex")))
        .sum())
}

/// Whether `μ(prefix · Fut(start)) > 0`, decided without solving for `α`.
pub fn closed_set_is_positive(mu: &RationalMeasure, d: &DeterministicCover, start: usize, prefix: &[usize]) -> Result<bool> {
    d.automaton().check_state(start)?;
    let dist = mu.distribution_after(prefix)?;
    let initial: Vec<(usize, usize)> = (0..mu.dim()).filter(|&p| !dist[p].is_zero()).map(|p| (p, start)).collect();
    let g = WeightedPairGraph::explore(mu, d, &initial)?;
    let positive = g.positive_vertices();
    Ok(g.initial().iter().any(|&i| positive[i]))
}
