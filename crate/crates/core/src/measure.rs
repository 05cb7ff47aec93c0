//! Rational probability measures on finite words, in stochastic
//! representation `⟨π, ν, 𝟙⟩`: `μ(a₁⋯aₖ) = π ν(a₁)⋯ν(aₖ) 𝟙`.
//!
//! Everything here is exact; no floating point is involved.

use num_traits::{One, Zero};

use crate::automaton::{Alphabet, Automaton, Transition, Word};
use crate::error::{Error, Result};
use crate::rational::{format, int, is_nonnegative, Rational};
use crate::subset::{first_difference, Relation};
use crate::subshift::DeterministicCover;

pub type Matrix = Vec<Vec<Rational>>;

/// A stochastic representation: `π` and `∑ₐ ν(a)` are stochastic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMeasure {
    alphabet: Alphabet,
    pi: Vec<Rational>,
    nu: Vec<Matrix>,
}

impl RationalMeasure {
    /// Validates and wraps a representation; `nu[a]` is the matrix of the
    /// `a`-th symbol. Non-stochastic representations are rejected, never
    /// renormalized.
    pub fn new(alphabet: Alphabet, pi: Vec<Rational>, nu: Vec<Matrix>) -> Result<Self> {
        let m = pi.len();
        let invalid = |msg: String| Err(Error::InvalidMeasure(msg));
        if m == 0 {
            return invalid("dimension must be positive".into());
        }
        if nu.len() != alphabet.len() {
            return invalid(format!("expected {} matrices, got {}", alphabet.len(), nu.len()));
        }
        for (a, mat) in nu.iter().enumerate() {
            if mat.len() != m || mat.iter().any(|row| row.len() != m) {
                return invalid(format!("matrix of `{}` is not {m}×{m}", alphabet.symbol(a)));
            }
            if mat.iter().flatten().any(|x| !is_nonnegative(x)) {
                return invalid(format!("matrix of `{}` has a negative entry", alphabet.symbol(a)));
            }
        }
        if pi.iter().any(|x| !is_nonnegative(x)) {
            return invalid("π has a negative entry".into());
        }
        let total: Rational = pi.iter().sum();
        if !total.is_one() {
            return invalid(format!("π sums to {}, not 1", format(&total)));
        }
        for p in 0..m {
            let row: Rational = nu.iter().flat_map(|mat| mat[p].iter()).sum();
            if !row.is_one() {
                return invalid(format!("row {} of ∑ν(a) sums to {}, not 1", p + 1, format(&row)));
            }
        }
        Ok(RationalMeasure { alphabet, pi, nu })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.pi.len()
    }

    pub fn pi(&self) -> &[Rational] {
        &self.pi
    }

    pub fn nu(&self, a: usize) -> &Matrix {
        &self.nu[a]
    }

    /// `v ν(a)` for a row vector `v`.
    pub fn apply(&self, v: &[Rational], a: usize) -> Vec<Rational> {
        let m = self.dim();
        let mut out = vec![Rational::zero(); m];
        for (p, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, w) in self.nu[a][p].iter().enumerate() {
                if !w.is_zero() {
                    out[q] += x * w;
                }
            }
        }
        out
    }

    /// `π ν(w)`.
    pub fn distribution_after(&self, word: &[usize]) -> Result<Vec<Rational>> {
        self.alphabet.check_word(word)?;
        Ok(word.iter().fold(self.pi.clone(), |v, &a| self.apply(&v, a)))
    }

    /// The automaton on `{1..m}` with `p -a-> q` iff `ν(a)[p][q] > 0` and
    /// initial states `{p : π_p > 0}`; all states final.
    pub fn support_automaton(&self) -> Automaton {
        let m = self.dim();
        let mut transitions = Vec::new();
        for (a, mat) in self.nu.iter().enumerate() {
            for (p, row) in mat.iter().enumerate() {
                for (q, w) in row.iter().enumerate() {
                    if !w.is_zero() {
                        transitions.push(Transition {
                            source: p,
                            symbol: a,
                            target: q,
                        });
                    }
                }
            }
        }
        let names = (1..=m).map(|i| i.to_string()).collect();
        let initial: Vec<usize> = (0..m).filter(|&p| !self.pi[p].is_zero()).collect();
        let all: Vec<usize> = (0..m).collect();
        Automaton::from_indices(self.alphabet.clone(), names, transitions, &initial, &all)
            .expect("support automaton is well formed")
    }
}

pub fn word_measure(mu: &RationalMeasure, word: &[usize]) -> Result<Rational> {
    Ok(mu.distribution_after(word)?.into_iter().sum())
}

/// `μ(⋃ᵢ wᵢAℕ)`. Words having another listed word as a prefix are dropped;
/// cylinders of the remaining prefix-free set are pairwise disjoint, so
/// their measures add up.
pub fn cylinder_union_measure(mu: &RationalMeasure, words: &[Word]) -> Result<Rational> {
    let mut sorted: Vec<&Word> = words.iter().collect();
    sorted.sort();
    sorted.dedup();
    let mut antichain: Vec<&Word> = Vec::new();
    for w in sorted {
        // In lexicographic order a word's prefixes come before it; checking
        // the last kept word suffices because kept words are prefix-free.
        match antichain.last() {
            Some(last) if w.starts_with(last) => {}
            _ => antichain.push(w),
        }
    }
    antichain.iter().map(|w| word_measure(mu, w)).sum()
}

/// `π ∑ₐ ν(a) = π`.
pub fn is_invariant(mu: &RationalMeasure) -> bool {
    let m = mu.dim();
    let mut image = vec![Rational::zero(); m];
    for a in 0..mu.alphabet.len() {
        for (q, x) in mu.apply(&mu.pi, a).into_iter().enumerate() {
            image[q] += x;
        }
    }
    image == mu.pi
}

/// The Bernoulli measure with the given symbol weights (in alphabet order).
pub fn make_bernoulli(alphabet: Alphabet, weights: &[Rational]) -> Result<RationalMeasure> {
    if weights.len() != alphabet.len() {
        return Err(Error::InvalidMeasure(format!(
            "expected {} weights, got {}",
            alphabet.len(),
            weights.len()
        )));
    }
    let nu = weights.iter().map(|w| vec![vec![w.clone()]]).collect();
    RationalMeasure::new(alphabet, vec![int(1)], nu)
}

pub fn make_uniform(alphabet: Alphabet) -> Result<RationalMeasure> {
    let k = alphabet.len();
    if k == 0 {
        return Err(Error::InvalidMeasure("empty alphabet".into()));
    }
    let w = Rational::new(1.into(), (k as i64).into());
    make_bernoulli(alphabet, &vec![w; k])
}

/// The Markov measure of a deterministic cover: `π` uniform over states and
/// each state splitting its mass uniformly over its outgoing transitions.
/// Its support is the set of words labelling a run in the cover.
pub fn make_markov_from_cover(cover: &DeterministicCover) -> Result<RationalMeasure> {
    let a = cover.automaton();
    a.check_deterministic_transitions()?;
    let m = a.num_states();
    let k = a.alphabet().len();
    let mut nu = vec![vec![vec![Rational::zero(); m]; m]; k];
    for p in 0..m {
        let out: Vec<(usize, usize)> = (0..k).filter_map(|s| cover.next(p, s).map(|q| (s, q))).collect();
        if out.is_empty() {
            return Err(Error::InvalidMeasure(format!(
                "cover state `{}` has no outgoing transition",
                a.state_name(p)
            )));
        }
        let w = Rational::new(1.into(), (out.len() as i64).into());
        for (s, q) in out {
            nu[s][p][q] = w.clone();
        }
    }
    let pi = vec![Rational::new(1.into(), (m as i64).into()); m];
    RationalMeasure::new(a.alphabet().clone(), pi, nu)
}

/// Point masses on periodic sequences `uᵢ^ℕ` with weights `cᵢ`, realized by
/// one cyclic counter of length `|uᵢ|` per sequence.
pub fn make_periodic_point_masses(alphabet: Alphabet, points: &[(Word, Rational)]) -> Result<RationalMeasure> {
    if points.is_empty() {
        return Err(Error::InvalidMeasure("no periodic points".into()));
    }
    let m: usize = points.iter().map(|(u, _)| u.len()).sum();
    if points.iter().any(|(u, _)| u.is_empty()) {
        return Err(Error::InvalidMeasure("period words must be non-empty".into()));
    }
    for (u, _) in points {
        alphabet.check_word(u)?;
    }
    let mut pi = vec![Rational::zero(); m];
    let mut nu = vec![vec![vec![Rational::zero(); m]; m]; alphabet.len()];
    let mut offset = 0;
    for (u, weight) in points {
        pi[offset] = weight.clone();
        for (j, &a) in u.iter().enumerate() {
            let from = offset + j;
            let to = offset + (j + 1) % u.len();
            nu[a][from][to] = int(1);
        }
        offset += u.len();
    }
    RationalMeasure::new(alphabet, pi, nu)
}

/// `t·μ + (1 − t)·λ`, as a block-diagonal representation.
pub fn make_mixture(mu: &RationalMeasure, lambda: &RationalMeasure, t: &Rational) -> Result<RationalMeasure> {
    mu.alphabet.check_same(&lambda.alphabet)?;
    let (m, l) = (mu.dim(), lambda.dim());
    let mut pi: Vec<Rational> = mu.pi.iter().map(|x| x * t).collect();
    pi.extend(lambda.pi.iter().map(|x| x * (Rational::one() - t)));
    let nu = (0..mu.alphabet.len())
        .map(|a| {
            let mut mat = vec![vec![Rational::zero(); m + l]; m + l];
            for i in 0..m {
                mat[i][..m].clone_from_slice(&mu.nu[a][i]);
            }
            for i in 0..l {
                mat[m + i][m..].clone_from_slice(&lambda.nu[a][i]);
            }
            mat
        })
        .collect();
    RationalMeasure::new(mu.alphabet.clone(), pi, nu)
}

/// Compares `supp(μ)` with the factor language of a shift-space automaton;
/// returns the shortest word in exactly one of them.
pub fn support_counterexample(mu: &RationalMeasure, a: &Automaton) -> Result<Option<Word>> {
    a.require_shift_space()?;
    mu.alphabet.check_same(a.alphabet())?;
    let s = mu.support_automaton();
    let init: Vec<usize> = s.initial_states().collect();
    let all: Vec<usize> = (0..a.num_states()).collect();
    Ok(first_difference(&s, &init, a, &all, Relation::Equal))
}

pub fn support_matches_factors(mu: &RationalMeasure, a: &Automaton) -> Result<bool> {
    Ok(support_counterexample(mu, a)?.is_none())
}
