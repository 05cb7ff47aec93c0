//! Finite automata over finite alphabets.
//!
//! States and symbols carry user-facing names but every algorithm works on
//! dense indices: state `i` is the `i`-th declared state and symbol `a` the
//! `a`-th declared symbol. The declaration order is the canonical order used
//! for matrices, tie-breaks and output.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scc;

/// A finite word, as a sequence of symbol indices.
pub type Word = Vec<usize>;

/// An ordered finite set of symbol names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(symbols: &[S]) -> Result<Self> {
        let mut index = HashMap::new();
        let mut names = Vec::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            let s = s.as_ref().to_string();
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidAutomaton(vec![Violation::DuplicateSymbol(s)]));
            }
            names.push(s);
        }
        Ok(Alphabet {
            symbols: names,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, a: usize) -> &str {
        &self.symbols[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn single_chars(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Whitespace-separated symbols are always accepted; when
    /// every symbol is a single character the symbols may also be written
    /// contiguously (`0110`). The empty string and `ε` denote the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        let tokens: Vec<String> = if text.contains(char::is_whitespace) || !self.single_chars() {
            text.split_whitespace().map(str::to_string).collect()
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        tokens
            .iter()
            .map(|t| self.index_of(t).ok_or_else(|| Error::UnknownSymbol(t.clone())))
            .collect()
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_chars() { "" } else { " " };
        word.iter()
            .map(|&a| self.symbols[a].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    pub(crate) fn check_same(&self, other: &Alphabet) -> Result<()> {
        if self.symbols == other.symbols {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.symbols.join(" "),
                right: other.symbols.join(" "),
            })
        }
    }

    pub(crate) fn check_word(&self, word: &[usize]) -> Result<()> {
        match word.iter().find(|&&a| a >= self.len()) {
            Some(&a) => Err(Error::SymbolOutOfRange(a)),
            None => Ok(()),
        }
    }
}

/// An automaton as written by a user: names only, possibly inconsistent.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawAutomaton {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub transitions: Vec<(String, String, String)>,
    pub initial: Vec<String>,
    pub final_states: Vec<String>,
}

/// A violated structural invariant of a [`RawAutomaton`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoStates,
    DuplicateState(String),
    DuplicateSymbol(String),
    UnknownState {
        transition: (String, String, String),
        state: String,
    },
    UnknownSymbol {
        transition: (String, String, String),
    },
    DuplicateTransition((String, String, String)),
    UnknownInitial(String),
    UnknownFinal(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoStates => write!(f, "no states"),
            Violation::DuplicateState(s) => write!(f, "duplicate state `{s}`"),
            Violation::DuplicateSymbol(s) => write!(f, "duplicate symbol `{s}`"),
            Violation::UnknownState {
                transition: (p, a, q),
                state,
            } => write!(f, "transition ({p}, {a}, {q}) references unknown state `{state}`"),
            Violation::UnknownSymbol {
                transition: (p, a, q),
            } => write!(f, "transition ({p}, {a}, {q}) references unknown symbol `{a}`"),
            Violation::DuplicateTransition((p, a, q)) => {
                write!(f, "duplicate transition ({p}, {a}, {q})")
            }
            Violation::UnknownInitial(s) => write!(f, "initial state `{s}` is not declared"),
            Violation::UnknownFinal(s) => write!(f, "final state `{s}` is not declared"),
        }
    }
}

/// Returns every invariant violation of `raw`; an empty list means valid.
pub fn validate(raw: &RawAutomaton) -> Vec<Violation> {
    let mut out = Vec::new();
    if raw.states.is_empty() {
        out.push(Violation::NoStates);
    }
    let mut states = BTreeSet::new();
    for s in &raw.states {
        if !states.insert(s.as_str()) {
            out.push(Violation::DuplicateState(s.clone()));
        }
    }
    let mut symbols = BTreeSet::new();
    for s in &raw.alphabet {
        if !symbols.insert(s.as_str()) {
            out.push(Violation::DuplicateSymbol(s.clone()));
        }
    }
    let mut seen = BTreeSet::new();
    for t in &raw.transitions {
        let (p, a, q) = t;
        for s in [p, q] {
            if !states.contains(s.as_str()) {
                out.push(Violation::UnknownState {
                    transition: t.clone(),
                    state: s.clone(),
                });
            }
        }
        if !symbols.contains(a.as_str()) {
            out.push(Violation::UnknownSymbol {
                transition: t.clone(),
            });
        }
        if !seen.insert(t) {
            out.push(Violation::DuplicateTransition(t.clone()));
        }
    }
    for s in &raw.initial {
        if !states.contains(s.as_str()) {
            out.push(Violation::UnknownInitial(s.clone()));
        }
    }
    for s in &raw.final_states {
        if !states.contains(s.as_str()) {
            out.push(Violation::UnknownFinal(s.clone()));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub source: usize,
    pub symbol: usize,
    pub target: usize,
}

/// A validated finite automaton `⟨Q, A, Δ, I, F⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Alphabet,
    names: Vec<String>,
    transitions: Vec<Transition>,
    succ: Vec<Vec<Vec<usize>>>,
    initial: Vec<bool>,
    finals: Vec<bool>,
}

impl Automaton {
    pub fn from_raw(raw: &RawAutomaton) -> Result<Self> {
        let violations = validate(raw);
        if !violations.is_empty() {
            return Err(Error::InvalidAutomaton(violations));
        }
        let alphabet = Alphabet::new(&raw.alphabet)?;
        let index: HashMap<&str, usize> = raw
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let transitions = raw
            .transitions
            .iter()
            .map(|(p, a, q)| Transition {
                source: index[p.as_str()],
                symbol: alphabet.index_of(a).expect("validated"),
                target: index[q.as_str()],
            })
            .collect();
        let initial = raw.initial.iter().map(|s| index[s.as_str()]).collect::<Vec<_>>();
        let finals = raw
            .final_states
            .iter()
            .map(|s| index[s.as_str()])
            .collect::<Vec<_>>();
        Self::from_indices(alphabet, raw.states.clone(), transitions, &initial, &finals)
    }

    /// Builds a shift-space automaton (every state initial and final) from
    /// names. Convenient for tests and examples.
    pub fn shift(alphabet: &[&str], states: &[&str], transitions: &[(&str, &str, &str)]) -> Result<Self> {
        let raw = RawAutomaton {
            states: states.iter().map(|s| s.to_string()).collect(),
            alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
            transitions: transitions
                .iter()
                .map(|(p, a, q)| (p.to_string(), a.to_string(), q.to_string()))
                .collect(),
            initial: states.iter().map(|s| s.to_string()).collect(),
            final_states: states.iter().map(|s| s.to_string()).collect(),
        };
        Self::from_raw(&raw)
    }

    pub(crate) fn from_indices(
        alphabet: Alphabet,
        names: Vec<String>,
        mut transitions: Vec<Transition>,
        initial: &[usize],
        finals: &[usize],
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton(vec![Violation::NoStates]));
        }
        transitions.sort_unstable();
        transitions.dedup();
        let mut succ = vec![vec![Vec::new(); alphabet.len()]; n];
        for t in &transitions {
            if t.source >= n || t.target >= n {
                return Err(Error::StateOutOfRange(t.source.max(t.target)));
            }
            if t.symbol >= alphabet.len() {
                return Err(Error::SymbolOutOfRange(t.symbol));
            }
            succ[t.source][t.symbol].push(t.target);
        }
        let mut init = vec![false; n];
        for &i in initial {
            init[i] = true;
        }
        let mut fin = vec![false; n];
        for &i in finals {
            fin[i] = true;
        }
        Ok(Automaton {
            alphabet,
            names,
            transitions,
            succ,
            initial: init,
            finals: fin,
        })
    }

    pub fn to_raw(&self) -> RawAutomaton {
        let name = |i: usize| self.names[i].clone();
        RawAutomaton {
            states: self.names.clone(),
            alphabet: self.alphabet.symbols().to_vec(),
            transitions: self
                .transitions
                .iter()
                .map(|t| (name(t.source), self.alphabet.symbol(t.symbol).to_string(), name(t.target)))
                .collect(),
            initial: self.initial_states().map(name).collect(),
            final_states: self.final_states().map(name).collect(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn state_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Targets of the `a`-transitions leaving `q`, in increasing order.
    pub fn successors(&self, q: usize, a: usize) -> &[usize] {
        &self.succ[q][a]
    }

    pub fn initial_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&q| self.initial[q])
    }

    pub fn final_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_states()).filter(|&q| self.finals[q])
    }

    pub fn is_initial(&self, q: usize) -> bool {
        self.initial[q]
    }

    /// `I = F = Q`.
    pub fn is_shift_space(&self) -> bool {
        self.initial.iter().all(|&b| b) && self.finals.iter().all(|&b| b)
    }

    pub fn is_deterministic_transitions(&self) -> bool {
        self.succ.iter().all(|row| row.iter().all(|t| t.len() <= 1))
    }

    /// Rejects a state with two transitions carrying the same symbol.
    pub fn check_deterministic_transitions(&self) -> Result<()> {
        for (q, row) in self.succ.iter().enumerate() {
            for (a, targets) in row.iter().enumerate() {
                if targets.len() > 1 {
                    return Err(Error::NotDeterministic {
                        state: self.names[q].clone(),
                        symbol: self.alphabet.symbol(a).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub(crate) fn require_shift_space(&self) -> Result<()> {
        if self.is_shift_space() {
            Ok(())
        } else {
            Err(Error::NotShiftSpace)
        }
    }

    pub(crate) fn require_strongly_connected(&self) -> Result<()> {
        if is_strongly_connected(self) {
            Ok(())
        } else {
            Err(Error::NotStronglyConnected)
        }
    }

    pub(crate) fn check_state(&self, q: usize) -> Result<()> {
        if q < self.num_states() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange(q))
        }
    }

    /// Successor lists ignoring labels, with duplicates removed.
    pub(crate) fn graph(&self) -> Vec<Vec<usize>> {
        let mut g = vec![Vec::new(); self.num_states()];
        for t in &self.transitions {
            g[t.source].push(t.target);
        }
        for row in &mut g {
            row.sort_unstable();
            row.dedup();
        }
        g
    }

    /// `P · a`: states reached from `set` by one `a`-transition.
    pub fn step_set(&self, set: &[usize], a: usize) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().flat_map(|&q| self.succ[q][a].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `P · w`.
    pub fn read_set(&self, set: &[usize], word: &[usize]) -> Vec<usize> {
        let mut cur = set.to_vec();
        for &a in word {
            if cur.is_empty() {
                break;
            }
            cur = self.step_set(&cur, a);
        }
        cur
    }

    /// States from which some infinite run starts.
    pub fn live_states(&self) -> Vec<bool> {
        let g = self.graph();
        let comps = scc::tarjan(&g);
        let mut on_cycle = vec![false; self.num_states()];
        for comp in &comps {
            let cyclic = comp.len() > 1 || g[comp[0]].contains(&comp[0]);
            if cyclic {
                for &q in comp {
                    on_cycle[q] = true;
                }
            }
        }
        // Components come sinks first, so successors are settled before predecessors.
        let mut live = on_cycle;
        for comp in &comps {
            let reach = comp.iter().any(|&q| g[q].iter().any(|&r| live[r]));
            if reach {
                for &q in comp {
                    live[q] = true;
                }
            }
        }
        live
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        self.alphabet.format_word(word)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        self.alphabet.parse_word(text)
    }
}

/// A strongly connected component of the transition graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub states: Vec<usize>,
    /// No transition leaves the component.
    pub recurrent: bool,
}

/// Partition of the states into strongly connected components, listed in a
/// topological order of the condensation (a component only has edges to
/// components listed after it).
pub fn scc_decompose(a: &Automaton) -> Vec<Component> {
    let g = a.graph();
    scc::classify(&g)
        .into_iter()
        .map(|(states, recurrent)| Component { states, recurrent })
        .collect()
}

pub fn is_strongly_connected(a: &Automaton) -> bool {
    let g = a.graph();
    scc::tarjan(&g).len() == 1
}

/// Number of runs starting in `q` labelled by `word`, over all end states.
pub fn count_runs(a: &Automaton, q: usize, word: &[usize]) -> Result<BigUint> {
    Ok(run_vector(a, q, word)?.into_iter().sum())
}

/// Number of runs from `p` to `q` labelled by `word`.
pub fn count_runs_between(a: &Automaton, p: usize, q: usize, word: &[usize]) -> Result<BigUint> {
    a.check_state(q)?;
    Ok(run_vector(a, p, word)?.swap_remove(q))
}

fn run_vector(a: &Automaton, q: usize, word: &[usize]) -> Result<Vec<BigUint>> {
    a.check_state(q)?;
    a.alphabet.check_word(word)?;
    let n = a.num_states();
    let mut v = vec![BigUint::zero(); n];
    v[q] = BigUint::one();
    for &sym in word {
        let mut next = vec![BigUint::zero(); n];
        for (p, count) in v.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            for &r in a.successors(p, sym) {
                next[r] += count;
            }
        }
        v = next;
    }
    Ok(v)
}
