//! Text formats for automata and measures, and Graphviz DOT export.
//!
//! Automaton files are line oriented:
//!
//! ```text
//! # golden mean shift
//! alphabet: 0 1
//! states: 1 2
//! initial: *
//! final: *
//! trans: 1 0 1
//! trans: 1 1 2
//! trans: 2 0 1
//! ```
//!
//! `initial` and `final` take a list of states or `*` for all states, and
//! default to `*` when absent. Measure files give the dimension, the
//! alphabet, the initial row vector and one block of `dim` rows per symbol:
//!
//! ```text
//! dim: 1
//! alphabet: 0 1
//! pi: 1
//! nu 0:
//! 1/2
//! nu 1:
//! 1/2
//! ```
//!
//! Numbers are integers or `p/q`; decimal literals are rejected.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use crate::automaton::{Alphabet, Automaton, RawAutomaton};
use crate::error::{Error, Result};
use crate::measure::RationalMeasure;
use crate::pair_graph::{AlphaVector, WeightedPairGraph};
use crate::rational::{format as fmt_rational, parse_rational, Rational};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A non-comment line split into `key`, and value tokens with their
/// 1-based columns.
struct Line<'a> {
    number: usize,
    key: &'a str,
    key_column: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn tokens_with_columns(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((offset + text[..s].chars().count() + 1, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((offset + text[..s].chars().count() + 1, &text[s..]));
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(before, _)| before)
}

/// Splits `key: values` lines; lines without a colon are returned with an
/// empty key so that matrix rows can be read.
fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = strip_comment(raw);
            if content.trim().is_empty() {
                return None;
            }
            let key_column = content.chars().take_while(|c| c.is_whitespace()).count() + 1;
            Some(match content.split_once(':') {
                Some((key, rest)) => Line {
                    number: i + 1,
                    key: key.trim(),
                    key_column,
                    tokens: tokens_with_columns(rest, key.chars().count() + 1),
                },
                None => Line {
                    number: i + 1,
                    key: "",
                    key_column,
                    tokens: tokens_with_columns(content, 0),
                },
            })
        })
        .collect()
}

fn once<'a>(seen: &mut HashSet<&'a str>, line: &Line<'a>) -> Result<()> {
    if !seen.insert(line.key) {
        return Err(parse_error(line.number, line.key_column, format!("duplicate `{}` line", line.key)));
    }
    Ok(())
}

/// Parses an automaton file. Structural errors (unknown or duplicate
/// names, duplicate transitions) are reported with their position.
pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let mut raw = RawAutomaton::default();
    let mut seen = HashSet::new();
    let mut initial: Option<Vec<(usize, usize, String)>> = None;
    let mut finals: Option<Vec<(usize, usize, String)>> = None;
    let mut trans: Vec<(usize, Vec<(usize, &str)>)> = Vec::new();
    let mut positions: HashMap<String, (usize, usize)> = HashMap::new();
    for line in lines(text) {
        match line.key {
            "alphabet" => {
                once(&mut seen, &line)?;
                for &(col, t) in &line.tokens {
                    if raw.alphabet.iter().any(|s| s == t) {
                        return Err(parse_error(line.number, col, format!("duplicate symbol `{t}`")));
                    }
                    raw.alphabet.push(t.to_string());
                }
            }
            "states" => {
                once(&mut seen, &line)?;
                for &(col, t) in &line.tokens {
                    if raw.states.iter().any(|s| s == t) {
                        return Err(parse_error(line.number, col, format!("duplicate state `{t}`")));
                    }
                    positions.insert(t.to_string(), (line.number, col));
                    raw.states.push(t.to_string());
                }
            }
            "initial" | "final" => {
                once(&mut seen, &line)?;
                let names = line.tokens.iter().map(|&(c, t)| (line.number, c, t.to_string())).collect();
                if line.key == "initial" {
                    initial = Some(names);
                } else {
                    finals = Some(names);
                }
            }
            "trans" => {
                if line.tokens.len() != 3 {
                    let col = line.tokens.get(3).map_or(line.key_column, |t| t.0);
                    return Err(parse_error(line.number, col, "expected `trans: source symbol target`"));
                }
                trans.push((line.number, line.tokens.clone()));
            }
            "" => return Err(parse_error(line.number, line.key_column, "expected `key: value`")),
            other => {
                return Err(parse_error(line.number, line.key_column, format!("unknown key `{other}`")));
            }
        }
    }
    for key in ["alphabet", "states"] {
        if !seen.contains(key) {
            return Err(parse_error(text.lines().count().max(1), 1, format!("missing `{key}` line")));
        }
    }
    if raw.states.is_empty() {
        let (line, _) = positions.values().next().copied().unwrap_or((1, 1));
        return Err(parse_error(line, 1, "no states"));
    }
    let known_state = |line: usize, col: usize, name: &str| {
        if raw.states.iter().any(|s| s == name) {
            Ok(())
        } else {
            Err(parse_error(line, col, format!("unknown state `{name}`")))
        }
    };
    let mut seen_trans = HashSet::new();
    for (number, tokens) in &trans {
        let [(cp, p), (ca, a), (cq, q)] = [tokens[0], tokens[1], tokens[2]];
        known_state(*number, cp, p)?;
        if !raw.alphabet.iter().any(|s| s == a) {
            return Err(parse_error(*number, ca, format!("unknown symbol `{a}`")));
        }
        known_state(*number, cq, q)?;
        if !seen_trans.insert((p, a, q)) {
            return Err(parse_error(*number, cp, format!("duplicate transition ({p}, {a}, {q})")));
        }
        raw.transitions.push((p.to_string(), a.to_string(), q.to_string()));
    }
    let expand = |list: Option<Vec<(usize, usize, String)>>| -> Result<Vec<String>> {
        match list {
            None => Ok(raw.states.clone()),
            Some(names) if names.len() == 1 && names[0].2 == "*" => Ok(raw.states.clone()),
            Some(names) => {
                let mut out: Vec<String> = Vec::new();
                for (line, col, name) in names {
                    known_state(line, col, &name)?;
                    if !out.contains(&name) {
                        out.push(name);
                    }
                }
                Ok(out)
            }
        }
    };
    raw.initial = expand(initial)?;
    raw.final_states = expand(finals)?;
    Automaton::from_raw(&raw)
}

pub fn export_automaton(a: &Automaton) -> String {
    let mut out = String::new();
    let names = a.state_names();
    let list = |flags: Vec<usize>| {
        if flags.len() == names.len() {
            "*".to_string()
        } else {
            flags.iter().map(|&q| names[q].as_str()).collect::<Vec<_>>().join(" ")
        }
    };
    writeln!(out, "alphabet: {}", a.alphabet().symbols().join(" ")).unwrap();
    writeln!(out, "states: {}", names.join(" ")).unwrap();
    writeln!(out, "initial: {}", list(a.initial_states().collect())).unwrap();
    writeln!(out, "final: {}", list(a.final_states().collect())).unwrap();
    for t in a.transitions() {
        writeln!(
            out,
            "trans: {} {} {}",
            names[t.source],
            a.alphabet().symbol(t.symbol),
            names[t.target]
        )
        .unwrap();
    }
    out
}

pub fn parse_measure(text: &str) -> Result<RationalMeasure> {
    let all = lines(text);
    let mut dim: Option<usize> = None;
    let mut alphabet: Option<Vec<String>> = None;
    let mut pi: Option<Vec<Rational>> = None;
    let mut blocks: BTreeMap<usize, Vec<Vec<Rational>>> = BTreeMap::new();
    let mut seen = HashSet::new();
    let rationals = |line: &Line| -> Result<Vec<Rational>> {
        line.tokens
            .iter()
            .map(|&(col, t)| parse_rational(t).map_err(|_| parse_error(line.number, col, format!("`{t}` is not an integer or p/q"))))
            .collect()
    };
    let mut i = 0;
    while i < all.len() {
        let line = &all[i];
        i += 1;
        match line.key {
            "dim" => {
                once(&mut seen, line)?;
                let [(col, t)] = line.tokens[..] else {
                    return Err(parse_error(line.number, line.key_column, "expected `dim: m`"));
                };
                let m: usize = t
                    .parse()
                    .ok()
                    .filter(|&m| m > 0)
                    .ok_or_else(|| parse_error(line.number, col, "dimension must be a positive integer"))?;
                dim = Some(m);
            }
            "alphabet" => {
                once(&mut seen, line)?;
                alphabet = Some(line.tokens.iter().map(|t| t.1.to_string()).collect());
            }
            "pi" => {
                once(&mut seen, line)?;
                pi = Some(rationals(line)?);
            }
            key if key.starts_with("nu") && key[2..].starts_with(char::is_whitespace) => {
                let m = dim.ok_or_else(|| parse_error(line.number, line.key_column, "`dim` must precede the matrices"))?;
                let symbols = alphabet
                    .as_ref()
                    .ok_or_else(|| parse_error(line.number, line.key_column, "`alphabet` must precede the matrices"))?;
                let symbol = key[2..].trim();
                let a = symbols
                    .iter()
                    .position(|s| s == symbol)
                    .ok_or_else(|| parse_error(line.number, line.key_column, format!("unknown symbol `{symbol}`")))?;
                if !line.tokens.is_empty() {
                    return Err(parse_error(line.number, line.tokens[0].0, "matrix rows start on the next line"));
                }
                let mut rows = Vec::new();
                for _ in 0..m {
                    let Some(row) = all.get(i).filter(|l| l.key.is_empty()) else {
                        let at = all.get(i).map_or(line.number + rows.len() + 1, |l| l.number);
                        return Err(parse_error(at, 1, format!("expected {m} rows for `nu {symbol}`")));
                    };
                    i += 1;
                    let values = rationals(row)?;
                    if values.len() != m {
                        return Err(parse_error(row.number, row.key_column, format!("expected {m} entries, got {}", values.len())));
                    }
                    rows.push(values);
                }
                if blocks.insert(a, rows).is_some() {
                    return Err(parse_error(line.number, line.key_column, format!("duplicate block `nu {symbol}`")));
                }
            }
            "" => return Err(parse_error(line.number, line.key_column, "unexpected matrix row")),
            other => return Err(parse_error(line.number, line.key_column, format!("unknown key `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    let m = dim.ok_or_else(|| parse_error(last, 1, "missing `dim` line"))?;
    let symbols = alphabet.ok_or_else(|| parse_error(last, 1, "missing `alphabet` line"))?;
    let pi = pi.ok_or_else(|| parse_error(last, 1, "missing `pi` line"))?;
    if pi.len() != m {
        return Err(Error::InvalidMeasure(format!("π has {} entries, expected {m}", pi.len())));
    }
    let alphabet = Alphabet::new(&symbols)?;
    let nu = (0..alphabet.len())
        .map(|a| {
            blocks
                .remove(&a)
                .ok_or_else(|| parse_error(last, 1, format!("missing block `nu {}`", alphabet.symbol(a))))
        })
        .collect::<Result<Vec<_>>>()?;
    RationalMeasure::new(alphabet, pi, nu)
}

pub fn export_measure(mu: &RationalMeasure) -> String {
    let row = |v: &[Rational]| v.iter().map(fmt_rational).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "dim: {}", mu.dim()).unwrap();
    writeln!(out, "alphabet: {}", mu.alphabet().symbols().join(" ")).unwrap();
    writeln!(out, "pi: {}", row(mu.pi())).unwrap();
    for a in 0..mu.alphabet().len() {
        writeln!(out, "nu {}:", mu.alphabet().symbol(a)).unwrap();
        for r in mu.nu(a) {
            writeln!(out, "{}", row(r)).unwrap();
        }
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n"))
}

/// DOT graph of an automaton; parallel edges are merged into one edge with
/// a comma-separated label, final states are double circles and initial
/// states are filled.
pub fn automaton_to_dot(a: &Automaton) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n");
    let finals: Vec<usize> = a.final_states().collect();
    for q in 0..a.num_states() {
        let mut attrs = Vec::new();
        if finals.contains(&q) {
            attrs.push("shape=doublecircle");
        }
        if a.is_initial(q) {
            attrs.push("style=filled, fillcolor=lightgrey");
        }
        writeln!(out, "  {} [{}];", quote(a.state_name(q)), attrs.join(", ")).unwrap();
    }
    let mut edges: BTreeMap<(usize, usize), Vec<&str>> = BTreeMap::new();
    for t in a.transitions() {
        edges.entry((t.source, t.target)).or_default().push(a.alphabet().symbol(t.symbol));
    }
    for ((p, q), labels) in edges {
        writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(a.state_name(p)),
            quote(a.state_name(q)),
            quote(&labels.join(","))
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// DOT graph of a pair graph, vertices labelled `(p, q)` with the measure
/// state numbered from 1 and the cover state by name. Stochastic recurrent
/// classes are filled; edges carry exact weights and, when given, vertices
/// carry `α`.
pub fn pair_graph_to_dot(g: &WeightedPairGraph, cover: &Automaton, alpha: Option<&AlphaVector>) -> String {
    let mut out = String::from("digraph pair_graph {\n  rankdir=LR;\n  node [shape=box];\n");
    for i in 0..g.len() {
        let (p, q) = g.vertex(i);
        let class = &g.classes()[g.class_of(i)];
        let mut label = format!("({}, {})", p + 1, cover.state_name(q));
        if let Some(alpha) = alpha {
            write!(label, "\nα = {}", fmt_rational(alpha.get(i))).unwrap();
        }
        let mut attrs = vec![format!("label={}", quote(&label))];
        if class.recurrent && class.stochastic {
            attrs.push("style=filled, fillcolor=lightgrey".into());
        }
        if g.initial().contains(&i) {
            attrs.push("peripheries=2".into());
        }
        writeln!(out, "  v{i} [{}];", attrs.join(", ")).unwrap();
    }
    for i in 0..g.len() {
        for (j, w) in g.row(i) {
            writeln!(out, "  v{i} -> v{j} [label={}];", quote(&fmt_rational(w))).unwrap();
        }
    }
    out.push_str("}\n");
    out
}
