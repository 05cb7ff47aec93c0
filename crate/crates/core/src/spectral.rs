//! Adjacency matrices, Perron–Frobenius spectral radius and entropy.
//!
//! All logarithms are natural logarithms.

use serde::Serialize;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::subshift::{factor_excess, fischer_cover, shift_language_equal};
use crate::unambiguity::check_unambiguous;

/// `M[p][q]` is the number of symbols `a` with a transition `p -a-> q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjacencyMatrix {
    entries: Vec<Vec<u64>>,
}

impl AdjacencyMatrix {
    pub fn new(entries: Vec<Vec<u64>>) -> Self {
        assert!(entries.iter().all(|row| row.len() == entries.len()), "square matrix");
        AdjacencyMatrix { entries }
    }

    pub fn dimension(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.entries[p][q]
    }

    pub fn pow(&self, n: u32) -> AdjacencyMatrix {
        let d = self.dimension();
        let mut acc: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|j| u64::from(i == j)).collect()).collect();
        for _ in 0..n {
            acc = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| (0..d).map(|k| acc[i][k] * self.entries[k][j]).sum())
                        .collect()
                })
                .collect();
        }
        AdjacencyMatrix { entries: acc }
    }
}

pub fn adjacency(a: &Automaton) -> AdjacencyMatrix {
    let n = a.num_states();
    let mut m = vec![vec![0u64; n]; n];
    for t in a.transitions() {
        m[t.source][t.target] += 1;
    }
    AdjacencyMatrix { entries: m }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            tolerance: 1e-12,
            max_iterations: 1_000_000,
        }
    }
}

impl SpectralOptions {
    pub fn with_tolerance(tolerance: f64) -> Self {
        SpectralOptions {
            tolerance,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub radius: f64,
    pub log_radius: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Dominant eigenvalue of a non-negative matrix: the largest radius over
/// its irreducible diagonal blocks. Each block is handled by power
/// iteration on `B + I`, which is primitive, stopped once the
/// Collatz-Wielandt bounds `min (Bv)ᵢ/vᵢ ≤ ρ ≤ max (Bv)ᵢ/vᵢ` agree to
/// `tolerance` (relative). `residual` is the final width of that bracket.
pub fn spectral_radius(m: &AdjacencyMatrix, opts: SpectralOptions) -> Result<SpectralReport> {
    let d = m.dimension();
    let graph: Vec<Vec<usize>> = (0..d).map(|i| (0..d).filter(|&j| m.get(i, j) > 0).collect()).collect();
    let mut best = SpectralReport {
        radius: 0.0,
        log_radius: f64::NEG_INFINITY,
        iterations: 0,
        residual: 0.0,
    };
    for block in crate::scc::tarjan(&graph) {
        let r = block_radius(m, &block, opts)?;
        best.iterations += r.iterations;
        if r.radius > best.radius {
            best = SpectralReport {
                iterations: best.iterations,
                ..r
            };
        }
    }
    best.log_radius = best.radius.ln();
    Ok(best)
}

fn block_radius(m: &AdjacencyMatrix, block: &[usize], opts: SpectralOptions) -> Result<SpectralReport> {
    let exact = |radius: f64| SpectralReport {
        radius,
        log_radius: radius.ln(),
        iterations: 0,
        residual: 0.0,
    };
    if let [q] = block {
        // A single vertex: its loops are the whole block.
        return Ok(exact(m.get(*q, *q) as f64));
    }
    let shifted: Vec<Vec<f64>> = block
        .iter()
        .map(|&i| block.iter().map(|&j| m.get(i, j) as f64 + if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut v = vec![1.0; block.len()];
    let (mut lo, mut hi) = (0.0, f64::INFINITY);
    for iteration in 1..=opts.max_iterations {
        let w: Vec<f64> = shifted.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        // v stays positive: B + I has a positive diagonal.
        lo = w.iter().zip(&v).map(|(a, b)| a / b).fold(f64::INFINITY, f64::min);
        hi = w.iter().zip(&v).map(|(a, b)| a / b).fold(0.0, f64::max);
        if hi - lo <= opts.tolerance * hi {
            let radius = ((lo + hi) / 2.0 - 1.0).max(0.0);
            return Ok(SpectralReport {
                radius,
                log_radius: radius.ln(),
                iterations: iteration,
                residual: hi - lo,
            });
        }
        let top = w.iter().copied().fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / top).collect();
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iterations,
        estimate: (lo + hi) / 2.0 - 1.0,
    })
}

/// Entropy of the shift accepted by a strongly connected shift-space
/// automaton: the log spectral radius of its Fischer cover.
pub fn entropy(a: &Automaton) -> Result<f64> {
    entropy_with(a, SpectralOptions::default())
}

pub fn entropy_with(a: &Automaton, opts: SpectralOptions) -> Result<f64> {
    let cover = fischer_cover(a)?;
    Ok(spectral_radius(&adjacency(cover.automaton()), opts)?.log_radius)
}

/// The three conditions of the spectral characterization for an automaton
/// `a` whose shift is contained in the shift `X` presented by `x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Theorem1Report {
    /// `a` is unambiguous.
    pub unambiguous: bool,
    /// `a` accepts `X`.
    pub accepts_x: bool,
    /// `log ρ(a)` equals the entropy of `X` within the tolerance.
    pub entropy_matches: bool,
    pub log_radius: f64,
    pub entropy_x: f64,
    /// Never exactly two of the three conditions hold.
    pub consistent: bool,
}

pub fn theorem1_check(a: &Automaton, x: &Automaton, tol: f64) -> Result<Theorem1Report> {
    a.require_shift_space()?;
    a.require_strongly_connected()?;
    x.require_shift_space()?;
    x.require_strongly_connected()?;
    if let Some(w) = factor_excess(a, x)? {
        return Err(Error::ContainmentViolation(a.format_word(&w)));
    }
    let unambiguous = check_unambiguous(a).unambiguous;
    let accepts_x = shift_language_equal(a, x)?.equal;
    let opts = SpectralOptions::default();
    let radius_a = spectral_radius(&adjacency(a), opts)?;
    let cover = fischer_cover(x)?;
    let radius_x = spectral_radius(&adjacency(cover.automaton()), opts)?;
    let entropy_matches = if radius_a.radius == 0.0 || radius_x.radius == 0.0 {
        radius_a.radius == radius_x.radius
    } else {
        (radius_a.log_radius - radius_x.log_radius).abs() <= tol
    };
    let held = [unambiguous, accepts_x, entropy_matches].iter().filter(|&&b| b).count();
    Ok(Theorem1Report {
        unambiguous,
        accepts_x,
        entropy_matches,
        log_radius: radius_a.log_radius,
        entropy_x: radius_x.log_radius,
        consistent: held != 2,
    })
}
