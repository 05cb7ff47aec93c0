//! Seeded Monte-Carlo sampling from a stochastic representation and
//! estimation of bi-future mass.
//!
//! The generator is ChaCha8 (`rand_chacha`). Trial `i` of a run seeded with
//! `s` uses the ChaCha8 stream `i` of the key derived from `s`, so results
//! do not depend on the order or parallelism in which trials execute.
//! Every draw compares one uniform 64-bit integer against exact cumulative
//! thresholds `⌊F·2⁶⁴⌋`, so each step is off by at most `2⁻⁶⁴`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::automaton::{Automaton, Word};
use crate::error::{Error, Result};
use crate::measure::RationalMeasure;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SampleConfig {
    pub seed: u64,
    /// `L`, the length of each sampled prefix.
    pub prefix_length: usize,
    /// `N`, the number of sampled prefixes.
    pub trials: usize,
    /// `K`: only runs that split within the first `K` symbols count as
    /// witnessed bi-future pairs. `None` means `⌈L/2⌉`.
    pub horizon: Option<usize>,
}

impl SampleConfig {
    pub fn new(seed: u64, prefix_length: usize, trials: usize) -> Self {
        SampleConfig {
            seed,
            prefix_length,
            trials,
            horizon: None,
        }
    }

    pub fn horizon(&self) -> usize {
        self.horizon.unwrap_or(self.prefix_length.div_ceil(2))
    }

    fn validate(&self) -> Result<()> {
        if self.prefix_length == 0 || self.trials == 0 {
            return Err(Error::Hypothesis("prefix length and trial count must be at least 1".into()));
        }
        if self.horizon() > self.prefix_length {
            return Err(Error::Hypothesis("divergence horizon exceeds the prefix length".into()));
        }
        Ok(())
    }
}

/// A discrete distribution over `outcomes` with cumulative thresholds in
/// units of `2⁻⁶⁴`; the last threshold is `2⁶⁴`.
#[derive(Clone, Debug)]
struct Table<T> {
    outcomes: Vec<T>,
    thresholds: Vec<u128>,
}

impl<T: Copy> Table<T> {
    fn new(weighted: Vec<(T, Rational)>) -> Self {
        let scale = BigInt::from(1u128 << 64);
        let mut cum = Rational::zero();
        let mut outcomes = Vec::new();
        let mut thresholds = Vec::new();
        for (x, w) in weighted.into_iter().filter(|(_, w)| !w.is_zero()) {
            cum += w;
            let t = (&cum * Rational::from_integer(scale.clone())).floor().to_integer();
            outcomes.push(x);
            thresholds.push(t.to_u128().expect("threshold within 2^64"));
        }
        if let Some(last) = thresholds.last_mut() {
            *last = 1u128 << 64;
        }
        Table { outcomes, thresholds }
    }

    fn draw(&self, rng: &mut impl RngCore) -> T {
        let x = rng.next_u64() as u128;
        let i = self.thresholds.partition_point(|&t| t <= x);
        self.outcomes[i.min(self.outcomes.len() - 1)]
    }
}

/// Precomputed draw tables of a measure.
#[derive(Clone, Debug)]
pub struct Sampler {
    initial: Table<usize>,
    /// Per state: `(symbol, next state)`.
    steps: Vec<Table<(usize, usize)>>,
}

impl Sampler {
    pub fn new(mu: &RationalMeasure) -> Self {
        let m = mu.dim();
        let initial = Table::new(mu.pi().iter().cloned().enumerate().collect());
        let steps = (0..m)
            .map(|p| {
                let mut weighted = Vec::new();
                for a in 0..mu.alphabet().len() {
                    for (p2, w) in mu.nu(a)[p].iter().enumerate() {
                        weighted.push(((a, p2), w.clone()));
                    }
                }
                Table::new(weighted)
            })
            .collect();
        Sampler { initial, steps }
    }

    pub fn sample(&self, rng: &mut impl RngCore, length: usize) -> Word {
        let mut p = self.initial.draw(rng);
        let mut word = Vec::with_capacity(length);
        for _ in 0..length {
            let (a, p2) = self.steps[p].draw(rng);
            word.push(a);
            p = p2;
        }
        word
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// The prefix drawn by trial `trial`.
pub fn sample_trial(mu: &RationalMeasure, cfg: &SampleConfig, trial: usize) -> Result<Word> {
    cfg.validate()?;
    Ok(Sampler::new(mu).sample(&mut trial_rng(cfg.seed, trial), cfg.prefix_length))
}

/// The prefix drawn by trial 0.
pub fn sample_sequence(mu: &RationalMeasure, cfg: &SampleConfig) -> Result<Word> {
    sample_trial(mu, cfg, 0)
}

/// All `N` prefixes, in trial order.
pub fn sample_many(mu: &RationalMeasure, cfg: &SampleConfig) -> Result<Vec<Word>> {
    cfg.validate()?;
    let sampler = Sampler::new(mu);
    Ok((0..cfg.trials)
        .into_par_iter()
        .map(|i| sampler.sample(&mut trial_rng(cfg.seed, i), cfg.prefix_length))
        .collect())
}

/// Whether `word` has two runs from `q` that split within the first
/// `horizon` symbols and both survive to the end of `word`.
pub fn has_diverged_pair(a: &Automaton, q: usize, word: &[usize], horizon: usize) -> bool {
    let n = a.num_states();
    // pairs[(x·n + y)·2 + early]: two distinct runs currently at x and y,
    // with `early` set when they split within the horizon.
    let mut pairs = vec![false; n * n * 2];
    let mut single = vec![false; n];
    single[q] = true;
    for (j, &sym) in word.iter().enumerate() {
        let early = (j < horizon) as usize;
        let mut next_pairs = vec![false; n * n * 2];
        let mut next_single = vec![false; n];
        for x in 0..n {
            if single[x] {
                let succ = a.successors(x, sym);
                for &s in succ {
                    next_single[s] = true;
                }
                for (i, &s) in succ.iter().enumerate() {
                    for &s2 in &succ[i + 1..] {
                        next_pairs[(s * n + s2) * 2 + early] = true;
                    }
                }
            }
            for y in 0..n {
                for e in 0..2 {
                    if !pairs[(x * n + y) * 2 + e] {
                        continue;
                    }
                    for &x2 in a.successors(x, sym) {
                        for &y2 in a.successors(y, sym) {
                            next_pairs[(x2 * n + y2) * 2 + e] = true;
                        }
                    }
                }
            }
        }
        pairs = next_pairs;
        single = next_single;
    }
    pairs.iter().skip(1).step_by(2).any(|&b| b)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BifutureEstimate {
    pub estimate: f64,
    /// 95% Wilson score interval.
    pub wilson_interval: (f64, f64),
    pub hits: usize,
    pub trials: usize,
    pub prefix_length: usize,
    pub horizon: usize,
}

pub fn wilson_interval(hits: usize, trials: usize) -> (f64, f64) {
    const Z: f64 = 1.959_963_984_540_054;
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = Z * Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Fraction of sampled prefixes that carry two runs from `q` which split
/// within the horizon and survive to length `L`. This bounds `μ(bifut(q))`
/// from above and converges to it as `K` and `L − K` grow.
pub fn estimate_bifuture(a: &Automaton, q: usize, mu: &RationalMeasure, cfg: &SampleConfig) -> Result<BifutureEstimate> {
    cfg.validate()?;
    a.check_state(q)?;
    mu.alphabet().check_same(a.alphabet())?;
    let sampler = Sampler::new(mu);
    let horizon = cfg.horizon();
    let hits = (0..cfg.trials)
        .into_par_iter()
        .filter(|&i| {
            let w = sampler.sample(&mut trial_rng(cfg.seed, i), cfg.prefix_length);
            has_diverged_pair(a, q, &w, horizon)
        })
        .count();
    Ok(BifutureEstimate {
        estimate: hits as f64 / cfg.trials as f64,
        wilson_interval: wilson_interval(hits, cfg.trials),
        hits,
        trials: cfg.trials,
        prefix_length: cfg.prefix_length,
        horizon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Alphabet;
    use crate::catalog;
    use crate::measure::{make_markov_from_cover, make_periodic_point_masses, make_uniform};
    use crate::rational::ratio;
    use crate::subshift::DeterministicCover;

    fn bin() -> Alphabet {
        Alphabet::new(&["0", "1"]).unwrap()
    }

    #[test]
    fn sampling_is_deterministic() {
        let mu = make_uniform(bin()).unwrap();
        let cfg = SampleConfig::new(42, 20, 50);
        assert_eq!(sample_many(&mu, &cfg).unwrap(), sample_many(&mu, &cfg).unwrap());
        assert_eq!(sample_sequence(&mu, &cfg).unwrap(), sample_many(&mu, &cfg).unwrap()[0]);
        assert_ne!(sample_trial(&mu, &cfg, 0).unwrap(), sample_trial(&mu, &cfg, 1).unwrap());
        let a = catalog::fig3();
        assert_eq!(estimate_bifuture(&a, 1, &mu, &cfg).unwrap(), estimate_bifuture(&a, 1, &mu, &cfg).unwrap());
    }

    #[test]
    fn uniform_cylinder_frequencies() {
        let mu = make_uniform(bin()).unwrap();
        let cfg = SampleConfig::new(7, 4, 1_000_000);
        let mut counts = [0usize; 16];
        for w in sample_many(&mu, &cfg).unwrap() {
            counts[w.iter().fold(0, |acc, &a| acc * 2 + a)] += 1;
        }
        for c in counts {
            assert!((c as f64 / 1e6 - 1.0 / 16.0).abs() < 0.01);
        }
    }

    #[test]
    fn samples_stay_in_the_support() {
        let golden = make_markov_from_cover(&DeterministicCover::new(catalog::golden_mean()).unwrap()).unwrap();
        for w in sample_many(&golden, &SampleConfig::new(1, 30, 100_000)).unwrap() {
            assert!(!w.windows(2).any(|p| p == [1, 1]));
        }
        let pm = make_periodic_point_masses(bin(), &[(vec![0, 1], ratio(1, 2)), (vec![1, 0], ratio(1, 2))]).unwrap();
        for w in sample_many(&pm, &SampleConfig::new(2, 30, 10_000)).unwrap() {
            assert!(w.iter().enumerate().all(|(i, &a)| a == (i + w[0]) % 2));
        }
    }

    #[test]
    fn thresholds_are_exact() {
        let t = Table::new(vec![(0, ratio(1, 3)), (1, ratio(0, 1)), (2, ratio(2, 3))]);
        assert_eq!(t.outcomes, vec![0, 2]);
        assert_eq!(t.thresholds, vec![(1u128 << 64) / 3, 1u128 << 64]);
    }

    #[test]
    fn diverged_pairs() {
        let fig3 = catalog::fig3();
        assert!(has_diverged_pair(&fig3, 1, &[0, 0, 1, 0], 1));
        assert!(!has_diverged_pair(&fig3, 0, &[1, 1], 2));
        let fig2 = catalog::fig2_right();
        assert!(has_diverged_pair(&fig2, 0, &[0, 1, 0, 1, 0, 1], 1));
        assert!(!has_diverged_pair(&fig2, 0, &[0, 0, 0, 0, 0, 0], 3));
        // A split at the last step counts only when the horizon allows it.
        assert!(has_diverged_pair(&fig2, 0, &[1, 0, 0], 3));
        assert!(!has_diverged_pair(&fig2, 0, &[1, 0, 0], 2));
    }

    #[test]
    fn wilson_interval_brackets_the_estimate() {
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && 0.5 < hi && (hi - lo - 0.1924).abs() < 1e-3);
        assert_eq!(wilson_interval(0, 10).0, 0.0);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mu = make_uniform(bin()).unwrap();
        assert!(sample_sequence(&mu, &SampleConfig::new(0, 0, 1)).is_err());
        assert!(sample_sequence(&mu, &SampleConfig::new(0, 1, 0)).is_err());
        let cfg = SampleConfig {
            horizon: Some(5),
            ..SampleConfig::new(0, 4, 1)
        };
        assert!(estimate_bifuture(&catalog::fig3(), 0, &mu, &cfg).is_err());
    }
}
