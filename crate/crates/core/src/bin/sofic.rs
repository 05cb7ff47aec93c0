//! Command-line front end. Exit codes: 0 computed (or true), 1 false for
//! boolean queries, 2 input or hypothesis error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use sofic::automaton::{scc_decompose, Automaton};
use sofic::bifuture::{bifuture_is_null, theorem2_check, union_term_measure};
use sofic::format::{automaton_to_dot, export_automaton, pair_graph_to_dot, parse_automaton, parse_measure};
use sofic::measure::{support_counterexample, word_measure, RationalMeasure};
use sofic::pair_graph::{build_pair_graph, solve_alpha};
use sofic::rational::format as fmt_rational;
use sofic::simulation::{estimate_bifuture, SampleConfig};
use sofic::spectral::{adjacency, entropy_with, spectral_radius, theorem1_check, SpectralOptions};
use sofic::subshift::{determinize_futures, fischer_cover, synchronizing_word, DeterministicCover};
use sofic::unambiguity::check_unambiguous;
use sofic::Error;

/// Failures of one invocation: bad usage, unreadable input or a library
/// error.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Io(m) => f.write_str(m),
            Failure::Lib(e) => e.fmt(f),
        }
    }
}

type Result<T> = std::result::Result<T, Failure>;

#[derive(Parser)]
#[command(name = "sofic", version, about = "Decision procedures for automata presenting sofic shifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Measure file for measure-theoretic commands.
    #[arg(long, global = true, value_name = "FILE")]
    measure: Option<PathBuf>,
    /// Tolerance for spectral computations.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an automaton file.
    Validate { automaton: PathBuf },
    /// Strongly connected components.
    Scc { automaton: PathBuf },
    /// Decide unambiguity; prints a witness when ambiguous.
    Unambiguous { automaton: PathBuf },
    /// Print the Fischer cover in automaton-file format.
    Fischer { automaton: PathBuf },
    /// A shortest synchronizing word of the automaton (when deterministic)
    /// or of its Fischer cover.
    Syncword { automaton: PathBuf },
    /// Entropy (natural log) of the shift.
    Entropy { automaton: PathBuf },
    /// Spectral radius of the adjacency matrix.
    Spectral { automaton: PathBuf },
    /// Check the two-of-three spectral characterization against a shift.
    Theorem1 {
        automaton: PathBuf,
        #[arg(long, value_name = "FILE")]
        shift: PathBuf,
    },
    /// Exact measure of a word.
    MeasureWord {
        #[arg(short = 'w', long)]
        word: String,
    },
    /// Compare the support of the measure with the factor language.
    SupportCheck { automaton: PathBuf },
    /// Decide whether the bi-future of a state is null.
    BifutureNull {
        automaton: PathBuf,
        #[arg(short = 'q', long)]
        state: String,
    },
    /// Cross-check unambiguity against nullity of all bi-futures.
    Theorem2 { automaton: PathBuf },
    /// Monte-Carlo estimate of the bi-future mass of a state.
    Estimate {
        automaton: PathBuf,
        #[arg(short = 'q', long)]
        state: String,
        #[arg(short = 'L', long = "length", default_value_t = 30)]
        length: usize,
        #[arg(short = 'N', long = "trials", default_value_t = 100_000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Divergence horizon K (default ⌈L/2⌉).
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// DOT graph of the automaton, or with `--measure` and `--pair STATE`
    /// of the pair graph of the measure and the futures of STATE.
    ExportDot {
        automaton: PathBuf,
        #[arg(long, value_name = "STATE")]
        pair: Option<String>,
    },
}

struct Context {
    json: bool,
    inputs: Vec<Value>,
}

impl Context {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.push(json!({
            "path": path.display().to_string(),
            "sha256": hex::encode(Sha256::digest(&bytes)),
        }));
        String::from_utf8(bytes).map_err(|_| Failure::Io(format!("{} is not UTF-8", path.display())))
    }

    fn automaton(&mut self, path: &Path) -> Result<Automaton> {
        let text = self.read(path)?;
        parse_automaton(&text).map_err(|e| located(path, e).into())
    }

    fn measure(&mut self, path: Option<&PathBuf>) -> Result<RationalMeasure> {
        let path = path.ok_or_else(|| Failure::Usage("this command needs --measure FILE".into()))?;
        let text = self.read(path)?;
        parse_measure(&text).map_err(|e| located(path, e).into())
    }
}

fn located(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

/// A computed result: text report, JSON payload, and whether the boolean
/// query (if any) came out true.
struct Outcome {
    text: String,
    data: Value,
    truth: bool,
}

fn outcome(text: impl Into<String>, data: Value, truth: bool) -> Outcome {
    Outcome {
        text: text.into(),
        data,
        truth,
    }
}

fn run(cli: &Cli, ctx: &mut Context) -> Result<Outcome> {
    let opts = SpectralOptions::with_tolerance(cli.tol.min(1e-12));
    match &cli.command {
        Command::Validate { automaton } => {
            let a = ctx.automaton(automaton)?;
            let sc = sofic::automaton::is_strongly_connected(&a);
            let text = format!(
                "valid: {} states, {} symbols, {} transitions; shift-space: {}; strongly connected: {}",
                a.num_states(),
                a.alphabet().len(),
                a.transitions().len(),
                a.is_shift_space(),
                sc
            );
            let data = json!({
                "states": a.num_states(),
                "symbols": a.alphabet().len(),
                "transitions": a.transitions().len(),
                "shift_space": a.is_shift_space(),
                "strongly_connected": sc,
            });
            Ok(outcome(text, data, true))
        }
        Command::Scc { automaton } => {
            let a = ctx.automaton(automaton)?;
            let comps = scc_decompose(&a);
            let lines: Vec<String> = comps
                .iter()
                .map(|c| {
                    let names: Vec<&str> = c.states.iter().map(|&q| a.state_name(q)).collect();
                    format!("{{{}}}{}", names.join(","), if c.recurrent { " recurrent" } else { "" })
                })
                .collect();
            let data: Vec<Value> = comps
                .iter()
                .map(|c| {
                    json!({
                        "states": c.states.iter().map(|&q| a.state_name(q)).collect::<Vec<_>>(),
                        "recurrent": c.recurrent,
                    })
                })
                .collect();
            Ok(outcome(lines.join("\n"), json!({ "components": data }), true))
        }
        Command::Unambiguous { automaton } => {
            let a = ctx.automaton(automaton)?;
            let v = check_unambiguous(&a);
            let (text, witness) = match &v.witness {
                None => ("unambiguous".to_string(), Value::Null),
                Some(w) => (
                    format!("ambiguous; witness: {}", w.describe(&a)),
                    json!({
                        "word": a.format_word(&w.label),
                        "start": a.state_name(w.start),
                        "end": a.state_name(w.end),
                        "run1": w.run1.iter().map(|&q| a.state_name(q)).collect::<Vec<_>>(),
                        "run2": w.run2.iter().map(|&q| a.state_name(q)).collect::<Vec<_>>(),
                    }),
                ),
            };
            Ok(outcome(text, json!({ "unambiguous": v.unambiguous, "witness": witness }), v.unambiguous))
        }
        Command::Fischer { automaton } => {
            let a = ctx.automaton(automaton)?;
            let c = fischer_cover(&a)?;
            let text = export_automaton(c.automaton());
            let data = json!({ "states": c.num_states(), "automaton": text });
            Ok(outcome(text.trim_end(), data, true))
        }
        Command::Syncword { automaton } => {
            let a = ctx.automaton(automaton)?;
            let (cover, source) = match DeterministicCover::new(a.clone()) {
                Ok(c) => (c, "automaton"),
                Err(_) => (fischer_cover(&a)?, "fischer cover"),
            };
            let w = synchronizing_word(&cover);
            let text = match &w {
                Some(w) => format!("synchronizing word of the {source}: {}", a.format_word(w)),
                None => format!("the {source} has no synchronizing word"),
            };
            let data = json!({ "source": source, "word": w.as_ref().map(|w| a.format_word(w)) });
            Ok(outcome(text, data, w.is_some()))
        }
        Command::Entropy { automaton } => {
            let a = ctx.automaton(automaton)?;
            let h = entropy_with(&a, opts)?;
            Ok(outcome(format!("{h:.6}"), json!({ "entropy": h, "log_base": "e" }), true))
        }
        Command::Spectral { automaton } => {
            let a = ctx.automaton(automaton)?;
            let r = spectral_radius(&adjacency(&a), opts)?;
            let text = format!(
                "spectral radius {:.9}, log {:.9} ({} iterations, residual {:.2e})",
                r.radius, r.log_radius, r.iterations, r.residual
            );
            Ok(outcome(text, serde_json::to_value(r).expect("serializable"), true))
        }
        Command::Theorem1 { automaton, shift } => {
            let a = ctx.automaton(automaton)?;
            let x = ctx.automaton(shift)?;
            let r = theorem1_check(&a, &x, cli.tol)?;
            let text = format!(
                "(i) unambiguous: {}\n(ii) accepts X: {}\n(iii) log ρ = h(X): {} ({:.9} vs {:.9})\nconsistent: {}",
                r.unambiguous, r.accepts_x, r.entropy_matches, r.log_radius, r.entropy_x, r.consistent
            );
            Ok(outcome(text, serde_json::to_value(&r).expect("serializable"), r.consistent))
        }
        Command::MeasureWord { word } => {
            let mu = ctx.measure(cli.measure.as_ref())?;
            let w = mu.alphabet().parse_word(word)?;
            let m = word_measure(&mu, &w)?;
            Ok(outcome(fmt_rational(&m), json!({ "word": word, "measure": fmt_rational(&m) }), true))
        }
        Command::SupportCheck { automaton } => {
            let a = ctx.automaton(automaton)?;
            let mu = ctx.measure(cli.measure.as_ref())?;
            let c = support_counterexample(&mu, &a)?;
            let text = match &c {
                None => "support equals the factor language".to_string(),
                Some(w) => format!("support differs from the factor language; counterexample: {}", a.format_word(w)),
            };
            let data = json!({ "matches": c.is_none(), "counterexample": c.as_ref().map(|w| a.format_word(w)) });
            Ok(outcome(text, data, c.is_none()))
        }
        Command::BifutureNull { automaton, state } => {
            let a = ctx.automaton(automaton)?;
            let mu = ctx.measure(cli.measure.as_ref())?;
            let q = a.state_index(state)?;
            let d = bifuture_is_null(&a, q, &mu)?;
            let (text, witness) = match &d.witness {
                None => (format!("μ(bifut({state})) = 0"), Value::Null),
                Some(w) => {
                    let term = union_term_measure(&a, &mu, &w.prefix, w.symbol, w.branch)?;
                    let text = format!(
                        "μ(bifut({state})) > 0; term w = {}, {} →{} {} / {}, measure {}",
                        a.format_word(&w.prefix),
                        a.state_name(w.branch_state),
                        a.alphabet().symbol(w.symbol),
                        a.state_name(w.branch.0),
                        a.state_name(w.branch.1),
                        fmt_rational(&term)
                    );
                    let data = json!({
                        "prefix": a.format_word(&w.prefix),
                        "branch_state": a.state_name(w.branch_state),
                        "symbol": a.alphabet().symbol(w.symbol),
                        "branch": [a.state_name(w.branch.0), a.state_name(w.branch.1)],
                        "term_measure": fmt_rational(&term),
                    });
                    (text, data)
                }
            };
            Ok(outcome(text, json!({ "state": state, "null": d.null, "witness": witness }), d.null))
        }
        Command::Theorem2 { automaton } => {
            let a = ctx.automaton(automaton)?;
            let mu = ctx.measure(cli.measure.as_ref())?;
            let r = theorem2_check(&a, &mu)?;
            let mut lines = vec![format!("hypotheses ok: {}", r.hypotheses_ok)];
            lines.extend(r.reasons.iter().map(|s| format!("  {s}")));
            lines.push(format!("irreducible support: {}", r.irreducible_support));
            lines.push(format!("unambiguous: {}", r.unambiguous));
            for (q, null) in r.per_state.iter().enumerate() {
                lines.push(format!("  μ(bifut({})) = 0: {null}", a.state_name(q)));
            }
            lines.push(format!("all bi-futures null: {}", r.all_bifutures_null));
            lines.push(format!("equivalence holds: {}", r.equivalence_holds));
            let mut data = serde_json::to_value(&r).expect("serializable");
            data["per_state"] = json!(r
                .per_state
                .iter()
                .enumerate()
                .map(|(q, &is_null)| json!({ "state": a.state_name(q), "null": is_null }))
                .collect::<Vec<_>>());
            Ok(outcome(lines.join("\n"), data, r.equivalence_holds))
        }
        Command::Estimate {
            automaton,
            state,
            length,
            trials,
            seed,
            horizon,
        } => {
            let a = ctx.automaton(automaton)?;
            let mu = ctx.measure(cli.measure.as_ref())?;
            let q = a.state_index(state)?;
            let cfg = SampleConfig {
                horizon: *horizon,
                ..SampleConfig::new(*seed, *length, *trials)
            };
            let e = estimate_bifuture(&a, q, &mu, &cfg)?;
            let text = format!(
                "estimate {:.6}, 95% interval [{:.6}, {:.6}] ({} of {} prefixes, L = {}, K = {}, seed {})",
                e.estimate, e.wilson_interval.0, e.wilson_interval.1, e.hits, e.trials, e.prefix_length, e.horizon, seed
            );
            let mut data = serde_json::to_value(&e).expect("serializable");
            data["seed"] = json!(seed);
            data["generator"] = json!("ChaCha8, one stream per trial");
            Ok(outcome(text, data, true))
        }
        Command::ExportDot { automaton, pair } => {
            let a = ctx.automaton(automaton)?;
            let dot = match pair {
                None => automaton_to_dot(&a),
                Some(state) => {
                    let mu = ctx.measure(cli.measure.as_ref())?;
                    let q = a.state_index(state)?;
                    let d = determinize_futures(&a, &[q])?;
                    let g = build_pair_graph(&mu, &d, 0)?;
                    let alpha = solve_alpha(&g)?;
                    pair_graph_to_dot(&g, d.automaton(), Some(&alpha))
                }
            };
            Ok(outcome(dot.trim_end(), json!({ "dot": dot }), true))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Scc { .. } => "scc",
        Command::Unambiguous { .. } => "unambiguous",
        Command::Fischer { .. } => "fischer",
        Command::Syncword { .. } => "syncword",
        Command::Entropy { .. } => "entropy",
        Command::Spectral { .. } => "spectral",
        Command::Theorem1 { .. } => "theorem1",
        Command::MeasureWord { .. } => "measure-word",
        Command::SupportCheck { .. } => "support-check",
        Command::BifutureNull { .. } => "bifuture-null",
        Command::Theorem2 { .. } => "theorem2",
        Command::Estimate { .. } => "estimate",
        Command::ExportDot { .. } => "export-dot",
    }
}

/// Writes a report line; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Context {
        json: cli.json,
        inputs: Vec::new(),
    };
    let result = run(&cli, &mut ctx);
    let envelope = |key: &str, value: Value| {
        json!({
            "tool": "sofic",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command_name(&cli.command),
            "inputs": ctx.inputs,
            key: value,
        })
    };
    match result {
        Ok(o) => {
            if ctx.json {
                let mut v = envelope("result", o.data);
                v["truth"] = json!(o.truth);
                emit(&serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                emit(&o.text);
            }
            if o.truth {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if ctx.json {
                emit(&serde_json::to_string_pretty(&envelope("error", json!(e.to_string()))).expect("serializable"));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
