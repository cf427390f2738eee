//! Command-line front end.
//!
//! Exit status: 0 success, 1 negative verdict, 2 usage or input error,
//! 3 resource limit. Errors go to stderr as one JSON object per line:
//! `{"error":"<kind>","message":"..."}`.

use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::circuit::{render_ascii, Circuit};
use crate::eca::{step, BoundaryCondition, Configuration, Rule};
use crate::error::{Error, Result};
use crate::reversibility::{
    is_reversible_bruteforce, proof_family_witness, scan_all_rules, SCAN_MAX_CELLS,
    SCAN_MIN_CELLS,
};
use crate::simulator::{simulate_basis, simulate_statevector, verification_report, StateVector};
use crate::synthesis::{synthesize, SynthesisRequest};

/// Overrides the worker thread count for parallel scans.
pub const THREADS_ENV: &str = "ECA_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "eca-circuits",
    version,
    about = "Reversibility and quantum circuits for elementary cellular automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify all 256 rules over a range of cell counts, both boundaries.
    Scan {
        #[arg(long, default_value_t = SCAN_MIN_CELLS)]
        n_min: usize,
        #[arg(long, default_value_t = SCAN_MAX_CELLS)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Brute-force reversibility verdict for one automaton (exit 1 if irreversible).
    Check {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Emit the circuit implementing a reversible automaton as JSON.
    Synth {
        #[command(flatten)]
        target: Target,
        /// Write the circuit JSON here instead of stdout.
        #[arg(long)]
        output: Option<String>,
        /// Also print the text diagram to stdout.
        #[arg(long)]
        render: bool,
    },
    /// Apply a circuit file or a rule step to a configuration or state vector.
    Sim(SimArgs),
    /// Produce a collision pair proving irreversibility (exit 1 if reversible).
    Prove {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Exhaustively compare the synthesized circuit with the automaton.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Draw a circuit file as text.
    Render {
        /// Circuit JSON file, or `-` for stdin.
        #[arg(long)]
        circuit: String,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long)]
    rule: i64,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    bc: BcArg,
}

impl Target {
    fn resolve(&self) -> Result<(Rule, usize, BoundaryCondition)> {
        Ok((Rule::new(self.rule)?, self.n, self.bc.into()))
    }
}

#[derive(Args, Debug)]
struct SimArgs {
    /// Circuit JSON file, or `-` for stdin.
    #[arg(long, conflicts_with = "rule")]
    circuit: Option<String>,
    /// Step this rule instead of running a circuit.
    #[arg(long, requires = "bc")]
    rule: Option<i64>,
    #[arg(long, value_enum)]
    bc: Option<BcArg>,
    /// Configuration as a bit string, a_0 first (e.g. 10100).
    #[arg(long, conflicts_with = "state")]
    config: Option<String>,
    /// State-vector JSON file, or `-` for stdin.
    #[arg(long)]
    state: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BcArg {
    Periodic,
    Fixed,
}

impl From<BcArg> for BoundaryCondition {
    fn from(b: BcArg) -> Self {
        match b {
            BcArg::Periodic => BoundaryCondition::Periodic,
            BcArg::Fixed => BoundaryCondition::Fixed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Output of a successful dispatch: stdout text and exit status.
struct Outcome {
    stdout: String,
    status: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            status: EXIT_OK,
        }
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("invalid arguments");
            let first = first.trim_start_matches("error: ");
            write_error(err, "usage", first);
            return EXIT_USAGE;
        }
    };

    let result = with_thread_pool(|| dispatch(cli.command));
    match result {
        Ok(outcome) => {
            let _ = out.write_all(outcome.stdout.as_bytes());
            outcome.status
        }
        Err(e) => {
            write_error(err, e.kind(), &e.to_string());
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotReversible { .. } => EXIT_NEGATIVE,
        Error::Capacity { .. } => EXIT_CAPACITY,
        _ => EXIT_USAGE,
    }
}

fn write_error(err: &mut dyn Write, kind: &str, message: &str) {
    let record = json!({ "error": kind, "message": message });
    let _ = writeln!(err, "{record}");
}

fn with_thread_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0);
    match threads.and_then(|t| rayon::ThreadPoolBuilder::new().num_threads(t).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values always serialize");
    s.push('\n');
    s
}

fn dispatch(command: Command) -> Result<Outcome> {
    match command {
        Command::Scan {
            n_min,
            n_max,
            format,
        } => {
            let report = scan_all_rules(n_min, n_max)?;
            Ok(Outcome::ok(match format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            }))
        }

        Command::Check { target, format } => {
            let (rule, n, bc) = target.resolve()?;
            let v = is_reversible_bruteforce(rule, n, bc)?;
            let stdout = match format {
                Format::Json => serde_json::to_string_pretty(&v).expect("verdict serializes") + "\n",
                Format::Text => match &v.witness {
                    None => format!("rule {rule} n={n} bc={bc}: reversible\n"),
                    Some(w) => format!(
                        "rule {rule} n={n} bc={bc}: irreversible ({} and {} both map to {})\n",
                        w.first, w.second, w.image
                    ),
                },
            };
            Ok(Outcome {
                stdout,
                status: if v.reversible { EXIT_OK } else { EXIT_NEGATIVE },
            })
        }

        Command::Synth {
            target,
            output,
            render,
        } => {
            let (rule, n, bc) = target.resolve()?;
            let circuit = synthesize(&SynthesisRequest::new(rule, n, bc)?)?;
            let json = circuit.to_json() + "\n";
            let mut stdout = String::new();
            match output {
                Some(path) => fs::write(path, &json)?,
                None => stdout.push_str(&json),
            }
            if render {
                stdout.push_str(&render_ascii(&circuit));
            }
            Ok(Outcome::ok(stdout))
        }

        Command::Sim(args) => simulate(args),

        Command::Prove { target, format } => {
            let (rule, n, bc) = target.resolve()?;
            let (source, witness) = match proof_family_witness(rule, bc, n) {
                Ok(w) => ("family", Some(w)),
                Err(Error::Unsupported(_)) => {
                    ("bruteforce", is_reversible_bruteforce(rule, n, bc)?.witness)
                }
                Err(e) => return Err(e),
            };
            let Some(w) = witness else {
                let stdout = match format {
                    Format::Json => pretty(&json!({
                        "rule": rule, "n": n, "bc": bc, "reversible": true,
                    })),
                    Format::Text => format!("rule {rule} n={n} bc={bc}: reversible, no collision\n"),
                };
                return Ok(Outcome {
                    stdout,
                    status: EXIT_NEGATIVE,
                });
            };
            let stdout = match format {
                Format::Json => pretty(&json!({
                    "rule": rule,
                    "n": n,
                    "bc": bc,
                    "reversible": false,
                    "source": source,
                    "witness": [w.first, w.second],
                    "image": w.image,
                })),
                Format::Text => format!(
                    "{} and {} both map to {} ({source})\n",
                    w.first, w.second, w.image
                ),
            };
            Ok(Outcome::ok(stdout))
        }

        Command::Verify { target, format } => {
            let (rule, n, bc) = target.resolve()?;
            let report = verification_report(rule, n, bc)?;
            let stdout = match format {
                Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
                Format::Text => format!(
                    "rule {rule} n={n} bc={bc}: {} ({} states, {} mismatches)\n",
                    if report.verified { "verified" } else { "MISMATCH" },
                    report.states_checked,
                    report.mismatches
                ),
            };
            Ok(Outcome {
                stdout,
                status: if report.verified { EXIT_OK } else { EXIT_NEGATIVE },
            })
        }

        Command::Render { circuit } => {
            let c = Circuit::from_json(&read_input(&circuit)?)?;
            Ok(Outcome::ok(render_ascii(&c)))
        }
    }
}

fn simulate(args: SimArgs) -> Result<Outcome> {
    let SimArgs {
        circuit,
        rule,
        bc,
        config,
        state,
        format,
    } = args;

    let circuit = circuit.map(|p| read_input(&p).and_then(|t| Circuit::from_json(&t))).transpose()?;

    match (config, state) {
        (Some(bits), None) => {
            let a: Configuration = bits.parse()?;
            let out = match (&circuit, rule) {
                (Some(c), None) => simulate_basis(c, &a)?,
                (None, Some(code)) => {
                    let bc = bc.ok_or_else(|| Error::domain("--rule needs --bc"))?;
                    step(&a, Rule::new(code)?, bc.into())
                }
                _ => return Err(Error::domain("sim needs exactly one of --circuit or --rule")),
            };
            Ok(Outcome::ok(match format {
                Format::Json => pretty(&json!({ "n": out.len(), "bits": out })),
                Format::Text => format!("{out}\n"),
            }))
        }
        (None, Some(path)) => {
            let Some(c) = circuit else {
                return Err(Error::domain("state-vector simulation needs --circuit"));
            };
            let v = StateVector::from_json(&read_input(&path)?)?;
            let out = simulate_statevector(&c, &v)?;
            Ok(Outcome::ok(out.to_json() + "\n"))
        }
        _ => Err(Error::domain("sim needs exactly one of --config or --state")),
    }
}
