use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use holomotion_cli::{run, CliError, Kind, Overrides, Scenario};
use serde_json::{json, Value};

/// Holomorphic-motion extension toolkit.
///
/// Exit status: 0 when every certificate passes, 2 when a certificate fails,
/// 1 on bad input.
#[derive(Parser)]
#[command(name = "holomotion", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Directory for report.json, CSV tables and SVG diagrams. Without it the
    /// report goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also render SVG diagrams (needs --out).
    #[arg(long, global = true)]
    svg: bool,
    /// Boundary samples (extend, default 64) or quadrature samples (geometry, default 4096).
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Ray count of the radial structure (extend, default 16).
    #[arg(long, global = true)]
    rays: Option<usize>,
    /// Primary tolerance: agreement (extend, 1e-4), Newton residual
    /// (barycenter, 1e-10), quadrature check (geometry, 1e-6).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write runtime_ms = 0 for byte-reproducible reports.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Reduce a word and tabulate deletions and infinity filling.
    Words {
        #[arg(long)]
        rank: usize,
        /// Space-separated letters such as `g0 g1^-1`.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Monodromy, winding and trace tests for a motion spec file.
    Monodromy { spec: PathBuf },
    /// Build and certify a counterexample motion.
    Counterexample {
        #[arg(long)]
        n: usize,
        /// `trace` or `chirka`.
        #[arg(long, default_value = "trace")]
        family: String,
    },
    /// Length bound and annulus criterion from {"ellE": .., "R": ..}.
    Geometry { input: PathBuf },
    /// Extend a motion given by a JSON list of trace coefficient arrays.
    Extend {
        traces: PathBuf,
        /// Flow time step.
        #[arg(long)]
        dt: Option<f64>,
    },
    /// Barycentric extension of a sampled circle map (CSV `k,theta_k`).
    Barycenter {
        map: PathBuf,
        /// JSON list of `[re, im]` evaluation points.
        #[arg(long)]
        points: PathBuf,
    },
}

fn read_json(path: &Path, key: &str) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), source: e })?;
    serde_json::from_str(&text).map_err(|e| CliError::Input { key: key.into(), message: format!("{}: {e}", path.display()) })
}

fn scenario(cmd: Command) -> Result<Scenario, CliError> {
    Ok(match cmd {
        Command::Run { scenario } => Scenario::from_file(&scenario)?,
        Command::Words { rank, word } => Scenario::new(Kind::Words, json!({ "rank": rank, "word": word })),
        Command::Monodromy { spec } => Scenario::new(Kind::Monodromy, read_json(&spec, "payload")?),
        Command::Counterexample { n, family } => {
            Scenario::new(Kind::Counterexample, json!({ "n": n, "family": family }))
        }
        Command::Geometry { input } => Scenario::new(Kind::Geometry, read_json(&input, "payload")?),
        Command::Extend { traces, dt } => {
            let mut payload = json!({ "traces": read_json(&traces, "payload.traces")? });
            if let Some(dt) = dt {
                payload["dt"] = json!(dt);
            }
            Scenario::new(Kind::Extend, payload)
        }
        Command::Barycenter { map, points } => {
            Scenario::new(Kind::Barycenter, json!({ "map": map, "points": read_json(&points, "payload.points")? }))
        }
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let o = Overrides {
        samples: cli.samples,
        rays: cli.rays,
        tol: cli.tol,
        out: cli.out,
        svg: cli.svg,
        no_timing: cli.no_timing,
    };
    let outcome = scenario(cli.command).and_then(|s| run(&s, &o));
    match outcome {
        Ok(outcome) => {
            if outcome.files.is_empty() {
                print!("{}", outcome.report.to_json());
            } else {
                for f in &outcome.files {
                    println!("{}", f.display());
                }
            }
            for (name, c) in &outcome.report.certificates {
                if !c.pass {
                    eprintln!("certificate failed: {name}");
                }
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
