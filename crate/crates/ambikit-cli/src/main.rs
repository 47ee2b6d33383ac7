//! `ambikit` — implicit descriptions of rationally identifiable models.
//!
//! Thin argument parser over the command functions in the library; every
//! subcommand reads a JSON model document and exits with a documented code.

use std::io::{stderr, stdout};

use clap::{Parser, Subcommand, ValueEnum};

use ambikit_cli::{
    cmd_bench, cmd_check, cmd_equiv, cmd_markov, cmd_vanishing, cmd_verify, BenchMethod,
};

#[derive(Parser)]
#[command(
    name = "ambikit",
    version,
    about = "Finite implicit descriptions of rationally identifiable statistical models",
    long_about = "Computes Markov-style constraint lists, vanishing ideals, and model \
                  equivalence certificates for models given by a birational parametrization: \
                  Gaussian graphical models (concentration and directed), staged trees, and \
                  Lyapunov covariance models.  Models are described by JSON documents; see \
                  docs/document-format.md."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Compare full semialgebraic descriptions by exact sampling.
    Exact,
    /// Compare equation sets only (closure equality).
    Zariski,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Transfer the parameter equations and saturate at the localized monoid.
    Saturation,
    /// Eliminate parameters from the graph of the parametrization.
    Elimination,
}

#[derive(Subcommand)]
enum Command {
    /// Print the finite constraint list (equations, inequalities,
    /// inequations, positivities) describing the model.
    Markov {
        /// Path to the JSON model document.
        #[arg(long)]
        model: String,
        /// Emit JSON instead of human-readable text.
        #[arg(long)]
        json: bool,
    },
    /// Print a Gröbner basis of the model's vanishing ideal.
    Vanishing {
        /// Path to the JSON model document.
        #[arg(long)]
        model: String,
        /// Emit JSON instead of human-readable text.
        #[arg(long)]
        json: bool,
        /// Abort with exit code 5 after this many seconds.
        #[arg(long)]
        timeout_seconds: Option<u64>,
    },
    /// Decide whether two documented models are equal (exit 0), provably
    /// different (exit 10, certificate on stdout), or undecided (exit 11).
    Equiv {
        /// Path to the first JSON model document.
        #[arg(long)]
        model: String,
        /// Path to the second JSON model document.
        #[arg(long)]
        other: String,
        /// Comparison mode.
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Interior sample points per direction in exact mode.
        #[arg(long, default_value_t = 32)]
        trials: usize,
        /// Seed for the sampling randomness (overrides the document).
        #[arg(long)]
        seed: Option<u64>,
        /// Abort with exit code 5 after this many seconds.
        #[arg(long)]
        timeout_seconds: Option<u64>,
        /// Emit JSON instead of human-readable text.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate every constraint of the model at an exact rational point.
    Check {
        /// Path to the JSON model document.
        #[arg(long)]
        model: String,
        /// Comma-separated rational coordinates, e.g. "1,1/2,0,-3/4".
        #[arg(long)]
        point: String,
        /// Emit JSON instead of human-readable text.
        #[arg(long)]
        json: bool,
    },
    /// Time one route to the vanishing ideal and print a CSV row.
    Bench {
        /// Path to the JSON model document.
        #[arg(long)]
        model: String,
        /// Which route to time.
        #[arg(long, value_enum, default_value_t = MethodArg::Saturation)]
        method: MethodArg,
        /// Record a timeout row (exit 0) after this many seconds.
        #[arg(long)]
        timeout_seconds: Option<u64>,
    },
    /// Re-verify that the parametrization and its inverse compose to the
    /// identity on both sides.
    Verify {
        /// Path to the JSON model document.
        #[arg(long)]
        model: String,
        /// Abort with exit code 5 after this many seconds.
        #[arg(long)]
        timeout_seconds: Option<u64>,
    },
}

fn main() {
    let cli = Cli::parse();
    let out = &mut stdout();
    let err = &mut stderr();
    let code = match cli.command {
        Command::Markov { model, json } => cmd_markov(&model, json, out, err),
        Command::Vanishing {
            model,
            json,
            timeout_seconds,
        } => cmd_vanishing(&model, json, timeout_seconds, out, err),
        Command::Equiv {
            model,
            other,
            mode,
            trials,
            seed,
            timeout_seconds,
            json,
        } => cmd_equiv(
            &model,
            &other,
            matches!(mode, ModeArg::Zariski),
            trials,
            seed,
            timeout_seconds,
            json,
            out,
            err,
        ),
        Command::Check { model, point, json } => cmd_check(&model, &point, json, out, err),
        Command::Bench {
            model,
            method,
            timeout_seconds,
        } => cmd_bench(
            &model,
            match method {
                MethodArg::Saturation => BenchMethod::Saturation,
                MethodArg::Elimination => BenchMethod::Elimination,
            },
            timeout_seconds,
            out,
            err,
        ),
        Command::Verify {
            model,
            timeout_seconds,
        } => cmd_verify(&model, timeout_seconds, out, err),
    };
    std::process::exit(code);
}
