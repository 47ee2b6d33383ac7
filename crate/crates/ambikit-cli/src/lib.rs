//! Command implementations behind the `ambikit` binary.
//!
//! Every subcommand is a plain function taking parsed arguments and two
//! output sinks, returning a process exit code; the binary is a thin
//! argument parser over these.  Keeping them here makes the full pipeline
//! drivable from integration tests without spawning processes.
//!
//! Exit codes are part of the interface:
//!
//! | code | meaning                                            |
//! |------|----------------------------------------------------|
//! | 0    | success (for `equiv`: models are equivalent)       |
//! | 2    | unreadable, malformed, or schema-invalid document  |
//! | 3    | consistency failure: the model may be empty        |
//! | 4    | internal error, or a failed inverse verification   |
//! | 5    | deadline exceeded                                  |
//! | 10   | `equiv`: inequivalent, certificate on stdout       |
//! | 11   | `equiv`: undecided                                 |
//!
//! All output is deterministic for a fixed document, seed, and order —
//! generators print in a canonical sorted order and every randomized path
//! is seeded.  The `AMBIKIT_THREADS` environment variable caps internal
//! parallelism (default 1).

use std::io::Write;
use std::str::FromStr;

use num::BigRational;
use thiserror::Error;

use ambikit::birational::BirationalError;
use ambikit::groebner::GroebnerError;
use ambikit::implicitize::{
    check_point, markov_property, model_equiv_with, vanishing_ideal_with, ConstraintKind,
    EquivMode, EquivResult, ImplicitizeError, MarkovProperty,
};
use ambikit::modelzoo::{ModelSpec, ModelZooError};

pub mod bench;
pub mod document;

pub use bench::{BenchMethod, BenchRow};
pub use document::{Family, ModelDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_CONSISTENCY: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_DEADLINE: i32 = 5;
pub const EXIT_INEQUIVALENT: i32 = 10;
pub const EXIT_UNDECIDED: i32 = 11;

/// Anything that can stop a command, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid document: {0}")]
    Schema(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("deadline exceeded")]
    Deadline,
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Schema(_) => EXIT_SCHEMA,
            CliError::Consistency(_) => EXIT_CONSISTENCY,
            CliError::Deadline => EXIT_DEADLINE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<ModelZooError> for CliError {
    fn from(e: ModelZooError) -> Self {
        match e {
            ModelZooError::VertexOutOfRange { .. }
            | ModelZooError::BadEdge { .. }
            | ModelZooError::Unsupported(_)
            | ModelZooError::BadTree(_)
            | ModelZooError::BadLyapunov(_) => CliError::Schema(e.to_string()),
            ModelZooError::SamplingExhausted { .. } => CliError::Consistency(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<ImplicitizeError> for CliError {
    fn from(e: ImplicitizeError) -> Self {
        match e {
            ImplicitizeError::EmptyParameterSpaceSuspected { .. }
            | ImplicitizeError::RegionSamplingExhausted { .. } => {
                CliError::Consistency(e.to_string())
            }
            ImplicitizeError::DifferentModelSpaces => CliError::Schema(e.to_string()),
            ImplicitizeError::Groebner(GroebnerError::Cancelled) => CliError::Deadline,
            ImplicitizeError::Zoo(z) => CliError::from(z),
            ImplicitizeError::Birational(BirationalError::Groebner(GroebnerError::Cancelled)) => {
                CliError::Deadline
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn fail(err: &mut dyn Write, e: &CliError) -> i32 {
    let _ = writeln!(err, "error: {e}");
    e.exit_code()
}

/// Warns when the document's parameter equations are nonlinear: the
/// saturation route to the vanishing ideal is certified for parameter
/// spaces cut out by linear equations, which covers every built family.
fn warn_nonlinear_parameter_space(m: &ModelSpec, err: &mut dyn Write) {
    if m.eq_gens().iter().any(|g| g.degree().unwrap_or(0) > 1) {
        let _ = writeln!(
            err,
            "warning: nonlinear parameter equations; the computed ideal is the saturation of \
             the transferred equations, which equals the vanishing ideal only when the \
             parameter equations generate a prime ideal avoiding the denominators"
        );
    }
}

fn kind_name(kind: ConstraintKind) -> &'static str {
    match kind {
        ConstraintKind::Equation => "equation",
        ConstraintKind::Inequality => "inequality",
        ConstraintKind::Inequation => "inequation",
        ConstraintKind::Positivity => "positivity",
    }
}

fn markov_json(label: &str, mp: &MarkovProperty) -> serde_json::Value {
    let strings = |v: &[ambikit::polyring::Polynomial]| -> Vec<String> {
        v.iter().map(|p| p.to_string()).collect()
    };
    serde_json::json!({
        "model": label,
        "equations": strings(&mp.equations),
        "inequalities": strings(&mp.inequalities),
        "inequations": strings(&mp.inequations),
        "positivities": strings(&mp.positivities),
        "provenance": mp.provenance,
    })
}

fn write_markov_text(
    out: &mut dyn Write,
    label: &str,
    mp: &MarkovProperty,
) -> std::io::Result<()> {
    writeln!(out, "model: {label}")?;
    let mut prov = mp.provenance.iter();
    let groups: [(&str, &[ambikit::polyring::Polynomial]); 4] = [
        ("equations", &mp.equations),
        ("inequalities", &mp.inequalities),
        ("inequations", &mp.inequations),
        ("positivities", &mp.positivities),
    ];
    for (name, list) in groups {
        writeln!(out, "{name} ({}):", list.len())?;
        for p in list {
            let from = prov.next().map(String::as_str).unwrap_or("");
            writeln!(out, "  {p}")?;
            writeln!(out, "      from: {from}")?;
        }
    }
    Ok(())
}

/// Prints the finite implicit description of the documented model.
pub fn cmd_markov(path: &str, json: bool, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let run = || -> Result<(String, MarkovProperty), CliError> {
        let doc = ModelDocument::load(path)?;
        let m = doc.build()?;
        let mp = markov_property(&m)?;
        Ok((m.label().to_string(), mp))
    };
    match run() {
        Ok((label, mp)) => {
            let outcome = if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&markov_json(&label, &mp)).unwrap()
                )
            } else {
                write_markov_text(out, &label, &mp)
            };
            match outcome {
                Ok(()) => EXIT_OK,
                Err(e) => fail(err, &CliError::Internal(e.to_string())),
            }
        }
        Err(e) => fail(err, &e),
    }
}

/// Prints the vanishing ideal of the documented model in canonical order.
pub fn cmd_vanishing(
    path: &str,
    json: bool,
    timeout_seconds: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mut run = || -> Result<(String, Vec<String>), CliError> {
        let doc = ModelDocument::load(path)?;
        let m = doc.build()?;
        warn_nonlinear_parameter_space(&m, err);
        let ideal = vanishing_ideal_with(&m, &doc.budget(timeout_seconds))?;
        Ok((m.label().to_string(), bench::sorted_generator_strings(&ideal)))
    };
    match run() {
        Ok((label, gens)) => {
            let outcome = if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&serde_json::json!({
                        "model": label,
                        "generators": gens,
                    }))
                    .unwrap()
                )
            } else if gens.is_empty() {
                writeln!(out, "model: {label}").and_then(|()| {
                    writeln!(out, "vanishing ideal (0 generators): <0>")
                })
            } else {
                writeln!(out, "model: {label}")
                    .and_then(|()| writeln!(out, "vanishing ideal ({} generators):", gens.len()))
                    .and_then(|()| {
                        for g in &gens {
                            writeln!(out, "  {g}")?;
                        }
                        Ok(())
                    })
            };
            match outcome {
                Ok(()) => EXIT_OK,
                Err(e) => fail(err, &CliError::Internal(e.to_string())),
            }
        }
        Err(e) => fail(err, &e),
    }
}

/// Decides equality of two documented models; the exit code carries the
/// verdict and any certificate goes to stdout.
#[allow(clippy::too_many_arguments)]
pub fn cmd_equiv(
    path1: &str,
    path2: &str,
    zariski: bool,
    trials: usize,
    seed: Option<u64>,
    timeout_seconds: Option<u64>,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mode = if zariski {
        EquivMode::Zariski
    } else {
        EquivMode::Exact
    };
    let run = || -> Result<_, CliError> {
        let doc1 = ModelDocument::load(path1)?;
        let doc2 = ModelDocument::load(path2)?;
        let m1 = doc1.build()?;
        let m2 = doc2.build()?;
        let verdict = model_equiv_with(
            &m1,
            &m2,
            mode,
            trials,
            doc1.seed(seed),
            &doc1.budget(timeout_seconds),
        )?;
        Ok((m1.label().to_string(), m2.label().to_string(), verdict))
    };
    let (l1, l2, verdict) = match run() {
        Ok(v) => v,
        Err(e) => return fail(err, &e),
    };
    let verdict_name = match verdict.result {
        EquivResult::Equivalent => "equivalent",
        EquivResult::Inequivalent => "inequivalent",
        EquivResult::Undecided => "undecided",
    };
    let outcome = if json {
        let items: Vec<serde_json::Value> = verdict
            .certificate
            .iter()
            .map(|c| {
                serde_json::json!({
                    "from_model": c.from_model,
                    "kind": kind_name(c.kind),
                    "constraint": c.constraint.to_string(),
                    "residual": c.residual.as_ref().map(|r| r.to_string()),
                    "witness": c.witness.as_ref().map(|w| {
                        w.iter().map(|x| x.to_string()).collect::<Vec<_>>()
                    }),
                })
            })
            .collect();
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "first": l1,
                "second": l2,
                "mode": if zariski { "zariski" } else { "exact" },
                "verdict": verdict_name,
                "certificate": items,
                "notes": verdict.notes,
            }))
            .unwrap()
        )
    } else {
        (|| -> std::io::Result<()> {
            writeln!(out, "first:  {l1}")?;
            writeln!(out, "second: {l2}")?;
            writeln!(out, "mode: {}", if zariski { "zariski" } else { "exact" })?;
            writeln!(out, "verdict: {verdict_name}")?;
            if !verdict.certificate.is_empty() {
                writeln!(out, "certificate ({} items):", verdict.certificate.len())?;
                for (i, c) in verdict.certificate.iter().enumerate() {
                    let side = if c.from_model == 1 { "first" } else { "second" };
                    writeln!(
                        out,
                        "  [{}] {} of the {side} model fails on the other",
                        i + 1,
                        kind_name(c.kind)
                    )?;
                    writeln!(out, "      constraint: {}", c.constraint)?;
                    if let Some(r) = &c.residual {
                        writeln!(out, "      nonzero normal form: {r}")?;
                    }
                    if let Some(w) = &c.witness {
                        let coords: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                        writeln!(out, "      violated at: ({})", coords.join(", "))?;
                    }
                }
            }
            for note in &verdict.notes {
                writeln!(out, "note: {note}")?;
            }
            Ok(())
        })()
    };
    if let Err(e) = outcome {
        return fail(err, &CliError::Internal(e.to_string()));
    }
    match verdict.result {
        EquivResult::Equivalent => EXIT_OK,
        EquivResult::Inequivalent => EXIT_INEQUIVALENT,
        EquivResult::Undecided => EXIT_UNDECIDED,
    }
}

fn parse_point(text: &str, expected: usize) -> Result<Vec<BigRational>, CliError> {
    let mut point = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let value = BigRational::from_str(part)
            .map_err(|e| CliError::Schema(format!("invalid coordinate \"{part}\": {e}")))?;
        point.push(value);
    }
    if point.len() != expected {
        return Err(CliError::Schema(format!(
            "point has {} coordinates but the model space has {expected}",
            point.len()
        )));
    }
    Ok(point)
}

/// Evaluates every constraint of the documented model at an exact point.
pub fn cmd_check(
    path: &str,
    point_text: &str,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let run = || -> Result<_, CliError> {
        let doc = ModelDocument::load(path)?;
        let m = doc.build()?;
        let mp = markov_property(&m)?;
        let point = parse_point(point_text, m.model_table().len())?;
        let verdicts = check_point(&mp, &point).map_err(CliError::from)?;
        Ok((m.label().to_string(), point, verdicts))
    };
    let (label, point, verdicts) = match run() {
        Ok(v) => v,
        Err(e) => return fail(err, &e),
    };
    let failures = verdicts.iter().filter(|v| !v.holds).count();
    let outcome = if json {
        let items: Vec<serde_json::Value> = verdicts
            .iter()
            .map(|v| {
                serde_json::json!({
                    "kind": kind_name(v.kind),
                    "index": v.index,
                    "holds": v.holds,
                    "residual": v.residual.to_string(),
                    "provenance": v.provenance,
                })
            })
            .collect();
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&serde_json::json!({
                "model": label,
                "point": point.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "constraints": items,
                "failures": failures,
            }))
            .unwrap()
        )
    } else {
        (|| -> std::io::Result<()> {
            writeln!(out, "model: {label}")?;
            let coords: Vec<String> = point.iter().map(|x| x.to_string()).collect();
            writeln!(out, "point: ({})", coords.join(", "))?;
            for v in &verdicts {
                writeln!(
                    out,
                    "  {:<10} {:>3}  {}  value {}",
                    kind_name(v.kind),
                    v.index + 1,
                    if v.holds { "holds" } else { "FAILS" },
                    v.residual
                )?;
            }
            if failures == 0 {
                writeln!(out, "verdict: all {} constraints hold", verdicts.len())
            } else {
                writeln!(
                    out,
                    "verdict: {failures} of {} constraints fail",
                    verdicts.len()
                )
            }
        })()
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(e) => fail(err, &CliError::Internal(e.to_string())),
    }
}

/// Runs one benchmark method and prints its CSV row.
pub fn cmd_bench(
    path: &str,
    method: BenchMethod,
    timeout_seconds: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let run = || -> Result<BenchRow, CliError> {
        let doc = ModelDocument::load(path)?;
        bench::run_bench(&doc, method, timeout_seconds)
    };
    match run() {
        Ok(row) => {
            let outcome = writeln!(out, "{}", BenchRow::header())
                .and_then(|()| writeln!(out, "{}", row.to_csv()));
            match outcome {
                Ok(()) => EXIT_OK,
                Err(e) => fail(err, &CliError::Internal(e.to_string())),
            }
        }
        Err(e) => fail(err, &e),
    }
}

/// Re-verifies that the documented model's parametrization and inverse
/// compose to the identity on both sides.
pub fn cmd_verify(
    path: &str,
    timeout_seconds: Option<u64>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let run = || -> Result<_, CliError> {
        let doc = ModelDocument::load(path)?;
        let m = doc.build()?;
        Ok((m.label().to_string(), m, doc.budget(timeout_seconds)))
    };
    let (label, m, budget) = match run() {
        Ok(v) => v,
        Err(e) => return fail(err, &e),
    };
    match m.iso().verify_inverse(&budget) {
        Ok(v) => {
            let side = |exact: bool| {
                if exact {
                    "exact"
                } else {
                    "exact modulo the stated parameter relations"
                }
            };
            let outcome = (|| -> std::io::Result<()> {
                writeln!(out, "model: {label}")?;
                writeln!(out, "parameter side: {}", side(v.param_side_exact))?;
                writeln!(out, "model side: {}", side(v.model_side_exact))?;
                writeln!(out, "verdict: mutually inverse")
            })();
            match outcome {
                Ok(()) => EXIT_OK,
                Err(e) => fail(err, &CliError::Internal(e.to_string())),
            }
        }
        Err(BirationalError::Groebner(GroebnerError::Cancelled)) => fail(err, &CliError::Deadline),
        Err(e) => {
            let _ = writeln!(out, "model: {label}");
            let _ = writeln!(out, "verdict: not mutually inverse");
            fail(err, &CliError::Internal(e.to_string()))
        }
    }
}
