//! JSON model documents.
//!
//! A document names one of the built model families and carries the
//! family-specific construction data plus reproducibility options:
//!
//! ```text
//! {
//!   "family": "concentration" | "sem" | "staged_tree" | "lyapunov",
//!   "body":   { … mirrors the family's builder input … },
//!   "options": { "order": "grevlex", "seed": 0, "box": 10,
//!                "deadline_seconds": 600 }
//! }
//! ```
//!
//! Graph bodies list vertices 1-based and edges as index pairs; variable
//! names are derived deterministically from the indices (`s_i_j` for
//! covariances with i ≤ j, `k_i_j` for concentrations, `l_i_j` and
//! `w_i_j` for structural coefficients and noise variances, `th_<word>`
//! for tree edges, `p_<word>` for atoms, `m_i_j` for drift entries), so
//! output files are portable across machines.  Unknown fields anywhere in
//! a document are schema errors, never silently ignored.

use num::BigRational;
use serde::Deserialize;
use std::str::FromStr;
use std::time::Duration;

use ambikit::modelzoo::{
    build_concentration, build_lyapunov, build_sem, build_staged_tree, GraphSpec, LyapunovSpec,
    ModelSpec, StagedTreeSpec,
};

use crate::CliError;

/// The model family a document describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Concentration,
    Sem,
    StagedTree,
    Lyapunov,
}

impl Family {
    /// The lowercase name used in document and benchmark output.
    pub fn name(self) -> &'static str {
        match self {
            Family::Concentration => "concentration",
            Family::Sem => "sem",
            Family::StagedTree => "staged_tree",
            Family::Lyapunov => "lyapunov",
        }
    }
}

/// Reproducibility options shared by all families.  Command-line flags
/// override these per invocation.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DocOptions {
    /// Term order for basis computations; only `"grevlex"` is supported.
    pub order: String,
    /// Seed for all randomized paths.
    pub seed: u64,
    /// Half-width of the integer sampling box for randomized vanishing
    /// tests driven through the library.
    #[serde(rename = "box")]
    pub box_half_width: i64,
    /// Wall-clock budget in seconds for basis computations.
    pub deadline_seconds: Option<u64>,
}

impl Default for DocOptions {
    fn default() -> Self {
        DocOptions {
            order: "grevlex".to_string(),
            seed: 0,
            box_half_width: 10,
            deadline_seconds: None,
        }
    }
}

/// A parsed model document: family, raw body, and options.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub family: Family,
    pub body: serde_json::Value,
    #[serde(default)]
    pub options: DocOptions,
}

/// An exact rational in JSON: either an integer or a string like `"3/4"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RationalLike {
    Int(i64),
    Text(String),
}

impl RationalLike {
    fn to_rational(&self) -> Result<BigRational, CliError> {
        match self {
            RationalLike::Int(v) => Ok(BigRational::from_integer((*v).into())),
            RationalLike::Text(s) => BigRational::from_str(s.trim())
                .map_err(|e| CliError::Schema(format!("invalid rational \"{s}\": {e}"))),
        }
    }
}

/// Graph-family body: mirrors the graph builder input.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphBody {
    n: usize,
    #[serde(default)]
    undirected: Vec<(usize, usize)>,
    #[serde(default)]
    directed: Vec<(usize, usize)>,
    #[serde(default)]
    bidirected: Vec<(usize, usize)>,
    #[serde(default)]
    vertex_colors: Option<Vec<usize>>,
    #[serde(default)]
    edge_colors: Option<Vec<usize>>,
    #[serde(default)]
    interventions: Vec<Vec<usize>>,
    #[serde(default)]
    monotone: bool,
    #[serde(default)]
    nonpositive_partials: bool,
    #[serde(default)]
    label: Option<String>,
}

impl GraphBody {
    fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            n: self.n,
            undirected: self.undirected.clone(),
            directed: self.directed.clone(),
            bidirected: self.bidirected.clone(),
            vertex_colors: self.vertex_colors.clone(),
            edge_colors: self.edge_colors.clone(),
            interventions: self.interventions.clone(),
            monotone: self.monotone,
            nonpositive_partials: self.nonpositive_partials,
            label: self.label.clone(),
        }
    }
}

/// Staged-tree body: mirrors the tree builder input.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct StagedBody {
    outcomes: Vec<usize>,
    level_vars: Vec<usize>,
    #[serde(default)]
    stages: Vec<Vec<String>>,
    #[serde(default)]
    label: Option<String>,
}

/// Lyapunov body: mirrors the drift builder input.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct LyapunovBody {
    n: usize,
    support: Vec<(usize, usize)>,
    #[serde(default)]
    c_matrix: Option<Vec<Vec<RationalLike>>>,
    #[serde(default)]
    extra_eq: Vec<String>,
    #[serde(default)]
    label: Option<String>,
}

impl ModelDocument {
    /// Reads and parses a document from a file.
    pub fn load(path: &str) -> Result<ModelDocument, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        let doc: ModelDocument = serde_json::from_str(&text)
            .map_err(|e| CliError::Schema(format!("{path}: {e}")))?;
        doc.validate_options()?;
        Ok(doc)
    }

    fn validate_options(&self) -> Result<(), CliError> {
        if self.options.order != "grevlex" {
            return Err(CliError::Schema(format!(
                "unsupported term order \"{}\"; only \"grevlex\" is available",
                self.options.order
            )));
        }
        if self.options.box_half_width < 1 {
            return Err(CliError::Schema(
                "the sampling box half-width must be at least 1".to_string(),
            ));
        }
        Ok(())
    }

    /// The graph body of a Gaussian document, if this is one.
    pub fn graph_spec(&self) -> Result<Option<GraphSpec>, CliError> {
        match self.family {
            Family::Concentration | Family::Sem => {
                let body: GraphBody = serde_json::from_value(self.body.clone())
                    .map_err(|e| CliError::Schema(format!("body: {e}")))?;
                Ok(Some(body.to_spec()))
            }
            _ => Ok(None),
        }
    }

    /// Builds the model the document describes.
    pub fn build(&self) -> Result<ModelSpec, CliError> {
        match self.family {
            Family::Concentration => {
                let body: GraphBody = serde_json::from_value(self.body.clone())
                    .map_err(|e| CliError::Schema(format!("body: {e}")))?;
                build_concentration(&body.to_spec()).map_err(CliError::from)
            }
            Family::Sem => {
                let body: GraphBody = serde_json::from_value(self.body.clone())
                    .map_err(|e| CliError::Schema(format!("body: {e}")))?;
                build_sem(&body.to_spec()).map_err(CliError::from)
            }
            Family::StagedTree => {
                let body: StagedBody = serde_json::from_value(self.body.clone())
                    .map_err(|e| CliError::Schema(format!("body: {e}")))?;
                let spec = StagedTreeSpec {
                    outcomes: body.outcomes.clone(),
                    level_vars: body.level_vars.clone(),
                    stages: body.stages.clone(),
                    label: body.label.clone(),
                };
                build_staged_tree(&spec).map_err(CliError::from)
            }
            Family::Lyapunov => {
                let body: LyapunovBody = serde_json::from_value(self.body.clone())
                    .map_err(|e| CliError::Schema(format!("body: {e}")))?;
                let c_matrix = match &body.c_matrix {
                    None => None,
                    Some(rows) => {
                        let mut out = Vec::with_capacity(rows.len());
                        for row in rows {
                            let mut r = Vec::with_capacity(row.len());
                            for entry in row {
                                r.push(entry.to_rational()?);
                            }
                            out.push(r);
                        }
                        Some(out)
                    }
                };
                let spec = LyapunovSpec {
                    n: body.n,
                    support: body.support.clone(),
                    c_matrix,
                    extra_eq: body.extra_eq.clone(),
                    label: body.label.clone(),
                };
                build_lyapunov(&spec).map_err(CliError::from)
            }
        }
    }

    /// The computation budget from the document options and an optional
    /// command-line override (the override wins).
    pub fn budget(&self, timeout_override: Option<u64>) -> ambikit::groebner::Budget {
        let secs = timeout_override.or(self.options.deadline_seconds);
        match secs {
            Some(s) => ambikit::groebner::Budget::with_deadline(Duration::from_secs(s)),
            None => ambikit::groebner::Budget::unlimited(),
        }
    }

    /// The seed from the document options and an optional command-line
    /// override (the override wins).
    pub fn seed(&self, seed_override: Option<u64>) -> u64 {
        seed_override.unwrap_or(self.options.seed)
    }
}
