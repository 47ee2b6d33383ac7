//! Built-in model families: graphical Gaussian models, staged trees, and a
//! Lyapunov equilibrium family.
//!
//! Each builder assembles a [`ModelSpec`]: a birational parametrization
//! α : Θ → M with rational inverse β, localizing monoids on both sides, and
//! the semialgebraic description of the parameter space — equations
//! (`eq_gens`), weak inequalities (`ineq_gens`, meaning ≥ 0), and
//! inequations (`noneq_gens`, meaning ≠ 0) — over and above the strict
//! positivity of the parameter-side monoid generators.  Submodels are
//! expressed inside a fixed ambient parametrization by extra parameter
//! equations: a missing edge pins its coefficient to zero, a color ties two
//! coefficients together, an intervention ties the untouched mechanisms of
//! consecutive regimes.
//!
//! The families:
//!
//! * **Concentration models** ([`build_concentration`]): the inverse
//!   covariance K = Σ⁻¹ of an undirected graph, with κᵢⱼ = 0 on non-edges.
//!   α and β are the two adjugate-over-determinant maps, each localized at a
//!   single determinant.
//! * **Linear structural equation models** ([`build_sem`]): Σ =
//!   (I − Λ)⁻ᵀ Ω (I − Λ)⁻¹ over a DAG on topologically ordered vertices,
//!   with a recursive minor-ratio inverse; one fixed 4-vertex latent
//!   (bidirected-edge) instance; colored, interventional, and monotone
//!   variants.
//! * **Staged trees** ([`build_staged_tree`]): leaf probabilities as
//!   products of edge parameters down a complete level-uniform tree, with
//!   stages tying the outgoing distributions of same-level vertices.
//! * **Lyapunov models** ([`build_lyapunov`]): the equilibrium covariance
//!   MΣ + ΣMᵀ = −C of a 3×3 lower-triangular stable drift M, with both
//!   directions solved by Cramer's rule on the two linearizations.
//!
//! Every spec carries a deterministic sampling plan for producing exact
//! rational interior points of its parameter space; [`ModelSpec::sample_interior`]
//! executes the plan and verifies every constraint exactly before returning.

mod gaussian;
mod lyapunov;
mod staged;

use std::sync::Arc;

use num::{BigRational, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::birational::{BirationalError, BirationalIso};
use crate::fraction::FractionError;
use crate::polyring::{PolyError, Polynomial, VarTable};

pub use gaussian::{build_concentration, build_sem, GraphSpec};
pub use lyapunov::{build_lyapunov, LyapunovSpec};
pub use staged::{build_staged_tree, StagedTreeSpec};

/// Errors from assembling or sampling a built-in model.
#[derive(Debug, Error)]
pub enum ModelZooError {
    /// A vertex index escapes `1..=n`.
    #[error("vertex {vertex} is outside the range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    /// An edge is malformed for its role.
    #[error("{kind} edge ({i}, {j}) is invalid: {reason}")]
    BadEdge {
        kind: &'static str,
        i: usize,
        j: usize,
        reason: String,
    },
    /// The requested combination of features is not supported.
    #[error("unsupported model: {0}")]
    Unsupported(String),
    /// A staged-tree description is inconsistent.
    #[error("malformed staged tree: {0}")]
    BadTree(String),
    /// A Lyapunov description is inconsistent.
    #[error("malformed Lyapunov model: {0}")]
    BadLyapunov(String),
    /// No exact interior point was found within the attempt budget.
    #[error("interior sampling failed after {attempts} attempts")]
    SamplingExhausted { attempts: usize },
    /// An underlying birational operation failed.
    #[error(transparent)]
    Birational(#[from] BirationalError),
    /// An underlying fraction operation failed.
    #[error(transparent)]
    Fraction(#[from] FractionError),
    /// An underlying polynomial operation failed.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// One step of a model's interior sampling plan, drawn in parameter-variable
/// order.  All draws are integer quarters, so every sampled coordinate is an
/// exact rational with denominator dividing 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleKind {
    /// A value in `[min, min + 10]`, for diagonal entries that must dominate
    /// their row.
    LargePositive(i64),
    /// A value in `(0, 10]`.
    StrictPositive,
    /// A value in `[-10, 0)`.
    StrictNegative,
    /// A value in `[-b/4, b/4]` for bound `b` in quarters.
    SmallSigned(i64),
    /// A value in `[-b/4, 0]` for bound `b` in quarters.
    SmallNonpositive(i64),
    /// Exactly zero, for coordinates pinned by an equation.
    Zero,
    /// A copy of the earlier coordinate at the given index, for tied
    /// coordinates.
    SameAs(usize),
    /// Strictly larger than the earlier coordinate at the given index, for
    /// monotone constraints.
    GreaterThan(usize),
    /// Component `position` of a probability vector of length `size` drawn
    /// fresh at `position` 0: strictly positive entries summing to one.
    SimplexDraw { size: usize, position: usize },
}

/// A built model: the birational pair plus the semialgebraic constraints on
/// the parameter side and a plan for sampling interior points.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub(crate) iso: BirationalIso,
    pub(crate) eq_gens: Vec<Polynomial>,
    pub(crate) ineq_gens: Vec<Polynomial>,
    pub(crate) noneq_gens: Vec<Polynomial>,
    pub(crate) sample_plan: Vec<SampleKind>,
    pub(crate) label: String,
}

impl ModelSpec {
    /// The parametrization and its inverse.
    pub fn iso(&self) -> &BirationalIso {
        &self.iso
    }

    /// Parameter-side equations (each vanishes on the parameter space).
    pub fn eq_gens(&self) -> &[Polynomial] {
        &self.eq_gens
    }

    /// Parameter-side weak inequalities (each is ≥ 0 on the parameter
    /// space).
    pub fn ineq_gens(&self) -> &[Polynomial] {
        &self.ineq_gens
    }

    /// Parameter-side inequations (each is ≠ 0 on the parameter space).
    pub fn noneq_gens(&self) -> &[Polynomial] {
        &self.noneq_gens
    }

    /// The sampling plan, one entry per parameter variable.
    pub fn sample_plan(&self) -> &[SampleKind] {
        &self.sample_plan
    }

    /// A human-readable name for the model.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// The parameter-side variable table.
    pub fn param_table(&self) -> &Arc<VarTable> {
        self.iso.alpha().domain()
    }

    /// The model-side variable table.
    pub fn model_table(&self) -> &Arc<VarTable> {
        self.iso.alpha().codomain()
    }

    /// Draws an exact rational point in the interior of the parameter
    /// space: the sampling plan is executed coordinate by coordinate, and
    /// the candidate is accepted only if every equation vanishes, every
    /// inequality is nonnegative, every inequation and every parameter-side
    /// monoid generator is respected — all checked in exact arithmetic.
    /// Structured draws make rejection rare, but a bounded retry loop
    /// guards the corner cases.
    pub fn sample_interior<R: Rng>(&self, rng: &mut R) -> Result<Vec<BigRational>, ModelZooError> {
        const ATTEMPTS: usize = 100;
        'attempt: for _ in 0..ATTEMPTS {
            let mut point: Vec<BigRational> = Vec::with_capacity(self.sample_plan.len());
            let mut simplex: Vec<BigRational> = Vec::new();
            for kind in &self.sample_plan {
                let value = match kind {
                    SampleKind::LargePositive(min) => quarters(rng, 4 * min, 4 * min + 40),
                    SampleKind::StrictPositive => quarters(rng, 1, 40),
                    SampleKind::StrictNegative => quarters(rng, -40, -1),
                    SampleKind::SmallSigned(b) => quarters(rng, -b, *b),
                    SampleKind::SmallNonpositive(b) => quarters(rng, -b, 0),
                    SampleKind::Zero => BigRational::zero(),
                    SampleKind::SameAs(i) => point[*i].clone(),
                    SampleKind::GreaterThan(i) => &point[*i] + &quarters(rng, 1, 8),
                    SampleKind::SimplexDraw { size, position } => {
                        if *position == 0 {
                            let draws: Vec<i64> =
                                (0..*size).map(|_| rng.gen_range(1..=12)).collect();
                            let total: i64 = draws.iter().sum();
                            simplex = draws
                                .into_iter()
                                .map(|d| BigRational::new(d.into(), total.into()))
                                .collect();
                        }
                        simplex[*position].clone()
                    }
                };
                point.push(value);
            }
            for g in &self.eq_gens {
                if !g.evaluate(&point)?.is_zero() {
                    continue 'attempt;
                }
            }
            for g in &self.ineq_gens {
                if g.evaluate(&point)?.is_negative() {
                    continue 'attempt;
                }
            }
            for g in &self.noneq_gens {
                if g.evaluate(&point)?.is_zero() {
                    continue 'attempt;
                }
            }
            for g in self.iso.sbar_param().iter() {
                if !g.evaluate(&point)?.is_positive() {
                    continue 'attempt;
                }
            }
            return Ok(point);
        }
        Err(ModelZooError::SamplingExhausted { attempts: ATTEMPTS })
    }
}

/// A random integer number of quarters in `[lo, hi]`, as an exact rational.
fn quarters<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> BigRational {
    BigRational::new(rng.gen_range(lo..=hi).into(), 4.into())
}

/// Position of the symmetric-matrix entry `(i, j)`, `1 ≤ i ≤ j ≤ n`, in the
/// row-major upper-triangle enumeration used for covariance and
/// concentration variable tables.
pub(crate) fn sym_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i <= j && j <= n);
    (i - 1) * (2 * n - i + 2) / 2 + (j - i)
}

/// The upper-triangle variable names `<prefix><letter>_i_j` in row-major
/// order, matching [`sym_index`].
pub(crate) fn sym_names(n: usize, prefix: &str, letter: char) -> Vec<String> {
    let mut names = Vec::with_capacity(n * (n + 1) / 2);
    for i in 1..=n {
        for j in i..=n {
            names.push(format!("{prefix}{letter}_{i}_{j}"));
        }
    }
    names
}

/// Groups indexed items into classes by a color id, preserving first-seen
/// class order and in-class item order.
pub(crate) fn color_classes(colors: &[usize]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = Vec::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (item, &c) in colors.iter().enumerate() {
        match order.iter().position(|&x| x == c) {
            Some(k) => classes[k].push(item),
            None => {
                order.push(c);
                classes.push(vec![item]);
            }
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_index_is_row_major_upper() {
        let n = 4;
        let names = sym_names(n, "", 's');
        assert_eq!(names.len(), 10);
        assert_eq!(names[0], "s_1_1");
        assert_eq!(names[sym_index(n, 1, 4)], "s_1_4");
        assert_eq!(names[sym_index(n, 2, 2)], "s_2_2");
        assert_eq!(names[sym_index(n, 3, 4)], "s_3_4");
        assert_eq!(names[sym_index(n, 4, 4)], "s_4_4");
        // Every position is hit exactly once.
        let mut seen = vec![false; names.len()];
        for i in 1..=n {
            for j in i..=n {
                seen[sym_index(n, i, j)] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn color_classes_preserve_order() {
        let classes = color_classes(&[7, 2, 7, 7, 2]);
        assert_eq!(classes, vec![vec![0, 2, 3], vec![1, 4]]);
    }
}
