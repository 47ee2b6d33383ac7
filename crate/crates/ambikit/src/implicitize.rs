//! From parametric to implicit descriptions of rational models.
//!
//! A model built by [`crate::modelzoo`] is the image α(M̄) of a
//! semialgebraic parameter space
//!
//! ```text
//!     M̄ = { θ : f̄ᵢ(θ) = 0,  p̄ⱼ(θ) ≥ 0,  ūₖ(θ) ≠ 0,  s̄ₗ(θ) > 0 }
//! ```
//!
//! under a birational map whose localizing denominators are positive on
//! both spaces.  Because the inverse β is rational, every parameter-side
//! constraint can be pushed through β and its sign-preserved numerator
//! read as a constraint on the model coordinates; together with strict
//! positivity of the model-side denominator generators this yields a
//! *finite* implicit description of the image — the Markov property of
//! the model ([`markov_property`]).  The description is exact: a point
//! satisfies it if and only if it lies in the image.
//!
//! On the algebraic side, the Zariski closure of the image is cut out by
//! the saturation ⟨num β*(f̄ᵢ)⟩ : S of the transferred equations at the
//! model-side monoid ([`vanishing_ideal`]), computed here by iterated
//! single-polynomial saturations.  That route is dramatically cheaper
//! than eliminating all parameters from the graph ideal, and on every
//! built family it provably agrees with elimination.
//!
//! Two models over the same coordinate space are equal exactly when each
//! one's description holds on the other ([`model_equiv`]): equation
//! numerators are tested by normal-form reduction against the other
//! side's parameter ideal, while sign and nonvanishing constraints are
//! tested on exact interior samples.  Failures are collected as
//! re-checkable certificates — a nonzero normal form or an exact
//! violating point.  A randomized Schwartz–Zippel test ([`sz_vanishes`])
//! complements the exact route: it evaluates a pulled-back polynomial at
//! structured integer points of the parameter region and either exhibits
//! a nonvanishing witness or reports a per-trial false-negative bound.

use num::{BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::birational::{BirationalError, Direction};
use crate::fraction::FractionError;
use crate::groebner::{
    buchberger, saturate_monoid, Budget, GroebnerError, IdealGens, TermOrder,
};
use crate::modelzoo::{ModelSpec, ModelZooError, SampleKind};
use crate::polyring::{same_table, PolyError, Polynomial};

/// Errors from the implicitization operations.
#[derive(Debug, Error)]
pub enum ImplicitizeError {
    /// The consistency probe could not find any interior parameter point,
    /// so the parameter space — and hence the model — may be empty.
    #[error(
        "no interior parameter point found in {attempts} attempts; \
         the parameter space may be empty"
    )]
    EmptyParameterSpaceSuspected { attempts: usize },
    /// The region-constrained integer sampler ran out of attempts.
    #[error("no valid point of the parameter region found in {attempts} attempts")]
    RegionSamplingExhausted { attempts: usize },
    /// The two models do not share a model coordinate space.
    #[error("the models live on different model coordinate spaces")]
    DifferentModelSpaces,
    #[error(transparent)]
    Birational(#[from] BirationalError),
    #[error(transparent)]
    Fraction(#[from] FractionError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Zoo(#[from] ModelZooError),
}

/// Which of the four constraint families a constraint belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    /// `f(x) = 0`.
    Equation,
    /// `p(x) ≥ 0`.
    Inequality,
    /// `u(x) ≠ 0`.
    Inequation,
    /// `s(x) > 0`.
    Positivity,
}

impl std::fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ConstraintKind::Equation => "equation",
            ConstraintKind::Inequality => "inequality",
            ConstraintKind::Inequation => "inequation",
            ConstraintKind::Positivity => "positivity",
        };
        f.write_str(s)
    }
}

/// The finite implicit description of a model: polynomials over the model
/// coordinates, grouped by constraint kind, with one provenance string per
/// constraint (in equations, inequalities, inequations, positivities
/// order) recording the parameter-side generator it was transferred from.
///
/// Equations transferred from generators whose pullback is identically
/// zero are kept as zero polynomials: the constraint count always equals
/// the number of input generators plus the number of model-side
/// denominator generators.
#[derive(Debug, Clone)]
pub struct MarkovProperty {
    pub equations: Vec<Polynomial>,
    pub inequalities: Vec<Polynomial>,
    pub inequations: Vec<Polynomial>,
    pub positivities: Vec<Polynomial>,
    pub provenance: Vec<String>,
}

impl MarkovProperty {
    /// Total number of constraints across the four groups.
    pub fn len(&self) -> usize {
        self.equations.len()
            + self.inequalities.len()
            + self.inequations.len()
            + self.positivities.len()
    }

    /// Whether the description is empty.
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Iterates over all constraints in provenance order as
    /// `(kind, index within kind, polynomial, provenance)`.
    pub fn iter(&self) -> impl Iterator<Item = (ConstraintKind, usize, &Polynomial, &str)> {
        let groups = [
            (ConstraintKind::Equation, &self.equations),
            (ConstraintKind::Inequality, &self.inequalities),
            (ConstraintKind::Inequation, &self.inequations),
            (ConstraintKind::Positivity, &self.positivities),
        ];
        let mut items = Vec::with_capacity(self.len());
        for (kind, list) in groups {
            for (i, p) in list.iter().enumerate() {
                items.push((kind, i, p));
            }
        }
        items
            .into_iter()
            .zip(self.provenance.iter())
            .map(|((kind, i, p), prov)| (kind, i, p, prov.as_str()))
    }
}

/// Attempts the numeric consistency probe: one exact interior point of the
/// parameter space must exist, otherwise the image description would be
/// vacuous and every transferred constraint meaningless.
fn consistency_sample(m: &ModelSpec) -> Result<Vec<BigRational>, ImplicitizeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    m.sample_interior(&mut rng).map_err(|e| match e {
        ModelZooError::SamplingExhausted { attempts } => {
            ImplicitizeError::EmptyParameterSpaceSuspected { attempts }
        }
        other => ImplicitizeError::Zoo(other),
    })
}

/// Transfers the parameter-side constraint lists through the inverse map
/// and returns the model's finite implicit description.
///
/// Equations, inequalities, and inequations are the sign-preserved
/// numerators of the pullbacks of the respective generator lists; the
/// strict positivities are the model-side denominator generators
/// themselves.  Requires the isomorphism to be full (every built model
/// is) and a successful interior consistency sample.
pub fn markov_property(m: &ModelSpec) -> Result<MarkovProperty, ImplicitizeError> {
    let iso = m.iso();
    assert!(
        iso.is_full(),
        "markov_property requires a full isomorphism; model builders always extend"
    );
    consistency_sample(m)?;

    let mut provenance = Vec::new();
    let mut transfer_all = |gens: &[Polynomial],
                            relation: &str|
     -> Result<Vec<Polynomial>, ImplicitizeError> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            let t = iso.transfer(g, Direction::ParamToModel)?;
            provenance.push(format!("transfer of the parameter {relation} {g}"));
            out.push(t.numerator);
        }
        Ok(out)
    };
    let equations = transfer_all(m.eq_gens(), "equation")?;
    let inequalities = transfer_all(m.ineq_gens(), "inequality")?;
    let inequations = transfer_all(m.noneq_gens(), "inequation")?;
    let positivities: Vec<Polynomial> = iso.s_model().gens().to_vec();
    for g in &positivities {
        provenance.push(format!("model-side denominator generator {g}"));
    }
    Ok(MarkovProperty {
        equations,
        inequalities,
        inequations,
        positivities,
        provenance,
    })
}

/// The vanishing ideal of the model: the transferred equation numerators
/// saturated at the model-side denominator monoid, with an unlimited
/// budget.  See [`vanishing_ideal_with`].
pub fn vanishing_ideal(m: &ModelSpec) -> Result<IdealGens, ImplicitizeError> {
    vanishing_ideal_with(m, &Budget::unlimited())
}

/// The vanishing ideal of the model under an explicit computation budget.
///
/// The ideal of the Zariski closure of the image is ⟨num β*(f̄ᵢ)⟩ : S.
/// Correctness relies on the parameter equations generating a prime ideal
/// disjoint from the parameter-side monoid; all built families have
/// linear parameter equations, for which this holds.  Zero numerators are
/// dropped from the generating set (they contribute nothing to an ideal).
pub fn vanishing_ideal_with(m: &ModelSpec, budget: &Budget) -> Result<IdealGens, ImplicitizeError> {
    let iso = m.iso();
    let mut nums = Vec::new();
    for g in m.eq_gens() {
        let t = iso.transfer(g, Direction::ParamToModel)?;
        if !t.numerator.is_zero() {
            nums.push(t.numerator);
        }
    }
    let gens = IdealGens::new(m.model_table(), nums)?;
    Ok(saturate_monoid(&gens, iso.s_model(), budget)?)
}

/// The exact verdict of one constraint at one point.
#[derive(Debug, Clone)]
pub struct ConstraintVerdict {
    pub kind: ConstraintKind,
    /// Index within the constraint's own group.
    pub index: usize,
    /// Whether the constraint holds at the point.
    pub holds: bool,
    /// The exact evaluation of the constraint polynomial.
    pub residual: BigRational,
    /// The provenance string of the constraint.
    pub provenance: String,
}

/// Evaluates every constraint of a Markov property at an exact rational
/// point, returning one verdict per constraint with its exact residual.
pub fn check_point(
    mp: &MarkovProperty,
    x: &[BigRational],
) -> Result<Vec<ConstraintVerdict>, ImplicitizeError> {
    let mut out = Vec::with_capacity(mp.len());
    for (kind, index, p, prov) in mp.iter() {
        let value = p.evaluate(x)?;
        let holds = match kind {
            ConstraintKind::Equation => value.is_zero(),
            ConstraintKind::Inequality => !value.is_negative(),
            ConstraintKind::Inequation => !value.is_zero(),
            ConstraintKind::Positivity => value.is_positive(),
        };
        out.push(ConstraintVerdict {
            kind,
            index,
            holds,
            residual: value,
            provenance: prov.to_string(),
        });
    }
    Ok(out)
}

/// How much of the model description equivalence testing compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivMode {
    /// Equations by normal form, sign and nonvanishing constraints on
    /// exact interior samples.
    Exact,
    /// Equations only: compares the Zariski closures.
    Zariski,
}

/// Outcome of an equivalence test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivResult {
    Equivalent,
    Inequivalent,
    Undecided,
}

/// One re-checkable piece of inequivalence evidence: a constraint of one
/// model that fails on the other, together with a nonzero normal-form
/// residual (equations) or an exact violating parameter point (sampled
/// constraint kinds).
#[derive(Debug, Clone)]
pub struct CertificateItem {
    /// 1 if the failing constraint came from the first model, 2 otherwise.
    pub from_model: u8,
    pub kind: ConstraintKind,
    /// The constraint polynomial over the shared model coordinates.
    pub constraint: Polynomial,
    /// For equations: the nonzero normal form of the pulled-back numerator
    /// against the other model's parameter ideal.
    pub residual: Option<Polynomial>,
    /// For sampled kinds: an interior parameter point of the other model
    /// at which the constraint fails.
    pub witness: Option<Vec<BigRational>>,
}

/// The verdict of [`model_equiv`], with all collected evidence.
#[derive(Debug, Clone)]
pub struct EquivalenceVerdict {
    pub result: EquivResult,
    /// Nonempty exactly when the result is inequivalent.
    pub certificate: Vec<CertificateItem>,
    /// Reasons for a degraded (undecided) verdict.
    pub notes: Vec<String>,
}

/// Decides equality of two models over the same coordinate space, with
/// default trials, seed 0, and no budget limit.  See [`model_equiv_with`].
pub fn model_equiv(
    m1: &ModelSpec,
    m2: &ModelSpec,
    mode: EquivMode,
) -> Result<EquivalenceVerdict, ImplicitizeError> {
    model_equiv_with(m1, m2, mode, 32, 0, &Budget::unlimited())
}

/// Decides equality of two models over the same coordinate space.
///
/// Each model's description is tested on the other: a transferred
/// equation of one model holds on the other exactly when the numerator of
/// its pullback through the other parametrization reduces to zero against
/// the other side's parameter equations (linear for every built family,
/// so the reduction is just linear algebra); sign and nonvanishing
/// constraints are evaluated on `trials` exact interior samples of the
/// other parameter space.  Every failure is collected as a re-checkable
/// certificate.  Sampling problems degrade the verdict to undecided
/// rather than asserting equivalence falsely.
pub fn model_equiv_with(
    m1: &ModelSpec,
    m2: &ModelSpec,
    mode: EquivMode,
    trials: usize,
    seed: u64,
    budget: &Budget,
) -> Result<EquivalenceVerdict, ImplicitizeError> {
    if !same_table(m1.model_table(), m2.model_table()) {
        return Err(ImplicitizeError::DifferentModelSpaces);
    }
    let mut certificate = Vec::new();
    let mut notes = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    check_description_on(m1, m2, 1, mode, trials, &mut rng, budget, &mut certificate, &mut notes)?;
    check_description_on(m2, m1, 2, mode, trials, &mut rng, budget, &mut certificate, &mut notes)?;
    let result = if !certificate.is_empty() {
        EquivResult::Inequivalent
    } else if !notes.is_empty() {
        EquivResult::Undecided
    } else {
        EquivResult::Equivalent
    };
    Ok(EquivalenceVerdict {
        result,
        certificate,
        notes,
    })
}

/// Tests every constraint of `ma`'s description on model `mb`, appending
/// failures to the certificate and sampling problems to the notes.
#[allow(clippy::too_many_arguments)]
fn check_description_on(
    ma: &ModelSpec,
    mb: &ModelSpec,
    from_model: u8,
    mode: EquivMode,
    trials: usize,
    rng: &mut ChaCha8Rng,
    budget: &Budget,
    certificate: &mut Vec<CertificateItem>,
    notes: &mut Vec<String>,
) -> Result<(), ImplicitizeError> {
    let mp = markov_property(ma)?;
    let alpha_b = mb.iso().alpha();
    let sbar_b = mb.iso().sbar_param();

    // Parameter ideal of mb, for equation membership by normal form.
    let ideal_b = IdealGens::new(mb.param_table(), mb.eq_gens().to_vec())?;
    let gb_b = buchberger(&ideal_b, TermOrder::GrevLex, budget)?;

    for f in &mp.equations {
        if f.is_zero() {
            continue;
        }
        let pulled = alpha_b.pullback_via(f, sbar_b)?;
        let nf = gb_b.normal_form(pulled.numerator())?;
        if !nf.is_zero() {
            certificate.push(CertificateItem {
                from_model,
                kind: ConstraintKind::Equation,
                constraint: f.clone(),
                residual: Some(nf.primitive_signed()),
                witness: None,
            });
        }
    }

    if mode == EquivMode::Zariski {
        return Ok(());
    }

    // Sampled checks for the sign and nonvanishing constraints.
    let sampled: Vec<(ConstraintKind, &Polynomial)> = mp
        .inequalities
        .iter()
        .map(|p| (ConstraintKind::Inequality, p))
        .chain(
            mp.inequations
                .iter()
                .map(|p| (ConstraintKind::Inequation, p)),
        )
        .chain(
            mp.positivities
                .iter()
                .map(|p| (ConstraintKind::Positivity, p)),
        )
        .collect();
    if sampled.is_empty() {
        return Ok(());
    }
    let mut points = Vec::with_capacity(trials);
    for _ in 0..trials {
        match mb.sample_interior(rng) {
            Ok(p) => points.push(p),
            Err(ModelZooError::SamplingExhausted { attempts }) => {
                notes.push(format!(
                    "could not sample the other parameter space ({attempts} attempts); \
                     sign constraints were not checked"
                ));
                return Ok(());
            }
            Err(other) => return Err(ImplicitizeError::Zoo(other)),
        }
    }
    for (kind, f) in sampled {
        if f.is_zero() {
            // A zero inequality holds trivially; a zero inequation or
            // positivity fails everywhere.
            if kind != ConstraintKind::Inequality {
                certificate.push(CertificateItem {
                    from_model,
                    kind,
                    constraint: f.clone(),
                    residual: None,
                    witness: Some(points[0].clone()),
                });
            }
            continue;
        }
        let pulled = alpha_b.pullback_via(f, sbar_b)?;
        for point in &points {
            let num = pulled.numerator().evaluate(point)?;
            let den = pulled.denominator().evaluate(point)?;
            let value = num / den;
            let violated = match kind {
                ConstraintKind::Inequality => value.is_negative(),
                ConstraintKind::Inequation => value.is_zero(),
                ConstraintKind::Positivity => !value.is_positive(),
                ConstraintKind::Equation => unreachable!("equations are not sampled"),
            };
            if violated {
                certificate.push(CertificateItem {
                    from_model,
                    kind,
                    constraint: f.clone(),
                    residual: None,
                    witness: Some(point.clone()),
                });
                break;
            }
        }
    }
    Ok(())
}

/// Verdict of the randomized vanishing test.
#[derive(Debug, Clone)]
pub enum SzVerdict {
    /// Every trial evaluated to zero.  The probability of this happening
    /// for a polynomial that does not vanish on the region is at most the
    /// per-trial bound raised to the number of trials.
    ProbablyZero {
        per_trial_bound: BigRational,
        trials: usize,
    },
    /// An exact parameter point where the pulled-back polynomial is
    /// nonzero — a re-checkable witness of nonvanishing on the model.
    Nonzero { witness: Vec<BigRational> },
}

/// Half-width of the default integer sampling box: every free coordinate
/// ranges over 2·10 + 1 = 21 integers.
const SZ_HALF_WIDTH: i64 = 10;

/// Randomized test whether a model-coordinate polynomial vanishes on the
/// whole model, using the default integer box.  See [`sz_vanishes_in_box`].
pub fn sz_vanishes(
    f: &Polynomial,
    m: &ModelSpec,
    trials: usize,
    seed: u64,
) -> Result<SzVerdict, ImplicitizeError> {
    sz_vanishes_in_box(f, m, trials, seed, SZ_HALF_WIDTH)
}

/// Randomized vanishing test with an explicit box half-width.
///
/// The polynomial is pulled back through the parametrization and its
/// numerator evaluated at structured points of the parameter region:
/// every free coordinate is an integer from a set of 2·half_width + 1
/// values shaped like the model's sampling plan (so equations, ties, and
/// simplex normalizations hold by construction), and candidates are
/// re-checked against all region constraints in exact arithmetic.  Any
/// nonzero evaluation is returned as a witness.  If all trials vanish,
/// the Schwartz–Zippel bound deg/(2·half_width + 1) per trial limits the
/// probability of a false zero, because the region draw substitutes each
/// coordinate by an expression of degree at most one in the free integer
/// draws.
pub fn sz_vanishes_in_box(
    f: &Polynomial,
    m: &ModelSpec,
    trials: usize,
    seed: u64,
    half_width: i64,
) -> Result<SzVerdict, ImplicitizeError> {
    assert!(trials >= 1, "at least one trial is required");
    assert!(half_width >= 1, "the sampling box must contain several integers");
    let iso = m.iso();
    let pulled = iso.alpha().pullback_via(f, iso.sbar_param())?;
    if pulled.is_zero() {
        // Identically zero before any sampling: the bound is exact.
        return Ok(SzVerdict::ProbablyZero {
            per_trial_bound: BigRational::zero(),
            trials,
        });
    }
    let num = pulled.numerator();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let point = sample_region_integers(m, &mut rng, half_width)?;
        if !num.evaluate(&point)?.is_zero() {
            return Ok(SzVerdict::Nonzero { witness: point });
        }
    }
    let box_size = BigRational::from_integer((2 * half_width + 1).into());
    let degree = BigRational::from_integer(u64::from(num.degree().unwrap_or(0)).into());
    let per_trial_bound = (degree / box_size).min(BigRational::one());
    Ok(SzVerdict::ProbablyZero {
        per_trial_bound,
        trials,
    })
}

/// Draws one exact point of the parameter region whose free coordinates
/// are integers from the given box, following the model's sampling plan
/// for signs, ties, forced zeros, and simplex normalization, then
/// verifying every region constraint exactly.
fn sample_region_integers<R: Rng>(
    m: &ModelSpec,
    rng: &mut R,
    half_width: i64,
) -> Result<Vec<BigRational>, ImplicitizeError> {
    const ATTEMPTS: usize = 100;
    let h = half_width;
    let width = 2 * h; // draws of width + 1 integers
    let int = |v: i64| BigRational::from_integer(v.into());
    'attempt: for _ in 0..ATTEMPTS {
        let mut point: Vec<BigRational> = Vec::with_capacity(m.sample_plan().len());
        let mut simplex: Vec<BigRational> = Vec::new();
        for kind in m.sample_plan() {
            let value = match kind {
                SampleKind::LargePositive(min) => int(rng.gen_range(*min..=*min + width)),
                SampleKind::StrictPositive => int(rng.gen_range(1..=width + 1)),
                SampleKind::StrictNegative => int(rng.gen_range(-width - 1..=-1)),
                SampleKind::SmallSigned(_) => int(rng.gen_range(-h..=h)),
                SampleKind::SmallNonpositive(_) => int(rng.gen_range(-width..=0)),
                SampleKind::Zero => BigRational::zero(),
                SampleKind::SameAs(i) => point[*i].clone(),
                SampleKind::GreaterThan(i) => &point[*i] + &int(rng.gen_range(1..=width + 1)),
                SampleKind::SimplexDraw { size, position } => {
                    if *position == 0 {
                        let draws: Vec<i64> =
                            (0..*size).map(|_| rng.gen_range(1..=width + 1)).collect();
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
        for g in m.eq_gens() {
            if !g.evaluate(&point)?.is_zero() {
                continue 'attempt;
            }
        }
        for g in m.ineq_gens() {
            if g.evaluate(&point)?.is_negative() {
                continue 'attempt;
            }
        }
        for g in m.noneq_gens() {
            if g.evaluate(&point)?.is_zero() {
                continue 'attempt;
            }
        }
        for g in m.iso().sbar_param().iter() {
            if !g.evaluate(&point)?.is_positive() {
                continue 'attempt;
            }
        }
        return Ok(point);
    }
    Err(ImplicitizeError::RegionSamplingExhausted { attempts: ATTEMPTS })
}
