//! Graphical continuous Lyapunov models.
//!
//! A stationary Ornstein–Uhlenbeck process dX = M·X dt + D·dW with stable
//! drift M has equilibrium covariance Σ determined by the continuous
//! Lyapunov equation
//!
//! ```text
//!     M·Σ + Σ·Mᵀ + C = 0,        C = D·Dᵀ ≻ 0.
//! ```
//!
//! Fixing C and restricting the support of M to a directed graph with
//! self-loops yields a statistical model for Σ parametrized by the free
//! entries of M.  Vectorizing turns the equation into the linear system
//! (I⊗M + M⊗I)·vec(Σ) = −vec(C), so Σ is a rational function of M by
//! Cramer's rule; reading the same bilinear equation as linear in the
//! entries of M instead inverts the parametrization, again by Cramer's
//! rule, whenever the number of free entries matches the dimension of the
//! space of symmetric matrices.
//!
//! This module builds the smallest interesting such instance: n = 3 with M
//! lower triangular (self-loops 1→1, 2→2, 3→3 and edges 1→2, 1→3, 2→3, the
//! entry m_j_i holding the weight of i→j).  For triangular M the Kronecker
//! sum I⊗M + M⊗I is triangular after a permutation, and its determinant is
//! the product of the pairwise eigenvalue sums:
//!
//! ```text
//!     det(I⊗M + M⊗I) = 8·m₁₁m₂₂m₃₃·(m₁₁+m₂₂)²(m₁₁+m₃₃)²(m₂₂+m₃₃)².
//! ```
//!
//! Stability means every mᵢᵢ < 0, so the denominator monoid on the
//! parameter side is generated by the negated diagonal sums −mᵢᵢ and
//! −(mᵢᵢ+mⱼⱼ); on the model side the three leading principal minors of Σ
//! suffice, with det A(Σ) = 8·|Σ₁|·|Σ₁₂|·|Σ₁₂₃| for the 6×6 system A(Σ)
//! that recovers M.  Both determinants factor inside their monoids with a
//! constant cofactor ±8, which the builder certifies by trial division.
//!
//! Symbolic composition of the two maps is far too large to normalize
//! directly, so the builder instead verifies the defining identity on each
//! side: with N the symmetric matrix of unreduced Cramer numerators and d
//! the corresponding system determinant, it checks M·N + N·Mᵀ + d·C = 0 as
//! an exact polynomial identity (and the mirror identity on the model
//! side).  Because a nonsingular linear system has a unique solution, the
//! two identities force the maps to be mutually inverse wherever the
//! monoids are positive.
//!
//! Colored variants — forcing an off-diagonal entry to zero or tying two
//! entries — enter as extra linear equations on the parameters.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::birational::{BirationalIso, RationalMap};
use crate::fraction::{MonoidGens, RationalFunction};
use crate::polyring::{Monomial, PolyMatrix, Polynomial, VarTable};

use super::{sym_index, sym_names, ModelSpec, ModelZooError, SampleKind};

/// A continuous Lyapunov model: fixed diffusion C and a sparsity pattern
/// for the drift matrix M.
///
/// Only the 3-dimensional lower-triangular pattern is currently buildable;
/// other supports are rejected rather than half-handled.
#[derive(Debug, Clone)]
pub struct LyapunovSpec {
    /// Dimension of the process (must be 3).
    pub n: usize,
    /// Entries (i, j) of M allowed to be nonzero, 1-based; (i, j) with
    /// i ≥ j is the weight of the edge j → i.  Must be exactly the lower
    /// triangle including the diagonal.
    pub support: Vec<(usize, usize)>,
    /// Diffusion matrix C = D·Dᵀ as rational entries; `None` means the
    /// identity.  Must be symmetric positive definite.
    pub c_matrix: Option<Vec<Vec<BigRational>>>,
    /// Extra linear relations among the drift entries, each either a
    /// single off-diagonal variable (forced to zero) or a difference of
    /// two support variables (tied together), written in the polynomial
    /// syntax of the parameter ring, e.g. `"m_3_1"` or `"m_3_1 - m_3_2"`.
    pub extra_eq: Vec<String>,
    /// Display label.
    pub label: Option<String>,
}

impl LyapunovSpec {
    /// The full lower-triangular instance with C = I.
    pub fn triangular() -> Self {
        LyapunovSpec {
            n: 3,
            support: LOWER_SUPPORT.to_vec(),
            c_matrix: None,
            extra_eq: Vec::new(),
            label: None,
        }
    }
}

/// Drift entries in the column-major order that also names the parameters.
const LOWER_SUPPORT: [(usize, usize); 6] = [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (3, 3)];

/// Upper-triangle positions of Σ in the order of [`sym_names`].
const SYM_ENTRIES: [(usize, usize); 6] = [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)];

fn bad(msg: impl Into<String>) -> ModelZooError {
    ModelZooError::BadLyapunov(msg.into())
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Column-major position of entry (i, j) in vec(Σ), 1-based in, 0-based out.
fn vec_pos(i: usize, j: usize) -> usize {
    (j - 1) * 3 + (i - 1)
}

/// Position of the support entry (i, j) among the parameter variables.
fn support_slot(i: usize, j: usize) -> usize {
    LOWER_SUPPORT
        .iter()
        .position(|&e| e == (i, j))
        .expect("entry must lie in the lower triangle")
}

/// The symbolic drift matrix over the parameter ring: lower-triangular
/// entries are variables, the rest zero.
fn drift_matrix(param: &std::sync::Arc<VarTable>) -> PolyMatrix {
    PolyMatrix::from_fn(param, 3, 3, |i, j| {
        if i >= j {
            Polynomial::var(param, support_slot(i + 1, j + 1))
        } else {
            Polynomial::zero(param)
        }
    })
}

/// The Kronecker sum I⊗M + M⊗I acting on vec(Σ) in column-major order:
/// row (i, j) of M·Σ + Σ·Mᵀ picks up m_i_k from column (k, j) and m_j_l
/// from column (i, l).
fn kronecker_sum(mmat: &PolyMatrix) -> PolyMatrix {
    let vars = mmat.get(0, 0).vars().clone();
    PolyMatrix::from_fn(&vars, 9, 9, |r, c| {
        let (i, j) = (r % 3, r / 3);
        let (k, l) = (c % 3, c / 3);
        let mut e = Polynomial::zero(&vars);
        if l == j {
            e = &e + mmat.get(i, k);
        }
        if i == k {
            e = &e + mmat.get(j, l);
        }
        e
    })
}

/// The 6×6 system recovering the drift entries from a known Σ: row (k, l)
/// is the (k, l) entry of M·Σ + Σ·Mᵀ read as linear in the m_j_i, so the
/// coefficient of m_j_i is δ_{kj}·σ_il + δ_{lj}·σ_ki.
fn drift_system(model: &std::sync::Arc<VarTable>) -> PolyMatrix {
    let svar = |a: usize, b: usize| {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Polynomial::var(model, sym_index(3, a, b))
    };
    PolyMatrix::from_fn(model, 6, 6, |r, c| {
        let (k, l) = SYM_ENTRIES[r];
        let (j, i) = LOWER_SUPPORT[c];
        let mut e = Polynomial::zero(model);
        if k == j {
            e = &e + &svar(i, l);
        }
        if l == j {
            e = &e + &svar(k, i);
        }
        e
    })
}

/// Determinant of the upper-left k×k block of a rational 3×3 matrix.
fn leading_minor(c: &[Vec<BigRational>], k: usize) -> BigRational {
    match k {
        1 => c[0][0].clone(),
        2 => &(&c[0][0] * &c[1][1]) - &(&c[0][1] * &c[1][0]),
        3 => {
            let m = |i: usize, j: usize| &c[i][j];
            let a = &(&(m(1, 1) * m(2, 2)) - &(m(1, 2) * m(2, 1))) * m(0, 0);
            let b = &(&(m(1, 0) * m(2, 2)) - &(m(1, 2) * m(2, 0))) * m(0, 1);
            let d = &(&(m(1, 0) * m(2, 1)) - &(m(1, 1) * m(2, 0))) * m(0, 2);
            &(&a - &b) + &d
        }
        _ => unreachable!("only 3×3 diffusion matrices occur"),
    }
}

fn validated_diffusion(spec: &LyapunovSpec) -> Result<Vec<Vec<BigRational>>, ModelZooError> {
    let c = match &spec.c_matrix {
        None => {
            let mut id = vec![vec![BigRational::zero(); 3]; 3];
            for (i, row) in id.iter_mut().enumerate() {
                row[i] = BigRational::one();
            }
            id
        }
        Some(c) => c.clone(),
    };
    if c.len() != 3 || c.iter().any(|row| row.len() != 3) {
        return Err(bad("the diffusion matrix must be 3×3"));
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            if c[i][j] != c[j][i] {
                return Err(bad("the diffusion matrix must be symmetric"));
            }
        }
    }
    for k in 1..=3 {
        if !leading_minor(&c, k).is_positive() {
            return Err(bad(
                "the diffusion matrix must be positive definite (a leading principal minor is not positive)",
            ));
        }
    }
    Ok(c)
}

/// How an extra linear relation constrains the sampler.
enum LinearShape {
    /// The variable at this index is forced to zero.
    Zero(usize),
    /// The later variable always copies the earlier one.
    Tie(usize, usize),
}

fn single_variable(m: &Monomial) -> Option<usize> {
    if m.degree() != 1 {
        return None;
    }
    m.exps().iter().position(|&e| e == 1)
}

fn classify_relation(p: &Polynomial) -> Option<LinearShape> {
    match p.terms() {
        [(m, _)] => single_variable(m).map(LinearShape::Zero),
        [(m1, c1), (m2, c2)] if (c1 + c2).is_zero() => {
            let a = single_variable(m1)?;
            let b = single_variable(m2)?;
            if a == b {
                return None;
            }
            Some(if a < b {
                LinearShape::Tie(a, b)
            } else {
                LinearShape::Tie(b, a)
            })
        }
        _ => None,
    }
}

/// Build the 3-dimensional lower-triangular Lyapunov model.
///
/// The constructed parametrization sends the six drift entries to the six
/// entries of the equilibrium covariance; its inverse recovers the drift
/// from the covariance.  Both directions are certified in the builder by
/// the exact stationarity identity M·N + N·Mᵀ + d·C = 0 on the unreduced
/// Cramer numerators, and the two system determinants are certified to
/// factor over their monoids with constant cofactor ±8.  Extra relations
/// from `extra_eq` become equation generators and matching sampler rules.
pub fn build_lyapunov(spec: &LyapunovSpec) -> Result<ModelSpec, ModelZooError> {
    if spec.n != 3 {
        return Err(bad(format!(
            "only the 3-dimensional triangular instance is built in; got n = {}",
            spec.n
        )));
    }
    for &(i, j) in &spec.support {
        if i < 1 || i > 3 || j < 1 || j > 3 {
            return Err(ModelZooError::VertexOutOfRange {
                vertex: i.max(j),
                n: 3,
            });
        }
    }
    let given: BTreeSet<(usize, usize)> = spec.support.iter().copied().collect();
    let expected: BTreeSet<(usize, usize)> = LOWER_SUPPORT.iter().copied().collect();
    if given != expected {
        return Err(bad(
            "the drift support must be the full lower triangle with self-loops: \
             (1,1), (2,1), (3,1), (2,2), (3,2), (3,3)",
        ));
    }
    let diffusion = validated_diffusion(spec)?;

    let param_names: Vec<String> = LOWER_SUPPORT
        .iter()
        .map(|&(i, j)| format!("m_{i}_{j}"))
        .collect();
    let param = VarTable::new(param_names)?;
    let model = VarTable::new(sym_names(3, "", 's'))?;

    let mmat = drift_matrix(&param);
    let b_sys = kronecker_sum(&mmat);
    let det_b = b_sys.determinant()?;

    // Denominator monoid on the parameter side: negated eigenvalue sums,
    // positive exactly on the stable (Hurwitz) drifts.
    let mvar = |i: usize, j: usize| Polynomial::var(&param, support_slot(i, j));
    let sbar_gens = vec![
        mvar(1, 1).negate(),
        mvar(2, 2).negate(),
        mvar(3, 3).negate(),
        (&mvar(1, 1) + &mvar(2, 2)).negate(),
        (&mvar(1, 1) + &mvar(3, 3)).negate(),
        (&mvar(2, 2) + &mvar(3, 3)).negate(),
    ];
    let sbar = MonoidGens::from_gens(&param, sbar_gens)?;
    // The three negated diagonal generators absorb a sign each, so the
    // cofactor of det(B) over this monoid is −8.
    let fb = sbar.factor(&det_b);
    match fb.cofactor.constant_value() {
        Some(u) if u == int(-8) => {}
        _ => panic!("the Kronecker-sum determinant must be −8 times a monoid product"),
    }

    // Model side: Σ symbolic and the 6×6 drift-recovery system.
    let smat = PolyMatrix::from_fn(&model, 3, 3, |i, j| {
        let (a, b) = if i <= j { (i + 1, j + 1) } else { (j + 1, i + 1) };
        Polynomial::var(&model, sym_index(3, a, b))
    });
    let a_sys = drift_system(&model);
    let det_a = a_sys.determinant()?;
    let leading: Vec<Polynomial> = (1..=3)
        .map(|k| {
            let idx: Vec<usize> = (0..k).collect();
            smat.minor(&idx, &idx)
        })
        .collect::<Result<_, _>>()?;
    let s_model = MonoidGens::from_gens(&model, leading)?;
    let fa = s_model.factor(&det_a);
    match fa.cofactor.constant_value() {
        Some(u) if u == int(8) => {}
        _ => panic!("the drift-system determinant must be 8 times the leading minors"),
    }

    // Forward map by Cramer's rule on the vectorized system, one column per
    // covariance entry.  The column for (i, j) and the column for (j, i)
    // give identical determinants, so the upper triangle suffices.
    let rhs9: Vec<Polynomial> = (0..9)
        .map(|r| {
            let (i, j) = (r % 3, r / 3);
            Polynomial::constant(&param, -diffusion[i][j].clone())
        })
        .collect();
    let mut alpha_comps = Vec::with_capacity(6);
    let mut cram_sigma = Vec::with_capacity(6);
    for &(i, j) in SYM_ENTRIES.iter() {
        let col = vec_pos(i, j);
        let replaced = PolyMatrix::from_fn(&param, 9, 9, |r, c| {
            if c == col {
                rhs9[r].clone()
            } else {
                b_sys.get(r, c).clone()
            }
        });
        let det = replaced.determinant()?;
        alpha_comps.push(RationalFunction::reduced_over(
            det.clone(),
            det_b.clone(),
            &sbar,
        )?);
        cram_sigma.push(det);
    }

    // Stationarity certificate, forward direction: with N the symmetric
    // matrix of Cramer numerators, M·N + N·Mᵀ + det(B)·C must vanish
    // identically.  Uniqueness of the nonsingular linear solve then makes
    // α the only candidate for the covariance.
    let n_mat = PolyMatrix::from_fn(&param, 3, 3, |i, j| {
        let (a, b) = if i <= j { (i + 1, j + 1) } else { (j + 1, i + 1) };
        cram_sigma[sym_index(3, a, b)].clone()
    });
    let mn = mmat.matmul(&n_mat)?;
    let nm = n_mat.matmul(&mmat.transpose())?;
    for i in 0..3 {
        for j in 0..3 {
            let residual = &(mn.get(i, j) + nm.get(i, j)) + &det_b.mul_scalar(&diffusion[i][j]);
            assert!(
                residual.is_zero(),
                "the forward solution must satisfy the Lyapunov equation identically"
            );
        }
    }

    // Inverse map by Cramer's rule on the 6×6 system, one column per drift
    // entry, with the same certificate on the model side.
    let rhs6: Vec<Polynomial> = SYM_ENTRIES
        .iter()
        .map(|&(k, l)| Polynomial::constant(&model, -diffusion[k - 1][l - 1].clone()))
        .collect();
    let mut beta_comps = Vec::with_capacity(6);
    let mut cram_drift = Vec::with_capacity(6);
    for c in 0..6 {
        let replaced = PolyMatrix::from_fn(&model, 6, 6, |r, cc| {
            if cc == c {
                rhs6[r].clone()
            } else {
                a_sys.get(r, cc).clone()
            }
        });
        let det = replaced.determinant()?;
        beta_comps.push(RationalFunction::reduced_over(
            det.clone(),
            det_a.clone(),
            &s_model,
        )?);
        cram_drift.push(det);
    }
    let mu_mat = PolyMatrix::from_fn(&model, 3, 3, |i, j| {
        if i >= j {
            cram_drift[support_slot(i + 1, j + 1)].clone()
        } else {
            Polynomial::zero(&model)
        }
    });
    let ms = mu_mat.matmul(&smat)?;
    let sm = smat.matmul(&mu_mat.transpose())?;
    for i in 0..3 {
        for j in 0..3 {
            let residual =
                &(ms.get(i, j) + sm.get(i, j)) + &det_a.mul_scalar(&diffusion[i][j]);
            assert!(
                residual.is_zero(),
                "the recovered drift must satisfy the Lyapunov equation identically"
            );
        }
    }

    let alpha = RationalMap::new(&param, &model, alpha_comps)?;
    let beta = RationalMap::new(&model, &param, beta_comps)?;
    let mut iso = BirationalIso::new(alpha, beta, s_model, sbar, vec![], vec![])?;
    iso.extend_to_full()?;

    // Extra linear relations: parse, classify, and mirror in the sampler.
    let mut sample_plan = vec![
        SampleKind::StrictNegative,
        SampleKind::SmallSigned(8),
        SampleKind::SmallSigned(8),
        SampleKind::StrictNegative,
        SampleKind::SmallSigned(8),
        SampleKind::StrictNegative,
    ];
    let mut eq_gens = Vec::new();
    for text in &spec.extra_eq {
        let poly = Polynomial::parse(&param, text)
            .map_err(|e| bad(format!("cannot parse extra relation {text:?}: {e}")))?;
        match classify_relation(&poly) {
            Some(LinearShape::Zero(v)) => {
                if matches!(v, 0 | 3 | 5) {
                    return Err(bad(format!(
                        "extra relation {text:?} would zero a diagonal entry, \
                         contradicting stability"
                    )));
                }
                sample_plan[v] = SampleKind::Zero;
            }
            Some(LinearShape::Tie(rep, member)) => {
                sample_plan[member] = SampleKind::SameAs(rep);
            }
            None => {
                return Err(bad(format!(
                    "extra relation {text:?} is not a supported shape \
                     (a single off-diagonal entry or a difference of two entries)"
                )));
            }
        }
        eq_gens.push(poly);
    }

    let label = spec
        .label
        .clone()
        .unwrap_or_else(|| "lyapunov-triangular-3".to_string());

    Ok(ModelSpec {
        iso,
        eq_gens,
        ineq_gens: Vec::new(),
        noneq_gens: Vec::new(),
        sample_plan,
        label,
    })
}
