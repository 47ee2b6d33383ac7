//! Gaussian graphical families: concentration models and linear structural
//! equation models.
//!
//! **Concentration models.**  An undirected graph G on vertices 1..n pins
//! the inverse covariance: K = Σ⁻¹ is positive definite with κᵢⱼ = 0
//! whenever ij is not an edge.  The ambient parametrization is matrix
//! inversion in both directions, σᵢⱼ = adj(K)ᵢⱼ/|K| and κᵢⱼ = adj(Σ)ᵢⱼ/|Σ|,
//! localized at the two determinants.  The graph, vertex and edge colorings
//! (equal-entry constraints), and the nonpositive-partial-correlation cone
//! (κᵢⱼ ≤ 0 on edges) all live as constraints on the parameter side.
//!
//! **Linear structural equation models.**  A DAG with vertices in
//! topological order (every edge i→j has i < j) parametrizes
//! Σ = (I − Λ)⁻ᵀ Ω (I − Λ)⁻¹ with Λ strictly upper triangular on the edges
//! and Ω = diag(ω₁₁, …, ωₙₙ) positive.  The ambient model is the complete
//! DAG; a sparser graph sets the missing λᵢⱼ to zero.  The inverse is the
//! recursive least-squares recovery
//!
//! ```text
//!   ωᵢᵢ = |Σ_[i]| / |Σ_[i−1]|,       λᵢⱼ = |Σ_{ij·[j−1]∖i}| / |Σ_[j−1]|,
//! ```
//!
//! where `[k]` is {1,…,k} and the numerator of λᵢⱼ is the order-sensitive
//! minor whose rows are [j−1] and whose columns replace i by j in place —
//! the Cramer position, which keeps every formula sign-exact.  Several
//! regimes can run side by side: each intervention on a target set adds one
//! more copy of the parametrization, with the mechanisms (ωᵢᵢ and the
//! incoming λ's) of untouched vertices tied to the previous regime, and
//! optionally a monotonicity constraint ω⁽ᵗ⁾ᵢᵢ ≥ ω⁽ᵗ⁻¹⁾ᵢᵢ on the targets.
//!
//! One latent-variable instance is built in: the 4-vertex graph with
//! directed edges 1→2, 1→3, 1→4, 2→3, 3→4 and the bidirected edge 2↔4,
//! whose error covariance has the single off-diagonal entry ω₂₄.  Its
//! inverse is still rational over the leading principal minors, with the
//! correction terms involving the minor |Σ_{24·13}|; sub-models (such as
//! the instance with 1→4 removed) again arise by zeroing coefficients.

use std::collections::BTreeSet;

use crate::birational::{BirationalIso, RationalMap};
use crate::fraction::{MonoidGens, RationalFunction};
use crate::polyring::{PolyMatrix, Polynomial, VarTable};

use super::{color_classes, sym_index, sym_names, ModelSpec, ModelZooError, SampleKind};

/// A graph with optional colorings, regimes, and cone constraints; which
/// fields may be populated depends on the family being built.
#[derive(Clone, Debug, Default)]
pub struct GraphSpec {
    /// Number of vertices; vertices are 1-based.
    pub n: usize,
    /// Undirected edges (concentration models).
    pub undirected: Vec<(usize, usize)>,
    /// Directed edges i → j with i < j (structural equation models).
    pub directed: Vec<(usize, usize)>,
    /// Bidirected edges (latent confounding); only the built-in 4-vertex
    /// instance with 2 ↔ 4 is supported.
    pub bidirected: Vec<(usize, usize)>,
    /// Color class per vertex: equally colored vertices share their
    /// diagonal parameter.
    pub vertex_colors: Option<Vec<usize>>,
    /// Color class per listed edge: equally colored edges share their
    /// parameter.
    pub edge_colors: Option<Vec<usize>>,
    /// Intervention target sets; each adds one more regime whose untouched
    /// mechanisms are tied to the regime before it.
    pub interventions: Vec<Vec<usize>>,
    /// Require ω⁽ᵗ⁾ᵢᵢ ≥ ω⁽ᵗ⁻¹⁾ᵢᵢ for every intervention target.
    pub monotone: bool,
    /// Constrain κᵢⱼ ≤ 0 on every edge (concentration models).
    pub nonpositive_partials: bool,
    /// Optional display name.
    pub label: Option<String>,
}

impl GraphSpec {
    /// An undirected graph on `n` vertices.
    pub fn undirected_graph(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        GraphSpec {
            n,
            undirected: edges.into_iter().collect(),
            ..GraphSpec::default()
        }
    }

    /// A DAG on `n` topologically ordered vertices.
    pub fn dag(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        GraphSpec {
            n,
            directed: edges.into_iter().collect(),
            ..GraphSpec::default()
        }
    }
}

fn check_vertex(v: usize, n: usize) -> Result<(), ModelZooError> {
    if v == 0 || v > n {
        return Err(ModelZooError::VertexOutOfRange { vertex: v, n });
    }
    Ok(())
}

/// Normalizes undirected edges to (min, max), preserving listed order;
/// rejects loops, duplicates, and out-of-range endpoints.
fn normalize_undirected(
    edges: &[(usize, usize)],
    n: usize,
) -> Result<Vec<(usize, usize)>, ModelZooError> {
    let mut out = Vec::with_capacity(edges.len());
    let mut seen = BTreeSet::new();
    for &(a, b) in edges {
        check_vertex(a, n)?;
        check_vertex(b, n)?;
        if a == b {
            return Err(ModelZooError::BadEdge {
                kind: "undirected",
                i: a,
                j: b,
                reason: "loops are not allowed".into(),
            });
        }
        let e = (a.min(b), a.max(b));
        if !seen.insert(e) {
            return Err(ModelZooError::BadEdge {
                kind: "undirected",
                i: a,
                j: b,
                reason: "edge listed twice".into(),
            });
        }
        out.push(e);
    }
    Ok(out)
}

/// Validates directed edges: endpoints in range, i < j (topological
/// order), no duplicates.  Listed order is preserved.
fn check_directed(edges: &[(usize, usize)], n: usize) -> Result<(), ModelZooError> {
    let mut seen = BTreeSet::new();
    for &(i, j) in edges {
        check_vertex(i, n)?;
        check_vertex(j, n)?;
        if i >= j {
            return Err(ModelZooError::BadEdge {
                kind: "directed",
                i,
                j,
                reason: "edges must point from lower to higher index (topological order)".into(),
            });
        }
        if !seen.insert((i, j)) {
            return Err(ModelZooError::BadEdge {
                kind: "directed",
                i,
                j,
                reason: "edge listed twice".into(),
            });
        }
    }
    Ok(())
}

/// All nonempty subsets of {0, …, n−1}, by size then lexicographically.
fn subsets_by_size(n: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        all.push(subset);
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

/// Checks `m · adj = det · I` entry by entry; the exact identity is what
/// certifies that the two inversion maps are mutually inverse wherever the
/// determinant is invertible.
fn check_adjugate_identity(
    m: &PolyMatrix,
    adj: &PolyMatrix,
    det: &Polynomial,
) -> Result<(), ModelZooError> {
    let n = m.rows();
    let prod = m.matmul(adj)?;
    for i in 0..n {
        for j in 0..n {
            let ok = if i == j {
                prod.get(i, j) == det
            } else {
                prod.get(i, j).is_zero()
            };
            assert!(ok, "adjugate identity failed at ({i}, {j})");
        }
    }
    Ok(())
}

/// Builds the concentration model of an undirected graph: Σ and K = Σ⁻¹
/// linked by adjugate-over-determinant in both directions, κᵢⱼ = 0 on
/// non-edges, optional vertex/edge colors and the κᵢⱼ ≤ 0 cone.
pub fn build_concentration(spec: &GraphSpec) -> Result<ModelSpec, ModelZooError> {
    if !spec.directed.is_empty() || !spec.bidirected.is_empty() {
        return Err(ModelZooError::Unsupported(
            "concentration models take an undirected graph".into(),
        ));
    }
    if !spec.interventions.is_empty() || spec.monotone {
        return Err(ModelZooError::Unsupported(
            "interventions and monotonicity apply to structural equation models".into(),
        ));
    }
    let n = spec.n;
    if n == 0 {
        return Err(ModelZooError::Unsupported(
            "a model needs at least one vertex".into(),
        ));
    }
    let edges = normalize_undirected(&spec.undirected, n)?;
    if let Some(vc) = &spec.vertex_colors {
        if vc.len() != n {
            return Err(ModelZooError::Unsupported(format!(
                "vertex_colors has {} entries for {} vertices",
                vc.len(),
                n
            )));
        }
    }
    if let Some(ec) = &spec.edge_colors {
        if ec.len() != edges.len() {
            return Err(ModelZooError::Unsupported(format!(
                "edge_colors has {} entries for {} edges",
                ec.len(),
                edges.len()
            )));
        }
    }

    let model = VarTable::new(sym_names(n, "", 's'))?;
    let param = VarTable::new(sym_names(n, "", 'k'))?;
    let kvar = |i: usize, j: usize| Polynomial::var(&param, sym_index(n, i.min(j), i.max(j)));
    let svar = |i: usize, j: usize| Polynomial::var(&model, sym_index(n, i.min(j), i.max(j)));

    let kmat = PolyMatrix::from_fn(&param, n, n, |i, j| kvar(i + 1, j + 1));
    let smat = PolyMatrix::from_fn(&model, n, n, |i, j| svar(i + 1, j + 1));
    let det_k = kmat.determinant()?;
    let det_s = smat.determinant()?;
    let adj_k = kmat.adjugate()?;
    let adj_s = smat.adjugate()?;
    check_adjugate_identity(&kmat, &adj_k, &det_k)?;
    check_adjugate_identity(&smat, &adj_s, &det_s)?;

    let sbar = MonoidGens::from_gens(&param, [det_k.clone()])?;
    let s_model = MonoidGens::from_gens(&model, [det_s.clone()])?;
    let mut alpha_comps = Vec::with_capacity(model.len());
    let mut beta_comps = Vec::with_capacity(param.len());
    for i in 1..=n {
        for j in i..=n {
            alpha_comps.push(RationalFunction::reduced_over(
                adj_k.get(i - 1, j - 1).clone(),
                det_k.clone(),
                &sbar,
            )?);
            beta_comps.push(RationalFunction::reduced_over(
                adj_s.get(i - 1, j - 1).clone(),
                det_s.clone(),
                &s_model,
            )?);
        }
    }
    let alpha = RationalMap::new(&param, &model, alpha_comps)?;
    let beta = RationalMap::new(&model, &param, beta_comps)?;
    let mut iso = BirationalIso::new(alpha, beta, s_model, sbar, vec![], vec![])?;
    // The two adjugate identities checked above give K(β(Σ)) · Σ = Σ⁻¹Σ
    // exactly, so |K| pulls back to 1/|Σ| and |Σ| to 1/|K| by determinant
    // multiplicativity: each monoid generator is already a unit over the
    // other side.
    iso.set_full();

    let edge_set: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    let mut eq_gens = Vec::new();
    for i in 1..=n {
        for j in (i + 1)..=n {
            if !edge_set.contains(&(i, j)) {
                eq_gens.push(kvar(i, j));
            }
        }
    }

    // Tie classes: representative first (smallest variable index), one
    // generator `rep − member` per further member.
    let mut diag_rep: Vec<usize> = (0..n).collect(); // vertex (0-based) -> rep vertex
    if let Some(vc) = &spec.vertex_colors {
        for class in color_classes(vc) {
            let rep = class[0];
            for &v in &class[1..] {
                diag_rep[v] = rep;
                eq_gens.push(&kvar(rep + 1, rep + 1) - &kvar(v + 1, v + 1));
            }
        }
    }
    let mut edge_rep: Vec<usize> = (0..edges.len()).collect(); // edge pos -> rep pos
    if let Some(ec) = &spec.edge_colors {
        for class in color_classes(ec) {
            let mut class = class;
            class.sort_by_key(|&e| sym_index(n, edges[e].0, edges[e].1));
            let rep = class[0];
            let (ri, rj) = edges[rep];
            for &e in &class[1..] {
                edge_rep[e] = rep;
                let (i, j) = edges[e];
                eq_gens.push(&kvar(ri, rj) - &kvar(i, j));
            }
        }
    }

    let mut ineq_gens = Vec::new();
    for subset in subsets_by_size(n) {
        ineq_gens.push(kmat.minor(&subset, &subset)?);
    }
    let noneq_gens = ineq_gens.clone();
    if spec.nonpositive_partials {
        for &(i, j) in &edges {
            ineq_gens.push(kvar(i, j).negate());
        }
    }

    let edge_kind = if spec.nonpositive_partials {
        SampleKind::SmallNonpositive(8)
    } else {
        SampleKind::SmallSigned(8)
    };
    let mut sample_plan = Vec::with_capacity(param.len());
    for i in 1..=n {
        for j in i..=n {
            let kind = if i == j {
                if diag_rep[i - 1] == i - 1 {
                    SampleKind::LargePositive(9)
                } else {
                    SampleKind::SameAs(sym_index(n, diag_rep[i - 1] + 1, diag_rep[i - 1] + 1))
                }
            } else if let Some(pos) = edges.iter().position(|&e| e == (i, j)) {
                if edge_rep[pos] == pos {
                    edge_kind.clone()
                } else {
                    let (ri, rj) = edges[edge_rep[pos]];
                    SampleKind::SameAs(sym_index(n, ri, rj))
                }
            } else {
                SampleKind::Zero
            };
            sample_plan.push(kind);
        }
    }

    let label = spec
        .label
        .clone()
        .unwrap_or_else(|| format!("concentration model on {n} vertices"));
    Ok(ModelSpec {
        iso,
        eq_gens,
        ineq_gens,
        noneq_gens,
        sample_plan,
        label,
    })
}

/// Builds a linear structural equation model (Gaussian DAG model), or the
/// built-in latent-confounded 4-vertex instance when bidirected edges are
/// present.
pub fn build_sem(spec: &GraphSpec) -> Result<ModelSpec, ModelZooError> {
    if !spec.undirected.is_empty() {
        return Err(ModelZooError::Unsupported(
            "structural equation models take directed edges".into(),
        ));
    }
    if spec.nonpositive_partials {
        return Err(ModelZooError::Unsupported(
            "the nonpositive-partial cone is a concentration-model constraint".into(),
        ));
    }
    if spec.n == 0 {
        return Err(ModelZooError::Unsupported(
            "a model needs at least one vertex".into(),
        ));
    }
    check_directed(&spec.directed, spec.n)?;
    if spec.bidirected.is_empty() {
        build_dag(spec)
    } else {
        build_confounded(spec)
    }
}

/// Index of the pair (i, j), i < j, in the lexicographic pair listing.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * n - i * (i - 1) / 2 + (j - i - 1)
}

/// Builds Σ = (I − Λ)ᵀ⁻¹ Ω (I − Λ)⁻¹ as a polynomial matrix, given the
/// strictly-upper Λ and the (not necessarily diagonal) Ω.
fn sem_sigma(lambda: &PolyMatrix, omega: &PolyMatrix) -> Result<PolyMatrix, ModelZooError> {
    let vars = lambda.vars();
    let n = lambda.rows();
    let i_minus = PolyMatrix::from_fn(vars, n, n, |r, c| {
        if r == c {
            Polynomial::one(vars)
        } else {
            lambda.get(r, c).negate()
        }
    });
    // Unit upper triangular, so the adjugate is the inverse.
    let det = i_minus.determinant()?;
    assert!(det.is_one(), "I − Λ must be unimodular");
    let u = i_minus.adjugate()?;
    Ok(u.transpose().matmul(&omega.matmul(&u)?)?)
}

/// The order-sensitive minor in Cramer position: rows are `base` (sorted,
/// 1-based), columns are `base` with `i` replaced by `j` in place.
fn cramer_minor(
    smat: &PolyMatrix,
    base: &[usize],
    i: usize,
    j: usize,
) -> Result<Polynomial, ModelZooError> {
    let rows: Vec<usize> = base.iter().map(|&v| v - 1).collect();
    let cols: Vec<usize> = base
        .iter()
        .map(|&v| if v == i { j - 1 } else { v - 1 })
        .collect();
    Ok(smat.minor(&rows, &cols)?)
}

fn build_dag(spec: &GraphSpec) -> Result<ModelSpec, ModelZooError> {
    let n = spec.n;
    let copies = 1 + spec.interventions.len();
    if copies > 1 && (spec.vertex_colors.is_some() || spec.edge_colors.is_some()) {
        return Err(ModelZooError::Unsupported(
            "colors combined with interventions are not supported".into(),
        ));
    }
    if spec.monotone && spec.interventions.is_empty() {
        return Err(ModelZooError::Unsupported(
            "a monotonicity constraint needs at least one intervention".into(),
        ));
    }
    let mut targets: Vec<BTreeSet<usize>> = Vec::with_capacity(spec.interventions.len());
    for set in &spec.interventions {
        if set.is_empty() {
            return Err(ModelZooError::Unsupported(
                "an intervention needs at least one target".into(),
            ));
        }
        for &v in set {
            check_vertex(v, n)?;
        }
        targets.push(set.iter().copied().collect());
    }
    if let Some(vc) = &spec.vertex_colors {
        if vc.len() != n {
            return Err(ModelZooError::Unsupported(format!(
                "vertex_colors has {} entries for {} vertices",
                vc.len(),
                n
            )));
        }
    }
    if let Some(ec) = &spec.edge_colors {
        if ec.len() != spec.directed.len() {
            return Err(ModelZooError::Unsupported(format!(
                "edge_colors has {} entries for {} edges",
                ec.len(),
                spec.directed.len()
            )));
        }
    }

    let prefix = |t: usize| {
        if copies == 1 {
            String::new()
        } else {
            format!("c{t}_")
        }
    };
    let block_p = n + n * (n - 1) / 2; // parameters per regime
    let block_m = n * (n + 1) / 2; // covariances per regime
    let mut param_names = Vec::with_capacity(copies * block_p);
    let mut model_names = Vec::with_capacity(copies * block_m);
    for t in 0..copies {
        let p = prefix(t);
        for i in 1..=n {
            param_names.push(format!("{p}w_{i}_{i}"));
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                param_names.push(format!("{p}l_{i}_{j}"));
            }
        }
        model_names.extend(sym_names(n, &p, 's'));
    }
    let param = VarTable::new(param_names)?;
    let model = VarTable::new(model_names)?;
    let wvar = |t: usize, i: usize| Polynomial::var(&param, t * block_p + (i - 1));
    let lvar = |t: usize, i: usize, j: usize| {
        Polynomial::var(&param, t * block_p + n + pair_index(n, i, j))
    };
    let svar =
        |t: usize, i: usize, j: usize| Polynomial::var(&model, t * block_m + sym_index(n, i, j));

    let mut alpha_comps = Vec::with_capacity(model.len());
    let mut sbar_gens = Vec::new();
    let mut s_gens = Vec::new();
    let mut leading: Vec<Vec<Polynomial>> = Vec::with_capacity(copies); // [t][k−1] = |Σ⁽ᵗ⁾_[k]|
    let mut smats = Vec::with_capacity(copies);
    for t in 0..copies {
        let lambda = PolyMatrix::from_fn(&param, n, n, |r, c| {
            if r < c {
                lvar(t, r + 1, c + 1)
            } else {
                Polynomial::zero(&param)
            }
        });
        let omega = PolyMatrix::from_fn(&param, n, n, |r, c| {
            if r == c {
                wvar(t, r + 1)
            } else {
                Polynomial::zero(&param)
            }
        });
        let sigma = sem_sigma(&lambda, &omega)?;
        for i in 1..=n {
            for j in i..=n {
                alpha_comps.push(RationalFunction::from_poly(sigma.get(i - 1, j - 1).clone()));
            }
        }
        for i in 1..=n {
            sbar_gens.push(wvar(t, i));
        }
        let smat = PolyMatrix::from_fn(&model, n, n, |r, c| {
            let (a, b) = if r <= c { (r + 1, c + 1) } else { (c + 1, r + 1) };
            svar(t, a, b)
        });
        let mut lead_t = Vec::with_capacity(n);
        for k in 1..=n {
            let idx: Vec<usize> = (0..k).collect();
            let m = smat.minor(&idx, &idx)?;
            s_gens.push(m.clone());
            lead_t.push(m);
        }
        leading.push(lead_t);
        smats.push(smat);
    }
    let sbar = MonoidGens::from_gens(&param, sbar_gens)?;
    let s_model = MonoidGens::from_gens(&model, s_gens)?;

    let mut beta_comps = Vec::with_capacity(param.len());
    for t in 0..copies {
        beta_comps.push(RationalFunction::from_poly(leading[t][0].clone()));
        for i in 2..=n {
            beta_comps.push(RationalFunction::reduced_over(
                leading[t][i - 1].clone(),
                leading[t][i - 2].clone(),
                &s_model,
            )?);
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                let base: Vec<usize> = (1..j).collect();
                let num = cramer_minor(&smats[t], &base, i, j)?;
                beta_comps.push(if j == 2 {
                    RationalFunction::reduced_over(num, leading[t][0].clone(), &s_model)?
                } else {
                    RationalFunction::reduced_over(num, leading[t][j - 2].clone(), &s_model)?
                });
            }
        }
    }
    let alpha = RationalMap::new(&param, &model, alpha_comps)?;
    let beta = RationalMap::new(&model, &param, beta_comps)?;
    let mut iso = BirationalIso::new(alpha, beta, s_model, sbar, vec![], vec![])?;
    iso.extend_to_full()?;

    let edge_set: BTreeSet<(usize, usize)> = spec.directed.iter().copied().collect();
    let mut eq_gens = Vec::new();
    for t in 0..copies {
        for i in 1..=n {
            for j in (i + 1)..=n {
                if !edge_set.contains(&(i, j)) {
                    eq_gens.push(lvar(t, i, j));
                }
            }
        }
    }
    let mut diag_rep: Vec<usize> = (0..n).collect();
    if let Some(vc) = &spec.vertex_colors {
        for class in color_classes(vc) {
            let rep = class[0];
            for &v in &class[1..] {
                diag_rep[v] = rep;
                eq_gens.push(&wvar(0, rep + 1) - &wvar(0, v + 1));
            }
        }
    }
    let mut edge_rep: Vec<usize> = (0..spec.directed.len()).collect();
    if let Some(ec) = &spec.edge_colors {
        for class in color_classes(ec) {
            let mut class = class;
            class.sort_by_key(|&e| pair_index(n, spec.directed[e].0, spec.directed[e].1));
            let rep = class[0];
            let (ri, rj) = spec.directed[rep];
            for &e in &class[1..] {
                edge_rep[e] = rep;
                let (i, j) = spec.directed[e];
                eq_gens.push(&lvar(0, ri, rj) - &lvar(0, i, j));
            }
        }
    }
    let mut ineq_gens = Vec::new();
    for (t, tgt) in targets.iter().enumerate() {
        let t = t + 1;
        for i in 1..=n {
            if !tgt.contains(&i) {
                eq_gens.push(&wvar(t, i) - &wvar(t - 1, i));
                for &(a, b) in &spec.directed {
                    if b == i {
                        eq_gens.push(&lvar(t, a, b) - &lvar(t - 1, a, b));
                    }
                }
            } else if spec.monotone {
                ineq_gens.push(&wvar(t, i) - &wvar(t - 1, i));
            }
        }
    }

    let mut sample_plan = Vec::with_capacity(param.len());
    for t in 0..copies {
        for i in 1..=n {
            let kind = if t == 0 {
                if diag_rep[i - 1] == i - 1 {
                    SampleKind::StrictPositive
                } else {
                    SampleKind::SameAs(diag_rep[i - 1])
                }
            } else {
                let prev = (t - 1) * block_p + (i - 1);
                if targets[t - 1].contains(&i) {
                    if spec.monotone {
                        SampleKind::GreaterThan(prev)
                    } else {
                        SampleKind::StrictPositive
                    }
                } else {
                    SampleKind::SameAs(prev)
                }
            };
            sample_plan.push(kind);
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                let kind = if !edge_set.contains(&(i, j)) {
                    SampleKind::Zero
                } else if t == 0 {
                    let pos = spec.directed.iter().position(|&e| e == (i, j)).unwrap();
                    if edge_rep[pos] == pos {
                        SampleKind::SmallSigned(8)
                    } else {
                        let (ri, rj) = spec.directed[edge_rep[pos]];
                        SampleKind::SameAs(n + pair_index(n, ri, rj))
                    }
                } else if targets[t - 1].contains(&j) {
                    SampleKind::SmallSigned(8)
                } else {
                    SampleKind::SameAs((t - 1) * block_p + n + pair_index(n, i, j))
                };
                sample_plan.push(kind);
            }
        }
    }

    let label = spec.label.clone().unwrap_or_else(|| {
        if copies == 1 {
            format!("linear SEM on {n} vertices")
        } else {
            format!("linear SEM on {n} vertices with {} regimes", copies)
        }
    });
    Ok(ModelSpec {
        iso,
        eq_gens,
        ineq_gens,
        noneq_gens: Vec::new(),
        sample_plan,
        label,
    })
}

/// The directed edges of the built-in latent instance.
const CONFOUNDED_EDGES: [(usize, usize); 5] = [(1, 2), (1, 3), (1, 4), (2, 3), (3, 4)];

fn build_confounded(spec: &GraphSpec) -> Result<ModelSpec, ModelZooError> {
    let n = spec.n;
    let normalized: Vec<(usize, usize)> = spec
        .bidirected
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    if n != 4 || normalized != [(2, 4)] {
        return Err(ModelZooError::Unsupported(
            "the only built-in latent structure is the 4-vertex instance with 2 ↔ 4".into(),
        ));
    }
    if spec.vertex_colors.is_some()
        || spec.edge_colors.is_some()
        || !spec.interventions.is_empty()
        || spec.monotone
    {
        return Err(ModelZooError::Unsupported(
            "the latent instance does not combine with colors or interventions".into(),
        ));
    }
    for &(i, j) in &spec.directed {
        if !CONFOUNDED_EDGES.contains(&(i, j)) {
            return Err(ModelZooError::BadEdge {
                kind: "directed",
                i,
                j,
                reason: "not part of the built-in latent instance".into(),
            });
        }
    }

    let param = VarTable::new([
        "w_1_1", "w_2_2", "w_3_3", "w_4_4", "w_2_4", "l_1_2", "l_1_3", "l_1_4", "l_2_3", "l_3_4",
    ])?;
    let model = VarTable::new(sym_names(4, "", 's'))?;
    let pv = |name: &str| Polynomial::var_named(&param, name).unwrap();
    let svar = |i: usize, j: usize| Polynomial::var(&model, sym_index(4, i.min(j), i.max(j)));

    let lambda = PolyMatrix::from_fn(&param, 4, 4, |r, c| {
        if CONFOUNDED_EDGES.contains(&(r + 1, c + 1)) {
            pv(&format!("l_{}_{}", r + 1, c + 1))
        } else {
            Polynomial::zero(&param)
        }
    });
    let omega = PolyMatrix::from_fn(&param, 4, 4, |r, c| {
        if r == c {
            pv(&format!("w_{}_{}", r + 1, c + 1))
        } else if (r, c) == (1, 3) || (r, c) == (3, 1) {
            pv("w_2_4")
        } else {
            Polynomial::zero(&param)
        }
    });
    let sigma = sem_sigma(&lambda, &omega)?;
    let mut alpha_comps = Vec::with_capacity(10);
    for i in 1..=4 {
        for j in i..=4 {
            alpha_comps.push(RationalFunction::from_poly(sigma.get(i - 1, j - 1).clone()));
        }
    }

    let w22 = pv("w_2_2");
    let w44 = pv("w_4_4");
    let w24 = pv("w_2_4");
    let schur = &(&w22 * &w44) - &(&w24 * &w24);
    let sbar = MonoidGens::from_gens(&param, [pv("w_1_1"), w22.clone(), pv("w_3_3"), schur])?;

    let smat = PolyMatrix::from_fn(&model, 4, 4, |r, c| svar(r + 1, c + 1));
    let mut lead = Vec::with_capacity(4);
    for k in 1..=4 {
        let idx: Vec<usize> = (0..k).collect();
        lead.push(smat.minor(&idx, &idx)?);
    }
    let s_model = MonoidGens::from_gens(&model, lead.iter().cloned())?;

    // |Σ_{24·13}|: rows {1,2,3}, columns with 2 replaced by 4 in place.
    let c24 = cramer_minor(&smat, &[1, 2, 3], 2, 4)?;
    let beta_comps = vec![
        RationalFunction::from_poly(lead[0].clone()),
        RationalFunction::reduced_over(lead[1].clone(), lead[0].clone(), &s_model)?,
        RationalFunction::reduced_over(lead[2].clone(), lead[1].clone(), &s_model)?,
        // ω₄₄ = |Σ_[4]|/|Σ_[3]| + |Σ_[2]| |Σ_{24·13}|² / (|Σ_[1]| |Σ_[3]|²)
        RationalFunction::reduced_over(
            &(&(&lead[3] * &lead[0]) * &lead[2]) + &(&lead[1] * &(&c24 * &c24)),
            &lead[0] * &(&lead[2] * &lead[2]),
            &s_model,
        )?,
        // ω₂₄ = |Σ_[2]| |Σ_{24·13}| / (|Σ_[1]| |Σ_[3]|)
        RationalFunction::reduced_over(&lead[1] * &c24, &lead[0] * &lead[2], &s_model)?,
        RationalFunction::reduced_over(svar(1, 2), lead[0].clone(), &s_model)?,
        RationalFunction::reduced_over(
            cramer_minor(&smat, &[1, 2], 1, 3)?,
            lead[1].clone(),
            &s_model,
        )?,
        // λ₁₄ = |Σ_{14·23}|/|Σ_[3]| + σ₁₂ |Σ_{24·13}| / (|Σ_[1]| |Σ_[3]|)
        RationalFunction::reduced_over(
            &(&cramer_minor(&smat, &[1, 2, 3], 1, 4)? * &lead[0]) + &(&svar(1, 2) * &c24),
            &lead[0] * &lead[2],
            &s_model,
        )?,
        RationalFunction::reduced_over(
            cramer_minor(&smat, &[1, 2], 2, 3)?,
            lead[1].clone(),
            &s_model,
        )?,
        RationalFunction::reduced_over(
            cramer_minor(&smat, &[1, 2, 3], 3, 4)?,
            lead[2].clone(),
            &s_model,
        )?,
    ];

    let alpha = RationalMap::new(&param, &model, alpha_comps)?;
    let beta = RationalMap::new(&model, &param, beta_comps)?;
    let mut iso = BirationalIso::new(alpha, beta, s_model, sbar, vec![], vec![])?;
    iso.extend_to_full()?;

    let mut eq_gens = Vec::new();
    for &(i, j) in &CONFOUNDED_EDGES {
        if !spec.directed.contains(&(i, j)) {
            eq_gens.push(pv(&format!("l_{i}_{j}")));
        }
    }

    let mut sample_plan = vec![SampleKind::LargePositive(1); 4];
    sample_plan.push(SampleKind::SmallSigned(3)); // |ω₂₄| ≤ 3/4 < √(ω₂₂ω₄₄)
    for &(i, j) in &CONFOUNDED_EDGES {
        sample_plan.push(if spec.directed.contains(&(i, j)) {
            SampleKind::SmallSigned(8)
        } else {
            SampleKind::Zero
        });
    }

    let label = spec
        .label
        .clone()
        .unwrap_or_else(|| "latent-confounded linear SEM on 4 vertices".to_string());
    Ok(ModelSpec {
        iso,
        eq_gens,
        ineq_gens: Vec::new(),
        noneq_gens: Vec::new(),
        sample_plan,
        label,
    })
}
