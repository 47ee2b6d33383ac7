//! Staged tree models: discrete statistical models whose atomic
//! probabilities are prefix products of edge transition probabilities.
//!
//! A complete tree unfolds discrete variables X₁, …, X_L one level at a
//! time, in a chosen level order; a root-to-leaf path picks one outcome per
//! level, and the atom probability is the product of its edge labels,
//!
//! ```text
//!   p_path = θ_{w₁} · θ_{w₁w₂} ⋯ θ_{w₁⋯w_L},
//! ```
//!
//! with the labels below each vertex summing to one.  A *stage* is a set of
//! same-level vertices forced to share their outgoing distribution; staging
//! encodes conditional independence and context-specific independence at
//! once, which is why the same distribution family can be told apart from,
//! or identified with, a reordered tree only up to these ties.
//!
//! The parametrization is monomial, so it inverts by marginalization: with
//! `[u]` the sum of all atoms whose path extends `u`, the edge label is the
//! conditional probability θ_u = [u]/[parent(u)], and the root marginal
//! `[]` is identically one on the simplex.  Localizing at every prefix sum
//! makes the inversion regular on the open simplex.  Model coordinates are
//! indexed by outcome words in the order of the original variables, not the
//! level order, so trees with different level orders parametrize the same
//! coordinate space and can be compared.

use std::collections::BTreeMap;

use crate::birational::{BirationalIso, RationalMap};
use crate::fraction::{MonoidGens, RationalFunction};
use crate::polyring::{Polynomial, VarTable};

use super::{ModelSpec, ModelZooError, SampleKind};

/// A complete stratified staged tree: one discrete variable per level, with
/// stage classes merging same-level vertices.
#[derive(Clone, Debug)]
pub struct StagedTreeSpec {
    /// Number of outcomes of each variable X₁, …, X_L (between 2 and 10).
    pub outcomes: Vec<usize>,
    /// The variable unfolded at each level, root first; a permutation of
    /// 1..=L.
    pub level_vars: Vec<usize>,
    /// Stage classes: lists of path words (digit strings over level
    /// outcomes) of the internal vertices sharing an outgoing distribution.
    /// Words within a class must have equal length.
    pub stages: Vec<Vec<String>>,
    /// Optional display name.
    pub label: Option<String>,
}

impl StagedTreeSpec {
    /// A tree of binary variables in the given level order.
    pub fn binary(level_vars: &[usize], stages: &[&[&str]]) -> Self {
        StagedTreeSpec {
            outcomes: vec![2; level_vars.len()],
            level_vars: level_vars.to_vec(),
            stages: stages
                .iter()
                .map(|class| class.iter().map(|w| w.to_string()).collect())
                .collect(),
            label: None,
        }
    }
}

fn bad(tree: impl Into<String>) -> ModelZooError {
    ModelZooError::BadTree(tree.into())
}

/// Builds the staged tree model: monomial parametrization, conditional
///-probability inverse, sum-to-one rows, and stage-tie equations.
pub fn build_staged_tree(spec: &StagedTreeSpec) -> Result<ModelSpec, ModelZooError> {
    let levels = spec.level_vars.len();
    if levels == 0 {
        return Err(bad("a tree needs at least one level"));
    }
    if spec.outcomes.len() != levels {
        return Err(bad(format!(
            "{} outcome counts for {} levels",
            spec.outcomes.len(),
            levels
        )));
    }
    for &k in &spec.outcomes {
        if !(2..=10).contains(&k) {
            return Err(bad(format!(
                "each variable needs between 2 and 10 outcomes, got {k}"
            )));
        }
    }
    let mut seen_var = vec![false; levels];
    for &v in &spec.level_vars {
        if v == 0 || v > levels {
            return Err(bad(format!("level variable X{v} is out of range")));
        }
        if seen_var[v - 1] {
            return Err(bad(format!("variable X{v} appears at two levels")));
        }
        seen_var[v - 1] = true;
    }
    // Outcome count of the variable at each level.
    let level_size: Vec<usize> = spec.level_vars.iter().map(|&v| spec.outcomes[v - 1]).collect();

    let check_word = |w: &str| -> Result<(), ModelZooError> {
        if w.is_empty() || w.len() >= levels {
            return Err(bad(format!(
                "stage word \"{w}\" must name an internal vertex below the root"
            )));
        }
        for (k, c) in w.chars().enumerate() {
            let d = c.to_digit(10).ok_or_else(|| {
                bad(format!("stage word \"{w}\" contains a non-digit character"))
            })?;
            if d as usize >= level_size[k] {
                return Err(bad(format!(
                    "stage word \"{w}\" uses outcome {d} at a level with {} outcomes",
                    level_size[k]
                )));
            }
        }
        Ok(())
    };
    // rep[word] = lex-smallest word of its class.
    let mut rep: BTreeMap<String, String> = BTreeMap::new();
    for class in &spec.stages {
        if class.is_empty() {
            return Err(bad("empty stage class"));
        }
        let len = class[0].len();
        let mut sorted = class.clone();
        sorted.sort();
        for w in &sorted {
            check_word(w)?;
            if w.len() != len {
                return Err(bad(format!(
                    "stage class mixes vertices of levels {} and {}",
                    len,
                    w.len()
                )));
            }
            if rep.insert(w.clone(), sorted[0].clone()).is_some() {
                return Err(bad(format!("vertex \"{w}\" appears in two stage classes")));
            }
        }
    }

    // Path words by length, lexicographic within a length.
    let mut words: Vec<Vec<String>> = vec![vec![String::new()]];
    for m in 0..levels {
        let mut next = Vec::with_capacity(words[m].len() * level_size[m]);
        for u in &words[m] {
            for d in 0..level_size[m] {
                next.push(format!("{u}{d}"));
            }
        }
        words.push(next);
    }

    // Model coordinates by outcome word (original variable order), lex
    // ascending; `atom_index` finds the coordinate of a full path.
    let mut outcome_words = vec![String::new()];
    for &k in &spec.outcomes {
        let mut next = Vec::with_capacity(outcome_words.len() * k);
        for o in &outcome_words {
            for d in 0..k {
                next.push(format!("{o}{d}"));
            }
        }
        outcome_words = next;
    }
    let model = VarTable::new(outcome_words.iter().map(|o| format!("p_{o}")))?;
    let atom_index = |w: &str| -> usize {
        let wb = w.as_bytes();
        let mut o = vec![0u8; levels];
        for k in 0..levels {
            o[spec.level_vars[k] - 1] = wb[k];
        }
        let mut idx = 0;
        for v in 0..levels {
            idx = idx * spec.outcomes[v] + (o[v] - b'0') as usize;
        }
        idx
    };

    let mut theta_names = Vec::new();
    for m in 1..=levels {
        for u in &words[m] {
            theta_names.push(format!("th_{u}"));
        }
    }
    let param = VarTable::new(theta_names)?;
    let theta = |u: &str| Polynomial::var_named(&param, &format!("th_{u}")).unwrap();

    // Prefix-sum marginals [u] on the model side.
    let marginal = |u: &str| -> Polynomial {
        let mut sum = Polynomial::zero(&model);
        for w in &words[levels] {
            if w.starts_with(u) {
                sum = &sum + &Polynomial::var(&model, atom_index(w));
            }
        }
        sum
    };

    let mut alpha_comps = vec![RationalFunction::from_poly(Polynomial::zero(&param)); model.len()];
    for w in &words[levels] {
        let mut product = Polynomial::one(&param);
        for m in 1..=levels {
            product = &product * &theta(&w[..m]);
        }
        alpha_comps[atom_index(w)] = RationalFunction::from_poly(product);
    }

    let mut s_gens = Vec::new();
    for m in 0..=levels {
        for u in &words[m] {
            s_gens.push(marginal(u));
        }
    }
    let s_model = MonoidGens::from_gens(&model, s_gens)?;
    let sbar = MonoidGens::from_gens(&param, (0..param.len()).map(|i| Polynomial::var(&param, i)))?;

    let mut beta_comps = Vec::with_capacity(param.len());
    for m in 1..=levels {
        for u in &words[m] {
            beta_comps.push(if m == 1 {
                // The root marginal is identically one on the simplex, so
                // the first-level conditionals are plain marginals.
                RationalFunction::from_poly(marginal(u))
            } else {
                RationalFunction::reduced_over(marginal(u), marginal(&u[..m - 1]), &s_model)?
            });
        }
    }

    let mut rows = Vec::new();
    for m in 0..levels {
        for u in &words[m] {
            let mut row = Polynomial::one(&param).negate();
            for d in 0..level_size[m] {
                row = &row + &theta(&format!("{u}{d}"));
            }
            rows.push(row);
        }
    }
    let total = &marginal("") - &Polynomial::one(&model);

    let alpha = RationalMap::new(&param, &model, alpha_comps)?;
    let beta = RationalMap::new(&model, &param, beta_comps)?;
    let mut iso = BirationalIso::new(alpha, beta, s_model, sbar, rows.clone(), vec![total])?;
    iso.extend_to_full()?;

    let mut eq_gens = rows;
    for class in &spec.stages {
        let mut sorted = class.clone();
        sorted.sort();
        let r = &sorted[0];
        for w in &sorted[1..] {
            for d in 0..level_size[w.len()] {
                eq_gens.push(&theta(&format!("{r}{d}")) - &theta(&format!("{w}{d}")));
            }
        }
    }

    let mut sample_plan = Vec::with_capacity(param.len());
    for m in 0..levels {
        for u in &words[m] {
            let size = level_size[m];
            match rep.get(u.as_str()) {
                Some(r) if r != u => {
                    for d in 0..size {
                        let src = param.index_of(&format!("th_{r}{d}")).unwrap();
                        sample_plan.push(SampleKind::SameAs(src));
                    }
                }
                _ => {
                    for d in 0..size {
                        sample_plan.push(SampleKind::SimplexDraw { size, position: d });
                    }
                }
            }
        }
    }

    let label = spec.label.clone().unwrap_or_else(|| {
        format!(
            "staged tree on {levels} variables, level order {:?}",
            spec.level_vars
        )
    });
    Ok(ModelSpec {
        iso,
        eq_gens,
        ineq_gens: Vec::new(),
        noneq_gens: Vec::new(),
        sample_plan,
        label,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::birational::Direction;
    use crate::groebner::Budget;
    use num::{One, Signed, Zero};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_level_tree_is_the_open_simplex() {
        let spec = StagedTreeSpec {
            outcomes: vec![3],
            level_vars: vec![1],
            stages: vec![],
            label: None,
        };
        let m = build_staged_tree(&spec).unwrap();
        assert_eq!(m.param_table().len(), 3);
        assert_eq!(m.model_table().len(), 3);
        let v = m.iso().verify_inverse(&Budget::unlimited()).unwrap();
        assert!(v.param_side_exact && v.model_side_exact);
        assert_eq!(m.eq_gens().len(), 1); // the root row
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = m.sample_interior(&mut rng).unwrap();
        let total: num::BigRational = p.iter().cloned().sum();
        assert!(total.is_one());
    }

    #[test]
    fn one_stage_on_two_binary_variables_recovers_independence() {
        // Tying the two second-level vertices makes X₂ independent of X₁;
        // the tie transfers to the familiar 2×2 determinant.
        let spec = StagedTreeSpec::binary(&[1, 2], &[&["0", "1"]]);
        let m = build_staged_tree(&spec).unwrap();
        // Three sum-to-one rows plus two ties.
        assert_eq!(m.eq_gens().len(), 5);
        let tie = &m.eq_gens()[3];
        let param = m.param_table().clone();
        let tv = |n: &str| Polynomial::var_named(&param, n).unwrap();
        assert_eq!(tie, &(&tv("th_00") - &tv("th_10")));
        let t = m.iso().transfer(tie, Direction::ParamToModel).unwrap();
        let model = m.model_table().clone();
        let pv = |n: &str| Polynomial::var_named(&model, n).unwrap();
        let expected = &(&pv("p_00") * &pv("p_11")) - &(&pv("p_01") * &pv("p_10"));
        assert_eq!(t.numerator, expected);
    }

    #[test]
    fn level_reordering_permutes_atom_coordinates() {
        // With levels X₃ X₂ X₁ X₄, the path 1000 lands on outcome word
        // 0010, and its atom is the prefix product down that path.
        let spec = StagedTreeSpec::binary(&[3, 2, 1, 4], &[]);
        let m = build_staged_tree(&spec).unwrap();
        assert_eq!(m.param_table().len(), 30);
        assert_eq!(m.model_table().len(), 16);
        let model = m.model_table().clone();
        let param = m.param_table().clone();
        let atom = Polynomial::var_named(&model, "p_0010").unwrap();
        let pulled = m.iso().alpha().pullback(&atom).unwrap();
        assert!(pulled.is_polynomial());
        let tv = |n: &str| Polynomial::var_named(&param, n).unwrap();
        let expected = &(&tv("th_1") * &tv("th_10")) * &(&tv("th_100") * &tv("th_1000"));
        assert_eq!(pulled.numerator(), &expected);
    }

    #[test]
    fn four_level_staged_tree_round_trips() {
        let spec = StagedTreeSpec::binary(
            &[3, 2, 1, 4],
            &[
                &["11", "01"],
                &["101", "100"],
                &["011", "010", "001", "000"],
            ],
        );
        let m = build_staged_tree(&spec).unwrap();
        let v = m.iso().verify_inverse(&Budget::unlimited()).unwrap();
        // Conditionals recompose to the edge labels only modulo the
        // sum-to-one rows; the other direction telescopes exactly.
        assert!(!v.param_side_exact);
        assert!(v.model_side_exact);
        // Subtree sums below the leaf level get appended on the parameter
        // side, the deeper ones with a degree warning.
        assert!(m.iso().is_full());
        assert!(!m.iso().warnings().is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let theta = m.sample_interior(&mut rng).unwrap();
        for g in m.eq_gens() {
            assert!(g.evaluate(&theta).unwrap().is_zero());
        }
        let p = m.iso().alpha().evaluate(&theta).unwrap();
        assert!(p.iter().all(|x| x.is_positive()));
        let back = m.iso().beta().evaluate(&p).unwrap();
        assert_eq!(theta, back);
    }

    #[test]
    fn malformed_trees_are_rejected() {
        // Level list is not a permutation.
        let spec = StagedTreeSpec::binary(&[1, 1], &[]);
        assert!(matches!(
            build_staged_tree(&spec),
            Err(ModelZooError::BadTree(_))
        ));
        // Stage class mixes levels.
        let spec = StagedTreeSpec::binary(&[1, 2, 3], &[&["0", "00"]]);
        assert!(matches!(
            build_staged_tree(&spec),
            Err(ModelZooError::BadTree(_))
        ));
        // Outcome digit out of range.
        let spec = StagedTreeSpec::binary(&[1, 2], &[&["2"]]);
        assert!(matches!(
            build_staged_tree(&spec),
            Err(ModelZooError::BadTree(_))
        ));
        // A vertex cannot sit in two classes.
        let spec = StagedTreeSpec::binary(&[1, 2, 3], &[&["0", "1"], &["1"]]);
        assert!(matches!(
            build_staged_tree(&spec),
            Err(ModelZooError::BadTree(_))
        ));
        // A leaf is not an internal vertex.
        let spec = StagedTreeSpec::binary(&[1, 2], &[&["00", "10"]]);
        assert!(matches!(
            build_staged_tree(&spec),
            Err(ModelZooError::BadTree(_))
        ));
    }
}
