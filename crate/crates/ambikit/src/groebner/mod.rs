//! Gröbner bases, elimination, and saturation.
//!
//! The vanishing ideal of a rationally parametrized model is computed here
//! not by eliminating parameters but by *saturating*: the ideal generated by
//! the numerators of transferred constraints is closed under division by the
//! polynomials known to be invertible on the model (the localizing monoid).
//! Saturation by a single polynomial `f` uses the classical auxiliary
//! variable: append `t`, add the generator `1 - t*f`, and intersect with the
//! subring not involving `t` via a block elimination order.  Saturation by a
//! finitely generated monoid folds this over the generators in listed order;
//! since saturating by `f` and then by `g` yields exactly the saturation by
//! `f*g`, a single pass over the list reaches the fixed point.
//!
//! All computations are deterministic: bases are reduced, scaled to coprime
//! integer coefficients with positive leading coefficient in the active
//! order, and sorted by ascending leading monomial, so equal ideals produce
//! identical bases.  Long-running computations accept a [`Budget`] and fail
//! with [`GroebnerError::Cancelled`] when it expires.

mod engine;

use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num::{BigRational, One};
use thiserror::Error;

use crate::polyring::{same_table, Monomial, PolyError, Polynomial, VarTable};

pub(crate) use engine::{epoly_from_polynomial, terms_to_polynomial, EPoly};

/// Monomial orders available to the basis engine.
///
/// `Block { split }` compares the first `split` variables as a graded
/// reverse-lexicographic block before the remaining variables; a basis in
/// this order intersects the ideal with the subring of the second block,
/// which is how elimination is implemented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermOrder {
    /// Graded reverse lexicographic over all variables.
    GrevLex,
    /// Pure lexicographic, leftmost variable most significant.
    Lex,
    /// Two graded reverse lexicographic blocks; the first block dominates.
    Block {
        /// Number of leading variables forming the dominant block.
        split: usize,
    },
}

/// A cooperative limit on basis computations: a wall-clock deadline, an
/// external cancellation flag, or both.  Checked between reduction steps.
#[derive(Clone, Default)]
pub struct Budget {
    deadline: Option<Instant>,
    cancel: Option<Arc<AtomicBool>>,
}

impl Budget {
    /// No limit.
    pub fn unlimited() -> Self {
        Self::default()
    }

    /// Expires after `d` from now.
    pub fn with_deadline(d: Duration) -> Self {
        Self {
            deadline: Some(Instant::now() + d),
            cancel: None,
        }
    }

    /// Expires when `flag` becomes true.
    pub fn with_cancel(flag: Arc<AtomicBool>) -> Self {
        Self {
            deadline: None,
            cancel: Some(flag),
        }
    }

    /// Adds a deadline to an existing budget.
    pub fn and_deadline(mut self, at: Instant) -> Self {
        self.deadline = Some(at);
        self
    }

    /// Fails if the deadline passed or the flag is set.
    pub fn check(&self) -> Result<(), GroebnerError> {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return Err(GroebnerError::Cancelled);
            }
        }
        if let Some(f) = &self.cancel {
            if f.load(AtomicOrdering::Relaxed) {
                return Err(GroebnerError::Cancelled);
            }
        }
        Ok(())
    }
}

/// Errors from basis computations.
#[derive(Debug, Error)]
pub enum GroebnerError {
    /// The budget expired before the computation finished.
    #[error("basis computation cancelled by deadline or flag")]
    Cancelled,
    /// Saturation by the zero polynomial is the whole ring; refused.
    #[error("cannot saturate by the zero polynomial")]
    SaturationByZero,
    /// A variable index passed to elimination is out of range.
    #[error("variable index {index} out of range for table of size {size}")]
    BadVariable {
        /// The offending index.
        index: usize,
        /// Number of variables in the table.
        size: usize,
    },
    /// An underlying polynomial operation failed.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A generating set for an ideal: polynomials over one shared table, zero
/// generators dropped.
#[derive(Clone, Debug)]
pub struct IdealGens {
    vars: Arc<VarTable>,
    gens: Vec<Polynomial>,
}

impl IdealGens {
    /// Builds a generating set, checking tables and dropping zeros.
    pub fn new<I>(vars: &Arc<VarTable>, gens: I) -> Result<Self, GroebnerError>
    where
        I: IntoIterator<Item = Polynomial>,
    {
        let mut kept = Vec::new();
        for g in gens {
            if !same_table(vars, g.vars()) {
                return Err(GroebnerError::Poly(PolyError::TableMismatch));
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(Self {
            vars: vars.clone(),
            gens: kept,
        })
    }

    /// The shared variable table.
    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    /// The stored generators.
    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Whether the set generates the zero ideal.
    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }
}

/// A reduced Gröbner basis in a fixed order.
///
/// The basis vector is sorted by ascending leading monomial; every element
/// has coprime integer coefficients and positive leading coefficient in the
/// active order.  Equal ideals under the same order therefore yield equal
/// basis vectors.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: Arc<VarTable>,
    order: TermOrder,
    basis: Vec<Polynomial>,
    engine: Vec<EPoly>,
}

impl GroebnerBasis {
    /// The variable table.
    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    /// The active term order.
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    /// The reduced basis, ascending by leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// Whether this is the unit ideal (basis `{1}`).
    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].degree() == Some(0)
    }

    /// The exact remainder of `p` modulo the basis: no term of the result is
    /// divisible by any leading monomial, and `p - normal_form(p)` lies in
    /// the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if !same_table(&self.vars, p.vars()) {
            return Err(GroebnerError::Poly(PolyError::TableMismatch));
        }
        if p.is_zero() || self.engine.is_empty() {
            return Ok(p.clone());
        }
        let (terms, unit) = p.primitive_integer_terms();
        let sorted = engine::sorted_terms(&self.order, terms);
        let nf = engine::reduce_full(
            &self.order,
            sorted,
            unit,
            &self.engine,
            None,
            &Budget::unlimited(),
        )?;
        Ok(terms_to_polynomial(&self.vars, &nf.terms, &nf.scale))
    }

    /// Whether `p` lies in the ideal.
    pub fn contains(&self, p: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Whether every generator of `other` lies in this ideal.
    pub fn contains_ideal(&self, other: &IdealGens) -> Result<bool, GroebnerError> {
        for g in other.gens() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The basis as a generating set.
    pub fn to_ideal_gens(&self) -> IdealGens {
        IdealGens {
            vars: self.vars.clone(),
            gens: self.basis.clone(),
        }
    }
}

/// Computes the reduced Gröbner basis of the ideal in the given order.
pub fn buchberger(
    gens: &IdealGens,
    order: TermOrder,
    budget: &Budget,
) -> Result<GroebnerBasis, GroebnerError> {
    let input: Vec<EPoly> = gens
        .gens
        .iter()
        .filter_map(|p| epoly_from_polynomial(&order, p))
        .collect();
    let engine = engine::buchberger_engine(&order, input, budget)?;
    let basis = engine
        .iter()
        .map(|ep| terms_to_polynomial(&gens.vars, &ep.terms, &BigRational::one()))
        .collect();
    Ok(GroebnerBasis {
        vars: gens.vars.clone(),
        order,
        basis,
        engine,
    })
}

/// Eliminates the variables at `drop` and returns generators of the
/// intersection with the subring of the remaining variables, over a fresh
/// table holding the remaining variables in their original relative order.
pub fn eliminate(
    gens: &IdealGens,
    drop: &[usize],
    budget: &Budget,
) -> Result<IdealGens, GroebnerError> {
    let n = gens.vars.len();
    let mut dropped: Vec<usize> = drop.to_vec();
    dropped.sort_unstable();
    dropped.dedup();
    if let Some(&bad) = dropped.iter().find(|&&i| i >= n) {
        return Err(GroebnerError::BadVariable {
            index: bad,
            size: n,
        });
    }
    let kept: Vec<usize> = (0..n).filter(|i| !dropped.contains(i)).collect();
    let split = dropped.len();

    // Permuted table: dropped variables first, kept variables after.
    let perm: Vec<usize> = dropped.iter().chain(kept.iter()).copied().collect();
    let perm_names: Vec<&str> = perm.iter().map(|&i| gens.vars.name(i)).collect();
    let perm_table = VarTable::new(perm_names)?;
    let permuted: Vec<Polynomial> = gens
        .gens
        .iter()
        .map(|p| remap(p, &perm_table, |exps| perm.iter().map(|&i| exps[i]).collect()))
        .collect();

    let permuted_gens = IdealGens::new(&perm_table, permuted)?;
    let gb = buchberger(&permuted_gens, TermOrder::Block { split }, budget)?;

    let kept_names: Vec<&str> = kept.iter().map(|&i| gens.vars.name(i)).collect();
    let kept_table = VarTable::new(kept_names)?;
    let mut out = Vec::new();
    for p in gb.basis() {
        if (0..split).all(|i| p.degree_in(i) == 0) {
            out.push(remap(p, &kept_table, |exps| exps[split..].to_vec()));
        }
    }
    IdealGens::new(&kept_table, out)
}

/// Rebuilds a polynomial over another table by transforming each exponent
/// vector.
fn remap<F>(p: &Polynomial, table: &Arc<VarTable>, f: F) -> Polynomial
where
    F: Fn(&[u32]) -> Vec<u32>,
{
    let terms: Vec<(Monomial, BigRational)> = p
        .terms()
        .iter()
        .map(|(m, c)| (Monomial::from_exps(f(m.exps())), c.clone()))
        .collect();
    Polynomial::from_terms(table, terms)
}

/// Fresh auxiliary variable name not present in the table.
fn fresh_name(vars: &VarTable) -> String {
    if vars.index_of("t").is_none() {
        return "t".to_string();
    }
    let mut k = 0usize;
    loop {
        let name = format!("t{k}");
        if vars.index_of(&name).is_none() {
            return name;
        }
        k += 1;
    }
}

/// The saturation of the ideal by all powers of `f`: every polynomial `p`
/// such that `f^k * p` lies in the ideal for some `k`.  The result lives
/// over the same table and its generators form a reduced graded
/// reverse-lexicographic Gröbner basis.
pub fn saturate(
    gens: &IdealGens,
    f: &Polynomial,
    budget: &Budget,
) -> Result<IdealGens, GroebnerError> {
    if !same_table(&gens.vars, f.vars()) {
        return Err(GroebnerError::Poly(PolyError::TableMismatch));
    }
    if f.is_zero() {
        return Err(GroebnerError::SaturationByZero);
    }
    if f.constant_value().is_some() {
        // Units change nothing: return the reduced basis of the input.
        let gb = buchberger(gens, TermOrder::GrevLex, budget)?;
        return Ok(gb.to_ideal_gens());
    }

    // Extended table [t, x_1, .., x_n] with the auxiliary variable first so
    // a split-1 block order eliminates it.
    let t_name = fresh_name(&gens.vars);
    let mut names: Vec<String> = vec![t_name];
    names.extend(gens.vars.names().iter().cloned());
    let ext = VarTable::new(names)?;

    let lift = |p: &Polynomial| -> Polynomial {
        remap(p, &ext, |exps| {
            let mut v = Vec::with_capacity(exps.len() + 1);
            v.push(0);
            v.extend_from_slice(exps);
            v
        })
    };
    let mut ext_gens: Vec<Polynomial> = gens.gens.iter().map(&lift).collect();
    let t = Polynomial::var(&ext, 0);
    ext_gens.push(&Polynomial::one(&ext) - &(&t * &lift(f)));

    let ext_ideal = IdealGens::new(&ext, ext_gens)?;
    let gb = buchberger(&ext_ideal, TermOrder::Block { split: 1 }, budget)?;

    let mut out = Vec::new();
    for p in gb.basis() {
        if p.degree_in(0) == 0 {
            out.push(remap(p, &gens.vars, |exps| exps[1..].to_vec()));
        }
    }
    IdealGens::new(&gens.vars, out)
}

/// The saturation of the ideal by the multiplicative monoid generated by
/// the listed polynomials, computed by folding single saturations over the
/// generators in listed order.  One pass reaches the fixed point because
/// saturating by `f` and then `g` equals saturating by `f*g`.
pub fn saturate_monoid(
    gens: &IdealGens,
    monoid: &crate::fraction::MonoidGens,
    budget: &Budget,
) -> Result<IdealGens, GroebnerError> {
    if !same_table(&gens.vars, monoid.vars()) {
        return Err(GroebnerError::Poly(PolyError::TableMismatch));
    }
    if monoid.is_empty() {
        let gb = buchberger(gens, TermOrder::GrevLex, budget)?;
        return Ok(gb.to_ideal_gens());
    }
    let mut current = gens.clone();
    for f in monoid.iter() {
        current = saturate(&current, f, budget)?;
    }
    Ok(current)
}

/// Whether two generating sets over the same table span the same ideal,
/// decided by comparing reduced graded reverse-lexicographic bases.
pub fn ideal_equal(
    a: &IdealGens,
    b: &IdealGens,
    budget: &Budget,
) -> Result<bool, GroebnerError> {
    if !same_table(&a.vars, &b.vars) {
        return Err(GroebnerError::Poly(PolyError::TableMismatch));
    }
    let ga = buchberger(a, TermOrder::GrevLex, budget)?;
    let gb = buchberger(b, TermOrder::GrevLex, budget)?;
    Ok(ga.basis() == gb.basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars2() -> Arc<VarTable> {
        VarTable::new(["x", "y"]).unwrap()
    }

    #[test]
    fn known_basis_under_lex() {
        // {x^2 - y, y - 1} has reduced lex basis {x^2 - 1, y - 1}.
        let vars = vars2();
        let x = Polynomial::var(&vars, 0);
        let y = Polynomial::var(&vars, 1);
        let one = Polynomial::one(&vars);
        let gens =
            IdealGens::new(&vars, [&(&x * &x) - &y, &y - &one]).unwrap();
        let gb = buchberger(&gens, TermOrder::Lex, &Budget::unlimited()).unwrap();
        let expected = vec![&y - &one, &(&x * &x) - &one];
        assert_eq!(gb.basis(), &expected[..]);
        // Membership: x^4 - 1 = (x^2-1)(x^2+1).
        let p = &(&x * &x) * &(&x * &x);
        assert!(gb.contains(&(&p - &one)).unwrap());
        assert!(!gb.contains(&x).unwrap());
    }

    #[test]
    fn normal_form_is_exact_for_rational_input() {
        let vars = vars2();
        let x = Polynomial::var(&vars, 0);
        let y = Polynomial::var(&vars, 1);
        let gens = IdealGens::new(&vars, [&(&x * &x) - &y]).unwrap();
        let gb = buchberger(&gens, TermOrder::GrevLex, &Budget::unlimited()).unwrap();
        // (1/2) x^2 y + 3 reduces to (1/2) y^2 + 3.
        let p = &(&(&x * &x) * &y).mul_scalar(&BigRational::new(1.into(), 2.into()))
            + &Polynomial::from_int(&vars, 3);
        let nf = gb.normal_form(&p).unwrap();
        let expected = &(&y * &y).mul_scalar(&BigRational::new(1.into(), 2.into()))
            + &Polynomial::from_int(&vars, 3);
        assert_eq!(nf, expected);
        // The difference is in the ideal.
        assert!(gb.contains(&(&p - &nf)).unwrap());
    }

    #[test]
    fn unit_ideal_is_detected() {
        let vars = vars2();
        let x = Polynomial::var(&vars, 0);
        let one = Polynomial::one(&vars);
        let gens = IdealGens::new(&vars, [x.clone(), &x - &one]).unwrap();
        let gb = buchberger(&gens, TermOrder::GrevLex, &Budget::unlimited()).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.basis().len(), 1);
        assert!(gb.basis()[0].is_one());
    }

    #[test]
    fn zero_ideal_passes_through() {
        let vars = vars2();
        let gens = IdealGens::new(&vars, []).unwrap();
        let gb = buchberger(&gens, TermOrder::GrevLex, &Budget::unlimited()).unwrap();
        assert!(gb.basis().is_empty());
        let x = Polynomial::var(&vars, 0);
        assert_eq!(gb.normal_form(&x).unwrap(), x);
    }

    #[test]
    fn elimination_of_a_parametrized_curve() {
        // x -> (x, x^2): eliminate x from {y - x^2} joined with nothing
        // gives the zero ideal; from {y - x^2, z - x^3} it gives y^3 - z^2.
        let vars = VarTable::new(["x", "y", "z"]).unwrap();
        let x = Polynomial::var(&vars, 0);
        let y = Polynomial::var(&vars, 1);
        let z = Polynomial::var(&vars, 2);
        let gens = IdealGens::new(&vars, [&y - &(&x * &x), &z - &(&(&x * &x) * &x)]).unwrap();
        let eliminated = eliminate(&gens, &[0], &Budget::unlimited()).unwrap();
        assert_eq!(eliminated.vars().names(), &["y", "z"]);
        let yv = Polynomial::var(eliminated.vars(), 0);
        let zv = Polynomial::var(eliminated.vars(), 1);
        let rel = &yv.pow(3) - &zv.pow(2);
        let gb = buchberger(&eliminated, TermOrder::GrevLex, &Budget::unlimited()).unwrap();
        assert!(gb.contains(&rel).unwrap());
        let back = IdealGens::new(eliminated.vars(), [rel]).unwrap();
        assert!(ideal_equal(&eliminated, &back, &Budget::unlimited()).unwrap());
    }

    #[test]
    fn saturation_strips_a_multiplied_variable() {
        // <x*y> : x^inf = <y>, and <x^2, x*y> : x^inf = <x, y>.
        let vars = vars2();
        let x = Polynomial::var(&vars, 0);
        let y = Polynomial::var(&vars, 1);
        let i1 = IdealGens::new(&vars, [&x * &y]).unwrap();
        let s1 = saturate(&i1, &x, &Budget::unlimited()).unwrap();
        let want1 = IdealGens::new(&vars, [y.clone()]).unwrap();
        assert!(ideal_equal(&s1, &want1, &Budget::unlimited()).unwrap());

        // x^2 itself lies in <x^2, x*y>, so that saturation is everything.
        let i2 = IdealGens::new(&vars, [&x * &x, &x * &y]).unwrap();
        let s2 = saturate(&i2, &x, &Budget::unlimited()).unwrap();
        let gb2 = buchberger(&s2, TermOrder::GrevLex, &Budget::unlimited()).unwrap();
        assert!(gb2.is_unit_ideal());

        // <x^2*y, x*y^2> : x^inf = <y>.
        let i3 = IdealGens::new(&vars, [&(&x * &x) * &y, &(&x * &y) * &y]).unwrap();
        let s3 = saturate(&i3, &x, &Budget::unlimited()).unwrap();
        let want3 = IdealGens::new(&vars, [y.clone()]).unwrap();
        assert!(ideal_equal(&s3, &want3, &Budget::unlimited()).unwrap());
    }

    #[test]
    fn saturation_by_zero_is_refused_and_units_are_no_ops() {
        let vars = vars2();
        let x = Polynomial::var(&vars, 0);
        let i = IdealGens::new(&vars, [x.clone()]).unwrap();
        assert!(matches!(
            saturate(&i, &Polynomial::zero(&vars), &Budget::unlimited()),
            Err(GroebnerError::SaturationByZero)
        ));
        let s = saturate(&i, &Polynomial::from_int(&vars, 7), &Budget::unlimited()).unwrap();
        assert!(ideal_equal(&s, &i, &Budget::unlimited()).unwrap());
    }

    #[test]
    fn ideal_equality_is_basis_independent() {
        let vars = vars2();
        let x = Polynomial::var(&vars, 0);
        let y = Polynomial::var(&vars, 1);
        let a = IdealGens::new(&vars, [x.clone(), y.clone()]).unwrap();
        let b = IdealGens::new(&vars, [&x + &y, &x - &y]).unwrap();
        assert!(ideal_equal(&a, &b, &Budget::unlimited()).unwrap());
        let c = IdealGens::new(&vars, [&x * &x]).unwrap();
        let d = IdealGens::new(&vars, [x.clone()]).unwrap();
        assert!(!ideal_equal(&c, &d, &Budget::unlimited()).unwrap());
    }

    #[test]
    fn cancellation_fires_on_a_preset_flag() {
        let vars = vars2();
        let x = Polynomial::var(&vars, 0);
        let y = Polynomial::var(&vars, 1);
        let flag = Arc::new(AtomicBool::new(true));
        let budget = Budget::with_cancel(flag);
        let gens = IdealGens::new(&vars, [&(&x * &x) - &y, &(&y * &y) - &x]).unwrap();
        assert!(matches!(
            buchberger(&gens, TermOrder::GrevLex, &budget),
            Err(GroebnerError::Cancelled)
        ));
    }
}
