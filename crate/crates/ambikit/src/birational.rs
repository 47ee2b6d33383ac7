//! Birational parametrizations with certified rational inverses.
//!
//! A parametrized model comes with a forward map α from parameter space to
//! model space and — when the parametrization is generically injective — a
//! rational inverse β expressing the parameters back in terms of the model
//! coordinates.  Both maps have denominators, and the denominators are not
//! arbitrary: each side carries a finite list of polynomials (a localizing
//! monoid) that are nonvanishing on the region of interest, and every
//! denominator must factor into listed generators.
//!
//! Two operations make this pair useful:
//!
//! * **Inverse verification** ([`BirationalIso::verify_inverse`]): the
//!   compositions β∘α and α∘β are computed exactly; each component must
//!   equal the corresponding coordinate, either identically or modulo the
//!   stated relations that cut the domain out of its ambient space.
//! * **Fullness extension** ([`BirationalIso::extend_to_full`]): pulling a
//!   monoid generator from one side through to the other can expose a new
//!   polynomial factor in the numerator.  Closing both lists under these
//!   cofactors makes every generator of one monoid map to a unit times a
//!   monomial in the other's generators, which is what later saturation
//!   and sign-transport arguments rely on.  Over a polynomial ring a single
//!   pass in each direction over the starting generators reaches the
//!   closure — see [`BirationalIso::extend_to_full`] for why — so the pass
//!   runs once and marks the pair full; cofactors of degree above one are
//!   reported as warnings.
//!
//! Relations known on one side transfer to the other by pulling back along
//! the inverse map and clearing the (monoid) denominator; the numerator is
//! kept with its sign, so inequalities transport as well as equations.
//! Pullbacks along a map whose denominators factor over a known monoid are
//! reduced by trial division against that monoid instead of a generic gcd
//! ([`RationalMap::pullback_via`]); on the large intermediates produced by
//! composing parametrizations this is the difference between milliseconds
//! and intractability.

use std::fmt;
use std::sync::Arc;

use num::{BigRational, Signed};
use thiserror::Error;

use crate::fraction::{FactoredDenominator, FractionError, MonoidGens, RationalFunction};
use crate::groebner::{buchberger, Budget, GroebnerBasis, GroebnerError, IdealGens, TermOrder};
use crate::polyring::{same_table, PolyError, Polynomial, VarTable};

/// Errors from building and checking birational pairs.
#[derive(Debug, Error)]
pub enum BirationalError {
    /// A map needs one component per codomain variable.
    #[error("map has {got} components but the codomain has {expected} variables")]
    ComponentCount {
        /// Components supplied.
        got: usize,
        /// Codomain variables.
        expected: usize,
    },
    /// A composed component fails to reproduce its coordinate.
    #[error("{direction} composition does not fix {coordinate}: residual numerator {residual}")]
    NotInverse {
        /// Which composition failed.
        direction: Direction,
        /// The coordinate that is not reproduced.
        coordinate: String,
        /// The nonzero residual numerator after reduction by the relations.
        residual: Polynomial,
    },
    /// A composed component's denominator vanishes identically on the
    /// variety cut out by the relations, so the composition is undefined
    /// there.
    #[error("denominator of the composition at {coordinate} vanishes on the relation variety")]
    DegenerateDenominator {
        /// The affected coordinate.
        coordinate: String,
    },
    /// An underlying fraction operation failed.
    #[error(transparent)]
    Fraction(#[from] FractionError),
    /// An underlying basis computation failed.
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    /// An underlying polynomial operation failed.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which way a transfer or composition runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// From parameter space to model space (through the inverse map).
    ParamToModel,
    /// From model space to parameter space (through the forward map).
    ModelToParam,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::ParamToModel => write!(f, "parameter-to-model"),
            Direction::ModelToParam => write!(f, "model-to-parameter"),
        }
    }
}

/// A rational map between two variable tables: one rational function per
/// codomain variable, each written in the domain variables.
#[derive(Clone, Debug)]
pub struct RationalMap {
    domain: Arc<VarTable>,
    codomain: Arc<VarTable>,
    components: Vec<RationalFunction>,
}

impl RationalMap {
    /// Builds a map, checking arity and tables.
    pub fn new(
        domain: &Arc<VarTable>,
        codomain: &Arc<VarTable>,
        components: Vec<RationalFunction>,
    ) -> Result<Self, BirationalError> {
        if components.len() != codomain.len() {
            return Err(BirationalError::ComponentCount {
                got: components.len(),
                expected: codomain.len(),
            });
        }
        for c in &components {
            if !same_table(domain, c.vars()) {
                return Err(BirationalError::Poly(PolyError::TableMismatch));
            }
        }
        Ok(Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            components,
        })
    }

    /// The source variable table.
    pub fn domain(&self) -> &Arc<VarTable> {
        &self.domain
    }

    /// The target variable table.
    pub fn codomain(&self) -> &Arc<VarTable> {
        &self.codomain
    }

    /// The components, indexed like the codomain variables.
    pub fn components(&self) -> &[RationalFunction] {
        &self.components
    }

    /// Pulls a polynomial on the codomain back to a rational function on
    /// the domain by substituting the components.
    pub fn pullback(&self, p: &Polynomial) -> Result<RationalFunction, BirationalError> {
        if !same_table(&self.codomain, p.vars()) {
            return Err(BirationalError::Poly(PolyError::TableMismatch));
        }
        Ok(p.substitute(&self.components)?)
    }

    /// Pulls a polynomial back as in [`RationalMap::pullback`], but reduces
    /// the quotient by trial division over `monoid` — the monoid on this
    /// map's domain in which the component denominators live — instead of a
    /// generic gcd.  The common denominator of the substitution is a product
    /// of component denominators, so it always factors over that monoid.
    pub fn pullback_via(
        &self,
        p: &Polynomial,
        monoid: &MonoidGens,
    ) -> Result<RationalFunction, BirationalError> {
        if !same_table(&self.codomain, p.vars()) || !same_table(&self.domain, monoid.vars()) {
            return Err(BirationalError::Poly(PolyError::TableMismatch));
        }
        let (num, den) = p.substitute_parts(&self.components)?;
        Ok(RationalFunction::reduced_over(num, den, monoid)?)
    }

    /// Pulls a rational function on the codomain back to the domain.
    pub fn pullback_fraction(
        &self,
        f: &RationalFunction,
    ) -> Result<RationalFunction, BirationalError> {
        if !same_table(&self.codomain, f.vars()) {
            return Err(BirationalError::Poly(PolyError::TableMismatch));
        }
        Ok(f.substitute(&self.components)?)
    }

    /// The composition `self ∘ inner` as a map from `inner`'s domain.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap, BirationalError> {
        if !same_table(&self.domain, &inner.codomain) {
            return Err(BirationalError::Poly(PolyError::TableMismatch));
        }
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(&inner.components))
            .collect::<Result<Vec<_>, _>>()?;
        RationalMap::new(&inner.domain, &self.codomain, components)
    }

    /// Evaluates the map at a rational point of the domain.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<Vec<BigRational>, BirationalError> {
        self.components
            .iter()
            .map(|c| c.evaluate(point).map_err(BirationalError::from))
            .collect()
    }
}

/// The outcome of a successful inverse verification: whether each
/// composition reproduced the coordinates identically, or only after
/// reduction modulo the stated relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InverseVerification {
    /// β∘α fixed every parameter coordinate without using the relations.
    pub param_side_exact: bool,
    /// α∘β fixed every model coordinate without using the relations.
    pub model_side_exact: bool,
}

/// A relation carried across the parametrization: the exact pullback is
/// `unit * numerator / (monoid generator powers)`, and on the region where
/// the monoid is positive the numerator carries the relation's sign.
#[derive(Clone, Debug)]
pub struct TransferredRelation {
    /// The relation that was transferred, on its original side.
    pub source: Polynomial,
    /// Which way it was carried.
    pub direction: Direction,
    /// Scaled numerator of the pullback, coprime integer coefficients with
    /// the sign of the exact pullback preserved.
    pub numerator: Polynomial,
    /// The denominator as exponents of the target-side monoid generators,
    /// together with the rational unit relating the exact pullback to
    /// `numerator / denominator`.
    pub denominator: FactoredDenominator,
}

/// A parametrization α and its rational inverse β, together with the
/// localizing monoids on both sides and the relations cutting each domain
/// out of its ambient affine space.
#[derive(Clone, Debug)]
pub struct BirationalIso {
    alpha: RationalMap,
    beta: RationalMap,
    s_model: MonoidGens,
    sbar_param: MonoidGens,
    param_relations: Vec<Polynomial>,
    model_relations: Vec<Polynomial>,
    full: bool,
    warnings: Vec<String>,
}

impl BirationalIso {
    /// Assembles the pair, checking that the two maps connect the same two
    /// tables in opposite directions, that relations live on their stated
    /// sides, and that every component denominator factors over its side's
    /// monoid.
    pub fn new(
        alpha: RationalMap,
        beta: RationalMap,
        s_model: MonoidGens,
        sbar_param: MonoidGens,
        param_relations: Vec<Polynomial>,
        model_relations: Vec<Polynomial>,
    ) -> Result<Self, BirationalError> {
        if !same_table(alpha.domain(), beta.codomain())
            || !same_table(alpha.codomain(), beta.domain())
            || !same_table(s_model.vars(), alpha.codomain())
            || !same_table(sbar_param.vars(), alpha.domain())
        {
            return Err(BirationalError::Poly(PolyError::TableMismatch));
        }
        for r in &param_relations {
            if !same_table(r.vars(), alpha.domain()) {
                return Err(BirationalError::Poly(PolyError::TableMismatch));
            }
        }
        for r in &model_relations {
            if !same_table(r.vars(), alpha.codomain()) {
                return Err(BirationalError::Poly(PolyError::TableMismatch));
            }
        }
        for c in alpha.components() {
            c.factor_denominator(&sbar_param)?;
        }
        for c in beta.components() {
            c.factor_denominator(&s_model)?;
        }
        Ok(Self {
            alpha,
            beta,
            s_model,
            sbar_param,
            param_relations,
            model_relations,
            full: false,
            warnings: Vec::new(),
        })
    }

    /// The forward map, parameters to model coordinates.
    pub fn alpha(&self) -> &RationalMap {
        &self.alpha
    }

    /// The inverse map, model coordinates to parameters.
    pub fn beta(&self) -> &RationalMap {
        &self.beta
    }

    /// The model-side localizing monoid.
    pub fn s_model(&self) -> &MonoidGens {
        &self.s_model
    }

    /// The parameter-side localizing monoid.
    pub fn sbar_param(&self) -> &MonoidGens {
        &self.sbar_param
    }

    /// Relations cutting the parameter domain out of its ambient space.
    pub fn param_relations(&self) -> &[Polynomial] {
        &self.param_relations
    }

    /// Relations satisfied identically on the model side.
    pub fn model_relations(&self) -> &[Polynomial] {
        &self.model_relations
    }

    /// Whether both monoids are known to be full: every generator of one
    /// side maps to a unit of the other side's localization.
    pub fn is_full(&self) -> bool {
        self.full
    }

    /// Marks the pair full without running the extension pass.
    ///
    /// For builders that certify fullness structurally — for instance by
    /// checking both determinant identities `adj(M)·M = det(M)·I` exactly,
    /// which exhibits each side's single generator as mapping to the
    /// reciprocal of the other's.
    pub(crate) fn set_full(&mut self) {
        self.full = true;
    }

    /// Warnings accumulated by the extension and verification passes.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    fn relation_basis(
        vars: &Arc<VarTable>,
        relations: &[Polynomial],
        budget: &Budget,
    ) -> Result<Option<GroebnerBasis>, BirationalError> {
        if relations.is_empty() {
            return Ok(None);
        }
        let gens = IdealGens::new(vars, relations.iter().cloned())?;
        Ok(Some(buchberger(&gens, TermOrder::GrevLex, budget)?))
    }

    /// Verifies that β∘α and α∘β are the identity on their respective
    /// sides, allowing residuals that vanish modulo the stated relations.
    pub fn verify_inverse(&self, budget: &Budget) -> Result<InverseVerification, BirationalError> {
        let param_exact = Self::verify_side(
            &self.beta,
            &self.alpha,
            &self.sbar_param,
            &self.param_relations,
            Direction::ParamToModel,
            budget,
        )?;
        let model_exact = Self::verify_side(
            &self.alpha,
            &self.beta,
            &self.s_model,
            &self.model_relations,
            Direction::ModelToParam,
            budget,
        )?;
        Ok(InverseVerification {
            param_side_exact: param_exact,
            model_side_exact: model_exact,
        })
    }

    /// Composes one component of `outer` with `inner`, reducing over the
    /// monoid on `inner`'s domain when the denominator factors there and
    /// falling back to the generic gcd when it does not (which happens only
    /// for pairs whose monoids have not been extended to fullness).
    fn compose_component(
        outer_comp: &RationalFunction,
        inner: &RationalMap,
        monoid: &MonoidGens,
    ) -> Result<RationalFunction, BirationalError> {
        let (nn, nd) = outer_comp.numerator().substitute_parts(inner.components())?;
        let (num, den) = if outer_comp.denominator().is_one() {
            (nn, nd)
        } else {
            let (dn, dd) = outer_comp.denominator().substitute_parts(inner.components())?;
            (&nn * &dd, &nd * &dn)
        };
        match RationalFunction::reduced_over(num.clone(), den.clone(), monoid) {
            Ok(f) => Ok(f),
            Err(FractionError::DenominatorOutsideMonoid { .. }) => {
                Ok(RationalFunction::new(num, den)?)
            }
            Err(e) => Err(e.into()),
        }
    }

    /// Checks one composed endomorphism against the identity; returns
    /// whether it held without the relations.
    fn verify_side(
        outer: &RationalMap,
        inner: &RationalMap,
        monoid: &MonoidGens,
        relations: &[Polynomial],
        direction: Direction,
        budget: &Budget,
    ) -> Result<bool, BirationalError> {
        let vars = inner.domain().clone();
        let mut gb: Option<Option<GroebnerBasis>> = None;
        let mut exact = true;
        for (i, outer_comp) in outer.components().iter().enumerate() {
            let comp = Self::compose_component(outer_comp, inner, monoid)?;
            let coord = Polynomial::var(&vars, i);
            let residual = comp.numerator() - &(&coord * comp.denominator());
            if residual.is_zero() {
                continue;
            }
            exact = false;
            let basis = match &gb {
                Some(b) => b,
                None => {
                    gb = Some(Self::relation_basis(&vars, relations, budget)?);
                    gb.as_ref().unwrap()
                }
            };
            let name = vars.name(i).to_string();
            match basis {
                None => {
                    return Err(BirationalError::NotInverse {
                        direction,
                        coordinate: name,
                        residual: residual.primitive_signed(),
                    });
                }
                Some(basis) => {
                    let nf = basis.normal_form(&residual)?;
                    if !nf.is_zero() {
                        return Err(BirationalError::NotInverse {
                            direction,
                            coordinate: name,
                            residual: nf.primitive_signed(),
                        });
                    }
                    // A denominator inside the relation ideal would make the
                    // membership above vacuous.
                    if basis.contains(comp.denominator())? {
                        return Err(BirationalError::DegenerateDenominator { coordinate: name });
                    }
                }
            }
        }
        Ok(exact)
    }

    /// Closes both monoids under numerator cofactors of transferred
    /// generators: every parameter-side generator is pulled through β and
    /// every model-side generator through α, the numerator is divided by the
    /// known generators of the receiving side, and whatever nonunit factor
    /// remains is appended there.
    ///
    /// One pass in each direction, over snapshots of the starting lists,
    /// already reaches the closed lists.  The ambient rings are polynomial
    /// rings, where factorization is unique, so once the image of every
    /// *starting* generator is written as cofactor times known generators,
    /// the image of each *appended* cofactor is pinned down by the inverse
    /// identity: it divides a quotient of images of starting generators and
    /// is therefore a unit of the already-extended opposite localization.
    /// Nothing new can appear in a second pass, and the pair is marked full.
    /// Re-invocation on a full pair returns immediately.
    ///
    /// The argument needs the appended cofactors to be products of new
    /// irreducible factors; cofactors of degree above one, where that is not
    /// self-evident, are reported as warnings.
    pub fn extend_to_full(&mut self) -> Result<(), BirationalError> {
        if self.full {
            return Ok(());
        }
        let param_snapshot = self.sbar_param.gens().to_vec();
        let model_snapshot = self.s_model.gens().to_vec();
        Self::extend_one_side(
            &self.beta,
            &param_snapshot,
            &mut self.s_model,
            "model-side",
            &mut self.warnings,
        )?;
        Self::extend_one_side(
            &self.alpha,
            &model_snapshot,
            &mut self.sbar_param,
            "parameter-side",
            &mut self.warnings,
        )?;
        self.full = true;
        Ok(())
    }

    /// Carries the `source` generators through `map` and appends missing
    /// numerator cofactors to `target`.
    fn extend_one_side(
        map: &RationalMap,
        source: &[Polynomial],
        target: &mut MonoidGens,
        side: &str,
        warnings: &mut Vec<String>,
    ) -> Result<(), BirationalError> {
        for g in source {
            let pulled = map.pullback_via(g, target)?;
            if pulled.is_zero() {
                warnings.push(format!(
                    "generator {g} transfers to zero and was skipped by the extension"
                ));
                continue;
            }
            // Denominator canonicalization normalizes leading coefficients,
            // which can orient the stored pair negatively on the region
            // where the generators are positive; folding the factored unit
            // back into the numerator keeps every appended generator
            // positive there, like the original generators.
            let fd = pulled.factor_denominator(target)?;
            let mut num = pulled.numerator().clone();
            if fd.unit.is_negative() {
                num = num.negate();
            }
            let fac = target.factor(&num);
            if fac.cofactor.constant_value().is_some() {
                continue;
            }
            let degree = fac.cofactor.degree().unwrap_or(0);
            if target.push_unique(fac.cofactor.clone())? && degree > 1 {
                warnings.push(format!(
                    "fullness extension added the degree-{degree} cofactor {} to the {side} monoid",
                    fac.cofactor.primitive_signed()
                ));
            }
        }
        Ok(())
    }

    /// Transfers a relation across the parametrization.  Parameter-side
    /// relations are pulled back through β onto model coordinates; model
    /// relations through α onto parameters.  The result splits the exact
    /// pullback into a sign-preserving numerator and a factored monoid
    /// denominator.
    pub fn transfer(
        &self,
        relation: &Polynomial,
        direction: Direction,
    ) -> Result<TransferredRelation, BirationalError> {
        let (map, monoid) = match direction {
            Direction::ParamToModel => (&self.beta, &self.s_model),
            Direction::ModelToParam => (&self.alpha, &self.sbar_param),
        };
        let pulled = map.pullback_via(relation, monoid)?;
        let mut denominator = pulled.factor_denominator(monoid)?;
        let mut numerator = pulled.numerator().primitive_signed();
        // Keep the unit positive so the numerator alone carries the sign of
        // the pullback wherever the monoid generators are positive.
        if denominator.unit.is_negative() {
            numerator = numerator.negate();
            denominator.unit = -denominator.unit;
        }
        Ok(TransferredRelation {
            source: relation.clone(),
            direction,
            numerator,
            denominator,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: Polynomial, den: Polynomial) -> RationalFunction {
        RationalFunction::new(num, den).unwrap()
    }

    /// x = u/(1+u) with inverse u = x/(1-x): a bijection between the line
    /// minus {-1} and the line minus {1}.
    fn moebius() -> BirationalIso {
        let param = VarTable::new(["u"]).unwrap();
        let model = VarTable::new(["x"]).unwrap();
        let u = Polynomial::var(&param, 0);
        let x = Polynomial::var(&model, 0);
        let one_p = Polynomial::one(&param);
        let one_m = Polynomial::one(&model);
        let alpha = RationalMap::new(
            &param,
            &model,
            vec![rf(u.clone(), &one_p + &u)],
        )
        .unwrap();
        let beta = RationalMap::new(
            &model,
            &param,
            vec![rf(x.clone(), &one_m - &x)],
        )
        .unwrap();
        let s = MonoidGens::from_gens(&model, [&one_m - &x]).unwrap();
        let sbar = MonoidGens::from_gens(&param, [&one_p + &u]).unwrap();
        BirationalIso::new(alpha, beta, s, sbar, vec![], vec![]).unwrap()
    }

    #[test]
    fn moebius_pair_verifies_exactly_and_is_already_full() {
        let mut iso = moebius();
        let v = iso.verify_inverse(&Budget::unlimited()).unwrap();
        assert!(v.param_side_exact && v.model_side_exact);
        iso.extend_to_full().unwrap();
        assert!(iso.is_full());
        assert!(iso.warnings().is_empty());
        assert_eq!(iso.s_model().len(), 1);
        assert_eq!(iso.sbar_param().len(), 1);
    }

    #[test]
    fn extension_discovers_a_missing_parameter_side_generator() {
        // (a, b) -> (a, a*b) is polynomial, so the parameter monoid starts
        // empty; the inverse needs x, whose pullback through alpha is a.
        let param = VarTable::new(["a", "b"]).unwrap();
        let model = VarTable::new(["x", "y"]).unwrap();
        let a = Polynomial::var(&param, 0);
        let b = Polynomial::var(&param, 1);
        let x = Polynomial::var(&model, 0);
        let y = Polynomial::var(&model, 1);
        let alpha = RationalMap::new(
            &param,
            &model,
            vec![
                RationalFunction::from_poly(a.clone()),
                RationalFunction::from_poly(&a * &b),
            ],
        )
        .unwrap();
        let beta = RationalMap::new(
            &model,
            &param,
            vec![RationalFunction::from_poly(x.clone()), rf(y.clone(), x.clone())],
        )
        .unwrap();
        let s = MonoidGens::from_gens(&model, [x.clone()]).unwrap();
        let sbar = MonoidGens::new(&param);
        let mut iso = BirationalIso::new(alpha, beta, s, sbar, vec![], vec![]).unwrap();
        let v = iso.verify_inverse(&Budget::unlimited()).unwrap();
        assert!(v.param_side_exact && v.model_side_exact);
        iso.extend_to_full().unwrap();
        assert!(iso.is_full());
        assert_eq!(iso.sbar_param().gens(), &[a.clone()]);
        assert!(iso.warnings().is_empty(), "degree-1 cofactors are silent");
    }

    #[test]
    fn higher_degree_cofactors_are_warned_about() {
        // (a, b) -> (a, b*(a^2+1)): the inverse divides by x^2+1, whose
        // pullback has the quadratic numerator a^2+1.
        let param = VarTable::new(["a", "b"]).unwrap();
        let model = VarTable::new(["x", "y"]).unwrap();
        let a = Polynomial::var(&param, 0);
        let b = Polynomial::var(&param, 1);
        let x = Polynomial::var(&model, 0);
        let y = Polynomial::var(&model, 1);
        let a2p1 = &(&a * &a) + &Polynomial::one(&param);
        let x2p1 = &(&x * &x) + &Polynomial::one(&model);
        let alpha = RationalMap::new(
            &param,
            &model,
            vec![
                RationalFunction::from_poly(a.clone()),
                RationalFunction::from_poly(&b * &a2p1),
            ],
        )
        .unwrap();
        let beta = RationalMap::new(
            &model,
            &param,
            vec![
                RationalFunction::from_poly(x.clone()),
                rf(y.clone(), x2p1.clone()),
            ],
        )
        .unwrap();
        let s = MonoidGens::from_gens(&model, [x2p1]).unwrap();
        let sbar = MonoidGens::new(&param);
        let mut iso = BirationalIso::new(alpha, beta, s, sbar, vec![], vec![]).unwrap();
        iso.extend_to_full().unwrap();
        assert!(iso.is_full());
        assert_eq!(iso.sbar_param().gens(), &[a2p1]);
        assert_eq!(iso.warnings().len(), 1);
        assert!(iso.warnings()[0].contains("degree-2"));
    }

    #[test]
    fn inverse_verification_modulo_relations() {
        // alpha: t -> (t, t^2) onto the parabola; beta: (x, y) -> y/x.
        // alpha(beta(x, y)) = (y/x, y^2/x^2) equals (x, y) only modulo
        // y - x^2.
        let param = VarTable::new(["t"]).unwrap();
        let model = VarTable::new(["x", "y"]).unwrap();
        let t = Polynomial::var(&param, 0);
        let x = Polynomial::var(&model, 0);
        let y = Polynomial::var(&model, 1);
        let alpha = RationalMap::new(
            &param,
            &model,
            vec![
                RationalFunction::from_poly(t.clone()),
                RationalFunction::from_poly(&t * &t),
            ],
        )
        .unwrap();
        let beta = RationalMap::new(&model, &param, vec![rf(y.clone(), x.clone())]).unwrap();
        let s = MonoidGens::from_gens(&model, [x.clone()]).unwrap();
        let sbar = MonoidGens::new(&param);
        let relation = &y - &(&x * &x);
        let iso = BirationalIso::new(
            alpha,
            beta,
            s,
            sbar,
            vec![],
            vec![relation.clone()],
        )
        .unwrap();
        let v = iso.verify_inverse(&Budget::unlimited()).unwrap();
        assert!(v.param_side_exact);
        assert!(!v.model_side_exact);
    }

    #[test]
    fn wrong_inverse_is_rejected_with_residual() {
        let param = VarTable::new(["t"]).unwrap();
        let model = VarTable::new(["x"]).unwrap();
        let t = Polynomial::var(&param, 0);
        let x = Polynomial::var(&model, 0);
        // alpha: t -> t^2 is not injective; beta: x -> x cannot invert it.
        let alpha = RationalMap::new(
            &param,
            &model,
            vec![RationalFunction::from_poly(&t * &t)],
        )
        .unwrap();
        let beta =
            RationalMap::new(&model, &param, vec![RationalFunction::from_poly(x)]).unwrap();
        let iso = BirationalIso::new(
            alpha,
            beta,
            MonoidGens::new(&model),
            MonoidGens::new(&param),
            vec![],
            vec![],
        )
        .unwrap();
        match iso.verify_inverse(&Budget::unlimited()) {
            Err(BirationalError::NotInverse {
                direction: Direction::ParamToModel,
                coordinate,
                ..
            }) => assert_eq!(coordinate, "t"),
            other => panic!("expected inverse failure, got {other:?}"),
        }
    }

    #[test]
    fn transfer_clears_and_factors_the_denominator() {
        // With beta: (x, y) -> (x, y/x), the parameter relation b - 1
        // transfers to numerator y - x over denominator x.
        let param = VarTable::new(["a", "b"]).unwrap();
        let model = VarTable::new(["x", "y"]).unwrap();
        let a = Polynomial::var(&param, 0);
        let b = Polynomial::var(&param, 1);
        let x = Polynomial::var(&model, 0);
        let y = Polynomial::var(&model, 1);
        let alpha = RationalMap::new(
            &param,
            &model,
            vec![
                RationalFunction::from_poly(a.clone()),
                RationalFunction::from_poly(&a * &b),
            ],
        )
        .unwrap();
        let beta = RationalMap::new(
            &model,
            &param,
            vec![RationalFunction::from_poly(x.clone()), rf(y.clone(), x.clone())],
        )
        .unwrap();
        let s = MonoidGens::from_gens(&model, [x.clone()]).unwrap();
        let sbar = MonoidGens::from_gens(&param, [a.clone()]).unwrap();
        let iso = BirationalIso::new(alpha, beta, s, sbar, vec![], vec![]).unwrap();

        let one = Polynomial::one(&param);
        let t1 = iso
            .transfer(&(&b - &one), Direction::ParamToModel)
            .unwrap();
        assert_eq!(t1.numerator, &y - &x);
        assert_eq!(t1.denominator.exponents, vec![1]);

        // A polynomial transfer has an empty denominator.
        let t2 = iso
            .transfer(&(&a - &one), Direction::ParamToModel)
            .unwrap();
        assert_eq!(t2.numerator, &x - &Polynomial::one(&model));
        assert_eq!(t2.denominator.exponents, vec![0]);

        // Signs survive: -(b - 1) transfers to -(y - x).
        let t3 = iso
            .transfer(&(&one - &b), Direction::ParamToModel)
            .unwrap();
        assert_eq!(t3.numerator, &x - &y);
    }
}
