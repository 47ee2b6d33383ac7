//! Rational functions and multiplicatively closed generator sets.
//!
//! A rational parametrization is built from quotients of polynomials, and the
//! denominators that appear are not arbitrary: they are products of a fixed
//! finite list of polynomials (principal minors, marginal sums, …) that are
//! known to be nonzero — typically strictly positive — on the region of
//! interest.  This module provides the two corresponding building blocks:
//!
//! * [`RationalFunction`], a fraction of polynomials kept in a unique reduced
//!   form (numerator and denominator coprime, denominator primitive over the
//!   integers with positive leading coefficient), and
//! * [`MonoidGens`], an ordered list of polynomial generators closed under the
//!   multiplicative monoid they span, with associate-aware deduplication and
//!   trial-division factorization of candidate members.
//!
//! Substitution of rational functions into polynomials — the workhorse of
//! composing a parametrization with candidate constraints — is implemented
//! here over a single common denominator so that only one gcd reduction is
//! performed per substitution.  When the denominator is known to lie in a
//! listed monoid even that gcd is avoidable: [`RationalFunction::reduced_over`]
//! cancels by trial division against the generators, which stays cheap on the
//! very large intermediates that composed parametrizations produce.

use std::fmt;
use std::sync::Arc;

use num::{BigRational, Signed, Zero};
use thiserror::Error;

use crate::polyring::{same_table, PolyError, Polynomial, VarTable};

/// Errors from rational-function arithmetic and monoid factorization.
#[derive(Debug, Error)]
pub enum FractionError {
    /// A quotient with zero denominator was requested.
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// Evaluation hit a zero of the denominator.
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    /// A zero polynomial was offered as a monoid generator.
    #[error("the zero polynomial cannot generate a multiplicative monoid")]
    ZeroGenerator,
    /// A denominator could not be written as a product of the listed
    /// generators; the unexplained factor is reported.
    #[error("denominator has a factor outside the monoid: {cofactor}")]
    DenominatorOutsideMonoid {
        /// The part of the denominator left over after dividing out every
        /// listed generator as often as possible.
        cofactor: Polynomial,
    },
    /// An underlying polynomial operation failed.
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A quotient of polynomials in a unique reduced representation.
///
/// Invariants maintained by every constructor and operation:
///
/// * numerator and denominator share the same variable table;
/// * the denominator is nonzero, primitive over the integers, and has
///   positive leading coefficient under the graded reverse lexicographic
///   order (all rational scaling is carried by the numerator);
/// * numerator and denominator have no common factor;
/// * the zero function is stored as `0/1`.
///
/// Equality of reduced representations therefore coincides with equality of
/// the rational functions themselves.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds `num/den` and reduces to the canonical representation.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, FractionError> {
        if den.is_zero() {
            return Err(FractionError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self {
                num: Polynomial::zero(num.vars()),
                den: Polynomial::one(den.vars()),
            });
        }
        let g = num.gcd(&den);
        let num = num.divide_exact(&g).expect("gcd divides numerator");
        let den = den.divide_exact(&g).expect("gcd divides denominator");
        let (den, unit) = den.canonical_with_unit();
        let num = num.mul_scalar(&unit.recip());
        Ok(Self { num, den })
    }

    /// Builds `num/den` for a denominator that lies in the monoid spanned by
    /// `gens`, cancelling by trial division instead of a generic gcd.
    ///
    /// The denominator is factored over the generator list; a nonconstant
    /// leftover is reported as [`FractionError::DenominatorOutsideMonoid`].
    /// Each generator is then divided out of the numerator as often as it
    /// occurs in the denominator, and the denominator is rebuilt from the
    /// surviving generator powers.  For pairwise non-associate irreducible
    /// generators — the situation for every denominator monoid built here —
    /// the result is fully reduced and agrees with [`RationalFunction::new`],
    /// at a cost linear in the factorization instead of a multivariate gcd on
    /// polynomials that can have thousands of terms.
    pub fn reduced_over(
        num: Polynomial,
        den: Polynomial,
        gens: &MonoidGens,
    ) -> Result<Self, FractionError> {
        if den.is_zero() {
            return Err(FractionError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self {
                num: Polynomial::zero(num.vars()),
                den: Polynomial::one(den.vars()),
            });
        }
        let f = gens.factor(&den);
        if f.cofactor.constant_value().is_none() {
            return Err(FractionError::DenominatorOutsideMonoid {
                cofactor: f.cofactor,
            });
        }
        let mut exponents = f.exponents;
        let mut num = num;
        for (i, g) in gens.iter().enumerate() {
            while exponents[i] > 0 {
                match num.divide_exact(g) {
                    Some(q) => {
                        num = q;
                        exponents[i] -= 1;
                    }
                    None => break,
                }
            }
        }
        let mut den = f.cofactor;
        for (i, g) in gens.iter().enumerate() {
            if exponents[i] > 0 {
                den = &den * &g.pow(exponents[i]);
            }
        }
        let (den, unit) = den.canonical_with_unit();
        let num = num.mul_scalar(&unit.recip());
        Ok(Self { num, den })
    }

    /// The polynomial `p` viewed as a rational function `p/1`.
    pub fn from_poly(p: Polynomial) -> Self {
        let one = Polynomial::one(p.vars());
        Self { num: p, den: one }
    }

    /// The zero function over `vars`.
    pub fn zero(vars: &Arc<VarTable>) -> Self {
        Self::from_poly(Polynomial::zero(vars))
    }

    /// The constant function `1` over `vars`.
    pub fn one(vars: &Arc<VarTable>) -> Self {
        Self::from_poly(Polynomial::one(vars))
    }

    /// A constant function over `vars`.
    pub fn constant(vars: &Arc<VarTable>, value: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(vars, value))
    }

    /// The reduced numerator.
    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// The reduced denominator (primitive, positive leading coefficient).
    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    /// The variable table both parts live over.
    pub fn vars(&self) -> &Arc<VarTable> {
        self.num.vars()
    }

    /// Whether this is the zero function.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether the reduced denominator is `1`.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The constant value, if both parts are constants.
    pub fn as_constant(&self) -> Option<BigRational> {
        match (self.num.constant_value(), self.den.constant_value()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    /// Checked division; fails on a zero divisor.
    pub fn checked_div(&self, other: &Self) -> Result<Self, FractionError> {
        if other.is_zero() {
            return Err(FractionError::DivisionByZero);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// The reciprocal; fails on the zero function.
    pub fn recip(&self) -> Result<Self, FractionError> {
        if self.is_zero() {
            return Err(FractionError::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Evaluates at a rational point; a vanishing denominator is a pole.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, FractionError> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(FractionError::PoleAtPoint);
        }
        Ok(self.num.evaluate(point)? / d)
    }

    /// Substitutes one rational function per variable of this function's
    /// table, producing a rational function over the images' table.
    pub fn substitute(&self, images: &[RationalFunction]) -> Result<Self, FractionError> {
        let n = self.num.substitute(images)?;
        let d = self.den.substitute(images)?;
        n.checked_div(&d)
    }

    /// Writes the denominator as a product of monoid generators: returns the
    /// exponent of each listed generator together with the constant that
    /// remains.  Fails if a nonconstant factor cannot be explained.
    pub fn factor_denominator(
        &self,
        gens: &MonoidGens,
    ) -> Result<FactoredDenominator, FractionError> {
        let f = gens.factor(&self.den);
        match f.cofactor.constant_value() {
            Some(unit) => Ok(FactoredDenominator {
                exponents: f.exponents,
                unit,
            }),
            None => Err(FractionError::DenominatorOutsideMonoid {
                cofactor: f.cofactor,
            }),
        }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num_simple = self.num.num_terms() <= 1;
        let den_simple = self.den.num_terms() <= 1 && self.den.degree() == Some(1);
        if num_simple {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        if den_simple {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

macro_rules! fraction_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                RationalFunction::$method(self, rhs)
            }
        }
    };
}

impl RationalFunction {
    fn add(&self, rhs: &Self) -> Self {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }

    fn sub(&self, rhs: &Self) -> Self {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        Self::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

fraction_binop!(Add, add);
fraction_binop!(Sub, sub);
fraction_binop!(Mul, mul);

impl std::ops::Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: self.num.negate(),
            den: self.den.clone(),
        }
    }
}

/// The outcome of trial division of a polynomial by a generator list:
/// `p = cofactor * prod(gens[i] ^ exponents[i])` exactly.
#[derive(Clone, Debug)]
pub struct MonoidFactorization {
    /// Exponent per listed generator, in the generators' listed order.
    pub exponents: Vec<u32>,
    /// What remains once no listed generator divides any longer.
    pub cofactor: Polynomial,
}

/// A factored denominator: exponents per listed generator and the leftover
/// rational constant, so that `den = unit * prod(gens[i] ^ exponents[i])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredDenominator {
    /// Exponent per listed generator, in the generators' listed order.
    pub exponents: Vec<u32>,
    /// The constant left after dividing out all generator powers.
    pub unit: BigRational,
}

/// An ordered list of generators for a multiplicative monoid of polynomials.
///
/// Generators are stored scaled to coprime integer coefficients with their
/// sign preserved — a generator supplied as a negated form (for instance the
/// negative of a matrix entry that is itself negative on the region of
/// interest) stays negated.  Two generators that differ only by a nonzero
/// rational factor are associates and are treated as the same generator:
/// pushing an associate of an existing generator is a no-op.  Constants are
/// units of the coefficient field and are likewise ignored.
///
/// Listed order is preserved and meaningful: trial-division factorization
/// processes generators in this order, and downstream saturation folds over
/// the list in this order.
#[derive(Clone, Debug)]
pub struct MonoidGens {
    vars: Arc<VarTable>,
    gens: Vec<Polynomial>,
}

impl MonoidGens {
    /// An empty generator list over `vars` (the monoid of units).
    pub fn new(vars: &Arc<VarTable>) -> Self {
        Self {
            vars: vars.clone(),
            gens: Vec::new(),
        }
    }

    /// Builds a list from the given generators, deduplicating associates and
    /// dropping constants.  Zero generators are rejected.
    pub fn from_gens<I>(vars: &Arc<VarTable>, gens: I) -> Result<Self, FractionError>
    where
        I: IntoIterator<Item = Polynomial>,
    {
        let mut out = Self::new(vars);
        for g in gens {
            out.push_unique(g)?;
        }
        Ok(out)
    }

    /// The variable table the generators live over.
    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    /// The stored generators, in listed order.
    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Number of stored generators.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    /// Whether no generator is stored.
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Iterates over the stored generators in listed order.
    pub fn iter(&self) -> std::slice::Iter<'_, Polynomial> {
        self.gens.iter()
    }

    /// Appends a generator unless an associate is already listed.  Returns
    /// whether the list grew.  Constants are units and are never stored; a
    /// zero generator is an error.
    pub fn push_unique(&mut self, g: Polynomial) -> Result<bool, FractionError> {
        if g.is_zero() {
            return Err(FractionError::ZeroGenerator);
        }
        if g.constant_value().is_some() {
            return Ok(false);
        }
        let stored = g.primitive_signed();
        let canon = stored.canonical();
        if self.gens.iter().any(|h| h.canonical() == canon) {
            return Ok(false);
        }
        self.gens.push(stored);
        Ok(true)
    }

    /// Whether an associate of `p` is already listed.
    pub fn contains_associate(&self, p: &Polynomial) -> bool {
        let canon = p.canonical();
        self.gens.iter().any(|h| h.canonical() == canon)
    }

    /// Divides each listed generator out of `p` as often as possible, in
    /// listed order, repeating passes until no generator divides.  The
    /// result satisfies `p = cofactor * prod(gens[i] ^ exponents[i])`.
    /// A constant cofactor certifies membership of `p` in the monoid
    /// generated by the list together with the nonzero constants.
    ///
    /// When generators share irreducible factors the greedy order can miss a
    /// representation that a different split would find; the generator lists
    /// arising from model denominators consist of pairwise non-associate
    /// irreducible polynomials, for which greedy division is complete.
    pub fn factor(&self, p: &Polynomial) -> MonoidFactorization {
        let mut exponents = vec![0u32; self.gens.len()];
        let mut cofactor = p.clone();
        if p.is_zero() {
            return MonoidFactorization { exponents, cofactor };
        }
        loop {
            let mut progress = false;
            for (i, g) in self.gens.iter().enumerate() {
                while let Some(q) = cofactor.divide_exact(g) {
                    cofactor = q;
                    exponents[i] += 1;
                    progress = true;
                }
            }
            if !progress {
                return MonoidFactorization { exponents, cofactor };
            }
        }
    }

    /// Evaluates every generator at `point` and checks that all values are
    /// strictly positive; returns the index of the first violation.
    pub fn all_positive_at(&self, point: &[BigRational]) -> Result<Option<usize>, FractionError> {
        for (i, g) in self.gens.iter().enumerate() {
            if !g.evaluate(point)?.is_positive() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

impl Polynomial {
    /// Substitutes one rational function per variable, producing a rational
    /// function over the images' common variable table.
    ///
    /// All images are brought over a single common denominator
    /// `D = prod(den_i ^ E_i)`, where `E_i` is the largest exponent of
    /// variable `i` in any term, so that only one gcd reduction runs at the
    /// end regardless of the number of terms.
    pub fn substitute(&self, images: &[RationalFunction]) -> Result<RationalFunction, FractionError> {
        let (num, den) = self.substitute_parts(images)?;
        RationalFunction::new(num, den)
    }

    /// Substitution as in [`Polynomial::substitute`], but returning the raw
    /// numerator and common denominator without any gcd reduction.
    ///
    /// The generic gcd can be prohibitively expensive on the large
    /// intermediate polynomials produced by composing parametrizations; when
    /// the denominator is known to lie in a monoid with listed generators,
    /// [`RationalFunction::reduced_over`] cancels by trial division instead.
    pub fn substitute_parts(
        &self,
        images: &[RationalFunction],
    ) -> Result<(Polynomial, Polynomial), FractionError> {
        if images.len() != self.vars().len() || images.is_empty() {
            return Err(FractionError::Poly(PolyError::AssignmentCount {
                got: images.len(),
                expected: self.vars().len(),
            }));
        }
        let target = images[0].vars();
        for im in images {
            if !same_table(target, im.vars()) {
                return Err(FractionError::Poly(PolyError::TableMismatch));
            }
        }
        if self.is_zero() {
            return Ok((Polynomial::zero(target), Polynomial::one(target)));
        }

        let n = self.vars().len();
        let mut max_exp = vec![0u32; n];
        for (m, _) in self.terms() {
            for i in 0..n {
                max_exp[i] = max_exp[i].max(m.degree_in(i));
            }
        }

        // Power tables: num_pows[i][k] = num_i^k for k = 0..=E_i, likewise
        // for denominators.
        let one = Polynomial::one(target);
        let mut num_pows: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
        let mut den_pows: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
        for i in 0..n {
            let e = max_exp[i] as usize;
            let mut np = Vec::with_capacity(e + 1);
            let mut dp = Vec::with_capacity(e + 1);
            np.push(one.clone());
            dp.push(one.clone());
            for k in 1..=e {
                np.push(&np[k - 1] * images[i].numerator());
                dp.push(&dp[k - 1] * images[i].denominator());
            }
            num_pows.push(np);
            den_pows.push(dp);
        }

        let mut numerator = Polynomial::zero(target);
        for (m, c) in self.terms() {
            let mut contrib = Polynomial::constant(target, c.clone());
            for i in 0..n {
                let e = m.degree_in(i) as usize;
                if e > 0 {
                    contrib = &contrib * &num_pows[i][e];
                }
                let pad = max_exp[i] as usize - e;
                if pad > 0 {
                    contrib = &contrib * &den_pows[i][pad];
                }
            }
            numerator = &numerator + &contrib;
        }
        let mut denominator = one;
        for (i, dp) in den_pows.iter().enumerate() {
            let e = max_exp[i] as usize;
            if e > 0 {
                denominator = &denominator * &dp[e];
            }
        }
        Ok((numerator, denominator))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::VarTable;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn setup() -> (Arc<VarTable>, Polynomial, Polynomial) {
        let vars = VarTable::new(["x", "y"]).unwrap();
        let x = Polynomial::var(&vars, 0);
        let y = Polynomial::var(&vars, 1);
        (vars, x, y)
    }

    #[test]
    fn construction_reduces_and_normalizes_signs() {
        let (_, x, y) = setup();
        // (x^2 - y^2)/(x - y) reduces to the polynomial x + y.
        let f = RationalFunction::new(&(&x * &x) - &(&y * &y), &x - &y).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.numerator(), &(&x + &y));
        // A negative denominator moves its sign into the numerator.
        let g = RationalFunction::new(x.clone(), y.negate()).unwrap();
        assert_eq!(g.numerator(), &x.negate());
        assert_eq!(g.denominator(), &y);
        // Rational content of the denominator is folded into the numerator.
        let h = RationalFunction::new(x.clone(), y.mul_scalar(&q(2))).unwrap();
        assert_eq!(h.denominator(), &y);
        assert_eq!(h.numerator(), &x.mul_scalar(&BigRational::new(1.into(), 2.into())));
    }

    #[test]
    fn zero_denominator_is_rejected() {
        let (vars, x, _) = setup();
        assert!(matches!(
            RationalFunction::new(x, Polynomial::zero(&vars)),
            Err(FractionError::DivisionByZero)
        ));
    }

    #[test]
    fn field_arithmetic() {
        let (vars, x, y) = setup();
        let fx = RationalFunction::new(Polynomial::one(&vars), x.clone()).unwrap();
        let fy = RationalFunction::new(Polynomial::one(&vars), y.clone()).unwrap();
        // 1/x + 1/y = (x + y)/(x*y)
        let sum = &fx + &fy;
        assert_eq!(sum.numerator(), &(&x + &y));
        assert_eq!(sum.denominator(), &(&x * &y));
        // (x/y)*(y/x) = 1
        let a = RationalFunction::new(x.clone(), y.clone()).unwrap();
        let b = RationalFunction::new(y.clone(), x.clone()).unwrap();
        let prod = &a * &b;
        assert!(prod.is_polynomial());
        assert!(prod.numerator().is_one());
        // a - a = 0, stored as 0/1.
        let diff = &a - &a;
        assert!(diff.is_zero());
        assert!(diff.denominator().is_one());
        // Division by zero is a checked error.
        let zero = RationalFunction::zero(&vars);
        assert!(matches!(
            a.checked_div(&zero),
            Err(FractionError::DivisionByZero)
        ));
        assert_eq!(a.checked_div(&b).unwrap(), &a * &b.recip().unwrap());
    }

    #[test]
    fn evaluation_and_poles() {
        let (vars, x, y) = setup();
        let f = RationalFunction::new(&x + &y, x.clone()).unwrap();
        assert_eq!(f.evaluate(&[q(1), q(2)]).unwrap(), q(3));
        assert!(matches!(
            f.evaluate(&[q(0), q(2)]),
            Err(FractionError::PoleAtPoint)
        ));
        let _ = vars;
    }

    #[test]
    fn substitute_uses_common_denominator_and_reduces_once() {
        let (_, x, y) = setup();
        let tvars = VarTable::new(["t"]).unwrap();
        let t = Polynomial::var(&tvars, 0);
        let inv_t = RationalFunction::new(Polynomial::one(&tvars), t.clone()).unwrap();
        let t_rf = RationalFunction::from_poly(t.clone());
        // (x^2 + y) with x -> 1/t, y -> t gives (1 + t^3)/t^2.
        let p = &(&x * &x) + &y;
        let img = p.substitute(&[inv_t.clone(), t_rf.clone()]).unwrap();
        let expected = RationalFunction::new(
            &Polynomial::one(&tvars) + &t.pow(3),
            t.pow(2),
        )
        .unwrap();
        assert_eq!(img, expected);
        // Numeric cross-check at t = 2: 1/4 + 2 = 9/4.
        assert_eq!(img.evaluate(&[q(2)]).unwrap(), BigRational::new(9.into(), 4.into()));
        // Arity mismatch is reported.
        assert!(p.substitute(&[inv_t]).is_err());
    }

    #[test]
    fn substitute_on_rational_function() {
        let (_, x, y) = setup();
        let tvars = VarTable::new(["t"]).unwrap();
        let t = Polynomial::var(&tvars, 0);
        // f = x/y with x -> t^2, y -> t yields t.
        let f = RationalFunction::new(x, y).unwrap();
        let img = f
            .substitute(&[
                RationalFunction::from_poly(t.pow(2)),
                RationalFunction::from_poly(t.clone()),
            ])
            .unwrap();
        assert_eq!(img, RationalFunction::from_poly(t));
    }

    #[test]
    fn monoid_dedup_is_associate_aware_and_sign_preserving() {
        let (vars, x, y) = setup();
        let mut gens = MonoidGens::new(&vars);
        assert!(gens.push_unique(x.clone()).unwrap());
        // 2x and -x are associates of x: not stored again.
        assert!(!gens.push_unique(x.mul_scalar(&q(2))).unwrap());
        assert!(!gens.push_unique(x.negate()).unwrap());
        assert_eq!(gens.len(), 1);
        // A generator supplied negated keeps its sign in storage.
        assert!(gens.push_unique(y.negate()).unwrap());
        assert_eq!(gens.gens()[1], y.negate());
        assert!(gens.contains_associate(&y));
        // Constants are units: ignored.  Zero is rejected.
        assert!(!gens.push_unique(Polynomial::constant(&vars, q(5))).unwrap());
        assert!(matches!(
            gens.push_unique(Polynomial::zero(&vars)),
            Err(FractionError::ZeroGenerator)
        ));
    }

    #[test]
    fn factor_denominator_over_monoid() {
        let (vars, x, y) = setup();
        let gens = MonoidGens::from_gens(&vars, [x.clone(), y.clone()]).unwrap();
        // 1/(2 x^2 y): exponents (2, 1), unit 2.
        let f = RationalFunction::new(
            Polynomial::one(&vars),
            (&(&x * &x) * &y).mul_scalar(&q(2)),
        )
        .unwrap();
        let fd = f.factor_denominator(&gens).unwrap();
        // The reduced denominator is primitive, so the unit is 1 and the
        // rational content 1/2 lives in the numerator.
        assert_eq!(fd.exponents, vec![2, 1]);
        assert_eq!(fd.unit, q(1));
        // A denominator with a factor outside the list is reported with the
        // unexplained cofactor.
        let only_x = MonoidGens::from_gens(&vars, [x.clone()]).unwrap();
        match f.factor_denominator(&only_x) {
            Err(FractionError::DenominatorOutsideMonoid { cofactor }) => {
                assert_eq!(cofactor, y);
            }
            other => panic!("expected outside-monoid error, got {other:?}"),
        }
    }

    #[test]
    fn factorization_recombines_exactly() {
        let (vars, x, y) = setup();
        let s = &x + &y;
        let gens = MonoidGens::from_gens(&vars, [x.clone(), s.clone()]).unwrap();
        let p = &(&x.pow(2) * &s.pow(3)) * &y; // y stays as cofactor
        let f = gens.factor(&p);
        assert_eq!(f.exponents, vec![2, 3]);
        let mut rebuilt = f.cofactor.clone();
        for (g, e) in gens.iter().zip(&f.exponents) {
            rebuilt = &rebuilt * &g.pow(*e);
        }
        assert_eq!(rebuilt, p);
        assert_eq!(f.cofactor, y);
    }

    #[test]
    fn positivity_scan_reports_first_violation() {
        let (vars, x, y) = setup();
        let gens = MonoidGens::from_gens(&vars, [x.clone(), &x + &y]).unwrap();
        assert_eq!(gens.all_positive_at(&[q(1), q(1)]).unwrap(), None);
        assert_eq!(gens.all_positive_at(&[q(1), q(-1)]).unwrap(), Some(1));
        assert_eq!(gens.all_positive_at(&[q(-1), q(3)]).unwrap(), Some(0));
        let _ = (vars, y);
    }

    #[test]
    fn reduced_over_matches_generic_reduction() {
        let (vars, x, y) = setup();
        let s = &x + &y;
        let gens = MonoidGens::from_gens(&vars, [x.clone(), s.clone()]).unwrap();
        // (x^2 * (x+y) * (x - y)) / (2 x^3 (x+y)^2) reduces to
        // (x - y) / (2 x (x+y)).
        let num = (&(&x.pow(2) * &s) * &(&x - &y)).clone();
        let den = (&x.pow(3) * &s.pow(2)).mul_scalar(&q(2));
        let fast = RationalFunction::reduced_over(num.clone(), den.clone(), &gens).unwrap();
        let slow = RationalFunction::new(num, den).unwrap();
        assert_eq!(fast, slow);
        assert_eq!(fast.denominator(), &(&x * &s));
        // A denominator outside the monoid is reported with its cofactor.
        match RationalFunction::reduced_over(x.clone(), y.clone(), &gens) {
            Err(FractionError::DenominatorOutsideMonoid { cofactor }) => {
                assert_eq!(cofactor, y);
            }
            other => panic!("expected outside-monoid error, got {other:?}"),
        }
        // Zero numerator collapses to the canonical zero without factoring.
        let z = RationalFunction::reduced_over(Polynomial::zero(&vars), x.clone(), &gens).unwrap();
        assert!(z.is_zero());
        assert!(z.denominator().is_one());
    }

    #[test]
    fn substitute_parts_returns_unreduced_pair() {
        let (_, x, y) = setup();
        let tvars = VarTable::new(["t"]).unwrap();
        let t = Polynomial::var(&tvars, 0);
        let inv_t = RationalFunction::new(Polynomial::one(&tvars), t.clone()).unwrap();
        // x*y with x -> 1/t, y -> 1/t: raw parts are 1 and t^2, and the
        // quotient of the parts equals the reduced substitution.
        let p = &x * &y;
        let (num, den) = p.substitute_parts(&[inv_t.clone(), inv_t.clone()]).unwrap();
        assert_eq!(den, t.pow(2));
        assert!(num.is_one());
        let reduced = RationalFunction::new(num, den).unwrap();
        assert_eq!(reduced, p.substitute(&[inv_t.clone(), inv_t]).unwrap());
    }
}
