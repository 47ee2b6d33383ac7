//! Polynomial arithmetic, normal forms, exact division, and GCD.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::monomial::grevlex_cmp;
use super::{same_table, Monomial, PolyError, VarTable};

/// A sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are stored sorted descending under grevlex with no zero
/// coefficients, so `==` is exact polynomial equality.  Values are immutable;
/// all operations return fresh polynomials.
#[derive(Debug, Clone)]
pub struct Polynomial {
    vars: Arc<VarTable>,
    terms: Vec<(Monomial, BigRational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(vars: &Arc<VarTable>) -> Polynomial {
        Polynomial {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(vars: &Arc<VarTable>) -> Polynomial {
        Polynomial::constant(vars, BigRational::one())
    }

    pub fn constant(vars: &Arc<VarTable>, c: BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(vars);
        }
        Polynomial {
            vars: vars.clone(),
            terms: vec![(Monomial::one(vars.len()), c)],
        }
    }

    pub fn from_int(vars: &Arc<VarTable>, c: i64) -> Polynomial {
        Polynomial::constant(vars, BigRational::from_integer(BigInt::from(c)))
    }

    /// The variable at position `i`. Panics if out of range.
    pub fn var(vars: &Arc<VarTable>, i: usize) -> Polynomial {
        assert!(i < vars.len(), "variable index {i} out of range");
        Polynomial {
            vars: vars.clone(),
            terms: vec![(Monomial::var(vars.len(), i), BigRational::one())],
        }
    }

    /// The variable called `name`.
    pub fn var_named(vars: &Arc<VarTable>, name: &str) -> Result<Polynomial, PolyError> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::var(vars, i))
    }

    /// Builds a polynomial from arbitrary terms: merges duplicates, drops
    /// zeros, sorts canonically.
    pub fn from_terms(
        vars: &Arc<VarTable>,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Polynomial {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), vars.len());
            let entry = map.entry(m).or_insert_with(BigRational::zero);
            *entry += c;
        }
        let mut terms: Vec<(Monomial, BigRational)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse(); // BTreeMap iterates ascending; storage is descending
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 if self.terms[0].0.is_one() => Some(self.terms[0].1.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map_or(false, |c| c.is_one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree_in(var))
            .max()
            .unwrap_or(0)
    }

    /// True when the variable occurs.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.degree_in(var) > 0)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if !same_table(&self.vars, &other.vars) {
            return Err(PolyError::TableMismatch);
        }
        // Merge two descending-sorted term lists.
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match grevlex_cmp(ma.exps(), mb.exps()) {
                Ordering::Greater => {
                    terms.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        terms.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        for (m, c) in &other.terms[j..] {
            terms.push((m.clone(), c.clone()));
        }
        Ok(Polynomial {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if !same_table(&self.vars, &other.vars) {
            return Err(PolyError::TableMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.vars));
        }
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = map.entry(m).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        let mut terms: Vec<(Monomial, BigRational)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse();
        Ok(Polynomial {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn negate(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul_scalar(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| (mm.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at a full rational point (one value per variable).
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::AssignmentCount {
                got: point.len(),
                expected: self.vars.len(),
            });
        }
        // Memoize powers per variable up to the maximum needed exponent.
        let mut powers: Vec<Vec<BigRational>> = point
            .iter()
            .map(|_| vec![BigRational::one()])
            .collect();
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = &mut powers[i];
                while p.len() <= e as usize {
                    let next = p.last().unwrap() * &point[i];
                    p.push(next);
                }
                term *= &p[e as usize];
            }
            acc += term;
        }
        Ok(acc)
    }

    /// The positive rational `u` such that `self / u` has coprime integer
    /// coefficients.  Returns 1 for the zero polynomial.
    pub fn rational_content(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        BigRational::new(num_gcd, den_lcm)
    }

    /// Scales by a positive rational so coefficients become coprime integers;
    /// the sign of every value is preserved.
    pub fn primitive_signed(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let content = self.rational_content();
        self.mul_scalar(&content.recip())
    }

    /// The canonical associate: primitive over the integers with positive
    /// leading coefficient under grevlex.
    pub fn canonical(&self) -> Polynomial {
        let p = self.primitive_signed();
        match p.leading() {
            Some((_, c)) if c.is_negative() => p.negate(),
            _ => p,
        }
    }

    /// Canonical associate together with the unit `u` with
    /// `self = u * canonical`.
    pub fn canonical_with_unit(&self) -> (Polynomial, BigRational) {
        if self.is_zero() {
            return (self.clone(), BigRational::one());
        }
        let mut u = self.rational_content();
        let p = self.mul_scalar(&u.clone().recip());
        if p.leading().map_or(false, |(_, c)| c.is_negative()) {
            u = -u;
            (p.negate(), u)
        } else {
            (p, u)
        }
    }

    /// Primitive-signed terms with integer coefficients, plus the positive
    /// unit `u` with `self = u * terms`.
    pub fn primitive_integer_terms(&self) -> (Vec<(Monomial, BigInt)>, BigRational) {
        if self.is_zero() {
            return (Vec::new(), BigRational::one());
        }
        let u = self.rational_content();
        let inv = u.clone().recip();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let v = c * &inv;
                debug_assert!(v.denom().is_one());
                (m.clone(), v.numer().clone())
            })
            .collect();
        (terms, u)
    }

    /// Exact polynomial division: `Some(q)` with `self = q * d` when `d`
    /// divides `self`, else `None`.
    pub fn divide_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Polynomial::zero(&self.vars));
        }
        let (dm, dc) = d.leading().unwrap();
        let mut rem = self.clone();
        let mut quo: Vec<(Monomial, BigRational)> = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(dm)?;
            let c = rc / dc;
            rem = rem.try_add(&d.mul_monomial(&m).mul_scalar(&-c.clone())).unwrap();
            quo.push((m, c));
        }
        Some(Polynomial::from_terms(&self.vars, quo))
    }

    /// A deterministic total order on polynomials (used to sort generator
    /// lists): term-by-term grevlex then coefficient comparison.
    pub fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        for ((ma, ca), (mb, cb)) in self.terms.iter().zip(other.terms.iter()) {
            match grevlex_cmp(ma.exps(), mb.exps()) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match ca.cmp(cb) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    // --- Univariate views for the GCD machinery -------------------------

    /// Coefficient of `var^k` as a polynomial not involving `var`.
    pub fn coeff_in(&self, var: usize, k: u32) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree_in(var) == k)
            .map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                exps[var] = 0;
                (Monomial::from_exps(exps), c.clone())
            });
        Polynomial::from_terms(&self.vars, terms)
    }

    /// Leading coefficient with respect to `var`.
    pub fn lc_in(&self, var: usize) -> Polynomial {
        self.coeff_in(var, self.degree_in(var))
    }

    /// Content with respect to `var`: the GCD of all `var`-coefficients.
    fn cont_in(&self, var: usize) -> Polynomial {
        let mut acc = Polynomial::zero(&self.vars);
        for k in 0..=self.degree_in(var) {
            let c = self.coeff_in(var, k);
            if !c.is_zero() {
                acc = acc.gcd(&c);
                if acc.is_one() {
                    break;
                }
            }
        }
        acc
    }

    /// Pseudo-remainder of `self` by `d` with respect to `var`:
    /// `lc_d^(δ+1) * self ≡ prem (mod d)` where `δ = deg self − deg d`.
    fn prem(&self, d: &Polynomial, var: usize) -> Polynomial {
        let m = d.degree_in(var);
        debug_assert!(m > 0 || !d.is_zero());
        let lb = d.lc_in(var);
        let n = self.degree_in(var);
        if self.is_zero() || n < m {
            // prem is lb^(δ+1) * self with δ+1 = 0 steps; conventionally self.
            return self.clone();
        }
        let mut e = n - m + 1;
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var) >= m {
            let dr = r.degree_in(var);
            let lead = r.lc_in(var);
            let shift = Polynomial::var(&self.vars, var).pow(dr - m);
            // r := lb*r − lead * var^(dr−m) * d
            r = &(&lb * &r) - &(&(&lead * &shift) * d);
            e -= 1;
        }
        let scale = lb.pow(e);
        &scale * &r
    }

    /// Greatest common divisor, canonical (primitive over ℤ, positive
    /// leading coefficient under grevlex).  Uses recursive content/primitive
    /// reduction with a subresultant pseudo-remainder sequence in the lowest
    /// common variable.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        assert!(
            same_table(&self.vars, &other.vars),
            "gcd across different variable tables"
        );
        if self.is_zero() {
            return other.canonical();
        }
        if other.is_zero() {
            return self.canonical();
        }
        if self.constant_value().is_some() || other.constant_value().is_some() {
            return Polynomial::one(&self.vars);
        }
        // Lowest variable occurring in either operand.
        let x = (0..self.vars.len())
            .find(|&v| self.involves(v) || other.involves(v))
            .expect("nonconstant polynomial must involve a variable");
        if !self.involves(x) {
            return self.gcd(&other.cont_in(x));
        }
        if !other.involves(x) {
            return other.gcd(&self.cont_in(x));
        }
        let cont_a = self.cont_in(x);
        let cont_b = other.cont_in(x);
        let content = cont_a.gcd(&cont_b);
        let mut a = self.divide_exact(&cont_a).expect("content divides");
        let mut b = other.divide_exact(&cont_b).expect("content divides");
        if a.degree_in(x) < b.degree_in(x) {
            std::mem::swap(&mut a, &mut b);
        }
        let mut g = Polynomial::one(&self.vars);
        let mut h = Polynomial::one(&self.vars);
        loop {
            let delta = a.degree_in(x) - b.degree_in(x);
            let r = a.prem(&b, x);
            if r.is_zero() {
                break;
            }
            if r.degree_in(x) == 0 {
                // The x-primitive parts are coprime.
                b = Polynomial::one(&self.vars);
                break;
            }
            a = b;
            let div = &g * &h.pow(delta);
            b = r.divide_exact(&div).expect("subresultant division is exact");
            g = a.lc_in(x);
            h = if delta == 0 {
                h
            } else {
                g.pow(delta)
                    .divide_exact(&h.pow(delta - 1))
                    .expect("subresultant h-update is exact")
            };
        }
        let pp = if b.is_one() {
            b
        } else {
            let cont = b.cont_in(x);
            b.divide_exact(&cont).expect("content divides")
        };
        (&content * &pp).canonical()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl $trait for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$inner(rhs).expect("variable table mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Mul, mul, try_mul);

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(&rhs.negate()).expect("variable table mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Arc<VarTable> {
        VarTable::new(["x", "y", "z"]).unwrap()
    }

    fn x(v: &Arc<VarTable>) -> Polynomial {
        Polynomial::var(v, 0)
    }
    fn y(v: &Arc<VarTable>) -> Polynomial {
        Polynomial::var(v, 1)
    }

    #[test]
    fn add_cancellation() {
        let v = ring();
        let (x, y) = (x(&v), y(&v));
        let s = &(&x + &y) + &(&x - &y);
        assert_eq!(s, x.mul_scalar(&BigRational::from_integer(2.into())));
        let z = &x.pow(2) + &x.pow(2).negate();
        assert!(z.is_zero());
    }

    #[test]
    fn identities() {
        let v = ring();
        let p = &x(&v).pow(2) + &y(&v);
        assert_eq!(&p + &Polynomial::zero(&v), p);
        assert_eq!(&p * &Polynomial::one(&v), p);
        assert!((&p * &Polynomial::zero(&v)).is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let v = ring();
        let (x, y) = (x(&v), y(&v));
        let prod = &(&x - &y) * &(&x + &y);
        assert_eq!(prod, &x.pow(2) - &y.pow(2));
    }

    #[test]
    fn degree_additivity() {
        let v = ring();
        let p = &x(&v).pow(3) + &y(&v);
        let q = &y(&v).pow(2) + &Polynomial::one(&v);
        let d = (&p * &q).degree().unwrap();
        assert_eq!(d, p.degree().unwrap() + q.degree().unwrap());
    }

    #[test]
    fn evaluate_simple() {
        let v = ring();
        let p = &x(&v).pow(2) + &y(&v);
        let r = |n: i64| BigRational::from_integer(n.into());
        let val = p.evaluate(&[r(2), r(3), r(0)]).unwrap();
        assert_eq!(val, r(7));
        assert!(Polynomial::zero(&v).evaluate(&[r(1), r(1), r(1)]).unwrap().is_zero());
    }

    #[test]
    fn exact_division() {
        let v = ring();
        let (x, y) = (x(&v), y(&v));
        let p = &x.pow(2) - &y.pow(2);
        let q = p.divide_exact(&(&x - &y)).unwrap();
        assert_eq!(q, &x + &y);
        assert!(p.divide_exact(&(&x + &Polynomial::one(&v))).is_none());
    }

    #[test]
    fn canonical_normalization() {
        let v = ring();
        let p = x(&v).mul_scalar(&BigRational::new(6.into(), 4.into()));
        let c = p.canonical();
        assert_eq!(c, x(&v));
        let n = x(&v).mul_scalar(&BigRational::from_integer((-3).into()));
        assert_eq!(n.canonical(), x(&v));
        assert_eq!(n.primitive_signed(), x(&v).negate());
        let (cc, u) = n.canonical_with_unit();
        assert_eq!(&cc.mul_scalar(&u), &n);
    }

    #[test]
    fn gcd_basic() {
        let v = ring();
        let (x, y) = (x(&v), y(&v));
        let g = (&x.pow(2) - &y.pow(2)).gcd(&(&x - &y));
        assert_eq!(g, &x - &y);
        // gcd(6x, 4x^2) = x after primitive normalization.
        let a = x.mul_scalar(&BigRational::from_integer(6.into()));
        let b = x.pow(2).mul_scalar(&BigRational::from_integer(4.into()));
        assert_eq!(a.gcd(&b), x);
        // gcd with zero normalizes.
        let z = Polynomial::zero(&v);
        let p = (&x + &y).mul_scalar(&BigRational::from_integer((-2).into()));
        assert_eq!(p.gcd(&z), &x + &y);
    }

    #[test]
    fn gcd_with_common_factor() {
        let v = ring();
        let (x, y) = (x(&v), y(&v));
        let g = &x + &y.pow(2);
        let p = &(&x - &y) * &g;
        let q = &(&x + &Polynomial::one(&v)) * &g;
        let d = p.gcd(&q);
        assert_eq!(d, g.canonical());
        assert!(p.divide_exact(&d).is_some());
        assert!(q.divide_exact(&d).is_some());
    }
}
