//! The integer-arithmetic core of the basis computation.
//!
//! All reductions here are fraction free: a reduction step cross-multiplies
//! by cofactors of the two leading coefficients instead of dividing, so
//! coefficients stay integers throughout.  Periodic content stripping keeps
//! them small.  An exact rational scaling factor is threaded through every
//! normal-form computation so callers can recover the true remainder, not
//! just its associate class.
//!
//! Pair management follows the Gebauer–Möller refinement of Buchberger's
//! algorithm: when a new element joins the basis, new pairs are pruned by the
//! lcm-divisibility and coprimality criteria and old pairs by the chain
//! criterion.  Pair selection is the normal strategy — smallest lcm in the
//! active order, ties broken by index — implemented with an ordered set keyed
//! by an order-encoding of the lcm, which makes runs bit-reproducible.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::polyring::{grevlex_cmp, lex_cmp, Monomial, Polynomial};

use super::{Budget, GroebnerError, TermOrder};

impl TermOrder {
    /// Compares two exponent vectors in this order.
    pub fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::GrevLex => grevlex_cmp(a, b),
            TermOrder::Lex => lex_cmp(a, b),
            TermOrder::Block { split } => grevlex_cmp(&a[..*split], &b[..*split])
                .then_with(|| grevlex_cmp(&a[*split..], &b[*split..])),
        }
    }

    /// Compares two monomials in this order.
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_exps(a.exps(), b.exps())
    }

    /// Encodes an exponent vector as a key whose ascending lexicographic
    /// order over `u32` agrees with this term order.
    pub(crate) fn sort_key(&self, exps: &[u32]) -> Vec<u32> {
        match self {
            TermOrder::GrevLex => {
                let mut key = Vec::with_capacity(exps.len() + 1);
                key.push(exps.iter().sum());
                key.extend(exps.iter().rev().map(|e| u32::MAX - e));
                key
            }
            TermOrder::Lex => exps.to_vec(),
            TermOrder::Block { split } => {
                let mut key = TermOrder::GrevLex.sort_key(&exps[..*split]);
                key.extend(TermOrder::GrevLex.sort_key(&exps[*split..]));
                key
            }
        }
    }
}

/// A term: monomial and nonzero integer coefficient.
pub(crate) type ETerm = (Monomial, BigInt);

/// An integer polynomial with terms sorted ascending in the active order;
/// the leading term is last.  Basis elements are additionally kept with
/// coprime coefficients and positive leading coefficient.
#[derive(Clone, Debug)]
pub(crate) struct EPoly {
    pub terms: Vec<ETerm>,
}

impl EPoly {
    pub fn lead(&self) -> (&Monomial, &BigInt) {
        let (m, c) = self.terms.last().expect("engine polynomials are nonzero");
        (m, c)
    }
}

/// Converts a rational polynomial into engine form under `order`, dropping
/// the scalar (engine basis elements are scale free).  `None` for zero.
pub(crate) fn epoly_from_polynomial(order: &TermOrder, p: &Polynomial) -> Option<EPoly> {
    if p.is_zero() {
        return None;
    }
    let (terms, _unit) = p.primitive_integer_terms();
    Some(epoly_from_terms(order, terms))
}

/// Sorts integer terms ascending under `order` and normalizes the sign so
/// the leading coefficient is positive.
pub(crate) fn epoly_from_terms(order: &TermOrder, terms: Vec<ETerm>) -> EPoly {
    let mut p = EPoly {
        terms: sorted_terms(order, terms),
    };
    normalize(&mut p);
    p
}

/// Sorts integer terms ascending under `order` without rescaling or sign
/// changes, for value-exact reductions.
pub(crate) fn sorted_terms(order: &TermOrder, mut terms: Vec<ETerm>) -> Vec<ETerm> {
    terms.sort_by(|a, b| order.cmp_mono(&a.0, &b.0));
    terms
}

/// Converts engine terms back into a rational polynomial.
pub(crate) fn terms_to_polynomial(
    vars: &std::sync::Arc<crate::polyring::VarTable>,
    terms: &[ETerm],
    scale: &BigRational,
) -> Polynomial {
    let rat_terms: Vec<(Monomial, BigRational)> = terms
        .iter()
        .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()) * scale))
        .collect();
    Polynomial::from_terms(vars, rat_terms)
}

/// Positive gcd of all coefficients; zero for an empty list.
fn content(terms: &[ETerm]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Strips content and forces a positive leading coefficient.
fn normalize(p: &mut EPoly) {
    let c = content(&p.terms);
    if !c.is_one() && !c.is_zero() {
        for (_, coeff) in &mut p.terms {
            *coeff = &*coeff / &c;
        }
    }
    if p.terms.last().map_or(false, |(_, c)| c.is_negative()) {
        for (_, coeff) in &mut p.terms {
            *coeff = -&*coeff;
        }
    }
}

/// Computes `a*(u*f) + b*(v*g)` by merging the two ascending term lists.
/// Either multiplier monomial may be `None` for the trivial one.
fn lin_comb(
    order: &TermOrder,
    a: &BigInt,
    u: Option<&Monomial>,
    f: &[ETerm],
    b: &BigInt,
    v: Option<&Monomial>,
    g: &[ETerm],
) -> Vec<ETerm> {
    let shift = |m: &Monomial, w: Option<&Monomial>| match w {
        Some(w) => w.mul(m),
        None => m.clone(),
    };
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    while i < f.len() || j < g.len() {
        if i == f.len() {
            let m = shift(&g[j].0, v);
            let c = b * &g[j].1;
            if !c.is_zero() {
                out.push((m, c));
            }
            j += 1;
            continue;
        }
        if j == g.len() {
            let m = shift(&f[i].0, u);
            let c = a * &f[i].1;
            if !c.is_zero() {
                out.push((m, c));
            }
            i += 1;
            continue;
        }
        let mf = shift(&f[i].0, u);
        let mg = shift(&g[j].0, v);
        match order.cmp_mono(&mf, &mg) {
            Ordering::Less => {
                let c = a * &f[i].1;
                if !c.is_zero() {
                    out.push((mf, c));
                }
                i += 1;
            }
            Ordering::Greater => {
                let c = b * &g[j].1;
                if !c.is_zero() {
                    out.push((mg, c));
                }
                j += 1;
            }
            Ordering::Equal => {
                let c = a * &f[i].1 + b * &g[j].1;
                if !c.is_zero() {
                    out.push((mf, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// The fraction-free s-polynomial of two normalized basis elements.
fn s_poly(order: &TermOrder, f: &EPoly, g: &EPoly) -> Vec<ETerm> {
    let (lmf, lcf) = f.lead();
    let (lmg, lcg) = g.lead();
    let l = lmf.lcm(lmg);
    let uf = l.div(lmf).expect("lcm divisible by lead");
    let ug = l.div(lmg).expect("lcm divisible by lead");
    let d = lcf.gcd(lcg);
    let a = lcg / &d;
    let b = -(lcf / &d);
    lin_comb(order, &a, Some(&uf), &f.terms, &b, Some(&ug), &g.terms)
}

/// The index of the reducer with the smallest leading monomial dividing
/// `lm`, skipping `skip`; `None` when no lead divides.
fn find_reducer(
    order: &TermOrder,
    basis: &[EPoly],
    skip: Option<usize>,
    lm: &Monomial,
) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, g) in basis.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let (glm, _) = g.lead();
        if glm.divides(lm) {
            match best {
                None => best = Some(i),
                Some(b) => {
                    if order.cmp_mono(glm, basis[b].lead().0) == Ordering::Less {
                        best = Some(i);
                    }
                }
            }
        }
    }
    best
}

/// A remainder together with the exact rational scale: the true value of the
/// normal form is `scale * terms`.
pub(crate) struct NormalForm {
    pub terms: Vec<ETerm>,
    pub scale: BigRational,
}

/// Fully reduces `input` (ascending order, true value `scale * input`)
/// modulo the basis, leaving no term divisible by any leading monomial.
/// `skip` excludes one basis index from acting as a reducer.
pub(crate) fn reduce_full(
    order: &TermOrder,
    mut rest: Vec<ETerm>,
    mut scale: BigRational,
    basis: &[EPoly],
    skip: Option<usize>,
    budget: &Budget,
) -> Result<NormalForm, GroebnerError> {
    let mut done: Vec<ETerm> = Vec::new();
    let mut steps = 0usize;
    while let Some((lm, lc)) = rest.last() {
        match find_reducer(order, basis, skip, lm) {
            None => {
                let t = rest.pop().expect("nonempty");
                done.push(t);
            }
            Some(gi) => {
                let g = &basis[gi];
                let (glm, glc) = g.lead();
                let u = lm.div(glm).expect("divisibility checked");
                let d = lc.gcd(glc);
                let a = glc / &d; // positive: basis leads are positive
                let b = -(lc / &d);
                rest = lin_comb(order, &a, None, &rest, &b, Some(&u), &g.terms);
                debug_assert!(rest.last().map_or(true, |(m, _)| {
                    order.cmp_mono(m, &u.mul(glm)) == Ordering::Less
                }));
                if !a.is_one() {
                    for (_, c) in &mut done {
                        *c = &*c * &a;
                    }
                    scale /= BigRational::from_integer(a);
                }
                steps += 1;
                if steps % 8 == 0 {
                    let mut c = content(&done);
                    for (_, cc) in &rest {
                        c = c.gcd(cc);
                        if c.is_one() {
                            break;
                        }
                    }
                    if !c.is_zero() && !c.is_one() {
                        for (_, cc) in &mut done {
                            *cc = &*cc / &c;
                        }
                        for (_, cc) in &mut rest {
                            *cc = &*cc / &c;
                        }
                        scale *= BigRational::from_integer(c);
                    }
                }
                if steps % 128 == 0 {
                    budget.check()?;
                }
            }
        }
    }
    // `done` was filled leading-first; restore ascending storage order.
    done.reverse();
    let c = content(&done);
    if !c.is_zero() && !c.is_one() {
        for (_, cc) in &mut done {
            *cc = &*cc / &c;
        }
        scale *= BigRational::from_integer(c);
    }
    Ok(NormalForm { terms: done, scale })
}

/// Pending s-pairs keyed so that the set's first element is the pair with
/// the smallest lcm (normal selection strategy).
type PairQueue = BTreeSet<(Vec<u32>, usize, usize)>;

/// Adds `p` (nonzero, normalized) to the basis, updating the pair queue with
/// the Gebauer–Möller criteria.
fn add_element(order: &TermOrder, basis: &mut Vec<EPoly>, pairs: &mut PairQueue, p: EPoly) {
    let t = basis.len();
    let lm_t = p.lead().0.clone();

    // Chain criterion on old pairs: a pair (i, j) whose lcm is a proper
    // multiple of the new lead through both new pairs is redundant.
    let stale: Vec<(Vec<u32>, usize, usize)> = pairs
        .iter()
        .filter(|(_, i, j)| {
            let lij = basis[*i].lead().0.lcm(basis[*j].lead().0);
            lm_t.divides(&lij)
                && basis[*i].lead().0.lcm(&lm_t) != lij
                && basis[*j].lead().0.lcm(&lm_t) != lij
        })
        .cloned()
        .collect();
    for s in stale {
        pairs.remove(&s);
    }

    // New pairs (i, t), pruned among themselves.
    let lcms: Vec<Monomial> = basis.iter().map(|g| g.lead().0.lcm(&lm_t)).collect();
    let mut keep = vec![true; t];
    // Divisibility criterion: drop (i, t) when another new pair's lcm
    // properly divides its lcm.
    for i in 0..t {
        if !keep[i] {
            continue;
        }
        for j in 0..t {
            if i != j && lcms[j] != lcms[i] && lcms[j].divides(&lcms[i]) {
                keep[i] = false;
                break;
            }
        }
    }
    // Equal-lcm classes: a class containing a coprime-lead pair dies whole;
    // otherwise its smallest index survives as the representative.  Visiting
    // ascending indices, the first kept member of a class is its smallest.
    for i in 0..t {
        if !keep[i] {
            continue;
        }
        let class: Vec<usize> = (i..t).filter(|&j| keep[j] && lcms[j] == lcms[i]).collect();
        let coprime = class.iter().any(|&j| basis[j].lead().0.coprime(&lm_t));
        for &j in &class {
            keep[j] = false;
        }
        if !coprime {
            keep[i] = true;
        }
    }
    for i in 0..t {
        if keep[i] {
            pairs.insert((order.sort_key(lcms[i].exps()), i, t));
        }
    }
    basis.push(p);
}

/// Runs Buchberger's algorithm and returns the reduced basis: minimal
/// leading terms, every element fully reduced against the others, each
/// content free with positive leading coefficient, sorted by ascending
/// leading monomial.
pub(crate) fn buchberger_engine(
    order: &TermOrder,
    input: Vec<EPoly>,
    budget: &Budget,
) -> Result<Vec<EPoly>, GroebnerError> {
    let mut basis: Vec<EPoly> = Vec::new();
    let mut pairs: PairQueue = BTreeSet::new();

    for p in input {
        budget.check()?;
        let nf = reduce_full(
            order,
            p.terms,
            BigRational::one(),
            &basis,
            None,
            budget,
        )?;
        if !nf.terms.is_empty() {
            let mut q = EPoly { terms: nf.terms };
            normalize(&mut q);
            add_element(order, &mut basis, &mut pairs, q);
        }
    }

    while let Some(entry) = pairs.pop_first() {
        budget.check()?;
        let (_, i, j) = entry;
        let s = s_poly(order, &basis[i], &basis[j]);
        if s.is_empty() {
            continue;
        }
        let nf = reduce_full(order, s, BigRational::one(), &basis, None, budget)?;
        if !nf.terms.is_empty() {
            let mut q = EPoly { terms: nf.terms };
            normalize(&mut q);
            add_element(order, &mut basis, &mut pairs, q);
        }
    }

    interreduce(order, basis, budget)
}

/// Minimalizes the leading-term set, then tail-reduces every survivor.
fn interreduce(
    order: &TermOrder,
    basis: Vec<EPoly>,
    budget: &Budget,
) -> Result<Vec<EPoly>, GroebnerError> {
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&a, &b| {
        order
            .cmp_mono(basis[a].lead().0, basis[b].lead().0)
            .then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = Vec::new();
    for &i in &idx {
        if !kept
            .iter()
            .any(|&k| basis[k].lead().0.divides(basis[i].lead().0))
        {
            kept.push(i);
        }
    }
    let minimal: Vec<EPoly> = kept.iter().map(|&i| basis[i].clone()).collect();
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        budget.check()?;
        let nf = reduce_full(
            order,
            minimal[i].terms.clone(),
            BigRational::one(),
            &minimal,
            Some(i),
            budget,
        )?;
        let mut q = EPoly { terms: nf.terms };
        debug_assert!(!q.terms.is_empty(), "minimal element reduced to zero");
        normalize(&mut q);
        out.push(q);
    }
    out.sort_by(|a, b| order.cmp_mono(a.lead().0, b.lead().0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::VarTable;

    fn mono(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn sort_keys_agree_with_direct_comparison() {
        let samples: Vec<Vec<u32>> = vec![
            vec![0, 0, 0],
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![2, 0, 0],
            vec![1, 1, 0],
            vec![0, 2, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![0, 0, 2],
            vec![3, 1, 2],
            vec![2, 2, 2],
        ];
        for order in [
            TermOrder::GrevLex,
            TermOrder::Lex,
            TermOrder::Block { split: 1 },
            TermOrder::Block { split: 2 },
        ] {
            for a in &samples {
                for b in &samples {
                    assert_eq!(
                        order.sort_key(a).cmp(&order.sort_key(b)),
                        order.cmp_exps(a, b),
                        "{order:?} {a:?} {b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn block_order_eliminates_first_block() {
        // Any monomial touching the first block beats any that does not.
        let order = TermOrder::Block { split: 1 };
        assert_eq!(
            order.cmp_exps(&[1, 0, 0], &[0, 9, 9]),
            Ordering::Greater
        );
        assert_eq!(order.cmp_exps(&[0, 2, 1], &[0, 1, 1]), Ordering::Greater);
    }

    #[test]
    fn lin_comb_merges_and_cancels() {
        let order = TermOrder::GrevLex;
        // f = x + y, g = x - y over two variables.
        let f = vec![
            (mono(&[0, 1]), BigInt::from(1)),
            (mono(&[1, 0]), BigInt::from(1)),
        ];
        let g = vec![
            (mono(&[0, 1]), BigInt::from(-1)),
            (mono(&[1, 0]), BigInt::from(1)),
        ];
        // f - g = 2y.
        let r = lin_comb(
            &order,
            &BigInt::from(1),
            None,
            &f,
            &BigInt::from(-1),
            None,
            &g,
        );
        assert_eq!(r, vec![(mono(&[0, 1]), BigInt::from(2))]);
    }

    #[test]
    fn reduce_full_gives_exact_scaled_remainder() {
        // Reduce 3x^2 modulo {2x^2 - y}: exact remainder is (3/2) y.
        let vars = VarTable::new(["x", "y"]).unwrap();
        let order = TermOrder::GrevLex;
        let x = Polynomial::var(&vars, 0);
        let y = Polynomial::var(&vars, 1);
        let g = &(&x * &x).mul_scalar(&BigRational::from_integer(2.into())) - &y;
        let basis = vec![epoly_from_polynomial(&order, &g).unwrap()];
        // Basis normalization strips the content but 2x^2 - y is primitive.
        let p = (&x * &x).mul_scalar(&BigRational::from_integer(3.into()));
        let (terms, unit) = p.primitive_integer_terms();
        let ep = epoly_from_terms(&order, terms);
        let nf = reduce_full(
            &order,
            ep.terms,
            unit,
            &basis,
            None,
            &Budget::unlimited(),
        )
        .unwrap();
        let result = terms_to_polynomial(&vars, &nf.terms, &nf.scale);
        assert_eq!(
            result,
            y.mul_scalar(&BigRational::new(3.into(), 2.into()))
        );
    }
}
