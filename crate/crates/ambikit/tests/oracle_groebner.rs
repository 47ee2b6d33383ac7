//! Cross-validation of saturation against an independent oracle.
//!
//! The library saturates with the auxiliary-variable construction (adjoin
//! `t`, add `1 - t*f`, eliminate).  The oracle here instead iterates ideal
//! quotients computed through intersections: `(I : f) = (I ∩ <f>) / f`,
//! repeated until the chain stabilizes.  Agreement of the two routes on
//! random ideals is strong evidence both are right.

mod common;

use std::sync::Arc;

use ambikit::groebner::{
    buchberger, eliminate, ideal_equal, saturate, Budget, GroebnerError, IdealGens, TermOrder,
};
use ambikit::polyring::{Monomial, Polynomial, VarTable};
use common::{random_nonzero_poly, rng};
use num::BigRational;

fn unlimited() -> Budget {
    Budget::unlimited()
}

/// `I ∩ <f>` via the standard trick: eliminate `u` from `u*I + (1-u)*<f>`.
fn intersect_with_principal(i: &IdealGens, f: &Polynomial) -> IdealGens {
    let vars = i.vars();
    let n = vars.len();
    let mut names = vec!["aux_u".to_string()];
    names.extend(vars.names().iter().cloned());
    let ext = VarTable::new(names).unwrap();
    let lift = |p: &Polynomial| -> Polynomial {
        let terms: Vec<(Monomial, BigRational)> = p
            .terms()
            .iter()
            .map(|(m, c)| {
                let mut e = Vec::with_capacity(n + 1);
                e.push(0);
                e.extend_from_slice(m.exps());
                (Monomial::from_exps(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(&ext, terms)
    };
    let u = Polynomial::var(&ext, 0);
    let one = Polynomial::one(&ext);
    let mut gens: Vec<Polynomial> = i.gens().iter().map(|g| &u * &lift(g)).collect();
    gens.push(&(&one - &u) * &lift(f));
    let ext_ideal = IdealGens::new(&ext, gens).unwrap();
    let elim = eliminate(&ext_ideal, &[0], &unlimited()).unwrap();
    // Map back onto the original table (names match; indices shift by one).
    let back: Vec<Polynomial> = elim
        .gens()
        .iter()
        .map(|p| {
            let terms: Vec<(Monomial, BigRational)> = p
                .terms()
                .iter()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            Polynomial::from_terms(vars, terms)
        })
        .collect();
    IdealGens::new(vars, back).unwrap()
}

/// `(I : f)` as `(I ∩ <f>) / f`, dividing each generator exactly.
fn quotient_by(i: &IdealGens, f: &Polynomial) -> IdealGens {
    let inter = intersect_with_principal(i, f);
    let divided: Vec<Polynomial> = inter
        .gens()
        .iter()
        .map(|g| {
            g.divide_exact(f)
                .expect("intersection generators are multiples of f")
        })
        .collect();
    IdealGens::new(i.vars(), divided).unwrap()
}

/// `(I : f^inf)` by iterating single quotients until the chain stops.
fn oracle_saturation(i: &IdealGens, f: &Polynomial) -> IdealGens {
    let mut current = i.clone();
    loop {
        let next = quotient_by(&current, f);
        if ideal_equal(&current, &next, &unlimited()).unwrap() {
            return current;
        }
        current = next;
    }
}

fn vars3() -> Arc<VarTable> {
    VarTable::new(["x", "y", "z"]).unwrap()
}

#[test]
fn saturation_agrees_with_iterated_quotient_oracle_on_hand_cases() {
    let vars = vars3();
    let x = Polynomial::var(&vars, 0);
    let y = Polynomial::var(&vars, 1);
    let z = Polynomial::var(&vars, 2);
    let cases: Vec<(Vec<Polynomial>, Polynomial)> = vec![
        (vec![&x * &y], x.clone()),
        (vec![&(&x * &x) * &y, &(&x * &y) * &y], x.clone()),
        (vec![&(&x * &y) - &(&z * &z), &x * &z], z.clone()),
        (vec![&(&x * &x) - &(&y * &z)], &x + &y),
        (vec![&x * &(&x + &y), &y * &(&x + &y)], &x + &y),
    ];
    for (gens, f) in cases {
        let i = IdealGens::new(&vars, gens.clone()).unwrap();
        let fast = saturate(&i, &f, &unlimited()).unwrap();
        let slow = oracle_saturation(&i, &f);
        assert!(
            ideal_equal(&fast, &slow, &unlimited()).unwrap(),
            "disagreement for gens {gens:?} by {f}"
        );
    }
}

#[test]
fn saturation_agrees_with_oracle_on_random_ideals() {
    let vars = vars3();
    let mut r = rng(909);
    for round in 0..10 {
        let k = 1 + (round % 3);
        let gens: Vec<Polynomial> = (0..k)
            .map(|_| random_nonzero_poly(&mut r, &vars, 3, 2))
            .collect();
        let f = random_nonzero_poly(&mut r, &vars, 2, 2);
        if f.constant_value().is_some() {
            continue;
        }
        let i = IdealGens::new(&vars, gens).unwrap();
        let fast = saturate(&i, &f, &unlimited()).unwrap();
        let slow = oracle_saturation(&i, &f);
        assert!(
            ideal_equal(&fast, &slow, &unlimited()).unwrap(),
            "round {round} disagreement"
        );
    }
}

#[test]
fn saturation_contains_input_and_is_idempotent() {
    let vars = vars3();
    let mut r = rng(910);
    for _ in 0..8 {
        let gens: Vec<Polynomial> = (0..2)
            .map(|_| random_nonzero_poly(&mut r, &vars, 3, 2))
            .collect();
        let f = loop {
            let f = random_nonzero_poly(&mut r, &vars, 2, 2);
            if f.constant_value().is_none() {
                break f;
            }
        };
        let i = IdealGens::new(&vars, gens).unwrap();
        let s = saturate(&i, &f, &unlimited()).unwrap();
        // I is inside its saturation.
        let gb = buchberger(&s, TermOrder::GrevLex, &unlimited()).unwrap();
        for g in i.gens() {
            assert!(gb.contains(g).unwrap());
        }
        // Saturating again changes nothing.
        let s2 = saturate(&s, &f, &unlimited()).unwrap();
        assert!(ideal_equal(&s, &s2, &unlimited()).unwrap());
        // Saturating by f^2 gives the same ideal.
        let s3 = saturate(&i, &(&f * &f), &unlimited()).unwrap();
        assert!(ideal_equal(&s, &s3, &unlimited()).unwrap());
    }
}

#[test]
fn elimination_agrees_with_lex_projection() {
    // Two elimination routes: the block order inside `eliminate`, and a full
    // lex basis from which variable-free elements are read off.
    let vars = vars3();
    let x = Polynomial::var(&vars, 0);
    let y = Polynomial::var(&vars, 1);
    let z = Polynomial::var(&vars, 2);
    let gens = IdealGens::new(&vars, [&y - &(&x * &x), &z - &(&(&x * &x) * &x)]).unwrap();

    let via_block = eliminate(&gens, &[0], &unlimited()).unwrap();

    let lex_gb = buchberger(&gens, TermOrder::Lex, &unlimited()).unwrap();
    let projected: Vec<Polynomial> = lex_gb
        .basis()
        .iter()
        .filter(|p| p.degree_in(0) == 0)
        .map(|p| {
            let terms: Vec<(Monomial, BigRational)> = p
                .terms()
                .iter()
                .map(|(m, c)| (Monomial::from_exps(m.exps()[1..].to_vec()), c.clone()))
                .collect();
            Polynomial::from_terms(via_block.vars(), terms)
        })
        .collect();
    let via_lex = IdealGens::new(via_block.vars(), projected).unwrap();
    assert!(ideal_equal(&via_block, &via_lex, &unlimited()).unwrap());

    // And the eliminated ideal is exactly the curve relation y^3 - z^2.
    let yv = Polynomial::var(via_block.vars(), 0);
    let zv = Polynomial::var(via_block.vars(), 1);
    let rel = IdealGens::new(via_block.vars(), [&yv.pow(3) - &zv.pow(2)]).unwrap();
    assert!(ideal_equal(&via_block, &rel, &unlimited()).unwrap());
}

#[test]
fn immediate_deadline_cancels() {
    let vars = vars3();
    let x = Polynomial::var(&vars, 0);
    let y = Polynomial::var(&vars, 1);
    let gens = IdealGens::new(&vars, [&(&x * &x) - &y]).unwrap();
    let budget = Budget::with_deadline(std::time::Duration::ZERO);
    match buchberger(&gens, TermOrder::GrevLex, &budget) {
        Err(GroebnerError::Cancelled) => {}
        other => panic!("expected cancellation, got {other:?}"),
    }
}
