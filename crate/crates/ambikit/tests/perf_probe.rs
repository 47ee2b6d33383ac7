//! Manually run performance probes (`cargo test --test perf_probe -- --ignored --nocapture`).
//!
//! These exercise the heavy saturation workloads with wall-clock printouts
//! so regressions in the basis engine are easy to spot during development.

use std::time::Instant;

use ambikit::groebner::{ideal_equal, saturate, Budget, IdealGens};
use ambikit::polyring::{PolyMatrix, Polynomial, VarTable};

/// The 5-cycle-with-pendant colored concentration graph: all four cycle
/// edge entries tied, the pendant edge free.  The vanishing ideal of the
/// covariance model is the saturation of the transferred pattern/tie
/// relations by the determinant.
#[test]
#[ignore]
fn rcon_pendant_saturation() {
    // Upper-triangle variable table in row-major order.
    let mut names = Vec::new();
    for i in 1..=5 {
        for j in i..=5 {
            names.push(format!("s{i}{j}"));
        }
    }
    let vars = VarTable::new(names).unwrap();
    let sigma = PolyMatrix::from_fn(&vars, 5, 5, |i, j| {
        let (a, b) = if i <= j { (i + 1, j + 1) } else { (j + 1, i + 1) };
        Polynomial::var_named(&vars, &format!("s{a}{b}")).unwrap()
    });

    let t0 = Instant::now();
    let det = sigma.determinant().unwrap();
    let adj = sigma.adjugate().unwrap();
    println!("det+adjugate: {:?} ({} det terms)", t0.elapsed(), det.num_terms());

    // Nonedges 13, 25, 24, 35, 15 vanish; cycle edges 12, 23, 34, 14 tied.
    let e = |i: usize, j: usize| adj.get(i - 1, j - 1).clone();
    let gens = vec![
        e(1, 3),
        e(1, 5),
        e(2, 4),
        e(2, 5),
        e(3, 5),
        &e(1, 2) - &e(2, 3),
        &e(2, 3) - &e(3, 4),
        &e(3, 4) - &e(1, 4),
    ];
    let ideal = IdealGens::new(&vars, gens).unwrap();

    let t1 = Instant::now();
    let sat = saturate(&ideal, &det, &Budget::unlimited()).unwrap();
    println!(
        "saturation: {:?} ({} basis elements)",
        t1.elapsed(),
        sat.gens().len()
    );

    let expected_strs = [
        "s14*s23 - s12*s34",
        "s15*s24 - s14*s25",
        "s15*s34 - s14*s35",
        "s15*s23 - s12*s35",
        "s15*s44 - s14*s45",
        "s25*s44 - s24*s45",
        "s25*s34 - s24*s35",
        "s35*s44 - s34*s45",
        "s25*s33 + s14*s35 - s23*s35 - s13*s45",
        "s24*s33 + s14*s34 - s23*s34 - s13*s44",
        "s23*s25 - s22*s35 - s24*s35 + s23*s45",
        "s13*s25 - s12*s35 - s14*s35 + s13*s45",
        "s23*s24 - s22*s34 - s24*s34 + s23*s44",
        "s13*s24 - s12*s34 - s14*s34 + s13*s44",
        "s15*s22 - s12*s25 + s14*s25 - s12*s45",
        "s14*s22 - s12*s24 + s14*s24 - s12*s44",
        "s13*s22 - s12*s23 + s14*s34 - s13*s44",
        "s13*s15 + s15*s33 - s11*s35 - s13*s35",
        "s12*s15 - s11*s25 - s14*s35 + s13*s45",
        "s13*s14 + s14*s33 - s11*s34 - s13*s34",
        "s12*s14 - s11*s24 - s14*s34 + s13*s44",
        "s12*s13 - s11*s23 - s13*s23 + s12*s33",
    ];
    let expected: Vec<Polynomial> = expected_strs
        .iter()
        .map(|s| Polynomial::parse(&vars, s).unwrap())
        .collect();
    let expected = IdealGens::new(&vars, expected).unwrap();

    let t2 = Instant::now();
    let equal = ideal_equal(&sat, &expected, &Budget::unlimited()).unwrap();
    println!("equality check: {:?}", t2.elapsed());
    println!("total: {:?}", t0.elapsed());
    assert!(equal, "saturation does not match the expected quadric ideal");
}
