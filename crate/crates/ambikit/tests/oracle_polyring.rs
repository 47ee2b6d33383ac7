//! Cross-checks for the polynomial layer against independent, test-local
//! oracles: a from-scratch cofactor determinant, classical adjugate
//! identities, and evaluation-based divisibility checks for the gcd.

mod common;

use std::sync::Arc;

use ambikit::polyring::{PolyMatrix, Polynomial, VarTable};
use common::{random_nonzero_poly, random_point, random_poly, rng};

/// Textbook Laplace expansion along the first row, written independently of
/// the library's determinant code.
fn oracle_det(m: &Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    let vars = m[0][0].vars().clone();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero(&vars);
    for j in 0..n {
        let mut sub = Vec::with_capacity(n - 1);
        for r in 1..n {
            let mut row = Vec::with_capacity(n - 1);
            for c in 0..n {
                if c != j {
                    row.push(m[r][c].clone());
                }
            }
            sub.push(row);
        }
        let mut term = &m[0][j] * &oracle_det(&sub);
        if j % 2 == 1 {
            term = -&term;
        }
        acc = &acc + &term;
    }
    acc
}

fn random_matrix(
    rng: &mut rand_chacha::ChaCha8Rng,
    vars: &Arc<VarTable>,
    n: usize,
) -> (PolyMatrix, Vec<Vec<Polynomial>>) {
    let mut grid = Vec::new();
    for _ in 0..n {
        let mut row = Vec::new();
        for _ in 0..n {
            row.push(random_poly(rng, vars, 2, 2));
        }
        grid.push(row);
    }
    let flat: Vec<Polynomial> = grid.iter().flatten().cloned().collect();
    (PolyMatrix::new(vars, n, n, flat).unwrap(), grid)
}

#[test]
fn determinant_matches_cofactor_oracle() {
    let vars = VarTable::new(["x", "y", "z"]).unwrap();
    let mut r = rng(101);
    for n in 1..=5 {
        for _ in 0..4 {
            let (m, grid) = random_matrix(&mut r, &vars, n);
            assert_eq!(m.determinant().unwrap(), oracle_det(&grid), "size {n}");
        }
    }
}

#[test]
fn determinant_multiplicative_on_products() {
    let vars = VarTable::new(["x", "y"]).unwrap();
    let mut r = rng(202);
    for _ in 0..5 {
        let (a, _) = random_matrix(&mut r, &vars, 3);
        let (b, _) = random_matrix(&mut r, &vars, 3);
        let ab = a.matmul(&b).unwrap();
        assert_eq!(
            ab.determinant().unwrap(),
            &a.determinant().unwrap() * &b.determinant().unwrap()
        );
    }
}

#[test]
fn adjugate_of_adjugate_rescales_by_det_power() {
    // For an n x n matrix, adj(adj(K)) = det(K)^{n-2} * K.
    let vars = VarTable::new(["a", "b", "c", "d", "e", "f"]).unwrap();
    let mut r = rng(303);
    let (k, _) = random_matrix(&mut r, &vars, 3);
    let det = k.determinant().unwrap();
    let adj2 = k.adjugate().unwrap().adjugate().unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(adj2.get(i, j).clone(), &det * k.get(i, j));
        }
    }
}

#[test]
fn minors_match_oracle_det_of_submatrix() {
    let vars = VarTable::new(["x", "y", "z"]).unwrap();
    let mut r = rng(404);
    let (m, grid) = random_matrix(&mut r, &vars, 4);
    let picks: [(&[usize], &[usize]); 4] = [
        (&[0, 2], &[1, 3]),
        (&[3, 1], &[0, 2]),
        (&[0, 1, 2], &[1, 2, 3]),
        (&[2, 0, 3], &[3, 0, 1]),
    ];
    for (rows, cols) in picks {
        let sub: Vec<Vec<Polynomial>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| grid[i][j].clone()).collect())
            .collect();
        assert_eq!(m.minor(rows, cols).unwrap(), oracle_det(&sub));
    }
}

/// Divisibility witnessed two ways: exact polynomial division, and evaluation
/// at random rational points (a nonzero quotient remains one generically).
#[test]
fn gcd_divides_both_inputs_and_absorbs_common_factors() {
    let vars = VarTable::new(["x", "y", "z"]).unwrap();
    let mut r = rng(505);
    for round in 0..12 {
        let g = random_nonzero_poly(&mut r, &vars, 3, 2);
        let a = random_nonzero_poly(&mut r, &vars, 3, 2);
        let b = random_nonzero_poly(&mut r, &vars, 3, 2);
        let p = &a * &g;
        let q = &b * &g;
        let d = p.gcd(&q);
        // The gcd divides both products...
        let qa = p.divide_exact(&d);
        let qb = q.divide_exact(&d);
        assert!(qa.is_some() && qb.is_some(), "round {round}: gcd must divide");
        // ...and is divisible by the planted common factor.
        assert!(
            d.divide_exact(&g).is_some(),
            "round {round}: planted factor {g} missing from gcd {d}"
        );
        // Cross-check divisibility numerically at a random point.
        let pt = random_point(&mut r, 3, 13);
        let dv = d.evaluate(&pt).unwrap();
        if !dv.eq(&num::BigRational::from_integer(0.into())) {
            let pv = p.evaluate(&pt).unwrap();
            let qv = qa.unwrap().evaluate(&pt).unwrap();
            assert_eq!(pv, dv * qv);
        }
    }
}

#[test]
fn gcd_of_coprime_inputs_is_constant() {
    let vars = VarTable::new(["x", "y"]).unwrap();
    let x = Polynomial::var(&vars, 0);
    let y = Polynomial::var(&vars, 1);
    let one = Polynomial::one(&vars);
    // x+1 and x-1 share no root; likewise x and y.
    let d1 = (&x + &one).gcd(&(&x - &one));
    assert_eq!(d1.degree(), Some(0));
    let d2 = x.gcd(&y);
    assert_eq!(d2.degree(), Some(0));
}
