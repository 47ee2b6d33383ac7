//! Dense matrices of polynomials: exact determinants, minors, adjugates.

use std::sync::Arc;

use super::{same_table, PolyError, Polynomial, VarTable};

/// A rectangular grid of polynomials over one variable table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: Arc<VarTable>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>, // row-major
}

impl PolyMatrix {
    pub fn new(
        vars: &Arc<VarTable>,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial>,
    ) -> Result<PolyMatrix, PolyError> {
        if entries.len() != rows * cols {
            return Err(PolyError::EntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        for e in &entries {
            if !same_table(vars, e.vars()) {
                return Err(PolyError::TableMismatch);
            }
        }
        Ok(PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        vars: &Arc<VarTable>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Polynomial,
    ) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(same_table(vars, e.vars()), "matrix entry table mismatch");
                entries.push(e);
            }
        }
        PolyMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(vars: &Arc<VarTable>, n: usize) -> PolyMatrix {
        PolyMatrix::from_fn(vars, n, n, |i, j| {
            if i == j {
                Polynomial::one(vars)
            } else {
                Polynomial::zero(vars)
            }
        })
    }

    pub fn vars(&self) -> &Arc<VarTable> {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(&self.vars, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Matrix product.
    pub fn matmul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.cols != other.rows {
            return Err(PolyError::EntryCount {
                rows: self.cols,
                cols: other.rows,
                got: 0,
            });
        }
        Ok(PolyMatrix::from_fn(&self.vars, self.rows, other.cols, |i, j| {
            let mut acc = Polynomial::zero(&self.vars);
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * other.get(k, j));
            }
            acc
        }))
    }

    /// Exact determinant.
    ///
    /// Small matrices (≤ 4×4) expand by cofactors; larger ones use
    /// fraction-free Bareiss elimination, whose interior divisions are exact
    /// by construction.
    pub fn determinant(&self) -> Result<Polynomial, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows <= 4 {
            let idx: Vec<usize> = (0..self.rows).collect();
            Ok(self.cofactor_det(&idx, &idx))
        } else {
            Ok(self.bareiss_det())
        }
    }

    /// Determinant of the submatrix with the given rows and columns, taken
    /// in the given order (the order matters for the sign).  Empty index
    /// sets yield the empty determinant 1.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial, PolyError> {
        if rows.len() != cols.len() {
            return Err(PolyError::MinorShape {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        for &r in rows {
            if r >= self.rows {
                return Err(PolyError::IndexOutOfRange {
                    index: r,
                    size: self.rows,
                });
            }
        }
        for &c in cols {
            if c >= self.cols {
                return Err(PolyError::IndexOutOfRange {
                    index: c,
                    size: self.cols,
                });
            }
        }
        if rows.is_empty() {
            return Ok(Polynomial::one(&self.vars));
        }
        if rows.len() <= 4 {
            Ok(self.cofactor_det(rows, cols))
        } else {
            let sub = PolyMatrix::from_fn(&self.vars, rows.len(), cols.len(), |i, j| {
                self.get(rows[i], cols[j]).clone()
            });
            Ok(sub.bareiss_det())
        }
    }

    /// The adjugate (transposed cofactor matrix): `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Result<PolyMatrix, PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        if n == 1 {
            return Ok(PolyMatrix::from_fn(&self.vars, 1, 1, |_, _| {
                Polynomial::one(&self.vars)
            }));
        }
        Ok(PolyMatrix::from_fn(&self.vars, n, n, |i, j| {
            // adj(M)[i][j] is the (j,i) cofactor.
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = self.minor(&rows, &cols).unwrap();
            if (i + j) % 2 == 0 {
                m
            } else {
                m.negate()
            }
        }))
    }

    fn cofactor_det(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        let n = rows.len();
        match n {
            0 => Polynomial::one(&self.vars),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = Polynomial::zero(&self.vars);
                let sub_rows = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.get(rows[0], c);
                    if entry.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, &cc)| cc)
                        .collect();
                    let sub = self.cofactor_det(sub_rows, &sub_cols);
                    let term = entry * &sub;
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    fn bareiss_det(&self) -> Polynomial {
        let n = self.rows;
        let mut m: Vec<Vec<Polynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = false;
        let mut prev = Polynomial::one(&self.vars);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = !sign;
                    }
                    None => return Polynomial::zero(&self.vars),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .divide_exact(&prev)
                        .expect("Bareiss interior division is exact");
                }
                m[i][k] = Polynomial::zero(&self.vars);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign {
            det.negate()
        } else {
            det
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym2() -> (Arc<VarTable>, PolyMatrix) {
        let v = VarTable::new(["s11", "s12", "s22"]).unwrap();
        let m = PolyMatrix::from_fn(&v, 2, 2, |i, j| {
            let name = format!("s{}{}", i.min(j) + 1, i.max(j) + 1);
            Polynomial::var_named(&v, &name).unwrap()
        });
        (v, m)
    }

    #[test]
    fn det_generic_symmetric_2x2() {
        let (_, m) = sym2();
        assert_eq!(m.determinant().unwrap().to_string(), "-s12^2 + s11*s22");
    }

    #[test]
    fn det_identity() {
        let v = VarTable::new(["x"]).unwrap();
        let id = PolyMatrix::identity(&v, 3);
        assert!(id.determinant().unwrap().is_one());
        let id6 = PolyMatrix::identity(&v, 6); // exercises the Bareiss path
        assert!(id6.determinant().unwrap().is_one());
    }

    #[test]
    fn det_rejects_non_square() {
        let v = VarTable::new(["x"]).unwrap();
        let m = PolyMatrix::from_fn(&v, 2, 3, |_, _| Polynomial::one(&v));
        assert!(m.determinant().is_err());
    }

    #[test]
    fn minor_conventions() {
        let v = VarTable::new(["s11", "s12", "s13", "s22", "s23", "s33"]).unwrap();
        let s = PolyMatrix::from_fn(&v, 3, 3, |i, j| {
            let name = format!("s{}{}", i.min(j) + 1, i.max(j) + 1);
            Polynomial::var_named(&v, &name).unwrap()
        });
        // Empty determinant convention.
        assert!(s.minor(&[], &[]).unwrap().is_one());
        // Rows {1}∪{2}, cols {3}∪{2} in 1-based labels: s13*s22 - s12*s23
        // (order-sensitive: rows [0,1], cols [2,1]).
        let m = s.minor(&[0, 1], &[2, 1]).unwrap();
        assert_eq!(m.to_string(), "s13*s22 - s12*s23");
        // Leading principal 2x2.
        let lead = s.minor(&[0, 1], &[0, 1]).unwrap();
        assert_eq!(lead.to_string(), "-s12^2 + s11*s22");
        // Swapping two rows flips the sign.
        let swapped = s.minor(&[1, 0], &[2, 1]).unwrap();
        assert_eq!(swapped, m.negate());
    }

    #[test]
    fn adjugate_identity_property() {
        let (v, m) = sym2();
        let adj = m.adjugate().unwrap();
        let prod = m.matmul(&adj).unwrap();
        let det = m.determinant().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    assert_eq!(prod.get(i, j), &det);
                } else {
                    assert!(prod.get(i, j).is_zero());
                }
            }
        }
        let _ = v;
    }
}
