//! Sparse multivariate polynomials over exact rationals.
//!
//! The ambient objects of every pipeline stage live here: a [`VarTable`]
//! fixes an ordered list of coordinates (σ₁₁, σ₁₂, …, κ₁₁, …, θₑ, p_λ, …), a
//! [`Polynomial`] is a sparse sum of terms over such a table with
//! `BigRational` coefficients, and a [`PolyMatrix`] is a dense grid of
//! polynomials supporting exact (fraction-free) determinants and
//! order-sensitive minors.
//!
//! Two normal forms recur throughout the crate and deserve names:
//!
//! * **primitive, sign-preserved** ([`Polynomial::primitive_signed`]): the
//!   polynomial is scaled by a *positive* rational so that its coefficients
//!   become coprime integers.  The sign of every value is unchanged, which is
//!   what constraint transfer relies on when it turns an inequality into a
//!   numerator.
//! * **canonical** ([`Polynomial::canonical`]): primitive and additionally
//!   sign-flipped so the leading coefficient under graded reverse
//!   lexicographic order is positive.  This is the associate-class
//!   representative used for Gröbner bases, monoid deduplication, and the
//!   text wire format.
//!
//! Terms are stored sorted descending under grevlex, so structural equality
//! is exact polynomial equality and printing is canonical by construction.

mod matrix;
mod monomial;
mod parse;
mod poly;

pub use matrix::PolyMatrix;
pub use monomial::{grevlex_cmp, lex_cmp, Monomial};
pub use poly::Polynomial;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Errors from polynomial-ring operations.
#[derive(Debug, Error)]
pub enum PolyError {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands belong to different variable tables")]
    TableMismatch,
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquareMatrix { rows: usize, cols: usize },
    #[error("matrix entry count {got} does not match {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("row and column index sets have different sizes ({rows} vs {cols})")]
    MinorShape { rows: usize, cols: usize },
    #[error("wrong number of values: got {got}, expected {expected}")]
    AssignmentCount { got: usize, expected: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// An ordered list of variable names shared by a family of polynomials.
///
/// Positions are 0-based and contiguous; names are unique.  Tables are
/// compared by *content*, so two independently constructed tables with the
/// same names are interchangeable.
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl VarTable {
    /// Builds a table from an ordered list of names.
    pub fn new<I, S>(names: I) -> Result<Arc<VarTable>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VarTable { names, index }))
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Name of the variable at `i`. Panics if out of range.
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Position of `name`, if present.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

impl fmt::Display for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

/// True when two tables are interchangeable (same pointer or same names).
pub fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rejects_duplicates() {
        assert!(VarTable::new(["x", "y", "x"]).is_err());
    }

    #[test]
    fn table_lookup() {
        let t = VarTable::new(["x", "y", "z"]).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.index_of("y"), Some(1));
        assert_eq!(t.index_of("w"), None);
        assert_eq!(t.name(2), "z");
    }

    #[test]
    fn content_equality() {
        let a = VarTable::new(["x", "y"]).unwrap();
        let b = VarTable::new(["x", "y"]).unwrap();
        let c = VarTable::new(["y", "x"]).unwrap();
        assert!(same_table(&a, &b));
        assert!(!same_table(&a, &c));
    }
}
