//! Dense exponent vectors and the two base term orders.

use std::cmp::Ordering;

/// A monomial: one exponent per variable of the owning table.
///
/// The intrinsic `Ord` implementation is graded reverse lexicographic
/// (grevlex), which is also the storage and printing order of
/// [`Polynomial`](super::Polynomial) terms.  Elimination and lex orders are
/// applied externally by the Gröbner engine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    /// The constant monomial 1 over `nvars` variables.
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; nvars].into_boxed_slice(),
        }
    }

    pub fn from_exps(exps: Vec<u32>) -> Monomial {
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    /// The monomial `x_i` over `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial {
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, when the division is exact.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial {
            exps: exps.into_boxed_slice(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    /// True when the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(&self.exps, &other.exps)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded reverse lexicographic comparison of exponent vectors.
///
/// `a > b` iff `deg a > deg b`, or the degrees agree and the rightmost
/// nonzero entry of `a - b` is negative.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // Larger exponent at the rightmost difference means *smaller*.
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

/// Pure lexicographic comparison of exponent vectors.
pub fn lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    debug_assert_eq!(a.len(), b.len());
    for i in 0..a.len() {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exps(e.to_vec())
    }

    #[test]
    fn grevlex_degree_two_in_three_vars() {
        // With x > y > z, the degree-2 monomials order as
        // x^2 > xy > y^2 > xz > yz > z^2.
        let order = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        for w in order.windows(2) {
            assert!(w[0] > w[1], "{:?} should exceed {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn lex_vs_grevlex_disagree() {
        // x^3 vs x*y^2*z: lex prefers x^3's higher x-power despite equal
        // visibility under grading... here degrees differ (3 vs 4), so
        // grevlex ranks the quartic higher while lex still looks at x first.
        let a = m(&[3, 0, 0]);
        let b = m(&[1, 2, 1]);
        assert_eq!(grevlex_cmp(a.exps(), b.exps()), Ordering::Less);
        assert_eq!(lex_cmp(a.exps(), b.exps()), Ordering::Greater);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 0, 0]);
        assert!(b.divides(&a));
        assert_eq!(a.div(&b).unwrap(), m(&[1, 1, 0]));
        assert_eq!(a.div(&m(&[0, 0, 1])), None);
        assert_eq!(a.lcm(&m(&[0, 2, 1])), m(&[2, 2, 1]));
        assert_eq!(a.gcd(&m(&[1, 3, 0])), m(&[1, 1, 0]));
        assert!(m(&[1, 0, 0]).coprime(&m(&[0, 1, 1])));
        assert!(!a.coprime(&b));
    }
}
