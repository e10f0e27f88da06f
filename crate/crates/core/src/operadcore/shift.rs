//! Homogeneous shifts and the Koszul sign rule.
//!
//! Every sign produced by reordering graded symbols in this crate comes
//! from [`koszul_sign`] or [`swap_sign`].

use crate::linalg::scalar::sign;
use crate::linalg::ExactScalar;

/// The shift `s^k`; `(s^k M)_p = M_{p-k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomogeneousShift {
    pub exponent: i64,
}

impl HomogeneousShift {
    pub const fn new(exponent: i64) -> Self {
        HomogeneousShift { exponent }
    }

    pub fn then(self, other: HomogeneousShift) -> HomogeneousShift {
        HomogeneousShift::new(self.exponent + other.exponent)
    }

    pub fn apply(self, degree: i64) -> i64 {
        degree + self.exponent
    }

    /// Sign of `(s^k ⊗ s^l)(a ⊗ b) = ± s^k a ⊗ s^l b`: the shift `s^l`
    /// passes over `a`.
    pub fn tensor_sign(self, other: HomogeneousShift, degree_a: i64) -> ExactScalar {
        let _ = self;
        sign(other.exponent * degree_a)
    }
}

/// Sign for exchanging two adjacent symbols of the given degrees.
pub fn swap_sign(a: i64, b: i64) -> ExactScalar {
    sign(a * b)
}

/// Koszul sign for rearranging graded symbols. `items` lists
/// `(original position, degree)` in the new order; only pairs of odd
/// symbols that end up inverted contribute.
pub fn koszul_sign(items: &[(usize, i64)]) -> ExactScalar {
    let odd: Vec<usize> = items.iter().filter(|(_, d)| d.rem_euclid(2) == 1).map(|&(p, _)| p).collect();
    let mut inversions = 0i64;
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            if odd[i] > odd[j] {
                inversions += 1;
            }
        }
    }
    sign(inversions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{int, one};

    #[test]
    fn exponents_add() {
        let s = HomogeneousShift::new(1);
        let t = HomogeneousShift::new(-3);
        assert_eq!(s.then(t).exponent, -2);
        assert_eq!(s.then(t).apply(5), 3);
    }

    #[test]
    fn koszul_rule() {
        assert_eq!(swap_sign(1, 1), int(-1));
        assert_eq!(swap_sign(1, 2), one());
        // three odd symbols cyclically rotated: two inversions
        assert_eq!(koszul_sign(&[(1, 1), (2, 1), (0, 1)]), one());
        assert_eq!(koszul_sign(&[(1, 1), (0, 1), (2, 0)]), int(-1));
        assert_eq!(koszul_sign(&[(1, 0), (0, 1)]), one());
        assert_eq!(HomogeneousShift::new(-1).tensor_sign(HomogeneousShift::new(-1), 3), int(-1));
    }
}
