//! `A = K[x, y]/(x, y)^d` with the log-canonical bracket `{x, y} = xy`.
//!
//! On monomials `{x^a y^b, x^c y^d} = (ad − bc) x^{a+c} y^{b+d}` preserves
//! total degree, so `(x, y)^d` is a Poisson ideal and the bracket descends.
//! The exponential family `x^a y^b ∗ x^c y^d = e^{ħ(ad − bc)} x^{a+c} y^{b+d}`
//! is associative and quantizes it.

use num_traits::Zero;

use super::family::FormalFamily;
use super::structure::{AlgebraStructure, Flavor};
use crate::convolution::StructureTensor;
use crate::error::Result;
use crate::linalg::scalar::{int, one};
use crate::linalg::ExactScalar;
use crate::symmetry::factorial;

#[derive(Clone, Debug)]
pub struct TruncatedPlane {
    degree: usize,
    monomials: Vec<(usize, usize)>,
}

impl TruncatedPlane {
    /// Monomials of total degree below `degree`, ordered by degree and then
    /// by decreasing power of `x`: `1, x, y, x², xy, y², ..`.
    pub fn new(degree: usize) -> Self {
        let monomials = (0..degree).flat_map(|t| (0..=t).map(move |b| (t - b, b))).collect();
        TruncatedPlane { degree, monomials }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn monomials(&self) -> &[(usize, usize)] {
        &self.monomials
    }

    pub fn index(&self, a: usize, b: usize) -> Option<usize> {
        self.monomials.iter().position(|&m| m == (a, b))
    }

    pub fn monomial_name(&self, i: usize) -> String {
        let (a, b) = self.monomials[i];
        let part = |v: &str, e: usize| match e {
            0 => String::new(),
            1 => v.to_string(),
            _ => format!("{v}^{e}"),
        };
        let s = format!("{}{}", part("x", a), part("y", b));
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }

    /// `(x^a y^b, x^c y^d) ↦ w(a, b, c, d) x^{a+c} y^{b+d}`, truncated.
    fn table(&self, w: impl Fn(i64, i64, i64, i64) -> ExactScalar) -> StructureTensor {
        let n = self.dim();
        let mut t = StructureTensor::zeros(n, 2);
        for (i, &(a, b)) in self.monomials.iter().enumerate() {
            for (j, &(c, d)) in self.monomials.iter().enumerate() {
                if let Some(k) = self.index(a + c, b + d) {
                    let v = w(a as i64, b as i64, c as i64, d as i64);
                    if !v.is_zero() {
                        t.set(k, &[i, j], v);
                    }
                }
            }
        }
        t
    }

    pub fn product(&self) -> StructureTensor {
        self.table(|_, _, _, _| one())
    }

    pub fn structure(&self) -> AlgebraStructure {
        AlgebraStructure::new(Flavor::Commutative, self.product()).expect("binary")
    }

    pub fn log_canonical_bracket(&self) -> StructureTensor {
        self.table(|a, b, c, d| int(a * d - b * c))
    }

    /// `(ad − bc)^k / k!`, the `ħ^k` term of the exponential family.
    pub fn exponential_term(&self, k: usize) -> StructureTensor {
        let kf = ExactScalar::from_integer((factorial(k) as i64).into());
        self.table(|a, b, c, d| {
            let base = int(a * d - b * c);
            (0..k).fold(one(), |acc, _| acc * &base) / &kf
        })
    }

    pub fn exponential_family(&self, order: usize) -> Result<FormalFamily> {
        FormalFamily::new(self.structure(), (1..=order).map(|k| self.exponential_term(k)).collect())
    }

    /// The symplectic bracket `∂_x f ∂_y g − ∂_y f ∂_x g` evaluated on the
    /// kept monomials. `(x, y)^d` is not closed under it, so it is not a
    /// biderivation of the truncated product.
    pub fn weyl_bracket(&self) -> StructureTensor {
        let n = self.dim();
        let mut t = StructureTensor::zeros(n, 2);
        for (i, &(a, b)) in self.monomials.iter().enumerate() {
            for (j, &(c, d)) in self.monomials.iter().enumerate() {
                if a + c == 0 || b + d == 0 {
                    continue;
                }
                if let Some(k) = self.index(a + c - 1, b + d - 1) {
                    let v = int((a * d) as i64 - (b * c) as i64);
                    if !v.is_zero() {
                        t.set(k, &[i, j], v);
                    }
                }
            }
        }
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::{associator, jacobiator};
    use crate::deformation::structure::verify_structure;

    #[test]
    fn basis_and_product() {
        let p = TruncatedPlane::new(3);
        assert_eq!(p.dim(), 6);
        let names: Vec<String> = (0..6).map(|i| p.monomial_name(i)).collect();
        assert_eq!(names, ["1", "x", "y", "x^2", "xy", "y^2"]);
        assert!(associator(&p.product()).unwrap().is_zero());
        assert!(verify_structure(&p.structure()).unwrap());
        let br = p.log_canonical_bracket();
        assert!(br.is_antisymmetric());
        assert!(jacobiator(&br).unwrap().is_zero());
        // {x, y} = xy
        assert_eq!(br.get(4, &[1, 2]), &int(1));
        assert_eq!(p.exponential_term(1), br);
        assert_eq!(p.exponential_term(2).get(4, &[1, 2]), &crate::linalg::scalar::frac(1, 2));
    }
}
