use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::structure::{AlgebraStructure, Flavor};
use crate::convolution::{chevalley_eilenberg_differential, hochschild_differential, StructureTensor};
use crate::error::{guardrail, Error, Result};
use crate::linalg::scalar::one;
use crate::linalg::{format_rational, ExactMatrix, ExactScalar, SpanReducer};
use crate::symmetry::{choose, Permutation};

pub const MAX_COCHAIN_ARITY: usize = 5;

/// Cochains of one arity: all multilinear maps for the associative
/// flavors, antisymmetric ones for Lie. Coordinates are the entries at
/// `(o; i_1, .., i_n)` for the basis index tuples.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    flavor: Flavor,
    dim: usize,
    arity: usize,
    basis: Vec<(usize, Vec<usize>)>,
}

impl CochainSpace {
    pub fn new(flavor: Flavor, dim: usize, arity: usize) -> Self {
        let tuples: Vec<Vec<usize>> = match flavor {
            Flavor::Lie => choose(dim, arity),
            _ => crate::convolution::tensor_indices(dim, arity).collect(),
        };
        let basis = (0..dim).flat_map(|o| tuples.iter().map(move |t| (o, t.clone()))).collect();
        CochainSpace { flavor, dim, arity, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn basis_tensor(&self, j: usize) -> StructureTensor {
        let (o, idx) = &self.basis[j];
        let mut t = StructureTensor::zeros(self.dim, self.arity);
        match self.flavor {
            Flavor::Lie => {
                for p in Permutation::all(self.arity) {
                    let permuted: Vec<usize> = (0..self.arity).map(|k| idx[p.apply(k)]).collect();
                    t.set(*o, &permuted, ExactScalar::from_integer(p.sign().into()));
                }
            }
            _ => t.set(*o, idx, one()),
        }
        t
    }

    pub fn coordinates(&self, t: &StructureTensor) -> Vec<ExactScalar> {
        self.basis.iter().map(|(o, idx)| t.get(*o, idx).clone()).collect()
    }

    pub fn tensor(&self, coords: &[ExactScalar]) -> StructureTensor {
        let mut t = StructureTensor::zeros(self.dim, self.arity);
        for (j, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                t.add_assign_scaled(&self.basis_tensor(j), c);
            }
        }
        t
    }

    /// Whether `t` lies in the space (antisymmetry for Lie).
    pub fn contains(&self, t: &StructureTensor) -> bool {
        t.dim() == self.dim && t.arity() == self.arity && (self.flavor != Flavor::Lie || t.is_antisymmetric())
    }
}

/// `∂_μ f = [μ, f]`. For arity ≥ 1 this is the convolution bracket, which
/// agrees with the classical formulas; arity 0 uses the same formulas.
pub fn twisted_coboundary(a: &AlgebraStructure, f: &StructureTensor) -> Result<StructureTensor> {
    if f.arity() == 0 {
        return match a.flavor() {
            Flavor::Lie => chevalley_eilenberg_differential(a.tensor(), f),
            _ => hochschild_differential(a.tensor(), f),
        };
    }
    a.flavor().bracket(a.tensor(), f)
}

/// Matrix of `∂_μ: C^n → C^{n+1}` in the cochain bases.
pub fn differential_matrix(a: &AlgebraStructure, n: usize) -> Result<ExactMatrix> {
    if n + 1 > MAX_COCHAIN_ARITY {
        return guardrail(format!("cochains limited to arity ≤ {MAX_COCHAIN_ARITY}, asked for {}", n + 1));
    }
    let src = CochainSpace::new(a.flavor(), a.dim(), n);
    let dst = CochainSpace::new(a.flavor(), a.dim(), n + 1);
    let cols = (0..src.dim())
        .into_par_iter()
        .map(|j| Ok(dst.coordinates(&twisted_coboundary(a, &src.basis_tensor(j))?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactMatrix::from_columns(dst.dim(), &cols))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub dimension: usize,
    /// Cocycles completing the coboundaries to a basis of the cocycles,
    /// chosen greedily from the reduced-echelon kernel basis.
    pub representatives: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub flavor: Flavor,
    pub dim: usize,
    pub degrees: BTreeMap<usize, DegreeReport>,
}

impl CohomologyReport {
    pub fn dimension(&self, k: usize) -> Option<usize> {
        self.degrees.get(&k).map(|d| d.dimension)
    }
}

/// `H^k(C^•, ∂_μ)` for `k` in `degrees`, with `C^k` the arity-`k` cochains.
pub fn twisted_cohomology(a: &AlgebraStructure, degrees: std::ops::RangeInclusive<usize>) -> Result<CohomologyReport> {
    if *degrees.end() + 1 > MAX_COCHAIN_ARITY {
        return guardrail(format!("cochains limited to arity ≤ {MAX_COCHAIN_ARITY}, degrees up to {}", degrees.end()));
    }
    let mut out = BTreeMap::new();
    for k in degrees {
        let d_in = if k == 0 { None } else { Some(differential_matrix(a, k - 1)?) };
        let d_out = differential_matrix(a, k)?;
        let cochains = CochainSpace::new(a.flavor(), a.dim(), k).dim();
        let image: Vec<Vec<ExactScalar>> = match &d_in {
            Some(m) => (0..m.cols()).map(|c| m.column(c)).collect(),
            None => Vec::new(),
        };
        let kernel = if cochains == 0 { Vec::new() } else { d_out.kernel_basis() };
        let mut span = SpanReducer::new(cochains, &image);
        let coboundaries = span.rank();
        let mut representatives = Vec::new();
        for v in &kernel {
            if !span.contains(v) {
                representatives.push(v.iter().map(format_rational).collect());
                let mut vs = span.basis().to_vec();
                vs.push(v.clone());
                span = SpanReducer::new(cochains, &vs);
            }
        }
        out.insert(
            k,
            DegreeReport {
                cochains,
                cocycles: kernel.len(),
                coboundaries,
                dimension: kernel.len() - coboundaries,
                representatives,
            },
        );
    }
    Ok(CohomologyReport { flavor: a.flavor(), dim: a.dim(), degrees: out })
}

/// Reduces a cocycle modulo the coboundaries `∂_μ(C^{n-1})`: zero exactly
/// when its class vanishes.
pub fn reduce_modulo_coboundaries(a: &AlgebraStructure, f: &StructureTensor) -> Result<Vec<ExactScalar>> {
    let space = CochainSpace::new(a.flavor(), a.dim(), f.arity());
    if !space.contains(f) {
        return Err(Error::Precondition("cochain has the wrong shape or symmetry".into()));
    }
    let coords = space.coordinates(f);
    if f.arity() == 0 {
        return Ok(coords);
    }
    let m = differential_matrix(a, f.arity() - 1)?;
    let image: Vec<Vec<ExactScalar>> = (0..m.cols()).map(|c| m.column(c)).collect();
    Ok(SpanReducer::new(space.dim(), &image).reduce(&coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::binary_tensor;
    use crate::linalg::scalar::int;

    fn so3() -> AlgebraStructure {
        let t = StructureTensor::from_fn(3, 2, |o, x| {
            let (i, j) = (x[0], x[1]);
            if i == j || o == i || o == j {
                return int(0);
            }
            int(if (i + 1) % 3 == j { 1 } else { -1 })
        });
        AlgebraStructure::new(Flavor::Lie, t).unwrap()
    }

    #[test]
    fn cochain_spaces() {
        assert_eq!(CochainSpace::new(Flavor::Lie, 3, 2).dim(), 9);
        assert_eq!(CochainSpace::new(Flavor::Lie, 2, 3).dim(), 0);
        assert_eq!(CochainSpace::new(Flavor::Associative, 2, 3).dim(), 16);
        assert_eq!(CochainSpace::new(Flavor::Lie, 3, 0).dim(), 3);
        let s = CochainSpace::new(Flavor::Lie, 3, 2);
        for j in 0..s.dim() {
            let t = s.basis_tensor(j);
            assert!(t.is_antisymmetric());
            let mut e = vec![ExactScalar::zero(); s.dim()];
            e[j] = one();
            assert_eq!(s.coordinates(&t), e);
        }
    }

    #[test]
    fn cohomology_examples() {
        let abelian = AlgebraStructure::new(Flavor::Lie, StructureTensor::zeros(2, 2)).unwrap();
        let r = twisted_cohomology(&abelian, 0..=2).unwrap();
        assert_eq!(r.dimension(1), Some(4));
        assert_eq!(r.dimension(0), Some(2));
        assert_eq!(r.dimension(2), Some(2));

        let field = AlgebraStructure::new(Flavor::Associative, StructureTensor::from_data(1, 2, vec![int(1)]).unwrap()).unwrap();
        let r = twisted_cohomology(&field, 0..=3).unwrap();
        assert_eq!([r.dimension(0), r.dimension(1), r.dimension(2), r.dimension(3)], [Some(1), Some(0), Some(0), Some(0)]);

        let r = twisted_cohomology(&so3(), 0..=3).unwrap();
        assert_eq!(r.dimension(0), Some(0));
        assert_eq!(r.dimension(1), Some(0));
        assert_eq!(r.dimension(2), Some(0));
        assert_eq!(r.dimension(3), Some(0));
        assert_eq!(r.degrees[&1].cocycles, 3);
        assert!(matches!(twisted_cohomology(&so3(), 0..=5), Err(Error::Guardrail(_))));
    }

    #[test]
    fn dual_numbers_hochschild() {
        // K[ε]/ε²: HH^n is 1-dimensional in each degree in characteristic 0
        let eps = binary_tensor(2, &[((0, 0), vec![int(1), int(0)]), ((0, 1), vec![int(0), int(1)]),
                                      ((1, 0), vec![int(0), int(1)])]);
        let a = AlgebraStructure::new(Flavor::Associative, eps).unwrap();
        let r = twisted_cohomology(&a, 0..=3).unwrap();
        for k in 0..=3 {
            assert_eq!(r.dimension(k), Some(if k == 0 { 2 } else { 1 }), "HH^{k}");
        }
        for k in 0..=3 {
            let d1 = differential_matrix(&a, k).unwrap();
            let d2 = differential_matrix(&a, k + 1).unwrap();
            assert!(d2.mul(&d1).is_zero());
        }
    }
}
