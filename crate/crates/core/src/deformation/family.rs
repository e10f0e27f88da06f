use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::complex::{differential_matrix, reduce_modulo_coboundaries, CochainSpace};
use super::structure::{from_nested, nested, AlgebraStructure, Flavor, Scalar, StructureDocument};
use crate::convolution::{end_compose, hochschild_differential, jacobiator, StructureTensor};
use crate::error::{Error, Result};
use crate::linalg::scalar::{frac, int, one};
use crate::linalg::{format_rational, ExactMatrix, ExactScalar};

/// A truncated formal family `α = Σ_{k ≤ N} ħ^k α_k` of binary operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalFamily {
    base: AlgebraStructure,
    corrections: Vec<StructureTensor>,
    certified: usize,
}

impl FormalFamily {
    /// Stores the family with the largest order `M ≤ N` up to which the
    /// Maurer–Cartan residual vanishes. The base itself must be a structure.
    pub fn new(base: AlgebraStructure, corrections: Vec<StructureTensor>) -> Result<Self> {
        for (k, c) in corrections.iter().enumerate() {
            if c.dim() != base.dim() || c.arity() != 2 {
                return Err(Error::Precondition(format!("correction {} is not a binary map on V", k + 1)));
            }
            if !CochainSpace::new(base.flavor(), base.dim(), 2).contains(c) {
                return Err(Error::Precondition(format!("correction {} breaks the flavor symmetry", k + 1)));
            }
        }
        let mut f = FormalFamily { base, corrections, certified: 0 };
        if !f.residual(0)?.is_zero() {
            return Err(Error::Precondition("the base operation fails the Maurer–Cartan equation".into()));
        }
        f.certified = f.certify()?;
        Ok(f)
    }

    pub fn constant(base: AlgebraStructure, order: usize) -> Result<Self> {
        let zeros = vec![StructureTensor::zeros(base.dim(), 2); order];
        Self::new(base, zeros)
    }

    pub fn base(&self) -> &AlgebraStructure {
        &self.base
    }

    pub fn flavor(&self) -> Flavor {
        self.base.flavor()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.corrections.len()
    }

    pub fn certified_order(&self) -> usize {
        self.certified
    }

    /// `α_k`, with `α_0` the base operation.
    pub fn term(&self, k: usize) -> &StructureTensor {
        if k == 0 {
            self.base.tensor()
        } else {
            &self.corrections[k - 1]
        }
    }

    pub fn corrections(&self) -> &[StructureTensor] {
        &self.corrections
    }

    /// Coefficient of `ħ^m` in `½[α, α]`.
    pub fn residual(&self, m: usize) -> Result<StructureTensor> {
        half_bracket_sum(self.flavor(), self.dim(), (0..=m).filter(|&i| i <= self.order() && m - i <= self.order()).map(|i| (self.term(i), self.term(m - i))))
    }

    /// Recomputes the certified order.
    pub fn certify(&self) -> Result<usize> {
        let mut m = 0;
        while m < self.order() && self.residual(m + 1)?.is_zero() {
            m += 1;
        }
        Ok(m)
    }

    pub fn to_document(&self) -> FamilyDocument {
        FamilyDocument {
            base: self.base.to_document(),
            corrections: self.corrections.iter().map(nested).collect(),
            certified_order: self.certified,
        }
    }
}

/// `½ Σ [a, b]` over the listed pairs.
fn half_bracket_sum<'a>(
    flavor: Flavor,
    dim: usize,
    pairs: impl Iterator<Item = (&'a StructureTensor, &'a StructureTensor)>,
) -> Result<StructureTensor> {
    let pairs: Vec<_> = pairs.collect();
    let terms = pairs.par_iter().map(|(a, b)| flavor.bracket(a, b)).collect::<Result<Vec<_>>>()?;
    let mut acc = StructureTensor::zeros(dim, 3);
    for t in &terms {
        acc.add_assign_scaled(t, &frac(1, 2));
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyDocument {
    pub base: StructureDocument,
    pub corrections: Vec<Vec<Vec<Vec<String>>>>,
    pub certified_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyInput {
    pub base: super::structure::StructureInput,
    pub corrections: Vec<Vec<Vec<Vec<Scalar>>>>,
    #[serde(default)]
    pub certified_order: Option<usize>,
}

impl FamilyInput {
    /// Builds the family; a stated certified order must match the recomputed one.
    pub fn into_family(self) -> Result<FormalFamily> {
        let base = self.base.into_structure()?;
        let dim = base.dim();
        let corrections = self.corrections.iter().map(|c| from_nested(dim, c)).collect::<Result<Vec<_>>>()?;
        let f = FormalFamily::new(base, corrections)?;
        if let Some(stated) = self.certified_order {
            if stated != f.certified_order() {
                return Err(Error::Precondition(format!(
                    "stated certified order {stated} but the residual vanishes only to order {}",
                    f.certified_order()
                )));
            }
        }
        Ok(f)
    }
}

/// Result of trying to extend a family by one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformStep {
    pub order: usize,
    /// `−½ Σ_{i+j=k+1; i,j ≥ 1} [α_i, α_j]`.
    pub obstruction: StructureTensor,
    /// Normal form of the obstruction modulo coboundaries; zero iff its
    /// class vanishes.
    pub class: Vec<ExactScalar>,
    /// `(particular, homogeneous basis)` for `∂_{α_0} α_{k+1} = obstruction`.
    pub solutions: Option<(StructureTensor, Vec<StructureTensor>)>,
}

impl DeformStep {
    pub fn class_vanishes(&self) -> bool {
        self.class.iter().all(Zero::is_zero)
    }
}

/// One order of the order-by-order Maurer–Cartan equation
/// `∂_{α_0} α_{k+1} + ½ Σ_{i+j=k+1; i,j ≥ 1} [α_i, α_j] = 0`.
pub fn deform_step(f: &FormalFamily) -> Result<DeformStep> {
    let k = f.order();
    if f.certified_order() != k {
        return Err(Error::Precondition(format!(
            "family is certified only to order {} of {k}",
            f.certified_order()
        )));
    }
    let pairs = (1..=k).map(|i| (f.term(i), f.term(k + 1 - i)));
    let obstruction = half_bracket_sum(f.flavor(), f.dim(), pairs)?.scale(&-one());
    let class = reduce_modulo_coboundaries(f.base(), &obstruction)?;
    let solutions = if class.iter().all(Zero::is_zero) {
        let d = differential_matrix(f.base(), 2)?;
        let target = CochainSpace::new(f.flavor(), f.dim(), 3).coordinates(&obstruction);
        let src = CochainSpace::new(f.flavor(), f.dim(), 2);
        let sol = d.solve_affine(&target).expect("exact obstruction has a preimage");
        Some((src.tensor(&sol.particular), sol.homogeneous.iter().map(|h| src.tensor(h)).collect()))
    } else {
        None
    };
    Ok(DeformStep { order: k + 1, obstruction, class, solutions })
}

/// Extends `(α_0, α_1)` to order `order`, taking the reduced-echelon
/// particular solution at every step. `None` when an obstruction class is
/// nonzero.
pub fn quantize(a: &AlgebraStructure, alpha1: &StructureTensor, order: usize) -> Result<Option<FormalFamily>> {
    let mut f = FormalFamily::new(a.clone(), vec![alpha1.clone()])?;
    if f.certified_order() < 1 {
        return Err(Error::Precondition("the first-order term is not a cocycle".into()));
    }
    if order == 0 {
        return FormalFamily::new(a.clone(), Vec::new()).map(Some);
    }
    while f.order() < order {
        let step = deform_step(&f)?;
        let Some((particular, _)) = step.solutions else { return Ok(None) };
        let mut next = f.corrections.clone();
        next.push(particular);
        f = FormalFamily::new(a.clone(), next)?;
        debug_assert_eq!(f.certified_order(), f.order());
    }
    Ok(Some(f))
}

/// Outcome of one identity check in the classical limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Holds,
    Fails,
    NotApplicable,
}

impl Check {
    fn of(b: bool) -> Self {
        if b {
            Check::Holds
        } else {
            Check::Fails
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalLimit {
    pub product: StructureTensor,
    pub first_order: StructureTensor,
    /// Antisymmetric part of the first-order term.
    pub bracket: StructureTensor,
    pub leibniz: Check,
    pub jacobi: Check,
}

/// `(α_0, α_1)` read as a commutative product and a bracket. With
/// `poisson`, `α_0` must be commutative and the Leibniz rule and Jacobi
/// identity of the bracket are checked.
pub fn classical_limit(f: &FormalFamily, poisson: bool) -> Result<ClassicalLimit> {
    let product = f.term(0).clone();
    if poisson && product.permute_inputs(&[1, 0]) != product {
        return Err(Error::Precondition("the order-0 product is not commutative".into()));
    }
    let first_order = if f.order() >= 1 { f.term(1).clone() } else { StructureTensor::zeros(f.dim(), 2) };
    let bracket = first_order.sub(&first_order.permute_inputs(&[1, 0]))?.scale(&frac(1, 2));
    let (leibniz, jacobi) = if !poisson || bracket.is_zero() {
        (Check::NotApplicable, Check::NotApplicable)
    } else {
        // {a, bc} − {a, b}c − b{a, c}
        let lhs = end_compose(&bracket, 1, &product)?;
        let t1 = end_compose(&product, 0, &bracket)?;
        let t2 = end_compose(&product, 1, &bracket)?.permute_inputs(&[1, 0, 2]);
        let leib = lhs.sub(&t1)?.sub(&t2)?;
        (Check::of(leib.is_zero()), Check::of(jacobiator(&bracket)?.is_zero()))
    };
    Ok(ClassicalLimit { product, first_order, bracket, leibniz, jacobi })
}

/// Order-by-order gauge `φ = Σ_{k ≥ 1} ħ^k φ_k` with `exp(φ)` intertwining
/// the two families: `exp(φ)(a ∗_1 b) = exp(φ)(a) ∗_2 exp(φ)(b)` mod `ħ^{N+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauge {
    pub generators: Vec<StructureTensor>,
}

impl Gauge {
    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(StructureTensor::is_zero)
    }

    pub fn to_strings(&self) -> Vec<Vec<Vec<String>>> {
        self.generators
            .iter()
            .map(|g| (0..g.dim()).map(|o| (0..g.dim()).map(|i| format_rational(g.get(o, &[i]))).collect()).collect())
            .collect()
    }
}

fn compose1(a: &StructureTensor, b: &StructureTensor) -> StructureTensor {
    end_compose(a, 0, b).expect("same dimension")
}

/// Truncated power series of linear maps, indexed by the power of ħ.
type Series = Vec<StructureTensor>;

fn series_mul(a: &Series, b: &Series, order: usize) -> Series {
    let d = a[0].dim();
    (0..=order)
        .map(|m| {
            let mut acc = StructureTensor::zeros(d, 1);
            for i in 0..=m {
                acc.add_assign_scaled(&compose1(&a[i], &b[m - i]), &one());
            }
            acc
        })
        .collect()
}

/// `exp` or `log` of a series with zero constant term, as a sum of powers.
fn power_series(x: &Series, order: usize, coef: impl Fn(usize) -> ExactScalar) -> Series {
    let d = x[0].dim();
    let mut out: Series = vec![StructureTensor::zeros(d, 1); order + 1];
    let mut power: Series = vec![StructureTensor::zeros(d, 1); order + 1];
    power[0] = StructureTensor::identity(d);
    for k in 0..=order {
        for (o, p) in out.iter_mut().zip(&power) {
            o.add_assign_scaled(p, &coef(k));
        }
        power = series_mul(&power, x, order);
    }
    out
}

fn exp_series(phi: &Series, order: usize) -> Series {
    let mut fact = one();
    let facts: Vec<ExactScalar> = (0..=order)
        .map(|k| {
            if k > 0 {
                fact = &fact * int(k as i64);
            }
            fact.recip()
        })
        .collect();
    power_series(phi, order, |k| facts[k].clone())
}

fn log_series(big_phi: &Series, order: usize) -> Series {
    let mut x = big_phi.clone();
    x[0] = StructureTensor::zeros(x[0].dim(), 1);
    power_series(&x, order, |k| if k == 0 { ExactScalar::zero() } else { frac(if k % 2 == 1 { 1 } else { -1 }, k as i64) })
}

/// `Σ_{i+j=m} Φ_i α¹_j − Σ_{i+j+l=m} α²_j(Φ_i ·, Φ_l ·)` with `Φ_0 = id`.
fn intertwining_defect(f1: &FormalFamily, f2: &FormalFamily, big_phi: &Series, m: usize) -> StructureTensor {
    let d = f1.dim();
    let mut acc = StructureTensor::zeros(d, 2);
    for i in 0..=m {
        acc.add_assign_scaled(&compose1(&big_phi[i], f1.term(m - i)), &one());
    }
    for j in 0..=m {
        for i in 0..=(m - j) {
            let l = m - j - i;
            let inner = end_compose(&end_compose(f2.term(j), 0, &big_phi[i]).expect("dim"), 1, &big_phi[l]).expect("dim");
            acc.add_assign_scaled(&inner, &-one());
        }
    }
    acc
}

/// Searches for a gauge up to `order`; `None` when the linear condition at
/// some order has no solution.
pub fn gauge_equivalent(f1: &FormalFamily, f2: &FormalFamily, order: usize) -> Result<Option<Gauge>> {
    if f1.base() != f2.base() {
        return Err(Error::Precondition("families have different base structures".into()));
    }
    if order > f1.order() || order > f2.order() {
        return Err(Error::Precondition(format!(
            "gauge order {order} exceeds the truncation orders {} and {}",
            f1.order(),
            f2.order()
        )));
    }
    let d = f1.dim();
    let mu = f1.term(0);
    let space1 = CochainSpace::new(Flavor::Associative, d, 1);
    let space2 = CochainSpace::new(Flavor::Associative, d, 2);
    // Φ ↦ μ(·, Φ·) − Φμ + μ(Φ·, ·), which is the coefficient of Φ_m in the defect.
    let cols: Vec<Vec<ExactScalar>> = (0..space1.dim())
        .map(|j| space2.coordinates(&hochschild_differential(mu, &space1.basis_tensor(j)).expect("binary")))
        .collect();
    let l = ExactMatrix::from_columns(space2.dim(), &cols);
    let mut big_phi: Series = vec![StructureTensor::identity(d)];
    for m in 1..=order {
        big_phi.push(StructureTensor::zeros(d, 1));
        // defect is linear in Φ_m with coefficient −L
        let rhs = space2.coordinates(&intertwining_defect(f1, f2, &big_phi, m));
        let Some(sol) = l.solve_affine(&rhs) else { return Ok(None) };
        big_phi[m] = space1.tensor(&sol.particular);
        debug_assert!(intertwining_defect(f1, f2, &big_phi, m).is_zero());
    }
    let generators = log_series(&big_phi, order).into_iter().skip(1).collect();
    Ok(Some(Gauge { generators }))
}

/// Checks by substitution that `exp(φ)` intertwines the families mod `ħ^{N+1}`.
pub fn gauge_intertwines(f1: &FormalFamily, f2: &FormalFamily, gauge: &Gauge) -> bool {
    let order = gauge.generators.len();
    if order > f1.order() || order > f2.order() {
        return false;
    }
    let mut phi: Series = vec![StructureTensor::zeros(f1.dim(), 1)];
    phi.extend(gauge.generators.iter().cloned());
    let big_phi = exp_series(&phi, order);
    (0..=order).all(|m| intertwining_defect(f1, f2, &big_phi, m).is_zero())
}

impl Gauge {
    /// `−φ`, the inverse gauge.
    pub fn inverse(&self) -> Gauge {
        Gauge { generators: self.generators.iter().map(|g| g.scale(&-one())).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::binary_tensor;
    use crate::deformation::testbed::TruncatedPlane;

    fn plane() -> (TruncatedPlane, AlgebraStructure) {
        let p = TruncatedPlane::new(3);
        let a = AlgebraStructure::new(Flavor::Commutative, p.product()).unwrap();
        (p, a)
    }

    #[test]
    fn certification() {
        let (p, a) = plane();
        let f = p.exponential_family(3).unwrap();
        assert_eq!(f.certified_order(), 3);
        let broken = FormalFamily::new(a.clone(), vec![p.log_canonical_bracket(), p.weyl_bracket()]).unwrap();
        assert_eq!(broken.certified_order(), 1);
        assert!(deform_step(&broken).is_err());
        // a first-order term that is not a Hochschild cocycle
        let non_cocycle = p.weyl_bracket();
        let f = FormalFamily::new(a.clone(), vec![non_cocycle.clone()]).unwrap();
        assert_eq!(f.certified_order(), 0);
        assert!(quantize(&a, &non_cocycle, 2).is_err());
        let bad_base = AlgebraStructure::new(Flavor::Lie, binary_tensor(3, &[
            ((0, 1), vec![int(0), int(0), int(1)]), ((1, 0), vec![int(0), int(0), int(-1)]),
            ((0, 2), vec![int(1), int(0), int(0)]), ((2, 0), vec![int(-1), int(0), int(0)])])).unwrap();
        assert!(FormalFamily::new(bad_base, vec![]).is_err());
    }

    #[test]
    fn zero_first_order() {
        let (_, a) = plane();
        let f = FormalFamily::constant(a.clone(), 1).unwrap();
        let step = deform_step(&f).unwrap();
        assert!(step.obstruction.is_zero());
        let (part, hom) = step.solutions.unwrap();
        assert!(part.is_zero());
        let z = differential_matrix(&a, 2).unwrap().kernel_basis().len();
        assert_eq!(hom.len(), z);
        let q = quantize(&a, &StructureTensor::zeros(6, 2), 3).unwrap().unwrap();
        assert!(q.corrections().iter().all(StructureTensor::is_zero));
    }

    #[test]
    fn second_order_matches_exponential() {
        let (p, a) = plane();
        let f = FormalFamily::new(a, vec![p.log_canonical_bracket()]).unwrap();
        let step = deform_step(&f).unwrap();
        assert!(step.class_vanishes());
        let (part, hom) = step.solutions.unwrap();
        let moyal = p.exponential_term(2);
        let diff = CochainSpace::new(Flavor::Associative, 6, 2).coordinates(&moyal.sub(&part).unwrap());
        let homs: Vec<Vec<ExactScalar>> =
            hom.iter().map(|h| CochainSpace::new(Flavor::Associative, 6, 2).coordinates(h)).collect();
        assert!(crate::linalg::SpanReducer::new(36 * 6, &homs).contains(&diff));
        let mut with = f.corrections().to_vec();
        with.push(moyal);
        assert_eq!(FormalFamily::new(f.base().clone(), with).unwrap().certified_order(), 2);
    }

    #[test]
    fn one_dimensional_seeds_are_rigid() {
        let field = AlgebraStructure::new(Flavor::Associative, StructureTensor::from_data(1, 2, vec![int(1)]).unwrap()).unwrap();
        let seed = StructureTensor::from_data(1, 2, vec![int(5)]).unwrap();
        let q = quantize(&field, &seed, 3).unwrap().unwrap();
        let constant = FormalFamily::constant(field.clone(), 3).unwrap();
        let g = gauge_equivalent(&q, &constant, 3).unwrap().unwrap();
        assert!(gauge_intertwines(&q, &constant, &g));
    }

    #[test]
    fn classical_limits() {
        let (p, a) = plane();
        let m = p.exponential_family(2).unwrap();
        let c = classical_limit(&m, true).unwrap();
        assert_eq!(c.product, p.product());
        assert_eq!(c.bracket, p.log_canonical_bracket());
        assert_eq!((c.leibniz, c.jacobi), (Check::Holds, Check::Holds));
        let c = classical_limit(&FormalFamily::constant(a.clone(), 2).unwrap(), true).unwrap();
        assert!(c.bracket.is_zero());
        let sym = p.product();
        let f = FormalFamily::new(a, vec![sym]).unwrap();
        let c = classical_limit(&f, true).unwrap();
        assert_eq!(c.jacobi, Check::NotApplicable);
        let tri = binary_tensor(2, &[((0, 0), vec![int(1), int(0)]), ((0, 1), vec![int(0), int(1)])]);
        let nc = FormalFamily::constant(AlgebraStructure::new(Flavor::Associative, tri).unwrap(), 1).unwrap();
        assert!(classical_limit(&nc, true).is_err());
        assert!(classical_limit(&nc, false).is_ok());
    }

    #[test]
    fn gauges() {
        let (p, a) = plane();
        let m = p.exponential_family(2).unwrap();
        let g = gauge_equivalent(&m, &m, 2).unwrap().unwrap();
        assert!(g.is_trivial());
        let q = quantize(&a, &p.log_canonical_bracket(), 2).unwrap().unwrap();
        let g = gauge_equivalent(&m, &q, 2).unwrap().unwrap();
        assert!(gauge_intertwines(&m, &q, &g));
        let back = gauge_equivalent(&q, &m, 2).unwrap().unwrap();
        assert!(gauge_intertwines(&q, &m, &back));
        assert!(gauge_intertwines(&q, &m, &g.inverse()));
        let doubled = FormalFamily::new(a.clone(), vec![p.log_canonical_bracket().scale(&int(2))]).unwrap();
        let once = FormalFamily::new(a, vec![p.log_canonical_bracket()]).unwrap();
        assert!(gauge_equivalent(&once, &doubled, 1).unwrap().is_none());
    }
}
