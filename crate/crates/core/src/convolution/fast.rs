//! Closed-form products on structure tensors: the Nijenhuis–Richardson
//! product for antisymmetric maps, the Gerstenhaber product for plain
//! multilinear maps, and the classical complexes they produce.

use num_traits::Zero;

use super::tensor::{end_compose, StructureTensor};
use crate::error::{Error, Result};
use crate::linalg::scalar::{one, sign};
use crate::linalg::ExactScalar;
use crate::symmetry::{choose, Permutation};

fn check_pair(f: &StructureTensor, g: &StructureTensor) -> Result<()> {
    if f.dim() != g.dim() {
        return Err(Error::Precondition(format!("dimension mismatch: {} vs {}", f.dim(), g.dim())));
    }
    if f.arity() == 0 || g.arity() == 0 {
        return Err(Error::Precondition("arity must be at least 1".into()));
    }
    Ok(())
}

/// Cochains may have arity 0 (elements of `V`).
fn check_cochain(mu: &StructureTensor, f: &StructureTensor) -> Result<()> {
    if mu.dim() != f.dim() {
        return Err(Error::Precondition(format!("dimension mismatch: {} vs {}", mu.dim(), f.dim())));
    }
    Ok(())
}

/// `f ⋆ g = (−1)^{(p−1)(q−1)} Σ_τ sgn(τ) f(g(x_{τ(1..q)}), x_{τ(q+1..)})`,
/// summed over `(q, p−1)`-unshuffles.
pub fn nr_star(f: &StructureTensor, g: &StructureTensor) -> Result<StructureTensor> {
    check_pair(f, g)?;
    for (name, t) in [("f", f), ("g", g)] {
        if !t.is_antisymmetric() {
            return Err(Error::Precondition(format!("{name} is not antisymmetric")));
        }
    }
    let (p, q) = (f.arity(), g.arity());
    let n = p + q - 1;
    let inner = end_compose(f, 0, g)?;
    let mut out = StructureTensor::zeros(f.dim(), n);
    for first in choose(n, q) {
        let mut images = first.clone();
        images.extend((0..n).filter(|i| !first.contains(i)));
        let perm = Permutation::from_images(images).expect("a permutation");
        out.add_assign_scaled(&inner.act(&perm), &ExactScalar::from_integer(perm.sign().into()));
    }
    Ok(out.scale(&sign(((p - 1) * (q - 1)) as i64)))
}

/// `f ⋆ g = (−1)^{(p−1)(q−1)} Σ_i (−1)^{(q−1)(i−1)} f ∘_i g` (slots
/// counted from 1).
pub fn ass_star(f: &StructureTensor, g: &StructureTensor) -> Result<StructureTensor> {
    check_pair(f, g)?;
    let (p, q) = (f.arity(), g.arity());
    let mut out = StructureTensor::zeros(f.dim(), p + q - 1);
    for i in 0..p {
        out.add_assign_scaled(&end_compose(f, i, g)?, &sign(((q - 1) * i) as i64));
    }
    Ok(out.scale(&sign(((p - 1) * (q - 1)) as i64)))
}

/// `[f, g] = f ⋆ g − (−1)^{|f||g|} g ⋆ f` for a tensor-level product,
/// with `|f| = 1 − arity`.
pub fn graded_bracket(
    star: impl Fn(&StructureTensor, &StructureTensor) -> Result<StructureTensor>,
    f: &StructureTensor,
    g: &StructureTensor,
) -> Result<StructureTensor> {
    let s = sign(((f.arity() - 1) * (g.arity() - 1)) as i64);
    let fg = star(f, g)?;
    let gf = star(g, f)?;
    fg.sub(&gf.scale(&s))
}

/// The Chevalley–Eilenberg coboundary of an antisymmetric `f` with values
/// in the adjoint module:
/// `Σ_i (−1)^i [x_i, f(.. x̂_i ..)] + Σ_{i<j} (−1)^{i+j} f([x_i, x_j], .. x̂_i .. x̂_j ..)`.
pub fn chevalley_eilenberg_differential(mu: &StructureTensor, f: &StructureTensor) -> Result<StructureTensor> {
    ce_with_pair_sign(mu, f, 0)
}

/// The same double sum with the second sign shifted by `(−1)^shift`.
/// Only `shift = 0` squares to zero; the other value is kept for
/// comparison.
pub fn ce_with_pair_sign(mu: &StructureTensor, f: &StructureTensor, shift: i64) -> Result<StructureTensor> {
    check_cochain(mu, f)?;
    if mu.arity() != 2 {
        return Err(Error::Precondition("the bracket must be binary".into()));
    }
    let n = f.arity();
    let d = f.dim();
    let mut out = StructureTensor::zeros(d, n + 1);
    // μ(x_i, f(rest)): compose into slot 1 then move x_i to the front.
    let outer = end_compose(mu, 1, f)?;
    for i in 0..=n {
        let mut images = vec![i];
        images.extend((0..=n).filter(|&k| k != i));
        out.add_assign_scaled(&outer.permute_inputs(&images), &sign(i as i64));
    }
    if n == 0 {
        return Ok(out);
    }
    let inner = end_compose(f, 0, mu)?;
    for i in 0..=n {
        for j in i + 1..=n {
            let mut images = vec![i, j];
            images.extend((0..=n).filter(|&k| k != i && k != j));
            out.add_assign_scaled(&inner.permute_inputs(&images), &sign((i + j) as i64 + shift));
        }
    }
    Ok(out)
}

/// `d f(a_0, .., a_n) = a_0 f(a_1, .., a_n) + Σ_{i=1}^n (−1)^i f(.., a_{i−1} a_i, ..)
/// + (−1)^{n+1} f(a_0, .., a_{n−1}) a_n`.
pub fn hochschild_differential(mu: &StructureTensor, f: &StructureTensor) -> Result<StructureTensor> {
    check_cochain(mu, f)?;
    if mu.arity() != 2 {
        return Err(Error::Precondition("the product must be binary".into()));
    }
    let n = f.arity();
    let mut out = end_compose(mu, 1, f)?;
    for i in 1..=n {
        out.add_assign_scaled(&end_compose(f, i - 1, mu)?, &sign(i as i64));
    }
    out.add_assign_scaled(&end_compose(mu, 0, f)?, &sign(n as i64 + 1));
    Ok(out)
}

/// `J(x, y, z) = [[x, y], z] + [[y, z], x] + [[z, x], y]`.
pub fn jacobiator(bracket: &StructureTensor) -> Result<StructureTensor> {
    if bracket.arity() != 2 {
        return Err(Error::Precondition("the bracket must be binary".into()));
    }
    let inner = end_compose(bracket, 0, bracket)?;
    let mut out = StructureTensor::zeros(bracket.dim(), 3);
    for cyc in [[0, 1, 2], [1, 2, 0], [2, 0, 1]] {
        out.add_assign_scaled(&inner.permute_inputs(&cyc), &one());
    }
    Ok(out)
}

/// `(xy)z − x(yz)`.
pub fn associator(product: &StructureTensor) -> Result<StructureTensor> {
    if product.arity() != 2 {
        return Err(Error::Precondition("the product must be binary".into()));
    }
    end_compose(product, 0, product)?.sub(&end_compose(product, 1, product)?)
}

/// Structure tensor of a bracket or product from `(i, j) ↦ Σ_k c_k e_k`
/// on basis pairs.
pub fn binary_tensor(dim: usize, table: &[((usize, usize), Vec<ExactScalar>)]) -> StructureTensor {
    let mut t = StructureTensor::zeros(dim, 2);
    for ((i, j), v) in table {
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                t.set(k, &[*i, *j], c.clone());
            }
        }
    }
    t
}
