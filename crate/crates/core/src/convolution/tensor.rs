//! Multilinear maps `V^{⊗n} → V` on a finite-dimensional `V`, stored as
//! structure tensors.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::scalar::{format_rational, one, parse_rational};
use crate::linalg::ExactScalar;
use crate::symmetry::Permutation;

/// `T[o; i_1, .., i_n]` is the `e_o`-coefficient of `T(e_{i_1}, .., e_{i_n})`.
/// Entries are stored with `o` most significant, then `i_1, .., i_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StructureTensor {
    dim: usize,
    arity: usize,
    data: Vec<ExactScalar>,
}

impl fmt::Debug for StructureTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<String> = self
            .entries()
            .filter(|(_, v)| !v.is_zero())
            .map(|(idx, v)| format!("{:?}:{}", idx, format_rational(v)))
            .collect();
        write!(f, "T(dim {}, arity {}; {})", self.dim, self.arity, nz.join(" "))
    }
}

impl StructureTensor {
    pub fn zeros(dim: usize, arity: usize) -> Self {
        StructureTensor { dim, arity, data: vec![ExactScalar::zero(); dim.pow(arity as u32 + 1)] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut t = Self::zeros(dim, 1);
        for i in 0..dim {
            t.set(i, &[i], one());
        }
        t
    }

    pub fn from_data(dim: usize, arity: usize, data: Vec<ExactScalar>) -> Result<Self> {
        if data.len() != dim.pow(arity as u32 + 1) {
            return Err(Error::Precondition(format!(
                "tensor of arity {arity} over dim {dim} needs {} entries, got {}",
                dim.pow(arity as u32 + 1),
                data.len()
            )));
        }
        Ok(StructureTensor { dim, arity, data })
    }

    /// Builds entries from `f(o, inputs)`.
    pub fn from_fn(dim: usize, arity: usize, f: impl Fn(usize, &[usize]) -> ExactScalar) -> Self {
        let mut t = Self::zeros(dim, arity);
        for (k, (o, idx)) in multi_indices(dim, arity + 1).map(|v| (v[0], v[1..].to_vec())).enumerate() {
            t.data[k] = f(o, &idx);
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn data(&self) -> &[ExactScalar] {
        &self.data
    }

    fn offset(&self, o: usize, inputs: &[usize]) -> usize {
        debug_assert_eq!(inputs.len(), self.arity);
        inputs.iter().fold(o, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, o: usize, inputs: &[usize]) -> &ExactScalar {
        &self.data[self.offset(o, inputs)]
    }

    pub fn set(&mut self, o: usize, inputs: &[usize], v: ExactScalar) {
        let k = self.offset(o, inputs);
        self.data[k] = v;
    }

    /// `(output, inputs)` pairs with their entries, in storage order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &ExactScalar)> + '_ {
        multi_indices(self.dim, self.arity + 1).zip(self.data.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.arity != other.arity {
            return Err(Error::Precondition(format!(
                "tensor shapes differ: (dim {}, arity {}) vs (dim {}, arity {})",
                self.dim, self.arity, other.dim, other.arity
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(StructureTensor { data, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-one()))
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &ExactScalar) {
        assert!(self.dim == other.dim && self.arity == other.arity, "tensor shapes differ");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b * c;
            }
        }
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        StructureTensor { data: self.data.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    /// Evaluation on basis vectors.
    pub fn apply_basis(&self, inputs: &[usize]) -> Vec<ExactScalar> {
        (0..self.dim).map(|o| self.get(o, inputs).clone()).collect()
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn apply(&self, inputs: &[Vec<ExactScalar>]) -> Vec<ExactScalar> {
        assert_eq!(inputs.len(), self.arity);
        let mut out = vec![ExactScalar::zero(); self.dim];
        for idx in multi_indices(self.dim, self.arity) {
            let mut c = one();
            for (k, &i) in idx.iter().enumerate() {
                if inputs[k][i].is_zero() {
                    c = ExactScalar::zero();
                    break;
                }
                c *= &inputs[k][i];
            }
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().enumerate() {
                let t = self.get(o, &idx);
                if !t.is_zero() {
                    *x += t * &c;
                }
            }
        }
        out
    }

    /// `R(x_1, .., x_n) = T(x_{π(1)}, .., x_{π(n)})` (0-based images).
    /// This is a left action: `permute(permute(T, τ), σ) = permute(T, σ∘τ)`.
    pub fn permute_inputs(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.arity, "permutation length");
        let mut out = Self::zeros(self.dim, self.arity);
        let mut src = vec![0; self.arity];
        for (k, idx) in multi_indices(self.dim, self.arity + 1).enumerate() {
            for (j, &p) in perm.iter().enumerate() {
                src[j] = idx[1 + p];
            }
            out.data[k] = self.get(idx[0], &src).clone();
        }
        out
    }

    pub fn act(&self, perm: &Permutation) -> Self {
        self.permute_inputs(perm.images())
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.arity.saturating_sub(1)).all(|t| {
            let s = Permutation::adjacent(self.arity, t);
            self.act(&s) == self.scale(&-one())
        })
    }

    /// `(1/n!) Σ_σ sgn(σ) T^σ`.
    pub fn antisymmetrize(&self) -> Self {
        let perms = Permutation::all(self.arity);
        let mut out = Self::zeros(self.dim, self.arity);
        for p in &perms {
            out.add_assign_scaled(&self.act(p), &ExactScalar::from_integer(p.sign().into()));
        }
        out.scale(&ExactScalar::new(1.into(), (perms.len() as i64).into()))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.data.iter().map(format_rational).collect()
    }
}

/// Partial composition in `End_V`: the output of `g` feeds input `i`
/// (0-based) of `f`.
pub fn end_compose(f: &StructureTensor, i: usize, g: &StructureTensor) -> Result<StructureTensor> {
    if f.dim != g.dim {
        return Err(Error::Precondition(format!("dimension mismatch: {} vs {}", f.dim, g.dim)));
    }
    if i >= f.arity {
        return Err(Error::Precondition(format!("slot {} outside 1..{}", i + 1, f.arity)));
    }
    let (m, k, d) = (f.arity, g.arity, f.dim);
    let mut out = StructureTensor::zeros(d, m + k - 1);
    let mut f_idx = vec![0; m];
    for (pos, idx) in multi_indices(d, m + k).enumerate() {
        let (o, xs) = (idx[0], &idx[1..]);
        f_idx[..i].copy_from_slice(&xs[..i]);
        f_idx[i + 1..].copy_from_slice(&xs[i + k..]);
        let ys = &xs[i..i + k];
        let mut acc = ExactScalar::zero();
        for j in 0..d {
            let gj = g.get(j, ys);
            if gj.is_zero() {
                continue;
            }
            f_idx[i] = j;
            let fv = f.get(o, &f_idx);
            if !fv.is_zero() {
                acc += fv * gj;
            }
        }
        out.data[pos] = acc;
    }
    Ok(out)
}

/// All tuples in `{0..d}^len`, lexicographically.
pub(crate) fn multi_indices(d: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if d == 0 { 0 } else { d.pow(len as u32) };
    (0..total).map(move |mut k| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = k % d;
            k /= d;
        }
        v
    })
}

/// JSON form: `dim`, `arity`, and the entries as rational strings in
/// storage order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDocument {
    pub dim: usize,
    pub arity: usize,
    pub entries: Vec<String>,
}

impl From<&StructureTensor> for TensorDocument {
    fn from(t: &StructureTensor) -> Self {
        TensorDocument { dim: t.dim, arity: t.arity, entries: t.to_strings() }
    }
}

impl TryFrom<&TensorDocument> for StructureTensor {
    type Error = Error;

    fn try_from(doc: &TensorDocument) -> Result<Self> {
        let data = doc.entries.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        StructureTensor::from_data(doc.dim, doc.arity, data).map_err(|e| Error::Schema(e.to_string()))
    }
}
