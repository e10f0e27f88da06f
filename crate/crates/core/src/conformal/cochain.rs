use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::algebra::{render_value, LieConformalAlgebra};
use super::poly::MPoly;
use crate::convolution::{ConvolutionAlgebra, CooperadTag, StructureTensor};
use crate::deformation::{AlgebraStructure, Flavor};
use crate::error::{Error, Result};
use crate::linalg::scalar::{int, one, sign};
use crate::linalg::ExactScalar;
use crate::symmetry::{factorial, Permutation};

/// An `n`-cochain given on tuples of non-central generators, extended
/// sesquilinearly and vanishing on central ones. Values are polynomials in
/// `T, λ_0, .., λ_{n−2}` per generator; the last variable is eliminated by
/// `λ_{n−1} = −λ_0 − .. − λ_{n−2} − T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalCochain {
    arity: usize,
    rank: usize,
    values: BTreeMap<Vec<usize>, Vec<MPoly>>,
}

type Basic = BTreeMap<Vec<usize>, Vec<MPoly>>;

impl ConformalCochain {
    pub fn zero(l: &LieConformalAlgebra, arity: usize) -> Result<Self> {
        Self::new(l, arity, BTreeMap::new())
    }

    pub fn new(l: &LieConformalAlgebra, arity: usize, values: BTreeMap<Vec<usize>, Vec<MPoly>>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Precondition("conformal cochains have arity ≥ 1".into()));
        }
        let mut kept = BTreeMap::new();
        for (t, mut v) in values {
            if t.len() != arity || t.iter().any(|&g| g >= l.rank() || l.is_central(g)) {
                return Err(Error::Precondition(format!("{t:?} is not a tuple of {arity} non-central generators")));
            }
            if v.len() != l.rank() || v.iter().any(|p| p.nvars() != arity) {
                return Err(Error::Precondition(format!("values need {} polynomials in {arity} variables", l.rank())));
            }
            l.normalize(&mut v);
            l.caps().check(&v)?;
            if v.iter().any(|p| !p.is_zero()) {
                kept.insert(t, v);
            }
        }
        Ok(ConformalCochain { arity, rank: l.rank(), values: kept })
    }

    /// A constant cochain from a multilinear map on the generators.
    pub fn from_constant_tensor(l: &LieConformalAlgebra, f: &StructureTensor) -> Result<Self> {
        if f.dim() != l.rank() {
            return Err(Error::Precondition("tensor dimension must equal the rank".into()));
        }
        let n = f.arity();
        let free = l.free_generators();
        let mut values = BTreeMap::new();
        for t in tuples(&free, n) {
            let v: Vec<MPoly> = (0..l.rank()).map(|o| MPoly::constant(n, f.get(o, &t).clone())).collect();
            values.insert(t, v);
        }
        Self::new(l, n, values)
    }

    /// The multilinear map on generators, if every value is constant.
    pub fn to_constant_tensor(&self) -> Option<StructureTensor> {
        let mut t = StructureTensor::zeros(self.rank, self.arity);
        for (idx, v) in &self.values {
            for (o, p) in v.iter().enumerate() {
                if p.terms().keys().any(|e| e.iter().any(|&k| k > 0)) {
                    return None;
                }
                t.set(o, idx, p.coefficient(&vec![0; self.arity]));
            }
        }
        Some(t)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &BTreeMap<Vec<usize>, Vec<MPoly>> {
        &self.values
    }

    pub fn value(&self, tuple: &[usize]) -> Vec<MPoly> {
        self.values.get(tuple).cloned().unwrap_or_else(|| vec![MPoly::zero(self.arity); self.rank])
    }

    /// Projection onto skew-symmetric cochains.
    pub fn skew_symmetrize(&self, l: &LieConformalAlgebra) -> Result<Self> {
        let basic = skew_basic(l, &embed(&self.values, self.arity), self.arity + 1);
        Self::new(l, self.arity, reduce(l, &basic, self.arity))
    }

    pub fn is_skew(&self, l: &LieConformalAlgebra) -> Result<bool> {
        Ok(&self.skew_symmetrize(l)? == self)
    }

    pub fn to_document(&self, l: &LieConformalAlgebra) -> CochainDocument {
        let vars: Vec<String> =
            std::iter::once("T".to_string()).chain((0..self.arity - 1).map(|k| format!("λ{k}"))).collect();
        let vars: Vec<&str> = vars.iter().map(String::as_str).collect();
        CochainDocument {
            arity: self.arity,
            values: self
                .values
                .iter()
                .map(|(t, v)| {
                    let key: Vec<&str> = t.iter().map(|&g| l.names()[g].as_str()).collect();
                    (key.join(","), render_value(v, l.names(), &vars))
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CochainDocument {
    pub arity: usize,
    pub values: BTreeMap<String, String>,
}

fn tuples(free: &[usize], n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|t| free.iter().map(move |&g| [t.clone(), vec![g]].concat())).collect();
    }
    out
}

fn vars(nvars: usize) -> Vec<MPoly> {
    (0..nvars).map(|k| MPoly::var(nvars, k)).collect()
}

fn map_value(v: &[MPoly], images: &[MPoly]) -> Vec<MPoly> {
    v.iter().map(|p| p.substitute(images)).collect()
}

fn accumulate(acc: &mut Vec<MPoly>, v: &[MPoly], c: &ExactScalar) {
    for (a, p) in acc.iter_mut().zip(v) {
        a.add_assign_scaled(p, c);
    }
}

/// Reduced values into `T, λ_0, .., λ_{n−1}`, independent of `λ_{n−1}`.
fn embed(values: &Basic, n: usize) -> Basic {
    let target = vars(n + 1);
    values.iter().map(|(t, v)| (t.clone(), map_value(v, &target[..n]))).collect()
}

/// `(1/n!) Σ_σ sgn σ · γ(a_σ(0), ..; λ_σ(0), ..)` on every tuple.
fn skew_basic(l: &LieConformalAlgebra, gamma: &Basic, nvars: usize) -> Basic {
    let n = nvars - 1;
    let perms = Permutation::all(n);
    let scale = ExactScalar::from_integer((factorial(n) as i64).into()).recip();
    let all = tuples(&l.free_generators(), n);
    let x = vars(nvars);
    let mut out = Basic::new();
    for t in all {
        let mut acc = vec![MPoly::zero(nvars); l.rank()];
        for p in &perms {
            let src: Vec<usize> = (0..n).map(|k| t[p.apply(k)]).collect();
            if let Some(v) = gamma.get(&src) {
                let mut images = vec![x[0].clone()];
                images.extend((0..n).map(|k| x[p.apply(k) + 1].clone()));
                accumulate(&mut acc, &map_value(v, &images), &(int(p.sign()) * &scale));
            }
        }
        l.normalize(&mut acc);
        if acc.iter().any(|p| !p.is_zero()) {
            out.insert(t, acc);
        }
    }
    out
}

/// Eliminates `λ_{n−1} = −T − Σ_{k<n−1} λ_k`.
fn reduce(l: &LieConformalAlgebra, gamma: &Basic, n: usize) -> Basic {
    let x = vars(n);
    let mut images = x.clone();
    let last = x.iter().fold(MPoly::zero(n), |acc, v| acc.sub(v));
    images.push(last);
    gamma
        .iter()
        .map(|(t, v)| {
            let mut r = map_value(v, &images);
            l.normalize(&mut r);
            (t.clone(), r)
        })
        .filter(|(_, v)| v.iter().any(|p| !p.is_zero()))
        .collect()
}

/// The differential on sesquilinear skew cochains in all `n` λ variables:
/// `Σ_i (−1)^i [a_i {λ_i} γ(.. â_i ..)]
///  + Σ_{i<j} (−1)^{i+j} γ_{λ_i+λ_j, ..}([a_i {λ_i} a_j], .. â_i .. â_j ..)`.
fn d_basic(l: &LieConformalAlgebra, gamma: &Basic, n: usize) -> Basic {
    let nv = n + 2;
    let x = vars(nv);
    let free = l.free_generators();
    let zero_value = vec![MPoly::zero(n + 1); l.rank()];
    let rows: Vec<(Vec<usize>, Vec<MPoly>)> = tuples(&free, n + 1)
        .into_par_iter()
        .map(|a| {
            let mut acc = vec![MPoly::zero(nv); l.rank()];
            for i in 0..=n {
                let rest: Vec<usize> = (0..=n).filter(|&k| k != i).collect();
                let key: Vec<usize> = rest.iter().map(|&k| a[k]).collect();
                let Some(v) = gamma.get(&key) else { continue };
                let mut images = vec![x[0].clone()];
                images.extend(rest.iter().map(|&k| x[k + 1].clone()));
                let term = l.act(a[i], i + 1, &map_value(v, &images));
                accumulate(&mut acc, &term, &sign(i as i64));
            }
            for i in 0..=n {
                for j in i + 1..=n {
                    let br = l.bracket_at(a[i], a[j], nv, &x[i + 1]);
                    let nu = x[i + 1].add(&x[j + 1]);
                    let rest: Vec<usize> = (0..=n).filter(|&k| k != i && k != j).collect();
                    let mut t_images = x.clone();
                    t_images[0] = nu.scale(&-one());
                    let mut images = vec![x[0].clone(), nu.clone()];
                    images.extend(rest.iter().map(|&k| x[k + 1].clone()));
                    for (g, q) in br.iter().enumerate() {
                        if q.is_zero() || l.is_central(g) {
                            continue;
                        }
                        let mut key = vec![g];
                        key.extend(rest.iter().map(|&k| a[k]));
                        let v = gamma.get(&key).unwrap_or(&zero_value);
                        let coef = q.substitute(&t_images);
                        let term: Vec<MPoly> = map_value(v, &images).iter().map(|p| p.mul(&coef)).collect();
                        accumulate(&mut acc, &term, &sign((i + j) as i64));
                    }
                }
            }
            l.normalize(&mut acc);
            (a, acc)
        })
        .collect();
    rows.into_iter().filter(|(_, v)| v.iter().any(|p| !p.is_zero())).collect()
}

/// `∂f` on `(a_0, .., a_n)`: lift `f` to all `n` λ variables by
/// skew-symmetrizing, apply the bracket differential and eliminate the
/// last variable again.
pub fn dsk_differential(l: &LieConformalAlgebra, f: &ConformalCochain) -> Result<ConformalCochain> {
    if f.rank != l.rank() {
        return Err(Error::Precondition("cochain and algebra ranks differ".into()));
    }
    let n = f.arity;
    let lifted = skew_basic(l, &embed(&f.values, n), n + 1);
    let d = d_basic(l, &lifted, n);
    ConformalCochain::new(l, n + 1, reduce(l, &d, n + 1))
}

/// Skew-symmetrized monomial cochains with `T`- and λ-degree at most
/// `degree`, zeros and repeats dropped. They span the skew cochains of
/// that degree.
pub fn cochain_sweep(l: &LieConformalAlgebra, arity: usize, degree: u32) -> Result<Vec<ConformalCochain>> {
    let free = l.free_generators();
    let mut exps: Vec<Vec<u32>> = vec![Vec::new()];
    for v in 0..arity {
        exps = exps.into_iter().flat_map(|e| (0..=degree).map(move |k| [e.clone(), vec![k]].concat())).collect();
        if v > 0 {
            exps.retain(|e| e[1..].iter().sum::<u32>() <= degree);
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in tuples(&free, arity) {
        for e in &exps {
            for g in 0..l.rank() {
                if l.is_central(g) && e[0] > 0 {
                    continue;
                }
                let mut v = vec![MPoly::zero(arity); l.rank()];
                v[g] = MPoly::monomial(arity, e.clone(), one());
                let c = ConformalCochain::new(l, arity, BTreeMap::from([(t.clone(), v)]))?.skew_symmetrize(l)?;
                if !c.is_zero() && seen.insert(format!("{:?}", c.values)) {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// The finite-dimensional Lie bracket of a λ-constant, `T`-free table
/// without central generators.
pub fn reduce_to_chevalley_eilenberg(l: &LieConformalAlgebra) -> Result<AlgebraStructure> {
    let r = l.rank();
    if (0..r).any(|i| l.is_central(i)) {
        return Err(Error::Precondition("central generators have no finite-dimensional counterpart".into()));
    }
    let mut mu = StructureTensor::zeros(r, 2);
    for i in 0..r {
        for j in 0..r {
            for (g, tp, lp, c) in l.bracket(i, j).terms() {
                if tp > 0 || lp > 0 {
                    return Err(Error::Precondition(format!("bracket ({i}, {j}) is not constant")));
                }
                mu.set(g, &[i, j], c);
            }
        }
    }
    AlgebraStructure::new(Flavor::Lie, mu)
}

/// Compares `dsk_differential` on the constant cochain of `f` with the
/// convolution differential `[μ, f]` of the reduced bracket.
pub fn ce_intertwines(l: &LieConformalAlgebra, f: &StructureTensor) -> Result<bool> {
    let a = reduce_to_chevalley_eilenberg(l)?;
    let conv = ConvolutionAlgebra::new(CooperadTag::Lie, a.dim())?;
    let mu = conv.from_tensor(a.tensor())?;
    let expected = conv.to_tensor(&conv.twisted_differential(&mu, &conv.from_tensor(f)?)?)?;
    let got = dsk_differential(l, &ConformalCochain::from_constant_tensor(l, f)?)?;
    Ok(got.to_constant_tensor().is_some_and(|t| t == expected))
}
