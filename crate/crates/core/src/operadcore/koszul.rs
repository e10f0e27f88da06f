use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use num_traits::Zero;

use super::free::FreeOperadComponent;
use super::quadratic::{context_span, QuadraticData};
use super::shift::HomogeneousShift;
use super::tree::{add_term, cuts, Alphabet, DecoratedTree, Letter, LetterSpace, TreeCombination};
use crate::error::{guardrail, Error, Result};
use crate::linalg::{ExactMatrix, ExactScalar};
use crate::symmetry::{Permutation, SnRepresentation};

pub const MAX_DUAL_ARITY: usize = 5;

/// One weight-homogeneous piece `C(sE, s²R)^{(d)}(n)` inside `F(sE)^{(d)}(n)`.
///
/// The basis is the reduced-echelon kernel basis of the edge-contraction
/// constraints: basis vector `j` has a 1 in tree coordinate
/// `free_columns[j]` and a 0 in every other free column, so the
/// coordinates of `x ∈ C` are `x[free_columns]`.
#[derive(Clone, Debug)]
pub struct CooperadComponent {
    pub arity: usize,
    pub weight: usize,
    /// Homological degree of the piece.
    pub degree: i64,
    pub ambient: FreeOperadComponent,
    pub basis: Vec<Vec<ExactScalar>>,
    pub free_columns: Vec<usize>,
    pub rep: SnRepresentation,
}

impl CooperadComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `dim × dim(ambient)` inclusion, as columns.
    pub fn inclusion(&self) -> ExactMatrix {
        ExactMatrix::from_columns(self.ambient.dim(), &self.basis)
    }

    pub fn vector(&self, coords: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut v = vec![ExactScalar::zero(); self.ambient.dim()];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        v
    }

    /// Coordinates of an ambient vector, when it lies in the component.
    pub fn coordinates(&self, v: &[ExactScalar]) -> Option<Vec<ExactScalar>> {
        let coords: Vec<ExactScalar> = self.free_columns.iter().map(|&c| v[c].clone()).collect();
        (self.vector(&coords) == v).then_some(coords)
    }

    /// Matrix of the leaf relabelling `x ↦ perm(x)` on the component.
    pub fn relabel_matrix(&self, perm: &Permutation) -> ExactMatrix {
        let m = self.ambient.relabel_matrix(perm);
        let cols: Vec<Vec<ExactScalar>> = self
            .basis
            .iter()
            .map(|b| self.coordinates(&m.mul_vec(b)).expect("component is stable under relabelling"))
            .collect();
        ExactMatrix::from_columns(self.dim(), &cols)
    }
}

/// All weight pieces of one arity.
#[derive(Clone, Debug)]
pub struct CooperadArity {
    pub arity: usize,
    pub pieces: Vec<CooperadComponent>,
}

impl CooperadArity {
    pub fn dim(&self) -> usize {
        self.pieces.iter().map(CooperadComponent::dim).sum()
    }

    pub fn piece(&self, weight: usize) -> Option<&CooperadComponent> {
        self.pieces.iter().find(|p| p.weight == weight)
    }
}

/// The Koszul dual cooperad `C(sE, s²R)`, with arity components computed
/// on demand and memoised. Concurrent readers share one cache; a computed
/// component is inserted once and never replaced.
#[derive(Debug)]
pub struct KoszulDualCooperad {
    data: QuadraticData,
    suspended: Alphabet,
    cache: RwLock<BTreeMap<usize, Arc<CooperadArity>>>,
}

impl KoszulDualCooperad {
    pub fn new(data: QuadraticData) -> Result<Self> {
        if data.alphabet().spaces().iter().any(|s| s.degree != 0) {
            return Err(Error::Precondition("Koszul duals are computed for generators in degree 0".into()));
        }
        let suspended = data.alphabet().shifted(HomogeneousShift::new(1).exponent);
        Ok(KoszulDualCooperad { data, suspended, cache: RwLock::new(BTreeMap::new()) })
    }

    pub fn data(&self) -> &QuadraticData {
        &self.data
    }

    /// The generators `sE`.
    pub fn suspended_alphabet(&self) -> &Alphabet {
        &self.suspended
    }

    pub fn component(&self, n: usize) -> Result<Arc<CooperadArity>> {
        if n > MAX_DUAL_ARITY {
            return guardrail(format!("Koszul dual components limited to n ≤ {MAX_DUAL_ARITY}, asked for {n}"));
        }
        if n == 0 {
            return Err(Error::Precondition("arity must be at least 1".into()));
        }
        if let Some(c) = self.cache.read().expect("cache lock").get(&n) {
            return Ok(Arc::clone(c));
        }
        let computed = Arc::new(self.compute(n));
        let mut w = self.cache.write().expect("cache lock");
        Ok(Arc::clone(w.entry(n).or_insert(computed)))
    }

    fn compute(&self, n: usize) -> CooperadArity {
        let ann = self.data.annihilators();
        let weight_two: BTreeMap<usize, FreeOperadComponent> = self
            .data
            .weight_two_components()
            .iter()
            .map(|(&m, _)| (m, FreeOperadComponent::build(&self.suspended, m, 2)))
            .collect();
        let mut pieces = Vec::new();
        for d in 0..n {
            let ambient = FreeOperadComponent::build(&self.suspended, n, d);
            if ambient.dim() == 0 {
                continue;
            }
            let rows = context_span(&self.suspended, &ambient, &weight_two, &ann);
            let rref = if rows.is_empty() {
                ExactMatrix::zeros(1, ambient.dim()).rref()
            } else {
                ExactMatrix::from_rows(rows).rref()
            };
            let basis = rref.kernel_basis();
            if basis.is_empty() {
                continue;
            }
            let free_columns = rref.free_columns();
            let mut piece = CooperadComponent {
                arity: n,
                weight: d,
                degree: d as i64,
                ambient,
                basis,
                free_columns,
                rep: SnRepresentation::zero(n),
            };
            let gens = (0..n.saturating_sub(1)).map(|t| piece.relabel_matrix(&Permutation::adjacent(n, t))).collect();
            piece.rep = SnRepresentation::new_unchecked(n, piece.dim(), gens);
            pieces.push(piece);
        }
        CooperadArity { arity: n, pieces }
    }

    /// Letters for the pieces of arities `2..=max_arity`, ordered by
    /// (arity, weight). Letter `j` of a space is basis vector `j`.
    pub fn alphabet(&self, max_arity: usize) -> Result<CooperadAlphabet> {
        let mut spaces = Vec::new();
        let mut index = BTreeMap::new();
        for k in 2..=max_arity {
            let comp = self.component(k)?;
            let single = comp.pieces.len() == 1;
            for p in &comp.pieces {
                let name = if single { format!("c{k}") } else { format!("c{k}_{}", p.weight) };
                index.insert((k, p.weight), spaces.len());
                spaces.push(LetterSpace { name, degree: p.degree, rep: p.rep.clone() });
            }
        }
        Ok(CooperadAlphabet { alphabet: Alphabet::new_unchecked(spaces), index })
    }

    /// Reduced infinitesimal decomposition `Δ_(1)` of the element with
    /// coordinates `coords` in the weight-`weight` piece of arity `n`.
    /// The result is a combination of two-vertex trees over
    /// [`KoszulDualCooperad::alphabet`]: the root carries the upper factor
    /// and its unique internal child the lower factor.
    pub fn delta1(&self, n: usize, weight: usize, coords: &[ExactScalar]) -> Result<TreeCombination> {
        let comp = self.component(n)?;
        let piece = comp
            .piece(weight)
            .ok_or_else(|| Error::Precondition(format!("no weight-{weight} piece in arity {n}")))?;
        if coords.len() != piece.dim() {
            return Err(Error::Precondition("coordinate vector has the wrong length".into()));
        }
        let letters = self.alphabet(n.saturating_sub(1).max(1))?;
        let x = piece.vector(coords);
        let mut out = TreeCombination::new();
        for (t, xt) in piece.ambient.basis().iter().zip(&x) {
            if xt.is_zero() {
                continue;
            }
            for cut in cuts(&self.suspended, t) {
                let (upper, upper_labels) = cut.upper.standardize();
                let (lower, lower_labels) = cut.lower.standardize();
                let Some(u) = self.factor(&upper)? else { continue };
                let Some(l) = self.factor(&lower)? else { continue };
                let root = Letter::new(letters.index[&(upper.arity(), upper.weight())], u);
                let child = Letter::new(letters.index[&(lower.arity(), lower.weight())], l);
                let slot = lower_labels[0];
                let inner = DecoratedTree::Vertex(child, lower_labels.iter().map(|&y| DecoratedTree::Leaf(y)).collect());
                let mut inner = Some(inner);
                let kids = upper_labels
                    .iter()
                    .map(|&y| if y == slot { inner.take().expect("one slot") } else { DecoratedTree::Leaf(y) })
                    .collect();
                add_term(&mut out, DecoratedTree::Vertex(root, kids), xt * &cut.sign);
            }
        }
        Ok(out)
    }

    /// Coordinate index of a standardized tree under the projection that
    /// keeps the free columns, if nonzero.
    fn factor(&self, t: &DecoratedTree) -> Result<Option<usize>> {
        let comp = self.component(t.arity())?;
        let piece = comp.piece(t.weight()).ok_or_else(|| Error::Precondition("missing cooperad piece".into()))?;
        let idx = piece.ambient.index_of(t).expect("standardized canonical tree");
        Ok(piece.free_columns.iter().position(|&c| c == idx))
    }
}

/// Letters standing for basis elements of the cooperad pieces.
#[derive(Clone, Debug)]
pub struct CooperadAlphabet {
    pub alphabet: Alphabet,
    /// `(arity, weight)` to letter-space index.
    pub index: BTreeMap<(usize, usize), usize>,
}

/// `C(sE, s²R)(n)` for the given quadratic data.
pub fn koszul_dual_component(qd: &QuadraticData, n: usize) -> Result<CooperadArity> {
    let dual = KoszulDualCooperad::new(qd.clone())?;
    Ok((*dual.component(n)?).clone())
}
