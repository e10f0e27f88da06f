use std::collections::BTreeMap;

use num_traits::One;

use super::permutation::Permutation;
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, ExactScalar};

/// A finite-dimensional right representation of the symmetric group `S_n`,
/// stored by the matrices of the adjacent transpositions `s_1, .., s_{n-1}`.
///
/// Matrices act on column vectors; the matrix of a product is
/// `M(σ ∘ τ) = M(τ) · M(σ)` (right action).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnRepresentation {
    arity: usize,
    dim: usize,
    generators: Vec<ExactMatrix>,
}

impl SnRepresentation {
    /// Validates the Coxeter relations before accepting the data.
    pub fn new(arity: usize, dim: usize, generators: Vec<ExactMatrix>) -> Result<Self> {
        let rep = SnRepresentation { arity, dim, generators };
        rep.check_coxeter()?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(arity: usize, dim: usize, generators: Vec<ExactMatrix>) -> Self {
        SnRepresentation { arity, dim, generators }
    }

    pub fn trivial(arity: usize, dim: usize) -> Self {
        let gens = (1..arity.max(1)).map(|_| ExactMatrix::identity(dim)).collect();
        Self::new_unchecked(arity, dim, gens)
    }

    pub fn zero(arity: usize) -> Self {
        Self::trivial(arity, 0)
    }

    /// The regular representation on the basis `{e_π}` indexed by
    /// [`Permutation::all`]; `s_i` sends `e_π` to `e_{π ∘ s_i}`.
    pub fn regular(arity: usize) -> Self {
        let perms = Permutation::all(arity);
        let index: BTreeMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let gens = (0..arity.saturating_sub(1))
            .map(|i| {
                let s = Permutation::adjacent(arity, i);
                let mut m = ExactMatrix::zeros(perms.len(), perms.len());
                for (col, p) in perms.iter().enumerate() {
                    m.set(index[&p.compose(&s)], col, ExactScalar::one());
                }
                m
            })
            .collect();
        Self::new_unchecked(arity, perms.len(), gens)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        &self.generators
    }

    /// Matrix of the adjacent transposition `s_i` (0-based `i`).
    pub fn adjacent(&self, i: usize) -> &ExactMatrix {
        &self.generators[i]
    }

    /// Matrix of an arbitrary permutation, via its adjacent factorisation.
    pub fn action(&self, perm: &Permutation) -> ExactMatrix {
        assert_eq!(perm.len(), self.arity, "permutation arity mismatch");
        perm.adjacent_factorization()
            .iter()
            .fold(ExactMatrix::identity(self.dim), |acc, &i| self.generators[i].mul(&acc))
    }

    /// Checks `s_i^2 = 1`, `(s_i s_{i+1})^3 = 1` and `s_i s_j = s_j s_i` for `|i - j| ≥ 2`.
    pub fn check_coxeter(&self) -> Result<()> {
        let id = ExactMatrix::identity(self.dim);
        let bad = |what: String| Err(Error::Precondition(format!("representation of S_{}: {what}", self.arity)));
        if self.generators.len() != self.arity.saturating_sub(1) {
            return bad(format!("expected {} generators, got {}", self.arity.saturating_sub(1), self.generators.len()));
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.rows() != self.dim || g.cols() != self.dim {
                return bad(format!("generator {i} has wrong shape"));
            }
            if g.mul(g) != id {
                return bad(format!("s_{} is not an involution", i + 1));
            }
        }
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                let (a, b) = (&self.generators[i], &self.generators[j]);
                if j == i + 1 {
                    let ab = a.mul(b);
                    if ab.mul(&ab).mul(&ab) != id {
                        return bad(format!("braid relation fails for s_{}, s_{}", i + 1, j + 1));
                    }
                } else if a.mul(b) != b.mul(a) {
                    return bad(format!("s_{} and s_{} do not commute", i + 1, j + 1));
                }
            }
        }
        Ok(())
    }
}

/// The one-dimensional representation on which every transposition acts by `-1`.
pub fn sign_representation(n: usize) -> SnRepresentation {
    let minus = ExactMatrix::from_i64(&[&[-1]]);
    SnRepresentation::new_unchecked(n, 1, (1..n.max(1)).map(|_| minus.clone()).collect())
}

/// An arity-indexed family of symmetric-group representations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SModule {
    components: BTreeMap<usize, SnRepresentation>,
}

impl SModule {
    pub fn new() -> Self {
        Self::default()
    }

    /// The unit `I` of the composite product: `I(1) = K`, zero elsewhere.
    pub fn identity() -> Self {
        Self::new().with(SnRepresentation::trivial(1, 1))
    }

    /// Adds or replaces a component; zero-dimensional components are dropped.
    pub fn with(mut self, rep: SnRepresentation) -> Self {
        self.insert(rep);
        self
    }

    pub fn insert(&mut self, rep: SnRepresentation) {
        if rep.dim() == 0 {
            self.components.remove(&rep.arity());
        } else {
            self.components.insert(rep.arity(), rep);
        }
    }

    pub fn component(&self, arity: usize) -> Option<&SnRepresentation> {
        self.components.get(&arity)
    }

    pub fn dim(&self, arity: usize) -> usize {
        self.component(arity).map_or(0, SnRepresentation::dim)
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.keys().copied()
    }

    pub fn max_arity(&self) -> usize {
        self.components.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// No arity-0 component.
    pub fn is_reduced(&self) -> bool {
        !self.components.contains_key(&0)
    }

    pub fn check(&self) -> Result<()> {
        self.components.values().try_for_each(SnRepresentation::check_coxeter)
    }
}
