use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::koszul::KoszulDualCooperad;
use super::quadratic::QuadraticData;
use super::shift::HomogeneousShift;
use super::tree::{add_scaled, enumerate_trees, substitute, Alphabet, DecoratedTree, Letter, TreeCombination};
use crate::error::{guardrail, Error, Result};
use crate::linalg::scalar::sign;
use crate::linalg::{ExactMatrix, ExactScalar};

pub const MAX_COBAR_ARITY: usize = 4;

/// The arity-`n` part of `ΩC = F(s^{-1} C̄)` for a Koszul dual cooperad.
#[derive(Clone, Debug)]
pub struct CobarComplex {
    pub arity: usize,
    pub alphabet: Alphabet,
    /// Tree bases by homological degree.
    pub chains: BTreeMap<i64, Vec<DecoratedTree>>,
    /// `d: C_p → C_{p-1}`, keyed by source degree.
    pub differentials: BTreeMap<i64, ExactMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CobarHomology {
    pub arity: usize,
    pub chain_dims: BTreeMap<i64, usize>,
    pub homology: BTreeMap<i64, usize>,
    pub d_squared_zero: bool,
}

impl CobarHomology {
    pub fn total(&self) -> usize {
        self.homology.values().sum()
    }

    /// The single degree carrying homology, if there is exactly one.
    pub fn concentrated_in(&self) -> Option<i64> {
        let nz: Vec<i64> = self.homology.iter().filter(|(_, &v)| v > 0).map(|(&k, _)| k).collect();
        (nz.len() == 1).then(|| nz[0])
    }
}

/// Replaces the vertex with the given preorder index by a placeholder.
fn punch(t: &DecoratedTree, target: usize, next: &mut usize, found: &mut Option<Letter>) -> DecoratedTree {
    match t {
        DecoratedTree::Leaf(x) => DecoratedTree::Leaf(*x),
        DecoratedTree::Vertex(l, ch) => {
            let here = *next;
            *next += 1;
            let ch = ch.iter().map(|c| punch(c, target, next, found)).collect();
            if here == target {
                *found = Some(*l);
                DecoratedTree::Vertex(Letter::hole(ch_len(t)), ch)
            } else {
                DecoratedTree::Vertex(*l, ch)
            }
        }
    }
}

fn ch_len(t: &DecoratedTree) -> usize {
    match t {
        DecoratedTree::Leaf(_) => 0,
        DecoratedTree::Vertex(_, ch) => ch.len(),
    }
}

impl CobarComplex {
    pub fn build(dual: &KoszulDualCooperad, n: usize) -> Result<Self> {
        if n > MAX_COBAR_ARITY {
            return guardrail(format!("cobar complexes limited to n ≤ {MAX_COBAR_ARITY}, asked for {n}"));
        }
        if n < 2 {
            return Err(Error::Precondition("cobar complex needs arity at least 2".into()));
        }
        let letters = dual.alphabet(n)?;
        let desusp = HomogeneousShift::new(-1);
        let alphabet = letters.alphabet.shifted(desusp.exponent);
        let unshifted = &letters.alphabet;

        // local pieces: -(s^{-1} ⊗ s^{-1}) Δ_(1), per letter
        let mut local: HashMap<Letter, TreeCombination> = HashMap::new();
        for (&(k, w), &space) in &letters.index {
            let dim = unshifted.space(space).rep.dim();
            for j in 0..dim {
                let mut coords = vec![ExactScalar::zero(); dim];
                coords[j] = ExactScalar::from_integer(1.into());
                let mut out = TreeCombination::new();
                for (tau, c) in dual.delta1(k, w, &coords)? {
                    let upper = tau.root().expect("two-vertex tree");
                    let s = -desusp.tensor_sign(desusp, unshifted.degree(upper));
                    add_scaled(&mut out, TreeCombination::from([(tau, c)]), &s);
                }
                local.insert(Letter::new(space, j), out);
            }
        }

        let leaves: Vec<usize> = (0..n).collect();
        let mut chains: BTreeMap<i64, Vec<DecoratedTree>> = BTreeMap::new();
        for v in 1..n {
            for t in enumerate_trees(&alphabet, &leaves, v, None) {
                chains.entry(t.degree(&alphabet)).or_default().push(t);
            }
        }
        let index: HashMap<&DecoratedTree, (i64, usize)> = chains
            .iter()
            .flat_map(|(&deg, ts)| ts.iter().enumerate().map(move |(i, t)| (t, (deg, i))))
            .collect();

        let mut differentials = BTreeMap::new();
        for (&deg, basis) in &chains {
            let Some(target) = chains.get(&(deg - 1)) else { continue };
            let columns: Vec<Vec<ExactScalar>> = basis
                .par_iter()
                .map(|t| {
                    let mut col = vec![ExactScalar::zero(); target.len()];
                    for (img, c) in differential(&alphabet, &local, t) {
                        let (d, i) = index[&img];
                        debug_assert_eq!(d, deg - 1);
                        col[i] += c;
                    }
                    col
                })
                .collect();
            differentials.insert(deg, ExactMatrix::from_columns(target.len(), &columns));
        }
        Ok(CobarComplex { arity: n, alphabet, chains, differentials })
    }

    pub fn d_squared_zero(&self) -> bool {
        self.differentials.iter().all(|(deg, d)| match self.differentials.get(&(deg - 1)) {
            Some(prev) => prev.mul(d).is_zero(),
            None => true,
        })
    }

    pub fn homology(&self) -> CobarHomology {
        let rank = |deg: i64| self.differentials.get(&deg).map_or(0, ExactMatrix::rank);
        let chain_dims: BTreeMap<i64, usize> = self.chains.iter().map(|(&k, v)| (k, v.len())).collect();
        let homology = chain_dims.iter().map(|(&k, &dim)| (k, dim - rank(k) - rank(k + 1))).collect();
        CobarHomology { arity: self.arity, chain_dims, homology, d_squared_zero: self.d_squared_zero() }
    }
}

/// `d` on one tree: a derivation summing the local splitting over vertices,
/// with the sign of `d` passing the vertices before it in preorder.
fn differential(alphabet: &Alphabet, local: &HashMap<Letter, TreeCombination>, t: &DecoratedTree) -> TreeCombination {
    let verts = t.vertices();
    let mut out = TreeCombination::new();
    let mut before = 0i64;
    for (p, l) in verts.iter().enumerate() {
        let mut found = None;
        let ctx = punch(t, p, &mut 0, &mut found);
        let s = sign(before);
        for (tau, c) in &local[l] {
            add_scaled(&mut out, substitute(alphabet, &ctx, tau), &(c * &s));
        }
        before += alphabet.degree(*l);
    }
    out
}

pub fn cobar_homology(qd: &QuadraticData, n: usize) -> Result<CobarHomology> {
    let dual = KoszulDualCooperad::new(qd.clone())?;
    Ok(CobarComplex::build(&dual, n)?.homology())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lie_is_koszul_at_small_arity() {
        for (n, expect) in [(2, 1), (3, 2), (4, 6)] {
            let h = cobar_homology(&QuadraticData::lie(), n).unwrap();
            assert!(h.d_squared_zero);
            assert_eq!(h.total(), expect, "{h:?}");
            assert_eq!(h.concentrated_in(), Some(0));
        }
    }

    #[test]
    fn com_and_ass_homology() {
        let h = cobar_homology(&QuadraticData::com(), 3).unwrap();
        assert!(h.d_squared_zero);
        assert_eq!(h.total(), 1);
        let h = cobar_homology(&QuadraticData::com(), 4).unwrap();
        assert_eq!(h.total(), 1);
        assert!(h.concentrated_in().is_some());
        for (n, expect) in [(3, 6), (4, 24)] {
            let h = cobar_homology(&QuadraticData::ass(), n).unwrap();
            assert!(h.d_squared_zero);
            assert_eq!(h.total(), expect);
        }
    }

    #[test]
    fn guardrail() {
        assert!(matches!(cobar_homology(&QuadraticData::lie(), 5), Err(Error::Guardrail(_))));
    }
}
