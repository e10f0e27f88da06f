use std::collections::HashMap;

use num_traits::Zero;

use super::tree::{enumerate_trees, relabel, Alphabet, DecoratedTree, TreeCombination};
use crate::error::{guardrail, Error, Result};
use crate::linalg::{ExactMatrix, ExactScalar};
use crate::symmetry::{Permutation, SnRepresentation};

pub const MAX_FREE_ARITY: usize = 6;
pub const MAX_FREE_WEIGHT: usize = 4;

/// The span of canonical trees with `arity` leaves and `weight` vertices.
#[derive(Clone, Debug)]
pub struct FreeOperadComponent {
    alphabet: Alphabet,
    arity: usize,
    weight: usize,
    basis: Vec<DecoratedTree>,
    index: HashMap<DecoratedTree, usize>,
    rep: SnRepresentation,
}

/// `F(E)^{(d)}(n)` with its symmetric-group action.
pub fn free_operad_component(alphabet: &Alphabet, n: usize, d: usize) -> Result<FreeOperadComponent> {
    if n > MAX_FREE_ARITY || d > MAX_FREE_WEIGHT {
        return guardrail(format!(
            "free operad component limited to n ≤ {MAX_FREE_ARITY}, d ≤ {MAX_FREE_WEIGHT}; asked for n = {n}, d = {d}"
        ));
    }
    if n == 0 {
        return Err(Error::Precondition("arity must be at least 1".into()));
    }
    Ok(FreeOperadComponent::build(alphabet, n, d))
}

impl FreeOperadComponent {
    pub(crate) fn build(alphabet: &Alphabet, n: usize, d: usize) -> Self {
        let leaves: Vec<usize> = (0..n).collect();
        let basis = enumerate_trees(alphabet, &leaves, d, None);
        let index = basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut out = FreeOperadComponent {
            alphabet: alphabet.clone(),
            arity: n,
            weight: d,
            basis,
            index,
            rep: SnRepresentation::zero(n),
        };
        let gens = (0..n.saturating_sub(1))
            .map(|t| out.relabel_matrix(&Permutation::adjacent(n, t)))
            .collect();
        out.rep = SnRepresentation::new_unchecked(n, out.basis.len(), gens);
        out
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DecoratedTree] {
        &self.basis
    }

    pub fn index_of(&self, t: &DecoratedTree) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// The action matrices of adjacent transpositions.
    pub fn representation(&self) -> &SnRepresentation {
        &self.rep
    }

    pub fn coordinates(&self, comb: &TreeCombination) -> Result<Vec<ExactScalar>> {
        let mut v = vec![ExactScalar::zero(); self.dim()];
        for (t, c) in comb {
            let i = self.index_of(t).ok_or_else(|| {
                Error::Precondition(format!("tree {} is not in this component", t.render(&self.alphabet)))
            })?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn combination(&self, v: &[ExactScalar]) -> TreeCombination {
        self.basis.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(t, c)| (t.clone(), c.clone())).collect()
    }

    /// Matrix of the leaf relabelling `x ↦ perm(x)`. The right action of
    /// the stored representation is `σ ↦ relabel_matrix(σ⁻¹)`.
    pub fn relabel_matrix(&self, perm: &Permutation) -> ExactMatrix {
        let columns: Vec<Vec<ExactScalar>> = self
            .basis
            .iter()
            .map(|t| {
                let img = relabel(&self.alphabet, t, &|x| perm.apply(x));
                self.coordinates(&img).expect("relabelling stays in the component")
            })
            .collect();
        ExactMatrix::from_columns(self.dim(), &columns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operadcore::tree::{graft, LetterSpace};
    use crate::symmetry::sign_representation;
    use proptest::prelude::*;

    fn one_binary(rep: SnRepresentation) -> Alphabet {
        Alphabet::new(vec![LetterSpace { name: "m".into(), degree: 0, rep }]).unwrap()
    }

    #[test]
    fn small_dimensions() {
        let triv = one_binary(SnRepresentation::trivial(2, 1));
        assert_eq!(free_operad_component(&triv, 3, 2).unwrap().dim(), 3);
        assert_eq!(free_operad_component(&triv, 1, 0).unwrap().dim(), 1);
        assert_eq!(free_operad_component(&triv, 3, 1).unwrap().dim(), 0);
        let sgn = one_binary(sign_representation(2));
        let f = free_operad_component(&sgn, 3, 2).unwrap();
        assert_eq!(f.dim(), 3);
        f.representation().check_coxeter().unwrap();
        assert!(f.representation().adjacent(0).get(0, 0) < &ExactScalar::zero());
        let reg = one_binary(SnRepresentation::regular(2));
        assert_eq!(free_operad_component(&reg, 4, 3).unwrap().dim(), 120);
        assert!(matches!(free_operad_component(&reg, 7, 2), Err(Error::Guardrail(_))));
        assert!(matches!(free_operad_component(&reg, 3, 5), Err(Error::Guardrail(_))));
    }

    #[test]
    fn relabelling_matches_right_action() {
        for alpha in [one_binary(sign_representation(2)), one_binary(SnRepresentation::regular(2))] {
            for shift in [0, 1] {
                let a = alpha.shifted(shift);
                let f = free_operad_component(&a, 4, 3).unwrap();
                f.representation().check_coxeter().unwrap();
                for p in Permutation::all(4) {
                    assert_eq!(f.representation().action(&p), f.relabel_matrix(&p.inverse()));
                }
            }
        }
    }

    fn random_tree(alpha: &Alphabet, n: usize, pick: usize) -> DecoratedTree {
        let f = FreeOperadComponent::build(alpha, n, n - 1);
        f.basis()[pick % f.dim()].clone()
    }

    fn graft_comb(alpha: &Alphabet, lhs: &TreeCombination, i: usize, t: &DecoratedTree) -> TreeCombination {
        let mut out = TreeCombination::new();
        for (s, c) in lhs {
            crate::operadcore::tree::add_scaled(&mut out, graft(alpha, s, i, t).unwrap(), c);
        }
        out
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn sequential_associativity(
            n in prop::array::uniform3(1usize..=3),
            pick in prop::array::uniform3(0usize..64),
            i in 0usize..3, j in 0usize..3, shift in 0i64..2, regular in any::<bool>(),
        ) {
            let base = if regular { one_binary(SnRepresentation::regular(2)) } else { one_binary(sign_representation(2)) };
            let a = base.shifted(shift);
            let (t, u, v) = (random_tree(&a, n[0], pick[0]), random_tree(&a, n[1], pick[1]), random_tree(&a, n[2], pick[2]));
            let i = i % n[0];
            let j = j % n[1];
            // (t ∘_i u) ∘_{i+j} v = t ∘_i (u ∘_j v)
            let left = graft_comb(&a, &graft(&a, &t, i, &u).unwrap(), i + j, &v);
            let mut right = TreeCombination::new();
            for (w, c) in graft(&a, &u, j, &v).unwrap() {
                crate::operadcore::tree::add_scaled(&mut right, graft(&a, &t, i, &w).unwrap(), &c);
            }
            prop_assert_eq!(left.clone(), right);
            let w: usize = left.keys().map(DecoratedTree::weight).max().unwrap_or(0);
            if !left.is_empty() {
                prop_assert_eq!(w, t.weight() + u.weight() + v.weight());
            }
        }
    }
}
