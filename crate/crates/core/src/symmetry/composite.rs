//! Composite and infinitesimal composite of S-modules.
//!
//! A basis element of `(M ∘ N)(n)` is an orbit representative
//! `(μ; ν_1, .., ν_k)` whose children blocks are sorted by their minimal
//! leaf label. The infinitesimal composite keeps exactly one `N`-decorated
//! block; every other block is a single leaf carrying the unit of `I`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::partition::surjection_classes;
use super::rep::{SModule, SnRepresentation};
use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, ExactScalar};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Labelled {
    /// 0-based leaf labels, blocks sorted by minimum.
    blocks: Vec<Vec<usize>>,
    top: usize,
    /// `None` marks a unit leaf of `I`.
    children: Vec<Option<usize>>,
}

fn product_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    dims.iter().fold(vec![vec![]], |acc, &d| {
        acc.into_iter()
            .flat_map(|prefix| {
                (0..d).map(move |i| {
                    let mut v = prefix.clone();
                    v.push(i);
                    v
                })
            })
            .collect()
    })
}

fn check_reduced(m: &SModule, n: &SModule) -> Result<()> {
    if !m.is_reduced() || !n.is_reduced() {
        return Err(Error::Precondition("composite requires reduced S-modules (no arity-0 part)".into()));
    }
    Ok(())
}

fn basis_full(m: &SModule, n: &SModule, arity: usize) -> Vec<Labelled> {
    let mut out = Vec::new();
    for p in surjection_classes(arity) {
        let k = p.len();
        let top_dim = m.dim(k);
        if top_dim == 0 {
            continue;
        }
        let blocks: Vec<Vec<usize>> = p.blocks().iter().map(|b| b.iter().map(|x| x - 1).collect()).collect();
        let dims: Vec<usize> = blocks.iter().map(|b| n.dim(b.len())).collect();
        for top in 0..top_dim {
            for idx in product_indices(&dims) {
                out.push(Labelled { blocks: blocks.clone(), top, children: idx.into_iter().map(Some).collect() });
            }
        }
    }
    out
}

fn basis_infinitesimal(m: &SModule, n: &SModule, arity: usize) -> Vec<Labelled> {
    let mut out = Vec::new();
    for p in surjection_classes(arity) {
        let k = p.len();
        let top_dim = m.dim(k);
        if top_dim == 0 {
            continue;
        }
        let blocks: Vec<Vec<usize>> = p.blocks().iter().map(|b| b.iter().map(|x| x - 1).collect()).collect();
        for special in 0..k {
            if blocks.iter().enumerate().any(|(i, b)| i != special && b.len() != 1) {
                continue;
            }
            for top in 0..top_dim {
                for child in 0..n.dim(blocks[special].len()) {
                    let mut children = vec![None; k];
                    children[special] = Some(child);
                    out.push(Labelled { blocks: blocks.clone(), top, children });
                }
            }
        }
    }
    out
}

/// Image of a basis element under the adjacent transposition of leaves
/// `t, t + 1`, as a linear combination.
fn act_adjacent(m: &SModule, n: &SModule, e: &Labelled, t: usize) -> Vec<(Labelled, ExactScalar)> {
    let find = |x: usize| e.blocks.iter().position(|b| b.contains(&x)).expect("leaf in some block");
    let (bi, bj) = (find(t), find(t + 1));
    if bi == bj {
        let block = &e.blocks[bi];
        let r = block.iter().position(|&x| x == t).expect("leaf present");
        let child = e.children[bi].expect("a block of size ≥ 2 is decorated");
        let mat = n.component(block.len()).expect("nonzero component").adjacent(r);
        return (0..mat.rows())
            .filter(|&a| !mat.get(a, child).is_zero())
            .map(|a| {
                let mut out = e.clone();
                out.children[bi] = Some(a);
                (out, mat.get(a, child).clone())
            })
            .collect();
    }
    let swap = |x: usize| if x == t { t + 1 } else if x == t + 1 { t } else { x };
    let mut relabelled = e.clone();
    for b in relabelled.blocks.iter_mut() {
        for x in b.iter_mut() {
            *x = swap(*x);
        }
        b.sort_unstable();
    }
    if e.blocks[bi][0] == t && e.blocks[bj][0] == t + 1 {
        // The two blocks trade places in the canonical order; they are adjacent.
        debug_assert_eq!(bj, bi + 1);
        relabelled.blocks.swap(bi, bj);
        relabelled.children.swap(bi, bj);
        let mat = m.component(e.blocks.len()).expect("nonzero component").adjacent(bi);
        return (0..mat.rows())
            .filter(|&a| !mat.get(a, e.top).is_zero())
            .map(|a| {
                let mut out = relabelled.clone();
                out.top = a;
                (out, mat.get(a, e.top).clone())
            })
            .collect();
    }
    vec![(relabelled, ExactScalar::from_integer(1.into()))]
}

fn representation(m: &SModule, n: &SModule, arity: usize, basis: Vec<Labelled>) -> SnRepresentation {
    let index: BTreeMap<&Labelled, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let gens = (0..arity.saturating_sub(1))
        .map(|t| {
            let mut mat = ExactMatrix::zeros(basis.len(), basis.len());
            for (col, e) in basis.iter().enumerate() {
                for (img, c) in act_adjacent(m, n, e, t) {
                    let row = index[&img];
                    let cur = mat.get(row, col) + c;
                    mat.set(row, col, cur);
                }
            }
            mat
        })
        .collect();
    SnRepresentation::new_unchecked(arity, basis.len(), gens)
}

/// `M ∘ N`, computed in every arity up to `max_arity(M) · max_arity(N)`.
pub fn compose_smodules(m: &SModule, n: &SModule) -> Result<SModule> {
    check_reduced(m, n)?;
    let top = m.max_arity() * n.max_arity();
    let mut out = SModule::new();
    for arity in 1..=top {
        let basis = basis_full(m, n, arity);
        out.insert(representation(m, n, arity, basis));
    }
    Ok(out)
}

/// `M ∘_(1) N = M ∘ (I; N)`.
pub fn infinitesimal_composite(m: &SModule, n: &SModule) -> Result<SModule> {
    check_reduced(m, n)?;
    let top = m.max_arity() + n.max_arity();
    let mut out = SModule::new();
    for arity in 1..=top {
        let basis = basis_infinitesimal(m, n, arity);
        out.insert(representation(m, n, arity, basis));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::rep::sign_representation;

    fn binary_trivial() -> SModule {
        SModule::new().with(SnRepresentation::trivial(2, 1))
    }

    // Oracle: count labelled two-level trees on [n] directly, one per
    // unordered block decomposition and per choice of basis labels.
    fn orbit_count(m: &SModule, n: &SModule, arity: usize) -> usize {
        surjection_classes(arity)
            .iter()
            .map(|p| m.dim(p.len()) * p.blocks().iter().map(|b| n.dim(b.len())).product::<usize>())
            .sum()
    }

    #[test]
    fn unit_is_neutral() {
        let n = SModule::new()
            .with(SnRepresentation::trivial(1, 1))
            .with(SnRepresentation::regular(3))
            .with(sign_representation(2));
        let left = compose_smodules(&SModule::identity(), &n).unwrap();
        assert_eq!(left, n);
        let right = compose_smodules(&n, &SModule::identity()).unwrap();
        for a in 1..=3 {
            assert_eq!(right.dim(a), n.dim(a));
        }
    }

    #[test]
    fn composite_examples() {
        let m = binary_trivial();
        let n = SModule::new().with(SnRepresentation::trivial(1, 1));
        assert_eq!(compose_smodules(&m, &n).unwrap().dim(2), 1);

        let m = SModule::new().with(SnRepresentation::regular(2));
        let n = SModule::new().with(SnRepresentation::trivial(2, 1)).with(SnRepresentation::trivial(1, 1));
        let c = compose_smodules(&m, &n).unwrap();
        assert_eq!(c.dim(3), orbit_count(&m, &n, 3));
        assert_eq!(c.dim(3), 6);
        c.check().unwrap();
    }

    #[test]
    fn infinitesimal_examples() {
        let m = binary_trivial();
        assert_eq!(infinitesimal_composite(&m, &m).unwrap().dim(3), 3);

        let m = SModule::new().with(SnRepresentation::regular(3)).with(sign_representation(2));
        let c = infinitesimal_composite(&m, &SModule::identity()).unwrap();
        for a in 1..=3 {
            assert_eq!(c.dim(a), a * m.dim(a));
        }
        c.check().unwrap();
        assert!(infinitesimal_composite(&SModule::new(), &m).unwrap().is_zero());
    }

    #[test]
    fn rejects_arity_zero() {
        let bad = SModule::new().with(SnRepresentation::trivial(0, 1));
        assert!(compose_smodules(&bad, &SModule::identity()).is_err());
    }

    #[test]
    fn composite_is_associative_in_dimension() {
        let l = SModule::new().with(SnRepresentation::regular(2));
        let m = SModule::new().with(SnRepresentation::trivial(1, 1)).with(sign_representation(2));
        let n = SModule::new().with(SnRepresentation::trivial(1, 1)).with(SnRepresentation::trivial(2, 1));
        let lm_n = compose_smodules(&compose_smodules(&l, &m).unwrap(), &n).unwrap();
        let l_mn = compose_smodules(&l, &compose_smodules(&m, &n).unwrap()).unwrap();
        for a in 1..=6 {
            assert_eq!(lm_n.dim(a), l_mn.dim(a), "arity {a}");
        }
        lm_n.check().unwrap();
        l_mn.check().unwrap();
    }
}
