use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set partition of `{1, .., n}`: blocks sorted internally and ordered by
/// their minimal element. Stands for an equivalence class of surjections
/// `[n] ↠ S`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(""))
            .collect();
        write!(f, "{{{}}}", parts.join("|"))
    }
}

impl SetPartition {
    /// Canonicalises and validates arbitrary blocks of 1-based labels.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(Error::Precondition("empty block".into()));
            }
            b.sort_unstable();
            for &x in b.iter() {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::Precondition(format!("label {x} invalid or repeated")));
                }
                seen[x] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::Precondition("blocks do not cover {1..n}".into()));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(SetPartition { blocks })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    fn from_growth(rgs: &[usize]) -> Self {
        let k = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        SetPartition { blocks }
    }
}

/// All set partitions of `{1..n}`, in the lexicographic order of their
/// restricted growth strings (blocks sorted by minimum).
pub fn surjection_classes(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut rgs = vec![0usize; n];
    fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        if i == rgs.len() {
            out.push(SetPartition::from_growth(rgs));
            return;
        }
        for b in 0..=max + 1 {
            rgs[i] = b;
            rec(i + 1, max.max(b), rgs, out);
        }
    }
    rec(1, 0, &mut rgs, &mut out);
    out
}

/// Partitions of `{1..n}` into exactly `m` blocks.
pub fn surjection_classes_by_size(n: usize, m: usize) -> Result<Vec<SetPartition>> {
    if m == 0 || m > n {
        return Err(Error::Precondition(format!("block count {m} outside [1, {n}]")));
    }
    Ok(surjection_classes(n).into_iter().filter(|p| p.len() == m).collect())
}

/// Dimension of the arity-`n` coisson cochain space:
/// `Σ_{S ∈ Q([n])} dim_hom(S) · Π_{blocks} dim Lie(|block|)`.
///
/// `lie_dims[k]` must hold `dim Lie(k)` for `1 ≤ k ≤ n`.
pub fn coisson_component_dimension(
    n: usize,
    dim_hom: &BTreeMap<SetPartition, usize>,
    lie_dims: &[usize],
) -> Result<usize> {
    if lie_dims.len() <= n {
        return Err(Error::Precondition(format!("Lie dimensions needed up to arity {n}")));
    }
    surjection_classes(n).iter().try_fold(0usize, |acc, s| {
        let hom = dim_hom
            .get(s)
            .ok_or_else(|| Error::Precondition(format!("missing Hom dimension for partition {s:?}")))?;
        Ok(acc + hom * s.blocks().iter().map(|b| lie_dims[b.len()]).product::<usize>())
    })
}

/// Multiplicities of the graded pieces of the special filtration:
/// entry `m` is `Σ_{T ∈ Q([n], m)} Π_t dim Lie(|[n]_t|)`.
pub fn special_filtration_multiplicities(n: usize, lie_dims: &[usize]) -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for m in 1..=n {
        let total = surjection_classes_by_size(n, m)?
            .iter()
            .map(|s| s.blocks().iter().map(|b| lie_dims[b.len()]).product::<usize>())
            .sum();
        out.insert(m, total);
    }
    Ok(out)
}
