use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored by images: `self.apply(i) = images[i]`.
///
/// Text and JSON forms use 1-based images, matching the usual
/// one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_based: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", one_based.join(" "))
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Precondition(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Precondition("1-based images must be positive".into()));
        }
        Self::from_images(images.iter().map(|i| i - 1).collect())
    }

    /// The adjacent transposition exchanging `i` and `i + 1` (0-based).
    pub fn adjacent(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i, i + 1);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }

    pub fn inversions(&self) -> usize {
        let n = self.len();
        (0..n).map(|i| (i + 1..n).filter(|&j| self.images[i] > self.images[j]).count()).sum()
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Factorisation into adjacent transpositions, `self = s_{w[0]} ∘ s_{w[1]} ∘ ..`,
    /// of minimal length (bubble sort of the image array).
    pub fn adjacent_factorization(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut a = self.images.clone();
        // Sorting `a` by swaps at positions i multiplies on the right by s_i.
        let n = a.len();
        for end in (1..n).rev() {
            for i in 0..end {
                if a[i] > a[i + 1] {
                    a.swap(i, i + 1);
                    word.push(i);
                }
            }
        }
        word.reverse();
        word
    }

    /// All permutations of `n` in lexicographic order of their image arrays.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == n {
                out.push(Permutation { images: current.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    current.push(i);
                    rec(n, current, used, out);
                    current.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

/// All `(p, q)`-unshuffles, i.e. inverses of permutations `σ` of `p + q`
/// with `σ(0) < .. < σ(p-1)` and `σ(p) < .. < σ(p+q-1)`, sorted
/// lexicographically by image array.
pub fn unshuffles(p: usize, q: usize) -> Vec<Permutation> {
    let n = p + q;
    let mut out: Vec<Permutation> = choose(n, p)
        .into_iter()
        .map(|first| {
            let mut images = first.clone();
            images.extend((0..n).filter(|i| !first.contains(i)));
            Permutation { images }.inverse()
        })
        .collect();
    out.sort();
    out
}

/// Increasing `k`-subsets of `{0, .., n-1}` in lexicographic order.
pub fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
