use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::tensor::{StructureTensor, TensorDocument};
use crate::error::{Error, Result};
use crate::linalg::scalar::one;
use crate::linalg::ExactScalar;
use crate::operadcore::QuadraticData;

/// Which Koszul dual cooperad the maps start from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CooperadTag {
    /// `Lie^{c!}`: maps are antisymmetric multilinear maps.
    Lie,
    /// `Com^{c!}`.
    Com,
    /// `Ass^{c!}`: maps are arbitrary multilinear maps.
    Ass,
}

impl CooperadTag {
    pub fn quadratic_data(self) -> QuadraticData {
        match self {
            CooperadTag::Lie => QuadraticData::lie(),
            CooperadTag::Com => QuadraticData::com(),
            CooperadTag::Ass => QuadraticData::ass(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CooperadTag::Lie => "lie",
            CooperadTag::Com => "com",
            CooperadTag::Ass => "ass",
        }
    }
}

impl fmt::Display for CooperadTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CooperadTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lie" => Ok(CooperadTag::Lie),
            "com" => Ok(CooperadTag::Com),
            "ass" => Ok(CooperadTag::Ass),
            other => Err(Error::Parse(format!("unknown cooperad tag {other:?} (expected lie, com or ass)"))),
        }
    }
}

/// An `S_n`-equivariant map `C(n) → End_V(n)`, stored as the images of the
/// cooperad basis vectors. Its degree is `1 − n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionElement {
    pub(crate) tag: CooperadTag,
    pub(crate) dim: usize,
    pub(crate) arity: usize,
    pub(crate) images: Vec<StructureTensor>,
}

impl ConvolutionElement {
    pub fn tag(&self) -> CooperadTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn weight(&self) -> usize {
        self.arity - 1
    }

    pub fn degree(&self) -> i64 {
        1 - self.arity as i64
    }

    /// Cohomological degree `n − 1`, the `C^{n}` indexing of cochains.
    pub fn cohomological_degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn images(&self) -> &[StructureTensor] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(StructureTensor::is_zero)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag || self.dim != other.dim || self.arity != other.arity {
            return Err(Error::Precondition(format!(
                "elements differ in shape: ({}, dim {}, arity {}) vs ({}, dim {}, arity {})",
                self.tag, self.dim, self.arity, other.tag, other.dim, other.arity
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let images = self.images.iter().zip(&other.images).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(ConvolutionElement { images, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-one()))
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        ConvolutionElement { images: self.images.iter().map(|t| t.scale(c)).collect(), ..self.clone() }
    }

    pub fn to_document(&self) -> ElementDocument {
        ElementDocument {
            cooperad: self.tag,
            dim: self.dim,
            arity: self.arity,
            degree: self.degree(),
            images: self.images.iter().map(TensorDocument::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDocument {
    pub cooperad: CooperadTag,
    pub dim: usize,
    pub arity: usize,
    pub degree: i64,
    pub images: Vec<TensorDocument>,
}

/// A finite sum of homogeneous elements, keyed by weight (`arity − 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightGradedElement {
    components: BTreeMap<usize, ConvolutionElement>,
}

impl WeightGradedElement {
    pub fn new(parts: impl IntoIterator<Item = ConvolutionElement>) -> Result<Self> {
        let mut components: BTreeMap<usize, ConvolutionElement> = BTreeMap::new();
        let mut shape = None;
        for p in parts {
            let s = (p.tag, p.dim);
            if *shape.get_or_insert(s) != s {
                return Err(Error::Precondition("components differ in cooperad or dimension".into()));
            }
            match components.get_mut(&p.weight()) {
                Some(existing) => *existing = existing.add(&p)?,
                None => {
                    components.insert(p.weight(), p);
                }
            }
        }
        components.retain(|_, e| !e.is_zero());
        Ok(WeightGradedElement { components })
    }

    pub fn single(e: ConvolutionElement) -> Self {
        Self::new([e]).expect("one component")
    }

    pub fn components(&self) -> &BTreeMap<usize, ConvolutionElement> {
        &self.components
    }

    pub fn component(&self, weight: usize) -> Option<&ConvolutionElement> {
        self.components.get(&weight)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}
