use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::convolution::{
    ass_star, graded_bracket, nr_star, ConvolutionAlgebra, ConvolutionElement, CooperadTag, StructureTensor,
    WeightGradedElement,
};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, ExactScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Lie,
    Associative,
    Commutative,
}

impl Flavor {
    /// Commutative algebras are associative ones with a symmetry check.
    pub fn cooperad(self) -> CooperadTag {
        match self {
            Flavor::Lie => CooperadTag::Lie,
            Flavor::Associative | Flavor::Commutative => CooperadTag::Ass,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Lie => "lie",
            Flavor::Associative => "associative",
            Flavor::Commutative => "commutative",
        }
    }

    pub fn symmetry_holds(self, mu: &StructureTensor) -> bool {
        match self {
            Flavor::Lie => mu.is_antisymmetric(),
            Flavor::Associative => true,
            Flavor::Commutative => mu.permute_inputs(&[1, 0]) == *mu,
        }
    }

    /// The tensor-level convolution bracket of the flavor's cooperad.
    pub fn bracket(self, f: &StructureTensor, g: &StructureTensor) -> Result<StructureTensor> {
        match self.cooperad() {
            CooperadTag::Lie => graded_bracket(nr_star, f, g),
            _ => graded_bracket(ass_star, f, g),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lie" => Ok(Flavor::Lie),
            "associative" => Ok(Flavor::Associative),
            "commutative" => Ok(Flavor::Commutative),
            other => Err(Error::Parse(format!("unknown flavor {other:?}"))),
        }
    }
}

/// A binary operation on `V = K^dim` read as an arity-2 convolution element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraStructure {
    flavor: Flavor,
    mu: StructureTensor,
}

impl AlgebraStructure {
    /// Accepts any binary tensor; use [`verify_structure`] to test the axioms.
    pub fn new(flavor: Flavor, mu: StructureTensor) -> Result<Self> {
        if mu.arity() != 2 {
            return Err(Error::Precondition(format!("structure tensors are binary, got arity {}", mu.arity())));
        }
        Ok(AlgebraStructure { flavor, mu })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn dim(&self) -> usize {
        self.mu.dim()
    }

    pub fn tensor(&self) -> &StructureTensor {
        &self.mu
    }

    /// The arity-2 element of the convolution algebra of the flavor.
    pub fn element(&self, alg: &ConvolutionAlgebra) -> Result<ConvolutionElement> {
        alg.from_tensor(&self.mu)
    }

    pub fn to_document(&self) -> StructureDocument {
        StructureDocument { flavor: self.flavor, dim: self.dim(), mu: nested(&self.mu) }
    }
}

/// True when `½[μ, μ] = 0` in the convolution algebra and the flavor's
/// symmetry holds.
pub fn verify_structure(a: &AlgebraStructure) -> Result<bool> {
    if !a.flavor.symmetry_holds(&a.mu) {
        return Ok(false);
    }
    let alg = ConvolutionAlgebra::new(a.flavor.cooperad(), a.dim())?;
    let mu = a.element(&alg)?;
    Ok(alg.mc_residual(&WeightGradedElement::single(mu))?.is_zero())
}

/// `mu[i][j][k]` is the `e_k`-coefficient of `μ(e_i, e_j)`.
pub(crate) fn nested(t: &StructureTensor) -> Vec<Vec<Vec<String>>> {
    let d = t.dim();
    (0..d).map(|i| (0..d).map(|j| (0..d).map(|k| format_rational(t.get(k, &[i, j]))).collect()).collect()).collect()
}

pub(crate) fn from_nested(dim: usize, rows: &[Vec<Vec<Scalar>>]) -> Result<StructureTensor> {
    let bad = || Error::Schema(format!("structure tensor must be a {dim}×{dim}×{dim} array"));
    if rows.len() != dim {
        return Err(bad());
    }
    let mut t = StructureTensor::zeros(dim, 2);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != dim {
            return Err(bad());
        }
        for (j, v) in row.iter().enumerate() {
            if v.len() != dim {
                return Err(bad());
            }
            for (k, c) in v.iter().enumerate() {
                let c = c.value()?;
                if !c.is_zero() {
                    t.set(k, &[i, j], c);
                }
            }
        }
    }
    Ok(t)
}

/// A rational given as a JSON integer or a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn value(&self) -> Result<ExactScalar> {
        match self {
            Scalar::Int(n) => Ok(ExactScalar::from_integer((*n).into())),
            Scalar::Text(s) => parse_rational(s).map_err(|e| Error::Schema(e.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureDocument {
    pub flavor: Flavor,
    pub dim: usize,
    pub mu: Vec<Vec<Vec<String>>>,
}

/// Input form of a structure; entries may be integers or rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureInput {
    pub flavor: Flavor,
    pub dim: usize,
    pub mu: Vec<Vec<Vec<Scalar>>>,
}

impl StructureInput {
    pub fn into_structure(self) -> Result<AlgebraStructure> {
        AlgebraStructure::new(self.flavor, from_nested(self.dim, &self.mu)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::binary_tensor;
    use crate::linalg::scalar::int;

    pub(crate) fn cross_product() -> StructureTensor {
        StructureTensor::from_fn(3, 2, |o, x| {
            let (i, j) = (x[0], x[1]);
            if i == j || o == i || o == j {
                return int(0);
            }
            int(if (i + 1) % 3 == j { 1 } else { -1 })
        })
    }

    #[test]
    fn verify_examples() {
        let field = AlgebraStructure::new(Flavor::Associative, StructureTensor::from_data(1, 2, vec![int(1)]).unwrap()).unwrap();
        assert!(verify_structure(&field).unwrap());
        let so3 = AlgebraStructure::new(Flavor::Lie, cross_product()).unwrap();
        assert!(verify_structure(&so3).unwrap());
        let bad = binary_tensor(
            3,
            &[((0, 1), vec![int(0), int(0), int(1)]), ((1, 0), vec![int(0), int(0), int(-1)]),
              ((0, 2), vec![int(1), int(0), int(0)]), ((2, 0), vec![int(-1), int(0), int(0)])],
        );
        assert!(!verify_structure(&AlgebraStructure::new(Flavor::Lie, bad).unwrap()).unwrap());
        // associative but not commutative: 2×2 upper triangular matrices on e11, e12
        let tri = binary_tensor(2, &[((0, 0), vec![int(1), int(0)]), ((0, 1), vec![int(0), int(1)])]);
        assert!(verify_structure(&AlgebraStructure::new(Flavor::Associative, tri.clone()).unwrap()).unwrap());
        assert!(!verify_structure(&AlgebraStructure::new(Flavor::Commutative, tri).unwrap()).unwrap());
        assert!(!verify_structure(&AlgebraStructure::new(Flavor::Lie, field.tensor().clone()).unwrap()).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let so3 = AlgebraStructure::new(Flavor::Lie, cross_product()).unwrap();
        let text = serde_json::to_string(&so3.to_document()).unwrap();
        let back: StructureInput = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_structure().unwrap(), so3);
        let with_ints = r#"{"flavor":"associative","dim":1,"mu":[[[1]]]}"#;
        let s: StructureInput = serde_json::from_str(with_ints).unwrap();
        assert_eq!(s.into_structure().unwrap().tensor().data(), &[int(1)]);
        let wrong: StructureInput = serde_json::from_str(r#"{"flavor":"lie","dim":2,"mu":[[[1]]]}"#).unwrap();
        assert!(matches!(wrong.into_structure(), Err(Error::Schema(_))));
        assert!(serde_json::from_str::<StructureInput>(r#"{"flavor":"lie","dim":1,"mu":[[[0]]],"x":1}"#).is_err());
    }
}
