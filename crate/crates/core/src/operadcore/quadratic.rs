use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::free::FreeOperadComponent;
use super::tree::{canonicalize, enumerate_trees, substitute, Alphabet, DecoratedTree, LetterSpace, TreeCombination};
use crate::error::{guardrail, Error, Result};
use crate::linalg::scalar::{int, one};
use crate::linalg::{format_rational, parse_rational, ExactMatrix, ExactScalar, SpanReducer};
use crate::symmetry::{sign_representation, Permutation, SnRepresentation};

pub const MAX_QUADRATIC_ARITY: usize = 5;

/// Generators `E` and relations `R ⊂ F(E)^{(2)}`.
///
/// Relations are stored per arity as a reduced-echelon basis over the tree
/// basis of `F(E)^{(2)}(m)`.
#[derive(Clone, Debug)]
pub struct QuadraticData {
    name: String,
    alphabet: Alphabet,
    weight_two: BTreeMap<usize, FreeOperadComponent>,
    relations: BTreeMap<usize, Vec<Vec<ExactScalar>>>,
}

impl QuadraticData {
    /// Validates that `R` is stable under the symmetric groups.
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        relations: BTreeMap<usize, Vec<Vec<ExactScalar>>>,
    ) -> Result<Self> {
        let top: usize = alphabet.spaces().iter().map(|s| 2 * s.arity() - 1).max().unwrap_or(0);
        let weight_two: BTreeMap<usize, FreeOperadComponent> = (3..=top)
            .map(|m| (m, FreeOperadComponent::build(&alphabet, m, 2)))
            .filter(|(_, f)| f.dim() > 0)
            .collect();
        let mut reduced = BTreeMap::new();
        for (m, vs) in relations {
            let Some(f) = weight_two.get(&m) else {
                return Err(Error::Precondition(format!("no weight-2 trees of arity {m}")));
            };
            if let Some(v) = vs.iter().find(|v| v.len() != f.dim()) {
                return Err(Error::Precondition(format!("relation of length {} in a {}-dim space", v.len(), f.dim())));
            }
            let span = SpanReducer::new(f.dim(), &vs);
            for v in span.basis() {
                for g in f.representation().generators() {
                    if !span.contains(&g.mul_vec(v)) {
                        return Err(Error::Precondition(format!(
                            "relations in arity {m} are not closed under the symmetric group"
                        )));
                    }
                }
            }
            if span.rank() > 0 {
                reduced.insert(m, span.basis().to_vec());
            }
        }
        Ok(QuadraticData { name: name.into(), alphabet, weight_two, relations: reduced })
    }

    /// Relations written as sums of (possibly non-canonical) trees.
    pub fn from_expressions(name: &str, alphabet: Alphabet, relations: &[Vec<(String, ExactScalar)>]) -> Result<Self> {
        let mut by_arity: BTreeMap<usize, Vec<Vec<ExactScalar>>> = BTreeMap::new();
        let probe = QuadraticData::new(name, alphabet.clone(), BTreeMap::new())?;
        for rel in relations {
            let mut comb = TreeCombination::new();
            let mut arity = None;
            for (text, c) in rel {
                let t = DecoratedTree::parse(&alphabet, text)?;
                if t.weight() != 2 {
                    return Err(Error::Precondition(format!("relation term {text:?} is not of weight 2")));
                }
                if arity.replace(t.arity()).is_some_and(|a| a != t.arity()) {
                    return Err(Error::Precondition("relation mixes arities".into()));
                }
                super::tree::add_scaled(&mut comb, canonicalize(&alphabet, &t), c);
            }
            let Some(m) = arity else { continue };
            let v = probe.weight_two[&m].coordinates(&comb)?;
            by_arity.entry(m).or_default().push(v);
        }
        QuadraticData::new(name, alphabet, by_arity)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// The basis of `F(E)^{(2)}(m)`, when nonzero.
    pub fn weight_two(&self, m: usize) -> Option<&FreeOperadComponent> {
        self.weight_two.get(&m)
    }

    pub fn weight_two_components(&self) -> &BTreeMap<usize, FreeOperadComponent> {
        &self.weight_two
    }

    pub fn relations(&self) -> &BTreeMap<usize, Vec<Vec<ExactScalar>>> {
        &self.relations
    }

    /// Per arity, a basis of the linear forms vanishing on `R`.
    pub fn annihilators(&self) -> BTreeMap<usize, Vec<Vec<ExactScalar>>> {
        self.weight_two
            .iter()
            .map(|(&m, f)| {
                let rows = self.relations.get(&m).cloned().unwrap_or_default();
                let ann = if rows.is_empty() {
                    ExactMatrix::zeros(1, f.dim()).kernel_basis()
                } else {
                    ExactMatrix::from_rows(rows).kernel_basis()
                };
                (m, ann)
            })
            .filter(|(_, a)| !a.is_empty())
            .collect()
    }

    /// One antisymmetric binary bracket modulo the Jacobi identity.
    pub fn lie() -> Self {
        let a = single_binary("b", sign_representation(2));
        let jacobi = vec![("((1 2) 3)", 1), ("((2 3) 1)", 1), ("((3 1) 2)", 1)];
        Self::from_expressions("lie", a, &[terms(&jacobi)]).expect("preset is valid")
    }

    /// One symmetric binary product, associative.
    pub fn com() -> Self {
        let a = single_binary("m", SnRepresentation::trivial(2, 1));
        let rels = [terms(&[("((1 2) 3)", 1), ("(1 (2 3))", -1)]), terms(&[("((1 2) 3)", 1), ("((1 3) 2)", -1)])];
        Self::from_expressions("com", a, &rels).expect("preset is valid")
    }

    /// A binary product without symmetry (`m.0`, with `m.1` its opposite),
    /// associative.
    pub fn ass() -> Self {
        let a = single_binary("m", SnRepresentation::regular(2));
        let rels: Vec<Vec<(String, ExactScalar)>> = Permutation::all(3)
            .iter()
            .map(|p| {
                let [x, y, z] = [p.apply(0) + 1, p.apply(1) + 1, p.apply(2) + 1];
                vec![
                    (format!("(({x} {y})@m.0 {z})@m.0"), one()),
                    (format!("({x} ({y} {z})@m.0)@m.0"), int(-1)),
                ]
            })
            .collect();
        Self::from_expressions("ass", a, &rels).expect("preset is valid")
    }

    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "lie" => Ok(Self::lie()),
            "com" => Ok(Self::com()),
            "ass" => Ok(Self::ass()),
            _ => Err(Error::Parse(format!("unknown quadratic data preset {name:?}"))),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: QuadraticDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        doc.into_data()
    }

    pub fn to_document(&self) -> QuadraticDocument {
        let generators = self
            .alphabet
            .spaces()
            .iter()
            .map(|s| GeneratorDocument {
                name: s.name.clone(),
                arity: s.arity(),
                dimension: s.rep.dim(),
                degree: s.degree,
                transpositions: s
                    .rep
                    .generators()
                    .iter()
                    .map(|m| (0..m.rows()).map(|r| m.row(r).iter().map(format_rational).collect()).collect())
                    .collect(),
            })
            .collect();
        let relations = self
            .relations
            .iter()
            .flat_map(|(m, vs)| {
                let f = &self.weight_two[m];
                vs.iter().map(move |v| {
                    f.combination(v).iter().map(|(t, c)| (t.render(&self.alphabet), format_rational(c))).collect()
                })
            })
            .collect();
        QuadraticDocument { name: self.name.clone(), generators, relations }
    }
}

fn single_binary(name: &str, rep: SnRepresentation) -> Alphabet {
    Alphabet::new(vec![LetterSpace { name: name.into(), degree: 0, rep }]).expect("valid generator")
}

fn terms(t: &[(&str, i64)]) -> Vec<(String, ExactScalar)> {
    t.iter().map(|(s, c)| (s.to_string(), int(*c))).collect()
}

/// JSON form of quadratic data. Tree keys use the bracketed notation of
/// [`DecoratedTree::render`]; coefficients are rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticDocument {
    #[serde(default)]
    pub name: String,
    pub generators: Vec<GeneratorDocument>,
    pub relations: Vec<BTreeMap<String, String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDocument {
    pub name: String,
    pub arity: usize,
    pub dimension: usize,
    #[serde(default)]
    pub degree: i64,
    /// Matrices of `s_1, .., s_{arity-1}`, row-major.
    pub transpositions: Vec<Vec<Vec<String>>>,
}

impl QuadraticDocument {
    pub fn into_data(self) -> Result<QuadraticData> {
        let mut spaces = Vec::new();
        for g in &self.generators {
            if g.transpositions.len() + 1 != g.arity {
                return Err(Error::Schema(format!("generator {:?} needs {} matrices", g.name, g.arity.saturating_sub(1))));
            }
            let mut mats = Vec::new();
            for m in &g.transpositions {
                if m.len() != g.dimension || m.iter().any(|r| r.len() != g.dimension) {
                    return Err(Error::Schema(format!("generator {:?}: matrix shape differs from dimension", g.name)));
                }
                let rows = m.iter().map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>());
                mats.push(ExactMatrix::from_rows(rows.collect::<Result<Vec<_>>>()?));
            }
            let rep = SnRepresentation::new(g.arity, g.dimension, mats)?;
            spaces.push(LetterSpace { name: g.name.clone(), degree: g.degree, rep });
        }
        let alphabet = Alphabet::new(spaces)?;
        let rels: Vec<Vec<(String, ExactScalar)>> = self
            .relations
            .iter()
            .map(|r| r.iter().map(|(t, c)| Ok((t.clone(), parse_rational(c)?))).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        QuadraticData::from_expressions(&self.name, alphabet, &rels)
    }
}

/// Span of `Σ_τ v_τ · (τ substituted into K)` over all contexts `K` with a
/// single placeholder, for the given vectors over `F^{(2)}(m)`.
pub(crate) fn context_span(
    alphabet: &Alphabet,
    target: &FreeOperadComponent,
    weight_two: &BTreeMap<usize, FreeOperadComponent>,
    vectors: &BTreeMap<usize, Vec<Vec<ExactScalar>>>,
) -> Vec<Vec<ExactScalar>> {
    let (n, d) = (target.arity(), target.weight());
    if d < 2 {
        return Vec::new();
    }
    let leaves: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for (m, vs) in vectors {
        let Some(w2) = weight_two.get(m) else { continue };
        let contexts = enumerate_trees(alphabet, &leaves, d - 2, Some(*m));
        let rows: Vec<Vec<Vec<ExactScalar>>> = contexts
            .par_iter()
            .map(|k| {
                let subs: Vec<Vec<ExactScalar>> = w2
                    .basis()
                    .iter()
                    .map(|tau| target.coordinates(&substitute(alphabet, k, tau)).expect("substitution stays in component"))
                    .collect();
                vs.iter()
                    .map(|v| {
                        let mut row = vec![ExactScalar::zero(); target.dim()];
                        for (coef, sub) in v.iter().zip(&subs) {
                            if coef.is_zero() {
                                continue;
                            }
                            for (r, s) in row.iter_mut().zip(sub) {
                                if !s.is_zero() {
                                    *r += coef * s;
                                }
                            }
                        }
                        row
                    })
                    .filter(|r| r.iter().any(|x| !x.is_zero()))
                    .collect()
            })
            .collect();
        out.extend(rows.into_iter().flatten());
    }
    out
}

/// `P(E, R)^{(d)}(n) = F(E)^{(d)}(n) / (R)^{(d)}(n)`.
#[derive(Clone, Debug)]
pub struct QuotientPiece {
    pub free: FreeOperadComponent,
    pub ideal_rank: usize,
    /// Tree indices whose classes form the quotient basis.
    pub basis_columns: Vec<usize>,
    /// `dim × dim F` matrix sending a tree vector to quotient coordinates.
    pub projection: ExactMatrix,
    pub rep: SnRepresentation,
}

impl QuotientPiece {
    pub fn weight(&self) -> usize {
        self.free.weight()
    }

    pub fn dim(&self) -> usize {
        self.basis_columns.len()
    }
}

/// The arity-`n` component of a quadratic operad, split by weight.
#[derive(Clone, Debug)]
pub struct OperadComponent {
    pub arity: usize,
    pub pieces: Vec<QuotientPiece>,
}

impl OperadComponent {
    pub fn dim(&self) -> usize {
        self.pieces.iter().map(QuotientPiece::dim).sum()
    }
}

pub fn quadratic_operad_component(qd: &QuadraticData, n: usize) -> Result<OperadComponent> {
    if n > MAX_QUADRATIC_ARITY {
        return guardrail(format!("quadratic operad components limited to n ≤ {MAX_QUADRATIC_ARITY}, asked for {n}"));
    }
    if n == 0 {
        return Err(Error::Precondition("arity must be at least 1".into()));
    }
    let mut pieces = Vec::new();
    for d in 0..n {
        let free = FreeOperadComponent::build(qd.alphabet(), n, d);
        if free.dim() == 0 {
            continue;
        }
        let gens = context_span(qd.alphabet(), &free, qd.weight_two_components(), qd.relations());
        let ideal = SpanReducer::new(free.dim(), &gens);
        let basis_columns = ideal.rref().free_columns();
        let mut projection = ExactMatrix::zeros(basis_columns.len(), free.dim());
        for j in 0..free.dim() {
            let mut e = vec![ExactScalar::zero(); free.dim()];
            e[j] = one();
            let r = ideal.reduce(&e);
            for (row, &c) in basis_columns.iter().enumerate() {
                projection.set(row, j, r[c].clone());
            }
        }
        let lift = ExactMatrix::from_columns(
            free.dim(),
            &basis_columns
                .iter()
                .map(|&c| {
                    let mut e = vec![ExactScalar::zero(); free.dim()];
                    e[c] = one();
                    e
                })
                .collect::<Vec<_>>(),
        );
        let gens = free.representation().generators().iter().map(|g| projection.mul(g).mul(&lift)).collect();
        let rep = SnRepresentation::new_unchecked(n, basis_columns.len(), gens);
        pieces.push(QuotientPiece { ideal_rank: ideal.rank(), basis_columns, projection, rep, free });
    }
    Ok(OperadComponent { arity: n, pieces })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_relation_dimensions() {
        assert_eq!(QuadraticData::lie().relations()[&3].len(), 1);
        assert_eq!(QuadraticData::com().relations()[&3].len(), 2);
        assert_eq!(QuadraticData::ass().relations()[&3].len(), 6);
        assert_eq!(QuadraticData::ass().weight_two(3).unwrap().dim(), 12);
    }

    #[test]
    fn lie_component_dimensions() {
        let lie = QuadraticData::lie();
        let dims: Vec<usize> = (1..=5).map(|n| quadratic_operad_component(&lie, n).unwrap().dim()).collect();
        // (n-1)!; the 3-dim F(E)(3) modulo the line spanned by Jacobi
        assert_eq!(dims, vec![1, 1, 2, 6, 24]);
    }

    #[test]
    fn com_and_ass_dimensions() {
        let com = QuadraticData::com();
        for n in 1..=4 {
            assert_eq!(quadratic_operad_component(&com, n).unwrap().dim(), 1);
        }
        let ass = QuadraticData::ass();
        for (n, d) in [(2, 2), (3, 6), (4, 24)] {
            assert_eq!(quadratic_operad_component(&ass, n).unwrap().dim(), d);
        }
    }

    #[test]
    fn zero_relations_give_free_operad() {
        let lie = QuadraticData::lie();
        let free = QuadraticData::new("free", lie.alphabet().clone(), BTreeMap::new()).unwrap();
        let c = quadratic_operad_component(&free, 4).unwrap();
        assert_eq!(c.dim(), 15);
        assert_eq!(c.pieces[0].ideal_rank, 0);
    }

    #[test]
    fn projections_are_equivariant() {
        for qd in [QuadraticData::lie(), QuadraticData::ass()] {
            let c = quadratic_operad_component(&qd, 4).unwrap();
            for p in &c.pieces {
                p.rep.check_coxeter().unwrap();
                for (q, f) in p.rep.generators().iter().zip(p.free.representation().generators()) {
                    assert_eq!(q.mul(&p.projection), p.projection.mul(f));
                }
            }
        }
    }

    #[test]
    fn rejects_non_stable_relations() {
        let lie = QuadraticData::lie();
        let w = lie.weight_two(3).unwrap().dim();
        let mut v = vec![ExactScalar::zero(); w];
        v[0] = one();
        let rels = BTreeMap::from([(3, vec![v])]);
        assert!(QuadraticData::new("bad", lie.alphabet().clone(), rels).is_err());
        assert!(matches!(quadratic_operad_component(&lie, 6), Err(Error::Guardrail(_))));
    }

    #[test]
    fn json_round_trip() {
        for qd in [QuadraticData::lie(), QuadraticData::com(), QuadraticData::ass()] {
            let doc = qd.to_document();
            let text = serde_json::to_string(&doc).unwrap();
            let back = QuadraticData::from_json(&text).unwrap();
            assert_eq!(back.relations(), qd.relations());
        }
        assert!(matches!(QuadraticData::from_json("{\"generators\": []}"), Err(Error::Schema(_))));
        let text = r#"{"generators":[{"name":"b","arity":2,"dimension":1,"transpositions":[[["-1"]]]}],
                       "relations":[{"((1 2) 3)":"1","((2 3) 1)":"1","((3 1) 2)":"1"}]}"#;
        assert_eq!(QuadraticData::from_json(text).unwrap().relations(), QuadraticData::lie().relations());
    }
}
