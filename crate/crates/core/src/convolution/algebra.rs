use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::Zero;
use rayon::prelude::*;

use super::element::{ConvolutionElement, CooperadTag, WeightGradedElement};
use super::tensor::{end_compose, StructureTensor};
use crate::error::{Error, Result};
use crate::linalg::scalar::{frac, l1_norm, one, sign};
use crate::linalg::{ExactMatrix, ExactScalar};
use crate::operadcore::{CooperadArity, DecoratedTree, KoszulDualCooperad, MAX_DUAL_ARITY};
use crate::symmetry::Permutation;

/// One term `coef · (u; id, .., l, .., id)^perm` of `Δ_(1)` of a basis vector.
#[derive(Clone, Debug)]
struct DeltaTerm {
    coef: ExactScalar,
    /// `(arity, basis index)` of the upper factor.
    upper: (usize, usize),
    lower: (usize, usize),
    /// Input slot of the upper factor receiving the lower one (0-based).
    slot: usize,
    /// Leaf labels in planar order.
    perm: Vec<usize>,
}

/// How a single tensor `F` corresponds to an equivariant map: `f(c₀) = F`
/// for the generator `c₀` normalized to coefficient 1 on the left comb,
/// and every basis image is a combination of permuted copies of `F`.
#[derive(Clone, Debug)]
struct Identification {
    generator: Vec<ExactScalar>,
    expansion: Vec<Vec<(Permutation, ExactScalar)>>,
}

/// `Hom_S(C, End_V)` for one of the Koszul dual cooperads and `V = K^dim`.
#[derive(Debug)]
pub struct ConvolutionAlgebra {
    tag: CooperadTag,
    dim: usize,
    dual: KoszulDualCooperad,
    deltas: RwLock<HashMap<usize, Arc<Vec<Vec<DeltaTerm>>>>>,
    idents: RwLock<HashMap<usize, Arc<Identification>>>,
}

impl ConvolutionAlgebra {
    pub fn new(tag: CooperadTag, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("V must have positive dimension".into()));
        }
        Ok(ConvolutionAlgebra {
            tag,
            dim,
            dual: KoszulDualCooperad::new(tag.quadratic_data())?,
            deltas: RwLock::new(HashMap::new()),
            idents: RwLock::new(HashMap::new()),
        })
    }

    pub fn tag(&self) -> CooperadTag {
        self.tag
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cooperad(&self) -> &KoszulDualCooperad {
        &self.dual
    }

    fn component(&self, n: usize) -> Result<Arc<CooperadArity>> {
        if n > MAX_DUAL_ARITY {
            return Err(Error::Precondition(format!(
                "missing cooperad data: arity {n} exceeds the available components (n ≤ {MAX_DUAL_ARITY})"
            )));
        }
        self.dual.component(n)
    }

    /// `dim C(n)`.
    pub fn cooperad_dim(&self, n: usize) -> Result<usize> {
        Ok(self.component(n)?.dim())
    }

    /// Matrices of the leaf relabelling by `perm` on `C(n)`, block by weight.
    fn relabel(&self, comp: &CooperadArity, perm: &Permutation) -> ExactMatrix {
        let dim = comp.dim();
        let mut m = ExactMatrix::zeros(dim, dim);
        let mut off = 0;
        for p in &comp.pieces {
            let block = p.rep.action(&perm.inverse());
            for r in 0..p.dim() {
                for c in 0..p.dim() {
                    m.set(off + r, off + c, block.get(r, c).clone());
                }
            }
            off += p.dim();
        }
        m
    }

    pub fn zero(&self, n: usize) -> Result<ConvolutionElement> {
        let k = self.cooperad_dim(n)?;
        Ok(self.raw(n, vec![StructureTensor::zeros(self.dim, n); k]))
    }

    fn raw(&self, n: usize, images: Vec<StructureTensor>) -> ConvolutionElement {
        ConvolutionElement { tag: self.tag, dim: self.dim, arity: n, images }
    }

    /// The arity-1 element sending the counit to the identity map.
    pub fn identity(&self) -> ConvolutionElement {
        self.raw(1, vec![StructureTensor::identity(self.dim)])
    }

    fn check_images(&self, n: usize, images: &[StructureTensor]) -> Result<Arc<CooperadArity>> {
        let comp = self.component(n)?;
        if images.len() != comp.dim() {
            return Err(Error::Precondition(format!("expected {} images, got {}", comp.dim(), images.len())));
        }
        if let Some(t) = images.iter().find(|t| t.dim() != self.dim || t.arity() != n) {
            return Err(Error::Precondition(format!(
                "image of shape (dim {}, arity {}) where (dim {}, arity {n}) is needed",
                t.dim(),
                t.arity(),
                self.dim
            )));
        }
        Ok(comp)
    }

    /// Whether `f(L_σ c) = σ·f(c)` for the adjacent transpositions.
    pub fn is_equivariant(&self, n: usize, images: &[StructureTensor]) -> Result<bool> {
        let comp = self.check_images(n, images)?;
        for t in 0..n.saturating_sub(1) {
            let s = Permutation::adjacent(n, t);
            let m = self.relabel(&comp, &s);
            for (i, img) in images.iter().enumerate() {
                if combine(self.dim, n, &m, i, images) != img.act(&s) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Builds an element from basis images, rejecting non-equivariant data.
    pub fn element(&self, n: usize, images: Vec<StructureTensor>) -> Result<ConvolutionElement> {
        if !self.is_equivariant(n, &images)? {
            return Err(Error::Precondition(format!("images are not S_{n}-equivariant")));
        }
        Ok(self.raw(n, images))
    }

    /// The Reynolds projection `(Rh)(c) = (1/n!) Σ_σ σ⁻¹·h(L_σ c)` onto
    /// equivariant maps.
    pub fn reynolds(&self, n: usize, images: &[StructureTensor]) -> Result<ConvolutionElement> {
        let comp = self.check_images(n, images)?;
        let perms = Permutation::all(n);
        let out: Vec<StructureTensor> = (0..comp.dim())
            .into_par_iter()
            .map(|i| {
                let mut acc = StructureTensor::zeros(self.dim, n);
                for p in &perms {
                    let m = self.relabel(&comp, p);
                    acc.add_assign_scaled(&combine(self.dim, n, &m, i, images).act(&p.inverse()), &one());
                }
                acc.scale(&frac(1, perms.len() as i64))
            })
            .collect();
        Ok(self.raw(n, out))
    }

    fn delta_terms(&self, n: usize) -> Result<Arc<Vec<Vec<DeltaTerm>>>> {
        if let Some(d) = self.deltas.read().expect("delta cache").get(&n) {
            return Ok(Arc::clone(d));
        }
        let comp = self.component(n)?;
        let letters = self.dual.alphabet(n.saturating_sub(1).max(1))?;
        let mut position = HashMap::new();
        for (&(k, w), &space) in &letters.index {
            let c = self.component(k)?;
            let off: usize = c.pieces.iter().take_while(|p| p.weight != w).map(|p| p.dim()).sum();
            position.insert(space, (k, off));
        }
        let locate = |l: crate::operadcore::Letter| {
            let (k, off) = position[&l.space];
            (k, off + l.index)
        };
        let mut all = Vec::new();
        for piece in &comp.pieces {
            for j in 0..piece.dim() {
                let mut coords = vec![ExactScalar::zero(); piece.dim()];
                coords[j] = one();
                let mut terms = Vec::new();
                for (tree, coef) in self.dual.delta1(n, piece.weight, &coords)? {
                    let DecoratedTree::Vertex(root, kids) = &tree else { unreachable!("two-vertex tree") };
                    let slot = kids.iter().position(|k| matches!(k, DecoratedTree::Vertex(..))).expect("inner vertex");
                    let DecoratedTree::Vertex(child, _) = &kids[slot] else { unreachable!() };
                    terms.push(DeltaTerm { coef, upper: locate(*root), lower: locate(*child), slot, perm: tree.leaves() });
                }
                all.push(terms);
            }
        }
        let all = Arc::new(all);
        let mut w = self.deltas.write().expect("delta cache");
        Ok(Arc::clone(w.entry(n).or_insert(all)))
    }

    fn check_pair(&self, f: &ConvolutionElement, g: &ConvolutionElement) -> Result<()> {
        for e in [f, g] {
            if e.tag != self.tag || e.dim != self.dim {
                return Err(Error::Precondition(format!(
                    "element over ({}, dim {}) used in the algebra over ({}, dim {})",
                    e.tag, e.dim, self.tag, self.dim
                )));
            }
        }
        Ok(())
    }

    /// The pre-Lie product, evaluated through `Δ_(1)` of the cooperad and
    /// partial composition in `End_V`:
    /// `(f ⋆ g)(c) = Σ ± (f(u) ∘_r g(l))^σ` over `Δ_(1)(c) = Σ (u; .., l, ..)^σ`,
    /// plus the two counit terms.
    pub fn star(&self, f: &ConvolutionElement, g: &ConvolutionElement) -> Result<ConvolutionElement> {
        self.check_pair(f, g)?;
        let (p, q) = (f.arity, g.arity);
        let n = p + q - 1;
        if n == 1 {
            return Ok(self.raw(1, vec![end_compose(&f.images[0], 0, &g.images[0])?]));
        }
        let deltas = self.delta_terms(n)?;
        let g_deg = g.degree();
        let images = deltas
            .par_iter()
            .enumerate()
            .map(|(j, terms)| {
                let mut acc = StructureTensor::zeros(self.dim, n);
                if q == 1 {
                    for i in 0..p {
                        acc.add_assign_scaled(&end_compose(&f.images[j], i, &g.images[0])?, &one());
                    }
                }
                if p == 1 {
                    acc.add_assign_scaled(&end_compose(&f.images[0], 0, &g.images[j])?, &one());
                }
                for t in terms.iter().filter(|t| t.upper.0 == p && t.lower.0 == q) {
                    let upper_deg = p as i64 - 1;
                    let s = sign(g_deg * upper_deg);
                    let comp = end_compose(&f.images[t.upper.1], t.slot, &g.images[t.lower.1])?;
                    acc.add_assign_scaled(&comp.permute_inputs(&t.perm), &(&t.coef * &s));
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.raw(n, images))
    }

    /// `[f, g] = f ⋆ g − (−1)^{|f||g|} g ⋆ f`.
    pub fn bracket(&self, f: &ConvolutionElement, g: &ConvolutionElement) -> Result<ConvolutionElement> {
        let fg = self.star(f, g)?;
        let gf = self.star(g, f)?;
        fg.sub(&gf.scale(&sign(f.degree() * g.degree())))
    }

    /// `½[α, α]`, weight by weight. Every component must sit in the
    /// Maurer–Cartan degree −1.
    pub fn mc_residual(&self, alpha: &WeightGradedElement) -> Result<WeightGradedElement> {
        if let Some(bad) = alpha.components().values().find(|e| e.degree() != -1) {
            return Err(Error::Precondition(format!(
                "Maurer–Cartan elements live in degree -1; found a component of degree {}",
                bad.degree()
            )));
        }
        let mut parts = Vec::new();
        for a in alpha.components().values() {
            for b in alpha.components().values() {
                parts.push(self.bracket(a, b)?.scale(&frac(1, 2)));
            }
        }
        WeightGradedElement::new(parts)
    }

    pub fn is_maurer_cartan(&self, mu: &ConvolutionElement) -> Result<bool> {
        Ok(self.mc_residual(&WeightGradedElement::single(mu.clone()))?.is_zero())
    }

    /// `∂_μ f = [μ, f]` for a Maurer–Cartan `μ`.
    pub fn twisted_differential(&self, mu: &ConvolutionElement, f: &ConvolutionElement) -> Result<ConvolutionElement> {
        if mu.arity != 2 {
            return Err(Error::Precondition("the twisting element must be binary".into()));
        }
        if !self.is_maurer_cartan(mu)? {
            return Err(Error::Precondition("the twisting element does not satisfy the Maurer–Cartan equation".into()));
        }
        self.bracket(mu, f)
    }

    fn identification(&self, n: usize) -> Result<Arc<Identification>> {
        if let Some(i) = self.idents.read().expect("identification cache").get(&n) {
            return Ok(Arc::clone(i));
        }
        let ident = Arc::new(self.compute_identification(n)?);
        let mut w = self.idents.write().expect("identification cache");
        Ok(Arc::clone(w.entry(n).or_insert(ident)))
    }

    fn compute_identification(&self, n: usize) -> Result<Identification> {
        let comp = self.component(n)?;
        if n == 1 {
            return Ok(Identification {
                generator: vec![one()],
                expansion: vec![vec![(Permutation::identity(1), one())]],
            });
        }
        let piece = &comp.pieces[0];
        let comb = left_comb(n);
        let (generator, expansion) = match self.tag {
            CooperadTag::Lie => {
                let t = piece.ambient.index_of(&comb(0)).expect("left comb is canonical");
                let c = piece.basis[0][t].clone();
                (vec![c.recip()], vec![vec![(Permutation::identity(n), c)]])
            }
            CooperadTag::Ass => {
                let ambient = piece.ambient.basis();
                let off_rows: Vec<Vec<ExactScalar>> = ambient
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| planar_reading(t) != (0..n).collect::<Vec<_>>())
                    .map(|(i, _)| piece.basis.iter().map(|b| b[i].clone()).collect())
                    .collect();
                let kernel = ExactMatrix::from_rows(off_rows).kernel_basis();
                if kernel.len() != 1 {
                    return Err(Error::Precondition(format!(
                        "planar generator of C({n}) not unique ({} candidates)",
                        kernel.len()
                    )));
                }
                let t = piece.ambient.index_of(&comb(0)).expect("left comb is canonical");
                let v = piece.vector(&kernel[0]);
                let generator: Vec<ExactScalar> = kernel[0].iter().map(|x| x / &v[t]).collect();
                let perms = Permutation::all(n);
                let columns: Vec<Vec<ExactScalar>> =
                    perms.iter().map(|p| self.relabel(&comp, p).mul_vec(&generator)).collect();
                let a = ExactMatrix::from_columns(comp.dim(), &columns);
                let mut expansion = Vec::new();
                for j in 0..comp.dim() {
                    let mut e = vec![ExactScalar::zero(); comp.dim()];
                    e[j] = one();
                    let y = a.solve_affine(&e).expect("generator spans C(n)").particular;
                    expansion.push(perms.iter().cloned().zip(y).filter(|(_, c)| !c.is_zero()).collect());
                }
                (generator, expansion)
            }
            CooperadTag::Com => {
                return Err(Error::Precondition(
                    "Com-dual maps are not determined by a single tensor; build them from basis images".into(),
                ))
            }
        };
        Ok(Identification { generator, expansion })
    }

    /// The element determined by one structure tensor: antisymmetric ones
    /// for `Lie^{c!}`, arbitrary ones for `Ass^{c!}`.
    pub fn from_tensor(&self, t: &StructureTensor) -> Result<ConvolutionElement> {
        if t.dim() != self.dim {
            return Err(Error::Precondition(format!("tensor over dim {} in an algebra over dim {}", t.dim(), self.dim)));
        }
        let n = t.arity();
        if self.tag == CooperadTag::Lie && !t.is_antisymmetric() {
            return Err(Error::Precondition("Lie-type maps must be antisymmetric".into()));
        }
        let ident = self.identification(n)?;
        let images = ident
            .expansion
            .iter()
            .map(|terms| {
                let mut acc = StructureTensor::zeros(self.dim, n);
                for (p, c) in terms {
                    acc.add_assign_scaled(&t.act(p), c);
                }
                acc
            })
            .collect();
        Ok(self.raw(n, images))
    }

    /// Like [`ConvolutionAlgebra::from_tensor`], but for `Lie^{c!}` first
    /// antisymmetrizes. Returns the element with the l1 norm of the
    /// correction; a nonzero correction is an error unless `project` is set.
    pub fn from_raw_tensor(&self, t: &StructureTensor, project: bool) -> Result<(ConvolutionElement, ExactScalar)> {
        if self.tag != CooperadTag::Lie {
            return Ok((self.from_tensor(t)?, ExactScalar::zero()));
        }
        let a = t.antisymmetrize();
        let norm = l1_norm(t.sub(&a)?.data());
        if !norm.is_zero() && !project {
            return Err(Error::Precondition(format!(
                "tensor is not antisymmetric (correction norm {norm}); enable projection to antisymmetrize"
            )));
        }
        Ok((self.from_tensor(&a)?, norm))
    }

    /// Inverse of [`ConvolutionAlgebra::from_tensor`].
    pub fn to_tensor(&self, f: &ConvolutionElement) -> Result<StructureTensor> {
        if f.tag != self.tag || f.dim != self.dim {
            return Err(Error::Precondition("element belongs to a different algebra".into()));
        }
        let ident = self.identification(f.arity)?;
        let mut acc = StructureTensor::zeros(self.dim, f.arity);
        for (c, img) in ident.generator.iter().zip(&f.images) {
            acc.add_assign_scaled(img, c);
        }
        Ok(acc)
    }
}

/// `Σ_j m[j][i] images[j]`.
fn combine(dim: usize, n: usize, m: &ExactMatrix, i: usize, images: &[StructureTensor]) -> StructureTensor {
    let mut acc = StructureTensor::zeros(dim, n);
    for (j, img) in images.iter().enumerate() {
        acc.add_assign_scaled(img, m.get(j, i));
    }
    acc
}

/// `((..(1 2) 3) .. n)` with every vertex labelled by letter `index` of
/// the first space.
fn left_comb(n: usize) -> impl Fn(usize) -> DecoratedTree {
    move |index| {
        let l = crate::operadcore::Letter::new(0, index);
        let mut t = DecoratedTree::Leaf(0);
        for k in 1..n {
            t = DecoratedTree::Vertex(l, vec![t, DecoratedTree::Leaf(k)]);
        }
        t
    }
}

/// Leaf order of a tree over `m.0`, `m.1`, reading `m.1` right to left.
fn planar_reading(t: &DecoratedTree) -> Vec<usize> {
    match t {
        DecoratedTree::Leaf(x) => vec![*x],
        DecoratedTree::Vertex(l, kids) => {
            let mut parts: Vec<Vec<usize>> = kids.iter().map(planar_reading).collect();
            if l.index == 1 {
                parts.reverse();
            }
            parts.concat()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolution::fast::{ass_star, associator, binary_tensor, hochschild_differential, jacobiator, nr_star};
    use crate::linalg::scalar::int;
    use proptest::prelude::*;

    fn tensor(dim: usize, n: usize, seed: &[i64]) -> StructureTensor {
        let data = seed.iter().cycle().take(dim.pow(n as u32 + 1)).map(|&v| int(v)).collect();
        StructureTensor::from_data(dim, n, data).unwrap()
    }

    fn element(alg: &ConvolutionAlgebra, n: usize, seed: &[i64]) -> ConvolutionElement {
        let t = tensor(alg.dim(), n, seed);
        match alg.tag() {
            CooperadTag::Lie => alg.from_tensor(&t.antisymmetrize()).unwrap(),
            CooperadTag::Ass => alg.from_tensor(&t).unwrap(),
            CooperadTag::Com => {
                let k = alg.cooperad_dim(n).unwrap();
                let images: Vec<StructureTensor> =
                    (0..k).map(|j| tensor(alg.dim(), n, &seed[j % seed.len()..])).collect();
                alg.reynolds(n, &images).unwrap()
            }
        }
    }

    fn cross_product() -> StructureTensor {
        StructureTensor::from_fn(3, 2, |o, x| {
            let (i, j) = (x[0], x[1]);
            if i == j || o == i || o == j {
                return int(0);
            }
            int(if (i + 1) % 3 == j { 1 } else { -1 })
        })
    }

    #[test]
    fn identity_is_counted_per_input() {
        for tag in [CooperadTag::Lie, CooperadTag::Com, CooperadTag::Ass] {
            let alg = ConvolutionAlgebra::new(tag, 2).unwrap();
            let id = alg.identity();
            for n in 1..=3 {
                let f = element(&alg, n, &[3, -1, 4, 1, -5, 9, 2, -6, 5]);
                assert_eq!(alg.star(&f, &id).unwrap(), f.scale(&int(n as i64)), "{tag} {n}");
                assert_eq!(alg.star(&id, &f).unwrap(), f);
                assert_eq!(alg.bracket(&f, &id).unwrap(), f.scale(&int(n as i64 - 1)));
                let zero = alg.zero(2).unwrap();
                assert!(alg.star(&zero, &f).unwrap().is_zero());
                assert!(alg.bracket(&f, &zero).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn tensor_identification_round_trips() {
        let alg = ConvolutionAlgebra::new(CooperadTag::Ass, 2).unwrap();
        for n in 1..=4 {
            let t = tensor(2, n, &[1, 0, -2, 3, 5, -1, 2, 7, 4]);
            let f = alg.from_tensor(&t).unwrap();
            assert_eq!(f.images().len(), crate::symmetry::factorial(n));
            assert!(alg.is_equivariant(n, f.images()).unwrap());
            assert_eq!(alg.to_tensor(&f).unwrap(), t);
        }
        let alg = ConvolutionAlgebra::new(CooperadTag::Lie, 3).unwrap();
        let t = tensor(3, 2, &[1, 0, -2, 3, 5]);
        assert!(alg.from_tensor(&t).is_err());
        assert!(alg.from_raw_tensor(&t, false).is_err());
        let (f, norm) = alg.from_raw_tensor(&t, true).unwrap();
        assert!(norm > ExactScalar::zero());
        assert_eq!(alg.to_tensor(&f).unwrap(), t.antisymmetrize());
        assert!(ConvolutionAlgebra::new(CooperadTag::Com, 2).unwrap().from_tensor(&t).is_err());
    }

    #[test]
    fn equivariance_is_checked() {
        let alg = ConvolutionAlgebra::new(CooperadTag::Lie, 2).unwrap();
        let t = tensor(2, 2, &[1, 2, 0, -1, 3]);
        assert!(alg.element(2, vec![t.clone()]).is_err());
        assert!(alg.element(2, vec![t.antisymmetrize()]).is_ok());
        assert!(alg.element(2, vec![t.clone(), t]).is_err());
        let r = alg.reynolds(2, &[tensor(2, 2, &[1, 2, 0, -1, 3])]).unwrap();
        assert!(alg.is_equivariant(2, r.images()).unwrap());
    }

    #[test]
    fn both_routes_agree() {
        let lie = ConvolutionAlgebra::new(CooperadTag::Lie, 4).unwrap();
        let ass = ConvolutionAlgebra::new(CooperadTag::Ass, 2).unwrap();
        let seed = [2, -3, 0, 1, 4, -1, 5, -2, 3, 7, -4];
        for p in 1..=3 {
            for q in 1..=(5 - p).min(3) {
                let (f, g) = (tensor(4, p, &seed).antisymmetrize(), tensor(4, q, &seed[3..]).antisymmetrize());
                let via = lie.star(&lie.from_tensor(&f).unwrap(), &lie.from_tensor(&g).unwrap()).unwrap();
                assert_eq!(lie.to_tensor(&via).unwrap(), nr_star(&f, &g).unwrap(), "lie {p} {q}");
                let (f, g) = (tensor(2, p, &seed), tensor(2, q, &seed[2..]));
                let via = ass.star(&ass.from_tensor(&f).unwrap(), &ass.from_tensor(&g).unwrap()).unwrap();
                assert_eq!(ass.to_tensor(&via).unwrap(), ass_star(&f, &g).unwrap(), "ass {p} {q}");
            }
        }
    }

    #[test]
    fn residual_is_minus_jacobiator() {
        let alg = ConvolutionAlgebra::new(CooperadTag::Lie, 3).unwrap();
        let cross = alg.from_tensor(&cross_product()).unwrap();
        assert!(alg.mc_residual(&WeightGradedElement::single(cross.clone())).unwrap().is_zero());
        let bad = binary_tensor(
            3,
            &[((0, 1), vec![int(0), int(0), int(1)]), ((1, 0), vec![int(0), int(0), int(-1)]),
              ((0, 2), vec![int(1), int(0), int(0)]), ((2, 0), vec![int(-1), int(0), int(0)])],
        );
        let mu = alg.from_tensor(&bad).unwrap();
        let res = alg.mc_residual(&WeightGradedElement::single(mu.clone())).unwrap();
        let r = alg.to_tensor(res.component(2).unwrap()).unwrap();
        assert_eq!(r, jacobiator(&bad).unwrap().scale(&int(-1)));
        assert_eq!(alg.bracket(&mu, &mu).unwrap(), alg.star(&mu, &mu).unwrap().scale(&int(2)));
        assert!(alg.twisted_differential(&mu, &cross).is_err());
        let det = StructureTensor::from_fn(3, 3, |o, x| int((o == 0 && x == [0, 1, 2]) as i64)).antisymmetrize();
        let three = alg.from_tensor(&det).unwrap();
        assert!(alg.mc_residual(&WeightGradedElement::single(three)).is_err());
    }

    #[test]
    fn twisted_differential_examples() {
        let ass = ConvolutionAlgebra::new(CooperadTag::Ass, 1).unwrap();
        let m = StructureTensor::from_data(1, 2, vec![int(1)]).unwrap();
        assert!(associator(&m).unwrap().is_zero());
        let mu = ass.from_tensor(&m).unwrap();
        let d = ass.twisted_differential(&mu, &ass.identity()).unwrap();
        assert_eq!(ass.to_tensor(&d).unwrap(), hochschild_differential(&m, &StructureTensor::identity(1)).unwrap());
        assert_eq!(ass.to_tensor(&d).unwrap().data(), &[int(1)]);

        let lie = ConvolutionAlgebra::new(CooperadTag::Lie, 3).unwrap();
        let mu = lie.from_tensor(&cross_product()).unwrap();
        assert_eq!(lie.twisted_differential(&mu, &lie.identity()).unwrap(), mu);
        let zero = lie.zero(2).unwrap();
        let f = element(&lie, 2, &[1, -1, 2, 0, 3]);
        assert!(lie.twisted_differential(&zero, &f).unwrap().is_zero());
        let df = lie.twisted_differential(&mu, &f).unwrap();
        assert!(lie.twisted_differential(&mu, &df).unwrap().is_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn pre_lie_and_jacobi(seed in prop::collection::vec(-3i64..=3, 3..12), ar in prop::array::uniform3(1usize..=2),
                              com in any::<bool>()) {
            let tag = if com { CooperadTag::Com } else { CooperadTag::Lie };
            let alg = ConvolutionAlgebra::new(tag, 2).unwrap();
            let f = element(&alg, ar[0], &seed);
            let g = element(&alg, ar[1], &seed[1..]);
            let h = element(&alg, ar[2], &seed[2..]);
            let assoc = |a: &ConvolutionElement, b: &ConvolutionElement, c: &ConvolutionElement| {
                alg.star(&alg.star(a, b).unwrap(), c).unwrap().sub(&alg.star(a, &alg.star(b, c).unwrap()).unwrap()).unwrap()
            };
            let s = sign(g.degree() * h.degree());
            prop_assert_eq!(assoc(&f, &g, &h), assoc(&f, &h, &g).scale(&s));
            prop_assert!(alg.is_equivariant(f.arity() + g.arity() - 1, alg.star(&f, &g).unwrap().images()).unwrap());

            // [f,[g,h]] = [[f,g],h] + (−1)^{|f||g|}[g,[f,h]]
            let b = |x: &ConvolutionElement, y: &ConvolutionElement| alg.bracket(x, y).unwrap();
            let lhs = b(&f, &b(&g, &h));
            let rhs = b(&b(&f, &g), &h).add(&b(&g, &b(&f, &h)).scale(&sign(f.degree() * g.degree()))).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(b(&f, &g), b(&g, &f).scale(&-sign(f.degree() * g.degree())));
        }
    }
}
