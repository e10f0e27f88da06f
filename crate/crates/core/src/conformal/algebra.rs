use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::MPoly;
use crate::convolution::StructureTensor;
use crate::error::{guardrail, Error, Result};
use crate::linalg::scalar::{frac, int};
use crate::linalg::{format_rational, parse_rational, ExactScalar};

/// Bounds on λ-degree (summed over all λ variables) and `T`-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeCaps {
    pub lambda: u32,
    pub t: u32,
}

impl Default for DegreeCaps {
    fn default() -> Self {
        DegreeCaps { lambda: 6, t: 6 }
    }
}

impl DegreeCaps {
    /// Errors if any coefficient of `v` (variables `T, λ_0, ..`) is too big.
    pub fn check(&self, v: &[MPoly]) -> Result<()> {
        for p in v {
            let t = p.max_over(|e| e[0]);
            let l = p.max_over(|e| e[1..].iter().sum());
            if t > self.t || l > self.lambda {
                return guardrail(format!(
                    "degree caps exceeded: T-degree {t} (cap {}), λ-degree {l} (cap {})",
                    self.t, self.lambda
                ));
            }
        }
        Ok(())
    }
}

/// `Σ c · T^a λ^b g` over generators `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaPolynomial {
    polys: Vec<MPoly>,
}

impl LambdaPolynomial {
    pub fn zero(rank: usize) -> Self {
        LambdaPolynomial { polys: vec![MPoly::zero(2); rank] }
    }

    /// From `(generator, T-power, λ-power, coefficient)` terms.
    pub fn from_terms(rank: usize, terms: &[(usize, u32, u32, ExactScalar)]) -> Result<Self> {
        let mut out = Self::zero(rank);
        for (g, tp, lp, c) in terms {
            if *g >= rank {
                return Err(Error::Schema(format!("generator {g} out of range for rank {rank}")));
            }
            out.polys[*g].add_assign_scaled(&MPoly::monomial(2, vec![*tp, *lp], c.clone()), &ExactScalar::one());
        }
        Ok(out)
    }

    pub(crate) fn from_polys(polys: Vec<MPoly>) -> Self {
        LambdaPolynomial { polys }
    }

    pub fn rank(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn coefficient(&self, gen: usize, t_pow: u32, lambda_pow: u32) -> ExactScalar {
        self.polys[gen].coefficient(&[t_pow, lambda_pow])
    }

    pub fn is_zero(&self) -> bool {
        self.polys.iter().all(MPoly::is_zero)
    }

    /// `(generator, T-power, λ-power, coefficient)` in a fixed order.
    pub fn terms(&self) -> Vec<(usize, u32, u32, ExactScalar)> {
        self.polys
            .iter()
            .enumerate()
            .flat_map(|(g, p)| p.terms().iter().map(move |(e, c)| (g, e[0], e[1], c.clone())))
            .collect()
    }

    pub fn render(&self, names: &[String]) -> String {
        render_value(&self.polys, names, &["T", "λ"])
    }
}

pub(crate) fn render_value(v: &[MPoly], names: &[String], vars: &[&str]) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(names)
        .filter(|(p, _)| !p.is_zero())
        .map(|(p, n)| if p.terms().len() == 1 && p.terms().keys().next().unwrap().iter().all(|&k| k == 0) {
            let c = p.terms().values().next().unwrap();
            if c.is_one() { n.clone() } else { format!("{}*{n}", format_rational(c)) }
        } else {
            format!("({})*{n}", p.render(vars))
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// A Lie conformal algebra given on generators. Non-central generators
/// span a free `K[T]`-module; central ones are killed by `T` and have
/// zero brackets on both sides. Sesquilinearity
/// `[Ta_λ b] = −λ[a_λ b]`, `[a_λ Tb] = (λ + T)[a_λ b]` extends the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieConformalAlgebra {
    names: Vec<String>,
    central: Vec<bool>,
    table: Vec<Vec<LambdaPolynomial>>,
    caps: DegreeCaps,
}

impl LieConformalAlgebra {
    pub fn new(
        names: Vec<String>,
        central: Vec<bool>,
        brackets: BTreeMap<(usize, usize), LambdaPolynomial>,
        caps: DegreeCaps,
    ) -> Result<Self> {
        let r = names.len();
        if central.len() != r {
            return Err(Error::Schema("one centrality flag per generator".into()));
        }
        let mut table = vec![vec![LambdaPolynomial::zero(r); r]; r];
        for ((i, j), p) in brackets {
            if i >= r || j >= r || p.rank() != r {
                return Err(Error::Schema(format!("bracket entry ({i}, {j}) does not match rank {r}")));
            }
            if !p.is_zero() && (central[i] || central[j]) {
                return Err(Error::Precondition(format!("central generator in nonzero bracket ({i}, {j})")));
            }
            for (g, tp, _, _) in p.terms() {
                if central[g] && tp > 0 {
                    return Err(Error::Schema(format!("T acts by zero on central generator {g}")));
                }
            }
            caps.check(p.polys())?;
            table[i][j] = p;
        }
        Ok(LieConformalAlgebra { names, central, table, caps })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_central(&self, i: usize) -> bool {
        self.central[i]
    }

    pub fn free_generators(&self) -> Vec<usize> {
        (0..self.rank()).filter(|&i| !self.central[i]).collect()
    }

    pub fn caps(&self) -> DegreeCaps {
        self.caps
    }

    pub fn with_caps(mut self, caps: DegreeCaps) -> Result<Self> {
        for row in &self.table {
            for p in row {
                caps.check(p.polys())?;
            }
        }
        self.caps = caps;
        Ok(self)
    }

    pub fn bracket(&self, i: usize, j: usize) -> &LambdaPolynomial {
        &self.table[i][j]
    }

    /// `[g_i {lam} g_j]` in a ring with `nvars` variables, `T` first.
    pub(crate) fn bracket_at(&self, i: usize, j: usize, nvars: usize, lam: &MPoly) -> Vec<MPoly> {
        let images = [MPoly::var(nvars, 0), lam.clone()];
        self.table[i][j].polys().iter().map(|p| p.substitute(&images)).collect()
    }

    /// `T` acts by zero on central generators.
    pub(crate) fn normalize(&self, v: &mut [MPoly]) {
        for (g, p) in v.iter_mut().enumerate() {
            if self.central[g] {
                *p = p.filter(|e| e[0] == 0);
            }
        }
    }

    /// `[g_a {λ} v]` for `λ` the variable `lam`, using `[a_λ Tb] = (λ + T)[a_λ b]`.
    pub(crate) fn act(&self, a: usize, lam: usize, v: &[MPoly]) -> Vec<MPoly> {
        let nvars = v.first().map_or(1, MPoly::nvars);
        let lam_p = MPoly::var(nvars, lam);
        let mut shift: Vec<MPoly> = (0..nvars).map(|k| MPoly::var(nvars, k)).collect();
        shift[0] = shift[0].add(&lam_p);
        let mut out = vec![MPoly::zero(nvars); self.rank()];
        for (g, p) in v.iter().enumerate() {
            if p.is_zero() || self.central[g] {
                continue;
            }
            let shifted = p.substitute(&shift);
            for (h, q) in self.bracket_at(a, g, nvars, &lam_p).iter().enumerate() {
                out[h].add_assign_scaled(&shifted.mul(q), &ExactScalar::one());
            }
        }
        self.normalize(&mut out);
        out
    }

    /// `[v_{ν} g_c]`, using `[Ta_ν b] = −ν[a_ν b]`.
    pub(crate) fn act_first(&self, v: &[MPoly], nu: &MPoly, c: usize) -> Vec<MPoly> {
        let nvars = nu.nvars();
        let mut images: Vec<MPoly> = (0..nvars).map(|k| MPoly::var(nvars, k)).collect();
        images[0] = nu.scale(&-ExactScalar::one());
        let mut out = vec![MPoly::zero(nvars); self.rank()];
        for (g, p) in v.iter().enumerate() {
            if p.is_zero() || self.central[g] {
                continue;
            }
            let coef = p.substitute(&images);
            for (h, q) in self.bracket_at(g, c, nvars, nu).iter().enumerate() {
                out[h].add_assign_scaled(&coef.mul(q), &ExactScalar::one());
            }
        }
        self.normalize(&mut out);
        out
    }

    /// `[a_λ b]` for `K[T]`-combinations `a`, `b` of generators, given as
    /// one-variable polynomials in `T` per generator.
    pub fn lambda_bracket(&self, a: &[MPoly], b: &[MPoly]) -> Result<LambdaPolynomial> {
        let r = self.rank();
        if a.len() != r || b.len() != r || a.iter().chain(b).any(|p| p.nvars() != 1) {
            return Err(Error::Precondition("module elements are polynomials in T per generator".into()));
        }
        self.caps.check(&a.iter().map(lift_t).collect::<Vec<_>>())?;
        self.caps.check(&b.iter().map(lift_t).collect::<Vec<_>>())?;
        let lam = MPoly::var(2, 1);
        let b2: Vec<MPoly> = b.iter().map(lift_t).collect();
        let neg_lam = [lam.scale(&-ExactScalar::one())];
        let mut out = vec![MPoly::zero(2); r];
        for (g, p) in a.iter().enumerate() {
            if p.is_zero() || self.central[g] {
                continue;
            }
            let coef = p.substitute(&neg_lam);
            for (h, q) in self.act(g, 1, &b2).iter().enumerate() {
                out[h].add_assign_scaled(&coef.mul(q), &ExactScalar::one());
            }
        }
        self.normalize(&mut out);
        self.caps.check(&out)?;
        Ok(LambdaPolynomial::from_polys(out))
    }

    /// Skew-symmetry on generator pairs and the Jacobi identity on triples.
    pub fn check_axioms(&self) -> AxiomReport {
        let r = self.rank();
        let t2 = MPoly::var(2, 0);
        let l2 = MPoly::var(2, 1);
        let flip = [t2.clone(), l2.scale(&int(-1)).sub(&t2)];
        let mut skew_failures = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let lhs = self.table[i][j].polys();
                let mut rhs: Vec<MPoly> =
                    self.table[j][i].polys().iter().map(|p| p.substitute(&flip).scale(&int(-1))).collect();
                self.normalize(&mut rhs);
                if lhs != rhs.as_slice() {
                    skew_failures.push([i, j]);
                }
            }
        }
        let lam = MPoly::var(3, 1);
        let mu = MPoly::var(3, 2);
        let nu = lam.add(&mu);
        let mut jacobi_failures = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let a = self.act(i, 1, &self.bracket_at(j, k, 3, &mu));
                    let b = self.act(j, 2, &self.bracket_at(i, k, 3, &lam));
                    let c = self.act_first(&self.bracket_at(i, j, 3, &lam), &nu, k);
                    if a.iter().zip(&b).zip(&c).any(|((a, b), c)| !a.sub(b).sub(c).is_zero()) {
                        jacobi_failures.push([i, j, k]);
                    }
                }
            }
        }
        AxiomReport { pairs_checked: r * r, triples_checked: r * r * r, skew_failures, jacobi_failures }
    }

    pub fn abelian(rank: usize) -> Self {
        let names = (0..rank).map(|i| format!("a{i}")).collect();
        LieConformalAlgebra::new(names, vec![false; rank], BTreeMap::new(), DegreeCaps::default()).expect("abelian")
    }

    /// `[L_λ L] = (T + 2λ)L + (λ³/12) C` with `C` central, so that `C`
    /// carries the central charge as a free parameter.
    pub fn virasoro() -> Self {
        Self::virasoro_with(3, frac(1, 12))
    }

    /// Virasoro-shaped table with central term `coef · λ^power C`.
    pub fn virasoro_with(power: u32, coef: ExactScalar) -> Self {
        let p = LambdaPolynomial::from_terms(2, &[(0, 1, 0, int(1)), (0, 0, 1, int(2)), (1, 0, power, coef)]).unwrap();
        let brackets = BTreeMap::from([((0, 0), p)]);
        LieConformalAlgebra::new(vec!["L".into(), "C".into()], vec![false, true], brackets, DegreeCaps::default())
            .expect("virasoro")
    }

    /// Current algebra of a Lie algebra with invariant form:
    /// `[a_λ b] = [a, b] + λ (a|b) K`, `K` central (appended last).
    pub fn current(mu: &StructureTensor, form: &[Vec<ExactScalar>]) -> Result<Self> {
        let d = mu.dim();
        if mu.arity() != 2 || form.len() != d || form.iter().any(|row| row.len() != d) {
            return Err(Error::Precondition("need a binary bracket and a square form of the same size".into()));
        }
        let mut brackets = BTreeMap::new();
        for i in 0..d {
            for j in 0..d {
                let mut terms: Vec<(usize, u32, u32, ExactScalar)> =
                    (0..d).map(|o| (o, 0, 0, mu.get(o, &[i, j]).clone())).filter(|t| !t.3.is_zero()).collect();
                if !form[i][j].is_zero() {
                    terms.push((d, 0, 1, form[i][j].clone()));
                }
                if !terms.is_empty() {
                    brackets.insert((i, j), LambdaPolynomial::from_terms(d + 1, &terms)?);
                }
            }
        }
        let mut names: Vec<String> = (0..d).map(|i| format!("e{i}")).collect();
        names.push("K".into());
        let mut central = vec![false; d];
        central.push(true);
        LieConformalAlgebra::new(names, central, brackets, DegreeCaps::default())
    }

    /// λ-constant, `T`-free table of a finite-dimensional bracket.
    pub fn from_lie_bracket(mu: &StructureTensor) -> Result<Self> {
        let d = mu.dim();
        if mu.arity() != 2 {
            return Err(Error::Precondition("need a binary bracket".into()));
        }
        let mut brackets = BTreeMap::new();
        for i in 0..d {
            for j in 0..d {
                let terms: Vec<_> =
                    (0..d).map(|o| (o, 0, 0, mu.get(o, &[i, j]).clone())).filter(|t| !t.3.is_zero()).collect();
                brackets.insert((i, j), LambdaPolynomial::from_terms(d, &terms)?);
            }
        }
        LieConformalAlgebra::new((0..d).map(|i| format!("e{i}")).collect(), vec![false; d], brackets, DegreeCaps::default())
    }

    pub fn to_document(&self) -> ConformalDocument {
        let mut brackets = Vec::new();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let p = &self.table[i][j];
                if p.is_zero() {
                    continue;
                }
                let terms = p
                    .terms()
                    .into_iter()
                    .map(|(gen, t_pow, lam_pow, c)| TermEntry { gen, t_pow, lam_pow, coef: format_rational(&c) })
                    .collect();
                brackets.push(BracketEntry { i, j, terms });
            }
        }
        ConformalDocument {
            rank: self.rank(),
            names: Some(self.names.clone()),
            central: (0..self.rank()).filter(|&i| self.central[i]).collect(),
            brackets,
        }
    }
}

fn lift_t(p: &MPoly) -> MPoly {
    p.substitute(&[MPoly::var(2, 0)])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub skew_failures: Vec<[usize; 2]>,
    pub jacobi_failures: Vec<[usize; 3]>,
}

impl AxiomReport {
    pub fn passes(&self) -> bool {
        self.skew_failures.is_empty() && self.jacobi_failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermEntry {
    pub gen: usize,
    #[serde(rename = "Tpow")]
    pub t_pow: u32,
    #[serde(rename = "lampow")]
    pub lam_pow: u32,
    pub coef: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermEntry>,
}

/// `{"rank", "names"?, "central"?, "brackets": [{"i", "j", "terms": [..]}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConformalDocument {
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub central: Vec<usize>,
    pub brackets: Vec<BracketEntry>,
}

impl ConformalDocument {
    pub fn into_algebra(self, caps: DegreeCaps) -> Result<LieConformalAlgebra> {
        let r = self.rank;
        let names = match self.names {
            Some(n) if n.len() == r => n,
            Some(_) => return Err(Error::Schema("names must list every generator".into())),
            None => (0..r).map(|i| format!("a{i}")).collect(),
        };
        let mut central = vec![false; r];
        for c in self.central {
            *central.get_mut(c).ok_or_else(|| Error::Schema(format!("central index {c} out of range")))? = true;
        }
        let mut brackets: BTreeMap<(usize, usize), LambdaPolynomial> = BTreeMap::new();
        for b in self.brackets {
            let terms = b
                .terms
                .iter()
                .map(|t| Ok((t.gen, t.t_pow, t.lam_pow, parse_rational(&t.coef)?)))
                .collect::<Result<Vec<_>>>()?;
            if brackets.insert((b.i, b.j), LambdaPolynomial::from_terms(r, &terms)?).is_some() {
                return Err(Error::Schema(format!("duplicate bracket entry ({}, {})", b.i, b.j)));
            }
        }
        LieConformalAlgebra::new(names, central, brackets, caps)
    }
}
