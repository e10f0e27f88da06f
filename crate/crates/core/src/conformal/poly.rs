use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::linalg::{format_rational, ExactScalar};

/// Sparse polynomial with rational coefficients in `nvars` commuting
/// variables, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, ExactScalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: ExactScalar) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, ExactScalar::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: ExactScalar) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, ExactScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> ExactScalar {
        self.terms.get(exps).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn add_assign_scaled(&mut self, other: &MPoly, c: &ExactScalar) {
        assert_eq!(self.nvars, other.nvars);
        if c.is_zero() {
            return;
        }
        for (e, v) in &other.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(ExactScalar::zero);
            *entry += v * c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &ExactScalar::one());
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-ExactScalar::one());
        out
    }

    pub fn scale(&self, c: &ExactScalar) -> MPoly {
        let mut out = Self::zero(self.nvars);
        out.add_assign_scaled(self, c);
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e.clone()).or_insert_with(ExactScalar::zero);
                *entry += c1 * c2;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    /// Replaces variable `i` by `images[i]`; all images live in one ring.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, MPoly::nvars);
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::constant(target, ExactScalar::one()), p.clone()]).collect();
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(target, c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let k = k as usize;
                while powers[v].len() <= k {
                    let next = powers[v].last().unwrap().mul(&images[v]);
                    powers[v].push(next);
                }
                term = term.mul(&powers[v][k]);
            }
            out.add_assign_scaled(&term, &ExactScalar::one());
        }
        out
    }

    /// Keeps the terms whose exponent vector passes `keep`.
    pub fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect() }
    }

    /// Maximum of `f` over the exponent vectors, 0 for the zero polynomial.
    pub fn max_over(&self, f: impl Fn(&[u32]) -> u32) -> u32 {
        self.terms.keys().map(|e| f(e)).max().unwrap_or(0)
    }

    pub fn render(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { names[v].to_string() } else { format!("{}^{k}", names[v]) })
                .collect();
            let (neg, abs) = if c < &ExactScalar::zero() { (true, -c) } else { (false, c.clone()) };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = format_rational(&abs);
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&coef),
                (false, true) => out.push_str(&mono.join("*")),
                (false, false) => out.push_str(&format!("{coef}*{}", mono.join("*"))),
            }
        }
        out
    }
}
