//! The symmetric algebra S_A(𝔤) and the symmetrisation map S: S_A(𝔤) → U_A(𝔤).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::combinat::distinct_arrangements;
use crate::memo::Memo;
use crate::uea::{Elem, Mono, Uea};
use crate::{Poly, Rational};

/// Commutative polynomials in the basis symbols χᵢ with coefficients in A.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymElem {
    nvars: usize,
    terms: BTreeMap<Mono, Poly>,
}

impl SymElem {
    pub fn zero(nvars: usize) -> Self {
        SymElem { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::term(Poly::one(nvars), Vec::new())
    }

    pub fn term(p: Poly, mut m: Mono) -> Self {
        m.sort_unstable();
        let mut s = SymElem::zero(p.nvars());
        s.add_term(m, p);
        s
    }

    /// Σ cₖ χₖ.
    pub fn linear(v: &[Poly], nvars: usize) -> Self {
        let mut s = SymElem::zero(nvars);
        for (k, c) in v.iter().enumerate() {
            s.add_term(vec![k], c.clone());
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Poly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn add_term(&mut self, m: Mono, p: Poly) {
        if p.is_zero() {
            return;
        }
        let c = self.terms.entry(m.clone()).or_insert_with(|| Poly::zero(p.nvars()));
        *c += &p;
        if c.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &SymElem) -> SymElem {
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.add_term(m.clone(), p.clone());
        }
        out
    }

    pub fn mul(&self, other: &SymElem) -> SymElem {
        let mut out = SymElem::zero(self.nvars);
        for (m, p) in &self.terms {
            for (n, q) in &other.terms {
                let mut k = m.clone();
                k.extend_from_slice(n);
                k.sort_unstable();
                out.add_term(k, p * q);
            }
        }
        out
    }

    /// Reads a sorted-monomial element as its symbol in S_A(𝔤).
    pub fn from_symbols(u: &Elem) -> SymElem {
        let mut out = SymElem::zero(u.nvars());
        for (m, p) in u.terms() {
            out.add_term(m.clone(), p.clone());
        }
        out
    }

    /// Algebra map S(f) induced by a linear map on generators.
    pub fn map_linear(&self, images: &[SymElem]) -> SymElem {
        let mut out = SymElem::zero(self.nvars);
        for (m, p) in &self.terms {
            let prod = m.iter().fold(SymElem::one(self.nvars), |acc, &i| acc.mul(&images[i]));
            for (k, c) in prod.terms {
                out.add_term(k, p * &c);
            }
        }
        out
    }
}

/// S and S⁻¹ for one algebra, memoised per monomial.
pub struct Symmetrization {
    uea: Arc<Uea>,
    memo: Memo<Mono, Elem>,
}

impl Symmetrization {
    pub fn new(uea: Arc<Uea>) -> Self {
        Symmetrization { uea, memo: Memo::new() }
    }

    pub fn uea(&self) -> &Arc<Uea> {
        &self.uea
    }

    /// S(χ_{j₁}⋯χ_{j_k}) = (1/k!) Σ_σ e_{j_σ(1)}⋯e_{j_σ(k)}, summed over
    /// distinct rearrangements with equal weight.
    pub fn apply_mono(&self, m: &Mono) -> Elem {
        if m.len() <= 1 {
            return self.uea.mono(m);
        }
        if let Some(v) = self.memo.get(m) {
            return v;
        }
        let words = distinct_arrangements(m);
        let w = Rational::new(1.into(), (words.len() as i64).into());
        let mut acc = self.uea.zero();
        for word in &words {
            acc = &acc + &self.uea.word(word);
        }
        let out = acc.left_scale(&Poly::constant(self.uea.nvars(), w));
        self.memo.put(m.clone(), out)
    }

    pub fn apply(&self, s: &SymElem) -> Elem {
        let mut out = self.uea.zero();
        for (m, p) in s.terms() {
            out.add_scaled(&self.apply_mono(m), p);
        }
        out
    }

    /// S⁻¹ by filtration descent: S(m) = m + lower terms.
    pub fn inverse(&self, u: &Elem) -> SymElem {
        let mut rest = u.clone();
        let mut out = SymElem::zero(self.uea.nvars());
        while let Some(d) = rest.degree() {
            let top = SymElem::from_symbols(&rest.homogeneous(d));
            rest = &rest - &self.apply(&top);
            out = out.add(&top);
        }
        out
    }
}
