//! The crossed product B #_σ V, the isomorphism Φ: B #_σ V → U_A(𝔤) and its
//! inverse Ψ.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::cocycle::{counit_plus_minus, HopfCocycle};
use crate::combinat::monomials_up_to;
use crate::error::{Error, Result};
use crate::uea::{coproduct, iterated_coproduct, join_signed, mono_string, signed_term, Elem, Mono, Tensor, TensorMode};
use crate::Poly;

/// Σ p·(b # v) with b an 𝔫-monomial (as a monomial of 𝔤) and v a monomial
/// of 𝔥; p·b # v = b # p·v since A is central in B.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CrossedElement {
    nvars: usize,
    terms: BTreeMap<(Mono, Mono), Poly>,
}

impl CrossedElement {
    pub fn zero(nvars: usize) -> Self {
        CrossedElement { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::term(Poly::one(nvars), Vec::new(), Vec::new())
    }

    pub fn term(p: Poly, b: Mono, v: Mono) -> Self {
        let mut out = CrossedElement::zero(p.nvars());
        out.add_term(b, v, p);
        out
    }

    /// b # v for arbitrary elements b ∈ B and v ∈ V.
    pub fn from_parts(b: &Elem, v: &Elem) -> Self {
        let mut out = CrossedElement::zero(b.nvars());
        for (k, p) in b.terms() {
            for (m, q) in v.terms() {
                out.add_term(k.clone(), m.clone(), p * q);
            }
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Mono, Mono), &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|(b, v)| b.len() + v.len()).max()
    }

    pub fn coeff(&self, b: &[usize], v: &[usize]) -> Poly {
        self.terms.get(&(b.to_vec(), v.to_vec())).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn add_term(&mut self, b: Mono, v: Mono, p: Poly) {
        if p.is_zero() {
            return;
        }
        let key = (b, v);
        let c = self.terms.entry(key.clone()).or_insert_with(|| Poly::zero(p.nvars()));
        *c += &p;
        if c.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &CrossedElement) -> CrossedElement {
        let mut out = self.clone();
        for ((b, v), p) in &other.terms {
            out.add_term(b.clone(), v.clone(), p.clone());
        }
        out
    }

    pub fn sub(&self, other: &CrossedElement) -> CrossedElement {
        self.add(&other.scale(&-Poly::one(self.nvars)))
    }

    pub fn scale(&self, c: &Poly) -> CrossedElement {
        let mut out = CrossedElement::zero(self.nvars);
        for ((b, v), p) in &self.terms {
            out.add_term(b.clone(), v.clone(), c * p);
        }
        out
    }

    /// Prints as `b # v` terms, e.g. `C # 1 + 1 # X*Y`.
    pub fn to_string_with(&self, b_labels: &[String], v_labels: &[String], var_names: &[String]) -> String {
        let leg = |m: &Mono, l: &[String]| if m.is_empty() { "1".to_string() } else { mono_string(m, l) };
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|a, b| {
            let (la, lb) = (a.0 .0.len() + a.0 .1.len(), b.0 .0.len() + b.0 .1.len());
            lb.cmp(&la).then_with(|| a.0.cmp(b.0))
        });
        let parts = keys
            .into_iter()
            .map(|((b, v), c)| {
                let body = format!("{} # {}", leg(b, b_labels), leg(v, v_labels));
                signed_term(c, &body, var_names, false)
            })
            .collect();
        join_signed(parts)
    }
}

/// B #_σ V with (b#u)(b′#v) = b(u₍₁₎⇀b′)σ(u₍₂₎, v₍₁₎) # u₍₃₎v₍₂₎.
pub struct CrossedProduct {
    cocycle: Arc<HopfCocycle>,
}

impl CrossedProduct {
    pub fn new(cocycle: Arc<HopfCocycle>) -> Self {
        CrossedProduct { cocycle }
    }

    pub fn cocycle(&self) -> &Arc<HopfCocycle> {
        &self.cocycle
    }

    pub fn nvars(&self) -> usize {
        self.cocycle.g().nvars()
    }

    pub fn one(&self) -> CrossedElement {
        CrossedElement::one(self.nvars())
    }

    pub fn mul(&self, x: &CrossedElement, y: &CrossedElement) -> Result<CrossedElement> {
        let c = &self.cocycle;
        let (g, h) = (c.g(), c.v());
        let mut out = CrossedElement::zero(self.nvars());
        for ((b, u), p) in x.terms() {
            let be = Elem::term(p.clone(), b.clone());
            for ((b2, v), q) in y.terms() {
                let be2 = Elem::term(q.clone(), b2.clone());
                for ([u1, u2, u3], mu) in iterated_coproduct(&h.mono(u)).terms() {
                    let acted = g.mul(&be, &c.act(&h.mono(u1), &be2)?);
                    for ((v1, v2), nu) in coproduct(&h.mono(v)).terms() {
                        let left = g.mul(&acted, &c.sigma_mono(u2, v1)?);
                        let right = h.mono_times_mono(u3, v2);
                        out = out.add(&CrossedElement::from_parts(&left, &right).scale(&(mu * nu)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Φ(b # v) = b·Γ(v).
    pub fn phi(&self, x: &CrossedElement) -> Elem {
        let c = &self.cocycle;
        let g = c.g();
        let mut out = g.zero();
        for ((b, v), p) in x.terms() {
            out = &out + &g.mul(&Elem::term(p.clone(), b.clone()), &c.section().apply_mono(v));
        }
        out
    }

    /// Ψ(u) = ε(Γ(Π(u₍₂₎))₊)·u₍₁₎·Γ(Π(u₍₂₎))₋ # Π(u₍₃₎).
    pub fn psi(&self, u: &Elem) -> Result<CrossedElement> {
        let c = &self.cocycle;
        let (g, ctx) = (c.g(), c.ctx());
        let pi = ctx.projection();
        let mut out = CrossedElement::zero(self.nvars());
        for ([t1, t2, t3], p) in iterated_coproduct(u).terms() {
            let y = c.section().apply(&pi.apply_mono(t2));
            let b = counit_plus_minus(g, &g.mono(t1), &y);
            out = out.add(&CrossedElement::from_parts(&b, &pi.apply(&Elem::term(p.clone(), t3.clone()))));
        }
        // Single Δ² terms leave U(𝔫); only the sum must land there.
        if out.terms().any(|((b, _), _)| !ctx.is_n_mono(b)) {
            return Err(Error::NotInKernel("Ψ produced a B-leg outside U(𝔫)".into()));
        }
        Ok(out)
    }

    /// (Φ ⊗ id) of the crossed-product coaction b#v ↦ (b#v₍₁₎) ⊗ v₍₂₎.
    pub fn coaction_through_phi(&self, x: &CrossedElement) -> Tensor {
        let mut out = Tensor::zero(TensorMode::OverA, self.nvars());
        for ((b, v), p) in x.terms() {
            for ((v1, v2), mu) in coproduct(&self.cocycle.v().mono(v)).terms() {
                let left = self.phi(&CrossedElement::term(p * mu, b.clone(), v1.clone()));
                for (k, e) in left.terms() {
                    out.add_term(k.clone(), v2.clone(), e.clone());
                }
            }
        }
        out
    }

    /// First basis element of degree ≤ k where δ_U∘Φ ≠ (Φ⊗id)∘δ.
    pub fn colinearity_witness(&self, k: usize) -> Option<CrossedElement> {
        let ctx = self.cocycle.ctx();
        self.basis(k)
            .into_iter()
            .find(|x| ctx.coaction(&self.phi(x)) != self.coaction_through_phi(x))
    }

    /// b # v over 𝔫-monomials b and 𝔥-monomials v with |b| + |v| ≤ k.
    pub fn basis(&self, k: usize) -> Vec<CrossedElement> {
        let ctx = self.cocycle.ctx();
        let n = self.nvars();
        let mut out = Vec::new();
        for b in ctx.n_monomials(k) {
            for v in monomials_up_to(self.cocycle.v().rank(), k - b.len()) {
                out.push(CrossedElement::term(Poly::one(n), b.clone(), v));
            }
        }
        out
    }
}
