//! Shuffle coproduct, counit maps and the translation map u ↦ u₊ ⊗ u₋.

use std::collections::BTreeMap;

use super::{Elem, Mono, Tensor, TensorMode, Uea};
use crate::combinat::{subsequence_splits, subsequence_triples};
use crate::error::Result;
use crate::Poly;

/// Δ(p·m) = Σ_S m_S ⊗ p·m_{Sᶜ}: the sum over (t, n−t)-shuffles, one term per
/// subset of positions. Subsequences of sorted words stay sorted.
pub fn coproduct(u: &Elem) -> Tensor {
    let mut out = Tensor::zero(TensorMode::OverA, u.nvars());
    for (m, p) in u.terms() {
        for (a, b) in subsequence_splits(m) {
            out.add_term(a, b, p.clone());
        }
    }
    out
}

/// Three-slot tensor balanced over A in both positions; coefficients sit on
/// the rightmost slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    nvars: usize,
    terms: BTreeMap<[Mono; 3], Poly>,
}

impl Tensor3 {
    pub fn zero(nvars: usize) -> Self {
        Tensor3 { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, key: [Mono; 3], p: Poly) {
        if p.is_zero() {
            return;
        }
        let c = self.terms.entry(key.clone()).or_insert_with(|| Poly::zero(p.nvars()));
        *c += &p;
        if c.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Mono; 3], &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Δ²(u) computed directly from position triples.
pub fn iterated_coproduct(u: &Elem) -> Tensor3 {
    let mut out = Tensor3::zero(u.nvars());
    for (m, p) in u.terms() {
        for parts in subsequence_triples(m) {
            out.add_term(parts, p.clone());
        }
    }
    out
}

/// (Δ ⊗ id) of an A-balanced tensor.
pub fn delta_left(t: &Tensor) -> Result<Tensor3> {
    let t = t.canonicalize(TensorMode::OverA, None)?;
    let mut out = Tensor3::zero(t.nvars());
    for ((m1, m2), p) in t.terms() {
        for (a, b) in subsequence_splits(m1) {
            out.add_term([a, b, m2.clone()], p.clone());
        }
    }
    Ok(out)
}

/// (id ⊗ Δ) of an A-balanced tensor.
pub fn delta_right(t: &Tensor) -> Result<Tensor3> {
    let t = t.canonicalize(TensorMode::OverA, None)?;
    let mut out = Tensor3::zero(t.nvars());
    for ((m1, m2), p) in t.terms() {
        for (a, b) in subsequence_splits(m2) {
            out.add_term([m1.clone(), a, b], p.clone());
        }
    }
    Ok(out)
}

/// Σ ε(u₍₁₎)·u₍₂₎.
pub fn counit_left(t: &Tensor) -> Result<Elem> {
    let t = t.canonicalize(TensorMode::OverA, None)?;
    let mut out = Elem::zero(t.nvars());
    for ((m1, m2), p) in t.terms() {
        if m1.is_empty() {
            out.add_term(m2.clone(), p.clone());
        }
    }
    Ok(out)
}

/// Σ ε(u₍₂₎)·u₍₁₎, with the base acting by left multiplication.
pub fn counit_right(t: &Tensor) -> Result<Elem> {
    let t = t.canonicalize(TensorMode::OverA, None)?;
    let mut out = Elem::zero(t.nvars());
    for ((m1, m2), p) in t.terms() {
        if m2.is_empty() {
            out.add_term(m1.clone(), p.clone());
        }
    }
    Ok(out)
}

pub fn flip(t: &Tensor) -> Result<Tensor> {
    t.canonicalize(TensorMode::OverA, None)?.flipped()
}

/// u₊ ⊗ u₋ as a plain representative.
///
/// For a PBW monomial m the generator rule X ↦ X⊗1 − 1⊗X and the reversed
/// product on the second slot give Σ_S (−1)^{|Sᶜ|} m_S ⊗ rev(m_{Sᶜ}).
/// Base coefficients stay on the left slot.
pub fn translation(uea: &Uea, u: &Elem) -> Tensor {
    let n = uea.nvars();
    let mut out = Tensor::zero(TensorMode::Plain, n);
    for (m, p) in u.terms() {
        let pe = p.embed(2 * n, 0);
        for ((a, b), c) in translation_mono(uea, m).terms() {
            out.add_term(a.clone(), b.clone(), &pe * c);
        }
    }
    out
}

fn translation_mono(uea: &Uea, m: &Mono) -> Tensor {
    if let Some(t) = uea.trans.get(m) {
        return t;
    }
    let n = uea.nvars();
    let mut out = Tensor::zero(TensorMode::Plain, n);
    for (a, b) in subsequence_splits(m) {
        let sign = if b.len() % 2 == 0 { 1 } else { -1 };
        let rev: Vec<usize> = b.iter().rev().copied().collect();
        for (k, r) in uea.word(&rev).terms() {
            out.add_term(a.clone(), k.clone(), r.embed(2 * n, n).scale(&crate::Rational::from_integer(sign.into())));
        }
    }
    uea.trans.put(m.clone(), out)
}

impl Uea {
    /// Takeuchi product of A-balanced tensors, entrywise multiplication.
    pub fn tensor_mul(&self, s: &Tensor, t: &Tensor) -> Result<Tensor> {
        let s = s.canonicalize(TensorMode::OverA, None)?;
        let t = t.canonicalize(TensorMode::OverA, None)?;
        let n = self.nvars();
        let mut out = Tensor::zero(TensorMode::OverA, n);
        for ((m1, m2), p) in s.terms() {
            for ((n1, n2), q) in t.terms() {
                let left = self.mono_times_mono(m1, n1);
                let right = self.mul(&Elem::term(p.clone(), m2.clone()), &Elem::term(q.clone(), n2.clone()));
                for (k, r) in left.terms() {
                    for (k2, r2) in right.left_scale(r).terms() {
                        out.add_term(k.clone(), k2.clone(), r2.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Σ u₍₁₎·u₍₂₎ for any two-slot representative.
    pub fn multiply_out(&self, t: &Tensor) -> Elem {
        let mut out = self.zero();
        for (l, r) in t.legs() {
            out = &out + &self.mul(&l, &r);
        }
        out
    }

    /// Σ ε(u₋)·u₊, the base element acting on the left.
    pub fn counit_weighted_plus(&self, t: &Tensor) -> Elem {
        let mut out = self.zero();
        for (l, r) in t.legs() {
            out = &out + &l.left_scale(&r.counit());
        }
        out
    }

    /// Σ u₊₍₁₎ ⊗ u₊₍₂₎·u₋, reduced in the A-balanced tensor.
    pub fn beta_after_translation(&self, t: &Tensor) -> Tensor {
        let n = self.nvars();
        let mut out = Tensor::zero(TensorMode::OverA, n);
        for (l, r) in t.legs() {
            for ((a, b), p) in coproduct(&l).terms() {
                let right = self.mul(&Elem::term(p.clone(), b.clone()), &r);
                for (k, c) in right.terms() {
                    out.add_term(a.clone(), k.clone(), c.clone());
                }
            }
        }
        out
    }

    /// Σ u₍₁₎₊ ⊗ u₍₁₎₋·u₍₂₎, reduced in the A^op-balanced tensor.
    pub fn translation_after_coproduct(&self, u: &Elem) -> Result<Tensor> {
        let n = self.nvars();
        let mut plain = Tensor::zero(TensorMode::Plain, n);
        for ((m1, m2), p) in coproduct(u).terms() {
            let second = Elem::term(p.clone(), m2.clone());
            for (l, r) in translation(self, &Elem::mono(n, m1.clone())).legs() {
                let right = self.mul(&r, &second);
                for (lm, lp) in l.terms() {
                    for (k, c) in right.terms() {
                        plain.add_term(lm.clone(), k.clone(), &lp.embed(2 * n, 0) * &c.embed(2 * n, n));
                    }
                }
            }
        }
        plain.canonicalize(TensorMode::OverAop, Some(self))
    }
}
