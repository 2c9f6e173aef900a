//! Two-slot tensors over U_A(𝔤).
//!
//! A term (m₁, m₂) ↦ P is read according to the mode:
//! * `OverA`, `OverAop`: m₁ ⊗ P·m₂ with P ∈ A (all coefficients on the right slot);
//! * `Plain`: P ∈ ℚ[x, x′] in 2N variables, Σ_β P_β(x)·m₁ ⊗ x^β·m₂.
//!
//! `OverA` balances a·u ⊗ v = u ⊗ a·v. `OverAop` balances u·a ⊗ v = u ⊗ a·v,
//! so its canonical form needs the right-coefficient form of the left slot.

use std::collections::BTreeMap;

use super::{Elem, Mono, Uea};
use crate::error::{Error, Result};
use crate::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TensorMode {
    OverA,
    OverAop,
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    mode: TensorMode,
    nvars: usize,
    terms: BTreeMap<(Mono, Mono), Poly>,
}

impl Tensor {
    pub fn zero(mode: TensorMode, nvars: usize) -> Self {
        Tensor { mode, nvars, terms: BTreeMap::new() }
    }

    pub fn mode(&self) -> TensorMode {
        self.mode
    }

    /// N, the number of base variables (coefficients of `Plain` use 2N).
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeff_nvars(&self) -> usize {
        match self.mode {
            TensorMode::Plain => 2 * self.nvars,
            _ => self.nvars,
        }
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

    pub fn add_term(&mut self, m1: Mono, m2: Mono, p: Poly) {
        assert_eq!(p.nvars(), self.coeff_nvars(), "tensor coefficient arity");
        if p.is_zero() {
            return;
        }
        let key = (m1, m2);
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += &p;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, p);
            }
        }
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        if self.mode != other.mode || self.nvars != other.nvars {
            return Err(Error::Shape("adding tensors of different modes".into()));
        }
        let mut out = self.clone();
        for ((a, b), p) in &other.terms {
            out.add_term(a.clone(), b.clone(), p.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.add(&other.scale(&-Poly::one(other.coeff_nvars())))
    }

    /// Multiplies every coefficient by a polynomial in the coefficient ring.
    pub fn scale(&self, c: &Poly) -> Tensor {
        let mut out = Tensor::zero(self.mode, self.nvars);
        for ((a, b), p) in &self.terms {
            out.add_term(a.clone(), b.clone(), c * p);
        }
        out
    }

    /// u ⊗ v in the requested mode; `OverAop` needs the algebra.
    pub fn from_pair(u: &Elem, v: &Elem, mode: TensorMode, uea: Option<&Uea>) -> Result<Tensor> {
        let n = u.nvars();
        let mut plain = Tensor::zero(TensorMode::Plain, n);
        for (m1, p) in u.terms() {
            for (m2, q) in v.terms() {
                plain.add_term(m1.clone(), m2.clone(), &p.embed(2 * n, 0) * &q.embed(2 * n, n));
            }
        }
        plain.canonicalize(mode, uea)
    }

    /// Decomposes into pairs (left element, right element) of single terms.
    pub fn legs(&self) -> Vec<(Elem, Elem)> {
        let n = self.nvars;
        let mut out = Vec::new();
        for ((m1, m2), p) in &self.terms {
            match self.mode {
                TensorMode::Plain => {
                    for (beta, pb) in p.split_at(n) {
                        let xb = Poly::monomial(n, beta, crate::Rational::from_integer(1.into()));
                        out.push((Elem::term(pb, m1.clone()), Elem::term(xb, m2.clone())));
                    }
                }
                _ => out.push((Elem::mono(n, m1.clone()), Elem::term(p.clone(), m2.clone()))),
            }
        }
        out
    }

    fn to_plain(&self) -> Tensor {
        if self.mode == TensorMode::Plain {
            return self.clone();
        }
        let n = self.nvars;
        let mut out = Tensor::zero(TensorMode::Plain, n);
        for ((a, b), p) in &self.terms {
            out.add_term(a.clone(), b.clone(), p.embed(2 * n, n));
        }
        out
    }

    /// Canonical form in `mode`. Converting into `OverAop` needs the algebra;
    /// `OverA → OverAop` is refused because the two quotients do not match.
    pub fn canonicalize(&self, mode: TensorMode, uea: Option<&Uea>) -> Result<Tensor> {
        use TensorMode::*;
        let n = self.nvars;
        match (self.mode, mode) {
            (a, b) if a == b => Ok(self.clone()),
            (_, Plain) => Ok(self.to_plain()),
            (Plain, OverA) => {
                let diag: Vec<Poly> = (0..2 * n).map(|i| Poly::var(n, i % n)).collect();
                let mut out = Tensor::zero(OverA, n);
                for ((a, b), p) in &self.terms {
                    out.add_term(a.clone(), b.clone(), p.substitute(&diag, n));
                }
                Ok(out)
            }
            (Plain, OverAop) => {
                let uea = uea.ok_or_else(|| {
                    Error::Unsupported("canonicalising into the A^op tensor needs the algebra".into())
                })?;
                let mut out = Tensor::zero(OverAop, n);
                for ((m1, m2), p) in &self.terms {
                    for (beta, pb) in p.split_at(n) {
                        let xb = Poly::monomial(n, beta, crate::Rational::from_integer(1.into()));
                        for (k, r) in uea.right_coefficient_form(&Elem::term(pb, m1.clone())) {
                            out.add_term(k, m2.clone(), &r * &xb);
                        }
                    }
                }
                Ok(out)
            }
            (OverAop, OverA) => self.to_plain().canonicalize(OverA, uea),
            (OverA, OverAop) => Err(Error::Unsupported(
                "an A-balanced tensor has no well-defined A^op-balanced image".into(),
            )),
            _ => unreachable!(),
        }
    }

    /// Exchanges the slots of an `OverA` tensor: m₁ ⊗ p·m₂ ↦ m₂ ⊗ p·m₁.
    pub fn flipped(&self) -> Result<Tensor> {
        if self.mode != TensorMode::OverA {
            return Err(Error::Unsupported("flip is defined on A-balanced tensors".into()));
        }
        let mut out = Tensor::zero(TensorMode::OverA, self.nvars);
        for ((a, b), p) in &self.terms {
            out.add_term(b.clone(), a.clone(), p.clone());
        }
        Ok(out)
    }

    /// Applies `f` to the right leg: m₁ ⊗ f(p·m₂), result `OverA`.
    pub fn map_right(&self, f: impl Fn(&Elem) -> Elem) -> Result<Tensor> {
        let n = self.nvars;
        let src = self.canonicalize(TensorMode::OverA, None)?;
        let mut out = Tensor::zero(TensorMode::OverA, n);
        for ((a, b), p) in &src.terms {
            for (k, r) in f(&Elem::term(p.clone(), b.clone())).terms() {
                out.add_term(a.clone(), k.clone(), r.clone());
            }
        }
        Ok(out)
    }

    /// Applies algebra maps to each leg of an `OverA` tensor; the left map's
    /// coefficients are moved across the tensor sign.
    pub fn map_both(&self, f: impl Fn(&Elem) -> Elem, g: impl Fn(&Elem) -> Elem) -> Result<Tensor> {
        let n = self.nvars;
        let src = self.canonicalize(TensorMode::OverA, None)?;
        let mut out = Tensor::zero(TensorMode::OverA, n);
        for ((a, b), p) in &src.terms {
            let left = f(&Elem::mono(n, a.clone()));
            let right = g(&Elem::term(p.clone(), b.clone()));
            for (k1, c1) in left.terms() {
                for (k2, c2) in right.terms() {
                    out.add_term(k1.clone(), k2.clone(), c1 * c2);
                }
            }
        }
        Ok(out)
    }
}
