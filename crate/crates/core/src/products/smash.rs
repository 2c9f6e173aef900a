//! Smash products R # U(𝔥) for a Lie algebra 𝔥 over ℚ acting on R = ℚ[x₁,…,x_N]
//! by derivations, with the bialgebroid structure over R and the comparison
//! with U_R(R ⋊ 𝔥).
//!
//! Elements are [`Elem`]s whose coefficients live in R and whose monomials are
//! PBW monomials of 𝔥: Σ r ⊗ m.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::uea::{coproduct, translation, Elem, Mono, Uea};
use crate::{Derivation, Poly};

/// Two-leg tensors over R keyed by PBW monomials. In the symmetric tensor
/// (c⊗m₁)⊗(1⊗m₂) = (1⊗m₁)⊗(c⊗m₂); in the twisted one the coefficient sits
/// on the left leg and the right leg is coefficient-free.
pub type SmashTensor = BTreeMap<(Mono, Mono), Poly>;

fn add_to(t: &mut SmashTensor, key: (Mono, Mono), p: Poly) {
    if p.is_zero() {
        return;
    }
    let c = t.entry(key.clone()).or_insert_with(|| Poly::zero(p.nvars()));
    *c += &p;
    if c.is_zero() {
        t.remove(&key);
    }
}

pub struct SmashProduct {
    h: Arc<Uea>,
    r_names: Vec<String>,
    action: Vec<Derivation>,
}

impl SmashProduct {
    /// Fails unless the action is a Lie algebra morphism 𝔥 → der(R), which
    /// makes R a commutative U(𝔥)-module algebra.
    pub fn new(h: Arc<Uea>, r_names: &[&str], action: Vec<Derivation>) -> Result<Self> {
        if h.nvars() != 0 {
            return Err(Error::Precondition("𝔥 must be a Lie algebra over ℚ".into()));
        }
        let n = r_names.len();
        if action.len() != h.rank() || action.iter().any(|d| d.nvars() != n) {
            return Err(Error::Shape("one derivation of R per basis vector of 𝔥".into()));
        }
        let lra = h.lra();
        for i in 0..h.rank() {
            for j in (i + 1)..h.rank() {
                let mut lhs = Derivation::zero(n);
                for (c, d) in lra.bracket_coeffs(i, j).iter().zip(&action) {
                    lhs = lhs.add(&d.scale(&c.embed(n, 0)));
                }
                if lhs != action[i].bracket(&action[j])? {
                    return Err(Error::Precondition(format!(
                        "R is not a module algebra: the action fails on [{}, {}]",
                        lra.labels()[i],
                        lra.labels()[j]
                    )));
                }
            }
        }
        Ok(SmashProduct { h, r_names: r_names.iter().map(|s| s.to_string()).collect(), action })
    }

    pub fn h(&self) -> &Arc<Uea> {
        &self.h
    }

    pub fn r_names(&self) -> &[String] {
        &self.r_names
    }

    pub fn r_nvars(&self) -> usize {
        self.r_names.len()
    }

    pub fn action(&self) -> &[Derivation] {
        &self.action
    }

    /// m · r for a PBW monomial m of 𝔥.
    pub fn act_mono(&self, m: &[usize], r: &Poly) -> Poly {
        m.iter().rev().fold(r.clone(), |acc, &i| self.action[i].apply(&acc))
    }

    pub fn act(&self, u: &Elem, r: &Poly) -> Poly {
        let n = self.r_nvars();
        let mut out = Poly::zero(n);
        for (m, c) in u.terms() {
            out += &self.act_mono(m, r).scale(&c.constant_term());
        }
        out
    }

    pub fn one(&self) -> Elem {
        Elem::one(self.r_nvars())
    }

    /// (r ⊗ u)(s ⊗ v) = r(u₍₁₎·s) ⊗ u₍₂₎v.
    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut out = Elem::zero(self.r_nvars());
        for (m, r) in x.terms() {
            for ((m1, m2), mult) in coproduct(&self.h.mono(m)).terms() {
                let k = mult.constant_term();
                for (n, s) in y.terms() {
                    let coeff = (r * &self.act_mono(m1, s)).scale(&k);
                    for (w, c) in self.h.mono_times_mono(m2, n).terms() {
                        out.add_term(w.clone(), coeff.scale(&c.constant_term()));
                    }
                }
            }
        }
        out
    }

    /// ε′(r ⊗ u) = r ε(u).
    pub fn counit(&self, x: &Elem) -> Poly {
        x.counit()
    }

    /// Δ′ = R ⊗ Δ, read in the symmetric tensor over R.
    pub fn coproduct(&self, x: &Elem) -> SmashTensor {
        coproduct(x).terms().map(|(k, p)| (k.clone(), p.clone())).collect()
    }

    /// Takeuchi product x₍₁₎y₍₁₎ ⊗ x₍₂₎y₍₂₎ in the symmetric tensor.
    pub fn tensor_mul(&self, s: &SmashTensor, t: &SmashTensor) -> SmashTensor {
        let n = self.r_nvars();
        let mut out = SmashTensor::new();
        for ((m1, m2), p) in s {
            for ((n1, n2), q) in t {
                let left = self.mul(&Elem::term(p.clone(), m1.clone()), &Elem::term(q.clone(), n1.clone()));
                let right = self.mul(&Elem::mono(n, m2.clone()), &Elem::mono(n, n2.clone()));
                for (k1, c1) in left.terms() {
                    for (k2, c2) in right.terms() {
                        add_to(&mut out, (k1.clone(), k2.clone()), c1 * c2);
                    }
                }
            }
        }
        out
    }

    /// Canonical twisted-tensor form of (r⊗u)⊗(s⊗v) = Σ (r(u₍₁₎·s)⊗u₍₂₎)⊗(1⊗v).
    pub fn twisted_canonical(&self, r: &Poly, u: &Mono, s: &Poly, v: &Mono) -> SmashTensor {
        let mut out = SmashTensor::new();
        for ((u1, u2), mult) in coproduct(&self.h.mono(u)).terms() {
            let c = (r * &self.act_mono(u1, s)).scale(&mult.constant_term());
            add_to(&mut out, (u2.clone(), v.clone()), c);
        }
        out
    }

    /// β̃((r⊗u)⊗(s⊗v)) = (r⊗u₍₁₎)⊗((u₍₂₎·s)⊗u₍₃₎v), in the symmetric tensor.
    pub fn beta_general(&self, r: &Poly, u: &Mono, s: &Poly, v: &Mono) -> SmashTensor {
        let mut out = SmashTensor::new();
        for ((u1, rest), mult) in coproduct(&self.h.mono(u)).terms() {
            for ((u2, u3), mult2) in coproduct(&self.h.mono(rest)).terms() {
                let c = (r * &self.act_mono(u2, s)).scale(&(mult * mult2).constant_term());
                for (w, k) in self.h.mono_times_mono(u3, v).terms() {
                    add_to(&mut out, (u1.clone(), w.clone()), c.scale(&k.constant_term()));
                }
            }
        }
        out
    }

    /// β̃ on a twisted tensor in canonical form.
    pub fn beta(&self, t: &SmashTensor) -> SmashTensor {
        let mut out = SmashTensor::new();
        for ((u, v), c) in t {
            for (k, p) in self.beta_general(c, u, &Poly::one(self.r_nvars()), v) {
                add_to(&mut out, k, p);
            }
        }
        out
    }

    /// β̃⁻¹((r⊗u)⊗(s⊗v)) = (rs⊗u₊)⊗(1⊗u₋v) on a symmetric tensor.
    pub fn beta_inv(&self, t: &SmashTensor) -> SmashTensor {
        let mut out = SmashTensor::new();
        for ((u, v), c) in t {
            let tr = translation(&self.h, &self.h.mono(u));
            for (l, r) in tr.legs() {
                let right = self.h.mul(&r, &self.h.mono(v));
                for (lm, lc) in l.terms() {
                    for (w, k) in right.terms() {
                        let coeff = c.scale(&(lc * k).constant_term());
                        add_to(&mut out, (lm.clone(), w.clone()), coeff);
                    }
                }
            }
        }
        out
    }

    /// First pair of basis elements where U_R(R ⋊ 𝔥) and R # U(𝔥) multiply
    /// differently; both sides are read in the same normal form.
    pub fn iso_witness(&self, t: &Uea, xs: &[Elem]) -> Option<String> {
        for x in xs {
            for y in xs {
                if t.mul(x, y) != self.mul(x, y) {
                    let show = |e: &Elem| crate::uea::elem_string(e, self.h.lra().labels(), &self.r_names);
                    return Some(format!("({}) * ({})", show(x), show(y)));
                }
            }
        }
        None
    }
}
