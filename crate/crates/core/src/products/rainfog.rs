//! R ×_τ U(𝔥) for R = ℚ[z₁,…,z_r] = U(𝔫) with 𝔫 abelian, and its comparison
//! with the crossed product U(𝔫) #_σ U(𝔥) built from a section of the
//! extension 𝔫 ⋊_τ 𝔥 → 𝔥.

use std::sync::Arc;

use super::cocycle::HopfCocycle;
use super::crossed::{CrossedElement, CrossedProduct};
use super::kernel::HopfKernelContext;
use crate::combinat::monomials_up_to;
use crate::error::{Error, Result};
use crate::lie_rinehart::{curved_semidirect_sum, Connection, LieCocycle, LieRinehart, LraMorphism};
use crate::memo::Memo;
use crate::pbw_maps::{CoringSection, SectionKind};
use crate::poly::Exponent;
use crate::uea::{coproduct, elem_string, Elem, Mono, Uea};
use crate::{Derivation, Poly};

pub struct RainFog {
    crossed: CrossedProduct,
    tau_alg: Arc<Uea>,
    tau: LieCocycle,
    r: usize,
    phi_memo: Memo<Mono, CrossedElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainFogReport {
    pub degree: usize,
    pub checked: usize,
    /// First failure of Ψ̄∘Φ̄ = id, Φ̄∘Ψ̄ = id, Φ̄ multiplicative or the τ identity.
    pub witness: Option<String>,
}

impl RainFogReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

impl RainFog {
    /// `nabla` acts on the abelian algebra 𝔫 = span(n_labels) over ℚ; R has
    /// one variable per basis vector of 𝔫, named by lowercasing the label.
    pub fn new(n_labels: &[&str], nabla: &Connection, tau: &LieCocycle, kind: SectionKind) -> Result<Self> {
        let h = nabla.acting().clone();
        if h.nvars() != 0 {
            return Err(Error::Precondition("the base must be ℚ".into()));
        }
        let r = n_labels.len();
        let n = Arc::new(LieRinehart::new("n", &[], n_labels));
        let l = Arc::new(curved_semidirect_sum("L", &n, nabla, tau)?);
        let m = h.rank();
        let unit = |len: usize, i: usize| -> Vec<Poly> {
            (0..len).map(|j| if i == j { Poly::one(0) } else { Poly::zero(0) }).collect()
        };
        let pi_rows = (0..r + m).map(|i| if i < r { vec![Poly::zero(0); m] } else { unit(m, i - r) }).collect();
        let pi = LraMorphism::new("π", l.clone(), h.clone(), pi_rows)?;
        let gamma = LraMorphism::new("γ", h.clone(), l.clone(), (0..m).map(|i| unit(r + m, r + i)).collect())?;
        let iota = LraMorphism::new("ι", n.clone(), l.clone(), (0..r).map(|i| unit(r + m, i)).collect())?;
        let (ul, uh, un) = (Uea::new(l), Uea::new(h.clone()), Uea::new(n));
        let ctx = Arc::new(HopfKernelContext::new(&pi, &iota, ul.clone(), uh.clone(), un)?);
        let section = Arc::new(CoringSection::new("Γ", &pi, &gamma, ul, uh, kind)?);
        let crossed = CrossedProduct::new(Arc::new(HopfCocycle::new(ctx, section)));

        let z_names: Vec<String> = n_labels.iter().map(|s| s.to_lowercase()).collect();
        let labels: Vec<String> = h.labels().to_vec();
        let mut t = LieRinehart::from_names("R×τU", z_names, labels);
        for i in 0..m {
            let mat = nabla.matrix(i);
            let coeffs = (0..r)
                .map(|l| {
                    let mut p = Poly::zero(r);
                    for k in 0..r {
                        p += &Poly::var(r, k).scale(&mat[k][l].constant_term());
                    }
                    p
                })
                .collect();
            t.set_anchor(i, Derivation::new(coeffs)?)?;
            for j in (i + 1)..m {
                t.set_bracket(i, j, h.bracket_coeffs(i, j).iter().map(|c| c.embed(r, 0)).collect())?;
            }
        }
        let twist = (0..m)
            .map(|i| (0..m).map(|j| if i == j { Poly::zero(r) } else { linear_in_z(&tau.on_basis(&[i, j]), r) }).collect())
            .collect();
        let tau_alg = Uea::with_twist(Arc::new(t), twist)?;
        Ok(RainFog { crossed, tau_alg, tau: tau.clone(), r, phi_memo: Memo::new() })
    }

    /// R ×_τ U(𝔥): coefficients in R, monomials in 𝔥.
    pub fn tau_algebra(&self) -> &Arc<Uea> {
        &self.tau_alg
    }

    pub fn crossed(&self) -> &CrossedProduct {
        &self.crossed
    }

    /// The B-element p(Z) for p ∈ R.
    pub fn b_of(&self, p: &Poly) -> Elem {
        let mut out = Elem::zero(0);
        for (e, c) in p.terms() {
            let m: Mono = (0..self.r).flat_map(|i| std::iter::repeat_n(i, e.0[i] as usize)).collect();
            out.add_term(m, Poly::constant(0, c.clone()));
        }
        out
    }

    /// The element of R named by b ∈ B.
    pub fn r_of(&self, b: &Elem) -> Result<Poly> {
        let mut out = Poly::zero(self.r);
        for (m, c) in b.terms() {
            if m.iter().any(|&i| i >= self.r) {
                return Err(Error::NotInKernel("element is not in U(𝔫)".into()));
            }
            let mut e = Exponent::zero(self.r);
            for &i in m {
                e.0[i] += 1;
            }
            out.add_term(e, c.constant_term());
        }
        Ok(out)
    }

    /// Φ̄(r ⊗ m) = (r # 1)(1 # X_{m₁})⋯(1 # X_{m_k}).
    pub fn phi_bar(&self, x: &Elem) -> Result<CrossedElement> {
        let mut out = CrossedElement::zero(0);
        for (m, p) in x.terms() {
            let word = self.phi_word(m)?;
            out = out.add(&self.crossed.mul(&CrossedElement::from_parts(&self.b_of(p), &Elem::one(0)), &word)?);
        }
        Ok(out)
    }

    fn phi_word(&self, m: &Mono) -> Result<CrossedElement> {
        if let Some(v) = self.phi_memo.get(m) {
            return Ok(v);
        }
        let out = match m.split_last() {
            None => CrossedElement::one(0),
            Some((&x, rest)) => {
                self.crossed.mul(&self.phi_word(&rest.to_vec())?, &CrossedElement::term(Poly::one(0), vec![], vec![x]))?
            }
        };
        Ok(self.phi_memo.put(m.clone(), out))
    }

    /// Ψ̄(b # uX) = Ψ̄(b # u)Ψ̄(1 # X) − Ψ̄(bσ(u₍₁₎, X) # u₍₂₎), Ψ̄(b # 1) = b ⊗ 1.
    pub fn psi_bar(&self, x: &CrossedElement) -> Result<Elem> {
        let mut out = self.tau_alg.zero();
        for ((b, v), c) in x.terms() {
            let r = self.r_of(&Elem::term(c.clone(), b.clone()))?;
            out = &out + &self.psi_rec(&r, v)?;
        }
        Ok(out)
    }

    fn psi_rec(&self, r: &Poly, m: &[usize]) -> Result<Elem> {
        let t = &self.tau_alg;
        let Some((&x, u)) = m.split_last() else {
            return Ok(t.base(r));
        };
        let mut out = t.mul(&self.psi_rec(r, u)?, &t.gen(x));
        let c = self.crossed.cocycle();
        for ((u1, u2), mult) in coproduct(&c.v().mono(u)).terms() {
            let s = self.r_of(&c.sigma_mono(u1, &vec![x])?)?;
            let coeff = (r * &s).scale(&mult.constant_term());
            if !coeff.is_zero() {
                out = &out - &self.psi_rec(&coeff, u2)?;
            }
        }
        Ok(out)
    }

    /// σ(X_i, X_j) − σ(X_j, X_i), read in R.
    pub fn extracted_tau(&self, i: usize, j: usize) -> Result<Poly> {
        let c = self.crossed.cocycle();
        let d = &c.sigma_mono(&vec![i], &vec![j])? - &c.sigma_mono(&vec![j], &vec![i])?;
        self.r_of(&d)
    }

    pub fn tau_value(&self, i: usize, j: usize) -> Poly {
        linear_in_z(&self.tau.on_basis(&[i, j]), self.r)
    }

    /// Ψ̄∘Φ̄ and Φ̄∘Ψ̄ on basis elements of total degree ≤ k (z-degree plus
    /// word length), Φ̄ on products of such pairs, and the τ identity.
    pub fn check(&self, k: usize) -> Result<RainFogReport> {
        let t = &self.tau_alg;
        let m = t.rank();
        let mut basis = Vec::new();
        for z in monomials_up_to(self.r, k) {
            for w in monomials_up_to(m, k - z.len()) {
                basis.push((z.clone(), w));
            }
        }
        let mut checked = 0;
        let fail = |checked, w: String| Ok(RainFogReport { degree: k, checked, witness: Some(w) });
        let show = |e: &Elem| elem_string(e, t.lra().labels(), t.lra().var_names());
        for i in 0..m {
            for j in (i + 1)..m {
                checked += 1;
                if self.extracted_tau(i, j)? != self.tau_value(i, j) {
                    let names = t.lra().labels();
                    return fail(checked, format!("τ({}, {}) ≠ σ difference", names[i], names[j]));
                }
            }
        }
        let mut images = Vec::new();
        for (z, w) in &basis {
            checked += 2;
            let rz = self.r_of(&Elem::mono(0, z.clone()))?;
            let x = Elem::term(rz, w.clone());
            let fx = self.phi_bar(&x)?;
            if self.psi_bar(&fx)? != x {
                return fail(checked, format!("Ψ̄Φ̄ ≠ id on {}", show(&x)));
            }
            let y = CrossedElement::term(Poly::one(0), z.clone(), w.clone());
            if self.phi_bar(&self.psi_bar(&y)?)? != y {
                return fail(checked, format!("Φ̄Ψ̄ ≠ id on basis element of degree {}", z.len() + w.len()));
            }
            images.push((z.len() + w.len(), x, fx));
        }
        for (dx, x, fx) in &images {
            for (dy, y, fy) in &images {
                if dx + dy > k {
                    continue;
                }
                checked += 1;
                if self.phi_bar(&t.mul(x, y))? != self.crossed.mul(fx, fy)? {
                    return fail(checked, format!("Φ̄ not multiplicative on ({}) * ({})", show(x), show(y)));
                }
            }
        }
        Ok(RainFogReport { degree: k, checked, witness: None })
    }
}

fn linear_in_z(v: &[Poly], r: usize) -> Poly {
    let mut p = Poly::zero(r);
    for (l, c) in v.iter().enumerate() {
        p += &Poly::var(r, l).scale(&c.constant_term());
    }
    p
}
