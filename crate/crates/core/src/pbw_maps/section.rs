//! Coring sections Γ: U_A(𝔥) → U_A(𝔤) of U_A(π) built from a splitting γ.

use std::sync::Arc;

use super::sym::{SymElem, Symmetrization};
use crate::combinat::monomials_up_to;
use crate::error::{Error, Result};
use crate::lie_rinehart::{check_splitting, LraMorphism, SplittingClass};
use crate::memo::Memo;
use crate::uea::{coproduct, mono_string, Elem, Mono, Pushforward, Uea};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionKind {
    /// S_𝔤 ∘ S(γ) ∘ S_𝔥⁻¹.
    Symmetrized,
    /// PBW monomials of 𝔥 in the given generator order, mapped to ordered
    /// products of γ-images. `order[k]` is the k-th generator.
    Ordered(Vec<usize>),
    /// U_A(γ) for a Lie-Rinehart section γ.
    HopfMorphism,
}

enum Imp {
    Sym { sg: Symmetrization, sh: Symmetrization, images: Vec<SymElem> },
    Ordered { relabel: Pushforward, order: Vec<usize>, images: Vec<Elem> },
    Hopf(Pushforward),
}

pub struct CoringSection {
    name: String,
    kind: SectionKind,
    gamma: LraMorphism,
    projection: Pushforward,
    imp: Imp,
    memo: Memo<Mono, Elem>,
}

impl CoringSection {
    /// `g` and `h` must be the enveloping algebras of the source and target of π.
    pub fn new(
        name: &str,
        pi: &LraMorphism,
        gamma: &LraMorphism,
        g: Arc<Uea>,
        h: Arc<Uea>,
        kind: SectionKind,
    ) -> Result<Self> {
        let class = check_splitting(pi, gamma)?;
        if class == SplittingClass::NotASection {
            return Err(Error::NotASection(format!("{} is not a section of {}", gamma.name(), pi.name())));
        }
        if kind == SectionKind::HopfMorphism && class != SplittingClass::LieRinehartSection {
            return Err(Error::Uncertified(format!("{} is not a Lie-Rinehart section", gamma.name())));
        }
        let projection = Pushforward::new(pi.clone(), g.clone(), h.clone())?;
        let n = g.nvars();
        let imp = match &kind {
            SectionKind::Symmetrized => Imp::Sym {
                images: gamma.images().iter().map(|v| SymElem::linear(v, n)).collect(),
                sg: Symmetrization::new(g.clone()),
                sh: Symmetrization::new(h.clone()),
            },
            SectionKind::Ordered(order) => {
                let src = h.lra();
                let re = Arc::new(src.reordered(&format!("{}'", src.name()), order)?);
                let mut inv = vec![0; order.len()];
                for (k, &o) in order.iter().enumerate() {
                    inv[o] = k;
                }
                let rows = (0..src.rank()).map(|i| re.basis_vec(inv[i])).collect();
                let iso = LraMorphism::new("relabel", src.clone(), re.clone(), rows)?;
                Imp::Ordered {
                    relabel: Pushforward::new(iso, h.clone(), Uea::new(re))?,
                    order: order.clone(),
                    images: gamma.images().iter().map(|v| g.from_vec(v)).collect(),
                }
            }
            SectionKind::HopfMorphism => Imp::Hopf(Pushforward::new(gamma.clone(), h.clone(), g.clone())?),
        };
        Ok(CoringSection { name: name.to_string(), kind, gamma: gamma.clone(), projection, imp, memo: Memo::new() })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &SectionKind {
        &self.kind
    }

    pub fn gamma(&self) -> &LraMorphism {
        &self.gamma
    }

    /// U_A(π).
    pub fn projection(&self) -> &Pushforward {
        &self.projection
    }

    pub fn g(&self) -> &Arc<Uea> {
        self.projection.source()
    }

    pub fn h(&self) -> &Arc<Uea> {
        self.projection.target()
    }

    pub fn apply_mono(&self, m: &Mono) -> Elem {
        if let Some(v) = self.memo.get(m) {
            return v;
        }
        let g = self.g();
        let out = match &self.imp {
            Imp::Sym { sg, sh, images } => sg.apply(&sh.inverse(&self.h().mono(m)).map_linear(images)),
            Imp::Ordered { relabel, order, images } => {
                let mut acc = g.zero();
                for (w, p) in relabel.apply(&self.h().mono(m)).terms() {
                    let prod = w.iter().fold(g.one(), |a, &k| g.mul(&a, &images[order[k]]));
                    acc.add_scaled(&prod, p);
                }
                acc
            }
            Imp::Hopf(f) => f.apply_mono(m),
        };
        self.memo.put(m.clone(), out)
    }

    /// Γ is left A-linear.
    pub fn apply(&self, v: &Elem) -> Elem {
        let mut out = self.g().zero();
        for (m, p) in v.terms() {
            out.add_scaled(&self.apply_mono(m), p);
        }
        out
    }

    /// First 𝔥-monomial of length ≤ k with Π(Γ(m)) ≠ m.
    pub fn section_witness(&self, k: usize) -> Option<Mono> {
        let h = self.h();
        monomials_up_to(h.rank(), k).into_iter().find(|m| self.projection.apply(&self.apply_mono(m)) != h.mono(m))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoringReport {
    pub checked: usize,
    pub witness: Option<String>,
}

impl CoringReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks Δ∘F = (F⊗F)∘Δ and ε∘F = ε on all monomials of `src` of length ≤ k.
pub fn check_coring_morphism(src: &Uea, f: &dyn Fn(&Elem) -> Elem, k: usize) -> CoringReport {
    let mut checked = 0;
    for m in monomials_up_to(src.rank(), k) {
        checked += 1;
        let u = src.mono(&m);
        let fu = f(&u);
        let name = if m.is_empty() { "1".to_string() } else { mono_string(&m, src.lra().labels()) };
        if fu.counit() != u.counit() {
            return CoringReport { checked, witness: Some(format!("counit fails on {name}")) };
        }
        let lhs = coproduct(&fu);
        let rhs = coproduct(&u).map_both(f, f).expect("A-balanced input");
        if lhs != rhs {
            return CoringReport { checked, witness: Some(format!("coproduct fails on {name}")) };
        }
    }
    CoringReport { checked, witness: None }
}

/// gr(Γ₁) = gr(Γ₂) on all graded pieces of degree ≤ k, both maps filtered.
pub fn sections_equivalent(a: &CoringSection, b: &CoringSection, k: usize) -> bool {
    monomials_up_to(a.h().rank(), k).iter().all(|m| {
        let (x, y) = (a.apply_mono(m), b.apply_mono(m));
        let d = m.len();
        x.degree().unwrap_or(0) <= d && y.degree().unwrap_or(0) <= d && x.homogeneous(d) == y.homogeneous(d)
    })
}
