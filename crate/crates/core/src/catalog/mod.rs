//! Worked examples: extensions 𝔫 → 𝔤 → 𝔥 with their sections, the Moyal
//! star product, the Euler invariant count, and named golden-value bundles.

mod bundle;
mod euler;
mod moyal;


use std::sync::Arc;

pub use bundle::{bundle, bundle_names, ExampleBundle, Golden, Provenance};
pub use euler::{euler_gl_invariants, EulerDims};
pub use moyal::{moyal_star, moyal_to_uea, sigma_via_star, MoyalPoly};

use crate::error::Result;
use crate::lie_rinehart::{
    curved_semidirect_sum, transformation_lra, Cochain, Connection, LieRinehart, LraMorphism,
};
use crate::pbw_maps::{CoringSection, SectionKind, Theta};
use crate::products::{CocycleKind, CrossedProduct, HopfCocycle, HopfKernelContext, RainFog, SmashProduct};
use crate::uea::Uea;
use crate::{Derivation, Poly};

/// An extension 0 → 𝔫 → 𝔤 → 𝔥 → 0 with an A-linear splitting γ of π.
pub struct Extension {
    pub name: String,
    pub pi: LraMorphism,
    pub gamma: LraMorphism,
    pub iota: LraMorphism,
    ctx: Arc<HopfKernelContext>,
}

impl Extension {
    pub fn new(name: &str, pi: LraMorphism, gamma: LraMorphism, iota: LraMorphism) -> Result<Self> {
        let g = Uea::new(pi.source().clone());
        let h = Uea::new(pi.target().clone());
        let n = Uea::new(iota.source().clone());
        let ctx = Arc::new(HopfKernelContext::new(&pi, &iota, g, h, n)?);
        Ok(Extension { name: name.to_string(), pi, gamma, iota, ctx })
    }

    pub fn ctx(&self) -> &Arc<HopfKernelContext> {
        &self.ctx
    }

    pub fn g(&self) -> &Arc<Uea> {
        self.ctx.g()
    }

    pub fn h(&self) -> &Arc<Uea> {
        self.ctx.h()
    }

    pub fn n(&self) -> &Arc<Uea> {
        self.ctx.n()
    }

    pub fn section(&self, kind: SectionKind) -> Result<Arc<CoringSection>> {
        let name = match &kind {
            SectionKind::Symmetrized => "Γ_sym".to_string(),
            SectionKind::Ordered(o) => format!("Γ_{o:?}"),
            SectionKind::HopfMorphism => "U(γ)".to_string(),
        };
        Ok(Arc::new(CoringSection::new(&name, &self.pi, &self.gamma, self.g().clone(), self.h().clone(), kind)?))
    }

    pub fn cocycle(&self, kind: SectionKind) -> Result<Arc<HopfCocycle>> {
        Ok(Arc::new(HopfCocycle::new(self.ctx.clone(), self.section(kind)?)))
    }

    pub fn cocycle_with(&self, kind: SectionKind, ck: CocycleKind) -> Result<Arc<HopfCocycle>> {
        Ok(Arc::new(HopfCocycle::with_kind(self.ctx.clone(), self.section(kind)?, ck)))
    }

    pub fn crossed(&self, kind: SectionKind) -> Result<CrossedProduct> {
        Ok(CrossedProduct::new(self.cocycle(kind)?))
    }

    /// γ is a morphism of Lie-Rinehart algebras.
    pub fn has_lr_section(&self) -> bool {
        self.gamma.is_lra_morphism()
    }
}

fn unit(len: usize, i: usize, nvars: usize) -> Vec<Poly> {
    (0..len).map(|j| if i == j { Poly::one(nvars) } else { Poly::zero(nvars) }).collect()
}

fn zeros(len: usize, nvars: usize) -> Vec<Poly> {
    vec![Poly::zero(nvars); len]
}

/// 𝔤 = span(Q, P, C) over ℚ with [P, Q] = C.
pub fn heisenberg_lra() -> LieRinehart {
    LieRinehart::new("heis", &[], &["Q", "P", "C"]).with_bracket(1, 0, unit(3, 2, 0))
}

/// Heisenberg 𝔤 → abelian 𝔥 = span(X, Y), Q ↦ X, P ↦ Y, 𝔫 = ℚC; γ picks Q, P.
pub fn heisenberg() -> Result<Extension> {
    let g = Arc::new(heisenberg_lra());
    let h = Arc::new(LieRinehart::new("h", &[], &["X", "Y"]));
    let n = Arc::new(LieRinehart::new("n", &[], &["C"]));
    let pi = LraMorphism::new("π", g.clone(), h.clone(), vec![unit(2, 0, 0), unit(2, 1, 0), zeros(2, 0)])?;
    let gamma = LraMorphism::new("γ", h, g.clone(), vec![unit(3, 0, 0), unit(3, 1, 0)])?;
    let iota = LraMorphism::new("ι", n, g, vec![unit(3, 2, 0)])?;
    Extension::new("heisenberg", pi, gamma, iota)
}

/// XᵃYᵇ ↦ QᵃPᵇ.
pub fn ordered() -> SectionKind {
    SectionKind::Ordered(vec![0, 1])
}

/// YᵇXᵃ ↦ PᵇQᵃ.
pub fn reversed() -> SectionKind {
    SectionKind::Ordered(vec![1, 0])
}

/// The three Heisenberg sections with their short names.
pub fn heisenberg_sections() -> Vec<(&'static str, SectionKind)> {
    vec![("ordered", ordered()), ("reversed", reversed()), ("symmetrized", SectionKind::Symmetrized)]
}

/// A = ℚ[t], 𝔤 = A ⊗ span(v, n) with [v, n] = n, v acting as d/dt and n by
/// zero; 𝔥 = A ⊗ ℚv, 𝔫 = A·n. γ(v) = v is a Lie-Rinehart section.
pub fn smash_extension() -> Result<Extension> {
    let g0 = LieRinehart::new("g0", &[], &["v", "n"]).with_bracket(0, 1, unit(2, 1, 0));
    let g = Arc::new(transformation_lra("A⋊g0", &["t"], &g0, &[Derivation::partial(1, 0), Derivation::zero(1)])?);
    let h0 = LieRinehart::new("h0", &[], &["v"]);
    let h = Arc::new(transformation_lra("A⋊h0", &["t"], &h0, &[Derivation::partial(1, 0)])?);
    let n = Arc::new(LieRinehart::new("n", &["t"], &["n"]));
    let pi = LraMorphism::new("π", g.clone(), h.clone(), vec![unit(1, 0, 1), zeros(1, 1)])?;
    let gamma = LraMorphism::new("γ", h, g.clone(), vec![unit(2, 0, 1)])?;
    let iota = LraMorphism::new("ι", n, g, vec![unit(2, 1, 1)])?;
    Extension::new("smash", pi, gamma, iota)
}

/// A = ℚ, 𝔤 = ℚn ⋊ ℚx with [x, n] = n.
pub fn semidirect() -> Result<Extension> {
    let n = LieRinehart::new("n", &[], &["n"]);
    let h = Arc::new(LieRinehart::new("h", &[], &["x"]));
    let nabla = Connection::new(h.clone(), 1, vec![vec![vec![Poly::one(0)]]])?;
    let tau = Cochain::zero(2, &h, 1);
    split_extension("semidirect", n, h, &nabla, &tau)
}

/// A = ℚ[t], 𝔫 = A·f abelian, 𝔥 = A·D with D = d/dt, ∇_D(af) = (da/dt)f, τ = 0.
pub fn curved() -> Result<Extension> {
    let n = LieRinehart::new("n", &["t"], &["f"]);
    let h = Arc::new(LieRinehart::new("h", &["t"], &["D"]).with_anchor(0, Derivation::partial(1, 0)));
    let nabla = Connection::zero(h.clone(), 1);
    let tau = Cochain::zero(2, &h, 1);
    split_extension("curved", n, h, &nabla, &tau)
}

/// 𝔫 ⋊_τ 𝔥 with its canonical projection, inclusion and section.
pub fn split_extension(
    name: &str,
    n: LieRinehart,
    h: Arc<LieRinehart>,
    nabla: &Connection,
    tau: &Cochain,
) -> Result<Extension> {
    let v = h.nvars();
    let (r, m) = (n.rank(), h.rank());
    let n = Arc::new(n);
    let g = Arc::new(curved_semidirect_sum(name, &n, nabla, tau)?);
    let pi_rows = (0..r + m).map(|i| if i < r { zeros(m, v) } else { unit(m, i - r, v) }).collect();
    let pi = LraMorphism::new("π", g.clone(), h.clone(), pi_rows)?;
    let gamma = LraMorphism::new("γ", h, g.clone(), (0..m).map(|i| unit(r + m, r + i, v)).collect())?;
    let iota = LraMorphism::new("ι", n, g, (0..r).map(|i| unit(r + m, i, v)).collect())?;
    Extension::new(name, pi, gamma, iota)
}

/// All extensions in the catalog, by name.
pub fn extensions() -> Result<Vec<Extension>> {
    Ok(vec![heisenberg()?, smash_extension()?, semidirect()?, curved()?])
}

/// A = ℚ[t] with one generator X acting as d/dt: the first Weyl algebra.
pub fn weyl_lra() -> LieRinehart {
    LieRinehart::new("weyl", &["t"], &["X"]).with_anchor(0, Derivation::partial(1, 0))
}

/// The Lie algebra span(Dx, Dy, E) with [Dx, E] = Dy acting on ℚ[x, y] as
/// ∂x, ∂y, x∂y.
pub fn rank3_data() -> (LieRinehart, Vec<Derivation>) {
    let g0 = LieRinehart::new("g3", &[], &["Dx", "Dy", "E"]).with_bracket(0, 2, unit(3, 1, 0));
    let x = Poly::var(2, 0);
    let action = vec![
        Derivation::partial(2, 0),
        Derivation::partial(2, 1),
        Derivation::new(vec![Poly::zero(2), x]).expect("two coefficients"),
    ];
    (g0, action)
}

pub fn rank3_lra() -> Result<LieRinehart> {
    let (g0, action) = rank3_data();
    transformation_lra("A⋊g3", &["x", "y"], &g0, &action)
}

/// Enveloping algebras of every catalog Lie-Rinehart algebra.
pub fn algebras() -> Result<Vec<(String, Arc<Uea>)>> {
    let mut out = vec![
        ("heisenberg".to_string(), Uea::new(Arc::new(heisenberg_lra()))),
        ("weyl".to_string(), Uea::new(Arc::new(weyl_lra()))),
        ("rank3".to_string(), Uea::new(Arc::new(rank3_lra()?))),
    ];
    for e in [smash_extension()?, semidirect()?, curved()?] {
        out.push((e.name.clone(), e.g().clone()));
    }
    Ok(out)
}

/// Θ for 𝔥 = ℚC inside the Heisenberg algebra, quotient split by Q, P.
pub fn heisenberg_theta() -> Result<Theta> {
    let g = Arc::new(heisenberg_lra());
    let c = Arc::new(LieRinehart::new("c", &[], &["C"]));
    let iota = LraMorphism::new("ι", c.clone(), g.clone(), vec![unit(3, 2, 0)])?;
    Theta::new(&iota, vec![unit(3, 0, 0), unit(3, 1, 0)], Uea::new(c), Uea::new(g))
}

/// Θ for 𝔥 = A·Dx inside the rank-3 transformation algebra, split by Dy, E.
pub fn rank3_theta() -> Result<Theta> {
    let g = Arc::new(rank3_lra()?);
    let h = Arc::new(LieRinehart::new("dx", &["x", "y"], &["Dx"]).with_anchor(0, Derivation::partial(2, 0)));
    let iota = LraMorphism::new("ι", h.clone(), g.clone(), vec![unit(3, 0, 2)])?;
    Theta::new(&iota, vec![unit(3, 1, 2), unit(3, 2, 2)], Uea::new(h), Uea::new(g))
}

/// A Lie algebra over ℚ acting on ℚ[vars] by derivations, read both as a
/// smash product and as a transformation Lie-Rinehart algebra.
pub struct TransformationCase {
    pub name: &'static str,
    pub smash: SmashProduct,
    pub lra: Arc<Uea>,
}

pub fn transformation_cases() -> Result<Vec<TransformationCase>> {
    let build = |name: &'static str, vars: &[&str], h: LieRinehart, action: Vec<Derivation>| -> Result<TransformationCase> {
        let lra = Uea::new(Arc::new(transformation_lra(name, vars, &h, &action)?));
        let smash = SmashProduct::new(Uea::new(Arc::new(h)), vars, action)?;
        Ok(TransformationCase { name, smash, lra })
    };
    let (g3, a3) = rank3_data();
    Ok(vec![
        build("weyl", &["t"], LieRinehart::new("d", &[], &["X"]), vec![Derivation::partial(1, 0)])?,
        build("zero-action", &["t"], LieRinehart::new("d", &[], &["X"]), vec![Derivation::zero(1)])?,
        build(
            "plane",
            &["x", "y"],
            LieRinehart::new("d", &[], &["Dx", "Dy"]),
            vec![Derivation::partial(2, 0), Derivation::partial(2, 1)],
        )?,
        build("rank3", &["x", "y"], g3, a3)?,
    ])
}

/// R = ℚ[z], 𝔥 = span(X, Y) abelian, ∇ = 0, τ(x, y) = z.
pub fn rain_fog(kind: SectionKind) -> Result<RainFog> {
    let h = Arc::new(LieRinehart::new("h", &[], &["X", "Y"]));
    let nabla = Connection::zero(h.clone(), 1);
    let tau = Cochain::zero(2, &h, 1).with(&[0, 1], vec![Poly::one(0)]);
    RainFog::new(&["Z"], &nabla, &tau, kind)
}

/// The flat case of [`rain_fog`]: τ = 0.
pub fn rain_fog_flat(kind: SectionKind) -> Result<RainFog> {
    let h = Arc::new(LieRinehart::new("h", &[], &["X", "Y"]));
    let nabla = Connection::zero(h.clone(), 1);
    RainFog::new(&["Z"], &nabla, &Cochain::zero(2, &h, 1), kind)
}
