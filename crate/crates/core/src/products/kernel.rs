//! The left Hopf kernel B = {u : (id ⊗ Π)Δ(u) = u ⊗ 1} of U_A(π), its
//! identification with U_A(𝔫), and the adjoint action u ⇀ b = u₊ b u₋.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::combinat::monomials_up_to;
use crate::error::{Error, Result};
use crate::lie_rinehart::LraMorphism;
use crate::linalg::UnitPivotReduction;
use crate::uea::{coproduct, translation, Elem, Mono, Pushforward, Tensor, TensorMode, Uea};
use crate::Poly;

pub struct HopfKernelContext {
    projection: Pushforward,
    inclusion: Pushforward,
    n_gens: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub degree: usize,
    pub elements: Vec<Elem>,
    /// Number of 𝔫-monomials of length ≤ degree.
    pub n_monomials: usize,
    /// The basis is supported on 𝔫-monomials and has full rank there.
    pub matches_n_span: bool,
}

impl HopfKernelContext {
    /// `iota` must send the basis of 𝔫 to basis vectors of 𝔤, in increasing
    /// order, all killed by `pi`.
    pub fn new(pi: &LraMorphism, iota: &LraMorphism, g: Arc<Uea>, h: Arc<Uea>, n: Arc<Uea>) -> Result<Self> {
        let mut n_gens = Vec::new();
        for v in iota.images() {
            let nonzero: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            match nonzero.as_slice() {
                [i] if v[*i].is_one() => n_gens.push(*i),
                _ => return Err(Error::Precondition("𝔫 must map onto basis vectors of 𝔤".into())),
            }
            if pi.apply(v).iter().any(|c| !c.is_zero()) {
                return Err(Error::Precondition("π does not vanish on 𝔫".into()));
            }
        }
        if n_gens.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition("the basis of 𝔫 must keep the PBW order of 𝔤".into()));
        }
        Ok(HopfKernelContext {
            projection: Pushforward::new(pi.clone(), g.clone(), h)?,
            inclusion: Pushforward::new(iota.clone(), n, g)?,
            n_gens,
        })
    }

    pub fn g(&self) -> &Arc<Uea> {
        self.projection.source()
    }

    pub fn h(&self) -> &Arc<Uea> {
        self.projection.target()
    }

    pub fn n(&self) -> &Arc<Uea> {
        self.inclusion.source()
    }

    /// U_A(π).
    pub fn projection(&self) -> &Pushforward {
        &self.projection
    }

    /// U_A(ι): U_A(𝔫) → U_A(𝔤).
    pub fn inclusion(&self) -> &Pushforward {
        &self.inclusion
    }

    /// Generators of 𝔤 spanning 𝔫.
    pub fn n_gens(&self) -> &[usize] {
        &self.n_gens
    }

    pub fn is_n_mono(&self, m: &[usize]) -> bool {
        m.iter().all(|i| self.n_gens.contains(i))
    }

    pub fn is_n_supported(&self, u: &Elem) -> bool {
        u.terms().all(|(m, _)| self.is_n_mono(m))
    }

    /// 𝔫-monomials of length ≤ k, written in the generators of 𝔤.
    pub fn n_monomials(&self, k: usize) -> Vec<Mono> {
        monomials_up_to(self.n_gens.len(), k)
            .into_iter()
            .map(|m| m.iter().map(|&i| self.n_gens[i]).collect())
            .collect()
    }

    /// δ(u) = (id ⊗ Π)Δ(u).
    pub fn coaction(&self, u: &Elem) -> Tensor {
        coproduct(u).map_right(|v| self.projection.apply(v)).expect("A-balanced input")
    }

    pub fn is_member(&self, u: &Elem) -> bool {
        let unit = Tensor::from_pair(u, &self.h().one(), TensorMode::OverA, None).expect("A-balanced");
        self.coaction(u) == unit
    }

    /// Solves the membership condition on the A-module of elements of degree ≤ k.
    pub fn kernel_basis(&self, k: usize) -> Result<KernelBasis> {
        let g = self.g();
        let cols = monomials_up_to(g.rank(), k);
        let mut rows: BTreeMap<(Mono, Mono), Vec<Poly>> = BTreeMap::new();
        for (j, m) in cols.iter().enumerate() {
            let u = g.mono(m);
            let unit = Tensor::from_pair(&u, &self.h().one(), TensorMode::OverA, None)?;
            let defect = self.coaction(&u).sub(&unit)?;
            for (key, p) in defect.terms() {
                rows.entry(key.clone()).or_insert_with(|| vec![Poly::zero(g.nvars()); cols.len()])[j] = p.clone();
            }
        }
        let red = UnitPivotReduction::new(rows.into_values().collect(), cols.len(), g.nvars());
        let vectors = red
            .kernel()
            .ok_or_else(|| Error::Unsupported("unit-pivot elimination is inconclusive over A".into()))?;
        let elements: Vec<Elem> = vectors
            .iter()
            .map(|v| {
                let mut e = g.zero();
                for (m, c) in cols.iter().zip(v) {
                    e.add_term(m.clone(), c.clone());
                }
                e
            })
            .collect();
        let n_monos = self.n_monomials(k);
        let supported = elements.iter().all(|e| self.is_n_supported(e));
        let coords: Vec<Vec<Poly>> = elements.iter().map(|e| n_monos.iter().map(|m| e.coeff(m)).collect()).collect();
        let red = UnitPivotReduction::new(coords, n_monos.len(), g.nvars());
        let full = red.is_complete() && red.rank() == n_monos.len();
        Ok(KernelBasis {
            degree: k,
            matches_n_span: supported && full && elements.len() == n_monos.len(),
            n_monomials: n_monos.len(),
            elements,
        })
    }

    /// u ⇀ b = u₊ b u₋ for u ∈ U_A(𝔤).
    pub fn adjoint_action(&self, u: &Elem, b: &Elem) -> Result<Elem> {
        if !self.is_member(b) {
            return Err(Error::NotInKernel("adjoint action needs an element of the Hopf kernel".into()));
        }
        Ok(sandwich(self.g(), &translation(self.g(), u), b))
    }
}

/// Σ l·b·r over the legs of a translation-map representative.
pub(crate) fn sandwich(g: &Uea, t: &Tensor, b: &Elem) -> Elem {
    let mut out = g.zero();
    for (l, r) in t.legs() {
        out = &out + &g.mul(&g.mul(&l, b), &r);
    }
    out
}
