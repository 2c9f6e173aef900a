//! The Moyal-type star product on ℚ[Q, P, C],
//! f ⋆ g = Σ_j (Cʲ/j!) ∂_Pʲ f · ∂_Qʲ g,
//! and its comparison with the Heisenberg enveloping algebra.

use crate::uea::{Elem, Mono, Uea};
use crate::{Poly, Rational};

/// Commutative polynomials in the variables (Q, P, C).
pub type MoyalPoly = Poly;

const Q: usize = 0;
const P: usize = 1;
const C: usize = 2;

pub fn moyal_star(f: &MoyalPoly, g: &MoyalPoly) -> MoyalPoly {
    let mut out = Poly::zero(3);
    let (mut df, mut dg) = (f.clone(), g.clone());
    let mut cj = Poly::one(3);
    let mut fact = Rational::from_integer(1.into());
    let mut j = 0i64;
    while !df.is_zero() && !dg.is_zero() {
        out += &(&(&df * &dg) * &cj).scale(&fact.recip());
        j += 1;
        fact *= Rational::from_integer(j.into());
        cj = &cj * &Poly::var(3, C);
        df = df.deriv(P);
        dg = dg.deriv(Q);
    }
    out
}

/// Normal ordering QᵃPᵇCᶜ ↦ QᵃPᵇCᶜ ∈ U(𝔤) for 𝔤 with PBW basis (Q, P, C).
pub fn moyal_to_uea(f: &MoyalPoly, g: &Uea) -> Elem {
    let mut out = g.zero();
    for (e, c) in f.terms() {
        let m: Mono = (0..3).flat_map(|i| std::iter::repeat_n(i, e.0[i] as usize)).collect();
        out.add_term(m, Poly::constant(0, c.clone()));
    }
    out
}

/// σ(XᵃYᵇ, XᶜYᵈ) = (QᵃPᵇ ⋆ QᶜPᵈ)|_{Q=P=0}, read in U(𝔤).
pub fn sigma_via_star(m: &[usize], n: &[usize], g: &Uea) -> Elem {
    let lift = |w: &[usize]| {
        let a = w.iter().filter(|&&i| i == 0).count() as u32;
        let b = w.len() as u32 - a;
        &Poly::var(3, Q).pow(a) * &Poly::var(3, P).pow(b)
    };
    let s = moyal_star(&lift(m), &lift(n));
    let z = Poly::zero(3);
    let at_zero = s.substitute(&[z.clone(), z, Poly::var(3, C)], 3);
    moyal_to_uea(&at_zero, g)
}
