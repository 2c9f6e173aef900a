//! gl(V) acting on S(V ⊕ V*) through Yⁱⱼ ↦ XⁱPⱼ, and the Euler field
//! Σ Xⁱ∂_{Xⁱ} − Σ Pⱼ∂_{Pⱼ} whose invariants the image lands in.

use crate::combinat::monomials_of_degree;
use crate::linalg::{nullspace, rank};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerDims {
    /// dim Sᵏ(V ⊗ V*).
    pub full: usize,
    /// dim of the Euler-invariant part of S²ᵏ(V ⊕ V*).
    pub invariant: usize,
    /// dim ker(grΦ) in degree k.
    pub gr_kernel: usize,
    /// rank of grΦ in degree k.
    pub image: usize,
}

fn index_of(monos: &[Vec<usize>], m: &[usize]) -> usize {
    monos.binary_search_by(|x| x.as_slice().cmp(m)).expect("monomial of the right degree")
}

pub fn euler_gl_invariants(d: usize, k: usize) -> EulerDims {
    let zero = || Rational::from_integer(0.into());
    // Variables X¹..Xᵈ are 0..d, P₁..P_d are d..2d; Yⁱⱼ is i·d + j.
    let mut target = monomials_of_degree(2 * d, 2 * k);
    target.sort();
    let euler: Vec<Vec<Rational>> = target
        .iter()
        .enumerate()
        .map(|(r, m)| {
            let weight = m.iter().map(|&v| if v < d { 1i64 } else { -1 }).sum::<i64>();
            let mut row = vec![zero(); target.len()];
            row[r] = Rational::from_integer(weight.into());
            row
        })
        .collect();
    let invariant = nullspace(euler, target.len()).len();

    let source = monomials_of_degree(d * d, k);
    let mut cols = Vec::with_capacity(source.len());
    for m in &source {
        let mut img: Vec<usize> = m.iter().flat_map(|&y| [y / d, d + y % d]).collect();
        img.sort();
        let mut col = vec![zero(); target.len()];
        col[index_of(&target, &img)] = Rational::from_integer(1.into());
        cols.push(col);
    }
    let image = rank(cols);
    EulerDims { full: source.len(), invariant, gr_kernel: source.len() - image, image }
}
