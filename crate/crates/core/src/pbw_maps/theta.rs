//! Θ: U_A(𝔥) ⊗_A S_A(𝔤/𝔥) → U_A(𝔤), u ⊗ s ↦ U(ι)(u)·S_𝔤(S(σ)(s)), for a
//! sub-algebra 𝔥 ⊆ 𝔤 with free quotient split by σ.

use std::sync::Arc;

use super::sym::{SymElem, Symmetrization};
use crate::combinat::monomials_up_to;
use crate::error::{Error, Result};
use crate::lie_rinehart::{ElemVec, LraMorphism};
use crate::linalg::UnitPivotReduction;
use crate::uea::{Elem, Mono, Pushforward, Uea};

pub struct Theta {
    incl: Pushforward,
    sym: Symmetrization,
    split: Vec<SymElem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationPiece {
    pub degree: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
    /// Elimination used only unit pivots and finished.
    pub complete: bool,
}

impl FiltrationPiece {
    pub fn bijective(&self) -> bool {
        self.complete && self.domain_dim == self.codomain_dim && self.rank == self.codomain_dim
    }
}

impl Theta {
    /// `split[j]` is σ of the j-th quotient basis vector, as coordinates in 𝔤.
    pub fn new(iota: &LraMorphism, split: Vec<ElemVec>, h: Arc<Uea>, g: Arc<Uea>) -> Result<Self> {
        let rank = g.rank();
        let mut rows: Vec<Vec<_>> = iota.images().to_vec();
        rows.extend(split.iter().cloned());
        if rows.iter().any(|r| r.len() != rank) {
            return Err(Error::Shape("splitting vectors must have the rank of 𝔤".into()));
        }
        let red = UnitPivotReduction::new(rows.clone(), rank, g.nvars());
        if rows.len() != rank || red.rank() != rank || !red.is_complete() {
            return Err(Error::Precondition("quotient not free on provided data".into()));
        }
        let n = g.nvars();
        Ok(Theta {
            incl: Pushforward::new(iota.clone(), h, g.clone())?,
            sym: Symmetrization::new(g),
            split: split.iter().map(|v| SymElem::linear(v, n)).collect(),
        })
    }

    pub fn quotient_rank(&self) -> usize {
        self.split.len()
    }

    pub fn apply(&self, u: &Elem, s: &SymElem) -> Elem {
        let g = self.sym.uea();
        g.mul(&self.incl.apply(u), &self.sym.apply(&s.map_linear(&self.split)))
    }

    pub fn apply_basis(&self, m: &Mono, s: &Mono) -> Elem {
        let n = self.sym.uea().nvars();
        self.apply(&self.incl.source().mono(m), &SymElem::term(crate::Poly::one(n), s.clone()))
    }

    /// Θ restricted to the filtration piece of degree ≤ d, as a matrix over A.
    pub fn piece(&self, d: usize) -> FiltrationPiece {
        let g = self.sym.uea();
        let targets = monomials_up_to(g.rank(), d);
        let mut cols = Vec::new();
        for total in 0..=d {
            for a in 0..=total {
                for m in crate::combinat::monomials_of_degree(self.incl.source().rank(), a) {
                    for s in crate::combinat::monomials_of_degree(self.quotient_rank(), total - a) {
                        cols.push(self.apply_basis(&m, &s));
                    }
                }
            }
        }
        let rows: Vec<Vec<_>> = targets.iter().map(|t| cols.iter().map(|c| c.coeff(t)).collect()).collect();
        let red = UnitPivotReduction::new(rows, cols.len(), g.nvars());
        FiltrationPiece {
            degree: d,
            domain_dim: cols.len(),
            codomain_dim: targets.len(),
            rank: red.rank(),
            complete: red.is_complete(),
        }
    }
}
