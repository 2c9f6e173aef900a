//! Hopf kernels, cocycles, crossed and smash products, and the τ-crossed
//! product R ×_τ U(𝔥).

mod cocycle;
mod crossed;
mod kernel;
mod rainfog;
mod smash;

pub use cocycle::{check_cocycle_axioms, AxiomCheck, AxiomReport, CocycleKind, HopfCocycle};
pub use crossed::{CrossedElement, CrossedProduct};
pub use kernel::{HopfKernelContext, KernelBasis};
pub use rainfog::{RainFog, RainFogReport};
pub use smash::{SmashProduct, SmashTensor};

#[cfg(test)]
mod tests;
