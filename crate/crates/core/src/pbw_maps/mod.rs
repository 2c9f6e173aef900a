//! Symmetrisation, coring sections and the freeness isomorphism Θ.

mod section;
mod sym;
mod theta;

pub use section::{check_coring_morphism, sections_equivalent, CoringReport, CoringSection, SectionKind};
pub use sym::{SymElem, Symmetrization};
pub use theta::{FiltrationPiece, Theta};

#[cfg(test)]
mod tests;
