//! Derivations Σ dᵢ ∂/∂xᵢ of the base algebra.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Derivation<S> {
    coeffs: Vec<Poly<S>>,
}

impl<S: Scalar> Derivation<S> {
    pub fn zero(nvars: usize) -> Self {
        Derivation { coeffs: vec![Poly::zero(nvars); nvars] }
    }

    /// ∂/∂xᵢ.
    pub fn partial(nvars: usize, i: usize) -> Self {
        let mut d = Self::zero(nvars);
        d.coeffs[i] = Poly::one(nvars);
        d
    }

    pub fn new(coeffs: Vec<Poly<S>>) -> Result<Self> {
        let n = coeffs.len();
        if let Some(bad) = coeffs.iter().find(|c| c.nvars() != n) {
            return Err(Error::VarMismatch(bad.nvars(), n));
        }
        Ok(Derivation { coeffs })
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Poly<S>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    pub fn apply(&self, p: &Poly<S>) -> Poly<S> {
        self.checked_apply(p).expect("derivation application")
    }

    pub fn checked_apply(&self, p: &Poly<S>) -> Result<Poly<S>> {
        if p.nvars() != self.nvars() {
            return Err(Error::VarMismatch(self.nvars(), p.nvars()));
        }
        let mut out = Poly::zero(self.nvars());
        for (i, d) in self.coeffs.iter().enumerate() {
            if !d.is_zero() {
                out += &(d * &p.deriv(i));
            }
        }
        Ok(out)
    }

    /// [D₁, D₂] with coefficients D₁(d₂ᵢ) − D₂(d₁ᵢ).
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.nvars() != other.nvars() {
            return Err(Error::VarMismatch(self.nvars(), other.nvars()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| &self.apply(b) - &other.apply(a))
            .collect();
        Ok(Derivation { coeffs })
    }

    pub fn add(&self, other: &Self) -> Self {
        Derivation {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    /// a·D.
    pub fn scale(&self, a: &Poly<S>) -> Self {
        Derivation { coeffs: self.coeffs.iter().map(|c| a * c).collect() }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                if c.is_one() {
                    format!("d/d{name}")
                } else {
                    format!("({})*d/d{name}", c.to_string_with(names))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn x() -> Poly<Rational> {
        Poly::var(2, 0)
    }
    fn y() -> Poly<Rational> {
        Poly::var(2, 1)
    }

    #[test]
    fn power_rule() {
        let dx = Derivation::<Rational>::partial(1, 0);
        let t = Poly::var(1, 0);
        assert_eq!(dx.apply(&t.pow(2)), t.scale(&Rational::from_integer(2.into())));
    }

    #[test]
    fn euler_operator_on_homogeneous() {
        let e = Derivation::new(vec![x(), y()]).unwrap();
        let p = &x().pow(2) * &y();
        assert_eq!(e.apply(&p), p.scale(&Rational::from_integer(3.into())));
    }

    #[test]
    fn unit_is_killed() {
        let d = Derivation::new(vec![x(), &y() * &y()]).unwrap();
        assert!(d.apply(&Poly::one(2)).is_zero());
    }

    #[test]
    fn brackets() {
        let dx = Derivation::<Rational>::partial(1, 0);
        let xdx = Derivation::new(vec![Poly::var(1, 0)]).unwrap();
        assert_eq!(dx.bracket(&xdx).unwrap(), dx);
        assert!(xdx.bracket(&xdx).unwrap().is_zero());
        // [x∂y, y∂x] = x∂x − y∂y
        let a = Derivation::new(vec![Poly::zero(2), x()]).unwrap();
        let b = Derivation::new(vec![y(), Poly::zero(2)]).unwrap();
        assert_eq!(a.bracket(&b).unwrap(), Derivation::new(vec![x(), -y()]).unwrap());
    }

    #[test]
    fn mismatch_is_an_error() {
        let d = Derivation::<Rational>::partial(2, 0);
        assert_eq!(d.checked_apply(&Poly::var(1, 0)), Err(Error::VarMismatch(2, 1)));
    }
}
