//! Multivariate polynomials with exact coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent vector, ordered graded-lexicographically (x₀ > x₁ > …).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Exponent(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<S> {
    nvars: usize,
    terms: BTreeMap<Exponent, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::monomial(nvars, Exponent::zero(nvars), c)
    }

    pub fn from_i64(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, S::from_i64(c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} out of range for {nvars} variables");
        Self::monomial(nvars, Exponent::unit(nvars, i), S::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: S) -> Self {
        assert_eq!(exp.0.len(), nvars, "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { nvars, terms }
    }

    /// Builds from (exponent, coefficient) pairs, summing duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, S)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length");
            p.add_term(Exponent(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Exponent) -> S {
        self.terms.get(e).cloned().unwrap_or_else(S::zero)
    }

    /// `Some(c)` iff the polynomial is the constant `c` (zero included).
    pub fn constant_value(&self) -> Option<S> {
        match self.terms.len() {
            0 => Some(S::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&Exponent::zero(self.nvars))
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Exponent::degree)
    }

    pub fn add_term(&mut self, e: Exponent, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::VarMismatch(self.nvars, other.nvars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v.clone() * c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// ∂/∂xᵢ.
    pub fn deriv(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable x{i} out of range for {} variables", self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k > 0 {
                let mut d = e.clone();
                d.0[i] -= 1;
                out.add_term(d, c.clone() * S::from_i64(k as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.nvars, "evaluation point length");
        let mut total = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                for _ in 0..k {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        total
    }

    /// Replaces xᵢ by `images[i]`; the result lives where the images live.
    pub fn substitute(&self, images: &[Poly<S>], target_nvars: usize) -> Self {
        assert_eq!(images.len(), self.nvars, "substitution arity");
        let mut out = Self::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target_nvars, c.clone());
            for (img, &k) in images.iter().zip(&e.0) {
                if k > 0 {
                    t = &t * &img.pow(k);
                }
            }
            out += &t;
        }
        out
    }

    /// Re-reads the polynomial in `target_nvars` variables, sending xᵢ to x_{offset+i}.
    pub fn embed(&self, target_nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= target_nvars, "embedding does not fit");
        let mut out = Self::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; target_nvars];
            f[offset..offset + self.nvars].copy_from_slice(&e.0);
            out.terms.insert(Exponent(f), c.clone());
        }
        out
    }

    /// Splits P(x, y) with x the first `k` variables into Σ_β P_β(x)·y^β.
    pub fn split_at(&self, k: usize) -> BTreeMap<Exponent, Poly<S>> {
        assert!(k <= self.nvars);
        let mut out: BTreeMap<Exponent, Poly<S>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let (head, tail) = e.0.split_at(k);
            out.entry(Exponent(tail.to_vec()))
                .or_insert_with(|| Poly::zero(k))
                .add_term(Exponent(head.to_vec()), c.clone());
        }
        out
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_string(e, names);
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

pub(crate) fn monomial_string(e: &Exponent, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.0.iter().enumerate() {
        let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
        match k {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{k}")),
        }
    }
    parts.join("*")
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&[]))
    }
}

impl<S: Scalar> Add for &Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: &Poly<S>) -> Poly<S> {
        self.checked_add(rhs).expect("Poly addition")
    }
}

impl<S: Scalar> Sub for &Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: &Poly<S>) -> Poly<S> {
        self.checked_sub(rhs).expect("Poly subtraction")
    }
}

impl<S: Scalar> Mul for &Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: &Poly<S>) -> Poly<S> {
        self.checked_mul(rhs).expect("Poly multiplication")
    }
}

impl<S: Scalar> Add for Poly<S> {
    type Output = Poly<S>;
    fn add(self, rhs: Poly<S>) -> Poly<S> {
        &self + &rhs
    }
}

impl<S: Scalar> Sub for Poly<S> {
    type Output = Poly<S>;
    fn sub(self, rhs: Poly<S>) -> Poly<S> {
        &self - &rhs
    }
}

impl<S: Scalar> Mul for Poly<S> {
    type Output = Poly<S>;
    fn mul(self, rhs: Poly<S>) -> Poly<S> {
        &self * &rhs
    }
}

impl<S: Scalar> Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Neg for Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        -&self
    }
}

impl<S: Scalar> AddAssign<&Poly<S>> for Poly<S> {
    fn add_assign(&mut self, rhs: &Poly<S>) {
        self.check(rhs).expect("Poly addition");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl<S: Scalar> SubAssign<&Poly<S>> for Poly<S> {
    fn sub_assign(&mut self, rhs: &Poly<S>) {
        self.check(rhs).expect("Poly subtraction");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::Ratio;

    type Q = Ratio<BigInt>;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn difference_of_squares() {
        let x = Poly::<Q>::var(1, 0);
        let one = Poly::one(1);
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p, &x.pow(2) - &one);
    }

    #[test]
    fn zero_annihilates() {
        let x = Poly::<Q>::var(2, 1);
        assert!((&Poly::zero(2) * &x).is_zero());
    }

    #[test]
    fn rational_coefficients_multiply() {
        let x = Poly::<Q>::var(2, 0).scale(&q(1, 2));
        let y = Poly::<Q>::var(2, 1).scale(&q(2, 3));
        let xy = &Poly::var(2, 0) * &Poly::var(2, 1);
        assert_eq!(&x * &y, xy.scale(&q(1, 3)));
    }

    #[test]
    fn mismatched_variable_counts_are_rejected() {
        let a = Poly::<Q>::var(1, 0);
        let b = Poly::<Q>::var(2, 0);
        assert_eq!(a.checked_mul(&b), Err(Error::VarMismatch(1, 2)));
    }

    #[test]
    fn graded_lex_printing() {
        let names = vec!["x".to_string(), "y".to_string()];
        let x = Poly::<Q>::var(2, 0);
        let y = Poly::<Q>::var(2, 1);
        let p = &(&(&x * &y) + &x.pow(2).scale(&q(-1, 2))) + &Poly::from_i64(2, 3);
        assert_eq!(p.to_string_with(&names), "-1/2*x^2 + x*y + 3");
        let r = &y.pow(3) - &x;
        assert_eq!(r.to_string_with(&names), "y^3 - x");
    }

    #[test]
    fn split_and_embed() {
        // P(x, x') = x·x'² + 3x'
        let x = Poly::<Q>::var(2, 0);
        let xp = Poly::<Q>::var(2, 1);
        let p = &(&x * &xp.pow(2)) + &xp.scale(&q(3, 1));
        let parts = p.split_at(1);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&Exponent(vec![2])], Poly::var(1, 0));
        assert_eq!(parts[&Exponent(vec![1])], Poly::from_i64(1, 3));
        let t = Poly::<Q>::var(1, 0);
        assert_eq!(t.embed(3, 2), Poly::var(3, 2));
    }

    #[test]
    fn substitution_composes() {
        let x = Poly::<Q>::var(1, 0);
        let p = &x.pow(2) + &x;
        let img = &Poly::var(1, 0) + &Poly::one(1);
        let expect = &(&x.pow(2) + &x.scale(&q(3, 1))) + &Poly::from_i64(1, 2);
        assert_eq!(p.substitute(&[img], 1), expect);
    }

    #[test]
    fn works_over_machine_rationals() {
        let x = Poly::<Ratio<i64>>::var(1, 0);
        let p = &x + &Poly::one(1);
        assert_eq!(p.pow(3).coeff(&Exponent(vec![1])), Ratio::from_integer(3));
        assert_eq!(p.pow(3).deriv(0), p.pow(2).scale(&Ratio::from_integer(3)));
    }
}
