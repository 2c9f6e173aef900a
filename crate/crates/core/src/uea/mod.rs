//! PBW engine for U_A(𝔤).
//!
//! Elements are finite sums p·e_{i₁}⋯e_{i_k} with i₁ ≤ … ≤ i_k and left
//! coefficients p ∈ A. Products are reduced with the rules
//! e_j·a → a·e_j + ω(e_j)(a) and e_j·e_i → e_i·e_j + [e_j, e_i] (j > i),
//! always rewriting the leftmost inversion first.

mod coalgebra;
mod display;
mod tensor;

pub use coalgebra::{
    coproduct, counit_left, counit_right, delta_left, delta_right, flip, iterated_coproduct, translation,
    Tensor3,
};
pub use display::{elem_string, mono_string, tensor_string};
pub(crate) use display::{join_signed, signed_term};
pub use tensor::{Tensor, TensorMode};

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::lie_rinehart::{ElemVec, LieRinehart, LraMorphism};
use crate::Poly;

/// Sorted generator indices; the empty monomial is the unit.
pub type Mono = Vec<usize>;

/// Canonical element: PBW monomial ↦ left coefficient. Never stores zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Elem {
    nvars: usize,
    terms: BTreeMap<Mono, Poly>,
}

impl Elem {
    pub fn zero(nvars: usize) -> Self {
        Elem { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::term(p, Vec::new())
    }

    pub fn mono(nvars: usize, m: Mono) -> Self {
        Self::term(Poly::one(nvars), m)
    }

    /// p·m; `m` is sorted first.
    pub fn term(p: Poly, mut m: Mono) -> Self {
        m.sort_unstable();
        let mut e = Elem::zero(p.nvars());
        e.add_term(m, p);
        e
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[usize]) -> Poly {
        self.terms.get(m).cloned().unwrap_or_else(|| Poly::zero(self.nvars))
    }

    /// Length of the longest monomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn add_term(&mut self, m: Mono, p: Poly) {
        debug_assert!(m.windows(2).all(|w| w[0] <= w[1]), "unsorted monomial");
        if p.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(c) => {
                *c += &p;
                if c.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, p);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Elem, a: &Poly) {
        if a.is_zero() {
            return;
        }
        for (m, p) in &other.terms {
            self.add_term(m.clone(), a * p);
        }
    }

    /// a·u, multiplication by a base element on the left.
    pub fn left_scale(&self, a: &Poly) -> Elem {
        let mut out = Elem::zero(self.nvars);
        out.add_scaled(self, a);
        out
    }

    /// Drops monomials longer than `k`.
    pub fn truncate(&self, k: usize) -> Elem {
        let terms = self.terms.iter().filter(|(m, _)| m.len() <= k).map(|(m, p)| (m.clone(), p.clone())).collect();
        Elem { nvars: self.nvars, terms }
    }

    /// The part spanned by monomials of length exactly `k`.
    pub fn homogeneous(&self, k: usize) -> Elem {
        let terms = self.terms.iter().filter(|(m, _)| m.len() == k).map(|(m, p)| (m.clone(), p.clone())).collect();
        Elem { nvars: self.nvars, terms }
    }

    /// ε(u): the coefficient of the empty monomial.
    pub fn counit(&self) -> Poly {
        self.coeff(&[])
    }
}

impl Add for &Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        let mut out = self.clone();
        for (m, p) in &rhs.terms {
            out.add_term(m.clone(), p.clone());
        }
        out
    }
}

impl Sub for &Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        let mut out = self.clone();
        for (m, p) in &rhs.terms {
            out.add_term(m.clone(), -p);
        }
        out
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem { nvars: self.nvars, terms: self.terms.iter().map(|(m, p)| (m.clone(), -p)).collect() }
    }
}

impl Add for Elem {
    type Output = Elem;
    fn add(self, rhs: Elem) -> Elem {
        &self + &rhs
    }
}

impl Sub for Elem {
    type Output = Elem;
    fn sub(self, rhs: Elem) -> Elem {
        &self - &rhs
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        -&self
    }
}

/// A word factor for [`Uea::normal_form`].
#[derive(Clone, Debug)]
pub enum Factor {
    Gen(usize),
    Coeff(Poly),
}

/// Elements with right coefficients: u = Σ m·aₘ.
pub type RightForm = BTreeMap<Mono, Poly>;

/// Universal enveloping algebra U_A(𝔤), optionally twisted by a degree-zero
/// term: e_j·e_i → e_i·e_j + [e_j, e_i] + τ_{ji}.
pub struct Uea {
    lra: Arc<LieRinehart>,
    twist: Option<Vec<Vec<Poly>>>,
    gen_mono: Memo<(usize, Mono), Elem>,
    mono_poly: Memo<(Mono, Poly), Elem>,
    mono_mono: Memo<(Mono, Mono), Elem>,
    trans: Memo<Mono, Tensor>,
}

impl std::fmt::Debug for Uea {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Uea").field("lra", &self.lra.name()).field("twisted", &self.twist.is_some()).finish()
    }
}

impl Uea {
    pub fn new(lra: Arc<LieRinehart>) -> Arc<Self> {
        Arc::new(Self::build(lra, None))
    }

    /// Twisted enveloping algebra; `twist[j][i]` is added when e_j passes e_i.
    pub fn with_twist(lra: Arc<LieRinehart>, twist: Vec<Vec<Poly>>) -> Result<Arc<Self>> {
        let m = lra.rank();
        if twist.len() != m || twist.iter().any(|r| r.len() != m) {
            return Err(Error::Shape(format!("twist must be {m}x{m}")));
        }
        for i in 0..m {
            for j in 0..m {
                if twist[i][j].nvars() != lra.nvars() {
                    return Err(Error::VarMismatch(twist[i][j].nvars(), lra.nvars()));
                }
                if twist[i][j] != -&twist[j][i] {
                    return Err(Error::Precondition(format!("twist not antisymmetric at ({i},{j})")));
                }
            }
        }
        Ok(Arc::new(Self::build(lra, Some(twist))))
    }

    fn build(lra: Arc<LieRinehart>, twist: Option<Vec<Vec<Poly>>>) -> Self {
        Uea {
            lra,
            twist,
            gen_mono: Memo::new(),
            mono_poly: Memo::new(),
            mono_mono: Memo::new(),
            trans: Memo::new(),
        }
    }

    pub fn lra(&self) -> &Arc<LieRinehart> {
        &self.lra
    }

    pub fn rank(&self) -> usize {
        self.lra.rank()
    }

    pub fn nvars(&self) -> usize {
        self.lra.nvars()
    }

    pub fn is_twisted(&self) -> bool {
        self.twist.is_some()
    }

    pub fn zero(&self) -> Elem {
        Elem::zero(self.nvars())
    }

    pub fn one(&self) -> Elem {
        Elem::one(self.nvars())
    }

    pub fn gen(&self, i: usize) -> Elem {
        Elem::mono(self.nvars(), vec![i])
    }

    pub fn mono(&self, m: &[usize]) -> Elem {
        Elem::mono(self.nvars(), m.to_vec())
    }

    pub fn base(&self, a: &Poly) -> Elem {
        Elem::from_poly(a.clone())
    }

    /// Σ cₖ eₖ.
    pub fn from_vec(&self, v: &[Poly]) -> Elem {
        let mut out = self.zero();
        for (k, c) in v.iter().enumerate() {
            out.add_term(vec![k], c.clone());
        }
        out
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank() });
        }
        Ok(())
    }

    /// e_j · m for a sorted monomial m.
    pub fn gen_times_mono(&self, j: usize, m: &[usize]) -> Elem {
        if m.first().is_none_or(|&i| j <= i) {
            let mut w = Vec::with_capacity(m.len() + 1);
            w.push(j);
            w.extend_from_slice(m);
            return Elem::mono(self.nvars(), w);
        }
        let key = (j, m.to_vec());
        if let Some(v) = self.gen_mono.get(&key) {
            return v;
        }
        let i = m[0];
        let rest = &m[1..];
        let inner = self.gen_times_mono(j, rest);
        let mut out = self.mul_gen_left(i, &inner);
        for (k, c) in self.lra.bracket_coeffs(j, i).iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&self.gen_times_mono(k, rest), c);
            }
        }
        if let Some(t) = &self.twist {
            if !t[j][i].is_zero() {
                out.add_term(rest.to_vec(), t[j][i].clone());
            }
        }
        self.gen_mono.put(key, out)
    }

    /// e_i · u.
    pub fn mul_gen_left(&self, i: usize, u: &Elem) -> Elem {
        let d = self.lra.anchor(i);
        let mut out = self.zero();
        for (n, q) in &u.terms {
            out.add_scaled(&self.gen_times_mono(i, n), q);
            let dq = d.apply(q);
            if !dq.is_zero() {
                out.add_term(n.clone(), dq);
            }
        }
        out
    }

    /// m · a as a left-coefficient element.
    pub fn mono_times_poly(&self, m: &[usize], a: &Poly) -> Elem {
        if m.is_empty() || a.constant_value().is_some() {
            return Elem::term(a.clone(), m.to_vec());
        }
        let key = (m.to_vec(), a.clone());
        if let Some(v) = self.mono_poly.get(&key) {
            return v;
        }
        let inner = self.mono_times_poly(&m[1..], a);
        let out = self.mul_gen_left(m[0], &inner);
        self.mono_poly.put(key, out)
    }

    pub fn mono_times_mono(&self, m: &[usize], n: &[usize]) -> Elem {
        match m.len() {
            0 => return self.mono(n),
            1 => return self.gen_times_mono(m[0], n),
            _ => {}
        }
        let key = (m.to_vec(), n.to_vec());
        if let Some(v) = self.mono_mono.get(&key) {
            return v;
        }
        let inner = self.mono_times_mono(&m[1..], n);
        let out = self.mul_gen_left(m[0], &inner);
        self.mono_mono.put(key, out)
    }

    pub fn mul(&self, u: &Elem, v: &Elem) -> Elem {
        let mut out = self.zero();
        for (m, p) in &u.terms {
            let mut acc = self.zero();
            for (n, q) in &v.terms {
                for (k, r) in &self.mono_times_poly(m, q).terms {
                    acc.add_scaled(&self.mono_times_mono(k, n), r);
                }
            }
            out.add_scaled(&acc, p);
        }
        out
    }

    pub fn mul_all<'a>(&self, factors: impl IntoIterator<Item = &'a Elem>) -> Elem {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, u: &Elem, k: u32) -> Elem {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, u))
    }

    /// Canonical form of an arbitrary product of generators and base elements.
    pub fn normal_form(&self, word: &[Factor]) -> Result<Elem> {
        let mut acc = self.one();
        for f in word.iter().rev() {
            acc = match f {
                Factor::Gen(i) => {
                    self.check_index(*i)?;
                    self.mul_gen_left(*i, &acc)
                }
                Factor::Coeff(p) => {
                    if p.nvars() != self.nvars() {
                        return Err(Error::VarMismatch(p.nvars(), self.nvars()));
                    }
                    acc.left_scale(p)
                }
            };
        }
        Ok(acc)
    }

    /// Canonical form of the word e_{w₁}⋯e_{w_k} in arbitrary order.
    pub fn word(&self, w: &[usize]) -> Elem {
        w.iter().rev().fold(self.one(), |acc, &i| self.mul_gen_left(i, &acc))
    }

    /// ε(u·a), the left action of U on A.
    pub fn act_on_base(&self, u: &Elem, a: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars());
        for (m, p) in &u.terms {
            out += &(p * &self.mono_times_poly(m, a).counit());
        }
        out
    }

    /// Rewrites u as Σ m·aₘ by peeling off the top filtration degree.
    pub fn right_coefficient_form(&self, u: &Elem) -> RightForm {
        let mut rest = u.clone();
        let mut out = RightForm::new();
        while let Some(d) = rest.degree() {
            for (m, p) in rest.homogeneous(d).terms {
                rest = &rest - &self.mono_times_poly(&m, &p);
                out.insert(m, p);
            }
        }
        out
    }

    pub fn from_right_form(&self, r: &RightForm) -> Elem {
        let mut out = self.zero();
        for (m, a) in r {
            out = &out + &self.mono_times_poly(m, a);
        }
        out
    }
}

/// U_A(f) for a certified morphism f: 𝔤 → 𝔥.
pub struct Pushforward {
    map: LraMorphism,
    source: Arc<Uea>,
    target: Arc<Uea>,
    images: Vec<Elem>,
    memo: Memo<Mono, Elem>,
}

impl Pushforward {
    pub fn new(map: LraMorphism, source: Arc<Uea>, target: Arc<Uea>) -> Result<Self> {
        if !map.is_lra_morphism() {
            return Err(Error::Uncertified(format!("{} is not a Lie-Rinehart morphism", map.name())));
        }
        if **source.lra() != **map.source() || **target.lra() != **map.target() {
            return Err(Error::Shape(format!("{} does not match the given algebras", map.name())));
        }
        let images = map.images().iter().map(|v: &ElemVec| target.from_vec(v)).collect();
        Ok(Pushforward { map, source, target, images, memo: Memo::new() })
    }

    pub fn morphism(&self) -> &LraMorphism {
        &self.map
    }

    pub fn source(&self) -> &Arc<Uea> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Uea> {
        &self.target
    }

    pub fn apply_mono(&self, m: &[usize]) -> Elem {
        if m.len() <= 1 {
            return m.first().map_or_else(|| self.target.one(), |&i| self.images[i].clone());
        }
        if let Some(v) = self.memo.get(&m.to_vec()) {
            return v;
        }
        let tail = self.apply_mono(&m[1..]);
        let out = self.target.mul(&self.images[m[0]], &tail);
        self.memo.put(m.to_vec(), out)
    }

    pub fn apply(&self, u: &Elem) -> Elem {
        let mut out = self.target.zero();
        for (m, p) in u.terms() {
            out.add_scaled(&self.apply_mono(m), p);
        }
        out
    }
}

#[cfg(test)]
mod tests;
