//! Lie-Rinehart algebras as free A-modules with structure tables, their
//! morphisms, connections, low-degree cochains and semi-direct sums.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::{Derivation, Poly};

/// Coordinates of an element Σ cᵢ eᵢ on the chosen basis.
pub type ElemVec = Vec<Poly>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieRinehart {
    name: String,
    var_names: Vec<String>,
    labels: Vec<String>,
    /// bracket[i][j][k] = c_{ij}^k with [eᵢ, eⱼ] = Σₖ c_{ij}^k eₖ.
    bracket: Vec<Vec<ElemVec>>,
    anchor: Vec<Derivation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomFailure {
    Antisymmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize, residual: ElemVec },
    AnchorMorphism { i: usize, j: usize },
    VariableCount { what: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<AxiomFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::Antisymmetry { i, j } => write!(f, "bracket table not antisymmetric at ({i},{j})"),
            AxiomFailure::Jacobi { i, j, k, .. } => write!(f, "Jacobi identity fails on basis triple ({i},{j},{k})"),
            AxiomFailure::AnchorMorphism { i, j } => write!(f, "anchor is not a Lie morphism on basis pair ({i},{j})"),
            AxiomFailure::VariableCount { what } => write!(f, "variable count mismatch in {what}"),
        }
    }
}

impl LieRinehart {
    /// Zero bracket and zero anchor on the given basis.
    pub fn new(name: &str, var_names: &[&str], labels: &[&str]) -> Self {
        Self::from_names(
            name,
            var_names.iter().map(|s| s.to_string()).collect(),
            labels.iter().map(|s| s.to_string()).collect(),
        )
    }

    pub fn from_names(name: &str, var_names: Vec<String>, labels: Vec<String>) -> Self {
        let n = var_names.len();
        let m = labels.len();
        LieRinehart {
            name: name.to_string(),
            var_names,
            labels,
            bracket: vec![vec![vec![Poly::zero(n); m]; m]; m],
            anchor: vec![Derivation::zero(n); m],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, rank: self.rank() })
        }
    }

    /// Sets [eᵢ, eⱼ] and, antisymmetrically, [eⱼ, eᵢ].
    pub fn set_bracket(&mut self, i: usize, j: usize, coeffs: ElemVec) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if coeffs.len() != self.rank() {
            return Err(Error::Shape(format!("bracket value needs {} coordinates", self.rank())));
        }
        if let Some(c) = coeffs.iter().find(|c| c.nvars() != self.nvars()) {
            return Err(Error::VarMismatch(c.nvars(), self.nvars()));
        }
        if i == j {
            if coeffs.iter().any(|c| !c.is_zero()) {
                return Err(Error::Precondition(format!("[{0}, {0}] must vanish", self.labels[i])));
            }
            return Ok(());
        }
        self.bracket[j][i] = coeffs.iter().map(|c| -c).collect();
        self.bracket[i][j] = coeffs;
        Ok(())
    }

    pub fn with_bracket(mut self, i: usize, j: usize, coeffs: ElemVec) -> Self {
        self.set_bracket(i, j, coeffs).expect("bracket entry");
        self
    }

    pub fn set_anchor(&mut self, i: usize, d: Derivation) -> Result<()> {
        self.check_index(i)?;
        if d.nvars() != self.nvars() {
            return Err(Error::VarMismatch(d.nvars(), self.nvars()));
        }
        self.anchor[i] = d;
        Ok(())
    }

    pub fn with_anchor(mut self, i: usize, d: Derivation) -> Self {
        self.set_anchor(i, d).expect("anchor entry");
        self
    }

    pub fn bracket_coeffs(&self, i: usize, j: usize) -> &ElemVec {
        &self.bracket[i][j]
    }

    pub fn anchor(&self, i: usize) -> &Derivation {
        &self.anchor[i]
    }

    pub fn has_zero_anchor(&self) -> bool {
        self.anchor.iter().all(Derivation::is_zero)
    }

    pub fn zero_vec(&self) -> ElemVec {
        vec![Poly::zero(self.nvars()); self.rank()]
    }

    pub fn basis_vec(&self, i: usize) -> ElemVec {
        let mut v = self.zero_vec();
        v[i] = Poly::one(self.nvars());
        v
    }

    /// ω(Σ aᵢeᵢ) = Σ aᵢ ω(eᵢ).
    pub fn anchor_of(&self, u: &[Poly]) -> Derivation {
        let mut d = Derivation::zero(self.nvars());
        for (a, om) in u.iter().zip(&self.anchor) {
            if !a.is_zero() {
                d = d.add(&om.scale(a));
            }
        }
        d
    }

    /// Bracket of arbitrary elements, extended by antisymmetry and the Leibniz rule.
    pub fn bracket_of(&self, u: &[Poly], v: &[Poly]) -> ElemVec {
        let m = self.rank();
        let mut out = self.zero_vec();
        for i in 0..m {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for k in 0..m {
                    let c = &self.bracket[i][j][k];
                    if !c.is_zero() {
                        out[k] += &(&uv * c);
                    }
                }
                out[j] += &(&u[i] * &self.anchor[i].apply(&v[j]));
                out[i] -= &(&v[j] * &self.anchor[j].apply(&u[i]));
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let m = self.rank();
        if self.bracket.iter().flatten().flatten().any(|c| c.nvars() != self.nvars())
            || self.anchor.iter().any(|d| d.nvars() != self.nvars())
        {
            failures.push(AxiomFailure::VariableCount { what: self.name.clone() });
            return ValidationReport { failures };
        }
        for i in 0..m {
            for j in 0..m {
                let sum: Vec<Poly> =
                    self.bracket[i][j].iter().zip(&self.bracket[j][i]).map(|(a, b)| a + b).collect();
                if sum.iter().any(|c| !c.is_zero()) {
                    failures.push(AxiomFailure::Antisymmetry { i, j });
                }
            }
        }
        for i in 0..m {
            for j in (i + 1)..m {
                for k in (j + 1)..m {
                    let r = self.jacobiator(&self.basis_vec(i), &self.basis_vec(j), &self.basis_vec(k));
                    if r.iter().any(|c| !c.is_zero()) {
                        failures.push(AxiomFailure::Jacobi { i, j, k, residual: r });
                    }
                }
            }
        }
        for i in 0..m {
            for j in (i + 1)..m {
                let lhs = self.anchor_of(&self.bracket[i][j]);
                let rhs = self.anchor[i].bracket(&self.anchor[j]).expect("same base");
                if lhs != rhs {
                    failures.push(AxiomFailure::AnchorMorphism { i, j });
                }
            }
        }
        ValidationReport { failures }
    }

    /// [u,[v,w]] + [v,[w,u]] + [w,[u,v]].
    pub fn jacobiator(&self, u: &[Poly], v: &[Poly], w: &[Poly]) -> ElemVec {
        let a = self.bracket_of(u, &self.bracket_of(v, w));
        let b = self.bracket_of(v, &self.bracket_of(w, u));
        let c = self.bracket_of(w, &self.bracket_of(u, v));
        a.iter().zip(&b).zip(&c).map(|((x, y), z)| &(x + y) + z).collect()
    }

    /// Copy with a new name and relabelled basis in the given order:
    /// new generator k is old generator `order[k]`.
    pub fn reordered(&self, name: &str, order: &[usize]) -> Result<Self> {
        let m = self.rank();
        let mut seen = vec![false; m];
        if order.len() != m || order.iter().any(|&o| o >= m || std::mem::replace(&mut seen[o], true)) {
            return Err(Error::Shape("order must be a permutation of the basis".into()));
        }
        let mut inv = vec![0; m];
        for (k, &o) in order.iter().enumerate() {
            inv[o] = k;
        }
        let labels = order.iter().map(|&o| self.labels[o].clone()).collect();
        let mut out = Self::from_names(name, self.var_names.clone(), labels);
        for a in 0..m {
            for b in 0..m {
                let old = &self.bracket[order[a]][order[b]];
                let mut v = self.zero_vec();
                for (k, c) in old.iter().enumerate() {
                    v[inv[k]] = c.clone();
                }
                out.bracket[a][b] = v;
            }
            out.anchor[a] = self.anchor[order[a]].clone();
        }
        Ok(out)
    }
}

/// Certification flags of an A-linear map between Lie-Rinehart algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Certification {
    pub lie: bool,
    pub anchor: bool,
}

/// A-linear map on bases; flags are recomputed at construction.
#[derive(Clone, Debug)]
pub struct LraMorphism {
    name: String,
    source: Arc<LieRinehart>,
    target: Arc<LieRinehart>,
    images: Vec<ElemVec>,
    cert: Certification,
}

impl LraMorphism {
    pub fn new(name: &str, source: Arc<LieRinehart>, target: Arc<LieRinehart>, images: Vec<ElemVec>) -> Result<Self> {
        if source.nvars() != target.nvars() {
            return Err(Error::VarMismatch(source.nvars(), target.nvars()));
        }
        if images.len() != source.rank() || images.iter().any(|v| v.len() != target.rank()) {
            return Err(Error::Shape(format!(
                "morphism {name} needs a {}x{} matrix",
                source.rank(),
                target.rank()
            )));
        }
        if let Some(c) = images.iter().flatten().find(|c| c.nvars() != source.nvars()) {
            return Err(Error::VarMismatch(c.nvars(), source.nvars()));
        }
        let mut f = LraMorphism {
            name: name.to_string(),
            source,
            target,
            images,
            cert: Certification { lie: false, anchor: false },
        };
        f.cert = f.recertify();
        Ok(f)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<LieRinehart> {
        &self.source
    }

    pub fn target(&self) -> &Arc<LieRinehart> {
        &self.target
    }

    pub fn images(&self) -> &[ElemVec] {
        &self.images
    }

    pub fn certification(&self) -> Certification {
        self.cert
    }

    pub fn is_lra_morphism(&self) -> bool {
        self.cert.lie && self.cert.anchor
    }

    pub fn apply(&self, u: &[Poly]) -> ElemVec {
        let mut out = self.target.zero_vec();
        for (a, img) in u.iter().zip(&self.images) {
            if a.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(img) {
                *o += &(a * c);
            }
        }
        out
    }

    pub fn recertify(&self) -> Certification {
        let (s, t) = (&*self.source, &*self.target);
        let m = s.rank();
        let mut lie = true;
        for i in 0..m {
            for j in (i + 1)..m {
                let lhs = self.apply(s.bracket_coeffs(i, j));
                let rhs = t.bracket_of(&self.images[i], &self.images[j]);
                lie &= lhs == rhs;
            }
        }
        let anchor = (0..m).all(|i| &t.anchor_of(&self.images[i]) == s.anchor(i));
        Certification { lie, anchor }
    }

    pub fn compose(&self, after: &LraMorphism) -> Result<LraMorphism> {
        if !Arc::ptr_eq(&self.target, &after.source) && *self.target != *after.source {
            return Err(Error::Shape("composition of non-matching morphisms".into()));
        }
        let images = self.images.iter().map(|v| after.apply(v)).collect();
        LraMorphism::new(
            &format!("{}∘{}", after.name, self.name),
            self.source.clone(),
            after.target.clone(),
            images,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingClass {
    NotASection,
    ALinearSection,
    LieRinehartSection,
}

/// Classifies γ: 𝔥 → 𝔤 against π: 𝔤 → 𝔥.
pub fn check_splitting(pi: &LraMorphism, gamma: &LraMorphism) -> Result<SplittingClass> {
    if *gamma.source != *pi.target || *gamma.target != *pi.source {
        return Err(Error::Shape("γ must go from the target of π to its source".into()));
    }
    let h = &pi.target;
    for i in 0..h.rank() {
        if pi.apply(&gamma.images[i]) != h.basis_vec(i) {
            return Ok(SplittingClass::NotASection);
        }
    }
    Ok(if gamma.is_lra_morphism() {
        SplittingClass::LieRinehartSection
    } else {
        SplittingClass::ALinearSection
    })
}

/// Left (A, 𝔥)-connection on the free module Aʳ:
/// ∇_{Xᵢ}(Σ nₖ fₖ) = Σ Xᵢ(nₖ) fₖ + Σ nₖ Σ_l M_i[l][k] f_l.
#[derive(Clone, Debug)]
pub struct Connection {
    h: Arc<LieRinehart>,
    rank: usize,
    mats: Vec<Vec<Vec<Poly>>>,
}

impl Connection {
    pub fn new(h: Arc<LieRinehart>, rank: usize, mats: Vec<Vec<Vec<Poly>>>) -> Result<Self> {
        if mats.len() != h.rank() || mats.iter().any(|m| m.len() != rank || m.iter().any(|r| r.len() != rank)) {
            return Err(Error::Shape(format!("connection needs {} matrices of size {rank}x{rank}", h.rank())));
        }
        if let Some(c) = mats.iter().flatten().flatten().find(|c| c.nvars() != h.nvars()) {
            return Err(Error::VarMismatch(c.nvars(), h.nvars()));
        }
        Ok(Connection { h, rank, mats })
    }

    pub fn zero(h: Arc<LieRinehart>, rank: usize) -> Self {
        let n = h.nvars();
        let mats = vec![vec![vec![Poly::zero(n); rank]; rank]; h.rank()];
        Connection { h, rank, mats }
    }

    pub fn acting(&self) -> &Arc<LieRinehart> {
        &self.h
    }

    pub fn module_rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self, i: usize) -> &Vec<Vec<Poly>> {
        &self.mats[i]
    }

    /// ∇_X n for X = Σ xᵢ Xᵢ.
    pub fn apply(&self, x: &[Poly], n: &[Poly]) -> Vec<Poly> {
        let mut out = vec![Poly::zero(self.h.nvars()); self.rank];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let d = self.h.anchor(i);
            for k in 0..self.rank {
                if n[k].is_zero() {
                    continue;
                }
                out[k] += &(xi * &d.apply(&n[k]));
                for l in 0..self.rank {
                    let c = &self.mats[i][l][k];
                    if !c.is_zero() {
                        out[l] += &(&(xi * &n[k]) * c);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, k: usize) -> Vec<Poly> {
        let n = self.h.nvars();
        let mut v = vec![Poly::zero(n); self.rank];
        v[k] = Poly::one(n);
        v
    }

    /// Ω(Xᵢ, Xⱼ) as an r×r matrix (column k is Ω applied to fₖ).
    pub fn curvature(&self, i: usize, j: usize) -> Result<Vec<Vec<Poly>>> {
        let m = self.h.rank();
        if i >= m || j >= m {
            return Err(Error::IndexOutOfRange { index: i.max(j), rank: m });
        }
        let (xi, xj) = (self.h.basis_vec(i), self.h.basis_vec(j));
        let br = self.h.bracket_of(&xi, &xj);
        let mut cols = Vec::new();
        for k in 0..self.rank {
            let f = self.unit(k);
            let a = self.apply(&xi, &self.apply(&xj, &f));
            let b = self.apply(&xj, &self.apply(&xi, &f));
            let c = self.apply(&br, &f);
            cols.push(a.iter().zip(&b).zip(&c).map(|((p, q), r)| &(p - q) - r).collect::<Vec<_>>());
        }
        Ok((0..self.rank).map(|l| (0..self.rank).map(|k| cols[k][l].clone()).collect()).collect())
    }

    pub fn is_flat(&self) -> bool {
        let m = self.h.rank();
        (0..m).all(|i| {
            (i + 1..m).all(|j| self.curvature(i, j).unwrap().iter().flatten().all(Poly::is_zero))
        })
    }

    /// ∇_X [a, b] = [∇_X a, b] + [a, ∇_X b] on basis elements of the A-Lie algebra 𝔫.
    pub fn acts_by_derivations(&self, n: &LieRinehart) -> bool {
        let m = self.h.rank();
        (0..m).all(|i| {
            let x = self.h.basis_vec(i);
            (0..n.rank()).all(|a| {
                (0..n.rank()).all(|b| {
                    let (ea, eb) = (n.basis_vec(a), n.basis_vec(b));
                    let lhs = self.apply(&x, &n.bracket_of(&ea, &eb));
                    let r1 = n.bracket_of(&self.apply(&x, &ea), &eb);
                    let r2 = n.bracket_of(&ea, &self.apply(&x, &eb));
                    lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (p, q))| *l == p + q)
                })
            })
        })
    }
}

/// Alternating A-multilinear k-form on 𝔥 with values in Aʳ, stored on
/// strictly increasing basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    h_rank: usize,
    nvars: usize,
    module_rank: usize,
    values: BTreeMap<Vec<usize>, Vec<Poly>>,
}

/// A 2-form τ ∈ Hom_A(Λ²𝔥, 𝔫).
pub type LieCocycle = Cochain;

impl Cochain {
    pub fn zero(degree: usize, h: &LieRinehart, module_rank: usize) -> Self {
        Cochain { degree, h_rank: h.rank(), nvars: h.nvars(), module_rank, values: BTreeMap::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module_rank(&self) -> usize {
        self.module_rank
    }

    /// Sets the value on a basis tuple (any order; sign adjusted).
    pub fn set(&mut self, idx: &[usize], value: Vec<Poly>) -> Result<()> {
        if idx.len() != self.degree || value.len() != self.module_rank {
            return Err(Error::Shape("cochain entry shape".into()));
        }
        if idx.iter().any(|&i| i >= self.h_rank) {
            return Err(Error::IndexOutOfRange { index: *idx.iter().max().unwrap(), rank: self.h_rank });
        }
        let (sorted, sign) = sort_with_sign(idx);
        let Some(sign) = sign else {
            return if value.iter().all(Poly::is_zero) {
                Ok(())
            } else {
                Err(Error::Precondition("alternating form must vanish on repeated arguments".into()))
            };
        };
        let v: Vec<Poly> = if sign > 0 { value } else { value.iter().map(|p| -p).collect() };
        self.values.insert(sorted, v);
        Ok(())
    }

    pub fn with(mut self, idx: &[usize], value: Vec<Poly>) -> Self {
        self.set(idx, value).expect("cochain entry");
        self
    }

    pub fn on_basis(&self, idx: &[usize]) -> Vec<Poly> {
        let zero = vec![Poly::zero(self.nvars); self.module_rank];
        let (sorted, sign) = sort_with_sign(idx);
        match (sign, self.values.get(&sorted)) {
            (Some(s), Some(v)) => {
                if s > 0 {
                    v.clone()
                } else {
                    v.iter().map(|p| -p).collect()
                }
            }
            _ => zero,
        }
    }

    /// Value on arbitrary elements by multilinear expansion.
    pub fn eval(&self, args: &[ElemVec]) -> Vec<Poly> {
        let mut out = vec![Poly::zero(self.nvars); self.module_rank];
        let mut idx = Vec::with_capacity(args.len());
        self.expand(args, &mut idx, Poly::one(self.nvars), &mut out);
        out
    }

    fn expand(&self, args: &[ElemVec], idx: &mut Vec<usize>, coef: Poly, out: &mut [Poly]) {
        if idx.len() == args.len() {
            for (o, v) in out.iter_mut().zip(self.on_basis(idx)) {
                *o += &(&coef * &v);
            }
            return;
        }
        for (i, c) in args[idx.len()].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            idx.push(i);
            self.expand(args, idx, &coef * c, out);
            idx.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().flatten().all(Poly::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Vec<Poly>)> {
        self.values.iter()
    }
}

/// (sorted tuple, sign) or sign `None` when an index repeats.
fn sort_with_sign(idx: &[usize]) -> (Vec<usize>, Option<i32>) {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    let repeated = v.windows(2).any(|w| w[0] == w[1]);
    (v, (!repeated).then_some(sign))
}

/// Exterior covariant derivative Dα for cochains of degree ≤ 2.
pub fn exterior_covariant_derivative(alpha: &Cochain, nabla: &Connection) -> Result<Cochain> {
    let h = nabla.acting();
    let k = alpha.degree;
    if k > 2 {
        return Err(Error::Unsupported(format!("exterior covariant derivative of a {k}-cochain")));
    }
    if alpha.module_rank != nabla.module_rank() || alpha.h_rank != h.rank() {
        return Err(Error::Shape("cochain and connection do not match".into()));
    }
    let mut out = Cochain::zero(k + 1, h, alpha.module_rank);
    for tuple in increasing_tuples(h.rank(), k + 1) {
        let xs: Vec<ElemVec> = tuple.iter().map(|&i| h.basis_vec(i)).collect();
        let mut total = vec![Poly::zero(h.nvars()); alpha.module_rank];
        for i in 0..=k {
            let rest: Vec<ElemVec> = xs.iter().enumerate().filter(|&(p, _)| p != i).map(|(_, x)| x.clone()).collect();
            let term = nabla.apply(&xs[i], &alpha.eval(&rest));
            add_signed(&mut total, &term, i % 2 == 0);
        }
        for i in 0..=k {
            for j in (i + 1)..=k {
                let mut args = vec![h.bracket_of(&xs[i], &xs[j])];
                args.extend(xs.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, x)| x.clone()));
                // (−1)^{i+j} with 1-based positions equals (−1)^{i+j} with 0-based ones
                add_signed(&mut total, &alpha.eval(&args), (i + j) % 2 == 0);
            }
        }
        out.values.insert(tuple, total);
    }
    out.values.retain(|_, v| v.iter().any(|p| !p.is_zero()));
    Ok(out)
}

fn add_signed(total: &mut [Poly], term: &[Poly], positive: bool) {
    for (t, v) in total.iter_mut().zip(term) {
        if positive {
            *t += v;
        } else {
            *t -= v;
        }
    }
}

fn increasing_tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    crate::combinat::monomials_of_degree(m, k)
        .into_iter()
        .filter(|t| t.windows(2).all(|w| w[0] < w[1]))
        .collect()
}

/// 𝔫 ⋊_τ 𝔥 on the basis (𝔫 basis, 𝔥 basis), after checking Dτ = 0 and Ω = [τ, −].
pub fn curved_semidirect_sum(
    name: &str,
    n: &LieRinehart,
    nabla: &Connection,
    tau: &LieCocycle,
) -> Result<LieRinehart> {
    let h = nabla.acting().clone();
    if !n.has_zero_anchor() {
        return Err(Error::Precondition("𝔫 must have zero anchor".into()));
    }
    if n.nvars() != h.nvars() || nabla.module_rank() != n.rank() || tau.module_rank != n.rank() || tau.degree != 2 {
        return Err(Error::Shape("𝔫, ∇ and τ do not fit together".into()));
    }
    if !nabla.acts_by_derivations(n) {
        return Err(Error::Precondition("∇ does not act by derivations of 𝔫".into()));
    }
    if !exterior_covariant_derivative(tau, nabla)?.is_zero() {
        return Err(Error::Precondition("Dτ ≠ 0".into()));
    }
    for i in 0..h.rank() {
        for j in (i + 1)..h.rank() {
            let omega = nabla.curvature(i, j)?;
            let t = tau.on_basis(&[i, j]);
            for k in 0..n.rank() {
                let col: Vec<Poly> = (0..n.rank()).map(|l| omega[l][k].clone()).collect();
                if col != n.bracket_of(&t, &n.basis_vec(k)) {
                    return Err(Error::Precondition(format!(
                        "curvature Ω({}, {}) is not [τ, −]",
                        h.labels()[i],
                        h.labels()[j]
                    )));
                }
            }
        }
    }
    let (r, m) = (n.rank(), h.rank());
    let labels: Vec<String> = n.labels().iter().chain(h.labels()).cloned().collect();
    let mut g = LieRinehart::from_names(name, n.var_names().to_vec(), labels);
    let pad_n = |v: Vec<Poly>| -> Vec<Poly> {
        let mut out = v;
        out.extend(std::iter::repeat_n(Poly::zero(h.nvars()), m));
        out
    };
    for a in 0..r {
        for b in (a + 1)..r {
            g.set_bracket(a, b, pad_n(n.bracket_coeffs(a, b).clone()))?;
        }
    }
    for x in 0..m {
        for b in 0..r {
            g.set_bracket(r + x, b, pad_n(nabla.apply(&h.basis_vec(x), &n.basis_vec(b))))?;
        }
        for y in (x + 1)..m {
            let mut v = tau.on_basis(&[x, y]);
            v.extend(h.bracket_coeffs(x, y).iter().cloned());
            g.set_bracket(r + x, r + y, v)?;
        }
        g.set_anchor(r + x, h.anchor(x).clone())?;
    }
    Ok(g)
}

/// Re-extracts (∇, τ) from 𝔤 with ideal spanned by the first `r` basis vectors
/// and an A-linear section γ of the projection onto the remaining ones.
pub fn extract_connection_and_cocycle(
    g: &LieRinehart,
    h: Arc<LieRinehart>,
    r: usize,
    gamma: &LraMorphism,
) -> Result<(Connection, LieCocycle)> {
    if g.rank() != r + h.rank() {
        return Err(Error::Shape("ideal and quotient ranks do not add up".into()));
    }
    let n_part = |v: &ElemVec| -> Result<Vec<Poly>> { Ok(v[..r].to_vec()) };
    let mut mats = Vec::new();
    for x in 0..h.rank() {
        let gx = &gamma.images()[x];
        let mut mat = vec![vec![Poly::zero(g.nvars()); r]; r];
        for k in 0..r {
            let b = g.bracket_of(gx, &g.basis_vec(k));
            if b[r..].iter().any(|c| !c.is_zero()) {
                return Err(Error::Precondition("first block is not an ideal".into()));
            }
            for (l, c) in n_part(&b)?.into_iter().enumerate() {
                mat[l][k] = c;
            }
        }
        mats.push(mat);
    }
    let nabla = Connection::new(h.clone(), r, mats)?;
    let mut tau = Cochain::zero(2, &h, r);
    for x in 0..h.rank() {
        for y in (x + 1)..h.rank() {
            let lhs = g.bracket_of(&gamma.images()[x], &gamma.images()[y]);
            let rhs = gamma.apply(h.bracket_coeffs(x, y));
            let diff: Vec<Poly> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
            tau.set(&[x, y], n_part(&diff)?)?;
        }
    }
    Ok((nabla, tau))
}

/// Transformation Lie-Rinehart algebra A ⊗ 𝔥 for a Lie algebra 𝔥 over ℚ acting by derivations.
pub fn transformation_lra(name: &str, var_names: &[&str], h: &LieRinehart, action: &[Derivation]) -> Result<LieRinehart> {
    let n = var_names.len();
    if h.nvars() != 0 {
        return Err(Error::Precondition("𝔥 must be a Lie algebra over ℚ".into()));
    }
    if action.len() != h.rank() || action.iter().any(|d| d.nvars() != n) {
        return Err(Error::Shape("one derivation per basis vector of 𝔥".into()));
    }
    let embed = |v: &ElemVec| -> ElemVec { v.iter().map(|c| c.embed(n, 0)).collect() };
    for i in 0..h.rank() {
        for j in (i + 1)..h.rank() {
            let mut lhs = Derivation::zero(n);
            for (c, d) in embed(h.bracket_coeffs(i, j)).iter().zip(action) {
                lhs = lhs.add(&d.scale(c));
            }
            if lhs != action[i].bracket(&action[j])? {
                return Err(Error::Precondition(format!(
                    "action is not a Lie morphism on ({}, {})",
                    h.labels()[i],
                    h.labels()[j]
                )));
            }
        }
    }
    let labels: Vec<&str> = h.labels().iter().map(String::as_str).collect();
    let mut g = LieRinehart::new(name, var_names, &labels);
    for i in 0..h.rank() {
        for j in (i + 1)..h.rank() {
            g.set_bracket(i, j, embed(h.bracket_coeffs(i, j)))?;
        }
        g.set_anchor(i, action[i].clone())?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn c(v: i64, n: usize) -> Poly {
        Poly::from_i64(n, v)
    }

    fn heisenberg() -> LieRinehart {
        // [p, q] = c with basis (q, p, c)
        LieRinehart::new("g", &[], &["q", "p", "c"]).with_bracket(1, 0, vec![c(0, 0), c(0, 0), c(1, 0)])
    }

    fn so3_like() -> LieRinehart {
        let z = || c(0, 0);
        LieRinehart::new("so3", &[], &["e1", "e2", "e3"])
            .with_bracket(0, 1, vec![z(), z(), c(1, 0)])
            .with_bracket(0, 2, vec![z(), c(1, 0), z()])
            .with_bracket(1, 2, vec![c(1, 0), z(), z()])
    }

    #[test]
    fn heisenberg_and_abelian_are_valid() {
        assert!(heisenberg().validate().is_valid());
        assert!(LieRinehart::new("ab", &[], &["x", "y"]).validate().is_valid());
    }

    #[test]
    fn brute_force_jacobi_on_rank_three() {
        // Oracle: the single Jacobi triple computed by hand from the table.
        // [e1,[e2,e3]] + [e2,[e3,e1]] + [e3,[e1,e2]] = [e1,e1] − [e2,e2] + [e3,e3] = 0
        let g = so3_like();
        assert!(g.validate().is_valid());
        // inconsistent anchor data: e1 ↦ ∂t, e2 ↦ t∂t, e3 ↦ 0 breaks ω[e1,e2] = [ω e1, ω e2]
        let t = Poly::var(1, 0);
        let z = || c(0, 1);
        let bad = LieRinehart::new("bad", &["t"], &["e1", "e2", "e3"])
            .with_bracket(0, 1, vec![z(), z(), c(1, 1)])
            .with_bracket(0, 2, vec![z(), c(1, 1), z()])
            .with_bracket(1, 2, vec![c(1, 1), z(), z()])
            .with_anchor(0, Derivation::partial(1, 0))
            .with_anchor(1, Derivation::new(vec![t]).unwrap());
        let report = bad.validate();
        assert!(report.failures.iter().any(|f| matches!(f, AxiomFailure::AnchorMorphism { .. })));
    }

    #[test]
    fn heisenberg_section_is_only_a_linear() {
        let g = Arc::new(heisenberg());
        let h = Arc::new(LieRinehart::new("h", &[], &["x", "y"]));
        let pi = LraMorphism::new(
            "pi",
            g.clone(),
            h.clone(),
            vec![vec![c(1, 0), c(0, 0)], vec![c(0, 0), c(1, 0)], vec![c(0, 0), c(0, 0)]],
        )
        .unwrap();
        let gamma = LraMorphism::new(
            "gamma",
            h.clone(),
            g.clone(),
            vec![vec![c(1, 0), c(0, 0), c(0, 0)], vec![c(0, 0), c(1, 0), c(0, 0)]],
        )
        .unwrap();
        assert!(pi.is_lra_morphism());
        assert_eq!(check_splitting(&pi, &gamma).unwrap(), SplittingClass::ALinearSection);
        let not = LraMorphism::new(
            "bad",
            h.clone(),
            g.clone(),
            vec![vec![c(0, 0), c(1, 0), c(0, 0)], vec![c(1, 0), c(0, 0), c(0, 0)]],
        )
        .unwrap();
        assert_eq!(check_splitting(&pi, &not).unwrap(), SplittingClass::NotASection);
    }

    #[test]
    fn curvature_of_matrix_connection() {
        // ∇_x = E₁₂, ∇_y = E₂₁ on ℚ²: Ω(x, y) = E₁₁ − E₂₂
        let h = Arc::new(LieRinehart::new("h", &[], &["x", "y"]));
        let e12 = vec![vec![c(0, 0), c(1, 0)], vec![c(0, 0), c(0, 0)]];
        let e21 = vec![vec![c(0, 0), c(0, 0)], vec![c(1, 0), c(0, 0)]];
        let nabla = Connection::new(h, 2, vec![e12, e21]).unwrap();
        let omega = nabla.curvature(0, 1).unwrap();
        assert_eq!(omega, vec![vec![c(1, 0), c(0, 0)], vec![c(0, 0), c(-1, 0)]]);
        assert_eq!(nabla.curvature(1, 0).unwrap(), vec![vec![c(-1, 0), c(0, 0)], vec![c(0, 0), c(1, 0)]]);
        assert!(nabla.curvature(0, 5).is_err());
    }

    #[test]
    fn flat_connection_squares_to_zero_on_zero_cochains() {
        // 𝔥 = ℚ∂t over ℚ[t] acting on A by d/dt (M = 0)
        let h = Arc::new(LieRinehart::new("h", &["t"], &["X"]).with_anchor(0, Derivation::partial(1, 0)));
        let nabla = Connection::zero(h.clone(), 1);
        assert!(nabla.is_flat());
        let t = Poly::var(1, 0);
        let alpha = Cochain::zero(0, &h, 1).with(&[], vec![t.pow(3)]);
        let d1 = exterior_covariant_derivative(&alpha, &nabla).unwrap();
        assert_eq!(d1.on_basis(&[0]), vec![t.pow(2).scale(&Rational::from_integer(3.into()))]);
        assert!(exterior_covariant_derivative(&d1, &nabla).unwrap().is_zero());
    }

    #[test]
    fn cochain_differential_on_rank_three() {
        let g = Arc::new(so3_like());
        let nabla = Connection::zero(g.clone(), 1);
        // with this bracket every [eᵢ,eⱼ] is ±e_k, so Dτ(e1,e2,e3) only sees τ(e_k, e_k) = 0
        let tau = Cochain::zero(2, &g, 1)
            .with(&[0, 1], vec![c(1, 0)])
            .with(&[0, 2], vec![c(-1, 0)])
            .with(&[1, 2], vec![c(1, 0)]);
        assert!(exterior_covariant_derivative(&tau, &nabla).unwrap().is_zero());
        // [e1,e2] = e1 only; τ(e1,e3) = 1: Dτ(e1,e2,e3) = −τ([e1,e2],e3) = −1
        let b = Arc::new(LieRinehart::new("b", &[], &["e1", "e2", "e3"]).with_bracket(
            0,
            1,
            vec![c(1, 0), c(0, 0), c(0, 0)],
        ));
        let tau = Cochain::zero(2, &b, 1).with(&[0, 2], vec![c(1, 0)]);
        let d = exterior_covariant_derivative(&tau, &Connection::zero(b.clone(), 1)).unwrap();
        assert_eq!(d.on_basis(&[0, 1, 2]), vec![c(-1, 0)]);
        let three = Cochain::zero(3, &b, 1);
        assert!(matches!(
            exterior_covariant_derivative(&three, &Connection::zero(b, 1)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn central_extension_is_heisenberg_type() {
        let n = LieRinehart::new("n", &[], &["c"]);
        let h = Arc::new(LieRinehart::new("h", &[], &["x", "y"]));
        let nabla = Connection::zero(h.clone(), 1);
        let tau = Cochain::zero(2, &h, 1).with(&[0, 1], vec![c(1, 0)]);
        let g = curved_semidirect_sum("g", &n, &nabla, &tau).unwrap();
        assert!(g.validate().is_valid());
        assert_eq!(g.bracket_coeffs(1, 2), &vec![c(1, 0), c(0, 0), c(0, 0)]);
        let gamma = LraMorphism::new(
            "gamma",
            h.clone(),
            Arc::new(g.clone()),
            vec![vec![c(0, 0), c(1, 0), c(0, 0)], vec![c(0, 0), c(0, 0), c(1, 0)]],
        )
        .unwrap();
        let (nab2, tau2) = extract_connection_and_cocycle(&g, h, 1, &gamma).unwrap();
        assert_eq!(tau2, tau);
        assert!(nab2.is_flat());
    }

    #[test]
    fn transformation_algebra_bracket() {
        // A = ℚ[t], h = ℚv, v♯ = d/dt: [f⊗v, g⊗v] = (f g′ − g f′)⊗v
        let h = LieRinehart::new("h", &[], &["v"]);
        let g = transformation_lra("g", &["t"], &h, &[Derivation::partial(1, 0)]).unwrap();
        assert!(g.validate().is_valid());
        let t = Poly::var(1, 0);
        let f = vec![t.pow(2)];
        let k = vec![&t + &Poly::one(1)];
        let expect = &(&f[0] * &k[0].deriv(0)) - &(&k[0] * &f[0].deriv(0));
        assert_eq!(g.bracket_of(&f, &k), vec![expect]);
    }
}
