//! The weak action v ⇀ b = Γ(v)₊ b Γ(v)₋ and the Hopf 2-cocycle
//! σ(v, w) = ε(Γ(v₍₂₎w₍₂₎)₊) Γ(v₍₁₎)Γ(w₍₁₎) Γ(v₍₂₎w₍₂₎)₋ of a coring section.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::kernel::{sandwich, HopfKernelContext};
use crate::combinat::monomials_up_to;
use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::pbw_maps::CoringSection;
use crate::uea::{coproduct, mono_string, translation, Elem, Mono, Uea};
use crate::{Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleKind {
    /// Evaluated from the section.
    FromSection,
    /// σ(u, v) = ε(uv).
    Trivial,
    /// The section's cocycle plus `value` on the single monomial pair.
    Perturbed { left: Mono, right: Mono, value: Elem },
}

pub struct HopfCocycle {
    ctx: Arc<HopfKernelContext>,
    section: Arc<CoringSection>,
    kind: CocycleKind,
    sigma_memo: Memo<(Mono, Mono), Elem>,
    act_memo: Memo<(Mono, Mono), Elem>,
}

impl HopfCocycle {
    pub fn new(ctx: Arc<HopfKernelContext>, section: Arc<CoringSection>) -> Self {
        Self::with_kind(ctx, section, CocycleKind::FromSection)
    }

    pub fn with_kind(ctx: Arc<HopfKernelContext>, section: Arc<CoringSection>, kind: CocycleKind) -> Self {
        HopfCocycle { ctx, section, kind, sigma_memo: Memo::new(), act_memo: Memo::new() }
    }

    pub fn ctx(&self) -> &Arc<HopfKernelContext> {
        &self.ctx
    }

    pub fn section(&self) -> &Arc<CoringSection> {
        &self.section
    }

    pub fn kind(&self) -> &CocycleKind {
        &self.kind
    }

    /// V = U_A(𝔥).
    pub fn v(&self) -> &Arc<Uea> {
        self.ctx.h()
    }

    /// U_A(𝔤), which contains B.
    pub fn g(&self) -> &Arc<Uea> {
        self.ctx.g()
    }

    pub fn sigma_mono(&self, m: &Mono, n: &Mono) -> Result<Elem> {
        let key = (m.clone(), n.clone());
        if let Some(v) = self.sigma_memo.get(&key) {
            return Ok(v);
        }
        let w = self.v().mono(n);
        let mut out = self.sigma_term(m, &w)?;
        if let CocycleKind::Perturbed { left, right, value } = &self.kind {
            if left == m && right == n {
                out = &out + value;
            }
        }
        Ok(self.sigma_memo.put(key, out))
    }

    /// σ on general elements: left A-linear in v; a non-constant coefficient
    /// in w is pushed through the formula rather than pulled out.
    pub fn sigma(&self, v: &Elem, w: &Elem) -> Result<Elem> {
        let g = self.g();
        let mut out = g.zero();
        for (m, p) in v.terms() {
            let mut inner = g.zero();
            for (n, q) in w.terms() {
                if q.constant_value().is_some() {
                    inner.add_scaled(&self.sigma_mono(m, n)?, q);
                } else {
                    let mut s = self.sigma_term(m, &Elem::term(q.clone(), n.clone()))?;
                    if let CocycleKind::Perturbed { left, right, value } = &self.kind {
                        if left == m && right == n {
                            s = &s + &value.left_scale(q);
                        }
                    }
                    inner = &inner + &s;
                }
            }
            out.add_scaled(&inner, p);
        }
        Ok(out)
    }

    /// σ(m, w) for a monomial m and a single term w, before any perturbation.
    fn sigma_term(&self, m: &Mono, w: &Elem) -> Result<Elem> {
        let (g, h) = (self.g(), self.v());
        let vm = h.mono(m);
        if self.kind == CocycleKind::Trivial {
            return Ok(g.base(&h.mul(&vm, w).counit()));
        }
        let mut out = g.zero();
        for ((a, b), mult) in coproduct(&vm).terms() {
            let ga = self.section.apply_mono(a).left_scale(mult);
            for ((c, d), q) in coproduct(w).terms() {
                let inner = g.mul(&ga, &self.section.apply_mono(c));
                let y = self.section.apply(&h.mul(&h.mono(b), &Elem::term(q.clone(), d.clone())));
                out = &out + &counit_plus_minus(g, &inner, &y);
            }
        }
        if self.kind == CocycleKind::FromSection && !self.ctx.is_member(&out) {
            let names = h.lra().labels();
            return Err(Error::NotInKernel(format!("σ({}, …) from section {}", mono_string(m, names), self.section.name())));
        }
        Ok(out)
    }

    /// v ⇀ b for a monomial v and a coefficient-free 𝔫-monomial b.
    pub fn act_mono(&self, m: &Mono, b: &Mono) -> Result<Elem> {
        if !self.ctx.is_n_mono(b) {
            return Err(Error::NotInKernel(format!("{} is not in B", mono_string(b, self.g().lra().labels()))));
        }
        let key = (m.clone(), b.clone());
        if let Some(v) = self.act_memo.get(&key) {
            return Ok(v);
        }
        let g = self.g();
        let out = if m.is_empty() {
            g.mono(b)
        } else {
            sandwich(g, &translation(g, &self.section.apply_mono(m)), &g.mono(b))
        };
        Ok(self.act_memo.put(key, out))
    }

    /// The weak action, left A-linear in v.
    pub fn act(&self, v: &Elem, b: &Elem) -> Result<Elem> {
        if !self.ctx.is_n_supported(b) {
            return Err(Error::NotInKernel("the weak action is defined on B".into()));
        }
        let g = self.g();
        let mut out = g.zero();
        for (m, p) in v.terms() {
            let mut inner = g.zero();
            for (k, c) in b.terms() {
                if c.constant_value().is_some() {
                    inner.add_scaled(&self.act_mono(m, k)?, c);
                } else {
                    let t = translation(g, &self.section.apply_mono(m));
                    inner = &inner + &sandwich(g, &t, &Elem::term(c.clone(), k.clone()));
                }
            }
            out.add_scaled(&inner, p);
        }
        Ok(out)
    }
}

/// ε(y₊)·M·y₋ = Σ_{p·k ∈ y} p·M·(−1)^{|k|}·k_rev, using the empty-left-leg
/// terms of the word-built translation map.
pub(crate) fn counit_plus_minus(g: &Uea, inner: &Elem, y: &Elem) -> Elem {
    let mut out = g.zero();
    for (k, p) in y.terms() {
        let rev: Vec<usize> = k.iter().rev().copied().collect();
        let sign = if k.len() % 2 == 0 { p.clone() } else { -p };
        out = &out + &g.mul(&inner.left_scale(&sign), &g.word(&rev));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub cases: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub degree: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| c.witness.is_some())
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, cases: 0, witness: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(what());
        }
    }

    fn done(self) -> AxiomCheck {
        AxiomCheck { name: self.name, cases: self.cases, witness: self.witness }
    }
}

fn random_coeff(rng: &mut ChaCha8Rng, nvars: usize) -> Poly {
    let c = |rng: &mut ChaCha8Rng| loop {
        let v = rng.gen_range(-3i64..=3);
        if v != 0 {
            break Rational::new(v.into(), rng.gen_range(1i64..=2).into());
        }
    };
    let mut p = Poly::constant(nvars, c(rng));
    if nvars > 0 {
        let i = rng.gen_range(0..nvars);
        p = &p + &Poly::var(nvars, i).scale(&c(rng));
    }
    p
}

/// Legs (u₍₁₎, u₍₂₎) of Δ(u) with coefficients on the second leg.
fn legs(u: &Elem) -> Vec<(Elem, Elem)> {
    coproduct(u).legs()
}

/// Checks GT1 and GT2(1)–(5) on monomial tuples of total length ≤ k, each
/// monomial carrying a random coefficient from A.
pub fn check_cocycle_axioms(c: &HopfCocycle, k: usize, seed: u64) -> Result<AxiomReport> {
    let (g, h, ctx) = (c.g(), c.v(), c.ctx());
    let n = g.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hm = monomials_up_to(h.rank(), k);
    let bm = ctx.n_monomials(k);
    let hl = h.lra().labels();
    let gl = g.lra().labels();
    let show_h = |m: &Mono| if m.is_empty() { "1".to_string() } else { mono_string(m, hl) };
    let show_b = |m: &Mono| if m.is_empty() { "1".to_string() } else { mono_string(m, gl) };

    let mut gt1u = Tally::new("GT1 unit");
    let mut gt1m = Tally::new("GT1 multiplicative");
    let mut t1 = Tally::new("GT2(1)");
    let mut t2 = Tally::new("GT2(2)");
    let mut t3 = Tally::new("GT2(3)");
    let mut t4 = Tally::new("GT2(4)");
    let mut t5 = Tally::new("GT2(5)");

    for u in &hm {
        let ue = h.mono(u).left_scale(&random_coeff(&mut rng, n));
        gt1u.record(c.act(&ue, &g.one())? == g.base(&ue.counit()), || format!("{} ⇀ 1", show_h(u)));
        let eps = g.base(&ue.counit());
        let ok = c.sigma(&h.one(), &ue)? == eps && c.sigma(&ue, &h.one())? == eps;
        t2.record(ok, || format!("σ(1, {0}) or σ({0}, 1)", show_h(u)));
    }
    for b in &bm {
        let be = g.mono(b).left_scale(&random_coeff(&mut rng, n));
        t4.record(c.act(&h.one(), &be)? == be, || format!("1 ⇀ {}", show_b(b)));
    }
    for u in &hm {
        for v in hm.iter().filter(|v| u.len() + v.len() <= k) {
            let ue = h.mono(u).left_scale(&random_coeff(&mut rng, n));
            let ve = h.mono(v).left_scale(&random_coeff(&mut rng, n));
            let a = random_coeff(&mut rng, n);
            let mut lhs = g.zero();
            for (u1, u2) in legs(&ue) {
                lhs = &lhs + &g.mul(&c.act(&u1, &g.base(&a))?, &c.sigma(&u2, &ve)?);
            }
            let rhs = c.sigma(&ue, &ve.left_scale(&a))?;
            t1.record(lhs == rhs, || format!("u = {}, v = {}", show_h(u), show_h(v)));

            for w in hm.iter().filter(|w| u.len() + v.len() + w.len() <= k) {
                let we = h.mono(w).left_scale(&random_coeff(&mut rng, n));
                let (mut lhs, mut rhs) = (g.zero(), g.zero());
                for (u1, u2) in legs(&ue) {
                    for (v1, v2) in legs(&ve) {
                        for (w1, w2) in legs(&we) {
                            let s = c.sigma(&v1, &w1)?;
                            lhs = &lhs + &g.mul(&c.act(&u1, &s)?, &c.sigma(&u2, &h.mul(&v2, &w2))?);
                        }
                        rhs = &rhs + &g.mul(&c.sigma(&u1, &v1)?, &c.sigma(&h.mul(&u2, &v2), &we)?);
                    }
                }
                t3.record(lhs == rhs, || format!("u = {}, v = {}, w = {}", show_h(u), show_h(v), show_h(w)));
            }
            for b in bm.iter().filter(|b| u.len() + v.len() + b.len() <= k) {
                let be = g.mono(b).left_scale(&random_coeff(&mut rng, n));
                let (mut lhs, mut rhs) = (g.zero(), g.zero());
                for (u1, u2) in legs(&ue) {
                    for (v1, v2) in legs(&ve) {
                        lhs = &lhs + &g.mul(&c.act(&u1, &c.act(&v1, &be)?)?, &c.sigma(&u2, &v2)?);
                        rhs = &rhs + &g.mul(&c.sigma(&u1, &v1)?, &c.act(&h.mul(&u2, &v2), &be)?);
                    }
                }
                t5.record(lhs == rhs, || format!("u = {}, v = {}, b = {}", show_h(u), show_h(v), show_b(b)));
            }
        }
        for b in &bm {
            for b2 in bm.iter().filter(|b2| u.len() + b.len() + b2.len() <= k) {
                let ue = h.mono(u).left_scale(&random_coeff(&mut rng, n));
                let be = g.mono(b).left_scale(&random_coeff(&mut rng, n));
                let be2 = g.mono(b2).left_scale(&random_coeff(&mut rng, n));
                let lhs = c.act(&ue, &g.mul(&be, &be2))?;
                let mut rhs = g.zero();
                for (u1, u2) in legs(&ue) {
                    rhs = &rhs + &g.mul(&c.act(&u1, &be)?, &c.act(&u2, &be2)?);
                }
                gt1m.record(lhs == rhs, || format!("{} ⇀ ({} {})", show_h(u), show_b(b), show_b(b2)));
            }
        }
    }
    Ok(AxiomReport { degree: k, checks: [gt1u, gt1m, t1, t2, t3, t4, t5].into_iter().map(Tally::done).collect() })
}
