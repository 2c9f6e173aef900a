//! Named bundles of golden values. Each expected value is written down by
//! hand; the actual value is recomputed by the library every time.

use std::fmt;

use super::*;
use crate::combinat::{binomial, monomials_up_to};
use crate::error::Error;
use crate::products::CrossedElement;
use crate::uea::{elem_string, Elem};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Stated in the source material.
    Paper,
    /// Immediate from the definitions.
    Trivial,
    /// Worked out by hand from the defining formulas.
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Paper => "paper",
            Provenance::Trivial => "trivial",
            Provenance::Derived => "derived",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Golden {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub provenance: Provenance,
}

impl Golden {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleBundle {
    pub name: &'static str,
    pub description: &'static str,
    pub goldens: Vec<Golden>,
}

impl ExampleBundle {
    fn new(name: &'static str, description: &'static str) -> Self {
        ExampleBundle { name, description, goldens: Vec::new() }
    }

    fn push(&mut self, label: impl Into<String>, expected: impl Into<String>, actual: Result<String>, p: Provenance) {
        let actual = actual.unwrap_or_else(|e| format!("error: {e}"));
        self.goldens.push(Golden { label: label.into(), expected: expected.into(), actual, provenance: p });
    }

    pub fn passed(&self) -> bool {
        self.goldens.iter().all(Golden::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Golden> {
        self.goldens.iter().filter(|g| !g.passed())
    }
}

const NAMES: [&str; 8] =
    ["heisenberg", "moyal", "euler", "transformation", "smash", "semidirect", "curved", "rainfog"];

pub fn bundle_names() -> &'static [&'static str] {
    &NAMES
}

pub fn bundle(name: &str) -> Result<ExampleBundle> {
    match name {
        "heisenberg" => heisenberg_bundle(),
        "moyal" => Ok(moyal_bundle()),
        "euler" => Ok(euler_bundle()),
        "transformation" => transformation_bundle(),
        "smash" => smash_bundle(),
        "semidirect" => semidirect_bundle(),
        "curved" => curved_bundle(),
        "rainfog" => rainfog_bundle(),
        _ => Err(Error::Precondition(format!("unknown example `{name}`; known: {}", NAMES.join(", ")))),
    }
}

fn show(g: &Uea, e: &Elem) -> String {
    elem_string(e, g.lra().labels(), g.lra().var_names())
}

fn show_crossed(ext: &Extension, x: &CrossedElement) -> String {
    x.to_string_with(ext.g().lra().labels(), ext.h().lra().labels(), ext.g().lra().var_names())
}

fn rep(m: usize, n: usize) -> Vec<usize> {
    vec![m; n]
}

fn heisenberg_bundle() -> Result<ExampleBundle> {
    use Provenance::*;
    let mut b = ExampleBundle::new("heisenberg", "Heisenberg algebra over abelian 𝔥 = span(X, Y) with 𝔫 = ℚC");
    let ext = heisenberg()?;
    let g = ext.g().clone();
    let ord = ext.cocycle(ordered())?;
    let sym = ext.cocycle(SectionKind::Symmetrized)?;
    let (x, y) = (0, 1);
    let expected = ["C", "2*C^2", "6*C^3", "24*C^4"];
    for n in 1..=4 {
        let v = ord.sigma_mono(&rep(y, n), &rep(x, n)).map(|e| show(&g, &e));
        b.push(format!("σ_ordered(Y^{n}, X^{n})"), expected[n - 1], v, Paper);
    }
    b.push("σ_ordered(X, Y)", "0", ord.sigma_mono(&vec![x], &vec![y]).map(|e| show(&g, &e)), Paper);
    b.push("σ_ordered(Y, X^2)", "0", ord.sigma_mono(&vec![y], &vec![x, x]).map(|e| show(&g, &e)), Paper);
    b.push("σ_sym(X, Y)", "-1/2*C", sym.sigma_mono(&vec![x], &vec![y]).map(|e| show(&g, &e)), Derived);
    b.push("σ_sym(Y, X)", "1/2*C", sym.sigma_mono(&vec![y], &vec![x]).map(|e| show(&g, &e)), Derived);

    b.push("P*Q", "Q*P + C", Ok(show(&g, &g.word(&[1, 0]))), Paper);
    let rev = ext.section(reversed())?;
    let ordsec = ext.section(ordered())?;
    b.push("Γ_ordered(X*Y)", "Q*P", Ok(show(&g, &ordsec.apply_mono(&vec![x, y]))), Derived);
    b.push("Γ_reversed(X*Y)", "Q*P + C", Ok(show(&g, &rev.apply_mono(&vec![x, y]))), Derived);
    let symsec = ext.section(SectionKind::Symmetrized)?;
    b.push("Γ_sym(X*Y)", "Q*P + 1/2*C", Ok(show(&g, &symsec.apply_mono(&vec![x, y]))), Derived);

    let ctx = ext.ctx();
    b.push("C ∈ B", "true", Ok(ctx.is_member(&g.gen(2)).to_string()), Trivial);
    b.push("Q ∈ B", "false", Ok(ctx.is_member(&g.gen(0)).to_string()), Trivial);
    let c2 = &g.mono(&[2, 2]) + &g.gen(2).left_scale(&Poly::from_i64(0, 3));
    b.push("C^2 + 3*C ∈ B", "true", Ok(ctx.is_member(&c2).to_string()), Derived);

    let cp = CrossedProduct::new(ord);
    let one_y = CrossedElement::term(Poly::one(0), vec![], vec![y]);
    let one_x = CrossedElement::term(Poly::one(0), vec![], vec![x]);
    b.push("(1 # Y)(1 # X)", "1 # X*Y + C # 1", cp.mul(&one_y, &one_x).map(|e| show_crossed(&ext, &e)), Derived);
    b.push("Ψ(P*Q)", "1 # X*Y + C # 1", cp.psi(&g.word(&[1, 0])).map(|e| show_crossed(&ext, &e)), Derived);
    b.push("Φ(C # 1)", "C", Ok(show(&g, &cp.phi(&CrossedElement::term(Poly::one(0), vec![2], vec![])))), Trivial);
    b.push("Φ(1 # X)", "Q", Ok(show(&g, &cp.phi(&one_x))), Trivial);
    let y2x2 = moyal_star(&Poly::var(3, 1).pow(2), &Poly::var(3, 0).pow(2));
    let z = Poly::zero(3);
    let at0 = y2x2.substitute(&[z.clone(), z, Poly::var(3, 2)], 3);
    b.push("(P^2 ⋆ Q^2)|₀", "2*C^2", Ok(show(&g, &moyal_to_uea(&at0, &g))), Paper);
    Ok(b)
}

fn moyal_bundle() -> ExampleBundle {
    use Provenance::*;
    let mut b = ExampleBundle::new("moyal", "Star product on ℚ[Q, P, C] against U(𝔤) of the Heisenberg algebra");
    let g = Uea::new(Arc::new(heisenberg_lra()));
    let (q, p) = (Poly::var(3, 0), Poly::var(3, 1));
    let star = |f: &Poly, h: &Poly| show(&g, &moyal_to_uea(&moyal_star(f, h), &g));
    b.push("P ⋆ Q", "Q*P + C", Ok(star(&p, &q)), Derived);
    b.push("Q ⋆ P", "Q*P", Ok(star(&q, &p)), Derived);
    b.push("P ⋆ Q - Q ⋆ P", "C", Ok(show(&g, &moyal_to_uea(&(&moyal_star(&p, &q) - &moyal_star(&q, &p)), &g))), Derived);
    b.push("P^2 ⋆ Q^2", "Q^2*P^2 + 4*Q*P*C + 2*C^2", Ok(star(&p.pow(2), &q.pow(2))), Derived);
    for n in 1..=4 {
        let expected = ["C", "2*C^2", "6*C^3", "24*C^4"][n - 1];
        b.push(format!("σ⋆(Y^{n}, X^{n})"), expected, Ok(show(&g, &sigma_via_star(&rep(1, n), &rep(0, n), &g))), Paper);
    }
    b
}

fn euler_bundle() -> ExampleBundle {
    use Provenance::*;
    let mut b = ExampleBundle::new("euler", "gl(V) against the Euler-invariant part of S(V ⊕ V*)");
    let fmt = |e: EulerDims| format!("full {}, invariant {}, kernel {}", e.full, e.invariant, e.gr_kernel);
    b.push("d = 2, k = 2", "full 10, invariant 9, kernel 1", Ok(fmt(euler_gl_invariants(2, 2))), Paper);
    let d3 = euler_gl_invariants(3, 2);
    let d = 3;
    let closed = format!("full {}, invariant {}", (d * d + 1) * d * d / 2, (d + 1) * (d + 1) * d * d / 4);
    b.push("d = 3, k = 2 (closed forms)", closed, Ok(format!("full {}, invariant {}", d3.full, d3.invariant)), Paper);
    b.push("d = 1, k = 3", "full 1, invariant 1, kernel 0", Ok(fmt(euler_gl_invariants(1, 3))), Derived);
    b.push("d = 3, k = 0", "full 1, invariant 1, kernel 0", Ok(fmt(euler_gl_invariants(3, 0))), Trivial);
    let sk = binomial(2 + 3 - 1, 3);
    b.push("d = 2, k = 3 invariant", (sk * sk).to_string(), Ok(euler_gl_invariants(2, 3).invariant.to_string()), Derived);
    b
}

fn transformation_bundle() -> Result<ExampleBundle> {
    use Provenance::*;
    let mut b = ExampleBundle::new("transformation", "Smash products R # U(𝔥) against U_R(R ⋊ 𝔥)");
    for case in transformation_cases()? {
        let s = &case.smash;
        let h = s.h();
        let n = s.r_nvars();
        let mut basis = Vec::new();
        for r in monomials_up_to(n, 2) {
            for m in monomials_up_to(h.rank(), 2 - r.len()) {
                let mut e = crate::poly::Exponent::zero(n);
                for &i in &r {
                    e.0[i] += 1;
                }
                basis.push(Elem::term(Poly::monomial(n, e, Rational::from_integer(1.into())), m));
            }
        }
        let w = s.iso_witness(&case.lra, &basis);
        b.push(format!("{}: J multiplicative, degree ≤ 4", case.name), "none", Ok(w.unwrap_or_else(|| "none".into())), Derived);
    }
    let cases = transformation_cases()?;
    let weyl = &cases[0].smash;
    let t = Poly::var(1, 0);
    let xt = weyl.mul(&Elem::mono(1, vec![0]), &Elem::from_poly(t.clone()));
    b.push("weyl: (1 # X)(t # 1)", "t*X + 1", Ok(show(&cases[0].lra, &xt)), Derived);
    let zero = &cases[1].smash;
    let xt0 = zero.mul(&Elem::mono(1, vec![0]), &Elem::from_poly(t));
    b.push("zero action: (1 # X)(t # 1)", "t*X", Ok(show(&cases[1].lra, &xt0)), Trivial);
    Ok(b)
}

fn smash_bundle() -> Result<ExampleBundle> {
    use Provenance::*;
    let mut b = ExampleBundle::new("smash", "A = ℚ[t], [v, n] = n with a Lie-Rinehart section: trivial cocycle");
    let ext = smash_extension()?;
    let c = ext.cocycle(SectionKind::HopfMorphism)?;
    let g = ext.g().clone();
    b.push("γ is a Lie-Rinehart section", "true", Ok(ext.has_lr_section().to_string()), Trivial);
    let mut bad = None;
    for m in monomials_up_to(1, 4) {
        for n in monomials_up_to(1, 4 - m.len()) {
            let s = c.sigma_mono(&m, &n)?;
            let eps = g.base(&ext.h().mono_times_mono(&m, &n).counit());
            if s != eps && bad.is_none() {
                bad = Some(format!("σ({m:?}, {n:?})"));
            }
        }
    }
    b.push("σ(u, v) = ε(uv), degree ≤ 4", "none", Ok(bad.unwrap_or_else(|| "none".into())), Paper);
    let act = c.act(&ext.h().gen(0), &g.gen(1)).map(|e| show(&g, &e));
    b.push("v ⇀ n", "n", act, Derived);
    Ok(b)
}

fn semidirect_bundle() -> Result<ExampleBundle> {
    use Provenance::*;
    let mut b = ExampleBundle::new("semidirect", "A = ℚ, 𝔤 = ℚn ⋊ ℚx with [x, n] = n");
    let ext = semidirect()?;
    let g = ext.g().clone();
    let kb = ext.ctx().kernel_basis(1)?;
    let shown: Vec<String> = kb.elements.iter().map(|e| show(&g, e)).collect();
    b.push("kernel basis, degree ≤ 1", "1, n", Ok(shown.join(", ")), Derived);
    let adj = ext.ctx().adjoint_action(&g.gen(1), &g.gen(0)).map(|e| show(&g, &e));
    b.push("x ⇀ n", "n", adj, Derived);
    Ok(b)
}

fn curved_bundle() -> Result<ExampleBundle> {
    use Provenance::*;
    let mut b = ExampleBundle::new("curved", "A = ℚ[t], 𝔫 = A·f, 𝔥 = A·d/dt, flat ∇, τ = 0");
    let ext = curved()?;
    let g = ext.g().clone();
    let t = Poly::var(1, 0);
    let df = g.mul(&g.gen(1), &Elem::term(t.clone(), vec![0]));
    b.push("D * (t f)", "t*f*D + f", Ok(show(&g, &df)), Derived);
    let kb = ext.ctx().kernel_basis(2)?;
    b.push("kernel basis matches 𝔫-monomials, degree ≤ 2", "true", Ok(kb.matches_n_span.to_string()), Derived);
    Ok(b)
}

fn rainfog_bundle() -> Result<ExampleBundle> {
    use Provenance::*;
    let mut b = ExampleBundle::new("rainfog", "R = ℚ[z], 𝔥 = span(X, Y) abelian, τ(x, y) = z");
    let rf = rain_fog(ordered())?;
    let t = rf.tau_algebra().clone();
    b.push("σ(X, Y) − σ(Y, X)", "z", rf.extracted_tau(0, 1).map(|p| p.to_string_with(t.lra().var_names())), Paper);
    let c = rf.crossed().cocycle();
    let gl = c.g().clone();
    b.push("σ(Y, X)", "-Z", c.sigma_mono(&vec![1], &vec![0]).map(|e| show(&gl, &e)), Derived);
    b.push("(1 ⊗ y)(1 ⊗ x)", "X*Y - z", Ok(show(&t, &t.mul(&t.gen(1), &t.gen(0)))), Derived);
    let z = Poly::var(1, 0);
    let xz = t.mul(&t.gen(0), &t.base(&z));
    b.push("(1 ⊗ x)(z ⊗ 1)", "z*X", Ok(show(&t, &xz)), Derived);
    b.push("Ψ̄(z # 1)", "z", rf.psi_bar(&CrossedElement::term(Poly::one(0), vec![0], vec![])).map(|e| show(&t, &e)), Trivial);
    b.push("Φ̄/Ψ̄ inverse, degree ≤ 3", "true", rf.check(3).map(|r| r.passed().to_string()), Paper);
    Ok(b)
}
