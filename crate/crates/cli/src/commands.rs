use std::fs;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use lierine_core::catalog::bundle;
use lierine_core::combinat::monomials_up_to;
use lierine_core::pbw_maps::{check_coring_morphism, sections_equivalent, SectionKind, SymElem, Symmetrization};
use lierine_core::products::check_cocycle_axioms;
use lierine_core::uea::{coproduct, counit_left, counit_right, delta_left, delta_right, translation, Elem, Uea};
use lierine_core::verify;

use crate::def::{parse_definition, Model};
use crate::eval::{parse_crossed, parse_elem, show_crossed, show_elem, show_tensor};
use crate::expr::split_top_level;
use crate::report::{ErrorKind, Report};

#[derive(Debug, Parser)]
#[command(name = "lierine", version, about = "Exact computations in enveloping algebras of Lie-Rinehart algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Definition file.
    #[arg(long, global = true)]
    pub file: Option<String>,
    /// Working filtration degree.
    #[arg(long, global = true, default_value_t = 4)]
    pub degree: usize,
    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Write the JSON report here; `-` prints it instead of the text summary.
    #[arg(long, global = true)]
    pub json_out: Option<String>,
    /// Section or perturbation name; a section kind for rainfog-check.
    #[arg(long, global = true)]
    pub section: Option<String>,
    /// Two comma-separated elements for `cocycle`.
    #[arg(long, global = true)]
    pub pair: Option<String>,
    /// Algebra used to read elements (default: the first one defined).
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    /// Extension for kernel-basis (default: the first one defined).
    #[arg(long, global = true)]
    pub extension: Option<String>,
    /// Rain and fog block for rainfog-check (default: the first one defined).
    #[arg(long, global = true)]
    pub rainfog: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse the definition file and check the axioms of everything in it.
    Validate,
    /// Multiply elements left to right.
    Mul { elements: Vec<String> },
    /// Comultiplication.
    Coprod { elements: Vec<String> },
    /// Translation map u ↦ u₊ ⊗ u₋.
    Translate { elements: Vec<String> },
    /// Symmetrisation and its inverse.
    Symmetrize { elements: Vec<String> },
    /// Section property, coring property and graded agreement of a section.
    SectionCheck,
    /// Basis of the left Hopf kernel up to the working degree.
    KernelBasis,
    /// Values of the Hopf 2-cocycle of a section.
    Cocycle,
    /// The cocycle identities at the working degree.
    CocycleAxioms,
    /// Φ/Ψ round trips; optional crossed elements are mapped through Φ.
    CrossedCheck { elements: Vec<String> },
    /// Φ̄/Ψ̄ round trips and the τ identity for a rain and fog block.
    RainfogCheck,
    /// Golden values of a catalog example.
    Example {
        name: String,
        /// Also run the acceptance criteria the example feeds.
        #[arg(long)]
        suite: bool,
    },
    /// All acceptance criteria.
    Suite,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Mul { .. } => "mul",
            Command::Coprod { .. } => "coprod",
            Command::Translate { .. } => "translate",
            Command::Symmetrize { .. } => "symmetrize",
            Command::SectionCheck => "section-check",
            Command::KernelBasis => "kernel-basis",
            Command::Cocycle => "cocycle",
            Command::CocycleAxioms => "cocycle-axioms",
            Command::CrossedCheck { .. } => "crossed-check",
            Command::RainfogCheck => "rainfog-check",
            Command::Example { .. } => "example",
            Command::Suite => "suite",
        }
    }
}

struct Failure(ErrorKind, String);

type Step<T> = std::result::Result<T, Failure>;

fn definition(msg: impl ToString) -> Failure {
    Failure(ErrorKind::Definition, msg.to_string())
}

fn parse_err(msg: impl ToString) -> Failure {
    Failure(ErrorKind::Parse, msg.to_string())
}

fn usage(msg: impl ToString) -> Failure {
    Failure(ErrorKind::Usage, msg.to_string())
}

/// Runs one command. `stdin` supplies element expressions when none are
/// given on the command line.
pub fn run(cli: &Cli, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Report {
    let mut r = Report::new(cli.command.name());
    if let Some(f) = &cli.file {
        r.input("file", f.as_str());
    }
    if let Err(Failure(kind, msg)) = dispatch(cli, &mut r, stdin) {
        r.fail(kind, msg);
    }
    r.finish()
}

fn load(cli: &Cli) -> Step<Model> {
    let path = cli.file.as_ref().ok_or_else(|| usage("this command needs --file"))?;
    let text = fs::read_to_string(path).map_err(|e| Failure(ErrorKind::Io, format!("{path}: {e}")))?;
    let doc = parse_definition(&text).map_err(|e| parse_err(format!("{path}:{e}")))?;
    Model::build(doc).map_err(definition)
}

fn elements(list: &[String], stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Step<Vec<String>> {
    if !list.is_empty() {
        return Ok(list.to_vec());
    }
    let text = stdin().map_err(|e| Failure(ErrorKind::Io, format!("stdin: {e}")))?;
    let out: Vec<String> = text.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect();
    if out.is_empty() {
        return Err(usage("no elements given"));
    }
    Ok(out)
}

fn element_algebra(cli: &Cli, m: &Model, r: &mut Report) -> Step<Arc<Uea>> {
    let name = match &cli.algebra {
        Some(a) => a.clone(),
        None => m.algebra_names().into_iter().next().ok_or_else(|| definition("no algebra defined"))?,
    };
    r.input("algebra", name.as_str());
    m.uea(&name).map_err(usage)
}

fn section_name(cli: &Cli, r: &mut Report) -> Step<String> {
    let s = cli.section.clone().ok_or_else(|| usage("this command needs --section"))?;
    r.input("section", s.as_str());
    Ok(s)
}

fn dispatch(cli: &Cli, r: &mut Report, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Step<()> {
    let k = cli.degree;
    match &cli.command {
        Command::Validate => validate(cli, r),
        Command::Mul { elements: es } => {
            let m = load(cli)?;
            let u = element_algebra(cli, &m, r)?;
            let es = elements(es, stdin)?;
            r.input("elements", es.clone());
            let mut acc = u.one();
            for e in &es {
                acc = u.mul(&acc, &parse_elem(e, &u).map_err(parse_err)?);
            }
            r.output("product", show_elem(&u, &acc));
            Ok(())
        }
        Command::Coprod { elements: es } => {
            let m = load(cli)?;
            let u = element_algebra(cli, &m, r)?;
            let es = elements(es, stdin)?;
            r.input("elements", es.clone());
            for e in &es {
                let x = parse_elem(e, &u).map_err(parse_err)?;
                let d = coproduct(&x);
                let shown = show_elem(&u, &x);
                r.output(format!("Δ({shown})"), show_tensor(&u, &d));
                let ok = |f: lierine_core::Result<bool>| f.unwrap_or(false);
                let coassoc = ok(delta_left(&d).and_then(|l| Ok(l == delta_right(&d)?)));
                r.assert(format!("coassociativity on {shown}"), coassoc, None, None);
                let counit = ok(counit_left(&d).and_then(|l| Ok(l == x && counit_right(&d)? == x)));
                r.assert(format!("counitality on {shown}"), counit, None, None);
            }
            Ok(())
        }
        Command::Translate { elements: es } => {
            let m = load(cli)?;
            let u = element_algebra(cli, &m, r)?;
            let es = elements(es, stdin)?;
            r.input("elements", es.clone());
            for e in &es {
                let x = parse_elem(e, &u).map_err(parse_err)?;
                let t = translation(&u, &x);
                let shown = show_elem(&u, &x);
                r.output(format!("({shown})₊ ⊗ ({shown})₋"), show_tensor(&u, &t));
                r.assert(format!("u₊u₋ = ε(u) on {shown}"), u.multiply_out(&t) == u.base(&x.counit()), None, None);
                r.assert(format!("ε(u₋)u₊ = u on {shown}"), u.counit_weighted_plus(&t) == x, None, None);
            }
            Ok(())
        }
        Command::Symmetrize { elements: es } => {
            let m = load(cli)?;
            let u = element_algebra(cli, &m, r)?;
            let es = elements(es, stdin)?;
            r.input("elements", es.clone());
            let s = Symmetrization::new(u.clone());
            let as_elem = |y: &SymElem| {
                let mut out = Elem::zero(u.nvars());
                for (m, p) in y.terms() {
                    out.add_term(m.clone(), p.clone());
                }
                out
            };
            for e in &es {
                let x = parse_elem(e, &u).map_err(parse_err)?;
                let shown = show_elem(&u, &x);
                let sym = SymElem::from_symbols(&x);
                let sx = s.apply(&sym);
                let inv = s.inverse(&x);
                r.output(format!("S({shown})"), show_elem(&u, &sx));
                r.output(format!("S⁻¹({shown})"), show_elem(&u, &as_elem(&inv)));
                r.assert(format!("S∘S⁻¹ = id on {shown}"), s.apply(&inv) == x, None, None);
                r.assert(format!("S⁻¹∘S = id on {shown}"), s.inverse(&sx) == sym, None, None);
            }
            Ok(())
        }
        Command::SectionCheck => {
            let m = load(cli)?;
            let name = section_name(cli, r)?;
            r.input("degree", k);
            let sm = m.section(&name).map_err(definition)?;
            let sec = sm.extension.section(sm.kind.clone()).map_err(definition)?;
            let (g, h) = (sm.extension.g(), sm.extension.h());
            for mono in monomials_up_to(h.rank(), k) {
                r.output(format!("Γ({})", show_elem(h, &h.mono(&mono))), show_elem(g, &sec.apply_mono(&mono)));
            }
            let w = sec.section_witness(k);
            let shown = w.as_ref().map(|m| show_elem(h, &h.mono(m)));
            r.assert("π∘Γ = id", w.is_none(), Some(monomials_up_to(h.rank(), k).len()), shown);
            let c = check_coring_morphism(h, &|u| sec.apply(u), k);
            r.assert("Γ is a coring map", c.passed(), Some(c.checked), c.witness);
            let def = m.doc.section(&name).expect("resolved").clone();
            for other in m.doc.sections.iter().filter(|s| s.name != name && s.extension == def.extension) {
                let om = m.section(&other.name).map_err(definition)?;
                let os = om.extension.section(om.kind.clone()).map_err(definition)?;
                let same = sections_equivalent(&sec, &os, k);
                let label = format!("gr Γ = gr {}", other.name);
                if other.morphism == def.morphism {
                    r.assert(label, same, None, None);
                } else {
                    r.output(label, same.to_string());
                }
            }
            Ok(())
        }
        Command::KernelBasis => {
            let m = load(cli)?;
            let ext = match &cli.extension {
                Some(e) => e.clone(),
                None => m.doc.extensions.first().map(|e| e.name.clone()).ok_or_else(|| definition("no extension defined"))?,
            };
            r.input("extension", ext.as_str());
            r.input("degree", k);
            let ctx = m.kernel_context(&ext).map_err(definition)?;
            let kb = ctx.kernel_basis(k).map_err(definition)?;
            for (i, e) in kb.elements.iter().enumerate() {
                r.output(format!("b{i}"), show_elem(ctx.g(), e));
            }
            let witness = format!("{} basis elements, {} 𝔫-monomials", kb.elements.len(), kb.n_monomials);
            r.assert("kernel basis spans the 𝔫-monomials", kb.matches_n_span, Some(kb.n_monomials), Some(witness));
            Ok(())
        }
        Command::Cocycle => {
            let m = load(cli)?;
            let name = section_name(cli, r)?;
            let (sm, c) = m.cocycle(&name).map_err(definition)?;
            let (g, h) = (sm.extension.g().clone(), sm.extension.h().clone());
            let ctx = sm.extension.ctx();
            let mut members = (0, None);
            let mut record = |r: &mut Report, label: String, v: &Elem| {
                members.0 += 1;
                if !ctx.is_member(v) && members.1.is_none() {
                    members.1 = Some(label.clone());
                }
                r.output(label, show_elem(&g, v));
            };
            if let Some(pair) = &cli.pair {
                r.input("pair", pair.as_str());
                let parts = split_top_level(pair);
                if parts.len() != 2 {
                    return Err(usage("--pair needs two comma-separated elements"));
                }
                let u = parse_elem(parts[0], &h).map_err(parse_err)?;
                let v = parse_elem(parts[1], &h).map_err(parse_err)?;
                let val = c.sigma(&u, &v).map_err(definition)?;
                record(r, format!("σ({}, {})", show_elem(&h, &u), show_elem(&h, &v)), &val);
            } else {
                r.input("degree", k);
                for a in monomials_up_to(h.rank(), k) {
                    for b in monomials_up_to(h.rank(), k - a.len()) {
                        let val = c.sigma_mono(&a, &b).map_err(definition)?;
                        if !val.is_zero() {
                            let label = format!("σ({}, {})", show_elem(&h, &h.mono(&a)), show_elem(&h, &h.mono(&b)));
                            record(r, label, &val);
                        }
                    }
                }
            }
            let (n, w) = members;
            r.assert("values lie in the Hopf kernel", w.is_none(), Some(n), w);
            Ok(())
        }
        Command::CocycleAxioms => {
            let m = load(cli)?;
            let name = section_name(cli, r)?;
            r.input("degree", k);
            r.input("seed", cli.seed);
            let (_, c) = m.cocycle(&name).map_err(definition)?;
            let rep = check_cocycle_axioms(&c, k, cli.seed).map_err(definition)?;
            for a in rep.checks {
                r.assert(a.name, a.witness.is_none(), Some(a.cases), a.witness);
            }
            Ok(())
        }
        Command::CrossedCheck { elements: es } => {
            let m = load(cli)?;
            let name = section_name(cli, r)?;
            r.input("degree", k);
            let (sm, c) = m.cocycle(&name).map_err(definition)?;
            let cp = lierine_core::products::CrossedProduct::new(c);
            let (g, h) = (sm.extension.g().clone(), sm.extension.h().clone());
            if !es.is_empty() {
                r.input("elements", es.clone());
            }
            for e in es {
                let x = parse_crossed(e, &g, &h).map_err(parse_err)?;
                let label = show_crossed(&g, &h, &x);
                r.output(format!("Φ({label})"), show_elem(&g, &cp.phi(&x)));
            }
            let basis = cp.basis(k);
            let mut bad = None;
            for x in &basis {
                if cp.psi(&cp.phi(x)).map_err(definition)? != *x && bad.is_none() {
                    bad = Some(show_crossed(&g, &h, x));
                }
            }
            r.assert("Ψ∘Φ = id on basis elements", bad.is_none(), Some(basis.len()), bad);
            let monos = monomials_up_to(g.rank(), k);
            let mut bad = None;
            for mono in &monos {
                let u = g.mono(mono);
                if cp.phi(&cp.psi(&u).map_err(definition)?) != u && bad.is_none() {
                    bad = Some(show_elem(&g, &u));
                }
            }
            r.assert("Φ∘Ψ = id on PBW monomials", bad.is_none(), Some(monos.len()), bad);
            let (mut n, mut bad) = (0, None);
            for x in &basis {
                for y in basis.iter().filter(|y| x.degree().unwrap_or(0) + y.degree().unwrap_or(0) <= k) {
                    n += 1;
                    let ok = cp.phi(&cp.mul(x, y).map_err(definition)?) == g.mul(&cp.phi(x), &cp.phi(y));
                    if !ok && bad.is_none() {
                        bad = Some(format!("({})·({})", show_crossed(&g, &h, x), show_crossed(&g, &h, y)));
                    }
                }
            }
            r.assert("Φ is multiplicative", bad.is_none(), Some(n), bad);
            let w = cp.colinearity_witness(k.min(3));
            r.assert("Φ is right colinear", w.is_none(), None, w.map(|x| show_crossed(&g, &h, &x)));
            Ok(())
        }
        Command::RainfogCheck => {
            let m = load(cli)?;
            let name = match &cli.rainfog {
                Some(n) => n.clone(),
                None => m.doc.rainfogs.first().map(|r| r.name.clone()).ok_or_else(|| definition("no rain and fog block"))?,
            };
            r.input("rainfog", name.as_str());
            r.input("degree", k);
            let kind_name = cli.section.clone().unwrap_or_else(|| "ordered".into());
            r.input("section", kind_name.as_str());
            let rank = m.doc.rainfog(&name).and_then(|d| m.doc.algebra(&d.over)).map(|a| a.basis.len()).unwrap_or(0);
            let kind = match kind_name.as_str() {
                "ordered" => SectionKind::Ordered((0..rank).collect()),
                "reversed" => SectionKind::Ordered((0..rank).rev().collect()),
                "symmetrized" => SectionKind::Symmetrized,
                other => return Err(usage(format!("unknown section kind '{other}'"))),
            };
            let rf = m.rainfog(&name, kind).map_err(definition)?;
            let t = rf.tau_algebra().clone();
            let labels = t.lra().labels().to_vec();
            for i in 0..rank {
                for j in (i + 1)..rank {
                    let tau = rf.extracted_tau(i, j).map_err(definition)?;
                    r.output(format!("σ({0}, {1}) − σ({1}, {0})", labels[i], labels[j]), show_elem(&t, &t.base(&tau)));
                }
            }
            let rep = rf.check(k).map_err(definition)?;
            r.assert("Φ̄/Ψ̄ inverse, Φ̄ multiplicative, τ identity", rep.passed(), Some(rep.checked), rep.witness);
            Ok(())
        }
        Command::Example { name, suite } => {
            r.input("name", name.as_str());
            r.input("suite", *suite);
            let b = bundle(name).map_err(usage)?;
            r.output("description", b.description);
            for gd in &b.goldens {
                r.output(gd.label.clone(), gd.actual.clone());
                let w = format!("expected {}, got {}", gd.expected, gd.actual);
                r.assert(format!("{} [{}]", gd.label, gd.provenance), gd.passed(), None, Some(w));
            }
            if *suite {
                r.input("seed", cli.seed);
                for id in criteria_for(name) {
                    let v = verify::run(*id, cli.seed);
                    r.assert(format!("criterion {}: {}", v.id, v.name), v.passed(), Some(v.checked), v.witness);
                }
            }
            Ok(())
        }
        Command::Suite => {
            r.input("seed", cli.seed);
            for v in verify::run_all(cli.seed) {
                r.assert(format!("criterion {}: {}", v.id, v.name), v.passed(), Some(v.checked), v.witness);
            }
            Ok(())
        }
    }
}

fn criteria_for(example: &str) -> &'static [usize] {
    match example {
        "heisenberg" => &[1, 8, 9, 10, 14],
        "moyal" => &[2],
        "euler" => &[3],
        "transformation" => &[12],
        "smash" => &[10, 11],
        "semidirect" | "curved" => &[11],
        "rainfog" => &[13],
        _ => &[],
    }
}

fn validate(cli: &Cli, r: &mut Report) -> Step<()> {
    let m = load(cli)?;
    r.input("degree", cli.degree);
    for name in m.algebra_names() {
        let a = m.algebra(&name).map_err(definition)?;
        let rep = a.validate();
        let w = rep.failures.first().map(|f| f.to_string());
        r.output(format!("algebra {name}"), format!("rank {} over ℚ[{}]", a.rank(), a.var_names().join(", ")));
        r.assert(format!("{name} is a Lie-Rinehart algebra"), rep.is_valid(), None, w);
    }
    for md in &m.doc.morphisms {
        match m.morphism(&md.name) {
            Ok(f) => {
                let c = f.certification();
                r.output(format!("morphism {}", md.name), format!("bracket {}, anchor {}", c.lie, c.anchor));
            }
            Err(e) => r.assert(format!("morphism {} is well-shaped", md.name), false, None, Some(e)),
        }
    }
    for e in &m.doc.extensions {
        for f in [&e.pi, &e.iota] {
            let ok = m.morphism(f).map(|x| x.is_lra_morphism()).unwrap_or(false);
            r.assert(format!("{f} is a Lie-Rinehart morphism"), ok, None, None);
        }
        let ctx = m.kernel_context(&e.name);
        r.assert(format!("extension {} is split exact on bases", e.name), ctx.is_ok(), None, ctx.err());
    }
    for s in &m.doc.sections {
        let built = m.section(&s.name).and_then(|sm| sm.extension.section(sm.kind.clone()).map_err(|e| e.to_string()));
        let res = built.and_then(|sec| match sec.section_witness(cli.degree) {
            None => Ok(()),
            Some(w) => Err(format!("π∘Γ ≠ id on {w:?}")),
        });
        r.assert(format!("section {} splits π", s.name), res.is_ok(), None, res.err());
    }
    for p in &m.doc.perturbations {
        let res = m.cocycle(&p.name).map(|_| ());
        r.assert(format!("perturbation {} builds", p.name), res.is_ok(), None, res.err());
    }
    for rf in &m.doc.rainfogs {
        let rank = m.doc.algebra(&rf.over).map(|a| a.basis.len()).unwrap_or(0);
        let res = m.rainfog(&rf.name, SectionKind::Ordered((0..rank).collect())).map(|_| ());
        r.assert(format!("rain and fog block {} builds", rf.name), res.is_ok(), None, res.err());
    }
    Ok(())
}

/// Convenience for the binary and tests: the JSON report is written to
/// `--json-out` (or printed for `-`), otherwise the text summary is printed.
pub fn emit(cli: &Cli, report: &Report) -> std::io::Result<String> {
    match cli.json_out.as_deref() {
        Some("-") => Ok(report.to_json() + "\n"),
        Some(path) => {
            fs::write(path, report.to_json() + "\n")?;
            Ok(report.to_text())
        }
        None => Ok(report.to_text()),
    }
}
