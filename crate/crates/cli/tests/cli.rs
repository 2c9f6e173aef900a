use std::process::Command as Proc;
use std::sync::Arc;

use clap::Parser;
use lierine::eval::{parse_crossed, parse_elem, parse_tensor, show_crossed, show_elem, EvalError};
use lierine::expr::{self, Expr};
use lierine::{parse_definition, run, Cli, Model, Report};
use lierine_core::uea::Uea;
use lierine_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn model(name: &str) -> Model {
    let text = std::fs::read_to_string(fixture(name)).unwrap();
    Model::build(parse_definition(&text).unwrap()).unwrap()
}

fn exec(args: &[&str]) -> Report {
    let cli = Cli::try_parse_from(std::iter::once("lierine").chain(args.iter().copied())).unwrap();
    run(&cli, &mut || Ok(String::new()))
}

fn output<'a>(r: &'a Report, label: &str) -> &'a str {
    &r.outputs.iter().find(|o| o.label == label).unwrap_or_else(|| panic!("no output {label}")).value
}

#[test]
fn shipped_fixtures_validate() {
    for f in ["h.def", "perturbed.def", "rainfog.def", "curved.def"] {
        let r = exec(&["validate", "--file", &fixture(f)]);
        assert_eq!(r.exit_code(), 0, "{f}: {}", r.to_text());
        assert!(!r.assertions.is_empty());
    }
}

#[test]
fn duplicate_algebra_name_is_located() {
    let text = "base\nalgebra g : X\nalgebra g : Y\n";
    let e = parse_definition(text).unwrap_err();
    assert_eq!((e.line, e.column), (3, 9), "{e}");
    assert!(e.message.contains("g"));
}

#[test]
fn unknown_bracket_label_is_a_resolution_error() {
    let text = "base\nalgebra g : Q, P, C\nbracket g [P, R] = C\n";
    let e = parse_definition(text).unwrap_err();
    assert_eq!(e.line, 3);
    assert_eq!(e.column, 15);
    assert!(e.message.contains("unresolved"), "{e}");
}

#[test]
fn malformed_tables_are_rejected() {
    let bad = [
        "algebra g : X\n",
        "base\nalgebra g : X, Y\nbracket g [X, Y] = X*Y\n",
        "base\nalgebra g : X\nmorphism f : g -> h\n",
        "base\nalgebra g : X\nimage f X = X\n",
        "base t\nalgebra g : X\nanchor g X (s) = 1\n",
    ];
    for text in bad {
        assert!(parse_definition(text).is_err(), "{text}");
    }
}

#[test]
fn element_examples() {
    let m = model("h.def");
    let g = m.uea("g").unwrap();
    assert_eq!(show_elem(&g, &parse_elem("P*Q", &g).unwrap()), "Q*P + C");
    let q = parse_elem("2/3 * Q^2", &g).unwrap();
    assert_eq!(show_elem(&g, &q), "2/3*Q^2");
    let h = m.uea("h").unwrap();
    let x = parse_crossed("C # X*Y", &g, &h).unwrap();
    assert_eq!(show_crossed(&g, &h, &x), "C # X*Y");
}

#[test]
fn markers_need_their_context() {
    let m = model("h.def");
    let g = m.uea("g").unwrap();
    let h = m.uea("h").unwrap();
    assert!(matches!(parse_elem("Q ⊗ P", &g), Err(EvalError::TypeMismatch(_))));
    assert!(matches!(parse_elem("C # X", &g), Err(EvalError::TypeMismatch(_))));
    assert!(matches!(parse_tensor("C # P", &g), Err(EvalError::TypeMismatch(_))));
    assert!(matches!(parse_crossed("C ⊗ X", &g, &h), Err(EvalError::TypeMismatch(_))));
    assert!(matches!(parse_elem("Q*R", &g), Err(EvalError::UnknownSymbol(s)) if s == "R"));
    assert!(parse_tensor("Q ⊗ P - 1 ⊗ C", &g).is_ok());
}

#[test]
fn cocycle_pair() {
    let r = exec(&["cocycle", "--file", &fixture("h.def"), "--section", "ordered", "--pair", "Y^2,X^2"]);
    assert_eq!(output(&r, "σ(Y^2, X^2)"), "2*C^2");
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn perturbed_cocycle_fails_gt2_3() {
    let r = exec(&["cocycle-axioms", "--file", &fixture("perturbed.def"), "--section", "bad", "--degree", "3"]);
    assert_eq!(r.exit_code(), 1);
    let gt = r.assertions.iter().find(|a| a.name == "GT2(3)").unwrap();
    assert!(!gt.passed);
    assert!(gt.witness.is_some());
    let ok = exec(&["cocycle-axioms", "--file", &fixture("perturbed.def"), "--section", "ordered", "--degree", "3"]);
    assert_eq!(ok.exit_code(), 0, "{}", ok.to_text());
}

#[test]
fn example_suite_passes() {
    let r = exec(&["example", "heisenberg", "--suite"]);
    assert_eq!(r.exit_code(), 0, "{}", r.to_text());
    assert!(r.assertions.iter().any(|a| a.name.starts_with("criterion 1:")));
}

#[test]
fn subcommands_pass_on_fixtures() {
    let h = fixture("h.def");
    let c = fixture("curved.def");
    let rf = fixture("rainfog.def");
    let runs: Vec<Vec<&str>> = vec![
        vec!["mul", "--file", &h, "P", "Q"],
        vec!["coprod", "--file", &c, "D^2*t"],
        vec!["translate", "--file", &c, "t*D^2 + N"],
        vec!["symmetrize", "--file", &h, "P*Q^2"],
        vec!["section-check", "--file", &h, "--section", "reversed", "--degree", "3"],
        vec!["kernel-basis", "--file", &h, "--degree", "3"],
        vec!["cocycle", "--file", &h, "--section", "symmetrized", "--degree", "3"],
        vec!["crossed-check", "--file", &h, "--section", "symmetrized", "--degree", "3", "C # X*Y"],
        vec!["rainfog-check", "--file", &rf, "--section", "symmetrized", "--degree", "3"],
    ];
    for args in runs {
        let r = exec(&args);
        assert_eq!(r.exit_code(), 0, "{args:?}: {}", r.to_text());
    }
    assert_eq!(output(&exec(&["mul", "--file", &h, "P", "Q"]), "product"), "Q*P + C");
}

#[test]
fn errors_exit_two() {
    let r = exec(&["mul", "--file", "/nonexistent.def", "Q"]);
    assert_eq!(r.exit_code(), 2);
    let r = exec(&["mul", "--file", &fixture("h.def"), "Q ⊗ P"]);
    assert_eq!(r.exit_code(), 2);
    let r = exec(&["cocycle", "--file", &fixture("h.def")]);
    assert_eq!(r.exit_code(), 2);
    assert!(Cli::try_parse_from(["lierine", "frobnicate"]).is_err());
}

#[test]
fn stdin_supplies_elements() {
    let cli = Cli::try_parse_from(["lierine", "mul", "--file", &fixture("h.def")]).unwrap();
    let r = run(&cli, &mut || Ok("P\n\nQ\n".to_string()));
    assert_eq!(output(&r, "product"), "Q*P + C");
}

#[test]
fn definition_round_trip() {
    for f in ["h.def", "perturbed.def", "rainfog.def", "curved.def"] {
        let doc = parse_definition(&std::fs::read_to_string(fixture(f)).unwrap()).unwrap();
        let text = doc.to_text();
        let again = parse_definition(&text).unwrap();
        assert_eq!(again, doc, "{f}");
        assert_eq!(again.to_text(), text, "{f}");
    }
}

fn strip_timing(json: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(json).unwrap();
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn reports_are_deterministic() {
    let args = ["crossed-check", "--file", &fixture("h.def"), "--section", "ordered", "--degree", "3"];
    let a = exec(&args);
    let b = exec(&args);
    assert_eq!(strip_timing(&a.to_json()), strip_timing(&b.to_json()));
    let v: serde_json::Value = serde_json::from_str(&a.to_json()).unwrap();
    for key in ["schema", "command", "inputs", "outputs", "assertions", "passed", "timing"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lierine");
    let code = |args: &[&str]| Proc::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(code(&["cocycle", "--file", &fixture("h.def"), "--section", "ordered", "--pair", "Y^2,X^2"]), Some(0));
    assert_eq!(code(&["cocycle-axioms", "--file", &fixture("perturbed.def"), "--section", "bad", "--degree", "3"]), Some(1));
    assert_eq!(code(&["no-such-command"]), Some(2));
    let out = Proc::new(bin)
        .args(["mul", "--file", &fixture("h.def"), "--json-out", "-", "P", "Q"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["outputs"][0]["value"], "Q*P + C");
}

fn random_text(rng: &mut ChaCha8Rng, atoms: &[&str], depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..3) {
            0 => format!("{}/{}", rng.gen_range(-5..6), rng.gen_range(1..5)),
            _ => atoms[rng.gen_range(0..atoms.len())].to_string(),
        };
    }
    let a = random_text(rng, atoms, depth - 1);
    let b = random_text(rng, atoms, depth - 1);
    match rng.gen_range(0..4) {
        0 => format!("({a}) + ({b})"),
        1 => format!("({a}) - ({b})"),
        2 => format!("({a})*({b})"),
        _ => format!("({a})^{}", rng.gen_range(0..3)),
    }
}

#[test]
fn print_parse_round_trip_on_random_elements() {
    let heis = model("h.def").uea("g").unwrap();
    let curved = model("curved.def").uea("g").unwrap();
    let cases: [(Arc<Uea>, &[&str]); 2] = [(heis, &["Q", "P", "C"]), (curved, &["D", "N", "t"])];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..500 {
        let (u, atoms) = &cases[i % 2];
        let x = parse_elem(&random_text(&mut rng, atoms, 3), u).unwrap();
        let shown = show_elem(u, &x);
        let y = parse_elem(&shown, u).unwrap();
        assert_eq!(y, x, "{shown}");
        assert_eq!(show_elem(u, &y), shown);
    }
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    let b = |e: Expr| Box::new(e);
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..3) {
            0 => Expr::Num(Rational::new(rng.gen_range(0..7).into(), rng.gen_range(1..4).into())),
            1 => Expr::Ident("x".into()),
            _ => Expr::Ident("Q".into()),
        };
    }
    let mut sub = || random_expr(rng, depth - 1);
    let (l, r) = (sub(), sub());
    match rng.gen_range(0..8) {
        0 => Expr::Add(b(l), b(r)),
        1 => Expr::Sub(b(l), b(r)),
        2 => Expr::Mul(b(l), b(r)),
        3 => Expr::Neg(b(l)),
        4 => Expr::Pow(b(l), rng.gen_range(0..4)),
        5 => Expr::Tensor(b(l), b(r)),
        6 => Expr::Cross(b(l), b(r)),
        _ => l,
    }
}

#[test]
fn syntax_trees_survive_printing() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let e = random_expr(&mut rng, 4);
        let s = e.to_string();
        let back = expr::parse(&s).unwrap_or_else(|err| panic!("{s}: {err}"));
        assert_eq!(back.to_string(), s);
    }
}
