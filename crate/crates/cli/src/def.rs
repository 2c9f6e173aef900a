//! The line-oriented definition language.
//!
//! ```text
//! document   = { line } ;
//! line       = [ statement ] [ "%" { char } ] newline ;
//! statement  = base | algebra | bracket | anchor | morphism | image
//!            | extension | section | perturb | rainfog | nabla | tau ;
//! base       = "base" [ names ] ;
//! algebra    = "algebra" name ":" names ;
//! bracket    = "bracket" name "[" name "," name "]" "=" expr ;
//! anchor     = "anchor" name name "(" name ")" "=" expr ;
//! morphism   = "morphism" name ":" name "->" name ;
//! image      = "image" name name "=" expr ;
//! extension  = "extension" name ":" name "," name ;
//! section    = "section" name ":" name "via" name kind ;
//! kind       = "symmetrized" | "hopf" | "ordered" [ names ] ;
//! perturb    = "perturb" name ":" name "(" expr "," expr ")" "+=" expr ;
//! rainfog    = "rainfog" name ":" name "with" names ;
//! nabla      = "nabla" name name "(" name ")" "=" expr ;
//! tau        = "tau" name "[" name "," name "]" "=" expr ;
//! names      = name { "," name } ;
//! ```
//!
//! `expr` is the element grammar of [`crate::expr`]. Table entries that are
//! not given are zero. Every name must be declared before it is used.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use lierine_core::catalog::Extension;
use lierine_core::lie_rinehart::{Cochain, Connection, LieRinehart, LraMorphism};
use lierine_core::pbw_maps::SectionKind;
use lierine_core::products::{CocycleKind, HopfCocycle, HopfKernelContext, RainFog};
use lierine_core::uea::Uea;
use lierine_core::{Derivation, Poly};

use crate::eval::{eval_elem, eval_linear, eval_mono, eval_poly, scratch, EvalError};
use crate::expr::{self, split_top_level, Expr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for DefError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for DefError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDef {
    pub name: String,
    pub basis: Vec<String>,
    pub brackets: Vec<(String, String, Expr)>,
    /// (generator, base variable, value of the anchor on that variable)
    pub anchors: Vec<(String, String, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDef {
    pub name: String,
    pub source: String,
    pub target: String,
    pub images: Vec<(String, Expr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDef {
    pub name: String,
    pub pi: String,
    pub iota: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KindDef {
    Symmetrized,
    Hopf,
    /// Empty means the basis order of 𝔥.
    Ordered(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionDef {
    pub name: String,
    pub extension: String,
    pub morphism: String,
    pub kind: KindDef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbDef {
    pub name: String,
    pub section: String,
    pub left: Expr,
    pub right: Expr,
    pub value: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RainFogDef {
    pub name: String,
    pub over: String,
    pub labels: Vec<String>,
    /// (𝔥 generator, 𝔫 generator, ∇ of the latter along the former)
    pub nabla: Vec<(String, String, Expr)>,
    pub tau: Vec<(String, String, Expr)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefinitionDocument {
    pub base: Vec<String>,
    pub algebras: Vec<AlgebraDef>,
    pub morphisms: Vec<MorphismDef>,
    pub extensions: Vec<ExtensionDef>,
    pub sections: Vec<SectionDef>,
    pub perturbations: Vec<PerturbDef>,
    pub rainfogs: Vec<RainFogDef>,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(text: &str, line: usize) -> Self {
        Cursor { chars: text.chars().collect(), pos: 0, line }
    }

    fn ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T, DefError> {
        Err(DefError { line: self.line, column, message: message.into() })
    }

    fn here<T>(&mut self, message: impl Into<String>) -> Result<T, DefError> {
        self.ws();
        self.err(self.pos + 1, message)
    }

    fn at_end(&mut self) -> bool {
        self.ws();
        self.pos >= self.chars.len()
    }

    fn name(&mut self) -> Result<(usize, String), DefError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        if start == self.pos || self.chars[start].is_ascii_digit() {
            self.pos = start;
            return self.here("expected a name");
        }
        Ok((start + 1, self.chars[start..self.pos].iter().collect()))
    }

    fn expect(&mut self, tok: &str) -> Result<(), DefError> {
        self.ws();
        let t: Vec<char> = tok.chars().collect();
        if self.chars[self.pos..].starts_with(&t) {
            self.pos += t.len();
            Ok(())
        } else {
            self.here(format!("expected '{tok}'"))
        }
    }

    fn try_expect(&mut self, tok: &str) -> bool {
        self.expect(tok).is_ok()
    }

    fn names(&mut self) -> Result<Vec<(usize, String)>, DefError> {
        let mut out = vec![self.name()?];
        while self.try_expect(",") {
            out.push(self.name()?);
        }
        Ok(out)
    }

    /// The rest of the line, parsed as an expression.
    fn rest_expr(&mut self) -> Result<(usize, Expr), DefError> {
        self.ws();
        let col = self.pos + 1;
        let rest: String = self.chars[self.pos..].iter().collect();
        self.pos = self.chars.len();
        self.parse_expr_at(col, &rest)
    }

    fn parse_expr_at(&self, col: usize, text: &str) -> Result<(usize, Expr), DefError> {
        let lead = text.chars().take_while(|c| c.is_whitespace()).count();
        match expr::parse(text) {
            Ok(e) => Ok((col + lead, e)),
            Err(e) => self.err(col + e.column - 1, e.message),
        }
    }

    /// "(" expr "," expr ")", split at the top-level comma.
    fn expr_pair(&mut self) -> Result<((usize, Expr), (usize, Expr)), DefError> {
        self.expect("(")?;
        let open = self.pos;
        let mut depth = 1;
        while self.pos < self.chars.len() {
            match self.chars[self.pos] {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                _ => {}
            }
            self.pos += 1;
        }
        if depth != 0 {
            return self.here("expected ')'");
        }
        let inner: String = self.chars[open..self.pos].iter().collect();
        self.pos += 1;
        let parts = split_top_level(&inner);
        if parts.len() != 2 {
            return self.err(open + 1, "expected two comma-separated expressions");
        }
        let comma = split_comma_offset(&inner).expect("two parts");
        let a = self.parse_expr_at(open + 1, &inner[..byte_at(&inner, comma - 1)])?;
        let b = self.parse_expr_at(open + 1 + comma, &inner[byte_at(&inner, comma)..])?;
        Ok((a, b))
    }
}

/// Character offset just past the top-level comma.
fn split_comma_offset(text: &str) -> Option<usize> {
    let mut depth = 0;
    for (i, c) in text.chars().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i + 1),
            _ => {}
        }
    }
    None
}

fn byte_at(text: &str, chars: usize) -> usize {
    text.char_indices().nth(chars).map(|(b, _)| b).unwrap_or(text.len())
}

fn strip_comment(line: &str) -> &str {
    line.split('%').next().unwrap_or("")
}

fn lookup<'a, T>(items: &'a [T], name: &str, get: impl Fn(&T) -> &str) -> Option<&'a T> {
    items.iter().find(|t| get(t) == name)
}

impl DefinitionDocument {
    pub fn algebra(&self, name: &str) -> Option<&AlgebraDef> {
        lookup(&self.algebras, name, |a| &a.name)
    }

    pub fn morphism(&self, name: &str) -> Option<&MorphismDef> {
        lookup(&self.morphisms, name, |m| &m.name)
    }

    pub fn extension(&self, name: &str) -> Option<&ExtensionDef> {
        lookup(&self.extensions, name, |e| &e.name)
    }

    pub fn section(&self, name: &str) -> Option<&SectionDef> {
        lookup(&self.sections, name, |s| &s.name)
    }

    pub fn perturbation(&self, name: &str) -> Option<&PerturbDef> {
        lookup(&self.perturbations, name, |p| &p.name)
    }

    pub fn rainfog(&self, name: &str) -> Option<&RainFogDef> {
        lookup(&self.rainfogs, name, |r| &r.name)
    }

    fn name_taken(&self, name: &str) -> bool {
        self.algebra(name).is_some()
            || self.morphism(name).is_some()
            || self.extension(name).is_some()
            || self.section(name).is_some()
            || self.perturbation(name).is_some()
            || self.rainfog(name).is_some()
    }

    /// 𝔤 and 𝔥 of an extension: the source and target of π.
    fn extension_algebras(&self, ext: &ExtensionDef) -> (&AlgebraDef, &AlgebraDef) {
        let pi = self.morphism(&ext.pi).expect("resolved");
        (self.algebra(&pi.source).expect("resolved"), self.algebra(&pi.target).expect("resolved"))
    }

    /// Normalised text: one statement per line, tables grouped under their
    /// owners, expressions printed with minimal parentheses.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(if self.base.is_empty() { "base".into() } else { format!("base {}", self.base.join(", ")) });
        for a in &self.algebras {
            line(format!("algebra {} : {}", a.name, a.basis.join(", ")));
            for (x, y, e) in &a.brackets {
                line(format!("bracket {} [{x}, {y}] = {e}", a.name));
            }
            for (x, v, e) in &a.anchors {
                line(format!("anchor {} {x} ({v}) = {e}", a.name));
            }
        }
        for m in &self.morphisms {
            line(format!("morphism {} : {} -> {}", m.name, m.source, m.target));
            for (x, e) in &m.images {
                line(format!("image {} {x} = {e}", m.name));
            }
        }
        for e in &self.extensions {
            line(format!("extension {} : {}, {}", e.name, e.pi, e.iota));
        }
        for s in &self.sections {
            let kind = match &s.kind {
                KindDef::Symmetrized => "symmetrized".to_string(),
                KindDef::Hopf => "hopf".to_string(),
                KindDef::Ordered(o) if o.is_empty() => "ordered".to_string(),
                KindDef::Ordered(o) => format!("ordered {}", o.join(", ")),
            };
            line(format!("section {} : {} via {} {kind}", s.name, s.extension, s.morphism));
        }
        for p in &self.perturbations {
            line(format!("perturb {} : {} ({}, {}) += {}", p.name, p.section, p.left, p.right, p.value));
        }
        for r in &self.rainfogs {
            line(format!("rainfog {} : {} with {}", r.name, r.over, r.labels.join(", ")));
            for (x, n, e) in &r.nabla {
                line(format!("nabla {} {x} ({n}) = {e}", r.name));
            }
            for (x, y, e) in &r.tau {
                line(format!("tau {} [{x}, {y}] = {e}", r.name));
            }
        }
        out
    }
}

fn check_expr<T>(
    c: &Cursor,
    col: usize,
    r: Result<T, EvalError>,
) -> Result<T, DefError> {
    r.map_err(|e| DefError { line: c.line, column: col, message: e.to_string() })
}

fn need<'d, T>(c: &Cursor, found: Option<&'d T>, col: usize, what: &str, name: &str) -> Result<&'d T, DefError> {
    found.ok_or_else(|| DefError { line: c.line, column: col, message: format!("unresolved {what} '{name}'") })
}

fn label_in(c: &Cursor, labels: &[String], (col, l): &(usize, String), owner: &str) -> Result<(), DefError> {
    if labels.contains(l) {
        Ok(())
    } else {
        c.err(*col, format!("unresolved basis label '{l}' of {owner}"))
    }
}

/// Parses and resolves a definition file; the first problem is reported
/// with its line and column.
pub fn parse_definition(text: &str) -> Result<DefinitionDocument, DefError> {
    let mut doc = DefinitionDocument::default();
    let mut seen_base = false;
    for (idx, raw) in text.lines().enumerate() {
        let body = strip_comment(raw);
        let mut c = Cursor::new(body, idx + 1);
        if c.at_end() {
            continue;
        }
        let (kcol, kw) = c.name()?;
        if kw != "base" && !seen_base {
            return c.err(kcol, "the first statement must be 'base'");
        }
        match kw.as_str() {
            "base" => {
                if seen_base {
                    return c.err(kcol, "duplicate 'base' statement");
                }
                seen_base = true;
                if !c.at_end() {
                    for (col, v) in c.names()? {
                        if doc.base.contains(&v) {
                            return c.err(col, format!("duplicate base variable '{v}'"));
                        }
                        doc.base.push(v);
                    }
                }
            }
            "algebra" => {
                let (col, name) = c.name()?;
                if doc.name_taken(&name) {
                    return c.err(col, format!("duplicate name '{name}'"));
                }
                c.expect(":")?;
                let mut basis: Vec<String> = Vec::new();
                for (col, l) in c.names()? {
                    if basis.contains(&l) || doc.base.contains(&l) {
                        return c.err(col, format!("label '{l}' clashes with an earlier name"));
                    }
                    basis.push(l);
                }
                doc.algebras.push(AlgebraDef { name, basis, brackets: vec![], anchors: vec![] });
            }
            "bracket" => {
                let (col, name) = c.name()?;
                let alg = need(&c, doc.algebra(&name), col, "algebra", &name)?.clone();
                c.expect("[")?;
                let x = c.name()?;
                c.expect(",")?;
                let y = c.name()?;
                c.expect("]")?;
                c.expect("=")?;
                label_in(&c, &alg.basis, &x, &name)?;
                label_in(&c, &alg.basis, &y, &name)?;
                if x.1 == y.1 {
                    return c.err(y.0, "a bracket entry needs two distinct generators");
                }
                let (ecol, e) = c.rest_expr()?;
                check_expr(&c, ecol, eval_linear(&e, &scratch(&doc.base, &alg.basis)))?;
                let a = doc.algebras.iter_mut().find(|a| a.name == name).expect("resolved");
                if a.brackets.iter().any(|(p, q, _)| (p, q) == (&x.1, &y.1) || (p, q) == (&y.1, &x.1)) {
                    return c.err(x.0, format!("bracket [{}, {}] given twice", x.1, y.1));
                }
                a.brackets.push((x.1, y.1, e));
            }
            "anchor" => {
                let (col, name) = c.name()?;
                let alg = need(&c, doc.algebra(&name), col, "algebra", &name)?.clone();
                let x = c.name()?;
                label_in(&c, &alg.basis, &x, &name)?;
                c.expect("(")?;
                let (vcol, v) = c.name()?;
                if !doc.base.contains(&v) {
                    return c.err(vcol, format!("unresolved base variable '{v}'"));
                }
                c.expect(")")?;
                c.expect("=")?;
                let (ecol, e) = c.rest_expr()?;
                check_expr(&c, ecol, eval_poly(&e, &scratch(&doc.base, &[])))?;
                let a = doc.algebras.iter_mut().find(|a| a.name == name).expect("resolved");
                if a.anchors.iter().any(|(p, q, _)| (p, q) == (&x.1, &v)) {
                    return c.err(x.0, format!("anchor of {} on {v} given twice", x.1));
                }
                a.anchors.push((x.1, v, e));
            }
            "morphism" => {
                let (col, name) = c.name()?;
                if doc.name_taken(&name) {
                    return c.err(col, format!("duplicate name '{name}'"));
                }
                c.expect(":")?;
                let (scol, source) = c.name()?;
                need(&c, doc.algebra(&source), scol, "algebra", &source)?;
                c.expect("->")?;
                let (tcol, target) = c.name()?;
                need(&c, doc.algebra(&target), tcol, "algebra", &target)?;
                doc.morphisms.push(MorphismDef { name, source, target, images: vec![] });
            }
            "image" => {
                let (col, name) = c.name()?;
                let m = need(&c, doc.morphism(&name), col, "morphism", &name)?.clone();
                let x = c.name()?;
                label_in(&c, &doc.algebra(&m.source).expect("resolved").basis, &x, &m.source)?;
                c.expect("=")?;
                let (ecol, e) = c.rest_expr()?;
                let target = doc.algebra(&m.target).expect("resolved");
                check_expr(&c, ecol, eval_linear(&e, &scratch(&doc.base, &target.basis)))?;
                let m = doc.morphisms.iter_mut().find(|m| m.name == name).expect("resolved");
                if m.images.iter().any(|(p, _)| *p == x.1) {
                    return c.err(x.0, format!("image of {} given twice", x.1));
                }
                m.images.push((x.1, e));
            }
            "extension" => {
                let (col, name) = c.name()?;
                if doc.name_taken(&name) {
                    return c.err(col, format!("duplicate name '{name}'"));
                }
                c.expect(":")?;
                let (pcol, pi) = c.name()?;
                let pim = need(&c, doc.morphism(&pi), pcol, "morphism", &pi)?;
                c.expect(",")?;
                let (icol, iota) = c.name()?;
                let im = need(&c, doc.morphism(&iota), icol, "morphism", &iota)?;
                if im.target != pim.source {
                    return c.err(icol, format!("{iota} must land in {}, the source of {pi}", pim.source));
                }
                doc.extensions.push(ExtensionDef { name, pi, iota });
            }
            "section" => {
                let (col, name) = c.name()?;
                if doc.name_taken(&name) {
                    return c.err(col, format!("duplicate name '{name}'"));
                }
                c.expect(":")?;
                let (ecol, extension) = c.name()?;
                let ext = need(&c, doc.extension(&extension), ecol, "extension", &extension)?;
                let (g, h) = doc.extension_algebras(ext);
                c.expect("via")?;
                let (mcol, morphism) = c.name()?;
                let m = need(&c, doc.morphism(&morphism), mcol, "morphism", &morphism)?;
                if m.source != h.name || m.target != g.name {
                    return c.err(mcol, format!("{morphism} must go from {} to {}", h.name, g.name));
                }
                let (kcol, kind) = c.name()?;
                let kind = match kind.as_str() {
                    "symmetrized" => KindDef::Symmetrized,
                    "hopf" => KindDef::Hopf,
                    "ordered" => {
                        let order = if c.at_end() { vec![] } else { c.names()? };
                        for o in &order {
                            label_in(&c, &h.basis, o, &h.name)?;
                        }
                        let mut sorted: Vec<&String> = order.iter().map(|(_, l)| l).collect();
                        sorted.sort();
                        sorted.dedup();
                        if !order.is_empty() && (sorted.len() != order.len() || order.len() != h.basis.len()) {
                            return c.err(kcol, format!("the order must list each generator of {} once", h.name));
                        }
                        KindDef::Ordered(order.into_iter().map(|(_, l)| l).collect())
                    }
                    other => return c.err(kcol, format!("unknown section kind '{other}'")),
                };
                doc.sections.push(SectionDef { name, extension, morphism, kind });
            }
            "perturb" => {
                let (col, name) = c.name()?;
                if doc.name_taken(&name) {
                    return c.err(col, format!("duplicate name '{name}'"));
                }
                c.expect(":")?;
                let (scol, section) = c.name()?;
                let s = need(&c, doc.section(&section), scol, "section", &section)?;
                let (g, h) = doc.extension_algebras(doc.extension(&s.extension).expect("resolved"));
                let ((lcol, left), (rcol, right)) = c.expr_pair()?;
                c.expect("+=")?;
                let (vcol, value) = c.rest_expr()?;
                let hs = scratch(&doc.base, &h.basis);
                check_expr(&c, lcol, eval_mono(&left, &hs))?;
                check_expr(&c, rcol, eval_mono(&right, &hs))?;
                check_expr(&c, vcol, eval_elem(&value, &scratch(&doc.base, &g.basis)))?;
                doc.perturbations.push(PerturbDef { name, section, left, right, value });
            }
            "rainfog" => {
                let (col, name) = c.name()?;
                if doc.name_taken(&name) {
                    return c.err(col, format!("duplicate name '{name}'"));
                }
                c.expect(":")?;
                let (ocol, over) = c.name()?;
                need(&c, doc.algebra(&over), ocol, "algebra", &over)?;
                if !doc.base.is_empty() {
                    return c.err(ocol, "rain and fog data needs the base ℚ (an empty 'base')");
                }
                c.expect("with")?;
                let labels: Vec<String> = c.names()?.into_iter().map(|(_, l)| l).collect();
                doc.rainfogs.push(RainFogDef { name, over, labels, nabla: vec![], tau: vec![] });
            }
            "nabla" | "tau" => {
                let (col, name) = c.name()?;
                let rf = need(&c, doc.rainfog(&name), col, "rain and fog block", &name)?.clone();
                let h = doc.algebra(&rf.over).expect("resolved").clone();
                let (x, y) = if kw == "nabla" {
                    let x = c.name()?;
                    c.expect("(")?;
                    let n = c.name()?;
                    c.expect(")")?;
                    label_in(&c, &h.basis, &x, &h.name)?;
                    label_in(&c, &rf.labels, &n, &name)?;
                    (x.1, n.1)
                } else {
                    c.expect("[")?;
                    let x = c.name()?;
                    c.expect(",")?;
                    let y = c.name()?;
                    c.expect("]")?;
                    label_in(&c, &h.basis, &x, &h.name)?;
                    label_in(&c, &h.basis, &y, &h.name)?;
                    if x.1 == y.1 {
                        return c.err(y.0, "τ needs two distinct generators");
                    }
                    (x.1, y.1)
                };
                c.expect("=")?;
                let (ecol, e) = c.rest_expr()?;
                check_expr(&c, ecol, eval_linear(&e, &scratch(&[], &rf.labels)))?;
                let r = doc.rainfogs.iter_mut().find(|r| r.name == name).expect("resolved");
                let table = if kw == "nabla" { &mut r.nabla } else { &mut r.tau };
                if table.iter().any(|(p, q, _)| (p, q) == (&x, &y) || (kw == "tau" && (p, q) == (&y, &x))) {
                    return c.err(col, format!("{kw} entry ({x}, {y}) given twice"));
                }
                table.push((x, y, e));
            }
            other => return c.err(kcol, format!("unknown statement '{other}'")),
        }
        if !c.at_end() {
            return c.here("unexpected trailing input");
        }
    }
    if !seen_base {
        return Err(DefError { line: 1, column: 1, message: "missing 'base' statement".into() });
    }
    Ok(doc)
}

/// Resolved core objects for a parsed document.
pub struct Model {
    pub doc: DefinitionDocument,
    algebras: BTreeMap<String, Arc<LieRinehart>>,
}

/// What a section name resolves to.
pub struct SectionModel {
    pub extension: Extension,
    pub kind: SectionKind,
}

fn core<T>(r: lierine_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn evaluated<T>(r: Result<T, EvalError>) -> T {
    r.expect("checked while parsing")
}

impl Model {
    pub fn build(doc: DefinitionDocument) -> Result<Model, String> {
        let n = doc.base.len();
        let mut algebras = BTreeMap::new();
        for a in &doc.algebras {
            let mut l = LieRinehart::from_names(&a.name, doc.base.clone(), a.basis.clone());
            let sc = scratch(&doc.base, &a.basis);
            let idx = |s: &str| a.basis.iter().position(|b| b == s).expect("resolved");
            for (x, y, e) in &a.brackets {
                core(l.set_bracket(idx(x), idx(y), evaluated(eval_linear(e, &sc))))?;
            }
            let base = scratch(&doc.base, &[]);
            let mut anchors = vec![vec![Poly::zero(n); n]; a.basis.len()];
            for (x, v, e) in &a.anchors {
                let vi = doc.base.iter().position(|b| b == v).expect("resolved");
                anchors[idx(x)][vi] = evaluated(eval_poly(e, &base));
            }
            for (i, coeffs) in anchors.into_iter().enumerate() {
                core(l.set_anchor(i, core(Derivation::new(coeffs))?))?;
            }
            algebras.insert(a.name.clone(), Arc::new(l));
        }
        Ok(Model { doc, algebras })
    }

    pub fn algebra(&self, name: &str) -> Result<Arc<LieRinehart>, String> {
        self.algebras.get(name).cloned().ok_or_else(|| format!("no algebra named '{name}'"))
    }

    pub fn algebra_names(&self) -> Vec<String> {
        self.doc.algebras.iter().map(|a| a.name.clone()).collect()
    }

    pub fn uea(&self, name: &str) -> Result<Arc<Uea>, String> {
        Ok(Uea::new(self.algebra(name)?))
    }

    pub fn morphism(&self, name: &str) -> Result<LraMorphism, String> {
        let m = self.doc.morphism(name).ok_or_else(|| format!("no morphism named '{name}'"))?;
        let source = self.algebra(&m.source)?;
        let target = self.algebra(&m.target)?;
        let sc = scratch(&self.doc.base, target.labels());
        let mut images = vec![vec![Poly::zero(self.doc.base.len()); target.rank()]; source.rank()];
        for (x, e) in &m.images {
            let i = source.index_of(x).expect("resolved");
            images[i] = evaluated(eval_linear(e, &sc));
        }
        core(LraMorphism::new(name, source, target, images))
    }

    pub fn kernel_context(&self, ext: &str) -> Result<HopfKernelContext, String> {
        let e = self.doc.extension(ext).ok_or_else(|| format!("no extension named '{ext}'"))?;
        let (pi, iota) = (self.morphism(&e.pi)?, self.morphism(&e.iota)?);
        let (g, h, n) = (Uea::new(pi.source().clone()), Uea::new(pi.target().clone()), Uea::new(iota.source().clone()));
        core(HopfKernelContext::new(&pi, &iota, g, h, n))
    }

    pub fn section(&self, name: &str) -> Result<SectionModel, String> {
        let s = self.doc.section(name).ok_or_else(|| format!("no section named '{name}'"))?;
        let e = self.doc.extension(&s.extension).expect("resolved");
        let (pi, gamma, iota) = (self.morphism(&e.pi)?, self.morphism(&s.morphism)?, self.morphism(&e.iota)?);
        let h = pi.target().clone();
        let kind = match &s.kind {
            KindDef::Symmetrized => SectionKind::Symmetrized,
            KindDef::Hopf => SectionKind::HopfMorphism,
            KindDef::Ordered(o) if o.is_empty() => SectionKind::Ordered((0..h.rank()).collect()),
            KindDef::Ordered(o) => SectionKind::Ordered(o.iter().map(|l| h.index_of(l).expect("resolved")).collect()),
        };
        let extension = core(Extension::new(&s.extension, pi, gamma, iota))?;
        Ok(SectionModel { extension, kind })
    }

    /// A section's cocycle, or a perturbation of one.
    pub fn cocycle(&self, name: &str) -> Result<(SectionModel, Arc<HopfCocycle>), String> {
        if let Some(p) = self.doc.perturbation(name) {
            let s = self.section(&p.section)?;
            let hs = scratch(&self.doc.base, s.extension.h().lra().labels());
            let left = evaluated(eval_mono(&p.left, &hs));
            let right = evaluated(eval_mono(&p.right, &hs));
            let value = core_eval(eval_elem(&p.value, s.extension.g()))?;
            let c = core(s.extension.cocycle_with(s.kind.clone(), CocycleKind::Perturbed { left, right, value }))?;
            return Ok((s, c));
        }
        let s = self.section(name)?;
        let c = core(s.extension.cocycle(s.kind.clone()))?;
        Ok((s, c))
    }

    pub fn rainfog(&self, name: &str, kind: SectionKind) -> Result<RainFog, String> {
        let r = self.doc.rainfog(name).ok_or_else(|| format!("no rain and fog block named '{name}'"))?;
        let h = self.algebra(&r.over)?;
        let rank = r.labels.len();
        let sc = scratch(&[], &r.labels);
        let mut mats = vec![vec![vec![Poly::zero(0); rank]; rank]; h.rank()];
        for (x, n, e) in &r.nabla {
            let (i, k) = (h.index_of(x).expect("resolved"), r.labels.iter().position(|l| l == n).expect("resolved"));
            for (l, c) in evaluated(eval_linear(e, &sc)).into_iter().enumerate() {
                mats[i][l][k] = c;
            }
        }
        let nabla = core(Connection::new(h.clone(), rank, mats))?;
        let mut tau = Cochain::zero(2, &h, rank);
        for (x, y, e) in &r.tau {
            let (i, j) = (h.index_of(x).expect("resolved"), h.index_of(y).expect("resolved"));
            core(tau.set(&[i, j], evaluated(eval_linear(e, &sc))))?;
        }
        let labels: Vec<&str> = r.labels.iter().map(String::as_str).collect();
        core(RainFog::new(&labels, &nabla, &tau, kind))
    }
}

fn core_eval<T>(r: Result<T, EvalError>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}
