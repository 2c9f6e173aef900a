//! Canonical printing. Terms are ordered by monomial length (longest first),
//! then by PBW order; a multi-term coefficient is parenthesised.

use super::{Elem, Mono, Tensor, TensorMode};
use crate::Poly;
use num_traits::Signed;

pub fn mono_string(m: &[usize], labels: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let j = (i..m.len()).find(|&j| m[j] != m[i]).unwrap_or(m.len());
        let name = labels.get(m[i]).cloned().unwrap_or_else(|| format!("e{}", m[i]));
        parts.push(if j - i == 1 { name } else { format!("{name}^{}", j - i) });
        i = j;
    }
    parts.join("*")
}

/// Splits c·body into a sign and a printable magnitude.
pub(crate) fn signed_term(c: &Poly, body: &str, var_names: &[String], alone: bool) -> (bool, String) {
    if c.len() == 1 {
        let (e, k) = c.terms().next().expect("one term");
        let neg = k.is_negative();
        let mag = Poly::monomial(c.nvars(), e.clone(), k.abs());
        let mag_s = mag.to_string_with(var_names);
        return match (body.is_empty(), mag.is_one()) {
            (true, _) => (neg, mag_s),
            (false, true) => (neg, body.to_string()),
            (false, false) => (neg, format!("{mag_s}*{body}")),
        };
    }
    let cs = c.to_string_with(var_names);
    match (body.is_empty(), alone) {
        (true, true) => (false, cs),
        (true, false) => (false, format!("({cs})")),
        (false, _) => (false, format!("({cs})*{body}")),
    }
}

pub(crate) fn join_signed(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, s)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&s);
    }
    out
}

pub(crate) fn sorted_monos<'a, V>(it: impl Iterator<Item = (&'a Mono, V)>) -> Vec<(&'a Mono, V)> {
    let mut v: Vec<_> = it.collect();
    v.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(b.0)));
    v
}

pub fn elem_string(u: &Elem, labels: &[String], var_names: &[String]) -> String {
    let alone = u.len() == 1;
    let parts = sorted_monos(u.terms())
        .into_iter()
        .map(|(m, c)| signed_term(c, &mono_string(m, labels), var_names, alone))
        .collect();
    join_signed(parts)
}

/// Prints A-balanced tensors as m₁ ⊗ c*m₂; plain ones as [c] m₁ ⊗ m₂ with
/// primed names for the right-slot variables.
pub fn tensor_string(t: &Tensor, labels: &[String], var_names: &[String]) -> String {
    let leg = |m: &Mono| if m.is_empty() { "1".to_string() } else { mono_string(m, labels) };
    let mut keys: Vec<_> = t.terms().collect();
    keys.sort_by(|a, b| {
        let la = a.0 .0.len() + a.0 .1.len();
        let lb = b.0 .0.len() + b.0 .1.len();
        lb.cmp(&la).then_with(|| b.0 .0.len().cmp(&a.0 .0.len())).then_with(|| a.0.cmp(b.0))
    });
    let parts = keys
        .into_iter()
        .map(|((m1, m2), c)| match t.mode() {
            TensorMode::Plain => {
                let mut names = var_names.to_vec();
                names.extend(var_names.iter().map(|v| format!("{v}'")));
                let (neg, s) = signed_term(c, "", &names, false);
                let s = if s == "1" { String::new() } else { format!("{s}*") };
                (neg, format!("{s}{} ⊗ {}", leg(m1), leg(m2)))
            }
            _ => {
                let (neg, s) = signed_term(c, &mono_string(m2, labels), var_names, false);
                (neg, format!("{} ⊗ {}", leg(m1), if s.is_empty() { "1".into() } else { s }))
            }
        })
        .collect();
    join_signed(parts)
}
