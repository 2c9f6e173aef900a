//! Evaluation of expressions in an enveloping algebra, its A-balanced tensor
//! square, or a crossed product B # V.

use std::fmt;
use std::sync::Arc;

use lierine_core::lie_rinehart::{ElemVec, LieRinehart};
use lierine_core::products::CrossedElement;
use lierine_core::uea::{elem_string, tensor_string, Elem, Tensor, TensorMode, Uea};
use lierine_core::Poly;

use crate::expr::{self, Expr, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalError {
    Syntax(SyntaxError),
    UnknownSymbol(String),
    TypeMismatch(String),
    Core(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Syntax(e) => write!(f, "syntax error at {e}"),
            EvalError::UnknownSymbol(s) => write!(f, "unknown symbol '{s}'"),
            EvalError::TypeMismatch(s) => write!(f, "type mismatch: {s}"),
            EvalError::Core(s) => f.write_str(s),
        }
    }
}

impl From<SyntaxError> for EvalError {
    fn from(e: SyntaxError) -> Self {
        EvalError::Syntax(e)
    }
}

impl From<lierine_core::Error> for EvalError {
    fn from(e: lierine_core::Error) -> Self {
        EvalError::Core(e.to_string())
    }
}

pub type EvalResult<T> = std::result::Result<T, EvalError>;

fn contains_marker(e: &Expr) -> Option<char> {
    match e {
        Expr::Tensor(..) => Some('⊗'),
        Expr::Cross(..) => Some('#'),
        Expr::Num(_) | Expr::Ident(_) => None,
        Expr::Neg(a) | Expr::Pow(a, _) => contains_marker(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => contains_marker(a).or_else(|| contains_marker(b)),
    }
}

/// Evaluates a marker-free expression through the PBW normal form of `u`.
pub fn eval_elem(e: &Expr, u: &Uea) -> EvalResult<Elem> {
    Ok(match e {
        Expr::Num(q) => u.base(&Poly::constant(u.nvars(), q.clone())),
        Expr::Ident(s) => {
            let lra = u.lra();
            if let Some(i) = lra.var_names().iter().position(|v| v == s) {
                u.base(&Poly::var(u.nvars(), i))
            } else if let Some(i) = lra.index_of(s) {
                u.gen(i)
            } else {
                return Err(EvalError::UnknownSymbol(s.clone()));
            }
        }
        Expr::Neg(a) => -eval_elem(a, u)?,
        Expr::Add(a, b) => eval_elem(a, u)? + eval_elem(b, u)?,
        Expr::Sub(a, b) => eval_elem(a, u)? - eval_elem(b, u)?,
        Expr::Mul(a, b) => u.mul(&eval_elem(a, u)?, &eval_elem(b, u)?),
        Expr::Pow(a, k) => u.pow(&eval_elem(a, u)?, *k),
        Expr::Tensor(..) => return Err(EvalError::TypeMismatch("tensor marker outside a tensor context".into())),
        Expr::Cross(..) => return Err(EvalError::TypeMismatch("crossed marker outside a crossed context".into())),
    })
}

/// Sums of `a ⊗ b` terms in the A-balanced tensor U ⊗_A U.
pub fn eval_tensor(e: &Expr, u: &Uea) -> EvalResult<Tensor> {
    Ok(match e {
        Expr::Add(a, b) => eval_tensor(a, u)?.add(&eval_tensor(b, u)?)?,
        Expr::Sub(a, b) => eval_tensor(a, u)?.sub(&eval_tensor(b, u)?)?,
        Expr::Neg(a) => eval_tensor(a, u)?.scale(&Poly::from_i64(u.nvars(), -1)),
        Expr::Tensor(a, b) => Tensor::from_pair(&eval_elem(a, u)?, &eval_elem(b, u)?, TensorMode::OverA, None)?,
        _ if contains_marker(e) == Some('#') => {
            return Err(EvalError::TypeMismatch("crossed marker in a tensor context".into()))
        }
        _ => return Err(EvalError::TypeMismatch(format!("'{e}' is not a sum of tensors"))),
    })
}

/// Sums of `b # v` terms with b in `g` and v in `h`.
pub fn eval_crossed(e: &Expr, g: &Uea, h: &Uea) -> EvalResult<CrossedElement> {
    Ok(match e {
        Expr::Add(a, b) => eval_crossed(a, g, h)?.add(&eval_crossed(b, g, h)?),
        Expr::Sub(a, b) => eval_crossed(a, g, h)?.sub(&eval_crossed(b, g, h)?),
        Expr::Neg(a) => eval_crossed(a, g, h)?.scale(&Poly::from_i64(g.nvars(), -1)),
        Expr::Cross(a, b) => CrossedElement::from_parts(&eval_elem(a, g)?, &eval_elem(b, h)?),
        _ if contains_marker(e) == Some('⊗') => {
            return Err(EvalError::TypeMismatch("tensor marker in a crossed context".into()))
        }
        _ => return Err(EvalError::TypeMismatch(format!("'{e}' is not a sum of crossed terms"))),
    })
}

pub fn parse_elem(text: &str, u: &Uea) -> EvalResult<Elem> {
    eval_elem(&expr::parse(text)?, u)
}

pub fn parse_tensor(text: &str, u: &Uea) -> EvalResult<Tensor> {
    eval_tensor(&expr::parse(text)?, u)
}

pub fn parse_crossed(text: &str, g: &Uea, h: &Uea) -> EvalResult<CrossedElement> {
    eval_crossed(&expr::parse(text)?, g, h)
}

pub fn show_elem(u: &Uea, e: &Elem) -> String {
    elem_string(e, u.lra().labels(), u.lra().var_names())
}

pub fn show_tensor(u: &Uea, t: &Tensor) -> String {
    tensor_string(t, u.lra().labels(), u.lra().var_names())
}

pub fn show_crossed(g: &Uea, h: &Uea, x: &CrossedElement) -> String {
    x.to_string_with(g.lra().labels(), h.lra().labels(), g.lra().var_names())
}

/// Abelian, anchor-free algebra on the same base and labels, in which
/// products of coefficients and generators commute.
pub fn scratch(var_names: &[String], labels: &[String]) -> Arc<Uea> {
    Uea::new(Arc::new(LieRinehart::from_names("scratch", var_names.to_vec(), labels.to_vec())))
}

/// Reads a linear combination Σ aᵢ eᵢ with polynomial coefficients.
pub fn eval_linear(e: &Expr, scratch: &Uea) -> EvalResult<ElemVec> {
    let v = eval_elem(e, scratch)?;
    let mut out = vec![Poly::zero(scratch.nvars()); scratch.rank()];
    for (m, p) in v.terms() {
        match m.as_slice() {
            [i] => out[*i] = p.clone(),
            _ => return Err(EvalError::TypeMismatch(format!("'{e}' is not linear in the basis"))),
        }
    }
    Ok(out)
}

/// Reads a base polynomial.
pub fn eval_poly(e: &Expr, scratch: &Uea) -> EvalResult<Poly> {
    let v = eval_elem(e, scratch)?;
    if v.terms().any(|(m, _)| !m.is_empty()) {
        return Err(EvalError::TypeMismatch(format!("'{e}' is not a base polynomial")));
    }
    Ok(v.coeff(&[]))
}

/// Reads a single monomial with coefficient 1.
pub fn eval_mono(e: &Expr, u: &Uea) -> EvalResult<Vec<usize>> {
    let v = eval_elem(e, u)?;
    let mut terms = v.terms();
    match (terms.next(), terms.next()) {
        (Some((m, p)), None) if p.is_one() => Ok(m.clone()),
        _ => Err(EvalError::TypeMismatch(format!("'{e}' is not a PBW monomial"))),
    }
}
