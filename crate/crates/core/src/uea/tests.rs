use super::*;
use crate::combinat::{distinct_arrangements, monomials_up_to};
use crate::Derivation;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> crate::Rational {
    crate::Rational::new(n.into(), d.into())
}

fn heisenberg() -> Arc<Uea> {
    let g = LieRinehart::new("heis", &[], &["Q", "P", "C"]).with_bracket(1, 0, vec![
        Poly::zero(0),
        Poly::zero(0),
        Poly::one(0),
    ]);
    Uea::new(Arc::new(g))
}

/// A = ℚ[t], one generator X acting as d/dt.
fn weyl() -> Arc<Uea> {
    let g = LieRinehart::new("weyl", &["t"], &["X"]).with_anchor(0, Derivation::partial(1, 0));
    Uea::new(Arc::new(g))
}

/// A = ℚ[x, y], basis ∂x, ∂y, x∂y.
fn rank3() -> Arc<Uea> {
    let x = Poly::var(2, 0);
    let z = Poly::zero(2);
    let one = Poly::one(2);
    let g = LieRinehart::new("r3", &["x", "y"], &["Dx", "Dy", "E"])
        .with_anchor(0, Derivation::partial(2, 0))
        .with_anchor(1, Derivation::partial(2, 1))
        .with_anchor(2, Derivation::new(vec![z.clone(), x]).unwrap())
        .with_bracket(0, 2, vec![z.clone(), one, z]);
    assert!(g.validate().is_valid());
    Uea::new(Arc::new(g))
}

fn show(u: &Uea, e: &Elem) -> String {
    elem_string(e, u.lra().labels(), u.lra().var_names())
}

#[test]
fn canonical_commutation_relation() {
    let u = heisenberg();
    let pq = u.word(&[1, 0]);
    assert_eq!(show(&u, &pq), "Q*P + C");
    let ppq = u.word(&[1, 1, 0]);
    assert_eq!(show(&u, &ppq), "Q*P^2 + 2*P*C");
    assert_eq!(u.mul(&u.word(&[0, 1]), &u.gen(2)), u.mul(&u.gen(2), &u.word(&[0, 1])));
    assert_eq!(ppq.degree(), Some(3));
    assert_eq!(show(&u, &pq.truncate(1)), "C");
}

#[test]
fn anchor_commutation() {
    let u = weyl();
    let t = Poly::var(1, 0);
    let xt = u.normal_form(&[Factor::Gen(0), Factor::Coeff(t.clone())]).unwrap();
    assert_eq!(show(&u, &xt), "t*X + 1");
    assert_eq!(u.act_on_base(&u.gen(0), &t.pow(3)), t.pow(2).scale(&q(3, 1)));
    assert_eq!(u.act_on_base(&u.mono(&[0, 0]), &t.pow(2)), Poly::from_i64(1, 2));
    assert_eq!(u.act_on_base(&u.one(), &t), t);
    assert!(u.normal_form(&[Factor::Gen(3)]).is_err());
}

#[test]
fn counit_examples() {
    let u = weyl();
    let t = Poly::var(1, 0);
    assert!(Elem::term(t.clone(), vec![0]).counit().is_zero());
    assert_eq!(u.base(&t).counit(), t);
    let h = heisenberg();
    assert!(h.word(&[1, 0]).counit().is_zero());
}

#[test]
fn right_coefficient_forms() {
    let u = weyl();
    let t = Poly::var(1, 0);
    // t·X = X·t − 1
    let rf = u.right_coefficient_form(&Elem::term(t.clone(), vec![0]));
    assert_eq!(rf.get(&vec![0]), Some(&t));
    assert_eq!(rf.get(&vec![]), Some(&Poly::from_i64(1, -1)));
    // t·X² = X²·t − 2X
    let rf = u.right_coefficient_form(&Elem::term(t.clone(), vec![0, 0]));
    assert_eq!(rf.len(), 2);
    assert_eq!(rf[&vec![0, 0]], t);
    assert_eq!(rf[&vec![0]], Poly::from_i64(1, -2));
    let h = heisenberg();
    let e = h.word(&[1, 0]);
    let rf = h.right_coefficient_form(&e);
    assert_eq!(rf, e.terms().map(|(m, p)| (m.clone(), p.clone())).collect());
}

#[test]
fn coproduct_examples() {
    let u = weyl();
    let show_t = |t: &Tensor| tensor_string(t, u.lra().labels(), u.lra().var_names());
    assert_eq!(show_t(&coproduct(&u.gen(0))), "X ⊗ 1 + 1 ⊗ X");
    let t = Poly::var(1, 0);
    assert_eq!(show_t(&coproduct(&u.base(&t))), "1 ⊗ t");
    let h = heisenberg();
    let d = coproduct(&h.mono(&[0, 1]));
    assert_eq!(tensor_string(&d, h.lra().labels(), &[]), "Q*P ⊗ 1 + Q ⊗ P + P ⊗ Q + 1 ⊗ Q*P");
    assert_eq!(iterated_coproduct(&h.mono(&[0, 1])).len(), 9);
    assert_eq!(iterated_coproduct(&h.gen(0)).len(), 3);
}

#[test]
fn balancing() {
    let u = weyl();
    let t = Poly::var(1, 0);
    let lhs = Tensor::from_pair(&Elem::term(t.clone(), vec![0]), &u.gen(0), TensorMode::OverA, None).unwrap();
    let rhs = Tensor::from_pair(&u.gen(0), &Elem::term(t.clone(), vec![0]), TensorMode::OverA, None).unwrap();
    assert_eq!(lhs, rhs);
    // X·t ⊗ 1 = X ⊗ t in the A^op tensor even though X·t = t·X + 1.
    let xt = u.mul(&u.gen(0), &u.base(&t));
    let a = Tensor::from_pair(&xt, &u.one(), TensorMode::OverAop, Some(&u)).unwrap();
    let b = Tensor::from_pair(&u.gen(0), &u.base(&t), TensorMode::OverAop, Some(&u)).unwrap();
    assert_eq!(a, b);
    assert!(matches!(lhs.canonicalize(TensorMode::OverAop, Some(&u)), Err(Error::Unsupported(_))));
    let plain = Tensor::from_pair(&xt, &u.one(), TensorMode::Plain, None).unwrap();
    assert!(matches!(plain.canonicalize(TensorMode::OverAop, None), Err(Error::Unsupported(_))));
    let h = heisenberg();
    let prim = Tensor::from_pair(&h.gen(0), &h.one(), TensorMode::OverAop, Some(&h))
        .unwrap()
        .sub(&Tensor::from_pair(&h.one(), &h.gen(0), TensorMode::OverAop, Some(&h)).unwrap())
        .unwrap();
    assert_eq!(prim.canonicalize(TensorMode::OverAop, Some(&h)).unwrap(), prim);
}

#[test]
fn translation_examples() {
    let h = heisenberg();
    let s = |t: &Tensor| tensor_string(t, h.lra().labels(), &[]);
    assert_eq!(s(&translation(&h, &h.gen(0))), "Q ⊗ 1 - 1 ⊗ Q");
    // (QP)₊ ⊗ (QP)₋ = QP⊗1 − Q⊗P − P⊗Q + 1⊗PQ with PQ = QP + C
    assert_eq!(
        s(&translation(&h, &h.mono(&[0, 1]))),
        "Q*P ⊗ 1 - Q ⊗ P - P ⊗ Q + 1 ⊗ Q*P + 1 ⊗ C"
    );
    let u = weyl();
    let t = Poly::var(1, 0);
    let tr = translation(&u, &u.base(&t));
    assert_eq!(tensor_string(&tr, u.lra().labels(), u.lra().var_names()), "t*1 ⊗ 1");
}

#[test]
fn pushforward_examples() {
    let h = heisenberg();
    let ab = Arc::new(LieRinehart::new("h", &[], &["X", "Y"]));
    let v = Uea::new(ab.clone());
    let one = Poly::one(0);
    let z = Poly::zero(0);
    let pi = LraMorphism::new(
        "pi",
        h.lra().clone(),
        ab,
        vec![vec![one.clone(), z.clone()], vec![z.clone(), one.clone()], vec![z.clone(), z.clone()]],
    )
    .unwrap();
    let push = Pushforward::new(pi, h.clone(), v.clone()).unwrap();
    assert_eq!(push.apply(&h.gen(0)), v.gen(0));
    assert!(push.apply(&h.gen(2)).is_zero());
    assert_eq!(push.apply(&h.word(&[1, 0])), v.mono(&[0, 1]));
    let gamma = LraMorphism::new(
        "gamma",
        v.lra().clone(),
        h.lra().clone(),
        vec![vec![one.clone(), z.clone(), z.clone()], vec![z.clone(), one.clone(), z.clone()]],
    )
    .unwrap();
    assert!(matches!(Pushforward::new(gamma, v, h), Err(Error::Uncertified(_))));
}

#[test]
fn pbw_words_reduce_to_sorted_symbols() {
    for u in [heisenberg(), weyl(), rank3()] {
        for m in monomials_up_to(u.rank(), 4) {
            for w in distinct_arrangements(&m) {
                let nf = u.word(&w);
                assert_eq!(nf.homogeneous(m.len()), u.mono(&m), "symbol of {w:?}");
                assert!(nf.degree() == Some(m.len()));
            }
        }
    }
}

#[test]
fn rank_zero_degenerates() {
    let u = Uea::new(Arc::new(LieRinehart::new("a", &["t"], &[])));
    let t = Poly::var(1, 0);
    let a = u.base(&t);
    assert_eq!(u.mul(&a, &a), u.base(&t.pow(2)));
    assert_eq!(coproduct(&a).len(), 1);
    assert_eq!(u.multiply_out(&translation(&u, &a)), a);
}

fn rand_poly(nvars: usize, seeds: &[(u8, i8)]) -> Poly {
    let mut p = Poly::zero(nvars);
    for &(e, c) in seeds {
        if nvars == 0 {
            p += &Poly::from_i64(0, c as i64);
            continue;
        }
        let mut exp = vec![0u32; nvars];
        exp[(e as usize) % nvars] = (e as u32 / 3) % 3;
        p += &Poly::from_terms(nvars, [(exp, q(c as i64, 1))]);
    }
    p
}

fn rand_elem(u: &Uea, spec: &[(Vec<u8>, Vec<(u8, i8)>)]) -> Elem {
    let mut out = u.zero();
    for (w, cs) in spec {
        let m: Mono = w.iter().map(|&g| g as usize % u.rank()).collect();
        out = &out + &Elem::term(rand_poly(u.nvars(), cs), m);
    }
    out
}

fn elem_strategy() -> impl Strategy<Value = Vec<(Vec<u8>, Vec<(u8, i8)>)>> {
    prop::collection::vec(
        (prop::collection::vec(any::<u8>(), 0..4), prop::collection::vec((any::<u8>(), -3i8..4), 1..3)),
        1..3,
    )
}

fn algebras() -> Vec<Arc<Uea>> {
    vec![heisenberg(), weyl(), rank3()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn associativity(a in elem_strategy(), b in elem_strategy(), c in elem_strategy()) {
        for u in algebras() {
            let (x, y, z) = (rand_elem(&u, &a), rand_elem(&u, &b), rand_elem(&u, &c));
            prop_assert_eq!(u.mul(&u.mul(&x, &y), &z), u.mul(&x, &u.mul(&y, &z)));
        }
    }

    #[test]
    fn coproduct_is_multiplicative(a in elem_strategy(), b in elem_strategy()) {
        for u in algebras() {
            let (x, y) = (rand_elem(&u, &a), rand_elem(&u, &b));
            let lhs = coproduct(&u.mul(&x, &y));
            let rhs = u.tensor_mul(&coproduct(&x), &coproduct(&y)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn coalgebra_axioms(a in elem_strategy()) {
        for u in algebras() {
            let x = rand_elem(&u, &a);
            let d = coproduct(&x);
            prop_assert_eq!(delta_left(&d).unwrap(), delta_right(&d).unwrap());
            prop_assert_eq!(delta_left(&d).unwrap(), iterated_coproduct(&x));
            prop_assert_eq!(&counit_left(&d).unwrap(), &x);
            prop_assert_eq!(&counit_right(&d).unwrap(), &x);
            prop_assert_eq!(flip(&d).unwrap(), d);
        }
    }

    #[test]
    fn translation_identities(a in elem_strategy()) {
        for u in algebras() {
            let x = rand_elem(&u, &a);
            let t = translation(&u, &x);
            prop_assert_eq!(u.multiply_out(&t), u.base(&x.counit()));
            prop_assert_eq!(&u.counit_weighted_plus(&t), &x);
            let one = Tensor::from_pair(&x, &u.one(), TensorMode::OverA, None).unwrap();
            prop_assert_eq!(u.beta_after_translation(&t), one);
            let one_op = Tensor::from_pair(&x, &u.one(), TensorMode::OverAop, Some(&u)).unwrap();
            prop_assert_eq!(u.translation_after_coproduct(&x).unwrap(), one_op);
        }
    }

    #[test]
    fn right_form_round_trip(a in elem_strategy()) {
        for u in algebras() {
            let x = rand_elem(&u, &a);
            prop_assert_eq!(u.from_right_form(&u.right_coefficient_form(&x)), x);
        }
    }

    #[test]
    fn action_on_base(a in elem_strategy(), b in elem_strategy(), p in prop::collection::vec((any::<u8>(), -3i8..4), 1..3)) {
        for u in algebras() {
            let (x, y) = (rand_elem(&u, &a), rand_elem(&u, &b));
            let f = rand_poly(u.nvars(), &p);
            prop_assert_eq!(u.act_on_base(&u.mul(&x, &y), &f), u.act_on_base(&x, &u.act_on_base(&y, &f)));
        }
    }
}
