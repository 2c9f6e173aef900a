use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::catalog::{self, heisenberg, heisenberg_lra, ordered, reversed};
use crate::combinat::monomials_up_to;
use crate::error::Error;
use crate::lie_rinehart::LraMorphism;
use crate::uea::{elem_string, Elem, Uea};
use crate::{Poly, Rational};

fn show(u: &Uea, e: &Elem) -> String {
    elem_string(e, u.lra().labels(), u.lra().var_names())
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

fn heis() -> Arc<Uea> {
    Uea::new(Arc::new(heisenberg_lra()))
}

#[test]
fn symmetrisation_of_two_symbols() {
    let g = heis();
    let s = Symmetrization::new(g.clone());
    assert_eq!(show(&g, &s.apply_mono(&vec![0, 1])), "Q*P + 1/2*C");
    let both = &g.word(&[0, 1]) + &g.word(&[1, 0]);
    assert_eq!(s.apply_mono(&vec![0, 1]), both.left_scale(&Poly::constant(0, half())));
    assert_eq!(s.apply_mono(&vec![1, 1, 0]), s.apply_mono(&vec![0, 1, 1]));
    assert_eq!(s.apply(&SymElem::one(0)), g.one());
}

#[test]
fn inverse_symmetrisation_subtracts_the_commutator() {
    let g = heis();
    let s = Symmetrization::new(g.clone());
    let inv = s.inverse(&g.mono(&[0, 1]));
    let mut expected = SymElem::term(Poly::one(0), vec![0, 1]);
    expected.add_term(vec![2], Poly::constant(0, -half()));
    assert_eq!(inv, expected);
}

#[test]
fn symmetrisation_round_trips_on_catalog_algebras() {
    for (name, g) in catalog::algebras().unwrap() {
        let s = Symmetrization::new(g.clone());
        for m in monomials_up_to(g.rank(), 4) {
            let sym = SymElem::term(Poly::one(g.nvars()), m.clone());
            assert_eq!(s.inverse(&s.apply(&sym)), sym, "{name}: S⁻¹S on {m:?}");
            assert_eq!(s.apply(&s.inverse(&g.mono(&m))), g.mono(&m), "{name}: SS⁻¹ on {m:?}");
        }
    }
}

#[test]
fn symmetrisation_is_a_coring_map_but_multiplication_is_not() {
    let g = heis();
    let s = Symmetrization::new(g.clone());
    let f = |u: &Elem| s.apply(&SymElem::from_symbols(u));
    let report = check_coring_morphism(&g, &f, 4);
    assert!(report.passed(), "{:?}", report.witness);
    assert_eq!(report.checked, monomials_up_to(3, 4).len());
    let left_q = |u: &Elem| g.mul(&g.gen(0), u);
    let bad = check_coring_morphism(&g, &left_q, 2);
    assert_eq!(bad.witness.as_deref(), Some("counit fails on 1"));
}

#[test]
fn heisenberg_sections_on_xy() {
    let ext = heisenberg().unwrap();
    let g = ext.g().clone();
    let xy = vec![0, 1];
    let ord = ext.section(ordered()).unwrap();
    let rev = ext.section(reversed()).unwrap();
    let sym = ext.section(SectionKind::Symmetrized).unwrap();
    assert_eq!(show(&g, &ord.apply_mono(&xy)), "Q*P");
    assert_eq!(show(&g, &rev.apply_mono(&xy)), "Q*P + C");
    assert_eq!(show(&g, &sym.apply_mono(&xy)), "Q*P + 1/2*C");
    assert_eq!(&rev.apply_mono(&xy) - &ord.apply_mono(&xy), g.gen(2));
    assert_eq!(show(&g, &ord.apply_mono(&vec![0, 1, 1])), "Q*P^2");
    assert_eq!(show(&g, &rev.apply_mono(&vec![0, 1, 1])), "Q*P^2 + 2*P*C");
    for s in [&ord, &rev, &sym] {
        assert_eq!(s.section_witness(4), None, "{}", s.name());
        let r = check_coring_morphism(ext.h(), &|u| s.apply(u), 4);
        assert!(r.passed(), "{}: {:?}", s.name(), r.witness);
    }
}

#[test]
fn sections_share_their_graded_map() {
    let ext = heisenberg().unwrap();
    let ord = ext.section(ordered()).unwrap();
    let rev = ext.section(reversed()).unwrap();
    let sym = ext.section(SectionKind::Symmetrized).unwrap();
    assert!(sections_equivalent(&ord, &rev, 4));
    assert!(sections_equivalent(&ord, &sym, 4));
    assert!(sections_equivalent(&rev, &sym, 4));

    let mut images = ext.gamma.images().to_vec();
    images[0][2] = Poly::one(0);
    let shifted = LraMorphism::new("γ'", ext.h().lra().clone(), ext.g().lra().clone(), images).unwrap();
    let other = CoringSection::new("Γ'", &ext.pi, &shifted, ext.g().clone(), ext.h().clone(), ordered()).unwrap();
    assert_eq!(other.section_witness(3), None);
    assert!(!sections_equivalent(&ord, &other, 2));
}

#[test]
fn hopf_section_needs_a_lie_rinehart_section() {
    let ext = heisenberg().unwrap();
    let err = ext.section(SectionKind::HopfMorphism).err().unwrap();
    assert!(matches!(err, Error::Uncertified(_)), "{err}");
    let smash = catalog::smash_extension().unwrap();
    let u = smash.section(SectionKind::HopfMorphism).unwrap();
    let ord = smash.section(SectionKind::Ordered(vec![0])).unwrap();
    for m in monomials_up_to(1, 4) {
        assert_eq!(u.apply_mono(&m), ord.apply_mono(&m));
    }
}

#[test]
fn a_non_section_is_rejected() {
    let ext = heisenberg().unwrap();
    let mut images = ext.gamma.images().to_vec();
    images.swap(0, 1);
    let swapped = LraMorphism::new("γ''", ext.h().lra().clone(), ext.g().lra().clone(), images).unwrap();
    let r = CoringSection::new("bad", &ext.pi, &swapped, ext.g().clone(), ext.h().clone(), ordered());
    assert!(matches!(r, Err(Error::NotASection(_))));
}

#[test]
fn theta_on_heisenberg_centre() {
    let theta = catalog::heisenberg_theta().unwrap();
    let g = heis();
    assert_eq!(show(&g, &theta.apply_basis(&vec![0], &vec![0, 1])), "Q*P*C + 1/2*C^2");
    assert_eq!(theta.apply_basis(&vec![], &vec![]), g.one());
    for d in 0..=4 {
        let piece = theta.piece(d);
        assert!(piece.bijective(), "{piece:?}");
    }
    assert_eq!(theta.piece(2).codomain_dim, 10);
}

#[test]
fn theta_on_rank3_transformation_algebra() {
    let theta = catalog::rank3_theta().unwrap();
    for d in 0..=4 {
        assert!(theta.piece(d).bijective(), "degree {d}");
    }
}

#[test]
fn theta_needs_a_complement() {
    let g = Arc::new(heisenberg_lra());
    let c = Arc::new(crate::lie_rinehart::LieRinehart::new("c", &[], &["C"]));
    let e = |i: usize| (0..3).map(|j| if i == j { Poly::one(0) } else { Poly::zero(0) }).collect::<Vec<_>>();
    let iota = LraMorphism::new("ι", c.clone(), g.clone(), vec![e(2)]).unwrap();
    let r = Theta::new(&iota, vec![e(0), e(2)], Uea::new(c), Uea::new(g));
    assert!(matches!(r, Err(Error::Precondition(_))));
}

fn arb_sym() -> impl Strategy<Value = SymElem> {
    let term = (prop::collection::vec(0usize..3, 0..=4), -4i64..=4, 0u32..=2, 0usize..2);
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        let mut s = SymElem::zero(2);
        for (m, c, e, v) in ts {
            let p = Poly::var(2, v).pow(e).scale(&Rational::from_integer(c.into()));
            s = s.add(&SymElem::term(p, m));
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn symmetrisation_is_invertible_over_polynomial_base(s in arb_sym()) {
        let g = Uea::new(Arc::new(catalog::rank3_lra().unwrap()));
        let sym = Symmetrization::new(g);
        prop_assert_eq!(sym.inverse(&sym.apply(&s)), s);
    }

    #[test]
    fn symmetrisation_preserves_top_symbols(s in arb_sym()) {
        let g = Uea::new(Arc::new(catalog::rank3_lra().unwrap()));
        let sym = Symmetrization::new(g);
        if let Some(d) = s.degree() {
            let top = sym.apply(&s).homogeneous(d);
            let mut expected = SymElem::zero(2);
            for (m, p) in s.terms().filter(|(m, _)| m.len() == d) {
                expected.add_term(m.clone(), p.clone());
            }
            prop_assert_eq!(SymElem::from_symbols(&top), expected);
        }
    }
}
