use super::*;
use crate::{int, Violation, ViolationKind, COMPLETE};

fn y4() -> Cdga {
    Cdga::from_text(&[("x1", 4), ("x2", 4), ("y", 7)], &[("y", "x1*x2")], &[], COMPLETE).unwrap()
}

fn p(a: &Cdga, s: &str) -> Polynomial {
    Polynomial::parse(a.gens(), s).unwrap()
}

#[test]
fn normalize_word_signs() {
    let g = GeneratorSet::new([("x1", 4), ("y", 7), ("a", 3), ("b", 3)]).unwrap();
    let (s, m) = normalize_word(&g, &[1, 0]).unwrap();
    assert_eq!((s, m), (1, Monomial::from_exponents(vec![1, 1])));
    let (s, m) = normalize_word(&g, &[3, 2]).unwrap();
    assert_eq!((s, m.fmt_with(&g)), (-1, "a*b".to_string()));
    assert_eq!(normalize_word(&g, &[1, 1]).unwrap().0, 0);
}

#[test]
fn multiply_examples() {
    let a = y4();
    let x1x2 = a.multiply(&p(&a, "x1"), &p(&a, "x2"));
    assert_eq!(x1x2, p(&a, "x1*x2"));
    assert_eq!(x1x2.degree(a.gens()).unwrap(), Some(8));
    assert_eq!(a.multiply(&Polynomial::one(), &x1x2), x1x2);
    let g = GeneratorSet::new([("a", 3)]).unwrap();
    assert!(multiply(&g, &Polynomial::generator(0), &Polynomial::generator(0)).is_zero());
}

#[test]
fn degree_basis_examples() {
    let a = y4();
    let names = |n| a.degree_basis(n).unwrap().iter().map(|m| m.fmt_with(a.gens())).collect::<Vec<_>>();
    assert_eq!(names(8), ["x1^2", "x1*x2", "x2^2"]);
    assert_eq!(names(0), ["1"]);
    assert_eq!(names(7), ["y"]);
    let t = a.clone().with_truncation(8);
    assert!(matches!(t.degree_basis(9), Err(crate::Error::TruncationOverflow { .. })));
}

#[test]
fn derivation_examples() {
    let a = y4();
    assert_eq!(a.apply_d(&p(&a, "y")).unwrap(), p(&a, "x1*x2"));
    assert!(a.apply_d(&Polynomial::one()).unwrap().is_zero());
    // S of degree -2 on Λ(x1, x2, xb1, xb2): S xi = xbi.
    let g = GeneratorSet::new([("x1", 4), ("x2", 4), ("xb1", 2), ("xb2", 2)]).unwrap();
    let s = Derivation::new(
        -2,
        vec![Polynomial::generator(2), Polynomial::generator(3), Polynomial::zero(), Polynomial::zero()],
    );
    let img = apply_derivation(&g, &s, &Polynomial::parse(&g, "x1*x2").unwrap());
    assert_eq!(img, Polynomial::parse(&g, "xb1*x2 + x1*xb2").unwrap());
}

#[test]
fn derivation_respects_truncation() {
    let a = y4().with_truncation(7);
    assert!(matches!(a.apply_d(&p(&a, "y")), Err(crate::Error::TruncationOverflow { needed: 8, bound: 7 })));
}

#[test]
fn check_cdga_examples() {
    let model = Cdga::from_text(
        &[("x1", 4), ("x2", 4), ("y", 7), ("xb1", 2), ("xb2", 2), ("yb", 5)],
        &[("y", "x1*x2"), ("yb", "-xb1*x2 - x1*xb2")],
        &[],
        COMPLETE,
    )
    .unwrap();
    assert!(model.check().is_ok());

    let bad_degree = Cdga::from_text(&[("x", 2)], &[("x", "x^2")], &[], COMPLETE).unwrap();
    let v: Violation = bad_degree.check().unwrap_err();
    assert_eq!(v.kind, ViolationKind::Degree);

    let bad_d2 = Cdga::from_text(
        &[("x1", 4), ("x2", 4), ("x", 7), ("y", 6)],
        &[("x", "x1*x2"), ("y", "x")],
        &[],
        COMPLETE,
    )
    .unwrap();
    let v = bad_d2.check().unwrap_err();
    assert_eq!((v.kind, v.subject.as_str()), (ViolationKind::DSquared, "y"));
}

#[test]
fn cohomology_examples() {
    let a = y4();
    let h8 = a.cohomology(8).unwrap();
    assert_eq!(h8.rank, 2);
    assert_eq!(h8.representatives, vec![p(&a, "x1^2"), p(&a, "x2^2")]);
    assert_eq!(a.cohomology(0).unwrap().rank, 1);
    assert_eq!(a.cohomology(7).unwrap().rank, 0);
    assert_eq!(a.cohomology_ranks(12).unwrap(), vec![1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2]);
    let short = a.clone().with_truncation(8);
    assert!(short.cohomology(8).is_err());
    assert!(short.cohomology(7).is_ok());
}

#[test]
fn cohomology_class_coordinates() {
    let a = y4();
    let h8 = a.cohomology(8).unwrap();
    assert_eq!(h8.class_of(&p(&a, "3*x1^2 - x2^2")).unwrap(), vec![int(3), int(-1)]);
    assert!(h8.is_coboundary(&p(&a, "x1*x2")).unwrap());
    let h7 = a.cohomology(7).unwrap();
    assert!(h7.class_of(&p(&a, "y")).is_err());
}

#[test]
fn quotient_algebras() {
    // H*(S²) = Λ(t)/(t²), and an exterior-with-relation example.
    let s2 = Cdga::from_text(&[("t", 2)], &[], &["t^2"], COMPLETE).unwrap();
    assert_eq!(s2.cohomology_ranks(6).unwrap(), vec![1, 0, 1, 0, 0, 0, 0]);
    let h = Cdga::from_text(&[("x1", 4), ("x2", 4)], &[], &["x1*x2"], COMPLETE).unwrap();
    assert_eq!(h.cohomology_ranks(12).unwrap(), vec![1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2]);
    assert_eq!(h.normal_form(&p(&h, "x1^2*x2 + x2^3")).unwrap(), p(&h, "x2^3"));
    let ideal_not_closed = Cdga::from_text(&[("x", 2), ("y", 3)], &[("y", "x^2")], &["y"], COMPLETE).unwrap();
    assert_eq!(ideal_not_closed.check().unwrap_err().kind, ViolationKind::IdealNotStable);
}

#[test]
fn morphism_examples() {
    let a = y4();
    let id = CdgaMorphism::identity(&a);
    assert!(id.check().is_ok());
    assert_eq!(id.induced_map(8).unwrap(), crate::RatMatrix::identity(2));
    assert!(id.is_quasi_iso(16).unwrap());

    let kill_y = CdgaMorphism::from_text(&a, &a, &[("x1", "x1"), ("x2", "x2")]).unwrap();
    let v = kill_y.check().unwrap_err();
    assert_eq!((v.kind, v.subject.as_str()), (ViolationKind::NotCochainMap, "y"));

    let q = Cdga::free(GeneratorSet::default(), COMPLETE);
    let aug = CdgaMorphism::from_text(&a, &q, &[]).unwrap();
    assert!(aug.check().is_ok());
    assert!(aug.induced_map(4).unwrap().is_zero());
    let rep = aug.quasi_iso_report(6).unwrap();
    assert_eq!(rep.first_failure(), Some(4));
}

#[test]
fn inclusion_of_odd_generator() {
    let lt = Cdga::from_text(&[("t", 7)], &[], &[], COMPLETE).unwrap();
    let ly = Cdga::from_text(&[("y", 7)], &[], &[], COMPLETE).unwrap();
    let inc = CdgaMorphism::from_text(&lt, &ly, &[("t", "y")]).unwrap();
    assert!(inc.check().is_ok());
    assert_eq!(inc.induced_map(7).unwrap().rank(), 1);
    assert!(inc.is_quasi_iso(20).unwrap());
}

#[test]
fn koszul_quasi_iso_into_cohomology() {
    let model = Cdga::from_text(
        &[("x1", 4), ("x2", 4), ("y", 7), ("xb1", 2), ("xb2", 2), ("yb", 5)],
        &[("y", "x1*x2"), ("yb", "-xb1*x2 - x1*xb2")],
        &[],
        COMPLETE,
    )
    .unwrap();
    let h = Cdga::from_text(
        &[("x1", 4), ("x2", 4), ("xb1", 2), ("xb2", 2)],
        &[],
        &["x1*x2", "xb1*x2 + x1*xb2"],
        COMPLETE,
    )
    .unwrap();
    let rho = CdgaMorphism::from_text(&model, &h, &[("x1", "x1"), ("x2", "x2"), ("xb1", "xb1"), ("xb2", "xb2")]).unwrap();
    assert!(rho.check().is_ok());
    assert!(rho.is_quasi_iso(16).unwrap());
}

#[test]
fn composition_and_left_inverse() {
    let a = y4();
    let scale = CdgaMorphism::from_text(&a, &a, &[("x1", "2*x1"), ("x2", "x2"), ("y", "2*y")]).unwrap();
    let unscale = CdgaMorphism::from_text(&a, &a, &[("x1", "1/2*x1"), ("x2", "x2"), ("y", "1/2*y")]).unwrap();
    assert!(scale.check().is_ok() && unscale.check().is_ok());
    assert!(is_left_inverse(&unscale, &scale).unwrap());
    assert!(!is_left_inverse(&scale, &scale).unwrap());
    let comp = scale.compose_after(&scale).unwrap();
    assert!(comp.is_quasi_iso(12).unwrap());
}
