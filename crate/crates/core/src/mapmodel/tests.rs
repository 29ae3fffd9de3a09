use super::*;
use crate::dgl::free_lie;
use crate::gca::Cdga;

fn y4() -> Cdga {
    Cdga::from_text(&[("x1", 4), ("x2", 4), ("y", 7)], &[("y", "x1*x2")], &[], COMPLETE).unwrap()
}

fn y5() -> Cdga {
    Cdga::from_text(&[("x1", 5), ("x2", 5), ("y", 9)], &[("y", "x1*x2")], &[], COMPLETE).unwrap()
}

fn show(c: &Cdga, name: &str) -> String {
    c.differential(c.gens().lookup(name).unwrap()).fmt_with(c.gens())
}

#[test]
fn hypotheses_section4() {
    let prob = MapSpaceProblem::new("s4", sphere_model(2).unwrap(), YModel::Sullivan(y4()));
    let rep = check_hypotheses(&prob);
    assert!(rep.is_ok(), "{:?}", rep.violations);
    assert_eq!((rep.p, rep.m), (2, 3));
    assert!(rep.closed_odd_generators.is_empty());
    assert!(!rep.warnings.is_empty());
}

#[test]
fn hypotheses_connectivity_failure() {
    let l = Dgl::abelian(&[("l", 3)], COMPLETE).unwrap();
    let prob = MapSpaceProblem::new("bad", sphere_model(3).unwrap(), YModel::Lie(l));
    let rep = check_hypotheses(&prob);
    assert_eq!(rep.violations.len(), 1);
    assert_eq!(rep.violations[0].subject, "connectivity");
    assert_eq!(rep.closed_odd_generators, ["t"]);
}

#[test]
fn hypotheses_top_cohomology_vanishes() {
    // Λ(u, v)/(u², uv), d u = v: acyclic, so H^3 = 0 at declared top degree 3.
    let a = Cdga::from_text(&[("u", 2), ("v", 3)], &[("u", "v")], &["u^2", "u*v"], COMPLETE).unwrap();
    let x = FdCdgaModel::new(a, 3).unwrap();
    let prob = MapSpaceProblem::new("acyclic", x, YModel::Sullivan(y5()));
    let rep = check_hypotheses(&prob);
    assert_eq!(rep.violations.len(), 1);
    assert_eq!(rep.violations[0].subject, "H^p(X)");
}

#[test]
fn suspension_section4() {
    let s = suspension_model(&y4(), 2).unwrap();
    let c = &s.cdga;
    assert_eq!(c.gens().names(), ["x1", "x2", "y", "x1_bar", "x2_bar", "y_bar"]);
    assert_eq!(c.gens().degrees(), [4, 4, 7, 2, 2, 5]);
    assert_eq!(show(c, "y_bar"), "x1*x2_bar + x2*x1_bar");
    assert_eq!(show(c, "x1_bar"), "0");
    assert!(s.check().is_ok());
    assert!(c.is_minimal());
    assert!(s.inclusion(&y4()).unwrap().check().is_ok());
}

#[test]
fn suspension_odd_p_uses_minus_sign() {
    let s = suspension_model(&y5(), 3).unwrap();
    assert_eq!(s.cdga.gens().degrees(), [5, 5, 9, 2, 2, 6]);
    assert_eq!(show(&s.cdga, "y_bar"), "x1*x2_bar - x2*x1_bar");
    assert!(s.check().is_ok());
}

#[test]
fn suspension_single_generator() {
    let y = Cdga::from_text(&[("v", 6)], &[], &[], COMPLETE).unwrap();
    let s = suspension_model(&y, 3).unwrap();
    assert_eq!(s.cdga.gens().degrees(), [6, 3]);
    assert!(s.cdga.has_zero_differential());
}

#[test]
fn suspension_rejects_bad_input() {
    let nonmin = Cdga::from_text(&[("x", 4), ("y", 3)], &[("y", "x")], &[], COMPLETE);
    // |d y| must be 4: y has degree 3, dx has degree... x is closed, y ↦ x linear.
    let nonmin = nonmin.unwrap();
    assert!(matches!(suspension_model(&nonmin, 2), Err(Error::NotMinimal(_))));
    assert!(matches!(suspension_model(&y4(), 4), Err(Error::DegreeUnderflow(_))));
}

#[test]
fn even_p_needs_the_plus_sign() {
    // With d(Sv) = -S(dv) for p = 2, d² fails on z_bar.
    let y = Cdga::from_text(
        &[("x", 4), ("u", 4), ("y", 7), ("w", 7), ("z", 14)],
        &[("y", "x^2"), ("w", "u^2"), ("z", "y*u^2 - x^2*w")],
        &[],
        COMPLETE,
    )
    .unwrap();
    assert!(y.check().is_ok());
    let s = suspension_model(&y, 2).unwrap();
    assert!(s.check().is_ok());
    let mut d = s.cdga.differentials().to_vec();
    for g in s.base..2 * s.base {
        d[g] = d[g].neg();
    }
    let wrong = Cdga::new(s.cdga.gens().clone(), d, vec![], COMPLETE).unwrap();
    let v = wrong.check().unwrap_err();
    assert_eq!((v.kind, v.subject.as_str()), (ViolationKind::DSquared, "z_bar"));
}

#[test]
fn split_trivial() {
    let a = sphere_model(3).unwrap();
    let sp = split_odd_generator(&a, "t", None).unwrap();
    assert_eq!(sp.i, CdgaMorphism::identity(a.cdga()));
    assert_eq!(sp.q, CdgaMorphism::identity(a.cdga()));
}

#[test]
fn split_s3_times_s2() {
    let a = Cdga::from_text(&[("x", 2), ("t", 3)], &[], &["x^2"], COMPLETE).unwrap();
    let a = FdCdgaModel::new(a, 5).unwrap();
    let sp = split_odd_generator(&a, "t", None).unwrap();
    assert!(sp.q.image(0).is_zero());
    assert_eq!(sp.q.image(1), &Polynomial::generator(0));
    assert!(is_left_inverse(&sp.q, &sp.i).unwrap());
    // On the four basis elements 1, x, t, xt.
    let lin = FdCdgaModel::linear_map(&sp.q, &a, &sp.exterior).unwrap();
    let nonzero: Vec<&str> = (0..a.dim()).filter(|&k| !lin[k].is_empty()).map(|k| a.name(k)).collect();
    assert_eq!(nonzero, ["1", "t"]);
}

#[test]
fn split_with_differential_and_custom_complement() {
    // A = Λ(t, u, v)/(u², uv, tu, tv), |t| = 3, |u| = 2, |v| = 3, d u = v.
    let a = Cdga::from_text(
        &[("t", 3), ("u", 2), ("v", 3)],
        &[("u", "v")],
        &["u^2", "u*v", "t*u", "t*v"],
        COMPLETE,
    )
    .unwrap();
    let a = FdCdgaModel::new(a, 3).unwrap();
    let sp = split_odd_generator(&a, "t", None).unwrap();
    assert!(sp.q.image(2).is_zero());
    // Complement spanned by v + t: then v = (v + t) - t has t-coordinate -1,
    // and q(d u) = q(v) = -t != 0 = d q(u): reported, not repaired.
    let c = vec![Polynomial::parse(a.cdga().gens(), "v + t").unwrap()];
    let err = split_odd_generator(&a, "t", Some(&c)).unwrap_err();
    assert!(err.to_string().contains("not a CDGA morphism"));
}

#[test]
fn split_rejects_bad_t() {
    let a = sphere_model(2).unwrap();
    assert!(split_odd_generator(&a, "t", None).is_err());
    let b = Cdga::from_text(&[("u", 2), ("t", 3)], &[("u", "t")], &["u^2", "u*t"], COMPLETE).unwrap();
    let b = FdCdgaModel::new(b, 3).unwrap();
    assert!(split_odd_generator(&b, "t", None).is_err());
}

#[test]
fn reduce_sphere_to_itself() {
    let l = free_lie(&[("a", 5)], 15).unwrap();
    let prob = MapSpaceProblem::new("s3", sphere_model(3).unwrap(), YModel::Lie(l));
    let r = reduce_to_odd_sphere(&prob, "t", None).unwrap();
    assert!(r.lie_i.is_identity() && r.lie_q.is_identity());
    assert_eq!(r.f, CdgaMorphism::identity(&r.ce_small.cdga));
    assert_eq!(r.g, CdgaMorphism::identity(&r.ce_big.cdga));
}

#[test]
fn reduce_s1_times_s2() {
    let a = Cdga::from_text(&[("t", 1), ("x", 2)], &[], &["x^2"], COMPLETE).unwrap();
    let a = FdCdgaModel::new(a, 3).unwrap();
    let l = Dgl::abelian(&[("l", 5)], COMPLETE).unwrap();
    let prob = MapSpaceProblem::new("s1s2", a, YModel::Lie(l));
    assert!(check_hypotheses(&prob).is_ok());
    let r = reduce_to_odd_sphere(&prob, "t", None).unwrap();
    assert!(is_left_inverse(&r.g, &r.f).unwrap());
    assert!(r.f.check().is_ok() && r.g.check().is_ok());
    let comp = r.g.compose_after(&r.f).unwrap();
    assert!(comp.is_quasi_iso(6).unwrap());
}

#[test]
fn reduce_section4_shaped() {
    let a = Cdga::from_text(&[("x", 2), ("t", 3)], &[], &["x^2"], COMPLETE).unwrap();
    let a = FdCdgaModel::new(a, 5).unwrap();
    let l = free_lie(&[("a", 7), ("b", 7)], 21).unwrap();
    let prob = MapSpaceProblem::new("s3s2", a, YModel::Lie(l));
    let r = reduce_to_odd_sphere(&prob, "t", None).unwrap();
    assert!(is_left_inverse(&r.g, &r.f).unwrap());
}

#[test]
fn routes() {
    let prob = MapSpaceProblem::new("s4", sphere_model(2).unwrap(), YModel::Sullivan(y4()));
    assert!(matches!(map_model(&prob, None).unwrap(), MapModel::Suspension(_)));
    assert!(map_model(&prob, Some(Route::Lie)).is_err());
    let l = Dgl::abelian(&[("l", 3)], COMPLETE).unwrap();
    let thom = MapSpaceProblem::new("thom", sphere_model(2).unwrap(), YModel::Lie(l));
    let m = map_model(&thom, None).unwrap();
    assert_eq!(m.cdga().gens().degrees(), [2, 4]);
    assert!(m.cdga().has_zero_differential());
}
