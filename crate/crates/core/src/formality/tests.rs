use super::*;
use crate::dgl::{Dgl, FdCdgaModel};
use num::Zero;
use crate::gca::{Cdga, CdgaMorphism, GeneratorSet, Polynomial};
use crate::mapmodel::{reduce_to_odd_sphere, sphere_model, suspension_model, MapSpaceProblem, YModel};
use crate::{free_lie, COMPLETE};

fn y4() -> Cdga {
    Cdga::from_text(&[("x1", 4), ("x2", 4), ("y", 7)], &[("y", "x1*x2")], &[], COMPLETE).unwrap()
}

fn y5() -> Cdga {
    Cdga::from_text(&[("x1", 5), ("x2", 5), ("y", 9)], &[("y", "x1*x2")], &[], COMPLETE).unwrap()
}

/// Number of monomials of each degree in a free algebra, by direct
/// enumeration of exponent vectors.
fn monomial_counts(degrees: &[u32], upto: u32) -> Vec<usize> {
    let mut counts = vec![0usize; upto as usize + 1];
    fn go(degrees: &[u32], i: usize, total: u32, upto: u32, counts: &mut [usize]) {
        if i == degrees.len() {
            counts[total as usize] += 1;
            return;
        }
        let max_e = if degrees[i] % 2 == 1 { 1 } else { u32::MAX };
        let mut e = 0;
        while e <= max_e && total + e * degrees[i] <= upto {
            go(degrees, i + 1, total + e * degrees[i], upto, counts);
            e += 1;
        }
    }
    go(degrees, 0, 0, upto, &mut counts);
    counts
}

#[test]
fn cohomology_algebra_of_section4_target() {
    let h = CohomologyAlgebra::of_cdga(&y4(), 16).unwrap();
    assert_eq!(h.gens().names(), ["x1", "x2"]);
    let rels: Vec<String> = h.relations().iter().map(|r| r.fmt_with(h.gens())).collect();
    assert_eq!(rels, ["x1*x2"]);
    assert_eq!(h.ranks(16).unwrap(), vec![1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2]);
}

#[test]
fn cohomology_algebra_of_exterior_target() {
    let h = CohomologyAlgebra::of_cdga(&y5(), 30).unwrap();
    let g = h.gens();
    assert_eq!(g.degrees(), [5, 5, 14, 14]);
    assert_eq!(&g.names()[..2], ["x1", "x2"]);
    assert!(!h.relations().is_empty());
    // Cross-check against the model's own ranks.
    assert_eq!(h.ranks(30).unwrap(), y5().cohomology_ranks(30).unwrap());
}

#[test]
fn free_cohomology_examples() {
    let free = CohomologyAlgebra::from_text(&[("vb", 2), ("v", 4)], &[], COMPLETE).unwrap();
    let cert = free_cohomology_check(&free, 12).unwrap();
    assert_eq!(free.ranks(12).unwrap(), monomial_counts(&[2, 4], 12));
    assert_eq!(free.ranks(8).unwrap(), vec![1, 0, 1, 0, 2, 0, 2, 0, 3]);
    let Certificate::FreeCohomology { generators, .. } = &cert else { panic!() };
    assert_eq!(generators, &[("vb".to_string(), 2), ("v".to_string(), 4)]);
    assert!(cert.replay().is_ok());

    let quotient = CohomologyAlgebra::from_text(&[("x1", 4), ("x2", 4)], &["x1*x2"], COMPLETE).unwrap();
    assert_eq!(quotient.rank(8).unwrap(), 2);
    assert!(free_cohomology_check(&quotient, 8).is_none());

    let trivial = CohomologyAlgebra::from_text(&[], &[], COMPLETE).unwrap();
    let Some(Certificate::FreeCohomology { generators, .. }) = free_cohomology_check(&trivial, 10) else { panic!() };
    assert!(generators.is_empty());
}

#[test]
fn free_certificate_with_model_replays() {
    let m = suspension_model(&Cdga::from_text(&[("v", 4)], &[], &[], COMPLETE).unwrap(), 2).unwrap().cdga;
    let h = CohomologyAlgebra::of_cdga(&m, 12).unwrap();
    let cert = free_cohomology_certificate(&m, &h, 12).unwrap();
    assert!(cert.replay().is_ok());
    let back = Certificate::from_json(&cert.to_json()).unwrap();
    assert_eq!(back, cert);
}

fn ring(gens: &[(&str, u32)]) -> GeneratorSet {
    GeneratorSet::new(gens.iter().map(|&(n, d)| (n.to_string(), d))).unwrap()
}

#[test]
fn regular_sequence_examples() {
    let r = ring(&[("x1", 2), ("x2", 2)]);
    let p = |s: &str| Polynomial::parse(&r, s).unwrap();
    assert_eq!(regular_sequence_check(&r, &[p("x1"), p("x2")], 20).unwrap(), RegularSequence::Yes { upto: 20 });
    match regular_sequence_check(&r, &[p("x1"), p("x1*x2")], 20).unwrap() {
        RegularSequence::No { index, degree, witness } => {
            assert_eq!((index, degree), (1, 0));
            assert_eq!(witness, Polynomial::one());
        }
        other => panic!("{other:?}"),
    }
    let r4 = ring(&[("x1", 4), ("x2", 4), ("x1_bar", 2), ("x2_bar", 2)]);
    let q = |s: &str| Polynomial::parse(&r4, s).unwrap();
    let seq = [q("x1*x2"), q("x1_bar*x2 + x1*x2_bar")];
    assert_eq!(regular_sequence_check(&r4, &seq, 20).unwrap(), RegularSequence::Yes { upto: 20 });
}

#[test]
fn regular_sequence_errors() {
    let r = ring(&[("x", 2), ("t", 3)]);
    assert!(regular_sequence_check(&r, &[], 4).is_err());
    let r = ring(&[("x", 2), ("z", 4)]);
    let inhom = Polynomial::parse(&r, "x + z").unwrap();
    assert!(matches!(regular_sequence_check(&r, &[inhom], 8), Err(crate::Error::Inhomogeneous(_))));
}

#[test]
fn koszul_section4() {
    let m = suspension_model(&y4(), 2).unwrap().cdga;
    let v = koszul_formality(&m, 16).unwrap();
    assert_eq!(v.verdict, Verdict::Formal);
    assert_eq!(v.bound, Some(16));
    assert_eq!(v.certificate_kind(), Some("KoszulRegularSequence"));
    assert!(v.replay().is_ok());
    let Some(Certificate::KoszulRegularSequence { rho, .. }) = &v.certificate else { panic!() };
    assert!(rho.morphism().unwrap().is_quasi_iso(16).unwrap());
}

#[test]
fn koszul_two_sphere() {
    let s2 = Cdga::from_text(&[("x", 2), ("y", 3)], &[("y", "x^2")], &[], COMPLETE).unwrap();
    let v = koszul_formality(&s2, 12).unwrap();
    assert_eq!(v.verdict, Verdict::Formal);
    assert_eq!(s2.cohomology_ranks(11).unwrap(), vec![1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
}

#[test]
fn koszul_shape_mismatch_is_unknown() {
    let a = Cdga::from_text(&[("a", 3), ("b", 3), ("c", 5)], &[("c", "a*b")], &[], COMPLETE).unwrap();
    let v = koszul_formality(&a, 12).unwrap();
    assert_eq!(v.verdict, Verdict::Unknown);
    assert!(v.notes[0].contains("odd generator"));
    assert!(koszul_formality(&suspension_model(&y5(), 3).unwrap().cdga, 20).unwrap().verdict == Verdict::Unknown);
}

#[test]
fn koszul_non_regular_is_unknown() {
    // d y = x^2, d z = x^2: the second is a zero divisor.
    let a = Cdga::from_text(&[("x", 2), ("y", 3), ("z", 3)], &[("y", "x^2"), ("z", "x^2")], &[], COMPLETE).unwrap();
    assert_eq!(koszul_formality(&a, 10).unwrap().verdict, Verdict::Unknown);
}

#[test]
fn transfer_examples() {
    let m = suspension_model(&y4(), 2).unwrap().cdga;
    let inner = koszul_formality(&m, 16).unwrap();
    let id = CdgaMorphism::identity(&m);
    let v = transfer_formality(&id, &id, &inner).unwrap();
    assert_eq!((v.verdict, v.bound), (Verdict::Formal, Some(16)));
    assert!(v.replay().is_ok());

    let mut images: Vec<Polynomial> = id.images().to_vec();
    images[0] = images[0].scale(&crate::int(2));
    let bad = CdgaMorphism::new(m.clone(), m.clone(), images).unwrap();
    assert!(transfer_formality(&bad, &id, &inner).is_err());
}

#[test]
fn transfer_along_odd_sphere_reduction() {
    // X = S^3 x S^2 (A = Λ(x,t)/(x²)), Y abelian in degree 7: formality of
    // C*(A ⊗ L) transfers to C*(Λt ⊗ L).
    let a = Cdga::from_text(&[("x", 2), ("t", 3)], &[], &["x^2"], COMPLETE).unwrap();
    let a = FdCdgaModel::new(a, 5).unwrap();
    let l = Dgl::abelian(&[("l", 7)], COMPLETE).unwrap();
    let prob = MapSpaceProblem::new("s3s2", a, YModel::Lie(l));
    let r = reduce_to_odd_sphere(&prob, "t", None).unwrap();
    let big = &r.ce_big.cdga;
    let hb = CohomologyAlgebra::of_cdga(big, 20).unwrap();
    let cert = free_cohomology_certificate(big, &hb, 20).unwrap();
    let v = transfer_formality(&r.f, &r.g, &FormalityVerdict::formal(20, cert)).unwrap();
    assert_eq!(v.certificate_kind(), Some("Transfer"));
    assert!(v.replay().is_ok());
    let json = v.to_json();
    assert_eq!(FormalityVerdict::from_json(&json).unwrap(), v);
}

fn names_of_lower(b: &BigradedModel, i: u32) -> Vec<String> {
    b.generators_of_lower(i).iter().map(|&g| b.cdga.gens().name(g).to_string()).collect()
}

#[test]
fn bigraded_free() {
    let h = CohomologyAlgebra::from_text(&[("v", 4)], &[], COMPLETE).unwrap();
    let b = bigraded_model(&h, 12).unwrap();
    assert_eq!(b.cdga.gens().names(), ["v"]);
    assert!(b.cdga.has_zero_differential());
}

#[test]
fn bigraded_section4() {
    let h = CohomologyAlgebra::from_text(&[("x1", 4), ("x2", 4)], &["x1*x2"], COMPLETE).unwrap();
    let b = bigraded_model(&h, 16).unwrap();
    assert_eq!(names_of_lower(&b, 0), ["x1", "x2"]);
    assert_eq!(names_of_lower(&b, 1), ["y1"]);
    assert_eq!(b.max_lower(), 1);
    let y = b.cdga.gens().lookup("y1").unwrap();
    assert_eq!(b.cdga.gens().degree(y), 7);
    assert_eq!(b.cdga.differential(y).fmt_with(b.cdga.gens()), "x1*x2");
    assert!(b.rho.is_quasi_iso(16).unwrap());
}

#[test]
fn bigraded_truncated_polynomial() {
    let h = CohomologyAlgebra::from_text(&[("x", 2)], &["x^3"], COMPLETE).unwrap();
    let b = bigraded_model(&h, 10).unwrap();
    assert_eq!(names_of_lower(&b, 0), ["x"]);
    assert_eq!(names_of_lower(&b, 1), ["y1"]);
    assert_eq!(b.cdga.gens().degree(1), 5);
    assert_eq!(b.cdga.differential(1).fmt_with(b.cdga.gens()), "x^3");
    // Oracle: ranks of the model equal those of Q[x]/(x³).
    assert_eq!(b.cdga.cohomology_ranks(10).unwrap(), vec![1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0]);
    assert!(lemma36_scan(&b, 10).unwrap().is_empty());
}

#[test]
fn bigraded_needs_enough_cohomology() {
    let h = CohomologyAlgebra::from_text(&[("x", 2)], &["x^3"], 8).unwrap();
    assert!(matches!(bigraded_model(&h, 10), Err(crate::Error::TruncationOverflow { .. })));
    assert!(CohomologyAlgebra::from_text(&[("a", 1)], &[], COMPLETE).is_err());
}

#[test]
fn bigraded_exterior_has_higher_lower_degrees() {
    let h = CohomologyAlgebra::of_cdga(&y5(), 24).unwrap();
    let b = bigraded_model(&h, 22).unwrap();
    assert!(b.max_lower() >= 2);
    assert!(b.rho.is_quasi_iso(22).unwrap());
}

#[test]
fn barred_section4() {
    let h = CohomologyAlgebra::from_text(&[("x1", 4), ("x2", 4)], &["x1*x2"], COMPLETE).unwrap();
    let b = bigraded_model(&h, 16).unwrap();
    let bb = barred_bigraded_model(&b, 2).unwrap();
    assert_eq!(names_of_lower(&bb, 0), ["x1", "x2", "x1_bar", "x2_bar"]);
    assert_eq!(names_of_lower(&bb, 1), ["y1", "y1_bar"]);
    let g = bb.cdga.gens();
    assert_eq!(bb.cdga.differential(g.lookup("y1_bar").unwrap()).fmt_with(g), "x1*x2_bar + x2*x1_bar");
    // Here H_0 is the Koszul quotient and ρ is a quasi-isomorphism.
    assert!(bb.rho.is_quasi_iso(bb.cdga.truncation() - 1).unwrap());
    assert_eq!(bar_obstruction(&bb).unwrap(), None);
    match super::bigraded::bar_obstruction_of(&bb) {
        BarObstruction::Absent(why) => assert!(why.contains("even")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn barred_free_has_zero_differential() {
    let h = CohomologyAlgebra::from_text(&[("v", 6)], &[], COMPLETE).unwrap();
    let bb = barred_bigraded_model(&bigraded_model(&h, 12).unwrap(), 3).unwrap();
    assert!(bb.cdga.has_zero_differential());
    assert_eq!(bar_obstruction(&bb).unwrap(), None);
}

#[test]
fn barred_exterior_degrees_and_underflow() {
    let h = CohomologyAlgebra::from_text(&[("x1", 5), ("x2", 5)], &["x1*x2"], COMPLETE).unwrap();
    let b = bigraded_model(&h, 12).unwrap();
    let bb = barred_bigraded_model(&b, 3).unwrap();
    let g = bb.cdga.gens();
    let barred: Vec<u32> = (bb.bar.unwrap().base..g.len()).map(|i| g.degree(i)).collect();
    assert_eq!(&barred[..3], [2, 2, 6]);
    let low = CohomologyAlgebra::from_text(&[("x", 2)], &[], COMPLETE).unwrap();
    assert!(matches!(
        barred_bigraded_model(&bigraded_model(&low, 6).unwrap(), 2),
        Err(crate::Error::DegreeUnderflow(_))
    ));
}

#[test]
fn bar_obstruction_exterior() {
    let h = CohomologyAlgebra::of_cdga(&y5(), 25).unwrap();
    let b = bigraded_model(&h, 23).unwrap();
    let bb = barred_bigraded_model(&b, 3).unwrap();
    let v = bar_obstruction(&bb).unwrap().unwrap();
    assert_eq!(v.verdict, Verdict::NonFormal);
    assert_eq!(v.bound, None);
    let Some(Certificate::BarLinearityObstruction { witness, .. }) = &v.certificate else { panic!() };
    assert_eq!(witness, "y1_bar");
    assert_eq!(bb.cdga.gens().degree(bb.cdga.gens().lookup(witness).unwrap()), 6);
    assert!(v.replay().is_ok());
    let scan = lemma36_scan(&bb, 20).unwrap();
    assert!(!scan.is_empty());
    assert!(scan.iter().all(|e| e.status == Lemma36Status::Missing));
    assert_eq!(scan[0].w, "y1_bar");
    assert_eq!(scan[0].powers, [2, 3]);
    // The barred model carries cohomology in positive lower degree.
    assert!(!bb.rho.is_quasi_iso(20).unwrap());
}

#[test]
fn lemma36_finds_witness() {
    // H = Q[a, b]/(ab) with |a| = 3, |b| = 4 is formal; y1 (degree 6, lower
    // degree 1) must have some w' with d w' = y1^2 + Ω.
    let h = CohomologyAlgebra::from_text(&[("a", 3), ("b", 4)], &["a*b"], COMPLETE).unwrap();
    let b = bigraded_model(&h, 14).unwrap();
    let g = b.cdga.gens();
    assert_eq!(g.degree(g.lookup("y1").unwrap()), 6);
    let scan = lemma36_scan(&b, 14).unwrap();
    let entry = scan.iter().find(|e| e.w == "y1").unwrap();
    let Lemma36Status::Witnessed { w_prime, n, omega } = &entry.status else { panic!("{entry:?}") };
    assert_eq!(*n, 2);
    let wp = Polynomial::parse(g, w_prime).unwrap();
    let expect = Polynomial::parse(g, "y1^2").unwrap().add(&Polynomial::parse(g, omega).unwrap());
    assert_eq!(b.cdga.apply_d(&wp).unwrap(), expect);
    let y2 = Polynomial::parse(g, "y1^2").unwrap();
    let (m, _) = y2.terms().next().unwrap();
    assert!(Polynomial::parse(g, omega).unwrap().coefficient(m).is_zero());
    assert!(lemma36_evidence(&b, 14).unwrap().is_none());
}

#[test]
fn lemma36_vacuous_without_even_positive_generators() {
    let cdga = Cdga::from_text(&[("x", 4), ("y", 7)], &[("y", "x^2")], &[], COMPLETE).unwrap();
    let b = BigradedModel::structural(cdga, vec![0, 1], None).unwrap();
    assert!(lemma36_scan(&b, 20).unwrap().is_empty());
    let closed = Cdga::from_text(&[("x", 4), ("w", 6)], &[], &[], COMPLETE).unwrap();
    assert!(BigradedModel::structural(closed, vec![0, 1], None).is_err());
}

#[test]
fn pipeline_section4() {
    let prob = MapSpaceProblem::new("section4", sphere_model(2).unwrap(), YModel::Sullivan(y4()));
    let v = formality_pipeline(&prob, 16).unwrap();
    assert_eq!(v.verdict, Verdict::Formal);
    assert_eq!(v.certificate_kind(), Some("KoszulRegularSequence"));
    assert!(v.replay().is_ok());
}

#[test]
fn pipeline_thom() {
    let l = Dgl::abelian(&[("l", 3)], COMPLETE).unwrap();
    let prob = MapSpaceProblem::new("thom", sphere_model(2).unwrap(), YModel::Lie(l));
    let v = formality_pipeline(&prob, 12).unwrap();
    assert_eq!(v.verdict, Verdict::Formal);
    assert_eq!(v.certificate_kind(), Some("FreeCohomology"));
    assert!(v.replay().is_ok());
}

#[test]
fn pipeline_nonformal() {
    let prob = MapSpaceProblem::new("nonformal", sphere_model(3).unwrap(), YModel::Sullivan(y5()));
    let v = formality_pipeline(&prob, 20).unwrap();
    assert_eq!(v.verdict, Verdict::NonFormal);
    assert_eq!(v.certificate_kind(), Some("BarLinearityObstruction"));
    assert_eq!(v.evidence.len(), 1);
    assert!(v.replay().is_ok());
}

#[test]
fn pipeline_small_bound_is_unknown() {
    let prob = MapSpaceProblem::new("section4", sphere_model(2).unwrap(), YModel::Sullivan(y4()));
    assert_eq!(formality_pipeline(&prob, 4).unwrap().verdict, Verdict::Unknown);
}

#[test]
fn pipeline_rejects_hypothesis_failure() {
    let l = Dgl::abelian(&[("l", 3)], COMPLETE).unwrap();
    let prob = MapSpaceProblem::new("bad", sphere_model(3).unwrap(), YModel::Lie(l));
    assert!(formality_pipeline(&prob, 10).is_err());
}

#[test]
fn pipeline_free_lie_target() {
    // Y = S^4 via the free Lie algebra on one degree-3 class, X = S^3:
    // H*(S^4) is not free and p is odd.
    let l = free_lie(&[("a", 5)], 40).unwrap();
    let prob = MapSpaceProblem::new("s3s6", sphere_model(3).unwrap(), YModel::Lie(l));
    let v = formality_pipeline(&prob, 12).unwrap();
    assert_eq!(v.verdict, Verdict::NonFormal);
}

#[test]
fn certificates_detect_tampering() {
    let m = suspension_model(&y4(), 2).unwrap().cdga;
    let v = koszul_formality(&m, 12).unwrap();
    let mut tampered = v.clone();
    if let Some(Certificate::KoszulRegularSequence { sequence, .. }) = &mut tampered.certificate {
        sequence[1] = "x1_bar*x2 - x1*x2_bar".into();
    }
    assert!(tampered.replay().is_err());
    let mut tampered = v.clone();
    if let Some(Certificate::KoszulRegularSequence { rho, .. }) = &mut tampered.certificate {
        rho.images[0] = "0".into();
    }
    assert!(tampered.replay().is_err());
}
