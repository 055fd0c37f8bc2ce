use std::sync::Arc;

use dgloci::dgring::{BaseAlgebra, DGRing};
use dgloci::loci::{
    artinian_gor_length_test, full_report, reduce_to_artinian, GorStatus, LengthVerdict, Loci, LociOptions,
};
use dgloci::modcomplex::Length;
use dgloci::polyalg::{FieldSpec, Ideal, PolyRing, Polynomial};
use dgloci::spectrum::ConstructibleSet;
use dgloci::Error;

fn ring(field: FieldSpec, vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::with_vars(field, vars).unwrap()
}

fn f5(vars: &[&str]) -> Arc<PolyRing> {
    ring(FieldSpec::prime(5).unwrap(), vars)
}

fn id(r: &Arc<PolyRing>, g: &[&str]) -> Ideal {
    Ideal::parse(r, g).unwrap()
}

fn polys(r: &Arc<PolyRing>, s: &[&str]) -> Vec<Polynomial> {
    s.iter().map(|t| r.parse(t).unwrap()).collect()
}

fn base(r: &Arc<PolyRing>, g: &[&str]) -> BaseAlgebra {
    BaseAlgebra::new(&id(r, g)).unwrap()
}

fn loci(dg: DGRing) -> Loci {
    Loci::new(dg, LociOptions::default())
}

fn nodes_t() -> (Arc<PolyRing>, Loci) {
    let r = f5(&["x", "y"]);
    let a = DGRing::trivial_extension(base(&r, &["x*y"]), -2, 2).unwrap();
    (r, loci(a))
}

fn cusp() -> (Arc<PolyRing>, Loci) {
    let r = f5(&["x", "y"]);
    let b = base(&r, &["y^2 - x^3"]).with_declared_primes(vec![id(&r, &["y^2 - x^3"])]).unwrap();
    (r, loci(DGRing::ring_case(b)))
}

fn whole(i0: &Ideal) -> ConstructibleSet {
    ConstructibleSet::whole(i0).unwrap()
}

#[test]
fn reg_of_trivial_extension_is_empty() {
    let (_, l) = nodes_t();
    assert!(l.reg_locus().unwrap().is_empty());
    // no minimal primes are needed for this
    let r = f5(&["x", "y"]);
    let cusp_t = DGRing::trivial_extension(base(&r, &["y^2 - x^3"]), -2, 2).unwrap();
    assert!(loci(cusp_t).reg_locus().unwrap().is_empty());
}

#[test]
fn reg_of_cusp_is_punctured() {
    let (r, l) = cusp();
    let reg = l.reg_locus().unwrap();
    let expected = ConstructibleSet::open(&l.h0_ideal().unwrap(), &id(&r, &["x", "y"])).unwrap();
    assert!(reg.set_equals(&expected).unwrap(), "{reg}");
}

#[test]
fn reg_of_koszul_on_a_variable() {
    let r = f5(&["x", "y"]);
    let a = DGRing::koszul(BaseAlgebra::polynomial(&r), polys(&r, &["x"])).unwrap();
    let l = loci(a);
    let i0 = l.h0_ideal().unwrap();
    assert!(l.reg_locus().unwrap().set_equals(&whole(&i0)).unwrap());
}

#[test]
fn cm_exact_examples() {
    let (_, l) = nodes_t();
    assert!(l.cm_locus_exact().unwrap().set_equals(&whole(&l.h0_ideal().unwrap())).unwrap());

    let r = f5(&["x", "y"]);
    let kxx = loci(DGRing::koszul(BaseAlgebra::polynomial(&r), polys(&r, &["x", "x"])).unwrap());
    assert!(kxx.cm_locus_exact().unwrap().set_equals(&whole(&kxx.h0_ideal().unwrap())).unwrap());

    let (_, c) = cusp();
    assert!(c.cm_locus_exact().unwrap().set_equals(&whole(&c.h0_ideal().unwrap())).unwrap());
}

#[test]
fn cm_exact_of_two_planes_misses_the_origin() {
    // two planes meeting in a point: not CM at the origin
    let r = f5(&["x", "y", "z", "w"]);
    let l = loci(DGRing::ring_case(base(&r, &["x*z", "x*w", "y*z", "y*w"])));
    let i0 = l.h0_ideal().unwrap();
    let expected = ConstructibleSet::open(&i0, &id(&r, &["x", "y", "z", "w"])).unwrap();
    assert!(l.cm_locus_exact().unwrap().set_equals(&expected).unwrap());
    let dense = l.cm_dense_open().unwrap();
    assert!(dense.is_subset(&expected).unwrap());
    let v = l.cm_global_check().unwrap();
    assert!(!v.cm_everywhere && v.equidimensional == Some(true) && v.conclusions.is_empty());
}

#[test]
fn dense_open_examples() {
    let (r, l) = nodes_t();
    let i0 = l.h0_ideal().unwrap();
    let dense = l.cm_dense_open().unwrap();
    let expected = ConstructibleSet::basic_open(&i0, &r.var(0))
        .unwrap()
        .union(&ConstructibleSet::basic_open(&i0, &r.var(1)).unwrap())
        .unwrap();
    assert!(dense.set_equals(&expected).unwrap());
    assert!(dense.is_dense_open(l.minimal_primes().unwrap()).unwrap());

    let (_, c) = cusp();
    let dense = c.cm_dense_open().unwrap();
    assert!(dense.set_equals(&whole(&c.h0_ideal().unwrap())).unwrap());
}

#[test]
fn dense_open_drops_high_supports() {
    // H^0 = P, H^{-1} = P/(x): R has pieces of different supports over an
    // irreducible spectrum, so the generic set cuts out V(x)
    let r = f5(&["x", "y"]);
    let a = DGRing::koszul(BaseAlgebra::polynomial(&r), polys(&r, &["x*y", "x"])).unwrap();
    let l = loci(a);
    let i0 = l.h0_ideal().unwrap();
    let dense = l.cm_dense_open().unwrap();
    assert!(dense.is_subset(l.cm_locus_exact().unwrap()).unwrap());
    assert!(dense.is_dense_open(l.minimal_primes().unwrap()).unwrap());
    assert!(!i0.is_zero());
}

#[test]
fn global_verdicts() {
    let (_, l) = nodes_t();
    let v = l.cm_global_check().unwrap();
    assert_eq!((v.amp_a, v.amp_r), (2, 2));
    assert!(v.full_bottom_support && v.cm_everywhere);
    let tags: Vec<&str> = v.conclusions.iter().map(|c| c.tag).collect();
    assert!(tags.contains(&"cm_via_full_bottom_support"));
    assert!(tags.contains(&"amp_equality_via_equidimensional_cm"));

    let (_, c) = cusp();
    let v = c.cm_global_check().unwrap();
    let tags: Vec<&str> = v.conclusions.iter().map(|c| c.tag).collect();
    assert!(tags.contains(&"cm_via_irreducible_spectrum"));
    assert!(tags.contains(&"cm_ring_via_concentrated_dualizing"));
}

#[test]
fn artinian_reductions() {
    let r = f5(&["x"]);
    let t = DGRing::trivial_extension(BaseAlgebra::polynomial(&r), -2, 2).unwrap();
    let red = reduce_to_artinian(&t, None, 0).unwrap();
    assert!(red.complete);
    assert_eq!(red.sequence, polys(&r, &["x"]));

    let art = DGRing::ring_case(base(&r, &["x^2"]));
    let red = reduce_to_artinian(&art, None, 0).unwrap();
    assert!(red.complete && red.sequence.is_empty());

    let r2 = f5(&["x", "y"]);
    let tb = DGRing::trivial_extension(base(&r2, &["x*y"]), -2, 2).unwrap();
    let cand = polys(&r2, &["x + y"]);
    let red = reduce_to_artinian(&tb, Some(&cand), 0).unwrap();
    assert_eq!(red.sequence, cand);
    let h0 = red.reduced.cohomology_table().unwrap().get(0).unwrap().length().unwrap();
    assert_eq!(h0, Length::Finite(2));
}

#[test]
fn length_test_examples() {
    let r = f5(&["x"]);
    let t = DGRing::trivial_extension(BaseAlgebra::polynomial(&r), -2, 2).unwrap();
    let red = t.dg_quotient(&r.var(0)).unwrap();
    let test = artinian_gor_length_test(&red).unwrap();
    assert_eq!(test.verdict, LengthVerdict::NotGorenstein { i: 0, left: 1, right: 2 });

    let k = DGRing::ring_case(base(&r, &["x"]));
    assert_eq!(artinian_gor_length_test(&k).unwrap().verdict, LengthVerdict::Inconclusive);

    let kx = DGRing::koszul(base(&r, &["x^2"]), polys(&r, &["x"])).unwrap();
    let test = artinian_gor_length_test(&kx).unwrap();
    assert_eq!(test.verdict, LengthVerdict::Inconclusive);
    assert_eq!(test.lengths.values().copied().collect::<Vec<_>>(), vec![1, 1]);

    let positive = DGRing::ring_case(BaseAlgebra::polynomial(&r));
    assert!(matches!(artinian_gor_length_test(&positive), Err(Error::Invalid(_))));
}

#[test]
fn trivial_extension_certificates() {
    let f3 = ring(FieldSpec::prime(3).unwrap(), &["t"]);
    let l = loci(DGRing::trivial_extension(BaseAlgebra::polynomial(&f3), -2, 2).unwrap());
    let cert = l.trivial_ext_gor_certificate().unwrap();
    assert_eq!(cert.status, GorStatus::EmptyCertified);
    let sample = cert.evidence.sample.unwrap();
    assert_eq!(sample.verdict, LengthVerdict::NotGorenstein { i: 0, left: 1, right: 2 });

    let q = ring(FieldSpec::rationals(), &["x"]);
    let l = loci(DGRing::trivial_extension(base(&q, &["x^3"]), -2, 2).unwrap());
    let cert = l.trivial_ext_gor_certificate().unwrap();
    assert_eq!(cert.status, GorStatus::EmptyCertified);
    assert_eq!(cert.evidence.sample.unwrap().verdict, LengthVerdict::NotGorenstein { i: 0, left: 3, right: 6 });

    let l = loci(DGRing::trivial_extension(BaseAlgebra::polynomial(&f3), -2, 1).unwrap());
    assert_eq!(l.trivial_ext_gor_certificate().unwrap().status, GorStatus::Inconclusive);

    let k = loci(DGRing::ring_case(BaseAlgebra::polynomial(&f3)));
    assert!(matches!(k.trivial_ext_gor_certificate(), Err(Error::Invalid(_))));
}

#[test]
fn full_report_examples() {
    let (r, l) = nodes_t();
    let rep = full_report(&l).unwrap();
    assert!(rep.reg.computed().unwrap().is_empty());
    assert_eq!(rep.gor.computed().unwrap().status, GorStatus::EmptyCertified);
    assert!(rep.cm_exact.set_equals(&whole(&rep.h0_ideal)).unwrap());
    let dense = rep.cm_dense_open.computed().unwrap();
    let expected = ConstructibleSet::basic_open(&rep.h0_ideal, &r.var(0))
        .unwrap()
        .union(&ConstructibleSet::basic_open(&rep.h0_ideal, &r.var(1)).unwrap())
        .unwrap();
    assert!(dense.set_equals(&expected).unwrap());

    let (r, c) = cusp();
    let rep = full_report(&c).unwrap();
    let expected = ConstructibleSet::open(&rep.h0_ideal, &id(&r, &["x", "y"])).unwrap();
    assert!(rep.reg.computed().unwrap().set_equals(&expected).unwrap());
    assert!(rep.cm_exact.set_equals(&whole(&rep.h0_ideal)).unwrap());

    let r3 = f5(&["x", "y", "z"]);
    let k = loci(DGRing::koszul(BaseAlgebra::polynomial(&r3), polys(&r3, &["x", "y", "z"])).unwrap());
    let rep = full_report(&k).unwrap();
    assert!(rep.reg.computed().unwrap().set_equals(&whole(&rep.h0_ideal)).unwrap());
    assert!(rep.cm_exact.set_equals(&whole(&rep.h0_ideal)).unwrap());
}

#[test]
fn unknown_primes_leave_sections_unavailable() {
    let r = f5(&["x", "y"]);
    let l = loci(DGRing::ring_case(base(&r, &["y^2 - x^3"])));
    let rep = full_report(&l).unwrap();
    assert!(rep.cm_dense_open.computed().is_none());
    assert!(rep.reg.computed().is_none());
    assert!(rep.cm_exact.set_equals(&whole(&rep.h0_ideal)).unwrap());
}

#[test]
fn parallel_report_matches_serial() {
    let r = f5(&["x", "y"]);
    let mk = |parallel| {
        let a = DGRing::trivial_extension(base(&r, &["x*y"]), -2, 2).unwrap();
        full_report(&Loci::new(a, LociOptions { parallel, ..Default::default() })).unwrap()
    };
    let (a, b) = (mk(false), mk(true));
    assert_eq!(a.cm_exact.to_string(), b.cm_exact.to_string());
    assert_eq!(
        a.cm_dense_open.computed().unwrap().to_string(),
        b.cm_dense_open.computed().unwrap().to_string()
    );
}
