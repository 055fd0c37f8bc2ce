use std::sync::Arc;

use dgloci::dgring::{BaseAlgebra, DGRing};
use dgloci::loci::{GorStatus, Loci, LociOptions};
use dgloci::polyalg::{FieldSpec, Ideal, PolyRing, Polynomial};
use dgloci::spectrum::ConstructibleSet;
use proptest::prelude::*;

fn ring() -> Arc<PolyRing> {
    PolyRing::with_vars(FieldSpec::prime(5).unwrap(), &["x", "y", "z"]).unwrap()
}

fn monomial(r: &Arc<PolyRing>, e: &[u32]) -> Polynomial {
    (0..3).fold(r.one(), |acc, i| &acc * &r.var(i).pow(e[i]))
}

fn monomials() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..3, 3), 0..3)
}

/// Monomial data keep the minimal primes of `H^0` computable.
#[derive(Debug, Clone)]
enum Shape {
    Ring,
    Koszul(Vec<Vec<u32>>),
    Trivial(i32, usize),
}

fn shape() -> impl Strategy<Value = Shape> {
    prop_oneof![
        Just(Shape::Ring),
        monomials().prop_map(Shape::Koszul),
        (1i32..4, 1usize..4).prop_map(|(k, r)| Shape::Trivial(-k, r)),
    ]
}

fn instance(defining: &[Vec<u32>], shape: &Shape) -> Option<Loci> {
    let r = ring();
    let j = Ideal::new(&r, defining.iter().map(|e| monomial(&r, e)).collect()).unwrap();
    if j.is_unit().unwrap() {
        return None;
    }
    let b = BaseAlgebra::new(&j).unwrap();
    let a = match shape {
        Shape::Ring => DGRing::ring_case(b),
        Shape::Koszul(es) => DGRing::koszul(b, es.iter().map(|e| monomial(&r, e)).collect()).unwrap(),
        Shape::Trivial(k, rank) => DGRing::trivial_extension(b, *k, *rank).unwrap(),
    };
    if a.h0_ideal().unwrap().is_unit().unwrap() {
        return None;
    }
    Some(Loci::new(a, LociOptions::default()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dense_open_part_is_dense_open_and_cm(defining in monomials(), shape in shape()) {
        let Some(l) = instance(&defining, &shape) else { return Ok(()) };
        let dense = l.cm_dense_open().unwrap();
        prop_assert!(dense.is_structurally_open().unwrap());
        prop_assert!(dense.is_dense_open(l.minimal_primes().unwrap()).unwrap());
        prop_assert!(dense.is_subset(l.cm_locus_exact().unwrap()).unwrap());
    }

    #[test]
    fn empty_gorenstein_locus_forces_empty_regular_locus(defining in monomials(), shape in shape()) {
        let Some(l) = instance(&defining, &shape) else { return Ok(()) };
        let reg = l.reg_locus().unwrap();
        prop_assert!(reg.is_subset(l.cm_locus_exact().unwrap()).unwrap());
        if let Ok(cert) = l.gor_certificate() {
            if cert.status == GorStatus::EmptyCertified {
                prop_assert!(reg.is_empty());
            }
        }
    }

    #[test]
    fn ring_case_cm_locus_is_where_the_dualizing_module_is_concentrated(defining in monomials()) {
        let Some(l) = instance(&defining, &Shape::Ring) else { return Ok(()) };
        let i0 = l.h0_ideal().unwrap();
        let mut oracle = ConstructibleSet::empty(&i0);
        for s in l.stratification_r().unwrap() {
            if s.amplitude() == Some(0) {
                oracle = oracle.union(&s.set).unwrap();
            }
        }
        prop_assert!(l.cm_locus_exact().unwrap().set_equals(&oracle).unwrap());
    }
}
