use std::sync::Arc;

use dgloci::dgring::{BaseAlgebra, DGRing};
use dgloci::modcomplex::{Length, PresentedModule};
use dgloci::polyalg::{FieldSpec, Ideal, PolyRing, Polynomial};
use proptest::prelude::*;

type PolySpec = Vec<(u32, u32, i64)>;

fn ring() -> Arc<PolyRing> {
    PolyRing::with_vars(FieldSpec::prime(5).unwrap(), &["x", "y"]).unwrap()
}

fn build(r: &Arc<PolyRing>, spec: &PolySpec) -> Polynomial {
    let mut p = r.zero();
    for &(a, b, c) in spec {
        p = &p + &(&r.from_i64(c) * &(&r.var(0).pow(a) * &r.var(1).pow(b)));
    }
    p
}

fn poly_spec() -> impl Strategy<Value = PolySpec> {
    prop::collection::vec((0u32..3, 0u32..3, 1i64..5), 1..3)
}

fn len(m: &PresentedModule) -> u64 {
    match m.length().unwrap() {
        Length::Finite(n) => n,
        Length::Infinite => panic!("infinite length in an artinian example"),
    }
}

fn module_at(a: &DGRing, n: i32) -> PresentedModule {
    a.cohomology_table().unwrap().get(n).cloned().unwrap_or_else(|| PresentedModule::zero(a.ring()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quotient_cuts_h0_by_the_element(
        extra in prop::option::of(poly_spec()),
        elements in prop::collection::vec(poly_spec(), 0..3),
        x in poly_spec(),
    ) {
        let r = ring();
        let mut gens = Vec::new();
        if let Some(e) = &extra {
            gens.push(build(&r, e));
        }
        let j = Ideal::new(&r, gens).unwrap();
        prop_assume!(!j.is_unit().unwrap());
        let b = BaseAlgebra::new(&j).unwrap();
        let x = build(&r, &x);
        let a = DGRing::koszul(b.clone(), elements.iter().map(|e| build(&r, e)).collect()).unwrap();
        let expected = a.h0_ideal().unwrap().add_generators(std::slice::from_ref(&x)).unwrap();
        prop_assert!(a.dg_quotient(&x).unwrap().h0_ideal().unwrap().equals(&expected).unwrap());

        let t = DGRing::trivial_extension(b, -2, 2).unwrap();
        if t.is_regular_element(&x).unwrap() && !expected.is_unit().unwrap() {
            let q = t.dg_quotient(&x).unwrap();
            let expected = t.h0_ideal().unwrap().add_generators(std::slice::from_ref(&x)).unwrap();
            prop_assert!(q.h0_ideal().unwrap().equals(&expected).unwrap());
        }
    }

    #[test]
    fn cone_lengths_split(
        a in 1u32..4,
        b in 1u32..4,
        elements in prop::collection::vec(poly_spec(), 0..3),
        x in poly_spec(),
    ) {
        let r = ring();
        let j = Ideal::new(&r, vec![r.var(0).pow(a), r.var(1).pow(b)]).unwrap();
        let base = BaseAlgebra::new(&j).unwrap();
        let x = build(&r, &x);
        let dg = DGRing::koszul(base, elements.iter().map(|e| build(&r, e)).collect()).unwrap();
        let q = dg.dg_quotient(&x).unwrap();
        let lo = -(elements.len() as i32) - 1;
        for n in lo..=0 {
            let coker = module_at(&dg, n).cokernel_of_multiplication(&x).unwrap();
            let ker = module_at(&dg, n + 1).kernel_of_multiplication(&x).unwrap();
            prop_assert_eq!(len(&module_at(&q, n)), len(&coker) + len(&ker), "degree {}", n);
        }
    }
}
