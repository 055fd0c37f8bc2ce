use std::collections::BTreeMap;
use std::sync::Arc;

use dgloci::modcomplex::{free_resolution_of_complex, ComplexMap, FreeComplex, Length, PresentedModule};
use dgloci::polyalg::{FieldSpec, Ideal, Matrix, PolyRing, Polynomial};
use proptest::prelude::*;

fn ring() -> Arc<PolyRing> {
    PolyRing::with_vars(FieldSpec::prime(5).unwrap(), &["x", "y"]).unwrap()
}

/// Polynomials of degree <= 2 from coefficient lists.
fn poly(r: &Arc<PolyRing>, coeffs: &[i64]) -> Polynomial {
    let monos = ["1", "x", "y", "x^2", "x*y", "y^2"];
    let mut p = r.zero();
    for (c, m) in coeffs.iter().zip(monos) {
        p = &p + &(&r.from_i64(*c) * &r.parse(m).unwrap());
    }
    p
}

fn len(m: &PresentedModule) -> u64 {
    m.length().unwrap().finite().expect("finite length")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_characteristic_of_artinian_two_term(
        entries in proptest::collection::vec(proptest::collection::vec(-2i64..3, 6), 4),
        rows in 1usize..3,
    ) {
        let r = ring();
        let j = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        let cols = entries.len() / rows;
        let flat: Vec<Polynomial> = entries.iter().take(rows * cols).map(|c| poly(&r, c)).collect();
        let d = Matrix::new(&r, rows, cols, flat).unwrap();
        let c = FreeComplex::new(&j, -1, vec![cols, rows], vec![d]).unwrap();
        let h = |n| len(&c.homology_at(n).unwrap()) as i64;
        prop_assert_eq!(h(0) - h(-1), 4 * (rows as i64 - cols as i64));
    }

    #[test]
    fn cone_of_multiplication_matches_kernel_and_cokernel(coeffs in proptest::collection::vec(-2i64..3, 6)) {
        let r = ring();
        let j = Ideal::parse(&r, &["x^2", "x*y", "y^3"]).unwrap();
        let f = poly(&r, &coeffs);
        let q = FreeComplex::concentrated(&j, 0, 1);
        let m = Matrix::row(&r, std::slice::from_ref(&f)).unwrap();
        let cone = ComplexMap::new(&q, &q, BTreeMap::from([(0, m)])).unwrap().cone().unwrap();
        let module = PresentedModule::cyclic(&j);
        let ker = len(&module.kernel_of_multiplication(&f).unwrap());
        let coker = len(&module.cokernel_of_multiplication(&f).unwrap());
        prop_assert_eq!(len(&cone.homology_at(-1).unwrap()), ker);
        prop_assert_eq!(len(&cone.homology_at(0).unwrap()), coker);
    }

    #[test]
    fn resolution_preserves_homology(
        a in proptest::collection::vec(-2i64..3, 6),
        b in proptest::collection::vec(-2i64..3, 6),
    ) {
        let r = ring();
        let j = Ideal::new(&r, vec![poly(&r, &a), poly(&r, &b)]).unwrap();
        prop_assume!(!j.is_zero() && !j.is_unit().unwrap());
        let q = FreeComplex::concentrated(&j, 0, 1);
        let x = Matrix::row(&r, &[r.var(0)]).unwrap();
        let c = ComplexMap::new(&q, &q, BTreeMap::from([(0, x)])).unwrap().cone().unwrap();
        let res = free_resolution_of_complex(&c, None).unwrap();
        for n in (c.lo()..=c.hi()).filter(|&n| n >= res.certified_from) {
            let (h, g) = (c.homology_at(n).unwrap(), res.complex.homology_at(n).unwrap());
            prop_assert!(h.annihilator().unwrap().equals(&g.annihilator().unwrap()).unwrap());
            prop_assert_eq!(h.length().unwrap(), g.length().unwrap());
        }
        for n in res.complex.lo()..c.lo() {
            prop_assert!(res.complex.homology_at(n).unwrap().is_zero().unwrap());
        }
    }

    #[test]
    fn annihilator_kills_every_generator(
        cols in proptest::collection::vec(proptest::collection::vec(-2i64..3, 6), 1..4),
    ) {
        let r = ring();
        let columns: Vec<Vec<Polynomial>> =
            cols.chunks(1).map(|c| vec![poly(&r, &c[0]), poly(&r, &c[0][..3])]).collect();
        let m = PresentedModule::new(&Matrix::from_columns(&r, 2, &columns).unwrap());
        let ann = m.annihilator().unwrap();
        for g in ann.generators() {
            prop_assert!(m.is_zero_element(&[g.clone(), r.zero()]).unwrap());
            prop_assert!(m.is_zero_element(&[r.zero(), g.clone()]).unwrap());
        }
    }
}

#[test]
fn double_dual_keeps_ranks() {
    let r = ring();
    let d0 = Matrix::row(&r, &[r.parse("x").unwrap(), r.parse("y").unwrap()]).unwrap();
    let dm = Matrix::new(&r, 2, 1, vec![r.parse("-y").unwrap(), r.parse("x").unwrap()]).unwrap();
    let k = FreeComplex::free(&r, -2, vec![1, 2, 1], vec![dm, d0]).unwrap();
    let dd = k.dual_into_ring().unwrap().dual_into_ring().unwrap();
    for n in -2..=0 {
        assert_eq!(dd.rank(n), k.rank(n));
        assert_eq!(dd.homology_at(n).unwrap().length().unwrap(), k.homology_at(n).unwrap().length().unwrap());
    }
    assert_eq!(k.homology_at(0).unwrap().length().unwrap(), Length::Finite(1));
}
