//! Lives in its own test binary: the bound is process-wide.

use dgloci::polyalg::{coefficient_bit_bound, set_coefficient_bit_bound, FieldSpec, Ideal, PolyRing};
use dgloci::Error;

#[test]
fn rational_coefficient_growth_is_a_resource_error() {
    let r = PolyRing::with_vars(FieldSpec::rationals(), &["x", "y", "z"]).unwrap();
    let gens = ["7*x^3 + 11*y^2*z - 13", "17*x*y^2 - 19*z^3 + 23*x", "29*y^3 - 31*x*z + 37"];
    let old = coefficient_bit_bound();
    set_coefficient_bit_bound(8);
    let res = Ideal::parse(&r, &gens).unwrap().groebner().map(|g| g.len());
    set_coefficient_bit_bound(old);
    assert!(matches!(res, Err(Error::Resource(_))), "{res:?}");

    // the same ideal is fine under the default bound
    assert!(Ideal::parse(&r, &gens).unwrap().groebner().is_ok());
}
