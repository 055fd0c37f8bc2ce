//! Cohomology of the dualizing DG-module `R = Hom_P(F, P)[d]`, where `F`
//! resolves the DG-ring over `P` and `d` is the number of variables.

use std::collections::BTreeMap;

use crate::dgring::{CohomologyTable, DGRing};
use crate::error::{Error, Result};
use crate::modcomplex::free_resolution_of_complex;

#[derive(Clone, Copy, Debug, Default)]
pub struct DualizingOptions {
    /// Syzygy steps for resolving the base algebra; default is the complex
    /// width plus the number of variables plus two.
    pub window: Option<usize>,
    /// Overrides the normalization shift (the number of variables).
    pub shift: Option<i32>,
}

#[derive(Clone, Debug)]
pub struct DualizingTable {
    pub table: CohomologyTable,
    pub normalization_shift: i32,
    /// Syzygy steps used to resolve the base algebra.
    pub resolution_steps: usize,
    pub resolution_complete: bool,
}

impl DualizingTable {
    pub fn amplitude_bounds(&self) -> Result<(i32, i32, i32)> {
        self.table.amplitude_bounds()
    }
}

pub fn dualizing_table(a: &DGRing, opts: DualizingOptions) -> Result<DualizingTable> {
    let complex = a.complex();
    let nvars = a.ring().nvars();
    let shift = opts.shift.unwrap_or(nvars as i32);
    let res = free_resolution_of_complex(complex, opts.window)?;
    let dual = res.complex.dual_into_ring()?;
    // Ext^i_P(A, P) can only be nonzero for 0 <= i <= width + nvars
    let top = (complex.width() + nvars) as i32 - complex.hi().min(0);
    let mut entries = BTreeMap::new();
    for i in 0..=top {
        entries.insert(i - shift, dual.homology_at(i)?);
    }
    Ok(DualizingTable {
        table: CohomologyTable::new(entries)?,
        normalization_shift: shift,
        resolution_steps: res.steps,
        resolution_complete: res.complete,
    })
}

/// `(amp A, amp R, amp A <= amp R)`.
pub fn check_amp_inequality(a: &DGRing, r: &DualizingTable) -> Result<(i32, i32, bool)> {
    let (_, _, amp_a) = a.amplitude_bounds()?;
    let (_, _, amp_r) = r.amplitude_bounds()?;
    Ok((amp_a, amp_r, amp_a <= amp_r))
}

/// Same as [`check_amp_inequality`], turning a violation into an internal
/// error.
pub fn assert_amp_inequality(a: &DGRing, r: &DualizingTable) -> Result<(i32, i32)> {
    let (amp_a, amp_r, ok) = check_amp_inequality(a, r)?;
    if !ok {
        return Err(Error::Internal(format!("amp(A) = {amp_a} exceeds amp(R) = {amp_r}")));
    }
    Ok((amp_a, amp_r))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::dgring::BaseAlgebra;
    use crate::modcomplex::Length;
    use crate::polyalg::{FieldSpec, Ideal, PolyRing, Polynomial};

    fn ring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::with_vars(FieldSpec::prime(5).unwrap(), vars).unwrap()
    }

    fn base(r: &Arc<PolyRing>, gens: &[&str]) -> BaseAlgebra {
        BaseAlgebra::new(&Ideal::parse(r, gens).unwrap()).unwrap()
    }

    fn polys(r: &Arc<PolyRing>, s: &[&str]) -> Vec<Polynomial> {
        s.iter().map(|t| r.parse(t).unwrap()).collect()
    }

    #[test]
    fn hypersurface_ring() {
        let r = ring(&["x", "y"]);
        let b = DGRing::ring_case(base(&r, &["x*y"]));
        let t = dualizing_table(&b, DualizingOptions::default()).unwrap();
        assert_eq!(t.table.nonzero_degrees(), &[-1]);
        let h = t.table.get(-1).unwrap();
        assert!(h.annihilator().unwrap().equals(&Ideal::parse(&r, &["x*y"]).unwrap()).unwrap());
        assert_eq!(h.rank(), 1);
        assert_eq!(check_amp_inequality(&b, &t).unwrap(), (0, 0, true));
    }

    #[test]
    fn trivial_extension_of_hypersurface() {
        let r = ring(&["x", "y"]);
        let a = DGRing::trivial_extension(base(&r, &["x*y"]), -2, 2).unwrap();
        let t = dualizing_table(&a, DualizingOptions::default()).unwrap();
        assert_eq!(t.table.nonzero_degrees(), &[-1, 1]);
        assert_eq!(t.table.get(-1).unwrap().rank(), 1);
        assert_eq!(t.table.get(1).unwrap().rank(), 2);
        for n in [-1, 1] {
            let ann = t.table.get(n).unwrap().annihilator().unwrap();
            assert!(ann.equals(&Ideal::parse(&r, &["x*y"]).unwrap()).unwrap());
        }
        assert_eq!(check_amp_inequality(&a, &t).unwrap(), (2, 2, true));
    }

    #[test]
    fn self_dual_koszul() {
        let r = ring(&["x", "y"]);
        let a = DGRing::koszul(BaseAlgebra::polynomial(&r), polys(&r, &["x", "x"])).unwrap();
        let t = dualizing_table(&a, DualizingOptions::default()).unwrap();
        let ta = a.cohomology_table().unwrap();
        assert_eq!(t.table.nonzero_degrees(), ta.nonzero_degrees());
        for &n in ta.nonzero_degrees() {
            let (x, y) = (t.table.get(n).unwrap(), ta.get(n).unwrap());
            assert!(x.annihilator().unwrap().equals(&y.annihilator().unwrap()).unwrap());
        }
        assert_eq!(check_amp_inequality(&a, &t).unwrap(), (1, 1, true));
    }

    #[test]
    fn regular_sequence_and_cusp_are_concentrated() {
        let r = ring(&["x", "y"]);
        let a = DGRing::koszul(BaseAlgebra::polynomial(&r), polys(&r, &["x", "y"])).unwrap();
        let t = dualizing_table(&a, DualizingOptions::default()).unwrap();
        assert_eq!(check_amp_inequality(&a, &t).unwrap(), (0, 0, true));
        assert_eq!(t.table.get(0).unwrap().length().unwrap(), Length::Finite(1));

        let cusp = DGRing::ring_case(base(&r, &["y^2 - x^3"]));
        let t = dualizing_table(&cusp, DualizingOptions::default()).unwrap();
        assert_eq!(t.amplitude_bounds().unwrap().2, 0);
    }

    #[test]
    fn shift_only_moves_degrees() {
        let r = ring(&["x", "y"]);
        let a = DGRing::trivial_extension(base(&r, &["x*y"]), -2, 2).unwrap();
        let t0 = dualizing_table(&a, DualizingOptions::default()).unwrap();
        let t1 = dualizing_table(&a, DualizingOptions { shift: Some(3), ..Default::default() }).unwrap();
        let (i0, s0, amp0) = t0.amplitude_bounds().unwrap();
        let (i1, s1, amp1) = t1.amplitude_bounds().unwrap();
        assert_eq!((i1, s1, amp1), (i0 - 1, s0 - 1, amp0));
    }

    #[test]
    fn tiny_window_is_reported() {
        let r = ring(&["x", "y"]);
        let a = DGRing::ring_case(base(&r, &["x^2", "x*y", "y^2"]));
        match dualizing_table(&a, DualizingOptions { window: Some(1), shift: None }) {
            Err(Error::Resource(m)) => assert!(m.contains("window 3 is required"), "{m}"),
            other => panic!("{other:?}"),
        }
        let t = dualizing_table(&a, DualizingOptions { window: Some(2), shift: None }).unwrap();
        assert!(t.resolution_complete);
    }
}
