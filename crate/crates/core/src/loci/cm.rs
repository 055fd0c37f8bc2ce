use rayon::prelude::*;

use super::Loci;
use crate::error::{Error, Result};
use crate::polyalg::Ideal;
use crate::spectrum::{ConstructibleSet, CoverPiece};

/// One implication drawn by the global criteria, with the hypothesis that
/// licensed it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conclusion {
    pub tag: &'static str,
    pub statement: String,
}

#[derive(Clone, Debug)]
pub struct GlobalCmVerdict {
    pub amp_a: i32,
    pub amp_r: i32,
    pub amp_equal: bool,
    /// `None` when the minimal primes are unavailable.
    pub irreducible: Option<bool>,
    pub equidimensional: Option<bool>,
    /// `Supp H^{-amp(A)}(A)` is all of `Spec H^0(A)`.
    pub full_bottom_support: bool,
    /// The exact CM locus is the whole spectrum.
    pub cm_everywhere: bool,
    pub conclusions: Vec<Conclusion>,
}

impl Loci {
    /// Union of the strata on which the pointwise amplitudes of `A` and `R`
    /// agree.
    pub fn cm_locus_exact(&self) -> Result<&ConstructibleSet> {
        self.cm_exact.get_or_try_init(|| {
            let i0 = self.h0_ideal()?;
            let (sa, sr) = (self.stratification_a()?, self.stratification_r()?);
            let mut acc = ConstructibleSet::empty(&i0);
            for a in sa {
                for r in sr {
                    if a.amplitude().is_some() && a.amplitude() == r.amplitude() {
                        acc = acc.union(&a.set.intersection(&r.set)?)?;
                    }
                }
            }
            Ok(acc)
        })
    }

    /// Dense open subset of the CM locus: on each cover piece `D(f_i)` drop
    /// the supports of `H^n(R)` for `c < n <= b`, where `b` is the top degree
    /// of `R` over the piece and `c` the top degree at its minimal prime.
    pub fn cm_dense_open(&self) -> Result<ConstructibleSet> {
        let i0 = self.h0_ideal()?;
        let cover = self.cover()?;
        // fill the shared caches before fanning out
        self.dualizing()?;
        let pieces: Vec<Result<Ideal>> = if self.opts.parallel {
            cover.par_iter().map(|p| self.piece_open(p)).collect()
        } else {
            cover.iter().map(|p| self.piece_open(p)).collect()
        };
        let mut acc = ConstructibleSet::empty(&i0);
        for region in pieces {
            acc = acc.union(&ConstructibleSet::open(&i0, &region?)?)?;
        }
        if !acc.is_dense_open(self.minimal_primes()?)? {
            return Err(Error::Internal(format!("generic CM set {acc} is not dense")));
        }
        if !acc.is_subset(self.cm_locus_exact()?)? {
            return Err(Error::Internal(format!("generic CM set {acc} leaves the CM locus")));
        }
        Ok(acc)
    }

    /// Ideal `U_i` with `D(f_i) ∖ V = Spec ∖ V(U_i)`.
    fn piece_open(&self, piece: &CoverPiece) -> Result<Ideal> {
        let i0 = self.h0_ideal()?;
        let ring = i0.ring();
        let table = &self.dualizing()?.table;
        let d = ConstructibleSet::basic_open(&i0, &piece.element)?;
        let mut b = None;
        let mut c = None;
        for &n in table.nonzero_degrees() {
            let ann = table.annihilator(n, ring)?;
            if !ConstructibleSet::closed(&i0, &ann)?.intersection(&d)?.is_empty() {
                b = Some(n);
            }
            if piece.prime.contains_ideal(&ann)? {
                c = Some(n);
            }
        }
        let (b, c) = match (b, c) {
            (Some(b), Some(c)) => (b, c),
            _ => {
                return Err(Error::Internal(format!("dualizing module vanishes at the minimal prime {}", piece.prime)))
            }
        };
        let mut region = Ideal::new(ring, vec![piece.element.clone()])?;
        for &n in table.nonzero_degrees().iter().filter(|&&n| n > c && n <= b) {
            region = region.product(&table.annihilator(n, ring)?)?;
        }
        Ok(region)
    }

    /// Global criteria: with `amp A = amp R`, an irreducible spectrum or a
    /// full-support bottom cohomology makes `A` CM; `amp R = 0` makes a ring
    /// CM; an equidimensional CM `A` must have `amp A = amp R`. Each licensed
    /// conclusion is checked against the exact locus.
    pub fn cm_global_check(&self) -> Result<GlobalCmVerdict> {
        let i0 = self.h0_ideal()?;
        let (inf_a, _, amp_a) = self.dg.amplitude_bounds()?;
        let (_, _, amp_r) = self.dualizing()?.amplitude_bounds()?;
        let amp_equal = amp_a == amp_r;
        let (irreducible, equidimensional) = match self.minimal_primes() {
            Ok(primes) => {
                let dims: Vec<i64> = primes.iter().map(|p| p.krull_dimension()).collect::<Result<_>>()?;
                (Some(primes.len() == 1), Some(dims.windows(2).all(|w| w[0] == w[1])))
            }
            Err(Error::Unsupported(_)) => (None, None),
            Err(e) => return Err(e),
        };
        let bottom = self.dg.cohomology_table()?.annihilator(inf_a, i0.ring())?;
        let full_bottom_support = i0.radical_contains_ideal(&bottom)?;
        let cm_everywhere = ConstructibleSet::whole(&i0)?.is_subset(self.cm_locus_exact()?)?;

        let mut conclusions = Vec::new();
        if amp_equal && irreducible == Some(true) {
            conclusions.push(Conclusion {
                tag: "cm_via_irreducible_spectrum",
                statement: format!("amp(A) = amp(R) = {amp_a} and Spec H^0(A) is irreducible, so A is Cohen-Macaulay"),
            });
        }
        if amp_equal && full_bottom_support {
            conclusions.push(Conclusion {
                tag: "cm_via_full_bottom_support",
                statement: format!(
                    "amp(A) = amp(R) = {amp_a} and Supp H^{inf_a}(A) = Spec H^0(A), so A is Cohen-Macaulay"
                ),
            });
        }
        if amp_r == 0 {
            conclusions.push(Conclusion {
                tag: "cm_ring_via_concentrated_dualizing",
                statement: "amp(R) = 0, so A is a Cohen-Macaulay ring".into(),
            });
        }
        if !conclusions.is_empty() && !cm_everywhere {
            return Err(Error::Internal("a global CM criterion holds but the CM locus is not everything".into()));
        }
        if equidimensional == Some(true) && cm_everywhere {
            if !amp_equal {
                return Err(Error::Internal(format!(
                    "equidimensional and Cohen-Macaulay, yet amp(A) = {amp_a} differs from amp(R) = {amp_r}"
                )));
            }
            conclusions.push(Conclusion {
                tag: "amp_equality_via_equidimensional_cm",
                statement: format!("Spec H^0(A) is equidimensional and A is Cohen-Macaulay, and amp(A) = amp(R) = {amp_a}"),
            });
        }
        Ok(GlobalCmVerdict {
            amp_a,
            amp_r,
            amp_equal,
            irreducible,
            equidimensional,
            full_bottom_support,
            cm_everywhere,
            conclusions,
        })
    }
}
