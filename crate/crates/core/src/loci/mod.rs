//! Regular, Cohen-Macaulay and Gorenstein loci of a DG-ring, and the report
//! that collects them.

mod cm;
mod gorenstein;
mod regular;
mod report;

use once_cell::sync::OnceCell;

use crate::dgring::DGRing;
use crate::dualizing::{assert_amp_inequality, dualizing_table, DualizingOptions, DualizingTable};
use crate::error::Result;
use crate::polyalg::{Ideal, Polynomial};
use crate::spectrum::{amp_stratification, irreducible_cover, minimal_primes, AmpStratum, CoverPiece, MinimalPrimesSource};

pub use cm::{Conclusion, GlobalCmVerdict};
pub use gorenstein::{
    artinian_gor_length_test, reduce_to_artinian, GorCertificate, GorEvidence, GorStatus, LengthTest, LengthVerdict,
    Reduction,
};
pub use report::{full_report, LociReport, PrimesSummary, Section};

#[derive(Clone, Debug, Default)]
pub struct LociOptions {
    /// Resolution window for the dualizing computation.
    pub window: Option<usize>,
    /// Normalization shift of the dualizing module (default: number of
    /// variables). Loci do not depend on it.
    pub shift: Option<i32>,
    /// Seed for the random part of the regular-sequence candidate pool.
    pub seed: u64,
    /// Explicit regular-sequence candidates, replacing the default pool.
    pub candidates: Option<Vec<Polynomial>>,
    /// Evaluate independent parts on the rayon pool.
    pub parallel: bool,
}

/// A DG-ring with its derived data computed on demand and cached.
#[derive(Debug)]
pub struct Loci {
    dg: DGRing,
    opts: LociOptions,
    dualizing: OnceCell<DualizingTable>,
    primes: OnceCell<Vec<Ideal>>,
    cover: OnceCell<Vec<CoverPiece>>,
    strat_a: OnceCell<Vec<AmpStratum>>,
    strat_r: OnceCell<Vec<AmpStratum>>,
    cm_exact: OnceCell<crate::spectrum::ConstructibleSet>,
}

impl Loci {
    pub fn new(dg: DGRing, opts: LociOptions) -> Self {
        Loci {
            dg,
            opts,
            dualizing: OnceCell::new(),
            primes: OnceCell::new(),
            cover: OnceCell::new(),
            strat_a: OnceCell::new(),
            strat_r: OnceCell::new(),
            cm_exact: OnceCell::new(),
        }
    }

    pub fn dg(&self) -> &DGRing {
        &self.dg
    }

    pub fn options(&self) -> &LociOptions {
        &self.opts
    }

    pub fn h0_ideal(&self) -> Result<Ideal> {
        self.dg.h0_ideal()
    }

    /// Dualizing table, with `amp A <= amp R` enforced.
    pub fn dualizing(&self) -> Result<&DualizingTable> {
        self.dualizing.get_or_try_init(|| {
            let opts = DualizingOptions { window: self.opts.window, shift: self.opts.shift };
            let table = dualizing_table(&self.dg, opts)?;
            assert_amp_inequality(&self.dg, &table)?;
            Ok(table)
        })
    }

    pub fn primes_source(&self) -> Result<MinimalPrimesSource> {
        Ok(MinimalPrimesSource::of(&self.dg.h0_algebra()?))
    }

    /// Minimal primes of `H^0(A)`.
    pub fn minimal_primes(&self) -> Result<&[Ideal]> {
        self.primes
            .get_or_try_init(|| {
                let h0 = self.dg.h0_algebra()?;
                minimal_primes(&h0, &MinimalPrimesSource::of(&h0))
            })
            .map(|v| v.as_slice())
    }

    pub fn cover(&self) -> Result<&[CoverPiece]> {
        self.cover.get_or_try_init(|| irreducible_cover(self.minimal_primes()?)).map(|v| v.as_slice())
    }

    pub fn stratification_a(&self) -> Result<&[AmpStratum]> {
        self.strat_a
            .get_or_try_init(|| amp_stratification(self.dg.cohomology_table()?, &self.h0_ideal()?))
            .map(|v| v.as_slice())
    }

    pub fn stratification_r(&self) -> Result<&[AmpStratum]> {
        self.strat_r
            .get_or_try_init(|| amp_stratification(&self.dualizing()?.table, &self.h0_ideal()?))
            .map(|v| v.as_slice())
    }
}
