use super::{GlobalCmVerdict, GorCertificate, GorStatus, Loci};
use crate::dgring::CohomologyTable;
use crate::dualizing::DualizingTable;
use crate::error::{Error, Result};
use crate::polyalg::Ideal;
use crate::spectrum::{AmpStratum, ConstructibleSet, CoverPiece, MinimalPrimesSource};

/// A report entry that is either computed or skipped for an unsupported
/// input, with the reason.
#[derive(Clone, Debug)]
pub enum Section<T> {
    Computed(T),
    Unavailable(String),
}

impl<T> Section<T> {
    fn from_result(r: Result<T>) -> Result<Self> {
        match r {
            Ok(v) => Ok(Section::Computed(v)),
            Err(Error::Unsupported(m)) => Ok(Section::Unavailable(m)),
            Err(e) => Err(e),
        }
    }

    pub fn computed(&self) -> Option<&T> {
        match self {
            Section::Computed(v) => Some(v),
            Section::Unavailable(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PrimesSummary {
    /// `monomial`, `derived` (zero or linear ideal) or `declared`.
    pub mode: &'static str,
    pub primes: Vec<Ideal>,
}

#[derive(Clone, Debug)]
pub struct LociReport {
    pub description: String,
    pub h0_ideal: Ideal,
    pub table_a: CohomologyTable,
    pub bounds_a: (i32, i32, i32),
    pub dualizing: DualizingTable,
    pub bounds_r: (i32, i32, i32),
    pub primes: Section<PrimesSummary>,
    pub cover: Section<Vec<CoverPiece>>,
    pub stratification_a: Vec<AmpStratum>,
    pub stratification_r: Vec<AmpStratum>,
    pub reg: Section<ConstructibleSet>,
    pub cm_exact: ConstructibleSet,
    pub cm_dense_open: Section<ConstructibleSet>,
    pub gor: Section<GorCertificate>,
    pub global: GlobalCmVerdict,
}

impl Loci {
    pub fn primes_summary(&self) -> Result<PrimesSummary> {
        let primes = self.minimal_primes()?.to_vec();
        let mode = match self.primes_source()? {
            MinimalPrimesSource::Declared(_) => "declared",
            MinimalPrimesSource::MonomialAuto if self.h0_ideal()?.is_monomial()? && !self.h0_ideal()?.is_zero() => {
                "monomial"
            }
            MinimalPrimesSource::MonomialAuto => "derived",
        };
        Ok(PrimesSummary { mode, primes })
    }
}

/// Every section that applies, with the cross-checks: the generic CM set
/// and the regular locus lie in the CM locus, and an empty Gorenstein locus
/// forces an empty regular locus.
pub fn full_report(loci: &Loci) -> Result<LociReport> {
    let dg = loci.dg();
    let table_a = dg.cohomology_table()?.clone();
    let bounds_a = table_a.amplitude_bounds()?;
    let dualizing = loci.dualizing()?.clone();
    let bounds_r = dualizing.amplitude_bounds()?;

    let cm_part = || -> Result<(ConstructibleSet, Section<ConstructibleSet>, GlobalCmVerdict)> {
        let exact = loci.cm_locus_exact()?.clone();
        let dense = Section::from_result(loci.cm_dense_open())?;
        Ok((exact, dense, loci.cm_global_check()?))
    };
    let reg_part = || Section::from_result(loci.reg_locus());
    let gor_part = || Section::from_result(loci.gor_certificate());

    let ((cm, reg), gor) = if loci.options().parallel {
        rayon::join(|| rayon::join(cm_part, reg_part), gor_part)
    } else {
        ((cm_part(), reg_part()), gor_part())
    };
    let (cm_exact, cm_dense_open, global) = cm?;
    let (reg, gor) = (reg?, gor?);

    if let Some(r) = reg.computed() {
        if !r.is_subset(&cm_exact)? {
            return Err(Error::Internal(format!("regular locus {r} is not inside the CM locus")));
        }
        if let Some(g) = gor.computed() {
            if g.status == GorStatus::EmptyCertified && !r.is_empty() {
                return Err(Error::Internal("empty Gorenstein locus but nonempty regular locus".into()));
            }
        }
    }

    Ok(LociReport {
        description: dg.to_string(),
        h0_ideal: loci.h0_ideal()?,
        table_a,
        bounds_a,
        dualizing,
        bounds_r,
        primes: Section::from_result(loci.primes_summary())?,
        cover: Section::from_result(loci.cover().map(|c| c.to_vec()))?,
        stratification_a: loci.stratification_a()?.to_vec(),
        stratification_r: loci.stratification_r()?.to_vec(),
        reg,
        cm_exact,
        cm_dense_open,
        gor,
        global,
    })
}
