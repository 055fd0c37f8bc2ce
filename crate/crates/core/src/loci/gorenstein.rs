use std::collections::BTreeMap;

use super::Loci;
use crate::dgring::{Construction, DGRing};
use crate::error::{Error, Result};
use crate::polyalg::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GorStatus {
    /// No point of the spectrum is Gorenstein.
    EmptyCertified,
    /// Some point is not Gorenstein, witnessed by an artinian reduction.
    NotGorensteinAtSample,
    Inconclusive,
}

impl GorStatus {
    pub fn name(self) -> &'static str {
        match self {
            GorStatus::EmptyCertified => "empty_certified",
            GorStatus::NotGorensteinAtSample => "not_gorenstein_at_sample",
            GorStatus::Inconclusive => "inconclusive",
        }
    }
}

/// Quotient of `A` by a regular sequence.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub reduced: DGRing,
    pub sequence: Vec<Polynomial>,
    /// `H^0` of the quotient is artinian.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LengthVerdict {
    /// `len H^{-i} != len H^{-n+i}`.
    NotGorenstein { i: i32, left: u64, right: u64 },
    /// Lengths are symmetric; symmetry is necessary, not sufficient.
    Inconclusive,
    /// `H^{-n}` is not supported everywhere, so the pointwise amplitudes
    /// differ and global lengths carry no symmetry constraint.
    VaryingAmplitude,
}

#[derive(Clone, Debug)]
pub struct LengthTest {
    pub amplitude: i32,
    /// `len H^n` for `-amplitude <= n <= 0`.
    pub lengths: BTreeMap<i32, u64>,
    pub verdict: LengthVerdict,
}

#[derive(Clone, Debug, Default)]
pub struct GorEvidence {
    pub piece_degree: Option<i32>,
    pub piece_rank: Option<usize>,
    pub regular_sequence: Vec<Polynomial>,
    pub reduction_complete: bool,
    pub sample: Option<LengthTest>,
    pub argument: String,
}

#[derive(Clone, Debug)]
pub struct GorCertificate {
    pub status: GorStatus,
    pub evidence: GorEvidence,
}

/// Quotients `A` by a greedy maximal regular sequence.
pub fn reduce_to_artinian(a: &DGRing, candidates: Option<&[Polynomial]>, seed: u64) -> Result<Reduction> {
    let sequence = a.find_max_regular_sequence(candidates, seed)?;
    let reduced = a.dg_quotient_by(&sequence)?;
    let complete = reduced.h0_ideal()?.krull_dimension()? == 0;
    Ok(Reduction { reduced, sequence, complete })
}

/// For `A` with artinian `H^0` and amplitude `n`, compares `len H^{-i}` with
/// `len H^{-n+i}` for `0 <= i <= n` and reports the first mismatch. Only
/// meaningful when every point has amplitude `n`, which is checked first.
pub fn artinian_gor_length_test(a: &DGRing) -> Result<LengthTest> {
    if a.h0_ideal()?.krull_dimension()? != 0 {
        return Err(Error::Invalid("length test needs H^0(A) of dimension 0".into()));
    }
    let table = a.cohomology_table()?;
    let (_, _, n) = table.amplitude_bounds()?;
    let mut lengths = BTreeMap::new();
    for d in -n..=0 {
        let len = match table.get(d) {
            Some(m) => m.length()?.finite().ok_or_else(|| {
                Error::Internal(format!("H^{d} has infinite length over an artinian H^0"))
            })?,
            None => 0,
        };
        lengths.insert(d, len);
    }
    let i0 = a.h0_ideal()?;
    if !i0.radical_contains_ideal(&table.annihilator(-n, i0.ring())?)? {
        return Ok(LengthTest { amplitude: n, lengths, verdict: LengthVerdict::VaryingAmplitude });
    }
    let mut verdict = LengthVerdict::Inconclusive;
    for i in 0..=n {
        let (left, right) = (lengths[&-i], lengths[&(-n + i)]);
        if left != right {
            verdict = LengthVerdict::NotGorenstein { i, left, right };
            break;
        }
    }
    Ok(LengthTest { amplitude: n, lengths, verdict })
}

impl Loci {
    fn reduction(&self) -> Result<Reduction> {
        reduce_to_artinian(self.dg(), self.options().candidates.as_deref(), self.options().seed)
    }

    /// Certificate for a trivial extension `B ⊕ B^r[k]`. For `r >= 2` the
    /// Gorenstein locus is empty: reducing at a Gorenstein point along a
    /// maximal regular sequence gives an artinian `D` with
    /// `len H^{-k} = r·len D`, while Gorenstein forces `len H^{-k} = len D`.
    /// One reduction is also carried out and length-tested.
    pub fn trivial_ext_gor_certificate(&self) -> Result<GorCertificate> {
        let (k, r) = match self.dg().construction() {
            Construction::TrivialExt { piece_degree, piece_rank } => (*piece_degree, *piece_rank),
            Construction::Koszul { .. } => {
                return Err(Error::Invalid("the trivial-extension certificate needs a trivial extension".into()))
            }
        };
        let red = self.reduction()?;
        let sample = if red.complete { Some(artinian_gor_length_test(&red.reduced)?) } else { None };
        let mut evidence = GorEvidence {
            piece_degree: Some(k),
            piece_rank: Some(r),
            regular_sequence: red.sequence.clone(),
            reduction_complete: red.complete,
            sample,
            argument: String::new(),
        };
        if r < 2 {
            evidence.argument = format!(
                "piece rank 1: len H^{k} = len D after reduction, so the length obstruction vanishes"
            );
            return Ok(GorCertificate { status: GorStatus::Inconclusive, evidence });
        }
        if let Some(test) = &evidence.sample {
            if !matches!(test.verdict, LengthVerdict::NotGorenstein { .. }) {
                return Err(Error::Internal("sample reduction of a trivial extension passed the length test".into()));
            }
        }
        evidence.argument = format!(
            "at a Gorenstein point a maximal regular sequence reduces A to an artinian trivial extension over D \
             with len H^{k} = {r}·len D, while Gorenstein forces len H^{k} = len D >= 1"
        );
        Ok(GorCertificate { status: GorStatus::EmptyCertified, evidence })
    }

    /// Trivial extensions get [`Self::trivial_ext_gor_certificate`]; other
    /// rings are reduced to an artinian quotient and length-tested there.
    pub fn gor_certificate(&self) -> Result<GorCertificate> {
        if matches!(self.dg().construction(), Construction::TrivialExt { .. }) {
            return self.trivial_ext_gor_certificate();
        }
        let red = self.reduction()?;
        let mut evidence = GorEvidence {
            regular_sequence: red.sequence.clone(),
            reduction_complete: red.complete,
            ..Default::default()
        };
        if !red.complete {
            evidence.argument = "the regular sequence found does not reach an artinian quotient".into();
            return Ok(GorCertificate { status: GorStatus::Inconclusive, evidence });
        }
        let test = artinian_gor_length_test(&red.reduced)?;
        let status = match test.verdict {
            LengthVerdict::NotGorenstein { i, left, right } => {
                evidence.argument = format!(
                    "lengths of H^{} and H^{} differ ({left} vs {right}) in the artinian reduction",
                    -i,
                    -test.amplitude + i
                );
                GorStatus::NotGorensteinAtSample
            }
            LengthVerdict::Inconclusive => {
                evidence.argument = "the artinian reduction has symmetric cohomology lengths".into();
                GorStatus::Inconclusive
            }
            LengthVerdict::VaryingAmplitude => {
                evidence.argument = "the artinian reduction has points of different amplitude".into();
                GorStatus::Inconclusive
            }
        };
        evidence.sample = Some(test);
        Ok(GorCertificate { status, evidence })
    }
}
