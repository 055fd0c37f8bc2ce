//! Constructible subsets of `Spec(P/I0)`, supports, minimal primes and
//! stratifications.

mod primes;

use std::fmt;

use crate::error::{Error, Result};
use crate::modcomplex::PresentedModule;
use crate::polyalg::{Ideal, Polynomial};

pub use primes::{amp_stratification, irreducible_cover, minimal_primes, AmpStratum, CoverPiece, MinimalPrimesSource};

/// `V(closed) ∖ V(open)`. After normalization `open ⊇ closed ⊇ I0`.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub closed: Ideal,
    pub open: Ideal,
}

impl Stratum {
    pub fn is_empty(&self) -> Result<bool> {
        self.closed.radical_contains_ideal(&self.open)
    }

    /// Whether the prime `p` is a point of the stratum.
    pub fn contains_prime(&self, p: &Ideal) -> Result<bool> {
        Ok(p.contains_ideal(&self.closed)? && !p.contains_ideal(&self.open)?)
    }

    /// `self ⊆ other` as sets of primes.
    fn is_subset(&self, other: &Stratum) -> Result<bool> {
        // self ⊆ V(other.closed): every g in other.closed vanishes on self
        for g in other.closed.generators() {
            for u in self.open.generators() {
                if !self.closed.radical_contains(&(g * u))? {
                    return Ok(false);
                }
            }
        }
        // self ∩ V(other.open) = ∅
        self.closed.sum(&other.open)?.radical_contains_ideal(&self.open)
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.open.is_unit().unwrap_or(false) {
            write!(f, "V{}", self.closed)
        } else {
            write!(f, "V{} \\ V{}", self.closed, self.open)
        }
    }
}

/// Finite union of strata inside `Spec(P/ambient)`, kept normalized: no empty
/// strata, no stratum contained in another, sorted canonically.
#[derive(Clone, Debug)]
pub struct ConstructibleSet {
    ambient: Ideal,
    strata: Vec<Stratum>,
}

impl ConstructibleSet {
    pub fn empty(ambient: &Ideal) -> Self {
        ConstructibleSet { ambient: ambient.clone(), strata: Vec::new() }
    }

    pub fn whole(ambient: &Ideal) -> Result<Self> {
        Self::from_strata(ambient, vec![(ambient.clone(), Ideal::unit(ambient.ring()))])
    }

    /// `V(I)`.
    pub fn closed(ambient: &Ideal, i: &Ideal) -> Result<Self> {
        Self::from_strata(ambient, vec![(i.clone(), Ideal::unit(ambient.ring()))])
    }

    /// `Spec ∖ V(I)`.
    pub fn open(ambient: &Ideal, i: &Ideal) -> Result<Self> {
        Self::from_strata(ambient, vec![(ambient.clone(), i.clone())])
    }

    /// `D(f)`.
    pub fn basic_open(ambient: &Ideal, f: &Polynomial) -> Result<Self> {
        Self::open(ambient, &Ideal::new(ambient.ring(), vec![f.clone()])?)
    }

    /// Support of a module: `V(Ann M)`.
    pub fn support(ambient: &Ideal, m: &PresentedModule) -> Result<Self> {
        Self::closed(ambient, &m.annihilator()?)
    }

    /// Union of the strata `V(closed) ∖ V(open)`.
    pub fn from_strata(ambient: &Ideal, strata: Vec<(Ideal, Ideal)>) -> Result<Self> {
        let mut out = Vec::new();
        for (closed, open) in strata {
            ambient.same_ring(&closed)?;
            ambient.same_ring(&open)?;
            let closed = ambient.sum(&closed)?;
            let open = closed.sum(&open)?;
            out.push(Stratum { closed, open });
        }
        Self::normalized(ambient, out)
    }

    fn normalized(ambient: &Ideal, strata: Vec<Stratum>) -> Result<Self> {
        let mut kept: Vec<Stratum> = Vec::new();
        for s in strata {
            let s = Stratum { closed: s.closed.compact()?, open: s.open.compact()? };
            if !s.is_empty()? {
                kept.push(s);
            }
        }
        let mut out: Vec<Stratum> = Vec::new();
        for (i, s) in kept.iter().enumerate() {
            let mut redundant = false;
            for (j, t) in kept.iter().enumerate() {
                if i == j || !s.is_subset(t)? {
                    continue;
                }
                // for equal strata keep the first one only
                if j < i || !t.is_subset(s)? {
                    redundant = true;
                    break;
                }
            }
            if !redundant {
                out.push(s.clone());
            }
        }
        let mut keyed = Vec::with_capacity(out.len());
        for s in out {
            keyed.push((s.closed.canonical_strings()?, s.open.canonical_strings()?, s));
        }
        keyed.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        Ok(ConstructibleSet { ambient: ambient.clone(), strata: keyed.into_iter().map(|k| k.2).collect() })
    }

    pub fn ambient(&self) -> &Ideal {
        &self.ambient
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn is_empty(&self) -> bool {
        self.strata.is_empty()
    }

    fn check_ambient(&self, other: &ConstructibleSet) -> Result<()> {
        if !self.ambient.equals(&other.ambient)? {
            return Err(Error::Invalid("constructible sets live in different spectra".into()));
        }
        Ok(())
    }

    pub fn union(&self, other: &ConstructibleSet) -> Result<ConstructibleSet> {
        self.check_ambient(other)?;
        let mut all = self.strata.clone();
        all.extend(other.strata.iter().cloned());
        Self::normalized(&self.ambient, all)
    }

    pub fn intersection(&self, other: &ConstructibleSet) -> Result<ConstructibleSet> {
        self.check_ambient(other)?;
        let mut all = Vec::new();
        for a in &self.strata {
            for b in &other.strata {
                let closed = a.closed.sum(&b.closed)?;
                let open = closed.sum(&a.open.product(&b.open)?)?;
                all.push(Stratum { closed, open });
            }
        }
        Self::normalized(&self.ambient, all)
    }

    pub fn complement(&self) -> Result<ConstructibleSet> {
        let mut acc = Self::whole(&self.ambient)?;
        for s in &self.strata {
            let piece = Self::from_strata(
                &self.ambient,
                vec![(self.ambient.clone(), s.closed.clone()), (s.open.clone(), Ideal::unit(self.ambient.ring()))],
            )?;
            acc = acc.intersection(&piece)?;
        }
        Ok(acc)
    }

    pub fn difference(&self, other: &ConstructibleSet) -> Result<ConstructibleSet> {
        self.intersection(&other.complement()?)
    }

    pub fn is_subset(&self, other: &ConstructibleSet) -> Result<bool> {
        self.check_ambient(other)?;
        for s in &self.strata {
            if !other.strata.iter().try_fold(false, |acc, t| Ok::<_, Error>(acc || s.is_subset(t)?))? {
                let single = ConstructibleSet { ambient: self.ambient.clone(), strata: vec![s.clone()] };
                if !single.difference(other)?.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn set_equals(&self, other: &ConstructibleSet) -> Result<bool> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    /// Whether every stratum has the whole spectrum as its closed part, i.e.
    /// the set is visibly a union of opens `Spec ∖ V(U)`.
    pub fn is_structurally_open(&self) -> Result<bool> {
        for s in &self.strata {
            if !self.ambient.radical_contains_ideal(&s.closed)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the prime `p` lies in the set.
    pub fn contains_prime(&self, p: &Ideal) -> Result<bool> {
        for s in &self.strata {
            if s.contains_prime(p)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// An open set is dense iff it contains every minimal prime.
    pub fn is_dense_open(&self, primes: &[Ideal]) -> Result<bool> {
        if !self.is_structurally_open()? {
            return Err(Error::Invalid(format!("{self} is not presented as an open set")));
        }
        for p in primes {
            if !self.contains_prime(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical strings of each stratum's ideals.
    pub fn describe(&self) -> Result<Vec<(Vec<String>, Vec<String>)>> {
        self.strata.iter().map(|s| Ok((s.closed.canonical_strings()?, s.open.canonical_strings()?))).collect()
    }
}

impl fmt::Display for ConstructibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.strata.is_empty() {
            return write!(f, "empty");
        }
        let parts: Vec<String> = self.strata.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}
