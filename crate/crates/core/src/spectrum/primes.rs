use std::collections::BTreeMap;

use super::ConstructibleSet;
use crate::dgring::{BaseAlgebra, CohomologyTable};
use crate::error::{Error, Result};
use crate::polyalg::{Ideal, Polynomial};

/// Above this many variables the monomial cover search is refused.
const MAX_COVER_VARS: usize = 20;

#[derive(Clone, Debug)]
pub enum MinimalPrimesSource {
    /// Derive them: variable covers for monomial ideals, the ideal itself
    /// for `(0)` and for ideals generated by linear forms.
    MonomialAuto,
    Declared(Vec<Ideal>),
}

impl MinimalPrimesSource {
    pub fn of(b: &BaseAlgebra) -> Self {
        match b.declared_primes() {
            Some(p) => MinimalPrimesSource::Declared(p.to_vec()),
            None => MinimalPrimesSource::MonomialAuto,
        }
    }
}

/// Minimal primes of `B`, from `src`. Declared lists are checked: each
/// contains `J`, their intersection lies in `√J`, and none contains another.
/// Primality itself is taken on trust.
pub fn minimal_primes(b: &BaseAlgebra, src: &MinimalPrimesSource) -> Result<Vec<Ideal>> {
    let j = b.defining();
    match src {
        MinimalPrimesSource::Declared(primes) => {
            verify_declared(j, primes)?;
            Ok(primes.clone())
        }
        MinimalPrimesSource::MonomialAuto => {
            if j.is_zero() {
                return Ok(vec![j.clone()]);
            }
            if j.is_monomial()? {
                return monomial_primes(j);
            }
            if j.groebner()?.iter().all(|g| g.total_degree() == Some(1)) {
                return Ok(vec![j.clone()]);
            }
            Err(Error::Unsupported(format!(
                "minimal primes of {j} are not derivable automatically; declare them in [spectrum] minimal_primes"
            )))
        }
    }
}

fn verify_declared(j: &Ideal, primes: &[Ideal]) -> Result<()> {
    let fail = |m: String| Err(Error::Invalid(format!("declared minimal primes rejected: {m}")));
    if primes.is_empty() {
        return fail("the list is empty".into());
    }
    for p in primes {
        j.same_ring(p)?;
        if p.is_unit()? {
            return fail(format!("{p} is the unit ideal"));
        }
        if !p.contains_ideal(j)? {
            return fail(format!("{p} does not contain the defining ideal {j}"));
        }
    }
    let mut meet = primes[0].clone();
    for p in &primes[1..] {
        meet = meet.intersect(p)?;
    }
    if !j.radical_contains_ideal(&meet)? {
        return fail(format!("their intersection {meet} is not contained in the radical of {j}"));
    }
    for (a, p) in primes.iter().enumerate() {
        for (b, q) in primes.iter().enumerate() {
            if a != b && q.contains_ideal(p)? {
                return fail(format!("{p} is contained in {q}"));
            }
        }
    }
    Ok(())
}

/// Minimal primes of a monomial ideal: `(x_S)` for the minimal variable sets
/// `S` meeting the support of every generator.
fn monomial_primes(j: &Ideal) -> Result<Vec<Ideal>> {
    let ring = j.ring();
    let n = ring.nvars();
    if n > MAX_COVER_VARS {
        return Err(Error::Unsupported(format!("monomial cover search over {n} variables")));
    }
    let supports: Vec<u32> = j
        .generators()
        .iter()
        .map(|g| g.leading_monomial().unwrap().support().fold(0u32, |acc, v| acc | (1 << v)))
        .collect();
    let mut masks: Vec<u32> = (0u32..(1 << n)).collect();
    masks.sort_by_key(|&m| (m.count_ones(), (0..n).filter(|v| m & (1 << v) != 0).collect::<Vec<_>>()));
    let mut covers: Vec<u32> = Vec::new();
    for m in masks {
        if supports.iter().all(|s| s & m != 0) && !covers.iter().any(|c| c & m == *c) {
            covers.push(m);
        }
    }
    covers
        .into_iter()
        .map(|m| Ideal::new(ring, (0..n).filter(|v| m & (1 << v) != 0).map(|v| ring.var(v)).collect()))
        .collect()
}

/// `f` with `D(f)` meeting exactly one minimal prime `p`.
#[derive(Clone, Debug)]
pub struct CoverPiece {
    pub element: Polynomial,
    pub prime: Ideal,
}

/// For each minimal prime `p_i`, an element `f_i` of `∩_{j≠i} p_j` outside
/// `p_i` (the first Gröbner generator that works), so `Spec(B_{f_i})` is
/// irreducible and the `D(f_i)` are disjoint with dense union.
pub fn irreducible_cover(primes: &[Ideal]) -> Result<Vec<CoverPiece>> {
    if primes.len() == 1 {
        let ring = primes[0].ring();
        return Ok(vec![CoverPiece { element: ring.one(), prime: primes[0].clone() }]);
    }
    let mut out = Vec::new();
    for (i, p) in primes.iter().enumerate() {
        let mut q: Option<Ideal> = None;
        for (j, other) in primes.iter().enumerate() {
            if j != i {
                q = Some(match q {
                    None => other.clone(),
                    Some(acc) => acc.intersect(other)?,
                });
            }
        }
        let q = q.expect("at least two primes");
        let mut element = None;
        for g in q.groebner()? {
            if !p.contains(g)? {
                element = Some(g.clone());
                break;
            }
        }
        let element = element.ok_or_else(|| {
            Error::Internal(format!("the other minimal primes all lie in {p}; the list is not minimal"))
        })?;
        out.push(CoverPiece { element, prime: p.clone() });
    }
    Ok(out)
}

/// Piece of a stratification: the degrees `n` with the stratum inside
/// `Supp H^n`.
#[derive(Clone, Debug)]
pub struct AmpStratum {
    pub set: ConstructibleSet,
    pub degrees: Vec<i32>,
}

impl AmpStratum {
    pub fn inf(&self) -> Option<i32> {
        self.degrees.first().copied()
    }

    pub fn sup(&self) -> Option<i32> {
        self.degrees.last().copied()
    }

    pub fn amplitude(&self) -> Option<i32> {
        Some(self.sup()? - self.inf()?)
    }
}

/// Splits `Spec(P/ambient)` by membership in each `Supp H^n`. Pieces with the
/// same membership pattern are merged; a piece outside every support gets
/// an empty degree list.
pub fn amp_stratification(table: &CohomologyTable, ambient: &Ideal) -> Result<Vec<AmpStratum>> {
    let mut pieces: Vec<(ConstructibleSet, Vec<i32>)> = vec![(ConstructibleSet::whole(ambient)?, Vec::new())];
    for &n in table.nonzero_degrees() {
        let supp = ConstructibleSet::closed(ambient, &table.annihilator(n, ambient.ring())?)?;
        let mut next = Vec::new();
        for (set, degrees) in pieces {
            let inside = set.intersection(&supp)?;
            let outside = set.difference(&supp)?;
            if !inside.is_empty() {
                let mut d = degrees.clone();
                d.push(n);
                next.push((inside, d));
            }
            if !outside.is_empty() {
                next.push((outside, degrees));
            }
        }
        pieces = next;
    }
    let mut merged: BTreeMap<Vec<i32>, ConstructibleSet> = BTreeMap::new();
    for (set, degrees) in pieces {
        let entry = match merged.remove(&degrees) {
            Some(prev) => prev.union(&set)?,
            None => set,
        };
        merged.insert(degrees, entry);
    }
    Ok(merged.into_iter().map(|(degrees, set)| AmpStratum { set, degrees }).collect())
}
