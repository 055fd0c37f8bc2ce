use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use once_cell::sync::OnceCell;

use super::groebner::{groebner_basis, reduce, ModVector};
use super::module::kernel_vectors;
use super::monomial::MonomialOrder;
use super::poly::{describe_ring, PolyRing, Polynomial};
use crate::error::{Error, Result};

struct IdealData {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceCell<Vec<Polynomial>>,
}

/// Ideal of the ambient polynomial ring. Cloning shares the cached reduced
/// Gröbner basis.
#[derive(Clone)]
pub struct Ideal(Arc<IdealData>);

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.0.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal({})", gens.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            g.check_ring(ring)?;
        }
        let mut kept: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(Ideal(Arc::new(IdealData { ring: ring.clone(), gens: kept, gb: OnceCell::new() })))
    }

    /// Same ideal, generated by its reduced Gröbner basis.
    pub fn compact(&self) -> Result<Ideal> {
        let gb = self.groebner()?.to_vec();
        let cell = OnceCell::new();
        let _ = cell.set(gb.clone());
        Ok(Ideal(Arc::new(IdealData { ring: self.ring().clone(), gens: gb, gb: cell })))
    }

    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, Vec::new()).expect("empty ideal")
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, vec![ring.one()]).expect("unit ideal")
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.0.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.0.gens
    }

    pub fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{} vs {}",
                describe_ring(self.ring()),
                describe_ring(other.ring())
            )))
        }
    }

    /// Reduced Gröbner basis, computed once and cached.
    pub fn groebner(&self) -> Result<&[Polynomial]> {
        self.0
            .gb
            .get_or_try_init(|| {
                let ring = &self.0.ring;
                let gens: Vec<ModVector> = self.0.gens.iter().map(ModVector::from_poly).collect();
                let gb = groebner_basis(ring, &gens)?;
                Ok(gb.iter().map(|v| v.to_column(ring, 1).pop().unwrap()).collect())
            })
            .map(|v| v.as_slice())
    }

    /// Remainder of `f` on division by the Gröbner basis; zero iff `f ∈ I`.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        f.check_ring(self.ring())?;
        let gb: Vec<ModVector> = self.groebner()?.iter().map(ModVector::from_poly).collect();
        let refs: Vec<&ModVector> = gb.iter().collect();
        let r = reduce(self.ring(), &ModVector::from_poly(f), &refs)?;
        Ok(r.to_column(self.ring(), 1).pop().unwrap())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        for g in other.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.groebner()? == other.groebner()?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.iter().any(|g| g.is_unit()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.gens.is_empty()
    }

    pub fn is_monomial(&self) -> Result<bool> {
        Ok(self.groebner()?.iter().all(|g| g.is_monomial()))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = self.0.gens.clone();
        gens.extend(other.0.gens.iter().cloned());
        Ideal::new(self.ring(), gens)
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.0.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(self.ring(), gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(self.0.gens.len() * other.0.gens.len());
        for a in &self.0.gens {
            for b in &other.0.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(self.ring(), gens)
    }

    /// `f ∈ √I`, decided by `1 ∈ I + (1 - t·f)` in `P[t]`.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        f.check_ring(self.ring())?;
        if self.contains(f)? {
            return Ok(true);
        }
        let (ext, map) = adjoin_variable(self.ring(), "t")?;
        let t = ext.var(ext.nvars() - 1);
        let mut gens: Vec<Polynomial> = self.0.gens.iter().map(|g| g.map_into(&ext, &map)).collect();
        gens.push(&ext.one() - &(&t * &f.map_into(&ext, &map)));
        Ideal::new(&ext, gens)?.is_unit()
    }

    /// `other ⊆ √self`.
    pub fn radical_contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        for g in other.generators() {
            if !self.radical_contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(I : f) = {g : g·f ∈ I}`.
    pub fn quotient(&self, f: &Polynomial) -> Result<Ideal> {
        f.check_ring(self.ring())?;
        if f.is_zero() {
            return Err(Error::Invalid("ideal quotient by the zero polynomial".into()));
        }
        let ring = self.ring();
        let mut cols = vec![ModVector::from_poly(f)];
        cols.extend(self.0.gens.iter().map(ModVector::from_poly));
        let ker = kernel_vectors(ring, &cols, 1)?;
        let gens = ker.iter().map(|k| k.restrict(0..1).to_column(ring, 1).pop().unwrap()).collect();
        Ideal::new(ring, gens)
    }

    /// `(I : J)`.
    pub fn quotient_ideal(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut acc = Ideal::unit(self.ring());
        for g in other.generators() {
            acc = acc.intersect(&self.quotient(g)?)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let ring = self.ring();
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let one = ring.one();
        let zero = ring.zero();
        let mut cols = vec![ModVector::from_column(ring, &[one.clone(), one])];
        cols.extend(self.0.gens.iter().map(|g| ModVector::from_column(ring, &[g.clone(), zero.clone()])));
        cols.extend(other.0.gens.iter().map(|h| ModVector::from_column(ring, &[zero.clone(), h.clone()])));
        let ker = kernel_vectors(ring, &cols, 2)?;
        let gens = ker.iter().map(|k| k.restrict(0..1).to_column(ring, 1).pop().unwrap()).collect();
        Ideal::new(ring, gens)
    }

    /// `I ∩ k[keep]`, computed with a block order eliminating the other variables.
    pub fn eliminate(&self, keep: &[usize]) -> Result<Ideal> {
        let ring = self.ring();
        let n = ring.nvars();
        if let Some(&bad) = keep.iter().find(|&&i| i >= n) {
            return Err(Error::Invalid(format!("variable index {bad} out of range")));
        }
        let elim: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        if elim.is_empty() {
            return Ok(self.clone());
        }
        let mut new_pos = vec![0usize; n];
        let mut names = Vec::with_capacity(n);
        for (pos, &i) in elim.iter().chain(keep.iter().filter(|i| !elim.contains(i))).enumerate() {
            new_pos[i] = pos;
            names.push(ring.var_names()[i].clone());
        }
        let block = PolyRing::new(ring.field(), names, MonomialOrder::Block(elim.len()))?;
        let gens: Vec<Polynomial> = self.0.gens.iter().map(|g| g.map_into(&block, &new_pos)).collect();
        let tmp = Ideal::new(&block, gens)?;
        let mut back = vec![0usize; n];
        for (i, &p) in new_pos.iter().enumerate() {
            back[p] = i;
        }
        let kept: Vec<Polynomial> = tmp
            .groebner()?
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[..elim.len()].iter().all(|&e| e == 0)))
            .map(|g| g.map_into(ring, &back))
            .collect();
        Ideal::new(ring, kept)
    }

    pub fn eliminate_named(&self, keep: &[&str]) -> Result<Ideal> {
        let idx = keep
            .iter()
            .map(|k| self.ring().var_index(k).ok_or_else(|| Error::Invalid(format!("unknown variable `{k}`"))))
            .collect::<Result<Vec<_>>>()?;
        self.eliminate(&idx)
    }

    /// `(I : f^∞)`, via `I + (1 - t·f)` with `t` eliminated.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        f.check_ring(self.ring())?;
        let ring = self.ring();
        let (ext, map) = adjoin_variable(ring, "t")?;
        let t = ext.var(ext.nvars() - 1);
        let mut gens: Vec<Polynomial> = self.0.gens.iter().map(|g| g.map_into(&ext, &map)).collect();
        gens.push(&ext.one() - &(&t * &f.map_into(&ext, &map)));
        let keep: Vec<usize> = (0..ring.nvars()).collect();
        let elim = Ideal::new(&ext, gens)?.eliminate(&keep)?;
        let back: Vec<usize> = (0..ext.nvars()).map(|i| i.min(ring.nvars().saturating_sub(1))).collect();
        let gens = elim.generators().iter().map(|g| g.map_into(ring, &back)).collect();
        Ideal::new(ring, gens)
    }

    /// Krull dimension of `P/I`: the largest set of variables independent
    /// modulo the initial ideal; `-1` when `1 ∈ I`.
    pub fn krull_dimension(&self) -> Result<i64> {
        let gb = self.groebner()?;
        if gb.iter().any(|g| g.is_unit()) {
            return Ok(-1);
        }
        let n = self.ring().nvars();
        let supports: Vec<u64> = gb
            .iter()
            .map(|g| g.leading_monomial().unwrap().support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for set in 0u64..(1u64 << n) {
            let size = set.count_ones() as i64;
            if size > best && supports.iter().all(|&s| s & !set != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// Reduced Gröbner basis printed in canonical form.
    pub fn canonical_strings(&self) -> Result<Vec<String>> {
        Ok(self.groebner()?.iter().map(|g| g.to_string()).collect())
    }

    /// Deterministic total order on ideals by their reduced Gröbner bases.
    pub fn canonical_cmp(&self, other: &Ideal) -> Result<Ordering> {
        Ok(self.canonical_strings()?.cmp(&other.canonical_strings()?))
    }

    /// The same ideal inside another ring, variables mapped by `var_map`.
    pub fn map_into(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Result<Ideal> {
        Ideal::new(target, self.0.gens.iter().map(|g| g.map_into(target, var_map)).collect())
    }
}

/// `P[t]` with `t` appended last; returns the ring and the variable map.
pub fn adjoin_variable(ring: &Arc<PolyRing>, base: &str) -> Result<(Arc<PolyRing>, Vec<usize>)> {
    let mut names = ring.var_names().to_vec();
    names.push(ring.fresh_name(base));
    let ext = PolyRing::new(ring.field(), names, MonomialOrder::GRevLex)?;
    Ok((ext, (0..ring.nvars()).collect()))
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.0.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}
