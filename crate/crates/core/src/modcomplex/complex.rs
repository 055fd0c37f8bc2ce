use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::presented::{base_relations, unit_vector, PresentedModule};
use crate::error::{Error, Result};
use crate::polyalg::{kernel_vectors, Ideal, Matrix, ModVector, PolyRing};

/// Bounded cochain complex whose terms are `(P/modulus)^rank`, stored as free
/// `P`-modules with matrices over `P`. The differential in degree `n` maps the
/// term in degree `n` to the term in degree `n + 1`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: Arc<PolyRing>,
    modulus: Ideal,
    lo: i32,
    ranks: Vec<usize>,
    diffs: Vec<Matrix>,
}

impl FreeComplex {
    /// `ranks[i]` is the rank in degree `lo + i`; `diffs[i]` is the
    /// differential out of degree `lo + i`. Checks shapes and `d ∘ d = 0`
    /// exactly over `P`.
    pub fn new(modulus: &Ideal, lo: i32, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        let ring = modulus.ring().clone();
        if diffs.len() + 1 != ranks.len().max(1) {
            return Err(Error::Invalid(format!(
                "{} terms need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.ring() != &ring {
                return Err(Error::RingMismatch("differential over a different ring".into()));
            }
            if d.cols() != ranks[i] || d.rows() != ranks[i + 1] {
                return Err(Error::Invalid(format!(
                    "differential out of degree {} is {}x{}, expected {}x{}",
                    lo + i as i32,
                    d.rows(),
                    d.cols(),
                    ranks[i + 1],
                    ranks[i]
                )));
            }
        }
        for (i, pair) in diffs.windows(2).enumerate() {
            if !pair[1].mul(&pair[0])?.is_zero() {
                return Err(Error::Invalid(format!("d∘d is nonzero out of degree {}", lo + i as i32)));
            }
        }
        Ok(FreeComplex { ring, modulus: modulus.clone(), lo, ranks, diffs })
    }

    /// Complex of free `P`-modules.
    pub fn free(ring: &Arc<PolyRing>, lo: i32, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        Self::new(&Ideal::zero(ring), lo, ranks, diffs)
    }

    /// Single term `(P/modulus)^rank` in `degree`.
    pub fn concentrated(modulus: &Ideal, degree: i32, rank: usize) -> Self {
        FreeComplex { ring: modulus.ring().clone(), modulus: modulus.clone(), lo: degree, ranks: vec![rank], diffs: vec![] }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn modulus(&self) -> &Ideal {
        &self.modulus
    }

    pub fn is_free(&self) -> bool {
        self.modulus.is_zero()
    }

    /// Lowest stored degree.
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest stored degree.
    pub fn hi(&self) -> i32 {
        self.lo + self.ranks.len() as i32 - 1
    }

    /// Degrees of the nonzero terms, as an inclusive range.
    pub fn support(&self) -> Option<(i32, i32)> {
        let first = self.ranks.iter().position(|&r| r > 0)?;
        let last = self.ranks.iter().rposition(|&r| r > 0)?;
        Some((self.lo + first as i32, self.lo + last as i32))
    }

    /// `hi - lo` over the nonzero terms, `0` for the zero complex.
    pub fn width(&self) -> usize {
        self.support().map(|(a, b)| (b - a) as usize).unwrap_or(0)
    }

    pub fn rank(&self, n: i32) -> usize {
        if n < self.lo || n > self.hi() {
            return 0;
        }
        self.ranks[(n - self.lo) as usize]
    }

    /// Differential out of degree `n` (zero matrix outside the stored range).
    pub fn differential(&self, n: i32) -> Matrix {
        if n >= self.lo && n < self.hi() {
            return self.diffs[(n - self.lo) as usize].clone();
        }
        Matrix::zeros(&self.ring, self.rank(n + 1), self.rank(n))
    }

    /// Same complex with the modulus replaced by `(0)`.
    pub fn forget_modulus(&self) -> FreeComplex {
        FreeComplex { modulus: Ideal::zero(&self.ring), ..self.clone() }
    }

    /// `H^n` as a presented `P`-module (annihilated by the modulus).
    /// Generators are cycle representatives in the term of degree `n`.
    pub fn homology_at(&self, n: i32) -> Result<PresentedModule> {
        let ring = &self.ring;
        let r = self.rank(n);
        if r == 0 {
            return Ok(PresentedModule::zero(ring));
        }
        let cycles = self.cycles(n)?;
        if cycles.is_empty() {
            return Ok(PresentedModule::zero(ring));
        }
        let s = cycles.len();
        let mut cols = cycles.clone();
        cols.extend(self.differential(n - 1).column_vectors());
        cols.extend(base_relations(ring, &self.modulus, r));
        let ker = kernel_vectors(ring, &cols, r)?;
        let rels = ker.iter().map(|k| k.restrict(0..s)).collect();
        PresentedModule::from_parts(ring, s, rels, Some((cycles, r))).pruned()
    }

    /// Generators of `{v ∈ P^r : d v ∈ modulus·P^{r'}}`.
    fn cycles(&self, n: i32) -> Result<Vec<ModVector>> {
        let ring = &self.ring;
        let r = self.rank(n);
        let next = self.rank(n + 1);
        let d = self.differential(n);
        if next == 0 || d.is_zero() {
            return Ok((0..r).map(|j| unit_vector(ring, j)).collect());
        }
        let mut cols = d.column_vectors();
        cols.extend(base_relations(ring, &self.modulus, next));
        let ker = kernel_vectors(ring, &cols, next)?;
        Ok(ker.iter().map(|k| k.restrict(0..r)).filter(|v| !v.is_zero()).collect())
    }

    /// Homology in every stored degree.
    pub fn homology_table(&self) -> Result<BTreeMap<i32, PresentedModule>> {
        (self.lo..=self.hi()).map(|n| Ok((n, self.homology_at(n)?))).collect()
    }

    /// `Hom_P(-, P)`: degree `n` is the dual of degree `-n`, with differential
    /// `(-1)^(n+1)` times the transpose. Requires a free complex.
    pub fn dual_into_ring(&self) -> Result<FreeComplex> {
        if !self.is_free() {
            return Err(Error::Invalid("dualizing needs a complex of free modules".into()));
        }
        let lo = -self.hi();
        let ranks: Vec<usize> = self.ranks.iter().rev().copied().collect();
        let diffs = (0..ranks.len().saturating_sub(1))
            .map(|i| {
                let n = lo + i as i32;
                let t = self.differential(-n - 1).transpose();
                if (n + 1) % 2 == 0 {
                    t
                } else {
                    t.scale(&self.ring.from_i64(-1))
                }
            })
            .collect();
        FreeComplex::free(&self.ring, lo, ranks, diffs)
    }

    /// Degree shift: `C[k]^n = C^{n+k}`, differential `(-1)^k d`.
    pub fn shift(&self, k: i32) -> FreeComplex {
        let diffs = if k % 2 == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(|d| d.scale(&self.ring.from_i64(-1))).collect()
        };
        FreeComplex { lo: self.lo - k, diffs, ..self.clone() }
    }
}

impl fmt::Display for FreeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = (self.lo..=self.hi()).map(|n| format!("{n}:{}", self.rank(n))).collect();
        write!(f, "complex [{}] mod {}", terms.join(" "), self.modulus)
    }
}

/// Degreewise matrices `φ^n : C^n -> D^n` commuting with the differentials.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    source: FreeComplex,
    target: FreeComplex,
    components: BTreeMap<i32, Matrix>,
}

impl ComplexMap {
    /// Missing degrees are zero maps. Commutation is checked modulo the
    /// shared modulus.
    pub fn new(source: &FreeComplex, target: &FreeComplex, components: BTreeMap<i32, Matrix>) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch("map between complexes over different rings".into()));
        }
        if !source.modulus.equals(&target.modulus)? {
            return Err(Error::Invalid("map between complexes over different quotient rings".into()));
        }
        for (&n, m) in &components {
            if m.cols() != source.rank(n) || m.rows() != target.rank(n) {
                return Err(Error::Invalid(format!("component in degree {n} has the wrong shape")));
            }
        }
        let map = ComplexMap { source: source.clone(), target: target.clone(), components };
        let lo = source.lo.min(target.lo);
        let hi = source.hi().max(target.hi());
        for n in lo..=hi {
            let left = target.differential(n).mul(&map.component(n))?;
            let right = map.component(n + 1).mul(&source.differential(n))?;
            let diff = left.sub(&right)?;
            if !is_zero_mod(&diff, &source.modulus)? {
                return Err(Error::Invalid(format!("map does not commute with the differentials in degree {n}")));
            }
        }
        Ok(map)
    }

    pub fn identity(c: &FreeComplex) -> Self {
        let components = (c.lo..=c.hi()).map(|n| (n, Matrix::identity(&c.ring, c.rank(n)))).collect();
        ComplexMap { source: c.clone(), target: c.clone(), components }
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn component(&self, n: i32) -> Matrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(&self.source.ring, self.target.rank(n), self.source.rank(n)))
    }

    /// Mapping cone: `Cone^n = C^{n+1} ⊕ D^n` with differential
    /// `[[-d_C, 0], [φ, d_D]]`.
    pub fn cone(&self) -> Result<FreeComplex> {
        let (c, d) = (&self.source, &self.target);
        let ring = &c.ring;
        let lo = (c.lo - 1).min(d.lo);
        let hi = (c.hi() - 1).max(d.hi());
        let ranks: Vec<usize> = (lo..=hi).map(|n| c.rank(n + 1) + d.rank(n)).collect();
        let mut diffs = Vec::new();
        for n in lo..hi {
            let (c1, c2, d0, d1) = (c.rank(n + 1), c.rank(n + 2), d.rank(n), d.rank(n + 1));
            let mut m = Matrix::zeros(ring, c2 + d1, c1 + d0);
            let dc = c.differential(n + 1);
            let phi = self.component(n + 1);
            let dd = d.differential(n);
            let minus = ring.from_i64(-1);
            for i in 0..c2 {
                for j in 0..c1 {
                    m.set(i, j, dc.get(i, j) * &minus);
                }
            }
            for i in 0..d1 {
                for j in 0..c1 {
                    m.set(c2 + i, j, phi.get(i, j).clone());
                }
                for j in 0..d0 {
                    m.set(c2 + i, c1 + j, dd.get(i, j).clone());
                }
            }
            diffs.push(m);
        }
        FreeComplex::new(&c.modulus, lo, ranks, diffs)
    }
}

fn is_zero_mod(m: &Matrix, modulus: &Ideal) -> Result<bool> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !modulus.contains(m.get(i, j))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
