//! Non-positive DG-rings of two shapes: Koszul complexes over a base algebra
//! and square-zero trivial extensions `B ⊕ B^r[k]`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use once_cell::sync::OnceCell;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::modcomplex::{FreeComplex, PresentedModule};
use crate::polyalg::{Ideal, Matrix, PolyRing, Polynomial};

/// Number of random linear forms tried after the variables.
pub const RANDOM_CANDIDATES: usize = 32;

/// `B = P/J`, optionally with its minimal primes supplied by the caller.
#[derive(Clone, Debug)]
pub struct BaseAlgebra {
    defining: Ideal,
    declared_primes: Option<Vec<Ideal>>,
}

impl BaseAlgebra {
    pub fn new(defining: &Ideal) -> Result<Self> {
        if defining.is_unit()? {
            return Err(Error::Invalid("the defining ideal contains 1, so the base algebra is zero".into()));
        }
        Ok(BaseAlgebra { defining: defining.clone(), declared_primes: None })
    }

    /// The polynomial ring itself.
    pub fn polynomial(ring: &Arc<PolyRing>) -> Self {
        BaseAlgebra { defining: Ideal::zero(ring), declared_primes: None }
    }

    /// Attaches minimal primes. They are checked when first used.
    pub fn with_declared_primes(mut self, primes: Vec<Ideal>) -> Result<Self> {
        for p in &primes {
            self.defining.same_ring(p)?;
        }
        self.declared_primes = Some(primes);
        Ok(self)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.defining.ring()
    }

    pub fn defining(&self) -> &Ideal {
        &self.defining
    }

    pub fn declared_primes(&self) -> Option<&[Ideal]> {
        self.declared_primes.as_deref()
    }
}

impl fmt::Display for BaseAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ring();
        write!(f, "{}[{}]", ring.field(), ring.var_names().join(","))?;
        if !self.defining.is_zero() {
            write!(f, "/{}", self.defining)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Construction {
    /// Koszul complex on the elements, read in `B`.
    Koszul { elements: Vec<Polynomial> },
    /// `B ⊕ B^rank` with the second summand in degree `piece_degree < 0`,
    /// zero differential and zero products between negative-degree elements.
    TrivialExt { piece_degree: i32, piece_rank: usize },
}

/// Cohomology modules of a complex, keyed by degree. Zero modules are kept
/// so that every stored degree can be queried.
#[derive(Clone, Debug)]
pub struct CohomologyTable {
    entries: BTreeMap<i32, PresentedModule>,
    nonzero: Vec<i32>,
}

impl CohomologyTable {
    pub fn new(entries: BTreeMap<i32, PresentedModule>) -> Result<Self> {
        let mut nonzero = Vec::new();
        for (&n, m) in &entries {
            if !m.is_zero()? {
                nonzero.push(n);
            }
        }
        Ok(CohomologyTable { entries, nonzero })
    }

    pub fn from_complex(c: &FreeComplex) -> Result<Self> {
        Self::new(c.homology_table()?)
    }

    /// `H^n`, or `None` outside the stored degrees (where it is zero).
    pub fn get(&self, n: i32) -> Option<&PresentedModule> {
        self.entries.get(&n)
    }

    pub fn entries(&self) -> &BTreeMap<i32, PresentedModule> {
        &self.entries
    }

    /// Degrees with nonzero cohomology, ascending.
    pub fn nonzero_degrees(&self) -> &[i32] {
        &self.nonzero
    }

    pub fn is_zero_at(&self, n: i32) -> bool {
        !self.nonzero.contains(&n)
    }

    /// `(inf, sup, amp)` over the nonzero degrees.
    pub fn amplitude_bounds(&self) -> Result<(i32, i32, i32)> {
        match (self.nonzero.first(), self.nonzero.last()) {
            (Some(&lo), Some(&hi)) => Ok((lo, hi, hi - lo)),
            _ => Err(Error::Invalid("zero DG-module".into())),
        }
    }

    /// Annihilator of `H^n`; the unit ideal where `H^n = 0`.
    pub fn annihilator(&self, n: i32, ring: &Arc<PolyRing>) -> Result<Ideal> {
        match self.entries.get(&n) {
            Some(m) => m.annihilator(),
            None => Ok(Ideal::unit(ring)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DGRing {
    base: BaseAlgebra,
    construction: Construction,
    h0_primes: Option<Vec<Ideal>>,
    complex: OnceCell<FreeComplex>,
    table: OnceCell<CohomologyTable>,
    h0: OnceCell<Ideal>,
}

impl DGRing {
    pub fn build(base: BaseAlgebra, construction: Construction) -> Result<Self> {
        match &construction {
            Construction::Koszul { elements } => {
                for e in elements {
                    if e.ring() != base.ring() {
                        return Err(Error::RingMismatch(format!("Koszul element {e} lives in another ring")));
                    }
                }
            }
            Construction::TrivialExt { piece_degree, piece_rank } => {
                if *piece_degree >= 0 {
                    return Err(Error::Invalid(format!("piece degree must be negative, got {piece_degree}")));
                }
                if *piece_rank == 0 {
                    return Err(Error::Invalid("piece rank must be positive".into()));
                }
            }
        }
        Ok(DGRing {
            base,
            construction,
            h0_primes: None,
            complex: OnceCell::new(),
            table: OnceCell::new(),
            h0: OnceCell::new(),
        })
    }

    /// The base algebra as a DG-ring concentrated in degree 0.
    pub fn ring_case(base: BaseAlgebra) -> Self {
        Self::build(base, Construction::Koszul { elements: Vec::new() }).expect("no elements to check")
    }

    pub fn trivial_extension(base: BaseAlgebra, piece_degree: i32, piece_rank: usize) -> Result<Self> {
        Self::build(base, Construction::TrivialExt { piece_degree, piece_rank })
    }

    pub fn koszul(base: BaseAlgebra, elements: Vec<Polynomial>) -> Result<Self> {
        Self::build(base, Construction::Koszul { elements })
    }

    /// Declares the minimal primes of `H^0(A)`.
    pub fn with_h0_primes(mut self, primes: Vec<Ideal>) -> Result<Self> {
        for p in &primes {
            self.base.defining.same_ring(p)?;
        }
        self.h0_primes = Some(primes);
        Ok(self)
    }

    pub fn base(&self) -> &BaseAlgebra {
        &self.base
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.base.ring()
    }

    /// Ideal of `P` cutting out `H^0(A)`.
    pub fn h0_ideal(&self) -> Result<Ideal> {
        self.h0
            .get_or_try_init(|| match &self.construction {
                Construction::Koszul { elements } => self.base.defining.add_generators(elements),
                Construction::TrivialExt { .. } => Ok(self.base.defining.clone()),
            })
            .cloned()
    }

    /// `H^0(A)` as a base algebra, carrying whatever minimal primes are known
    /// for it.
    pub fn h0_algebra(&self) -> Result<BaseAlgebra> {
        let i0 = self.h0_ideal()?;
        let mut out = BaseAlgebra::new(&i0)?;
        if let Some(p) = &self.h0_primes {
            out.declared_primes = Some(p.clone());
        } else if let Some(p) = &self.base.declared_primes {
            if i0.equals(&self.base.defining)? {
                out.declared_primes = Some(p.clone());
            }
        }
        Ok(out)
    }

    /// Underlying complex over `P/J`.
    pub fn complex(&self) -> &FreeComplex {
        self.complex.get_or_init(|| match &self.construction {
            Construction::Koszul { elements } => koszul_complex(&self.base.defining, elements),
            Construction::TrivialExt { piece_degree, piece_rank } => {
                let ring = self.ring();
                let k = -piece_degree;
                let mut ranks = vec![0usize; k as usize + 1];
                ranks[0] = *piece_rank;
                ranks[k as usize] = 1;
                let diffs = (0..k as usize).map(|i| Matrix::zeros(ring, ranks[i + 1], ranks[i])).collect();
                FreeComplex::new(&self.base.defining, *piece_degree, ranks, diffs).expect("zero differential")
            }
        })
    }

    pub fn cohomology_table(&self) -> Result<&CohomologyTable> {
        self.table.get_or_try_init(|| match &self.construction {
            Construction::Koszul { .. } => CohomologyTable::from_complex(self.complex()),
            Construction::TrivialExt { piece_degree, piece_rank } => {
                let ring = self.ring();
                let j = &self.base.defining;
                let mut entries = BTreeMap::new();
                entries.insert(0, PresentedModule::cyclic(j));
                entries.insert(*piece_degree, PresentedModule::over_base(&Matrix::zeros(ring, *piece_rank, 0), j));
                CohomologyTable::new(entries)
            }
        })
    }

    pub fn amplitude_bounds(&self) -> Result<(i32, i32, i32)> {
        self.cohomology_table()?.amplitude_bounds()
    }

    /// Whether `x` is a nonzerodivisor on `H^{inf}(A)`.
    pub fn is_regular_element(&self, x: &Polynomial) -> Result<bool> {
        x.check_ring(self.ring())?;
        let table = self.cohomology_table()?;
        let (inf, _, _) = table.amplitude_bounds()?;
        table.get(inf).expect("nonzero degree is stored").is_nonzerodivisor(x)
    }

    /// `A∕∕x`: the cone of multiplication by `x`. Koszul rings take `x` as a
    /// further element; a trivial extension over `B` becomes the trivial
    /// extension over `B/(x)` when `x` is regular.
    pub fn dg_quotient(&self, x: &Polynomial) -> Result<DGRing> {
        x.check_ring(self.ring())?;
        match &self.construction {
            Construction::Koszul { elements } => {
                let mut elements = elements.clone();
                elements.push(x.clone());
                let base = BaseAlgebra { declared_primes: None, ..self.base.clone() };
                Self::koszul(base, elements)
            }
            Construction::TrivialExt { piece_degree, piece_rank } => {
                if !self.is_regular_element(x)? {
                    return Err(Error::Unsupported(format!(
                        "quotient of a trivial extension by the zerodivisor {x}"
                    )));
                }
                let base = BaseAlgebra::new(&self.base.defining.add_generators(std::slice::from_ref(x))?)?;
                Self::trivial_extension(base, *piece_degree, *piece_rank)
            }
        }
    }

    /// Greedy regular sequence in `H^0(A)`. Each accepted element is regular
    /// on the current quotient, keeps `H^0` nonzero and drops its Krull
    /// dimension by one. Without explicit candidates the pool is the
    /// variables followed by [`RANDOM_CANDIDATES`] seeded linear forms.
    pub fn find_max_regular_sequence(&self, candidates: Option<&[Polynomial]>, seed: u64) -> Result<Vec<Polynomial>> {
        let pool = match candidates {
            Some(c) => c.to_vec(),
            None => default_candidates(self.ring(), seed),
        };
        let mut current = self.clone();
        let mut chosen: Vec<Polynomial> = Vec::new();
        let mut dim = current.h0_ideal()?.krull_dimension()?;
        'outer: while dim > 0 {
            for x in &pool {
                if chosen.contains(x) {
                    continue;
                }
                let extended = current.h0_ideal()?.add_generators(std::slice::from_ref(x))?;
                if extended.is_unit()? || extended.krull_dimension()? != dim - 1 {
                    continue;
                }
                if !current.is_regular_element(x)? {
                    continue;
                }
                current = current.dg_quotient(x)?;
                chosen.push(x.clone());
                dim -= 1;
                continue 'outer;
            }
            break;
        }
        Ok(chosen)
    }

    /// Quotient by a sequence, one element at a time.
    pub fn dg_quotient_by(&self, xs: &[Polynomial]) -> Result<DGRing> {
        let mut current = self.clone();
        for x in xs {
            current = current.dg_quotient(x)?;
        }
        Ok(current)
    }
}

impl fmt::Display for DGRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.construction {
            Construction::Koszul { elements } if elements.is_empty() => write!(f, "{}", self.base),
            Construction::Koszul { elements } => {
                let e: Vec<String> = elements.iter().map(|p| p.to_string()).collect();
                write!(f, "Koszul({}) over {}", e.join(", "), self.base)
            }
            Construction::TrivialExt { piece_degree, piece_rank } => {
                write!(f, "{} + ({})^{} in degree {}", self.base, self.base, piece_rank, piece_degree)
            }
        }
    }
}

/// Variables, then seeded random linear forms with coefficients in `-3..=3`.
pub fn default_candidates(ring: &Arc<PolyRing>, seed: u64) -> Vec<Polynomial> {
    let n = ring.nvars();
    let mut out: Vec<Polynomial> = (0..n).map(|i| ring.var(i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut produced = 0;
    while produced < RANDOM_CANDIDATES {
        let mut form = ring.zero();
        for i in 0..n {
            let c: i64 = rng.gen_range(-3..=3);
            form = &form + &(&ring.from_i64(c) * &ring.var(i));
        }
        produced += 1;
        if !form.is_zero() && !out.contains(&form) {
            out.push(form);
        }
    }
    out
}

/// Koszul complex on `elements` over `P/modulus`, in degrees `-c..0`. The
/// basis of degree `-k` is the `k`-subsets of the elements in lexicographic
/// order; `e_S ↦ Σ (-1)^pos f_i e_{S∖i}`.
pub fn koszul_complex(modulus: &Ideal, elements: &[Polynomial]) -> FreeComplex {
    let ring = modulus.ring();
    let c = elements.len();
    let subsets: Vec<Vec<Vec<usize>>> = (0..=c).map(|k| k_subsets(c, k)).collect();
    let ranks: Vec<usize> = (0..=c).rev().map(|k| subsets[k].len()).collect();
    let mut diffs = Vec::new();
    for k in (1..=c).rev() {
        let (src, dst) = (&subsets[k], &subsets[k - 1]);
        let mut m = Matrix::zeros(ring, dst.len(), src.len());
        for (j, s) in src.iter().enumerate() {
            for (pos, &i) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&t| t != i).collect();
                let row = dst.iter().position(|d| *d == rest).expect("face is a subset");
                let entry = if pos % 2 == 0 { elements[i].clone() } else { -&elements[i] };
                m.set(row, j, entry);
            }
        }
        diffs.push(m);
    }
    FreeComplex::new(modulus, -(c as i32), ranks, diffs).expect("Koszul differential squares to zero")
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}
