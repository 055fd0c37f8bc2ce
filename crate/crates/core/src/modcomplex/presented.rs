use std::fmt;
use std::sync::Arc;

use once_cell::sync::OnceCell;

use crate::error::{Error, Result};
use crate::polyalg::{
    adjoin_variable, groebner_basis, kernel_vectors, reduce, Ideal, Matrix, Monomial, ModVector, PolyRing,
    Polynomial, VTerm,
};

/// k-dimension of a module: finite, or infinite when the staircase is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "infinite"),
        }
    }
}

/// Cokernel presentation `P^rank / span(relations)`. `generators`, when
/// present, records representatives of the generators in some ambient free
/// module (for homology modules: the chosen cycles).
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: Arc<PolyRing>,
    rank: usize,
    relations: Vec<ModVector>,
    generators: Option<Vec<ModVector>>,
    ambient_rank: usize,
    gb: OnceCell<Vec<ModVector>>,
    ann: OnceCell<Ideal>,
}

impl PresentedModule {
    pub(crate) fn from_parts(
        ring: &Arc<PolyRing>,
        rank: usize,
        relations: Vec<ModVector>,
        generators: Option<(Vec<ModVector>, usize)>,
    ) -> Self {
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        let (generators, ambient_rank) = match generators {
            Some((g, n)) => (Some(g), n),
            None => (None, rank),
        };
        PresentedModule {
            ring: ring.clone(),
            rank,
            relations,
            generators,
            ambient_rank,
            gb: OnceCell::new(),
            ann: OnceCell::new(),
        }
    }

    /// Cokernel of `relations` (a matrix with `rank` rows).
    pub fn new(relations: &Matrix) -> Self {
        Self::from_parts(relations.ring(), relations.rows(), relations.column_vectors(), None)
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::from_parts(ring, 0, Vec::new(), None)
    }

    pub fn free(ring: &Arc<PolyRing>, rank: usize) -> Self {
        Self::from_parts(ring, rank, Vec::new(), None)
    }

    /// `P/I`.
    pub fn cyclic(ideal: &Ideal) -> Self {
        Self::from_parts(ideal.ring(), 1, ideal.generators().iter().map(ModVector::from_poly).collect(), None)
    }

    /// `(P/J)^rank` modulo the extra `relations`: the B-module presentation
    /// with `J·e_i` added explicitly.
    pub fn over_base(relations: &Matrix, base: &Ideal) -> Self {
        let ring = relations.ring();
        let mut rels = relations.column_vectors();
        rels.extend(base_relations(ring, base, relations.rows()));
        Self::from_parts(ring, relations.rows(), rels, None)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> Matrix {
        Matrix::from_vectors(&self.ring, self.rank, &self.relations)
    }

    /// Generator representatives as columns of the ambient free module.
    pub fn generator_matrix(&self) -> Option<Matrix> {
        self.generators.as_ref().map(|g| Matrix::from_vectors(&self.ring, self.ambient_rank, g))
    }

    pub(crate) fn gb(&self) -> Result<&[ModVector]> {
        self.gb.get_or_try_init(|| groebner_basis(&self.ring, &self.relations)).map(|v| v.as_slice())
    }

    /// Module Gröbner basis of the relations, as columns.
    pub fn relation_groebner(&self) -> Result<Matrix> {
        Ok(Matrix::from_vectors(&self.ring, self.rank, self.gb()?))
    }

    pub(crate) fn reduce_vector(&self, v: &ModVector) -> Result<ModVector> {
        let gb: Vec<&ModVector> = self.gb()?.iter().collect();
        reduce(&self.ring, v, &gb)
    }

    /// Whether the column vector is zero in the module.
    pub fn is_zero_element(&self, column: &[Polynomial]) -> Result<bool> {
        if column.len() != self.rank {
            return Err(Error::Invalid(format!("element of length {} in rank {}", column.len(), self.rank)));
        }
        Ok(self.reduce_vector(&ModVector::from_column(&self.ring, column))?.is_zero())
    }

    pub fn is_zero(&self) -> Result<bool> {
        for j in 0..self.rank {
            if !self.reduce_vector(&unit_vector(&self.ring, j))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Ann(M) = ∩_j (N : e_j)`.
    pub fn annihilator(&self) -> Result<Ideal> {
        self.ann
            .get_or_try_init(|| {
                let ring = &self.ring;
                let mut acc = Ideal::unit(ring);
                for j in 0..self.rank {
                    let mut cols = vec![unit_vector(ring, j)];
                    cols.extend(self.relations.iter().cloned());
                    let ker = kernel_vectors(ring, &cols, self.rank)?;
                    let gens: Vec<Polynomial> =
                        ker.iter().map(|k| k.restrict(0..1).to_column(ring, 1).pop().unwrap()).collect();
                    acc = acc.intersect(&Ideal::new(ring, gens)?)?;
                }
                Ok(acc)
            })
            .cloned()
    }

    /// k-dimension by counting the staircase of the relation module's
    /// leading terms, component by component.
    pub fn length(&self) -> Result<Length> {
        let n = self.ring.nvars();
        let gb = self.gb()?;
        let mut total = 0u64;
        for comp in 0..self.rank {
            let leads: Vec<&Monomial> =
                gb.iter().map(|g| g.lead().unwrap()).filter(|l| l.comp == comp).map(|l| &l.mono).collect();
            if leads.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut bounds = vec![0u32; n];
            for (i, b) in bounds.iter_mut().enumerate() {
                let pure = leads.iter().filter(|m| m.support().all(|v| v == i)).map(|m| m.exponents()[i]).min();
                match pure {
                    Some(e) => *b = e,
                    None => return Ok(Length::Infinite),
                }
            }
            total += count_staircase(&bounds, &leads);
        }
        Ok(Length::Finite(total))
    }

    /// Krull dimension of the support, `-1` for the zero module.
    pub fn dimension(&self) -> Result<i64> {
        self.annihilator()?.krull_dimension()
    }

    /// `M/xM`.
    pub fn cokernel_of_multiplication(&self, x: &Polynomial) -> Result<PresentedModule> {
        x.check_ring(&self.ring)?;
        let mut rels = self.relations.clone();
        for j in 0..self.rank {
            rels.push(unit_vector(&self.ring, j).mul_poly(&self.ring, x));
        }
        Ok(Self::from_parts(&self.ring, self.rank, rels, None))
    }

    /// Generators (as vectors of `P^rank`) of the kernel of `x : M -> M`.
    fn multiplication_kernel_vectors(&self, x: &Polynomial) -> Result<Vec<ModVector>> {
        x.check_ring(&self.ring)?;
        let ring = &self.ring;
        let mut cols: Vec<ModVector> =
            (0..self.rank).map(|j| unit_vector(ring, j).mul_poly(ring, x)).collect();
        cols.extend(self.relations.iter().cloned());
        let ker = kernel_vectors(ring, &cols, self.rank)?;
        Ok(ker.iter().map(|k| k.restrict(0..self.rank)).filter(|v| !v.is_zero()).collect())
    }

    /// Whether multiplication by `x` is injective on the module.
    pub fn is_nonzerodivisor(&self, x: &Polynomial) -> Result<bool> {
        for v in self.multiplication_kernel_vectors(x)? {
            if !self.reduce_vector(&v)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The kernel of `x : M -> M` as a presented module.
    pub fn kernel_of_multiplication(&self, x: &Polynomial) -> Result<PresentedModule> {
        let gens = self.multiplication_kernel_vectors(x)?;
        self.submodule_generated_by(gens)
    }

    /// Submodule of `M` generated by the images of `gens`.
    pub(crate) fn submodule_generated_by(&self, gens: Vec<ModVector>) -> Result<PresentedModule> {
        let s = gens.len();
        if s == 0 {
            return Ok(Self::zero(&self.ring));
        }
        let mut cols = gens.clone();
        cols.extend(self.relations.iter().cloned());
        let ker = kernel_vectors(&self.ring, &cols, self.rank)?;
        let rels = ker.iter().map(|k| k.restrict(0..s)).collect();
        PresentedModule::from_parts(&self.ring, s, rels, Some((gens, self.rank))).pruned()
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<PresentedModule> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch("direct sum of modules over different rings".into()));
        }
        let mut rels = self.relations.clone();
        rels.extend(other.relations.iter().map(|r| r.shift_components(self.rank)));
        Ok(Self::from_parts(&self.ring, self.rank + other.rank, rels, None))
    }

    /// `M_f`, presented over `P[t]` with the relations `(t·f - 1)·e_j`.
    pub fn localize(&self, f: &Polynomial) -> Result<PresentedModule> {
        f.check_ring(&self.ring)?;
        let (ext, map) = adjoin_variable(&self.ring, "t")?;
        let t = ext.var(ext.nvars() - 1);
        let inv = &(&t * &f.map_into(&ext, &map)) - &ext.one();
        let mut rels: Vec<ModVector> = self
            .relations
            .iter()
            .map(|r| {
                let col: Vec<Polynomial> =
                    r.to_column(&self.ring, self.rank).iter().map(|p| p.map_into(&ext, &map)).collect();
                ModVector::from_column(&ext, &col)
            })
            .collect();
        for j in 0..self.rank {
            rels.push(unit_vector(&ext, j).mul_poly(&ext, &inv));
        }
        Ok(Self::from_parts(&ext, self.rank, rels, None))
    }

    /// Removes generators that some relation expresses through the others
    /// (a unit leading coefficient in the relation Gröbner basis). Cheap, not
    /// a full minimization.
    pub fn pruned(&self) -> Result<PresentedModule> {
        let mut current = self.clone();
        loop {
            let ring = current.ring.clone();
            let gb = current.gb()?.to_vec();
            let units: Vec<&ModVector> = gb.iter().filter(|g| g.lead().unwrap().mono.is_one()).collect();
            if units.is_empty() {
                return Ok(current);
            }
            // e_j = -(rest of g) with all other terms in later components
            let mut subst: Vec<Option<ModVector>> = vec![None; current.rank];
            let mut unit_comps: Vec<usize> = units.iter().map(|g| g.lead().unwrap().comp).collect();
            unit_comps.sort_unstable_by(|a, b| b.cmp(a));
            for &j in &unit_comps {
                let g = units.iter().find(|g| g.lead().unwrap().comp == j).unwrap();
                let tail = ModVector { terms: g.terms[1..].to_vec() };
                let image = apply_substitution(&ring, &tail, &subst).scale(&ring, &ring.field().from_i64(-1));
                subst[j] = Some(image);
            }
            let keep: Vec<usize> = (0..current.rank).filter(|j| subst[*j].is_none()).collect();
            let mut new_index = vec![usize::MAX; current.rank];
            for (k, &j) in keep.iter().enumerate() {
                new_index[j] = k;
            }
            let rels: Vec<ModVector> = gb
                .iter()
                .filter(|g| !g.lead().unwrap().mono.is_one())
                .map(|g| renumber(&ring, &apply_substitution(&ring, g, &subst), &new_index))
                .filter(|v| !v.is_zero())
                .collect();
            let generators = current
                .generators
                .as_ref()
                .map(|g| (keep.iter().map(|&j| g[j].clone()).collect(), current.ambient_rank));
            current = Self::from_parts(&ring, keep.len(), rels, generators);
        }
    }
}

fn apply_substitution(ring: &PolyRing, v: &ModVector, subst: &[Option<ModVector>]) -> ModVector {
    let mut out = ModVector::zero();
    for t in &v.terms {
        let piece = match &subst[t.comp] {
            Some(image) => image.clone(),
            None => unit_vector(ring, t.comp),
        };
        out = out.add_scaled(ring, &piece, &t.coeff, &t.mono);
    }
    out
}

fn renumber(ring: &PolyRing, v: &ModVector, new_index: &[usize]) -> ModVector {
    let mut out = ModVector::zero();
    for t in &v.terms {
        debug_assert!(new_index[t.comp] != usize::MAX);
        let single = ModVector {
            terms: vec![VTerm { comp: new_index[t.comp], mono: t.mono.clone(), coeff: t.coeff.clone() }],
        };
        out = out.add(ring, &single);
    }
    out
}

pub(crate) fn unit_vector(ring: &PolyRing, j: usize) -> ModVector {
    ModVector { terms: vec![VTerm { comp: j, mono: Monomial::one(ring.nvars()), coeff: ring.field().one() }] }
}

/// `g·e_i` for every generator `g` of `base` and `i < rank`.
pub(crate) fn base_relations(ring: &PolyRing, base: &Ideal, rank: usize) -> Vec<ModVector> {
    let mut out = Vec::new();
    for i in 0..rank {
        for g in base.generators() {
            out.push(unit_vector(ring, i).mul_poly(ring, g));
        }
    }
    out
}

fn count_staircase(bounds: &[u32], leads: &[&Monomial]) -> u64 {
    let n = bounds.len();
    let mut count = 0u64;
    let mut exps = vec![0u32; n];
    loop {
        let m = Monomial::from_exponents(&exps);
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            exps[i] += 1;
            if exps[i] < bounds[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

impl fmt::Display for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker of {} relation(s) on P^{}", self.relations.len(), self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::FieldSpec;

    fn ring() -> Arc<PolyRing> {
        PolyRing::with_vars(FieldSpec::prime(5).unwrap(), &["x", "y"]).unwrap()
    }

    fn cyclic(r: &Arc<PolyRing>, gens: &[&str]) -> PresentedModule {
        PresentedModule::cyclic(&Ideal::parse(r, gens).unwrap())
    }

    #[test]
    fn annihilator_examples() {
        let r = ring();
        let m = cyclic(&r, &["x"]).direct_sum(&cyclic(&r, &["y"])).unwrap();
        assert!(m.annihilator().unwrap().equals(&Ideal::parse(&r, &["x*y"]).unwrap()).unwrap());
        assert!(PresentedModule::free(&r, 2).annihilator().unwrap().is_zero());
        let c = cyclic(&r, &["x^2", "x*y"]);
        assert!(c.annihilator().unwrap().equals(&Ideal::parse(&r, &["x^2", "x*y"]).unwrap()).unwrap());
        assert!(PresentedModule::zero(&r).annihilator().unwrap().is_unit().unwrap());
    }

    #[test]
    fn length_examples() {
        let r = ring();
        assert_eq!(cyclic(&r, &["x", "y"]).length().unwrap(), Length::Finite(1));
        assert_eq!(cyclic(&r, &["x^2", "y"]).length().unwrap(), Length::Finite(2));
        assert_eq!(cyclic(&r, &["x*y"]).length().unwrap(), Length::Infinite);
        assert_eq!(PresentedModule::free(&r, 1).length().unwrap(), Length::Infinite);
        assert_eq!(PresentedModule::zero(&r).length().unwrap(), Length::Finite(0));
        let two = cyclic(&r, &["x^2", "x*y", "y^3"]);
        assert_eq!(two.length().unwrap(), Length::Finite(4));
    }

    #[test]
    fn annihilator_kills_generators() {
        let r = ring();
        let rel = Matrix::from_columns(
            &r,
            2,
            &[
                vec![r.parse("x").unwrap(), r.parse("y").unwrap()],
                vec![r.parse("y^2").unwrap(), r.zero()],
            ],
        )
        .unwrap();
        let m = PresentedModule::new(&rel);
        let ann = m.annihilator().unwrap();
        for g in ann.generators() {
            for j in 0..2 {
                let mut v = vec![r.zero(), r.zero()];
                v[j] = g.clone();
                assert!(m.is_zero_element(&v).unwrap());
            }
        }
    }

    #[test]
    fn multiplication_kernel_and_cokernel() {
        let r = PolyRing::with_vars(FieldSpec::prime(5).unwrap(), &["x"]).unwrap();
        let m = cyclic(&r, &["x^2"]);
        let x = r.var(0);
        assert!(!m.is_nonzerodivisor(&x).unwrap());
        let k = m.kernel_of_multiplication(&x).unwrap();
        assert_eq!(k.length().unwrap(), Length::Finite(1));
        assert_eq!(m.cokernel_of_multiplication(&x).unwrap().length().unwrap(), Length::Finite(1));
        assert!(cyclic(&r, &["x^2 + 1"]).is_nonzerodivisor(&x).unwrap());
    }

    #[test]
    fn pruning_drops_unit_generators() {
        let r = ring();
        // e0 = x*e1 and y*e1 = 0: isomorphic to P/(y)
        let rel = Matrix::from_columns(
            &r,
            2,
            &[
                vec![r.one(), r.parse("-x").unwrap()],
                vec![r.zero(), r.parse("y").unwrap()],
            ],
        )
        .unwrap();
        let p = PresentedModule::new(&rel).pruned().unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.annihilator().unwrap().equals(&Ideal::parse(&r, &["y"]).unwrap()).unwrap());
    }

    #[test]
    fn localization_support() {
        let r = ring();
        let m = cyclic(&r, &["x*y"]);
        let loc = m.localize(&r.parse("x").unwrap()).unwrap();
        // (xy) with x inverted is (y)
        let ann = loc.annihilator().unwrap();
        let keep: Vec<usize> = vec![0, 1];
        let back = ann.eliminate(&keep).unwrap();
        let y = loc.ring().parse("y").unwrap();
        assert!(back.contains(&y).unwrap());
        assert!(cyclic(&r, &["x"]).localize(&r.parse("x").unwrap()).unwrap().is_zero().unwrap());
    }
}
