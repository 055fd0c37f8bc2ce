//! Buchberger's algorithm for submodules of free modules `P^r`, with the
//! Gebauer–Möller installation of both Buchberger criteria and the normal
//! selection strategy. Ideals are the rank-one case.
//!
//! Vectors use position-over-term order: a smaller component index beats any
//! monomial, so the leading term of a vector sits in its first nonzero
//! component. Putting the image coordinates first therefore eliminates them,
//! which is how syzygies are extracted.

use std::cmp::Ordering;

use super::field::{coefficient_bit_bound, Coeff};
use super::monomial::Monomial;
use super::poly::{PolyRing, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct VTerm {
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// Sparse element of a free module, terms sorted by decreasing POT order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct ModVector {
    pub terms: Vec<VTerm>,
}

pub(crate) fn cmp_pos(ring: &PolyRing, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| ring.order().cmp(a.1, b.1))
}

impl ModVector {
    pub fn zero() -> Self {
        ModVector { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&VTerm> {
        self.terms.first()
    }

    pub fn from_column(ring: &PolyRing, column: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (comp, p) in column.iter().enumerate() {
            for (m, c) in &p.terms {
                terms.push(VTerm { comp, mono: m.clone(), coeff: c.clone() });
            }
        }
        // components in increasing order and each polynomial already sorted
        debug_assert!(terms.windows(2).all(|w| cmp_pos(ring, (w[0].comp, &w[0].mono), (w[1].comp, &w[1].mono))
            == Ordering::Greater));
        ModVector { terms }
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        ModVector {
            terms: p.terms.iter().map(|(m, c)| VTerm { comp: 0, mono: m.clone(), coeff: c.clone() }).collect(),
        }
    }

    pub fn to_column(&self, ring: &std::sync::Arc<PolyRing>, rank: usize) -> Vec<Polynomial> {
        let mut col: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            col[t.comp].push((t.mono.clone(), t.coeff.clone()));
        }
        col.into_iter().map(|terms| Polynomial { ring: ring.clone(), terms }).collect()
    }

    /// Keeps components in `range`, shifting them down to start at zero.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> ModVector {
        ModVector {
            terms: self
                .terms
                .iter()
                .filter(|t| range.contains(&t.comp))
                .map(|t| VTerm { comp: t.comp - range.start, mono: t.mono.clone(), coeff: t.coeff.clone() })
                .collect(),
        }
    }

    pub fn shift_components(&self, offset: usize) -> ModVector {
        ModVector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { comp: t.comp + offset, mono: t.mono.clone(), coeff: t.coeff.clone() })
                .collect(),
        }
    }

    pub fn scale(&self, ring: &PolyRing, c: &Coeff) -> ModVector {
        let f = ring.field();
        ModVector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm { comp: t.comp, mono: t.mono.clone(), coeff: f.mul(&t.coeff, c) })
                .collect(),
        }
    }

    pub fn monic(&self, ring: &PolyRing) -> ModVector {
        match self.lead() {
            Some(t) if !t.coeff.is_one() => self.scale(ring, &ring.field().inv(&t.coeff)),
            _ => self.clone(),
        }
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, ring: &PolyRing, other: &ModVector, c: &Coeff, m: &Monomial) -> ModVector {
        let f = ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let shifted: Vec<(Monomial, Coeff)> =
            other.terms.iter().map(|t| (t.mono.mul(m), f.mul(&t.coeff, c))).collect();
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => cmp_pos(ring, (a.comp, &a.mono), (b.comp, &shifted[j].0)),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (mono, coeff) = shifted[j].clone();
                    out.push(VTerm { comp: other.terms[j].comp, mono, coeff });
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = f.add(&self.terms[i].coeff, &shifted[j].1);
                    if !coeff.is_zero() {
                        out.push(VTerm { comp: self.terms[i].comp, mono: self.terms[i].mono.clone(), coeff });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        ModVector { terms: out }
    }

    pub fn add(&self, ring: &PolyRing, other: &ModVector) -> ModVector {
        let one = Monomial::one(ring.nvars());
        self.add_scaled(ring, other, &ring.field().one(), &one)
    }

    pub fn mul_poly(&self, ring: &PolyRing, p: &Polynomial) -> ModVector {
        let mut acc = ModVector::zero();
        for (m, c) in &p.terms {
            acc = acc.add_scaled(ring, self, c, m);
        }
        acc
    }

    fn max_bits(&self) -> u64 {
        self.terms.iter().map(|t| t.coeff.bits()).max().unwrap_or(0)
    }
}

fn find_divisor<'a>(basis: &[&'a ModVector], comp: usize, mono: &Monomial) -> Option<&'a ModVector> {
    basis.iter().copied().find(|g| {
        let l = g.lead().expect("basis elements are nonzero");
        l.comp == comp && l.mono.divides(mono)
    })
}

/// Full reduction of `v` modulo `basis` (which need not be a Gröbner basis).
pub(crate) fn reduce(ring: &PolyRing, v: &ModVector, basis: &[&ModVector]) -> Result<ModVector> {
    let f = ring.field();
    let mut rest = v.clone();
    let mut done: Vec<VTerm> = Vec::new();
    let bound = coefficient_bit_bound();
    while let Some(t) = rest.terms.first().cloned() {
        match find_divisor(basis, t.comp, &t.mono) {
            Some(g) => {
                let l = g.lead().unwrap();
                let q = t.mono.div(&l.mono).unwrap();
                let c = f.neg(&f.div(&t.coeff, &l.coeff));
                rest = rest.add_scaled(ring, g, &c, &q);
                if f.is_rational() && rest.max_bits() > bound {
                    return Err(Error::Resource(format!(
                        "rational coefficient exceeded {bound} bits during reduction"
                    )));
                }
            }
            None => {
                done.push(t);
                rest.terms.remove(0);
            }
        }
    }
    Ok(ModVector { terms: done })
}

struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
}

struct State<'r> {
    ring: &'r PolyRing,
    polys: Vec<ModVector>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    rank_one: bool,
}

impl State<'_> {
    fn lead(&self, i: usize) -> &VTerm {
        self.polys[i].lead().unwrap()
    }

    fn install(&mut self, h: ModVector) {
        let hi = self.polys.len();
        self.polys.push(h);
        let lh = self.lead(hi).clone();

        let mut candidates: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .filter(|&&g| self.lead(g).comp == lh.comp)
            .map(|&g| {
                let lg = self.lead(g);
                (g, lg.mono.lcm(&lh.mono), self.rank_one && lg.mono.coprime(&lh.mono))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        while !candidates.is_empty() {
            let (g, l, coprime) = candidates.remove(0);
            let dominated = candidates.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l, coprime));
            }
        }

        let polys = &self.polys;
        let lead = |i: usize| polys[i].lead().unwrap();
        self.pairs.retain(|p| {
            if p.comp != lh.comp || !lh.mono.divides(&p.lcm) {
                return true;
            }
            let li = lead(p.i).mono.lcm(&lh.mono);
            let lj = lead(p.j).mono.lcm(&lh.mono);
            li == p.lcm || lj == p.lcm
        });
        for (g, lcm, coprime) in kept {
            if !coprime {
                self.pairs.push(Pair { i: g, j: hi, comp: lh.comp, lcm });
            }
        }
        self.active.retain(|&g| {
            let lg = polys[g].lead().unwrap();
            !(lg.comp == lh.comp && lh.mono.divides(&lg.mono))
        });
        self.active.push(hi);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let a = &self.pairs[k];
            let b = &self.pairs[best];
            let ord = cmp_pos(ring, (a.comp, &a.lcm), (b.comp, &b.lcm)).then((a.i, a.j).cmp(&(b.i, b.j)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> ModVector {
        let f = self.ring.field();
        let a = &self.polys[p.i];
        let b = &self.polys[p.j];
        let la = a.lead().unwrap();
        let lb = b.lead().unwrap();
        let ma = p.lcm.div(&la.mono).unwrap();
        let mb = p.lcm.div(&lb.mono).unwrap();
        let left = ModVector::zero().add_scaled(self.ring, a, &f.inv(&la.coeff), &ma);
        left.add_scaled(self.ring, b, &f.neg(&f.inv(&lb.coeff)), &mb)
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`: monic,
/// tail-reduced, sorted by increasing leading term.
pub(crate) fn groebner_basis(ring: &PolyRing, gens: &[ModVector]) -> Result<Vec<ModVector>> {
    let rank_one = gens.iter().all(|g| g.terms.iter().all(|t| t.comp == 0));
    let mut st = State { ring, polys: Vec::new(), active: Vec::new(), pairs: Vec::new(), rank_one };
    for g in gens {
        let active: Vec<&ModVector> = st.active.iter().map(|&i| &st.polys[i]).collect();
        let h = reduce(ring, g, &active)?;
        if !h.is_zero() {
            st.install(h.monic(ring));
        }
    }
    while let Some(p) = st.select() {
        let s = st.spoly(&p);
        let active: Vec<&ModVector> = st.active.iter().map(|&i| &st.polys[i]).collect();
        let h = reduce(ring, &s, &active)?;
        if h.is_zero() {
            continue;
        }
        let h = h.monic(ring);
        if f_bits_exceeded(ring, &h) {
            return Err(Error::Resource(format!(
                "rational coefficient exceeded {} bits in Gröbner basis",
                coefficient_bit_bound()
            )));
        }
        if rank_one && h.lead().unwrap().mono.is_one() {
            return Ok(vec![h]);
        }
        st.install(h);
    }
    interreduce(ring, st.active.iter().map(|&i| st.polys[i].clone()).collect())
}

fn f_bits_exceeded(ring: &PolyRing, v: &ModVector) -> bool {
    ring.field().is_rational() && v.max_bits() > coefficient_bit_bound()
}

fn interreduce(ring: &PolyRing, mut basis: Vec<ModVector>) -> Result<Vec<ModVector>> {
    basis.sort_by(|a, b| {
        let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
        cmp_pos(ring, (la.comp, &la.mono), (lb.comp, &lb.mono))
    });
    // drop elements whose leading term is divisible by another's
    let mut minimal: Vec<ModVector> = Vec::new();
    for g in basis {
        let lg = g.lead().unwrap();
        if !minimal.iter().any(|m| {
            let lm = m.lead().unwrap();
            lm.comp == lg.comp && lm.mono.divides(&lg.mono)
        }) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let g = &minimal[k];
        let head = ModVector { terms: vec![g.terms[0].clone()] };
        let tail = ModVector { terms: g.terms[1..].to_vec() };
        let others: Vec<&ModVector> =
            minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, v)| v).collect();
        let tail = reduce(ring, &tail, &others)?;
        out.push(head.add(ring, &tail).monic(ring));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::FieldSpec;

    #[test]
    fn add_scaled_cancels_leading_terms() {
        let r = PolyRing::with_vars(FieldSpec::prime(5).unwrap(), &["x", "y"]).unwrap();
        let a = ModVector::from_column(&r, &[r.parse("x^2 + y").unwrap(), r.parse("x").unwrap()]);
        let b = ModVector::from_column(&r, &[r.parse("x").unwrap(), r.zero()]);
        let m = Monomial::from_exponents(&[1, 0]);
        let c = a.add_scaled(&r, &b, &r.field().from_i64(-1), &m);
        assert_eq!(c.to_column(&r, 2), vec![r.parse("y").unwrap(), r.parse("x").unwrap()]);
    }
}
