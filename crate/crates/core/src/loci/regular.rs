use std::sync::Arc;

use super::Loci;
use crate::error::{Error, Result};
use crate::polyalg::{Ideal, PolyRing, Polynomial};
use crate::spectrum::ConstructibleSet;

/// Refuse Jacobian minor ideals with more members than this.
const MAX_MINORS: usize = 20_000;

impl Loci {
    /// Complement of the supports of the negative-degree cohomology of `A`.
    pub fn concentrated_locus(&self) -> Result<ConstructibleSet> {
        let i0 = self.h0_ideal()?;
        let table = self.dg().cohomology_table()?;
        let mut product = Ideal::unit(i0.ring());
        for &n in table.nonzero_degrees().iter().filter(|&&n| n < 0) {
            product = product.product(&table.annihilator(n, i0.ring())?)?;
        }
        ConstructibleSet::open(&i0, &product)
    }

    /// Regular locus of `H^0(A)` by the Jacobian criterion on each piece of
    /// the irreducible cover: on `D(f_i)` the only minimal prime is `p_i`, so
    /// a point is regular iff the Jacobian has rank `codim p_i` there.
    pub fn h0_regular_locus(&self) -> Result<ConstructibleSet> {
        let i0 = self.h0_ideal()?;
        let ring = i0.ring();
        let n = ring.nvars();
        let gens = i0.generators();
        let jac: Vec<Vec<Polynomial>> = gens.iter().map(|g| (0..n).map(|v| g.derivative(v)).collect()).collect();
        let mut acc = ConstructibleSet::empty(&i0);
        for piece in self.cover()? {
            let dim = piece.prime.krull_dimension()?;
            let h = (n as i64 - dim) as usize;
            let minors = Ideal::new(ring, minors(ring, &jac, h)?)?;
            let region = minors.product(&Ideal::new(ring, vec![piece.element.clone()])?)?;
            acc = acc.union(&ConstructibleSet::open(&i0, &region)?)?;
        }
        Ok(acc)
    }

    /// `Reg(A) = W ∩ Reg(H^0(A))` with `W` the concentrated locus. When `W`
    /// is empty no minimal primes are needed.
    pub fn reg_locus(&self) -> Result<ConstructibleSet> {
        let w = self.concentrated_locus()?;
        if w.is_empty() {
            return Ok(w);
        }
        w.intersection(&self.h0_regular_locus()?)
    }
}

/// Nonzero `h x h` minors; the empty minor is `1`.
pub(crate) fn minors(ring: &Arc<PolyRing>, m: &[Vec<Polynomial>], h: usize) -> Result<Vec<Polynomial>> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    if h == 0 {
        return Ok(vec![ring.one()]);
    }
    if h > rows || h > cols {
        return Ok(Vec::new());
    }
    let row_sets = subsets(rows, h);
    let col_sets = subsets(cols, h);
    if row_sets.len().saturating_mul(col_sets.len()) > MAX_MINORS {
        return Err(Error::Resource(format!(
            "{} Jacobian minors of size {h} exceed the limit of {MAX_MINORS}",
            row_sets.len() * col_sets.len()
        )));
    }
    let mut out = Vec::new();
    for r in &row_sets {
        for c in &col_sets {
            let sub: Vec<Vec<Polynomial>> = r.iter().map(|&i| c.iter().map(|&j| m[i][j].clone()).collect()).collect();
            let d = determinant(&sub);
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(out)
}

fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = m[0][0].ring().zero();
    for j in 0..m.len() {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][j] * &determinant(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
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
    go(0, n, k, &mut cur, &mut out);
    out
}
