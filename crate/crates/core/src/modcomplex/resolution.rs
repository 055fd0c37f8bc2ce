use std::sync::Arc;

use super::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::polyalg::{syzygies, Ideal, Matrix, PolyRing};

/// Free complex quasi-isomorphic to a complex over `P/J`, possibly truncated.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: FreeComplex,
    /// Whether the resolution of `P/J` terminated inside the window.
    pub complete: bool,
    /// Number of syzygy steps taken for `P/J`.
    pub steps: usize,
    /// Homology agrees with the input in every degree `>= certified_from`.
    pub certified_from: i32,
}

/// Default number of syzygy steps: the complex width plus the number of
/// variables plus two.
pub fn default_window(c: &FreeComplex) -> usize {
    c.width() + c.ring().nvars() + 2
}

/// Smallest window for which every dual degree a dualizing computation reads
/// is certified.
pub fn required_window(c: &FreeComplex) -> usize {
    c.width() + c.ring().nvars() + 1
}

/// Differentials of a free resolution `... -> P^{g_2} -> P^{g_1} -> P` of
/// `P/J`: entry `k` maps `P^{g_{k+1}}` to `P^{g_k}`. Columns that a syzygy
/// writes through the others (a unit entry) are dropped before moving on.
/// Returns the maps and whether the resolution terminated within `max_steps`.
pub fn resolve_quotient(ideal: &Ideal, max_steps: usize) -> Result<(Vec<Matrix>, bool)> {
    let ring = ideal.ring();
    if ideal.is_zero() {
        return Ok((Vec::new(), true));
    }
    let gens = if ideal.is_unit()? { vec![ring.one()] } else { ideal.groebner()?.to_vec() };
    let mut current = Matrix::row(ring, &gens)?;
    let mut maps = Vec::new();
    loop {
        let (pruned, syz) = prune_columns(current)?;
        maps.push(pruned);
        if syz.cols() == 0 {
            return Ok((maps, true));
        }
        if maps.len() == max_steps {
            return Ok((maps, false));
        }
        current = syz;
    }
}

/// Drops redundant columns of `m` and returns it with its syzygy matrix.
fn prune_columns(mut m: Matrix) -> Result<(Matrix, Matrix)> {
    loop {
        let syz = syzygies(&m)?;
        let unit = (0..syz.cols()).find_map(|c| (0..syz.rows()).rev().find(|&r| syz.get(r, c).is_unit()));
        match unit {
            Some(drop) => {
                let keep: Vec<usize> = (0..m.cols()).filter(|&j| j != drop).collect();
                m = m.select_columns(&keep);
            }
            None => return Ok((m, syz)),
        }
    }
}

/// Free resolution of a complex over `P/J`: the total complex of `C ⊗ G`
/// where `G -> P/J` resolves the quotient, using at most `window` syzygy
/// steps (default [`default_window`]). A complex that is already free is
/// returned unchanged. Truncating before [`required_window`] is an error.
pub fn free_resolution_of_complex(c: &FreeComplex, window: Option<usize>) -> Result<Resolution> {
    if c.is_free() {
        return Ok(Resolution { complex: c.clone(), complete: true, steps: 0, certified_from: i32::MIN });
    }
    let window = window.unwrap_or_else(|| default_window(c));
    let (maps, complete) = resolve_quotient(c.modulus(), window.max(1))?;
    let needed = required_window(c);
    if !complete && window < needed {
        return Err(Error::Resource(format!(
            "resolution window {window} is too small to certify the dual degrees; window {needed} is required"
        )));
    }
    let certified_from = if complete { i32::MIN } else { c.hi() - maps.len() as i32 + 1 };
    let complex = total_complex(&c.forget_modulus(), &maps)?;
    Ok(Resolution { complex, complete, steps: maps.len(), certified_from })
}

/// `Tot(L ⊗ G)` with `G` in degrees `-len..0` (`G^0 = P`) and differential
/// `d_L ⊗ 1 + (-1)^p 1 ⊗ d_G` on the `(p, q)` summand.
fn total_complex(l: &FreeComplex, maps: &[Matrix]) -> Result<FreeComplex> {
    let ring: &Arc<PolyRing> = l.ring();
    let g_rank = |q: i32| -> usize {
        if q > 0 || (-q) as usize > maps.len() {
            0
        } else if q == 0 {
            1
        } else {
            maps[(-q - 1) as usize].cols()
        }
    };
    // d_G out of degree q (q < 0): maps[-q-1]
    let g_diff = |q: i32| -> Matrix {
        if q < 0 && (-q) as usize <= maps.len() {
            maps[(-q - 1) as usize].clone()
        } else {
            Matrix::zeros(ring, g_rank(q + 1), g_rank(q))
        }
    };
    let glo = -(maps.len() as i32);
    let lo = l.lo() + glo;
    let hi = l.hi();
    // block offsets of (p, q) inside Tot^m, p ascending
    let blocks = |m: i32| -> Vec<(i32, usize, usize)> {
        let mut out = Vec::new();
        let mut offset = 0;
        for p in l.lo()..=l.hi() {
            let q = m - p;
            let size = l.rank(p) * g_rank(q);
            if size > 0 {
                out.push((p, offset, size));
                offset += size;
            }
        }
        out
    };
    let total = |m: i32| -> usize { blocks(m).iter().map(|b| b.2).sum() };
    let ranks: Vec<usize> = (lo..=hi).map(total).collect();
    let mut diffs = Vec::new();
    for m in lo..hi {
        let mut d = Matrix::zeros(ring, total(m + 1), total(m));
        let target = blocks(m + 1);
        for (p, src_off, _) in blocks(m) {
            let q = m - p;
            if let Some(&(_, off, _)) = target.iter().find(|b| b.0 == p + 1) {
                let piece = l.differential(p).kron(&Matrix::identity(ring, g_rank(q)));
                place(&mut d, &piece, off, src_off);
            }
            if let Some(&(_, off, _)) = target.iter().find(|b| b.0 == p) {
                let mut piece = Matrix::identity(ring, l.rank(p)).kron(&g_diff(q));
                if p % 2 != 0 {
                    piece = piece.scale(&ring.from_i64(-1));
                }
                place(&mut d, &piece, off, src_off);
            }
        }
        diffs.push(d);
    }
    FreeComplex::free(ring, lo, ranks, diffs)
}

fn place(target: &mut Matrix, piece: &Matrix, row: usize, col: usize) {
    for i in 0..piece.rows() {
        for j in 0..piece.cols() {
            let p = piece.get(i, j);
            if !p.is_zero() {
                target.set(row + i, col + j, p.clone());
            }
        }
    }
}
