use std::fmt;
use std::sync::Arc;

use once_cell::sync::OnceCell;

use super::groebner::{groebner_basis, reduce, ModVector};
use super::poly::{describe_ring, PolyRing, Polynomial};
use crate::error::{Error, Result};

/// Dense matrix over the ambient ring, read as a map of free modules
/// `P^cols -> P^rows`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl Matrix {
    pub fn new(ring: &Arc<PolyRing>, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Invalid(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            e.check_ring(ring)?;
        }
        Ok(Matrix { ring: ring.clone(), rows, cols, entries })
    }

    pub fn zeros(ring: &Arc<PolyRing>, rows: usize, cols: usize) -> Self {
        Matrix { ring: ring.clone(), rows, cols, entries: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Arc<PolyRing>, n: usize) -> Self {
        Self::scalar(ring, n, &ring.one())
    }

    pub fn scalar(ring: &Arc<PolyRing>, n: usize, p: &Polynomial) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(ring: &Arc<PolyRing>, rows: usize, columns: &[Vec<Polynomial>]) -> Result<Self> {
        let mut m = Self::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Invalid(format!("column {j} has length {}, expected {rows}", col.len())));
            }
            for (i, p) in col.iter().enumerate() {
                p.check_ring(ring)?;
                m.set(i, j, p.clone());
            }
        }
        Ok(m)
    }

    /// Single-row matrix.
    pub fn row(ring: &Arc<PolyRing>, entries: &[Polynomial]) -> Result<Self> {
        Self::new(ring, 1, entries.len(), entries.to_vec())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn scale(&self, p: &Polynomial) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Invalid("matrix difference needs equal shapes".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, entries })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::Invalid("hstack needs equal row counts".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Matrix::from_columns(&self.ring, self.rows, &cols)
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Matrix::zeros(&self.ring, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn select_columns(&self, keep: &[usize]) -> Matrix {
        let cols: Vec<Vec<Polynomial>> = keep.iter().map(|&j| self.column(j)).collect();
        Matrix::from_columns(&self.ring, self.rows, &cols).expect("same shape")
    }

    pub(crate) fn column_vectors(&self) -> Vec<ModVector> {
        (0..self.cols).map(|j| ModVector::from_column(&self.ring, &self.column(j))).collect()
    }

    pub(crate) fn from_vectors(ring: &Arc<PolyRing>, rows: usize, vs: &[ModVector]) -> Matrix {
        let cols: Vec<Vec<Polynomial>> = vs.iter().map(|v| v.to_column(ring, rows)).collect();
        Matrix::from_columns(ring, rows, &cols).expect("consistent shape")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Generators of the kernel of `P^s -> P^m` given by column vectors.
pub(crate) fn kernel_vectors(ring: &PolyRing, columns: &[ModVector], m: usize) -> Result<Vec<ModVector>> {
    let s = columns.len();
    if s == 0 {
        return Ok(Vec::new());
    }
    let lifted: Vec<ModVector> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut v = c.clone();
            v.terms.push(super::groebner::VTerm {
                comp: m + j,
                mono: super::monomial::Monomial::one(ring.nvars()),
                coeff: ring.field().one(),
            });
            v
        })
        .collect();
    let gb = groebner_basis(ring, &lifted)?;
    Ok(gb
        .into_iter()
        .filter(|g| g.lead().map(|l| l.comp >= m).unwrap_or(false))
        .map(|g| g.restrict(m..m + s))
        .collect())
}

/// Columns generating the kernel of `m` (module Gröbner basis with the image
/// coordinates eliminated). `m * syzygies(m) = 0`.
pub fn syzygies(m: &Matrix) -> Result<Matrix> {
    let ker = kernel_vectors(&m.ring, &m.column_vectors(), m.rows)?;
    Ok(Matrix::from_vectors(&m.ring, m.cols, &ker))
}

/// Submodule of `P^rank` with a lazily computed Gröbner basis.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Arc<PolyRing>,
    rank: usize,
    gens: Vec<ModVector>,
    gb: OnceCell<Vec<ModVector>>,
}

impl Submodule {
    pub fn from_matrix(m: &Matrix) -> Self {
        Submodule { ring: m.ring.clone(), rank: m.rows, gens: m.column_vectors(), gb: OnceCell::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub(crate) fn gb(&self) -> Result<&[ModVector]> {
        self.gb.get_or_try_init(|| groebner_basis(&self.ring, &self.gens)).map(|v| v.as_slice())
    }

    /// Gröbner basis as a matrix of columns.
    pub fn groebner(&self) -> Result<Matrix> {
        Ok(Matrix::from_vectors(&self.ring, self.rank, self.gb()?))
    }

    pub(crate) fn reduce_vector(&self, v: &ModVector) -> Result<ModVector> {
        let gb: Vec<&ModVector> = self.gb()?.iter().collect();
        reduce(&self.ring, v, &gb)
    }

    pub fn reduce(&self, column: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if column.len() != self.rank {
            return Err(Error::Invalid(format!("vector of length {} in rank {}", column.len(), self.rank)));
        }
        for p in column {
            p.check_ring(&self.ring)?;
        }
        let r = self.reduce_vector(&ModVector::from_column(&self.ring, column))?;
        Ok(r.to_column(&self.ring, self.rank))
    }

    pub fn contains(&self, column: &[Polynomial]) -> Result<bool> {
        Ok(self.reduce(column)?.iter().all(|p| p.is_zero()))
    }

    pub fn describe(&self) -> String {
        format!("submodule of rank {} over {}", self.rank, describe_ring(&self.ring))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::FieldSpec;

    fn ring() -> Arc<PolyRing> {
        PolyRing::with_vars(FieldSpec::prime(5).unwrap(), &["x", "y"]).unwrap()
    }

    #[test]
    fn koszul_syzygy_of_row() {
        let r = ring();
        let m = Matrix::row(&r, &[r.parse("x").unwrap(), r.parse("y").unwrap()]).unwrap();
        let s = syzygies(&m).unwrap();
        assert!(m.mul(&s).unwrap().is_zero());
        assert_eq!(s.cols(), 1);
        let col = s.column(0);
        // generated by (y, -x) up to a unit
        let expect = Submodule::from_matrix(&Matrix::from_columns(&r, 2, &[vec![r.parse("y").unwrap(), r.parse("-x").unwrap()]]).unwrap());
        assert!(expect.contains(&col).unwrap());
        assert!(Submodule::from_matrix(&s).contains(&[r.parse("y").unwrap(), r.parse("-x").unwrap()]).unwrap());
    }

    #[test]
    fn nonzerodivisor_has_no_syzygies() {
        let r = PolyRing::with_vars(FieldSpec::prime(5).unwrap(), &["x"]).unwrap();
        let m = Matrix::row(&r, &[r.parse("x").unwrap()]).unwrap();
        assert_eq!(syzygies(&m).unwrap().cols(), 0);
    }

    #[test]
    fn annihilator_of_x_modulo_x_squared() {
        // kernel of [x | x^2]: first coordinates give ann(x) in k[x]/(x^2) = (x)
        let r = PolyRing::with_vars(FieldSpec::prime(5).unwrap(), &["x"]).unwrap();
        let m = Matrix::row(&r, &[r.parse("x").unwrap(), r.parse("x^2").unwrap()]).unwrap();
        let s = syzygies(&m).unwrap();
        assert!(m.mul(&s).unwrap().is_zero());
        let firsts: Vec<String> = (0..s.cols()).map(|j| s.get(0, j).to_string()).collect();
        assert_eq!(firsts, vec!["x"]);
    }

    #[test]
    fn kron_shape() {
        let r = ring();
        let a = Matrix::row(&r, &[r.var(0), r.var(1)]).unwrap();
        let k = a.kron(&Matrix::identity(&r, 2));
        assert_eq!((k.rows(), k.cols()), (2, 4));
        assert_eq!(k.get(1, 3), &r.var(1));
    }
}
