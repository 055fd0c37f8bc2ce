//! Exact computations for small commutative DG-rings: cohomology and
//! dualizing cohomology of Koszul complexes and trivial extensions over
//! finitely presented algebras, and their regular, Cohen-Macaulay and
//! Gorenstein loci as constructible subsets of `Spec H⁰(A)`.

pub mod dgring;
pub mod dualizing;
pub mod error;
pub mod loci;
pub mod modcomplex;
pub mod polyalg;
pub mod spectrum;

pub use error::{Error, Result};
