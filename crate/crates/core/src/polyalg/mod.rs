//! Exact multivariate polynomials over ℚ and 𝔽_p, Gröbner bases for ideals
//! and submodules of free modules, and the ideal operations built on them.

mod field;
mod groebner;
mod ideal;
mod module;
mod monomial;
mod parse;
mod poly;

pub use field::{coefficient_bit_bound, set_coefficient_bit_bound, Coeff, FieldSpec};
pub use ideal::{adjoin_variable, Ideal};
pub use module::{syzygies, Matrix, Submodule};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial};

pub(crate) use groebner::{groebner_basis, reduce, ModVector, VTerm};
pub(crate) use module::kernel_vectors;
