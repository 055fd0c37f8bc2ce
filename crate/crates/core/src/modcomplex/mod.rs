//! Presented modules, bounded complexes of free modules over a quotient of
//! the ambient ring, homology, cones, resolutions and duals.

mod complex;
mod presented;
mod resolution;

pub use complex::{ComplexMap, FreeComplex};
pub use presented::{Length, PresentedModule};
pub use resolution::{default_window, free_resolution_of_complex, required_window, resolve_quotient, Resolution};
