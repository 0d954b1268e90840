//! Exact computation of Hilbert-Samuel and Buchsbaum-Rim multiplicities in
//! the local ring of `k[x, y]` at the origin.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod bourbaki;
pub mod coeff;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod jones;
mod linalg;
pub mod linkage;
pub mod matrix;
pub mod modmult;
pub mod monomial;
pub mod monomial_ideal;
pub mod parse;
pub mod poly;
pub mod sampler;
pub mod svg;
pub mod verify;

pub use coeff::{Coeff, FieldKind, Fp, Fp31, Rational};
pub use error::{Error, Result};
pub use groebner::{groebner, groebner_module, FreeModuleElement, GroebnerBasis, StandardMonomials};
pub use hilbert::{MultiplicityReport, Route};
pub use ideal::{Ideal, LocalLengthReport};
pub use modmult::{ModulePresentation, ModuleReduction};
pub use monomial::{Monomial, MonomialOrder};
pub use matrix::{fitting_ideal, PolyMatrix};
pub use monomial_ideal::{MonomialIdeal, NewtonPolygon};
pub use poly::Polynomial;
pub use sampler::GeneralElementSampler;
