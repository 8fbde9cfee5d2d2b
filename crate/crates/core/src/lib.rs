//! Exact combinatorics of extended affine Weyl groups: root data, lengths,
//! Bruhat order, parabolic cosets, alcoves, restricted elements, Steinberg
//! factorization and the numerical shadows of orbit geometry on the affine
//! flag variety and Grassmannian.

pub mod alcoves;
pub mod cli;
pub mod cosets;
pub mod coxeter;
pub mod error;
pub mod linalg;
pub mod orbit_geometry;
pub mod root_datum;
pub mod steinberg;
pub mod svg;
pub mod syntax;
pub mod verify;
pub mod weyl_ext;

pub use cosets::{FinitarySubset, Side};
pub use coxeter::{GeneratorKind, ReducedWord};
pub use error::{Error, Result};
pub use root_datum::{Coweight, DatumSpec, RootDatum, RootFunctional};
pub use weyl_ext::{ExtAffineElement, FiniteWeylElement};
