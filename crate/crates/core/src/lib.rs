//! Numerical Lie algebra contractions and coadjoint-orbit deformations.
//!
//! The crate is built around structure-constant representations of
//! finite-dimensional real Lie algebras ([`algebra`]), diagonal contraction
//! matrices and the IW-tensor validity criterion ([`contraction`]),
//! coadjoint actions with their deformations and quantization checks
//! ([`orbits`]), and the SU(2) -> Heisenberg worked example on polynomial
//! and Fock section spaces ([`su2h`]).
//!
//! The crate is `no_std` (with `alloc`); all IO and file formats live in the
//! companion CLI crate.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod contraction;
pub mod error;
pub mod linalg;
pub(crate) mod math;
pub mod orbits;
pub mod su2h;

pub use algebra::{LieAlgebra, Vector};
pub use contraction::{
    Classification, ContractionSpec, ContractionVariant, ConvergenceReport, IwTensorTable, Verdict,
};
pub use error::Error;
pub use orbits::{DualVector, OrbitSample, QuantConfig};
pub use su2h::{Su2, TransitionFn, TransitionReport};
