//! Exactly solvable position-dependent-mass potentials built from an su(1,1)
//! realization, with a finite-difference solver that checks their spectra.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod coordinate_map;
pub mod error;
pub mod grid;
pub mod mass;
pub mod par;
pub mod potential;
pub mod quadrature;
pub mod report;
pub mod solver;

pub use error::{Error, Result};
pub use grid::Grid;
pub use par::Parallelism;
