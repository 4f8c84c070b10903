#![forbid(unsafe_code)]

//! Exact, desk-scale algebra for automorphism groups of free groups:
//! reduced words and certified automorphisms, finite presentation checking,
//! integer affine lifts of elementary automorphisms, Schreier rewriting for
//! finite-index characteristic subgroups, semidirect-product splitting
//! arithmetic, multigraph symmetry with homology actions, and the exact
//! expectation of the smallest-nondivisor function.
//!
//! Everything is integer or rational arithmetic; there are no floating-point
//! code paths in the mathematical kernels.

pub mod action;
pub mod affine;
pub mod eigen;
pub mod error;
pub mod expectation;
pub mod graph;
pub mod matrix;
pub mod parallel;
pub mod presentation;
pub mod schreier;
pub mod theta;
pub mod word;

pub use error::{Error, Result};
