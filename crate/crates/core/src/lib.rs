//! Minimum-distance bounds for quasi-cyclic codes.
//!
//! The crate provides exact finite-field and polynomial arithmetic, generic
//! linear codes with exhaustive and randomized distance computation, cyclic
//! codes with BCH, Hartmann–Tzeng, Roos and subcode defining-set bounds, and
//! quasi-cyclic codes with their eigen-structure and constituent decomposition.
//! On top of these sit the Jensen bound, the spectral bound and its improved
//! multi-pick form, explicit constructions with designed distance, and
//! locality analysis for locally repairable codes.

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod code;
pub mod construct;
pub mod cyclic;
pub mod error;
pub mod gf;
pub mod lrc;
pub mod poly;
pub mod qc;

pub use error::{Error, Result};
