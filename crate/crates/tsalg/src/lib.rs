//! Finite group actions on polynomial algebras over prime fields.
//!
//! The library computes transfer (trace) maps and their images, searches for
//! trace-one elements, builds induced actions along subgroup inclusions,
//! checks Galois-type closure conditions through point stabilizers, and
//! analyses modular group representations (fixed points, socles, relative
//! projectivity).

pub mod action;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod galois;
pub mod group;
pub mod induction;
pub mod linalg;
pub mod modules;
pub mod poly;
pub mod spec_io;
pub mod trace;

pub use error::Error;
