//! Toroidal pseudo-resolution of complex plane curve singularities with
//! exact arithmetic, together with the combinatorial objects that encode
//! it: Newton polygons, Eggers-Wall trees, fan trees and lotuses.

pub mod engine;
pub mod error;
pub mod ewtree;
pub mod lattice;
pub mod lotus;
pub mod polygon;
pub mod puiseux;

pub use error::{Error, Result};
pub use lattice::{ExtRat, LatticeVector, Rat};
pub use puiseux::{Branch, PhasedRational, PuiseuxSeries};
