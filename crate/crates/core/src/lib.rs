//! Sarkisov links from blowups of P^3 along curves on smooth cubic surfaces.
//!
//! Everything is numerical: classes on the Picard lattice of the cubic,
//! intersection numbers with the 27 lines, and exact rational bookkeeping of
//! `-K^3` through the 2-ray game.

pub mod classify;
pub mod cli;
pub mod error;
pub mod flip_calculus;
pub mod linear_systems;
pub mod link_game;
pub mod picard_lattice;
pub mod rational;
pub mod weyl;

pub use error::{Error, Result};
pub use picard_lattice::SurfaceClass;
