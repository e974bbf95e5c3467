//! Fractional-ideal lattices and star operations of one-dimensional local rings over
//! finite fields, modelled inside truncated power-series algebras.
//!
//! The crate is organised bottom-up:
//!
//! * [`fq`]: finite fields, `K[t]/(t^N)` arithmetic and canonical subspaces;
//! * [`numsgp`]: numerical semigroups and their ideals;
//! * [`ring`]: ring models `R ⊆ V`, the lattice `F_0(R)` and unit orbits;
//! * [`star`]: star operations as closed families, their enumeration and restriction;
//! * [`kunz`]: reproducible checks for Kunz domains (counts, bounds, constructions);
//! * [`cli`]: command-line front end and report output.

pub mod budget;
pub mod cli;
pub mod closure;
pub mod error;
pub mod fq;
pub mod kunz;
pub mod numsgp;
pub mod ring;
pub mod star;

pub use budget::Budget;
pub use error::{Error, Result};

/// Engine version, part of every cache key.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
