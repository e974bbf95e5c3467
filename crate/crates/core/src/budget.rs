//! Enumeration limits shared by every exhaustive search.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Budget {
    /// Cap on the size of an enumerated ideal lattice.
    pub max_ideals: usize,
    /// Cap on the number of orbits fed into a closure table.
    pub max_orbits: usize,
    /// Cap on candidate subspaces visited by a subspace enumeration.
    pub max_subspaces: u128,
    /// Cap on unit representatives used for orbit computations.
    pub max_units: u128,
    /// Cap on the number of closed families produced by a star enumeration.
    pub max_families: usize,
    pub deadline: Option<(Instant, u64)>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_ideals: 20_000,
            max_orbits: 2_048,
            max_subspaces: 2_000_000,
            max_units: 1 << 20,
            max_families: 1 << 20,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn with_timeout(mut self, seconds: u64) -> Self {
        self.deadline = Some((Instant::now() + Duration::from_secs(seconds), seconds));
        self
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some((at, secs)) if Instant::now() > at => Err(Error::Timeout(secs)),
            _ => Ok(()),
        }
    }

    pub fn check_subspaces(&self, needed: u128) -> Result<()> {
        limit("subspace candidates", needed, self.max_subspaces)
    }

    pub fn check_ideals(&self, needed: usize) -> Result<()> {
        limit("ideals", needed as u128, self.max_ideals as u128)
    }

    pub fn check_orbits(&self, needed: usize) -> Result<()> {
        limit("orbits", needed as u128, self.max_orbits as u128)
    }

    pub fn check_units(&self, needed: u128) -> Result<()> {
        limit("unit representatives", needed, self.max_units)
    }

    pub fn check_families(&self, needed: usize) -> Result<()> {
        limit("closed families", needed as u128, self.max_families as u128)
    }
}

fn limit(what: &'static str, needed: u128, limit: u128) -> Result<()> {
    if needed > limit {
        Err(Error::Budget { what, needed, limit })
    } else {
        Ok(())
    }
}
