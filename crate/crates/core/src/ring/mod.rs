//! Ring models `C ⊆ R ⊆ V = K[[t]]`, fractional ideals in `F_0(R)` and unit orbits.

mod cache;
mod ideal;
mod lattice;
mod model;
mod orbit;

pub use cache::{lattice_for, LatticeCache};
pub use ideal::{format_series, RingIdeal};
pub use lattice::{canonical_ideals, enumerate_ideals, IdealLattice};
pub use model::RingModel;
pub use orbit::{unit_orbits, OrbitPartition};
