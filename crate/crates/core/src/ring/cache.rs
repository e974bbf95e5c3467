use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{enumerate_ideals, IdealLattice, RingModel};
use crate::budget::Budget;
use crate::error::Result;
use crate::fq::Subspace;
use crate::VERSION;

/// On-disk store of enumerated lattices, one JSON file per model.
#[derive(Clone, Debug)]
pub struct LatticeCache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    generators: Vec<u32>,
    q: usize,
    modulus: Option<Vec<u32>>,
    dim: usize,
    basis: Subspace,
    lattice: IdealLattice,
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        LatticeCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, model: &RingModel) -> PathBuf {
        let f = model.field();
        let gens: Vec<String> = model.semigroup().generators().iter().map(|g| g.to_string()).collect();
        let modulus = match f.modulus() {
            Some(m) => m.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(""),
            None => "p".into(),
        };
        self.dir.join(format!("f0-{}-q{}-m{}-N{}-v{}.json", gens.join("_"), f.order(), modulus, model.dim(), VERSION))
    }

    fn matches(entry: &Entry, model: &RingModel) -> bool {
        let f = model.field();
        entry.version == VERSION
            && entry.generators == model.semigroup().generators()
            && entry.q == f.order()
            && entry.modulus.as_deref() == f.modulus()
            && entry.dim == model.dim()
            && &entry.basis == model.basis()
            && entry.lattice.ideals().iter().all(|i| model.is_module(i.space()))
    }

    /// A cached lattice for `model`, if present and consistent with it.
    pub fn load(&self, model: &RingModel) -> Option<IdealLattice> {
        let text = fs::read_to_string(self.path(model)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if !Self::matches(&entry, model) {
            return None;
        }
        let mut lattice = entry.lattice;
        lattice.reindex();
        Some(lattice)
    }

    pub fn store(&self, model: &RingModel, lattice: &IdealLattice) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let f = model.field();
        let entry = Entry {
            version: VERSION.into(),
            generators: model.semigroup().generators().to_vec(),
            q: f.order(),
            modulus: f.modulus().map(|m| m.to_vec()),
            dim: model.dim(),
            basis: model.basis().clone(),
            lattice: lattice.clone(),
        };
        let path = self.path(model);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string(&entry)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn lattice(&self, model: &RingModel, budget: &Budget) -> Result<IdealLattice> {
        if let Some(l) = self.load(model) {
            return Ok(l);
        }
        let l = enumerate_ideals(model, budget)?;
        self.store(model, &l)?;
        Ok(l)
    }
}

/// `F_0` of `model`, through the cache when one is given.
pub fn lattice_for(model: &RingModel, cache: Option<&LatticeCache>, budget: &Budget) -> Result<IdealLattice> {
    match cache {
        Some(c) => c.lattice(model, budget),
        None => enumerate_ideals(model, budget),
    }
}
