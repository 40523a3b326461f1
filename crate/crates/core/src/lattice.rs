//! Subgroup lattices, maximal subgroups and the interval closure `⌈P⌉`.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::set::ElementSet;

/// All subgroups of a group together with its maximal subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group: Arc<Group>,
    subgroups: Vec<ElementSet>,
    maximals: Vec<usize>,
    frattini: ElementSet,
}

impl SubgroupLattice {
    pub fn new(group: Arc<Group>) -> Self {
        let subgroups = all_subgroups(&group);
        Self::from_parts(group, subgroups)
    }

    fn from_parts(group: Arc<Group>, subgroups: Vec<ElementSet>) -> Self {
        let maximals = maximal_indices(&group, &subgroups);
        Self::assemble(group, subgroups, maximals)
    }

    fn assemble(group: Arc<Group>, subgroups: Vec<ElementSet>, maximals: Vec<usize>) -> Self {
        let frattini = maximals
            .iter()
            .fold(group.elements(), |acc, &i| acc.intersection(&subgroups[i]));
        SubgroupLattice {
            group,
            subgroups,
            maximals,
            frattini,
        }
    }

    /// Loads the lattice from `cache_dir` when a matching entry exists,
    /// otherwise computes it and writes a fresh entry.
    ///
    /// Unreadable or inconsistent cache files are ignored and overwritten.
    pub fn cached(group: Arc<Group>, cache_dir: &Path) -> Result<Self> {
        let path = cache_path(&group, cache_dir);
        if let Some(lattice) = load(&group, &path) {
            return Ok(lattice);
        }
        let lattice = Self::new(group);
        lattice.store(&path)?;
        Ok(lattice)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// Subgroups sorted by `(size, bit pattern)`.
    pub fn subgroups(&self) -> &[ElementSet] {
        &self.subgroups
    }

    pub fn maximals(&self) -> impl ExactSizeIterator<Item = &ElementSet> + '_ {
        self.maximals.iter().map(move |&i| &self.subgroups[i])
    }

    pub fn maximal_count(&self) -> usize {
        self.maximals.len()
    }

    pub fn frattini(&self) -> ElementSet {
        self.frattini
    }

    /// `⌈P⌉`: the intersection of every maximal subgroup containing `P`, or
    /// the whole group when no maximal subgroup contains `P`.
    pub fn interval_closure(&self, set: &ElementSet) -> ElementSet {
        self.maximals()
            .filter(|m| set.is_subset(m))
            .fold(self.group.elements(), |acc, m| acc.intersection(m))
    }

    /// Whether `set` generates the group, decided through the maximal
    /// subgroups.
    pub fn generates(&self, set: &ElementSet) -> bool {
        !self.maximals().any(|m| set.is_subset(m))
    }

    fn store(&self, path: &Path) -> Result<()> {
        let entry = CacheEntry {
            version: CACHE_VERSION,
            order: self.group.order(),
            subgroups: self.subgroups.iter().map(ElementSet::to_hex).collect(),
            maximals: self.maximals.clone(),
        };
        let dir = path.parent().unwrap_or(Path::new("."));
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?).map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
    }
}

/// Every subgroup of `group`, sorted by `(size, bit pattern)`.
///
/// Seeds with the cyclic subgroups and closes under joins with them; since
/// every subgroup is generated by finitely many elements, joining with
/// cyclic subgroups alone reaches all of them.
pub fn all_subgroups(group: &Group) -> Vec<ElementSet> {
    let mut cyclic: Vec<ElementSet> = (0..group.order())
        .map(|g| group.generated_subgroup(&ElementSet::singleton(g)))
        .collect();
    cyclic.sort();
    cyclic.dedup();

    let mut seen: HashSet<ElementSet> = cyclic.iter().copied().collect();
    let mut found = cyclic.clone();
    let mut next = 0;
    while next < found.len() {
        let h = found[next];
        next += 1;
        for c in &cyclic {
            if c.is_subset(&h) {
                continue;
            }
            let join = group.generated_subgroup(&h.union(c));
            if seen.insert(join) {
                found.push(join);
            }
        }
    }
    found.sort_by_key(|s| (s.len(), *s));
    found
}

/// Maximal proper subgroups of `group`, as a sorted list.
pub fn maximal_subgroups(group: &Group) -> Vec<ElementSet> {
    let subgroups = all_subgroups(group);
    maximal_indices(group, &subgroups)
        .into_iter()
        .map(|i| subgroups[i])
        .collect()
}

fn maximal_indices(group: &Group, subgroups: &[ElementSet]) -> Vec<usize> {
    let n = group.order();
    (0..subgroups.len())
        .filter(|&i| {
            let h = &subgroups[i];
            h.len() < n
                && !subgroups
                    .iter()
                    .any(|k| k.len() < n && h.is_proper_subset(k))
        })
        .collect()
}

const CACHE_VERSION: u32 = 1;

/// On-disk layout of a cached lattice (JSON).
///
/// `subgroups` holds hex bit patterns (see [`ElementSet::to_hex`]) in lattice
/// order, `maximals` indexes into it.
#[derive(Serialize, Deserialize)]
struct CacheEntry {
    version: u32,
    order: usize,
    subgroups: Vec<String>,
    maximals: Vec<usize>,
}

/// SHA-256 of the order and the Cayley table, as lowercase hex.
pub fn table_hash(group: &Group) -> String {
    let mut hasher = Sha256::new();
    hasher.update((group.order() as u32).to_le_bytes());
    for &entry in group.table() {
        hasher.update(entry.to_le_bytes());
    }
    hex::encode(hasher.finalize())
}

pub fn cache_path(group: &Group, cache_dir: &Path) -> PathBuf {
    cache_dir.join(format!("lattice-{}.json", table_hash(group)))
}

fn load(group: &Arc<Group>, path: &Path) -> Option<SubgroupLattice> {
    let bytes = fs::read(path).ok()?;
    let entry: CacheEntry = serde_json::from_slice(&bytes).ok()?;
    if entry.version != CACHE_VERSION || entry.order != group.order() {
        return None;
    }
    let full = group.elements();
    let subgroups = entry
        .subgroups
        .iter()
        .map(|h| ElementSet::from_hex(h).filter(|s| s.contains(0) && s.is_subset(&full)))
        .collect::<Option<Vec<_>>>()?;
    if entry.maximals.iter().any(|&i| i >= subgroups.len()) || !subgroups.contains(&full) {
        return None;
    }
    Some(SubgroupLattice::assemble(
        group.clone(),
        subgroups,
        entry.maximals,
    ))
}
