//! Content-addressed on-disk cache for enumerated groups, character tables and
//! finished reports. File names are SHA-256 digests of the code version and
//! the descriptor; entries from another version are never read back.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chartab::{split_prime, ModularCharacterTable};
use crate::clifford::{AnalysisOptions, CliffordError, TableSource};
use crate::config::CODE_VERSION;
use crate::group::{EnumOptions, GroupScheme, MatrixGroup};
use crate::ring::LocalRing;

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    version: String,
    descriptor: String,
    element_count: usize,
    /// Entries of each element, row-major, elements in key order.
    coordinates: Vec<Vec<u32>>,
    /// Element index -> class index.
    class_of: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    version: String,
    group: String,
    ell: u64,
    seed: u64,
    table: ModularCharacterTable,
}

/// Hex SHA-256 of the code version followed by the parts.
pub fn content_key(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    h.update(CODE_VERSION.as_bytes());
    for p in parts {
        h.update([0u8]);
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

impl Cache {
    pub fn new(dir: impl AsRef<Path>) -> io::Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Cache { dir: dir.as_ref().to_path_buf() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, prefix: &str, key: &str) -> PathBuf {
        self.dir.join(format!("{prefix}-{key}.json"))
    }

    fn read<T: DeserializeOwned>(&self, path: &Path) -> Option<T> {
        serde_json::from_slice(&fs::read(path).ok()?).ok()
    }

    /// Write to a temporary name, then rename into place.
    fn write(&self, path: &Path, bytes: &[u8]) -> io::Result<()> {
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, bytes)?;
        fs::rename(tmp, path)
    }

    fn group_key(scheme: GroupScheme, ring: &LocalRing) -> String {
        content_key(&["group", &scheme.to_string(), &ring.to_string()])
    }

    pub fn load_group(&self, scheme: GroupScheme, ring: &LocalRing, opts: &EnumOptions) -> Option<MatrixGroup> {
        let file: GroupFile = self.read(&self.path("group", &Self::group_key(scheme, ring)))?;
        let descriptor = format!("{scheme}@{ring}");
        if file.version != CODE_VERSION || file.descriptor != descriptor || file.coordinates.len() != file.element_count {
            return None;
        }
        let q = ring.residue_field().order() as u64;
        if scheme.order_over_ring(q, ring.length()) > opts.max_order {
            return None;
        }
        let mats = crate::group::MatrixRing::new(ring.clone(), scheme.n).ok()?;
        let keys = file.coordinates.iter().map(|c| mats.encode(c)).collect();
        let g = MatrixGroup::from_cached_keys(scheme, ring.clone(), keys, opts).ok()?;
        g.set_class_partition(file.class_of).then_some(g)
    }

    pub fn store_group(&self, g: &MatrixGroup) -> io::Result<()> {
        let grp = g.group();
        let file = GroupFile {
            version: CODE_VERSION.to_string(),
            descriptor: g.descriptor(),
            element_count: grp.order(),
            coordinates: grp.ids().map(|i| grp.matrix(i)).collect(),
            class_of: grp.classes().class_of.clone(),
        };
        let bytes = serde_json::to_vec(&file).map_err(io::Error::other)?;
        self.write(&self.path("group", &Self::group_key(g.scheme(), g.ring())), &bytes)
    }

    fn table_key(g: &MatrixGroup, ell: u64, seed: u64) -> String {
        content_key(&["table", &Self::group_key(g.scheme(), g.ring()), &ell.to_string(), &seed.to_string()])
    }

    pub fn load_table(&self, g: &MatrixGroup, seed: u64) -> Option<ModularCharacterTable> {
        let grp = g.group();
        let ell = split_prime(grp.exponent(), grp.order() as u64);
        let file: TableFile = self.read(&self.path("table", &Self::table_key(g, ell, seed)))?;
        let ok = file.version == CODE_VERSION
            && file.group == g.descriptor()
            && file.ell == ell
            && file.seed == seed
            && file.table.num_classes() == grp.classes().len()
            && file.table.group_order == grp.order() as u64
            && file.table.class_sizes == grp.classes().sizes
            && file.table.sanity().is_ok();
        ok.then_some(file.table)
    }

    pub fn store_table(&self, g: &MatrixGroup, seed: u64, table: &ModularCharacterTable) -> io::Result<()> {
        let file = TableFile {
            version: CODE_VERSION.to_string(),
            group: g.descriptor(),
            ell: table.ell,
            seed,
            table: table.clone(),
        };
        let bytes = serde_json::to_vec(&file).map_err(io::Error::other)?;
        self.write(&self.path("table", &Self::table_key(g, table.ell, seed)), &bytes)
    }

    /// A finished report, stored verbatim under the digest of its run
    /// configuration.
    pub fn load_report(&self, config_json: &str) -> Option<String> {
        fs::read_to_string(self.path("report", &content_key(&["report", config_json]))).ok()
    }

    pub fn store_report(&self, config_json: &str, report: &str) -> io::Result<()> {
        self.write(&self.path("report", &content_key(&["report", config_json])), report.as_bytes())
    }

    /// Load `G(R)` or enumerate it and store the result. Cache write failures
    /// are not errors.
    pub fn group(&self, scheme: GroupScheme, ring: LocalRing, opts: &EnumOptions) -> Result<MatrixGroup, CliffordError> {
        if let Some(g) = self.load_group(scheme, &ring, opts) {
            return Ok(g);
        }
        let g = crate::group::enumerate_points(scheme, ring, opts)?;
        let _ = self.store_group(&g);
        Ok(g)
    }

    pub fn table(&self, g: &MatrixGroup, seed: u64) -> Result<ModularCharacterTable, CliffordError> {
        if let Some(t) = self.load_table(g, seed) {
            return Ok(t);
        }
        let t = ModularCharacterTable::compute(g.group(), seed)?;
        let _ = self.store_table(g, seed, &t);
        Ok(t)
    }
}

impl TableSource for Cache {
    fn group(&self, scheme: GroupScheme, ring: LocalRing, opts: &AnalysisOptions) -> Result<MatrixGroup, CliffordError> {
        Cache::group(self, scheme, ring, &opts.enum_options())
    }
    fn table(&self, group: &MatrixGroup, opts: &AnalysisOptions) -> Result<ModularCharacterTable, CliffordError> {
        Cache::table(self, group, opts.seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring;

    #[test]
    fn group_and_table_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let scheme: GroupScheme = "sl(2)".parse().unwrap();
        let ring = parse_ring("zmod(3^2)").unwrap();
        let opts = EnumOptions::default();
        assert!(cache.load_group(scheme, &ring, &opts).is_none());
        let g = cache.group(scheme, ring.clone(), &opts).unwrap();
        let t = cache.table(&g, 5).unwrap();
        let g2 = cache.load_group(scheme, &ring, &opts).expect("cached group");
        assert_eq!(g2.group().keys(), g.group().keys());
        assert_eq!(g2.group().classes(), g.group().classes());
        assert_eq!(cache.load_table(&g2, 5), Some(t));
        assert!(cache.load_table(&g2, 6).is_none());
    }

    #[test]
    fn stale_and_corrupt_entries_are_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let scheme: GroupScheme = "gl(2)".parse().unwrap();
        let ring = parse_ring("gf(3)").unwrap();
        let opts = EnumOptions::default();
        let g = cache.group(scheme, ring.clone(), &opts).unwrap();
        let path = cache.path("group", &Cache::group_key(scheme, &ring));
        let mut file: GroupFile = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
        file.version = "other".into();
        fs::write(&path, serde_json::to_vec(&file).unwrap()).unwrap();
        assert!(cache.load_group(scheme, &ring, &opts).is_none());
        fs::write(&path, b"{not json").unwrap();
        assert!(cache.load_group(scheme, &ring, &opts).is_none());
        let again = cache.group(scheme, ring.clone(), &opts).unwrap();
        assert_eq!(again.group().keys(), g.group().keys());
        assert!(cache.load_group(scheme, &ring, &opts).is_some());
    }

    #[test]
    fn keys_depend_on_every_part() {
        assert_ne!(content_key(&["a", "b"]), content_key(&["ab"]));
        assert_eq!(content_key(&["x"]).len(), 64);
    }
}
