//! On-disk cache of Gram matrices and rank tables.
//!
//! Each entry is one JSON file `{schema_version, key, data}`. Writes go to a
//! temporary file in the cache directory that is then renamed over the
//! target, so readers see either the old or the new file. Unreadable
//! entries, other schema versions and key mismatches count as misses and are
//! recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use confpair_core::combinatorics::text::{parse_forest, parse_graph, render_forest, render_graph};
use confpair_core::pairing::{GramMatrix, RankTable};
use confpair_core::Parity;
use num_bigint::BigUint;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tempfile::NamedTempFile;

use crate::error::Result;
use crate::parallel::par_gram_matrix;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    schema_version: u32,
    key: String,
    data: T,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let bytes = fs::read(self.path(key)).ok()?;
        let env: Envelope<T> = serde_json::from_slice(&bytes).ok()?;
        (env.schema_version == SCHEMA_VERSION && env.key == key).then_some(env.data)
    }

    pub fn store<T: Serialize>(&self, key: &str, data: &T) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &Envelope { schema_version: SCHEMA_VERSION, key: key.to_string(), data })?;
        tmp.flush()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn get_or_compute<T: Serialize + DeserializeOwned>(&self, key: &str, compute: impl FnOnce() -> T) -> Result<T> {
        if let Some(v) = self.load(key) {
            return Ok(v);
        }
        let v = compute();
        self.store(key, &v)?;
        Ok(v)
    }
}

/// Serialized Gram matrix; rows and columns in text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramJson {
    pub n: usize,
    pub k: usize,
    pub parity: String,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    pub entries: Vec<Vec<i32>>,
}

impl From<&GramMatrix> for GramJson {
    fn from(m: &GramMatrix) -> Self {
        GramJson {
            n: m.n,
            k: m.k,
            parity: m.parity.name().to_string(),
            rows: m.rows.iter().map(render_graph).collect(),
            cols: m.cols.iter().map(render_forest).collect(),
            entries: m.entries.clone(),
        }
    }
}

impl GramJson {
    pub fn to_matrix(&self) -> Result<GramMatrix> {
        let parity = if self.parity == "odd" { Parity::Odd } else { Parity::Even };
        Ok(GramMatrix {
            n: self.n,
            k: self.k,
            parity,
            rows: self.rows.iter().map(|s| parse_graph(s)).collect::<confpair_core::Result<_>>()?,
            cols: self.cols.iter().map(|s| parse_forest(s)).collect::<confpair_core::Result<_>>()?,
            entries: self.entries.clone(),
        })
    }
}

pub fn gram_key(n: usize, k: usize, p: Parity) -> String {
    format!("gram-n{n}-k{k}-{}", p.name())
}

pub fn rank_key(n: usize, d: u64) -> String {
    format!("ranks-n{n}-d{d}")
}

/// The Gram matrix, from the cache when one is given and holds it.
pub fn gram(cache: Option<&Cache>, n: usize, k: usize, p: Parity) -> Result<GramMatrix> {
    match cache {
        None => Ok(par_gram_matrix(n, k, p)),
        Some(c) => c.get_or_compute(&gram_key(n, k, p), || GramJson::from(&par_gram_matrix(n, k, p)))?.to_matrix(),
    }
}

/// Rank table, cached as decimal strings.
pub fn ranks(cache: Option<&Cache>, n: usize, d: u64) -> Result<RankTable> {
    let compute = || confpair_core::pairing::rank_table(n, d).ranks.iter().map(BigUint::to_string).collect();
    let ranks: Vec<String> = match cache {
        None => compute(),
        Some(c) => c.get_or_compute(&rank_key(n, d), compute)?,
    };
    let ranks = ranks
        .iter()
        .map(|s| s.parse::<BigUint>().map_err(|e| crate::error::CliError::Usage(format!("corrupt rank cache: {e}"))))
        .collect::<Result<_>>()?;
    Ok(RankTable { n, d, ranks })
}
