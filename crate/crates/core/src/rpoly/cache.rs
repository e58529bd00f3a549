//! Memo of R̃-polynomials with optional JSON-lines persistence.
//!
//! File layout: a header line `{"cache_version":1}` followed by one record per
//! entry, e.g. `{"n":3,"u":"123","v":"321","coeffs":[0,1,0,1]}`. Entries are
//! appended as they are computed; readers tolerate a truncated final line.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poly::QPoly;

pub const CACHE_VERSION: u32 = 1;

/// Environment variable overriding the cache path.
pub const CACHE_ENV: &str = "BRUHAT_CACHE";

#[derive(Serialize, Deserialize)]
struct Header {
    cache_version: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Coeff {
    Small(u64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct Record {
    n: usize,
    u: Permutation,
    v: Permutation,
    coeffs: Vec<Coeff>,
}

impl Record {
    fn new(u: &Permutation, v: &Permutation, poly: &QPoly) -> Self {
        let coeffs = poly
            .coeffs()
            .iter()
            .map(|c| match u64::try_from(c) {
                Ok(small) => Coeff::Small(small),
                Err(_) => Coeff::Big(c.to_string()),
            })
            .collect();
        Self {
            n: u.n(),
            u: *u,
            v: *v,
            coeffs,
        }
    }

    fn poly(&self) -> Result<QPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c {
                Coeff::Small(x) => Ok(BigUint::from(*x)),
                Coeff::Big(s) => s
                    .parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("bad cache coefficient {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(QPoly::from_coeffs(coeffs))
    }
}

type Key = (Permutation, Permutation);

pub struct RtildeCache {
    entries: RwLock<HashMap<Key, QPoly>>,
    sink: Option<Mutex<BufWriter<File>>>,
    path: Option<PathBuf>,
}

impl RtildeCache {
    pub fn in_memory() -> Self {
        Self {
            entries: RwLock::new(HashMap::new()),
            sink: None,
            path: None,
        }
    }

    /// Shared in-memory cache used when no explicit cache is supplied.
    pub fn global() -> Arc<Self> {
        static GLOBAL: OnceLock<Arc<RtildeCache>> = OnceLock::new();
        GLOBAL.get_or_init(|| Arc::new(Self::in_memory())).clone()
    }

    /// Opens (or creates) a persistent cache file, loading existing entries.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut entries = HashMap::new();
        let fresh = match File::open(path) {
            Ok(file) => {
                let mut lines = BufReader::new(file).lines();
                match lines.next() {
                    None => true,
                    Some(first) => {
                        let header: Header = serde_json::from_str(&first?)?;
                        if header.cache_version != CACHE_VERSION {
                            return Err(Error::Config(format!(
                                "cache {} has version {}, expected {CACHE_VERSION}",
                                path.display(),
                                header.cache_version
                            )));
                        }
                        for line in lines {
                            let line = line?;
                            if line.trim().is_empty() {
                                continue;
                            }
                            // a crash mid-append leaves a partial last line
                            let Ok(record) = serde_json::from_str::<Record>(&line) else {
                                continue;
                            };
                            entries.insert((record.u, record.v), record.poly()?);
                        }
                        false
                    }
                }
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => true,
            Err(e) => return Err(e.into()),
        };
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut writer = BufWriter::new(file);
        if fresh {
            serde_json::to_writer(
                &mut writer,
                &Header {
                    cache_version: CACHE_VERSION,
                },
            )?;
            writer.write_all(b"\n")?;
            writer.flush()?;
        }
        Ok(Self {
            entries: RwLock::new(entries),
            sink: Some(Mutex::new(writer)),
            path: Some(path.to_path_buf()),
        })
    }

    /// Opens the file named by `BRUHAT_CACHE`, if set.
    pub fn from_env() -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(path) if !path.is_empty() => Self::open(PathBuf::from(path)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, u: &Permutation, v: &Permutation) -> Option<QPoly> {
        self.entries.read().unwrap().get(&(*u, *v)).cloned()
    }

    pub fn insert(&self, u: &Permutation, v: &Permutation, poly: QPoly) {
        let line = self
            .sink
            .as_ref()
            .map(|_| serde_json::to_string(&Record::new(u, v, &poly)).expect("record serializes"));
        let fresh = self
            .entries
            .write()
            .unwrap()
            .insert((*u, *v), poly)
            .is_none();
        if let (true, Some(sink), Some(line)) = (fresh, &self.sink, line) {
            let mut w = sink.lock().unwrap();
            // persistence is best effort; the in-memory entry is authoritative
            let _ = writeln!(w, "{line}");
        }
    }

    pub fn flush(&self) -> Result<()> {
        if let Some(sink) = &self.sink {
            sink.lock().unwrap().flush()?;
        }
        Ok(())
    }
}

impl Drop for RtildeCache {
    fn drop(&mut self) {
        let _ = self.flush();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn persists_and_reloads() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        {
            let cache = RtildeCache::open(&path).unwrap();
            assert_eq!(cache.rtilde(&p("123"), &p("321")).to_string(), "q^3+q");
            cache.flush().unwrap();
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(r#"{"cache_version":1}"#));
        assert!(text.contains(r#"{"n":3,"u":"123","v":"321","coeffs":[0,1,0,1]}"#));

        let reopened = RtildeCache::open(&path).unwrap();
        assert!(!reopened.is_empty());
        assert_eq!(
            reopened.get(&p("123"), &p("321")).unwrap().to_string(),
            "q^3+q"
        );
    }

    #[test]
    fn rejects_other_versions_and_skips_torn_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v2.jsonl");
        std::fs::write(&path, "{\"cache_version\":2}\n").unwrap();
        assert!(matches!(RtildeCache::open(&path), Err(Error::Config(_))));

        let torn = dir.path().join("torn.jsonl");
        std::fs::write(
            &torn,
            "{\"cache_version\":1}\n{\"n\":3,\"u\":\"123\",\"v\":\"132\",\"coeffs\":[0,1]}\n{\"n\":3,\"u\":",
        )
        .unwrap();
        let cache = RtildeCache::open(&torn).unwrap();
        assert_eq!(cache.len(), 1);
    }

    #[test]
    fn big_coefficients_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("big.jsonl");
        let huge = QPoly::from_coeffs([BigUint::from(u64::MAX) * 3u32]);
        {
            let cache = RtildeCache::open(&path).unwrap();
            cache.insert(&p("12"), &p("21"), huge.clone());
        }
        assert_eq!(
            RtildeCache::open(&path).unwrap().get(&p("12"), &p("21")),
            Some(huge)
        );
    }
}
