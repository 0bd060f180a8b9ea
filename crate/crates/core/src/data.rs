//! Published constants on disk, pinned by a manifest of SHA-256 digests.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use crate::arith::{IntegerRing, Ring};
use crate::poly::{parse_poly, parse_poly_in, MonomialOrder, PolyParseError, PolyRing, Polynomial};

pub const MANIFEST: &str = "MANIFEST";
pub const MANIFEST_VERSION: &str = "1";

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{file}: {msg}")]
    Parse { file: String, msg: String },
    #[error("{file}: digest {got} does not match manifest {expected}")]
    Digest { file: String, expected: String, got: String },
    #[error("{0} is not listed in the manifest")]
    Unlisted(String),
    #[error("{file}: {source}")]
    Poly {
        file: String,
        #[source]
        source: PolyParseError,
    },
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone)]
pub struct ManifestEntry {
    pub file: String,
    pub sha256: String,
}

/// A verified data directory. Every file read through it is checked against
/// the manifest digest.
#[derive(Debug, Clone)]
pub struct DataDir {
    root: PathBuf,
    entries: Vec<ManifestEntry>,
}

/// One row of the published table of local points: prime, point, printed w.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub p: BigInt,
    pub point: [BigInt; 3],
    pub w: BigInt,
}

impl DataDir {
    /// `$K3BM_DATA` if set, else the `data/` directory of the source tree.
    pub fn default_path() -> PathBuf {
        match std::env::var_os("K3BM_DATA") {
            Some(p) => PathBuf::from(p),
            None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"),
        }
    }

    pub fn open_default() -> Result<Self, DataError> {
        Self::open(Self::default_path())
    }

    /// Reads the manifest and verifies the digest of every listed file.
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, DataError> {
        let root = root.into();
        let text = read(&root.join(MANIFEST))?;
        let mut entries = Vec::new();
        let mut version = None;
        for line in text.lines() {
            let l = line.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            if let Some(v) = l.strip_prefix("version:") {
                version = Some(v.trim().to_string());
                continue;
            }
            let mut it = l.split_whitespace();
            let (Some(h), Some(f), None) = (it.next(), it.next(), it.next()) else {
                return Err(DataError::Parse {
                    file: MANIFEST.into(),
                    msg: format!("bad line `{l}`"),
                });
            };
            entries.push(ManifestEntry {
                file: f.to_string(),
                sha256: h.to_lowercase(),
            });
        }
        if version.as_deref() != Some(MANIFEST_VERSION) {
            return Err(DataError::Parse {
                file: MANIFEST.into(),
                msg: format!("unsupported manifest version {version:?}"),
            });
        }
        let dir = DataDir { root, entries };
        for e in &dir.entries {
            dir.text(&e.file)?;
        }
        Ok(dir)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn entries(&self) -> &[ManifestEntry] {
        &self.entries
    }

    pub fn text(&self, file: &str) -> Result<String, DataError> {
        let e = self
            .entries
            .iter()
            .find(|e| e.file == file)
            .ok_or_else(|| DataError::Unlisted(file.into()))?;
        let path = self.root.join(file);
        let bytes = std::fs::read(&path).map_err(|source| DataError::Io { path, source })?;
        let got = sha256_hex(&bytes);
        if got != e.sha256 {
            return Err(DataError::Digest {
                file: file.into(),
                expected: e.sha256.clone(),
                got,
            });
        }
        String::from_utf8(bytes).map_err(|_| DataError::Parse {
            file: file.into(),
            msg: "not UTF-8".into(),
        })
    }

    pub fn integers(&self, file: &str) -> Result<Vec<BigInt>, DataError> {
        body_lines(&self.text(file)?)
            .map(|l| {
                l.parse::<BigInt>().map_err(|_| DataError::Parse {
                    file: file.into(),
                    msg: format!("not an integer: `{l}`"),
                })
            })
            .collect()
    }

    pub fn integer(&self, file: &str) -> Result<BigInt, DataError> {
        let v = self.integers(file)?;
        match <[BigInt; 1]>::try_from(v) {
            Ok([n]) => Ok(n),
            Err(v) => Err(DataError::Parse {
                file: file.into(),
                msg: format!("expected one integer, found {}", v.len()),
            }),
        }
    }

    /// Integer polynomial in the variables named by its header, grevlex.
    pub fn poly_z(&self, file: &str) -> Result<Polynomial<IntegerRing>, DataError> {
        parse_poly(&self.text(file)?, IntegerRing, MonomialOrder::GrevLex).map_err(|source| DataError::Poly {
            file: file.into(),
            source,
        })
    }

    pub fn poly_in<R: Ring>(&self, file: &str, ring: &PolyRing<R>) -> Result<Polynomial<R>, DataError> {
        parse_poly_in(&self.text(file)?, ring).map_err(|source| DataError::Poly {
            file: file.into(),
            source,
        })
    }

    pub fn table1(&self) -> Result<Vec<Table1Row>, DataError> {
        let file = "table1.txt";
        body_lines(&self.text(file)?)
            .map(|l| {
                let v: Vec<BigInt> = l
                    .split_whitespace()
                    .map(|t| t.parse::<BigInt>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| DataError::Parse {
                        file: file.into(),
                        msg: format!("bad row `{l}`"),
                    })?;
                let [p, x, y, z, w] = <[BigInt; 5]>::try_from(v).map_err(|_| DataError::Parse {
                    file: file.into(),
                    msg: format!("row needs 5 fields: `{l}`"),
                })?;
                Ok(Table1Row { p, point: [x, y, z], w })
            })
            .collect()
    }
}

fn read(path: &Path) -> Result<String, DataError> {
    std::fs::read_to_string(path).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn body_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Writes a fresh manifest covering `files` in `root`.
pub fn write_manifest(root: &Path, files: &[&str]) -> Result<(), DataError> {
    let mut out = format!(
        "# Content digests of the published constants.\nversion: {MANIFEST_VERSION}\n"
    );
    for f in files {
        let path = root.join(f);
        let bytes = std::fs::read(&path).map_err(|source| DataError::Io { path, source })?;
        out.push_str(&format!("{}  {}\n", sha256_hex(&bytes), f));
    }
    let path = root.join(MANIFEST);
    std::fs::write(&path, out).map_err(|source| DataError::Io { path, source })
}
