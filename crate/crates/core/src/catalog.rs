//! Catalog text format and the on-disk catalog cache.
//!
//! ```text
//! mlcif-catalog v1 r=3 count=6
//! r=3; gens=1; size2r=10
//! r=3; gens=2,3; size2r=10
//! ...
//! ```
//!
//! Entries appear in canonical order, so two catalogs for the same `r` are
//! byte-identical.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;

use crate::error::{CatalogError, Error, Result};
use crate::family::binom_u128;
use crate::mlcif::{enumerate_mlcif, Catalog, CatalogEntry, GenAntichain};
use crate::setcore::{masks_of_size, prefix_dominated, Generator};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "mlcif-catalog";

/// Renders a catalog in the versioned text format.
pub fn to_text(c: &Catalog) -> String {
    let mut out = format!("{MAGIC} v{FORMAT_VERSION} r={} count={}\n", c.r(), c.len());
    for e in c.entries() {
        out.push_str(&record_line(c.r(), e));
        out.push('\n');
    }
    out
}

/// One catalog record, without the trailing newline.
pub fn record_line(r: u32, e: &CatalogEntry) -> String {
    format!("r={r}; gens={}; size2r={}", e.antichain, e.size2r)
}

struct RawEntry {
    line: usize,
    gens: Vec<Generator>,
    size2r: BigUint,
}

fn parse_header(line: &str) -> std::result::Result<(u32, usize), CatalogError> {
    let bad = || CatalogError::BadHeader {
        line: 1,
        found: line.to_string(),
    };
    let mut parts = line.split_whitespace();
    if parts.next() != Some(MAGIC) || parts.next() != Some("v1") {
        return Err(bad());
    }
    let r = parts
        .next()
        .and_then(|t| t.strip_prefix("r="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(bad)?;
    let count = parts
        .next()
        .and_then(|t| t.strip_prefix("count="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(bad)?;
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok((r, count))
}

fn parse_record(line_no: usize, line: &str, r: u32) -> std::result::Result<RawEntry, CatalogError> {
    let bad = || CatalogError::BadRecord {
        line: line_no,
        found: line.to_string(),
    };
    let fields: Vec<(&str, &str)> = line
        .split("; ")
        .map(|f| f.split_once('=').ok_or_else(bad))
        .collect::<std::result::Result<_, _>>()?;
    let [("r", rv), ("gens", gv), ("size2r", sv)] = fields.as_slice() else {
        return Err(bad());
    };
    let found_r: u32 = rv.parse().map_err(|_| bad())?;
    if found_r != r {
        return Err(CatalogError::RecordR {
            line: line_no,
            expected: r,
            found: found_r,
        });
    }
    let gens = gv
        .split('|')
        .map(|g| Generator::parse(g, r))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| CatalogError::BadGenerator {
            line: line_no,
            reason: e.to_string(),
        })?;
    let size2r = sv.parse::<BigUint>().map_err(|_| bad())?;
    Ok(RawEntry {
        line: line_no,
        gens,
        size2r,
    })
}

fn check_entry(raw: RawEntry, r: u32) -> std::result::Result<CatalogEntry, CatalogError> {
    let line = raw.line;
    let gens = &raw.gens;
    if gens.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CatalogError::NonCanonicalGenerators { line });
    }
    for (x, g) in gens.iter().enumerate() {
        for h in &gens[x + 1..] {
            if prefix_dominated(g.mask(), h.mask()) || prefix_dominated(h.mask(), g.mask()) {
                return Err(CatalogError::NotAntichain { line });
            }
        }
    }
    for (x, g) in gens.iter().enumerate() {
        if gens[x + 1..].iter().any(|h| g.mask() & h.mask() == 0) {
            return Err(CatalogError::NotIntersecting { line });
        }
    }
    let generated: Vec<u64> = masks_of_size(2 * r, r)
        .filter(|&a| gens.iter().any(|g| prefix_dominated(a, g.mask())))
        .collect();
    let actual = BigUint::from(generated.len());
    if actual != raw.size2r {
        return Err(CatalogError::SizeMismatch {
            line,
            stored: raw.size2r.to_string(),
            actual: actual.to_string(),
        });
    }
    // At n = 2r an intersecting family is maximal iff it takes one set from
    // each complementary pair.
    let half = BigUint::from(binom_u128(2 * r - 1, r - 1));
    let intersecting = generated
        .iter()
        .enumerate()
        .all(|(x, &a)| generated[x + 1..].iter().all(|&b| a & b != 0));
    if !intersecting || actual != half {
        return Err(CatalogError::NotMaximal { line });
    }
    let antichain = GenAntichain::new(raw.gens).map_err(|_| CatalogError::NotAntichain { line })?;
    Ok(CatalogEntry {
        antichain,
        size2r: raw.size2r,
    })
}

/// Parses and validates a catalog file body for the given `r`.
pub fn parse(text: &str, r: u32) -> std::result::Result<Catalog, CatalogError> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or("");
    let (found_r, declared) = parse_header(header)?;
    if found_r != r {
        return Err(CatalogError::WrongR {
            expected: r,
            found: found_r,
        });
    }
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut seen = HashSet::new();
    for (x, line) in lines.enumerate() {
        let line_no = x + 2;
        if line.is_empty() {
            return Err(CatalogError::BadRecord {
                line: line_no,
                found: String::new(),
            });
        }
        let entry = check_entry(parse_record(line_no, line, r)?, r)?;
        if !seen.insert(entry.antichain.clone()) {
            return Err(CatalogError::Duplicate { line: line_no });
        }
        if let Some(prev) = entries.last() {
            if prev.antichain >= entry.antichain {
                return Err(CatalogError::Unsorted { line: line_no });
            }
        }
        entries.push(entry);
    }
    if entries.len() != declared {
        return Err(CatalogError::CountMismatch {
            declared,
            actual: entries.len(),
        });
    }
    if !seen.contains(&GenAntichain::star()) {
        return Err(CatalogError::MissingStar);
    }
    let hm = GenAntichain::hilton_milner(r).map_err(|_| CatalogError::MissingHiltonMilner)?;
    if !seen.contains(&hm) {
        return Err(CatalogError::MissingHiltonMilner);
    }
    Ok(Catalog::from_entries(r, entries))
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    }
}

pub fn persist(c: &Catalog, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, to_text(c)).map_err(|e| io_err(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| io_err(path, e))
}

pub fn load(path: &Path, r: u32) -> Result<Catalog> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(parse(&text, r)?)
}

/// Cache file name for `r`; embeds the format version so a format change
/// never reads a stale file.
pub fn cache_file_name(r: u32) -> String {
    format!("{MAGIC}-v{FORMAT_VERSION}-r{r}.txt")
}

/// Where a catalog handed out by [`CatalogStore`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Memory,
    Disk,
    Computed,
}

/// Memoizing catalog provider, optionally backed by a cache directory.
#[derive(Debug, Default)]
pub struct CatalogStore {
    dir: Option<PathBuf>,
    override_guard: bool,
    memo: Mutex<HashMap<u32, Arc<Catalog>>>,
}

impl CatalogStore {
    pub fn in_memory() -> Self {
        CatalogStore::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Self {
        CatalogStore {
            dir: Some(dir.into()),
            ..CatalogStore::default()
        }
    }

    pub fn override_guard(mut self, on: bool) -> Self {
        self.override_guard = on;
        self
    }

    pub fn path_for(&self, r: u32) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(cache_file_name(r)))
    }

    pub fn get(&self, r: u32) -> Result<Arc<Catalog>> {
        self.get_with_source(r).map(|(c, _)| c)
    }

    pub fn get_with_source(&self, r: u32) -> Result<(Arc<Catalog>, Source)> {
        if let Some(c) = self.memo.lock().expect("catalog memo poisoned").get(&r) {
            return Ok((Arc::clone(c), Source::Memory));
        }
        let path = self.path_for(r);
        let (catalog, source) = match &path {
            Some(p) if p.exists() => (load(p, r)?, Source::Disk),
            _ => {
                let c = enumerate_mlcif(r, self.override_guard)?;
                if let Some(p) = &path {
                    persist(&c, p)?;
                }
                (c, Source::Computed)
            }
        };
        let catalog = Arc::new(catalog);
        self.memo
            .lock()
            .expect("catalog memo poisoned")
            .insert(r, Arc::clone(&catalog));
        Ok((catalog, source))
    }
}
