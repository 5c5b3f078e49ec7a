//! Append-only line-delimited JSON cache of local factors, keyed by the
//! canonical curve spec string and the prime. Records are revalidated on
//! load (Weil invariants and count consistency); corrupt or inconsistent
//! lines are skipped and counted. Within a file the last record for a key
//! wins.

use serde_json::{json, Value};
use std::collections::HashMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use twistlab::curves::LocalFactor;

pub struct Cache {
    pub path: PathBuf,
    pub records: HashMap<(String, u64), LocalFactor>,
    /// Lines skipped on load: unparsable, wrong schema, or failing
    /// revalidation.
    pub skipped: usize,
    /// Total record lines seen (before last-wins dedup).
    pub lines: usize,
}

/// Resolve the cache location: --cache flag, then TWISTLAB_CACHE.
pub fn resolve_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os("TWISTLAB_CACHE").map(PathBuf::from))
}

impl Cache {
    pub fn load(path: &Path) -> Cache {
        let mut cache = Cache {
            path: path.to_path_buf(),
            records: HashMap::new(),
            skipped: 0,
            lines: 0,
        };
        let Ok(text) = std::fs::read_to_string(path) else {
            return cache;
        };
        for line in text.lines() {
            if line.trim().is_empty() {
                continue;
            }
            cache.lines += 1;
            match parse_record(line) {
                Some((spec, lf)) => {
                    cache.records.insert((spec, lf.p), lf);
                }
                None => cache.skipped += 1,
            }
        }
        cache
    }

    pub fn get(&self, spec: &str, p: u64) -> Option<&LocalFactor> {
        self.records.get(&(spec.to_string(), p))
    }

    /// Append records; the in-memory index is updated as well.
    pub fn store(&mut self, spec: &str, factors: &[LocalFactor]) -> std::io::Result<()> {
        if factors.is_empty() {
            return Ok(());
        }
        let mut file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        for lf in factors {
            let line = json!({
                "schema": 1,
                "spec": spec,
                "p": lf.p,
                "n1": lf.n1(),
                "n2": lf.n2(),
                "c": [lf.c1, lf.c2, lf.c3, lf.c4],
                "version": env!("CARGO_PKG_VERSION"),
            });
            writeln!(file, "{line}")?;
            self.records.insert((spec.to_string(), lf.p), lf.clone());
        }
        Ok(())
    }
}

fn parse_record(line: &str) -> Option<(String, LocalFactor)> {
    let v: Value = serde_json::from_str(line).ok()?;
    if v.get("schema")?.as_i64()? != 1 {
        return None;
    }
    let spec = v.get("spec")?.as_str()?.to_string();
    let p = v.get("p")?.as_u64()?;
    let c = v.get("c")?.as_array()?;
    if c.len() != 4 {
        return None;
    }
    let coeffs: Vec<i64> = c.iter().filter_map(|x| x.as_i64()).collect();
    if coeffs.len() != 4 {
        return None;
    }
    let lf = LocalFactor::from_coeffs(p, [coeffs[0], coeffs[1], coeffs[2], coeffs[3]]);
    // Revalidate: Weil invariants, and consistency with the stored counts.
    lf.validate().ok()?;
    let n1 = v.get("n1")?.as_i64()?;
    let n2 = v.get("n2")?.as_i64()?;
    if lf.n1() != n1 || lf.n2() != n2 {
        return None;
    }
    Some((spec, lf))
}
