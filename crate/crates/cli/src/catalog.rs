//! Append-only catalog of constructed graphs, one JSON object per line.

use std::fs::OpenOptions;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub p: u64,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
    pub m: u64,
    pub k: u64,
    pub l: u64,
    pub sign: String,
    pub n: u64,
    pub vertices: usize,
    pub valency: usize,
    /// Decimal, since automorphism groups outgrow 64 bits.
    pub aut_order: String,
    pub label: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

/// Appends `record` as one line while holding an exclusive lock on the file.
pub fn append(path: &Path, record: &CatalogRecord) -> io::Result<()> {
    let mut line = serde_json::to_string(record).map_err(io::Error::other)?;
    line.push('\n');
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    file.lock()?;
    let result = file.write_all(line.as_bytes()).and_then(|()| file.flush());
    file.unlock()?;
    result
}

pub fn read_all(path: &Path) -> io::Result<Vec<CatalogRecord>> {
    let file = std::fs::File::open(path)?;
    BufReader::new(file)
        .lines()
        .filter(|line| line.as_ref().map_or(true, |l| !l.trim().is_empty()))
        .map(|line| serde_json::from_str(&line?).map_err(io::Error::other))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> CatalogRecord {
        CatalogRecord {
            p: 3,
            alpha: 2,
            beta: 1,
            gamma: 1,
            m: 1,
            k: 2,
            l: 0,
            sign: "plus".into(),
            n: 3,
            vertices: 54,
            valency: 4,
            aut_order: "108".into(),
            label: "half-arc-transitive".into(),
            timestamp: 1_700_000_000,
        }
    }

    #[test]
    fn append_and_read_back() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("catalog.jsonl");
        let a = sample();
        let b = CatalogRecord { sign: "minus".into(), n: 1, ..sample() };
        append(&path, &a).unwrap();
        append(&path, &b).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert_eq!(read_all(&path).unwrap(), vec![a, b]);
    }

    proptest! {
        #[test]
        fn records_round_trip(p in 3u64..100, m in 1u64..50, n in 0u64..10_000, label in "[a-z-]{0,30}", order in "[0-9]{1,40}") {
            let r = CatalogRecord { p, m, n, label, aut_order: order, ..sample() };
            let line = serde_json::to_string(&r).unwrap();
            prop_assert!(!line.contains('\n'));
            prop_assert_eq!(serde_json::from_str::<CatalogRecord>(&line).unwrap(), r);
        }
    }
}
