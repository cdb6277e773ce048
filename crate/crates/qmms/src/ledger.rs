//! JSON-lines run ledger.
//!
//! Every line is one JSON object. Search records carry the LP call data of
//! [`LedgerRecord`] plus a wall-clock `ts` in milliseconds, which is the only
//! field that differs between identical runs; [`strip_timestamps`] removes it
//! before comparisons.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use qmms_core::search::{LedgerRecord, SizeStats};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Entry {
    /// Header naming the run; enough to re-run it.
    Run { command: String, n: usize, k: usize, q: u32, seed: u64, mode: String, budget: String, cap: Option<usize> },
    /// One LP call of the local search.
    Lp { seq: u64, members: Vec<usize>, feasible: bool, count: usize, seed: u64 },
    /// One size layer of the exhaustive search.
    Size { size: usize, families: String, canonical: u64, lp_calls: u64, feasible_canonical: u64 },
    /// Reported minimum.
    Result { min: Option<usize> },
}

impl From<&LedgerRecord> for Entry {
    fn from(r: &LedgerRecord) -> Self {
        Entry::Lp { seq: r.seq, members: r.members.clone(), feasible: r.feasible, count: r.count, seed: r.seed }
    }
}

impl From<&SizeStats> for Entry {
    fn from(s: &SizeStats) -> Self {
        Entry::Size {
            size: s.size,
            families: s.families.to_string(),
            canonical: s.canonical,
            lp_calls: s.lp_calls,
            feasible_canonical: s.feasible_canonical,
        }
    }
}

impl Entry {
    pub fn as_record(&self) -> Option<LedgerRecord> {
        match self {
            Entry::Lp { seq, members, feasible, count, seed } => Some(LedgerRecord {
                seq: *seq,
                members: members.clone(),
                feasible: *feasible,
                count: *count,
                seed: *seed,
            }),
            _ => None,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Line {
    ts: u64,
    #[serde(flatten)]
    entry: Entry,
}

/// Append-only writer; each entry is flushed as one complete line.
pub struct LedgerWriter {
    out: BufWriter<File>,
}

impl LedgerWriter {
    pub fn create(path: &Path) -> std::io::Result<Self> {
        Ok(LedgerWriter { out: BufWriter::new(File::create(path)?) })
    }

    pub fn append(path: &Path) -> std::io::Result<Self> {
        Ok(LedgerWriter { out: BufWriter::new(OpenOptions::new().create(true).append(true).open(path)?) })
    }

    pub fn write(&mut self, entry: Entry) -> std::io::Result<()> {
        let ts = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0);
        serde_json::to_writer(&mut self.out, &Line { ts, entry })?;
        self.out.write_all(b"\n")?;
        self.out.flush()
    }
}

/// Reads every entry; the error names the first malformed line.
pub fn read(path: &Path) -> anyhow::Result<Vec<Entry>> {
    let file = File::open(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: Line =
            serde_json::from_str(&line).map_err(|e| anyhow::anyhow!("{}: line {}: {e}", path.display(), i + 1))?;
        out.push(parsed.entry);
    }
    Ok(out)
}

/// The LP records of a ledger, in order.
pub fn records(entries: &[Entry]) -> Vec<LedgerRecord> {
    entries.iter().filter_map(Entry::as_record).collect()
}

/// Minimum implied by the ledger: the smallest feasible LP record, or the
/// first size layer with a feasible family.
pub fn replay_min(entries: &[Entry]) -> Option<usize> {
    let lp = qmms_core::search::replay(&records(entries));
    let sizes = entries.iter().find_map(|e| match e {
        Entry::Size { size, feasible_canonical, .. } if *feasible_canonical > 0 => Some(*size),
        _ => None,
    });
    match (lp, sizes) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

/// Ledger text with the `ts` field removed from every line.
pub fn strip_timestamps(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| match serde_json::from_str::<Value>(l) {
            Ok(Value::Object(mut map)) => {
                map.remove("ts");
                Value::Object(map).to_string()
            }
            _ => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn write_read_and_strip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.jsonl");
        let mut w = LedgerWriter::create(&path).unwrap();
        let record = LedgerRecord { seq: 0, members: vec![1, 5], feasible: true, count: 2, seed: 7 };
        w.write(Entry::from(&record)).unwrap();
        w.write(Entry::Size { size: 3, families: "10".into(), canonical: 2, lp_calls: 1, feasible_canonical: 0 }).unwrap();
        w.write(Entry::Result { min: Some(2) }).unwrap();
        drop(w);

        let entries = read(&path).unwrap();
        assert_eq!(records(&entries), vec![record]);
        assert_eq!(replay_min(&entries), Some(2));
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.lines().all(|l| l.contains("\"ts\":")));
        let stripped = strip_timestamps(&text);
        assert!(!stripped.contains("\"ts\""));
        assert_eq!(stripped.lines().count(), 3);
    }

    #[test]
    fn malformed_lines_are_located() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        std::fs::write(&path, "{\"ts\":1,\"kind\":\"result\",\"min\":3}\nnot json\n").unwrap();
        let err = read(&path).unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }
}
