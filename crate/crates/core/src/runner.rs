//! Replica orchestration: a bounded worker pool over replica indices with
//! per-replica random substreams, plus the CSV layout shared by all
//! simulators.
//!
//! Results are collected in replica order and each replica derives its
//! stream from `(master_seed, replica_index)` alone, so outputs are
//! byte-identical for any worker count.

use std::io::Write;
use std::path::Path;

use crate::pattern::GtPattern;
use crate::rng::RngStream;

/// Environment variable overriding the worker count.
pub const WORKER_ENV: &str = "GTSIM_WORKERS";

/// Effective worker count: explicit request, else the environment override,
/// else all available cores.
pub fn resolve_workers(requested: Option<usize>) -> usize {
    if let Some(w) = requested {
        return w.max(1);
    }
    if let Ok(value) = std::env::var(WORKER_ENV) {
        if let Ok(w) = value.parse::<usize>() {
            return w.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Runs `f(replica_index, rng)` for every replica on a dedicated pool of the
/// given size, returning results indexed by replica.
pub fn run_replicas<T, F>(replicas: u64, workers: usize, master_seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut RngStream) -> T + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("worker pool");
    pool.install(|| {
        use rayon::prelude::*;
        (0..replicas)
            .into_par_iter()
            .map(|i| {
                let mut rng = RngStream::new(master_seed, i);
                f(i, &mut rng)
            })
            .collect()
    })
}

/// One CSV sample row: (replica, n, k, value).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRow {
    pub replica: u64,
    pub n: usize,
    pub k: usize,
    pub value: f64,
}

/// Serializes rows with the fixed header and 17-significant-digit values.
pub fn write_sample_csv<W: Write>(mut out: W, rows: &[SampleRow]) -> std::io::Result<()> {
    writeln!(out, "replica,n,k,value")?;
    for row in rows {
        writeln!(out, "{},{},{},{:.16e}", row.replica, row.n, row.k, row.value)?;
    }
    Ok(())
}

pub fn write_sample_csv_file(path: &Path, rows: &[SampleRow]) -> std::io::Result<()> {
    let file = std::fs::File::create(path)?;
    write_sample_csv(std::io::BufWriter::new(file), rows)
}

/// Parses the CSV layout produced by `write_sample_csv`.
pub fn read_sample_csv(content: &str) -> Result<Vec<SampleRow>, String> {
    let mut rows = Vec::new();
    let mut lines = content.lines();
    match lines.next() {
        Some("replica,n,k,value") => {}
        other => return Err(format!("bad header: {other:?}")),
    }
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let parse_err = |what: &str| format!("line {}: bad {what}", idx + 2);
        let replica = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err("replica"))?;
        let n = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err("n"))?;
        let k = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err("k"))?;
        let value = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err("value"))?;
        rows.push(SampleRow {
            replica,
            n,
            k,
            value,
        });
    }
    Ok(rows)
}

/// Flattens per-replica patterns into sample rows.
pub fn pattern_rows(samples: &[GtPattern]) -> Vec<SampleRow> {
    let mut rows = Vec::new();
    for (replica, pattern) in samples.iter().enumerate() {
        for n in 1..=pattern.order() {
            for (k, &value) in pattern.level(n).iter().enumerate() {
                rows.push(SampleRow {
                    replica: replica as u64,
                    n,
                    k: k + 1,
                    value,
                });
            }
        }
    }
    rows
}

/// Groups sample rows back into per-replica patterns (rows must carry a full
/// triangular array per replica).
pub fn rows_to_patterns(rows: &[SampleRow]) -> Result<Vec<GtPattern>, String> {
    use std::collections::BTreeMap;
    let mut by_replica: BTreeMap<u64, BTreeMap<(usize, usize), f64>> = BTreeMap::new();
    for row in rows {
        by_replica
            .entry(row.replica)
            .or_default()
            .insert((row.n, row.k), row.value);
    }
    let mut patterns = Vec::with_capacity(by_replica.len());
    for (replica, entries) in by_replica {
        let order = entries.keys().map(|&(n, _)| n).max().unwrap_or(0);
        let mut levels = Vec::with_capacity(order);
        for n in 1..=order {
            let mut row = Vec::with_capacity(n);
            for k in 1..=n {
                let value = entries
                    .get(&(n, k))
                    .ok_or_else(|| format!("replica {replica}: missing entry ({n},{k})"))?;
                row.push(*value);
            }
            levels.push(row);
        }
        patterns.push(GtPattern::new_unchecked(levels).map_err(|e| e.to_string())?);
    }
    Ok(patterns)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn results_are_ordered_and_worker_independent() {
        let work = |i: u64, rng: &mut RngStream| (i, rng.uniform());
        let one = run_replicas(64, 1, 7, work);
        let four = run_replicas(64, 4, 7, work);
        assert_eq!(one, four);
        assert!(one.iter().enumerate().all(|(i, (j, _))| i as u64 == *j));
    }

    #[test]
    fn csv_round_trip_preserves_values() {
        let rows = vec![
            SampleRow {
                replica: 0,
                n: 2,
                k: 1,
                value: -1.234567890123456e-3,
            },
            SampleRow {
                replica: 1,
                n: 1,
                k: 1,
                value: 42.0,
            },
        ];
        let mut buffer = Vec::new();
        write_sample_csv(&mut buffer, &rows).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        let parsed = read_sample_csv(&text).unwrap();
        assert_eq!(parsed, rows);
    }

    #[test]
    fn patterns_survive_the_row_round_trip() {
        let pattern = GtPattern::new(vec![vec![0.5], vec![-1.0, 2.0]]).unwrap();
        let rows = pattern_rows(std::slice::from_ref(&pattern));
        let back = rows_to_patterns(&rows).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0], pattern);
    }
}
