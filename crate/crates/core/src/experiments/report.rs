use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;

use super::linkpred::LinkPredOutcome;
use super::pairwise::PairwiseOutcome;

/// Summary, per-trial detail and metadata, in that order.
pub const PAIRWISE_FILES: [&str; 3] = ["pairwise_summary.csv", "pairwise_trials.csv", "pairwise_meta.json"];
/// Per-node AUC, summary and metadata, in that order.
pub const LINKPRED_FILES: [&str; 3] = ["linkpred_nodes.csv", "linkpred_summary.csv", "linkpred_meta.json"];

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

/// Writes [`PAIRWISE_FILES`] into `dir` and returns their paths.
pub fn write_pairwise(out: &PairwiseOutcome, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let paths: Vec<PathBuf> = PAIRWISE_FILES.iter().map(|f| dir.join(f)).collect();
    write_csv(&paths[0], &out.summary)?;
    write_csv(&paths[1], &out.details)?;
    write_json(&paths[2], &out.metadata)?;
    Ok(paths)
}

/// Writes [`LINKPRED_FILES`] into `dir` and returns their paths.
pub fn write_linkpred(out: &LinkPredOutcome, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let paths: Vec<PathBuf> = LINKPRED_FILES.iter().map(|f| dir.join(f)).collect();
    write_csv(&paths[0], &out.nodes)?;
    write_csv(&paths[1], &out.summary)?;
    write_json(&paths[2], &out.metadata)?;
    Ok(paths)
}
