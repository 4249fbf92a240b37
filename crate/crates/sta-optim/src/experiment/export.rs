//! File export for experiment results.
//!
//! Layout under the output directory:
//!
//! * `summary.csv` or `summary.json` — one row per cell with the header
//!   `benchmark,dim,algorithm,objval_mean,objval_std,gradnorm_mean,evals_mean,time_mean`
//!   (the CSV adds `runs_completed,runs_failed` for partial-failure cells;
//!   objective and gradient columns use two-digit scientific notation).
//! * `records.json` — every run record including curves and wall times.
//! * `curves/<benchmark>_d<dim>_<algorithm>_s<seed>.csv` — per-run
//!   convergence curves, rows `evaluations,fbest`.
//!
//! Exports are byte-reproducible for a fixed plan except for wall-time
//! values.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::Error;
use crate::Result;

use super::{ExperimentResults, SummaryRow};

/// Format of the summary table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

pub const SUMMARY_CSV_HEADER: &str =
    "benchmark,dim,algorithm,objval_mean,objval_std,gradnorm_mean,evals_mean,time_mean,runs_completed,runs_failed";

/// Writes the summary, the per-run records, and one curve file per run.
/// Returns the paths written.
pub fn export_results(
    results: &ExperimentResults,
    format: ExportFormat,
    out_dir: &Path,
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();

    let summaries = results.summaries();
    match format {
        ExportFormat::Csv => {
            let path = out_dir.join("summary.csv");
            write_file(&path, summary_csv(&summaries).as_bytes())?;
            written.push(path);
        }
        ExportFormat::Json => {
            let path = out_dir.join("summary.json");
            let text = serde_json::to_string_pretty(&summaries)
                .map_err(|e| Error::invalid(format!("summary serialization: {e}")))?;
            write_file(&path, text.as_bytes())?;
            written.push(path);
        }
    }

    let records_path = out_dir.join("records.json");
    let text = serde_json::to_string_pretty(results)
        .map_err(|e| Error::invalid(format!("records serialization: {e}")))?;
    write_file(&records_path, text.as_bytes())?;
    written.push(records_path);

    let curves_dir = out_dir.join("curves");
    fs::create_dir_all(&curves_dir).map_err(|e| Error::io(&curves_dir, e))?;
    for cell in &results.cells {
        for record in &cell.records {
            let name = format!(
                "{}_d{}_{}_s{}.csv",
                cell.benchmark, cell.dim, cell.algorithm, record.seed
            );
            let path = curves_dir.join(name);
            let mut text = String::from("evaluations,fbest\n");
            for point in &record.curve {
                text.push_str(&format!("{},{:e}\n", point.evaluations, point.fbest));
            }
            write_file(&path, text.as_bytes())?;
            written.push(path);
        }
    }

    Ok(written)
}

/// Renders the summary table as CSV text.
pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_CSV_HEADER);
    out.push('\n');
    for row in rows {
        let gradnorm = row
            .gradnorm_mean
            .map_or_else(String::new, |g| format!("{g:.2e}"));
        out.push_str(&format!(
            "{},{},{},{:.2e},{:.2e},{},{:.1},{:.6},{},{}\n",
            row.benchmark,
            row.dim,
            row.algorithm,
            row.objval_mean,
            row.objval_std,
            gradnorm,
            row.evals_mean,
            row.time_mean,
            row.runs_completed,
            row.runs_failed,
        ));
    }
    out
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(bytes).map_err(|e| Error::io(path, e))
}
