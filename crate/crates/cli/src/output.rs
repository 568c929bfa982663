//! Draws CSV and summary JSON writers.  Float cells use the shortest
//! representation that round-trips, so parsing the file recovers the
//! draw matrix exactly.

use std::path::Path;

use pg_models::PosteriorDraws;
use serde_json::{json, Value};

use crate::error::CliError;

pub const SUMMARY_PROBS: [f64; 5] = [0.025, 0.25, 0.5, 0.75, 0.975];

pub fn write_draws_csv(path: &Path, draws: &PosteriorDraws) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    writer
        .write_record(&draws.names)
        .map_err(|e| CliError::Usage(format!("csv write: {e}")))?;
    let mut record = Vec::with_capacity(draws.n_params());
    for i in 0..draws.n_draws() {
        record.clear();
        for j in 0..draws.n_params() {
            record.push(draws.draws[(i, j)].to_string());
        }
        writer
            .write_record(&record)
            .map_err(|e| CliError::Usage(format!("csv write: {e}")))?;
    }
    writer
        .flush()
        .map_err(|e| CliError::Usage(format!("csv write: {e}")))?;
    Ok(())
}

/// Assemble the machine-readable summary: per-parameter moments and
/// quantiles, ESS/ESR (null for degenerate columns such as a fixed
/// dispersion), rollups, timing, and seed.
pub fn summary_json(model: &str, seed: u64, draws: &PosteriorDraws) -> Result<Value, CliError> {
    let summaries = draws
        .summary(&SUMMARY_PROBS)
        .map_err(|e| CliError::Numeric(format!("summary failed: {e}")))?;
    let seconds = draws.sampling_seconds;

    let mut params = Vec::new();
    let mut ess_values = Vec::new();
    let mut esr_values = Vec::new();
    for (j, s) in summaries.iter().enumerate() {
        let column = draws.column(j);
        let ess = pg_core::Chain::new(column)
            .and_then(|c| pg_core::ess(&c))
            .ok();
        let esr = ess.map(|e| e / seconds.max(1e-9));
        if let (Some(e), Some(r)) = (ess, esr) {
            ess_values.push(e);
            esr_values.push(r);
        }
        let mut quantiles = serde_json::Map::new();
        for &(p, q) in &s.quantiles {
            quantiles.insert(format!("q{}", 100.0 * p), json!(q));
        }
        params.push(json!({
            "name": s.name,
            "mean": s.mean,
            "sd": s.sd,
            "quantiles": Value::Object(quantiles),
            "ess": ess,
            "esr": esr,
        }));
    }

    let rollup = |vals: &[f64]| -> Value {
        if vals.is_empty() {
            return Value::Null;
        }
        let mut sorted = vals.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = if sorted.len() % 2 == 1 {
            sorted[sorted.len() / 2]
        } else {
            0.5 * (sorted[sorted.len() / 2 - 1] + sorted[sorted.len() / 2])
        };
        json!({"min": sorted[0], "median": median, "max": sorted[sorted.len() - 1]})
    };

    Ok(json!({
        "model": model,
        "seed": seed,
        "n_draws": draws.n_draws(),
        "sampling_seconds": seconds,
        "acceptance_rate": draws.acceptance_rate,
        "ess": rollup(&ess_values),
        "esr": rollup(&esr_values),
        "parameters": params,
    }))
}

pub fn write_summary(path: &Path, value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("json encode: {e}")))?;
    std::fs::write(path, text + "\n")
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}
