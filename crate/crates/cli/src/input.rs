//! CSV input schemas, one flat header-driven layout per model:
//!
//! * logit: `y`, `n`, then predictor columns
//! * mixed: `y`, `n`, `group`, then predictor columns
//! * negbin: `y`, then predictor columns
//! * mlogit: `y1..yJ`, then predictor columns
//! * tables: exactly `y1`, `n1`, `y2`, `n2` (one row per center)
//! * gp-negbin: `y`, then coordinate columns
//!
//! An intercept column is prepended to every design matrix unless the
//! caller disables it.

use std::path::Path;

use nalgebra::DMatrix;
use pg_models::{GpData, MixedData, MultinomialData, NegBinData, RegressionData, TablesData};

use crate::error::CliError;

pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

pub fn read_csv(path: &Path) -> Result<Table, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Schema(format!("bad CSV header: {e}")))?
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Schema(format!("row {}: {e}", i + 2)))?;
        rows.push(record.iter().map(|s| s.to_string()).collect());
    }
    if rows.is_empty() {
        return Err(CliError::Schema("CSV contains no data rows".into()));
    }
    Ok(Table { headers, rows })
}

impl Table {
    fn column_index(&self, name: &str) -> Result<usize, CliError> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Schema(format!("missing required column `{name}`")))
    }

    fn u64_column(&self, name: &str) -> Result<Vec<u64>, CliError> {
        let idx = self.column_index(name)?;
        self.rows
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row[idx].parse::<u64>().map_err(|_| {
                    CliError::Schema(format!(
                        "column `{name}`, row {}: expected a nonnegative integer, got `{}`",
                        r + 2,
                        row[idx]
                    ))
                })
            })
            .collect()
    }

    fn f64_cell(&self, col: usize, row: usize) -> Result<f64, CliError> {
        self.rows[row][col].parse::<f64>().map_err(|_| {
            CliError::Schema(format!(
                "column `{}`, row {}: expected a number, got `{}`",
                self.headers[col],
                row + 2,
                self.rows[row][col]
            ))
        })
    }

    /// Build the design matrix from every column except `consumed`,
    /// optionally prepending an intercept; returns the matrix and the
    /// coefficient names.
    fn design(
        &self,
        consumed: &[&str],
        intercept: bool,
    ) -> Result<(DMatrix<f64>, Vec<String>), CliError> {
        let predictor_cols: Vec<usize> = (0..self.headers.len())
            .filter(|&c| !consumed.contains(&self.headers[c].as_str()))
            .collect();
        let n = self.rows.len();
        let offset = usize::from(intercept);
        let p = predictor_cols.len() + offset;
        let mut x = DMatrix::zeros(n, p);
        let mut names = Vec::with_capacity(p);
        if intercept {
            names.push("intercept".to_string());
            for i in 0..n {
                x[(i, 0)] = 1.0;
            }
        }
        for (k, &c) in predictor_cols.iter().enumerate() {
            names.push(self.headers[c].clone());
            for i in 0..n {
                x[(i, offset + k)] = self.f64_cell(c, i)?;
            }
        }
        if p == 0 {
            return Err(CliError::Schema(
                "design matrix is empty: no predictors and no intercept".into(),
            ));
        }
        Ok((x, names))
    }
}

pub fn logit_input(
    table: &Table,
    intercept: bool,
) -> Result<(RegressionData, Vec<String>), CliError> {
    let y = table.u64_column("y")?;
    let n = table.u64_column("n")?;
    let (x, names) = table.design(&["y", "n"], intercept)?;
    Ok((RegressionData::new(x, y, n)?, names))
}

pub fn mixed_input(
    table: &Table,
    intercept: bool,
) -> Result<(MixedData, Vec<String>, Vec<String>), CliError> {
    let y = table.u64_column("y")?;
    let n = table.u64_column("n")?;
    let gcol = table.column_index("group")?;
    // Group labels map to indices in order of first appearance.
    let mut labels: Vec<String> = Vec::new();
    let mut group = Vec::with_capacity(table.rows.len());
    for row in &table.rows {
        let label = &row[gcol];
        let idx = match labels.iter().position(|l| l == label) {
            Some(i) => i,
            None => {
                labels.push(label.clone());
                labels.len() - 1
            }
        };
        group.push(idx);
    }
    // The mixed model carries its own global intercept m, so the
    // automatic intercept column is never added here.
    let _ = intercept;
    let (x, names) = table.design(&["y", "n", "group"], false)?;
    let data = MixedData::new(group, labels.len(), x, y, n)?;
    Ok((data, names, labels))
}

pub fn negbin_input(
    table: &Table,
    intercept: bool,
    dispersion_init: u64,
    sample_dispersion: bool,
) -> Result<(NegBinData, Vec<String>), CliError> {
    let y = table.u64_column("y")?;
    let (x, names) = table.design(&["y"], intercept)?;
    Ok((
        NegBinData::new(x, y, dispersion_init, sample_dispersion)?,
        names,
    ))
}

pub fn mlogit_input(
    table: &Table,
    intercept: bool,
) -> Result<(MultinomialData, Vec<String>, Vec<String>), CliError> {
    // Count columns y1..yJ, contiguous from 1.
    let mut ycols: Vec<(usize, usize)> = Vec::new();
    for (c, h) in table.headers.iter().enumerate() {
        if let Some(rest) = h.strip_prefix('y') {
            if let Ok(k) = rest.parse::<usize>() {
                if k >= 1 {
                    ycols.push((k, c));
                }
            }
        }
    }
    ycols.sort();
    if ycols.len() < 2 {
        return Err(CliError::Schema(
            "mlogit needs count columns y1..yJ with J >= 2".into(),
        ));
    }
    for (want, (k, _)) in ycols.iter().enumerate() {
        if *k != want + 1 {
            return Err(CliError::Schema(format!(
                "mlogit count columns must be contiguous y1..yJ; missing `y{}`",
                want + 1
            )));
        }
    }
    let names_y: Vec<String> = ycols.iter().map(|(k, _)| format!("y{k}")).collect();
    let mut counts = Vec::with_capacity(table.rows.len());
    for r in 0..table.rows.len() {
        let mut row = Vec::with_capacity(ycols.len());
        for (_, c) in &ycols {
            let v = table.rows[r][*c].parse::<u64>().map_err(|_| {
                CliError::Schema(format!(
                    "column `{}`, row {}: expected a nonnegative integer",
                    table.headers[*c],
                    r + 2
                ))
            })?;
            row.push(v);
        }
        counts.push(row);
    }
    let consumed: Vec<&str> = names_y.iter().map(|s| s.as_str()).collect();
    let (x, names) = table.design(&consumed, intercept)?;
    Ok((MultinomialData::new(x, counts)?, names, names_y))
}

pub fn tables_input(
    table: &Table,
    wishart_dof: f64,
    expected_var1: f64,
    expected_var2: f64,
    expected_rho: f64,
    mu_scale: f64,
) -> Result<TablesData, CliError> {
    for required in ["y1", "n1", "y2", "n2"] {
        table.column_index(required)?;
    }
    if table.headers.len() != 4 {
        let extra: Vec<&str> = table
            .headers
            .iter()
            .filter(|h| !["y1", "n1", "y2", "n2"].contains(&h.as_str()))
            .map(|s| s.as_str())
            .collect();
        return Err(CliError::Schema(format!(
            "tables expects exactly y1,n1,y2,n2; unexpected column(s): {}",
            extra.join(", ")
        )));
    }
    let y1 = table.u64_column("y1")?;
    let n1 = table.u64_column("n1")?;
    let y2 = table.u64_column("y2")?;
    let n2 = table.u64_column("n2")?;
    let successes = y1.iter().zip(&y2).map(|(&a, &b)| [a, b]).collect();
    let trials = n1.iter().zip(&n2).map(|(&a, &b)| [a, b]).collect();
    let scale =
        pg_models::hyper_from_moments(expected_var1, expected_var2, expected_rho, wishart_dof)?;
    Ok(TablesData::new(
        successes,
        trials,
        wishart_dof,
        scale,
        nalgebra::Vector2::zeros(),
        mu_scale,
    )?)
}

pub fn gp_input(
    table: &Table,
    length_scale: f64,
    nugget: f64,
    nb_size: u64,
) -> Result<GpData, CliError> {
    let y = table.u64_column("y")?;
    let coord_cols: Vec<usize> = (0..table.headers.len())
        .filter(|&c| table.headers[c] != "y")
        .collect();
    if coord_cols.is_empty() {
        return Err(CliError::Schema(
            "gp-negbin needs at least one coordinate column besides `y`".into(),
        ));
    }
    let n = table.rows.len();
    let mut locations = DMatrix::zeros(n, coord_cols.len());
    for (k, &c) in coord_cols.iter().enumerate() {
        for i in 0..n {
            locations[(i, k)] = table.f64_cell(c, i)?;
        }
    }
    Ok(GpData::new(locations, y, length_scale, nugget, nb_size)?)
}
