//! Parameter sweeps over a state family.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use locinfo::{registry, BoundReport, StateFamily};
use rayon::prelude::*;

use crate::format::{Cell, Format, Table};

/// Default column set, in output order.
pub const COLUMNS: [&str; 11] = ["family", "d", "param", "I", "B1", "B2", "rP", "deltaB", "deltaP", "ER", "EF"];

/// Columns that may be requested in addition to [`COLUMNS`].
pub const EXTRA_COLUMNS: [&str; 2] = ["g_raw", "sigma_star"];

/// Grid endpoints closer than this to `to` are snapped onto it.
pub const GRID_SNAP: f64 = 1e-9;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "BOUNDS_THREADS";

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub family: String,
    pub d: usize,
    pub param_from: f64,
    pub param_to: f64,
    pub param_step: f64,
    pub columns: Vec<String>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl SweepConfig {
    pub fn new(family: &str, d: usize, from: f64, to: f64, step: f64) -> Self {
        SweepConfig {
            family: family.to_string(),
            d,
            param_from: from,
            param_to: to,
            param_step: step,
            columns: COLUMNS.iter().map(|c| c.to_string()).collect(),
            format: Format::Csv,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let family = registry().get(&self.family)?;
        if !(self.param_step > 0.0 && self.param_step.is_finite()) {
            bail!("--step must be positive, got {}", self.param_step);
        }
        if !(self.param_from <= self.param_to) {
            bail!("--from ({}) must not exceed --to ({})", self.param_from, self.param_to);
        }
        if self.d < 2 {
            bail!("--d must be at least 2, got {}", self.d);
        }
        let (lo, hi) = family.param_range(self.d);
        for (flag, v) in [("--from", self.param_from), ("--to", self.param_to)] {
            family
                .check_param(self.d, v)
                .with_context(|| format!("{flag} {v} is outside the {} range [{lo}, {hi}]", self.family))?;
        }
        for c in &self.columns {
            if !COLUMNS.contains(&c.as_str()) && !EXTRA_COLUMNS.contains(&c.as_str()) {
                bail!(
                    "unknown column `{c}` (known: {}, {})",
                    COLUMNS.join(","),
                    EXTRA_COLUMNS.join(",")
                );
            }
        }
        if self.columns.is_empty() {
            bail!("no columns requested");
        }
        Ok(())
    }
}

/// Points `from + i·step` up to `to`, with a last point within
/// [`GRID_SNAP`] of `to` snapped onto it.
pub fn grid(from: f64, to: f64, step: f64) -> Vec<f64> {
    let n = ((to - from) / step + GRID_SNAP).floor() as usize;
    (0..=n)
        .map(|i| {
            let t = from + step * i as f64;
            if (t - to).abs() <= GRID_SNAP || t > to {
                to
            } else {
                t
            }
        })
        .collect()
}

/// Every quantity a sweep row can show.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub family: &'static str,
    pub d: usize,
    pub param: f64,
    pub report: BoundReport,
    pub er: f64,
    pub ef: f64,
    pub g_raw: Option<f64>,
}

impl SweepRow {
    pub fn compute(family: &dyn StateFamily, d: usize, t: f64) -> Result<Self> {
        let report = BoundReport::for_family(family, d, t)?;
        let m = family.measures(d, t)?;
        Ok(SweepRow {
            family: family.name(),
            d,
            param: t,
            report,
            er: m.er,
            ef: m.ef,
            g_raw: m.g_raw,
        })
    }

    pub fn cell(&self, column: &str) -> Cell {
        let r = &self.report;
        match column {
            "family" => Cell::from(self.family),
            "d" => Cell::from(self.d),
            "param" => Cell::Num(self.param),
            "I" => Cell::Num(r.info_content),
            "B1" => Cell::Num(r.b1),
            "B2" => Cell::Num(r.b2),
            "rP" => Cell::from(r.r_protocol),
            "deltaB" => Cell::Num(r.delta_b),
            "deltaP" => Cell::from(r.delta_p),
            "ER" => Cell::Num(self.er),
            "EF" => Cell::Num(self.ef),
            "g_raw" => Cell::from(self.g_raw),
            "sigma_star" => Cell::Text(r.sigma_star.to_string()),
            _ => Cell::Empty,
        }
    }
}

/// Runs `f` on a pool capped by `BOUNDS_THREADS` when it is set.
pub fn with_thread_cap<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => {
            let n: usize = v
                .trim()
                .parse()
                .ok()
                .filter(|n| *n > 0)
                .with_context(|| format!("{THREADS_ENV} must be a positive integer, got `{v}`"))?;
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            Ok(pool.install(f))
        }
        _ => Ok(f()),
    }
}

/// Computes rows in parallel; the result is in grid order.
pub fn compute_rows(family: &str, d: usize, params: &[f64]) -> Result<Vec<SweepRow>> {
    let family = registry().get(family)?;
    with_thread_cap(|| {
        params
            .par_iter()
            .map(|&t| SweepRow::compute(family.as_ref(), d, t))
            .collect::<Result<Vec<_>>>()
    })?
}

pub fn rows_to_table(rows: &[SweepRow], columns: &[String]) -> Table {
    let mut table = Table::new(columns.to_vec());
    for row in rows {
        table.push(columns.iter().map(|c| row.cell(c)).collect());
    }
    table
}

pub fn run_sweep(config: &SweepConfig) -> Result<Table> {
    config.validate()?;
    let params = grid(config.param_from, config.param_to, config.param_step);
    let rows = compute_rows(&config.family, config.d, &params)?;
    Ok(rows_to_table(&rows, &config.columns))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts() {
        assert_eq!(grid(-1.0, 1.0, 0.01).len(), 201);
        let g = grid(-1.0, 1.0, 0.01);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert_eq!(grid(0.0, 1.0, 0.3), vec![0.0, 0.3, 0.6, 0.8999999999999999]);
        assert_eq!(grid(0.5, 0.5, 0.1), vec![0.5]);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(SweepConfig::new("werner", 3, -1.0, 1.0, 0.0).validate().is_err());
        assert!(SweepConfig::new("werner", 3, 1.0, -1.0, 0.1).validate().is_err());
        assert!(SweepConfig::new("werner", 3, -1.5, 1.0, 0.1).validate().is_err());
        assert!(SweepConfig::new("isotropic", 3, -0.5, 1.0, 0.1).validate().is_err());
        assert!(SweepConfig::new("bell", 3, 0.0, 1.0, 0.1).validate().is_err());
        let mut c = SweepConfig::new("werner", 3, -1.0, 1.0, 0.1);
        c.columns = vec!["B3".into()];
        assert!(c.validate().is_err());
        assert!(SweepConfig::new("isotropic", 3, -0.125, 1.0, 0.1).validate().is_ok());
    }

    #[test]
    fn singlet_row() {
        let t = run_sweep(&SweepConfig::new("werner", 2, -1.0, -1.0, 0.1)).unwrap();
        assert_eq!(t.rows.len(), 1);
        let get = |c: &str| t.column(c).unwrap()[0].unwrap();
        assert!((get("I") - 2.0).abs() < 1e-12);
        for c in ["B1", "B2", "rP", "deltaB", "deltaP", "ER", "EF"] {
            assert!((get(c) - 1.0).abs() < 1e-9, "{c} = {}", get(c));
        }
    }

    #[test]
    fn extra_columns() {
        let mut c = SweepConfig::new("isotropic", 3, 0.5, 0.5, 0.1);
        c.columns = vec!["param".into(), "g_raw".into(), "sigma_star".into()];
        let t = run_sweep(&c).unwrap();
        assert!(t.rows[0][1].as_f64().unwrap() > 0.0);
        assert!(matches!(&t.rows[0][2], Cell::Text(s) if s.starts_with("isotropic")));
        let mut c = SweepConfig::new("werner", 3, 0.5, 0.5, 0.1);
        c.columns = vec!["g_raw".into()];
        assert_eq!(run_sweep(&c).unwrap().rows[0][0], Cell::Empty);
    }
}
