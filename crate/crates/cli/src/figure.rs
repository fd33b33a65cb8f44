//! Data behind the standard plots: each figure is a fixed set of curves
//! over the full parameter range of one family.

use anyhow::{bail, Result};
use locinfo::registry;

use crate::format::Table;
use crate::sweep::{compute_rows, grid, rows_to_table};

pub const FIGURE_IDS: [u32; 6] = [1, 2, 3, 4, 7, 8];

/// Default number of grid intervals per curve.
pub const DEFAULT_INTERVALS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FigureSpec {
    pub id: u32,
    pub family: &'static str,
    pub dims: &'static [usize],
    pub curves: &'static [&'static str],
    pub title: &'static str,
}

const FIGURES: [FigureSpec; 6] = [
    FigureSpec {
        id: 1,
        family: "werner",
        dims: &[3],
        curves: &["I", "B1", "B2", "rP"],
        title: "rate bounds and information content, Werner d=3",
    },
    FigureSpec {
        id: 2,
        family: "werner",
        dims: &[3, 4, 5],
        curves: &["B2", "rP"],
        title: "B2 and rP for Werner states, d=3,4,5",
    },
    FigureSpec {
        id: 3,
        family: "isotropic",
        dims: &[3],
        curves: &["I", "B1", "B2", "rP"],
        title: "rate bounds and information content, isotropic d=3",
    },
    FigureSpec {
        id: 4,
        family: "isotropic",
        dims: &[3, 4, 5],
        curves: &["B2", "rP"],
        title: "B2 and rP for isotropic states, d=3,4,5",
    },
    FigureSpec {
        id: 7,
        family: "werner",
        dims: &[5],
        curves: &["deltaB", "deltaP", "ER", "EF"],
        title: "deficit bounds against ER and EF, Werner d=5",
    },
    FigureSpec {
        id: 8,
        family: "isotropic",
        dims: &[3],
        curves: &["deltaB", "deltaP", "ER", "g_raw", "EF"],
        title: "deficit bounds, ER, g and its convex hull EF, isotropic d=3",
    },
];

pub fn figure_spec(id: u32) -> Result<FigureSpec> {
    match FIGURES.iter().find(|f| f.id == id) {
        Some(f) => Ok(*f),
        None => {
            let ids: Vec<String> = FIGURE_IDS.iter().map(u32::to_string).collect();
            bail!("unknown figure id {id} (valid ids: {})", ids.join(", "))
        }
    }
}

/// One row per (d, grid point), `intervals + 1` points per d.
pub fn run_figure(id: u32, intervals: usize) -> Result<Table> {
    let spec = figure_spec(id)?;
    if intervals == 0 {
        bail!("need at least one grid interval");
    }
    let family = registry().get(spec.family)?;
    let mut columns: Vec<String> = ["family", "d", "param"].iter().map(|c| c.to_string()).collect();
    columns.extend(spec.curves.iter().map(|c| c.to_string()));
    let mut table = Table::new(columns.clone());
    for &d in spec.dims {
        let (lo, hi) = family.param_range(d);
        let params = grid(lo, hi, (hi - lo) / intervals as f64);
        let rows = compute_rows(spec.family, d, &params)?;
        table.rows.extend(rows_to_table(&rows, &columns).rows);
    }
    Ok(table)
}
