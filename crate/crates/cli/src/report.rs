//! `bounds report`: one bound report as a JSON object.

use anyhow::Result;
use locinfo::{registry, BoundReport, ReportOptions};
use serde_json::{json, Value};

use crate::format::Cell;
use crate::states::StateSpec;

/// Family members use the family optimizer and the closed-form `rP`;
/// anything else goes through the general-state routines.
pub fn run_report(spec: &StateSpec, opts: ReportOptions) -> Result<Value> {
    let state = spec.resolve()?;
    let report = match state.family {
        Some((name, d, t)) => BoundReport::for_family(registry().get(name)?.as_ref(), d, t)?,
        None => BoundReport::for_state(&state.rho, state.dims, opts)?,
    };
    let num = |x: f64| Cell::Num(x).to_json();
    let opt = |x: Option<f64>| Cell::from(x).to_json();
    Ok(json!({
        "state": state.label,
        "dims": [state.dims.d_a, state.dims.d_b],
        "info_content": num(report.info_content),
        "b1": num(report.b1),
        "b2": num(report.b2),
        "sigma_star": report.sigma_star.to_string(),
        "r_protocol": opt(report.r_protocol),
        "delta_b": num(report.delta_b),
        "delta_p": opt(report.delta_p),
    }))
}
