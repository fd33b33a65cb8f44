//! Named states available without a file, and the `--state`/`--file` choice.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use locinfo::families::{max_entangled_projector, product_pure_pairs};
use locinfo::{registry, BipartiteDims, HermitianOperator};

use crate::state_file::{load_state_file, LoadedState};

pub const NAMED_STATES: [&str; 6] = ["singlet", "max_entangled", "product_pure", "max_mixed", "werner", "isotropic"];

/// Where a state comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Named { name: String, d: usize, param: Option<f64> },
    File(PathBuf),
}

/// A resolved state. `family` is set for werner/isotropic members.
#[derive(Clone, Debug)]
pub struct ResolvedState {
    pub label: String,
    pub rho: HermitianOperator,
    pub dims: BipartiteDims,
    pub family: Option<(&'static str, usize, f64)>,
}

fn canonical(name: &str) -> Option<&'static str> {
    let n = name.to_ascii_lowercase().replace('-', "_");
    Some(match n.as_str() {
        "singlet" => "singlet",
        "max_entangled" | "maxentangled" | "phi+" => "max_entangled",
        "product_pure" | "p00" => "product_pure",
        "max_mixed" | "maxmixed" => "max_mixed",
        "werner" => "werner",
        "isotropic" => "isotropic",
        _ => return None,
    })
}

impl StateSpec {
    pub fn resolve(&self) -> Result<ResolvedState> {
        match self {
            StateSpec::File(path) => {
                let LoadedState { rho, dims } =
                    load_state_file(path).with_context(|| format!("loading {}", path.display()))?;
                Ok(ResolvedState {
                    label: path.display().to_string(),
                    rho,
                    dims,
                    family: None,
                })
            }
            StateSpec::Named { name, d, param } => resolve_named(name, *d, *param),
        }
    }
}

fn resolve_named(name: &str, d: usize, param: Option<f64>) -> Result<ResolvedState> {
    let Some(name) = canonical(name) else {
        bail!("unknown state `{name}` (known: {})", NAMED_STATES.join(", "));
    };
    if d < 2 {
        bail!("--d must be at least 2, got {d}");
    }
    if param.is_some() && !matches!(name, "werner" | "isotropic") {
        bail!("--param only applies to werner and isotropic states");
    }
    let square = BipartiteDims::square(d);
    let (rho, dims, family) = match name {
        "singlet" => {
            let rho = registry().get("werner")?.state(2, -1.0)?;
            (rho, BipartiteDims::square(2), None)
        }
        "max_entangled" => (max_entangled_projector(d), square, None),
        "product_pure" => (product_pure_pairs(1)?, BipartiteDims::square(2), None),
        "max_mixed" => (HermitianOperator::maximally_mixed(d * d), square, None),
        fam => {
            let Some(t) = param else {
                bail!("state `{fam}` needs --param");
            };
            let family = registry().get(fam)?;
            (family.state(d, t)?, square, Some((family.name(), d, t)))
        }
    };
    Ok(ResolvedState {
        label: name.to_string(),
        rho,
        dims,
        family,
    })
}
