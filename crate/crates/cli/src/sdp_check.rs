//! Numerical certification of the PPT fidelity programs: primal solve,
//! dual certificate, and the commutant oracle when the state is symmetric.

use anyhow::{bail, Result};
use locinfo::sdp::{solvers, CommutantLp, FidelitySolver, Residuals};
use locinfo::{SdpOptions, SdpProblem, Variant};
use serde::Serialize;

use crate::format::format_number;
use crate::states::StateSpec;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Budget {
    /// `K = 2^{n (log2(dA dB) - rate)}`
    Rate(f64),
    K(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SdpCheckConfig {
    pub state: StateSpec,
    pub budget: Budget,
    pub variant: Variant,
    pub copies: u32,
    pub tol: f64,
    pub solver: String,
    pub random_duals: usize,
    pub seed: u64,
    pub max_iter: usize,
}

impl SdpCheckConfig {
    pub fn new(state: StateSpec, budget: Budget) -> Self {
        SdpCheckConfig {
            state,
            budget,
            variant: Variant::Ppt,
            copies: 1,
            tol: 1e-6,
            solver: "projected-ascent".into(),
            random_duals: 100,
            seed: 0x5eed,
            max_iter: SdpOptions::default().max_iter,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub psd: f64,
    pub cap: f64,
    pub pt: f64,
    pub trace: f64,
}

impl From<Residuals> for ResidualReport {
    fn from(r: Residuals) -> Self {
        ResidualReport {
            psd: r.psd_gap,
            cap: r.cap_gap,
            pt: r.pt_gap,
            trace: r.trace_gap,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SdpCheckReport {
    pub state: String,
    pub dim: usize,
    pub copies: u32,
    pub k: f64,
    pub variant: String,
    pub solver: String,
    pub primal: f64,
    pub iterations: usize,
    pub converged: bool,
    pub residuals: ResidualReport,
    pub feasible: bool,
    pub dual: f64,
    pub gap: f64,
    pub oracle: Option<f64>,
    pub certified: bool,
}

impl SdpCheckReport {
    pub fn to_text(&self) -> String {
        let f6 = |x: f64| format!("{x:.6}");
        let mut lines = vec![
            format!("state      {}", self.state),
            format!("dim        {} ({} cop{})", self.dim, self.copies, if self.copies == 1 { "y" } else { "ies" }),
            format!("K          {}", format_number(self.k)),
            format!("variant    {}", self.variant),
            format!("solver     {} ({} iterations, converged: {})", self.solver, self.iterations, self.converged),
            format!("primal     {}", f6(self.primal)),
            format!("dual       {}", f6(self.dual)),
            format!("gap        {:.3e}", self.gap),
            format!(
                "residuals  psd {:.3e}  cap {:.3e}  pt {:.3e}  trace {:.3e}",
                self.residuals.psd, self.residuals.cap, self.residuals.pt, self.residuals.trace
            ),
        ];
        match self.oracle {
            Some(o) => lines.push(format!("oracle     {}  (|primal - oracle| = {:.3e})", f6(o), (self.primal - o).abs())),
            None => lines.push("oracle     n/a (state is not twirl invariant)".into()),
        }
        lines.push(format!("certified  {}", self.certified));
        lines.join("\n") + "\n"
    }
}

fn variant_label(v: Variant) -> String {
    match v {
        Variant::Ppt => "ppt".into(),
        Variant::Mixed { ks } => format!("mixed (Ks = {})", format_number(ks)),
    }
}

pub fn build_problem(config: &SdpCheckConfig) -> Result<(String, SdpProblem)> {
    if config.copies == 0 {
        bail!("--copies must be at least 1");
    }
    let state = config.state.resolve()?;
    let problem = match config.budget {
        Budget::Rate(r) => SdpProblem::from_rate(&state.rho, state.dims, r, config.copies, config.variant)?,
        Budget::K(k) => {
            let (rho, dims) = state.rho.tensor_power(state.dims, config.copies)?;
            SdpProblem::new(rho, dims, k, config.variant)?
        }
    };
    Ok((state.label, problem))
}

pub fn run_sdp_check(config: &SdpCheckConfig) -> Result<SdpCheckReport> {
    if !(config.tol >= 0.0) {
        bail!("--tol must be non-negative");
    }
    let (label, problem) = build_problem(config)?;
    if config.max_iter == 0 {
        bail!("--max-iter must be at least 1");
    }
    let opts = SdpOptions {
        max_iter: config.max_iter,
        ..SdpOptions::default()
    };
    let solver = solvers().get(&config.solver)?;
    let result = solver.solve(&problem, &opts)?;
    let dual = problem.dual_certificate(config.random_duals, config.seed)?;
    let oracle = CommutantLp.solve(&problem, &opts).ok().map(|r| r.value);
    let feasible = result.residuals.max() <= opts.feasibility_tol;
    Ok(SdpCheckReport {
        state: label,
        dim: problem.dim(),
        copies: config.copies,
        k: problem.k,
        variant: variant_label(config.variant),
        solver: result.solver.to_string(),
        primal: result.value,
        iterations: result.iterations,
        converged: result.converged,
        residuals: result.residuals.into(),
        feasible,
        dual,
        gap: dual - result.value,
        oracle,
        certified: result.converged && feasible && result.value <= dual + config.tol,
    })
}
