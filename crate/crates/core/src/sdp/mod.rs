//! PPT fidelity programs:
//! maximize `Tr[Πρ]` over `0 ⪯ Π ⪯ I`, `Tr Π = K`, and either `Π^Γ ⪰ 0`
//! ([`Variant::Ppt`]) or `-I/K_s ⪯ Π^Γ ⪯ I/K_s` ([`Variant::Mixed`]).

mod commutant;
mod projected;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{dual_fidelity_bound, minimize_mixed_over_lambda, STATE_PSD_TOL};
use crate::entropy::TRACE_TOL;
use crate::error::{Error, Result};
use crate::operator::{BipartiteDims, HermitianOperator};
use crate::random::random_hermitian;

pub use commutant::{commutant_reduce_lp, CommutantLp};
pub use projected::ProjectedAscent;

/// Largest total dimension the solvers accept.
pub const MAX_DIM: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Variant {
    /// `Π^Γ ⪰ 0`
    Ppt,
    /// `-I/K_s ⪯ Π^Γ ⪯ I/K_s`
    Mixed { ks: f64 },
}

impl Variant {
    /// Interval the eigenvalues of `Π^Γ` must lie in.
    pub fn pt_band(&self) -> (f64, f64) {
        match *self {
            Variant::Ppt => (0.0, f64::INFINITY),
            Variant::Mixed { ks } => (-1.0 / ks, 1.0 / ks),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SdpProblem {
    pub rho: HermitianOperator,
    pub dims: BipartiteDims,
    pub k: f64,
    pub variant: Variant,
}

impl SdpProblem {
    pub fn new(rho: HermitianOperator, dims: BipartiteDims, k: f64, variant: Variant) -> Result<Self> {
        dims.check(&rho)?;
        let n = dims.total();
        if n > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "total dimension {n} exceeds the supported maximum {MAX_DIM}"
            )));
        }
        rho.validate_state(STATE_PSD_TOL, TRACE_TOL)?;
        if !(k > 0.0 && k <= n as f64) {
            return Err(Error::OutOfRange {
                name: "K",
                value: k,
                lo: 0.0,
                hi: n as f64,
            });
        }
        if let Variant::Mixed { ks } = variant {
            if !(ks >= 1.0 && ks.is_finite()) {
                return Err(Error::OutOfRange {
                    name: "K_s",
                    value: ks,
                    lo: 1.0,
                    hi: f64::INFINITY,
                });
            }
            if k * ks > n as f64 * (1.0 + 1e-12) {
                return Err(Error::Infeasible(format!(
                    "K·K_s = {} exceeds dimension {n}",
                    k * ks
                )));
            }
        }
        Ok(SdpProblem { rho, dims, k, variant })
    }

    /// Problem on `copies` copies of `rho` with trace budget
    /// `K = 2^{n (log2(d_A d_B) - rate)}`.
    pub fn from_rate(
        rho: &HermitianOperator,
        dims: BipartiteDims,
        rate: f64,
        copies: u32,
        variant: Variant,
    ) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidArgument("need at least one copy".into()));
        }
        let (rho_n, dims_n) = rho.tensor_power(dims, copies)?;
        let k = (copies as f64 * ((dims.total() as f64).log2() - rate)).exp2();
        Self::new(rho_n, dims_n, k, variant)
    }

    pub fn dim(&self) -> usize {
        self.dims.total()
    }

    /// Violations of each constraint by `pi`.
    pub fn residuals(&self, pi: &HermitianOperator) -> Result<Residuals> {
        let ev = pi.eigenvalues();
        let pt = pi.partial_transpose(self.dims)?.eigenvalues();
        let (lo, hi) = self.variant.pt_band();
        let pt_low = pt.iter().map(|m| lo - m).fold(0.0f64, f64::max);
        let pt_high = pt.iter().map(|m| m - hi).fold(0.0f64, f64::max);
        Ok(Residuals {
            psd_gap: (-ev[ev.len() - 1]).max(0.0),
            cap_gap: (ev[0] - 1.0).max(0.0),
            pt_gap: pt_low.max(pt_high),
            trace_gap: (pi.trace() - self.k).abs(),
        })
    }

    /// `(K / dim)·I`, feasible for every valid problem.
    pub fn center(&self) -> HermitianOperator {
        HermitianOperator::identity(self.dim()).scale(self.k / self.dim() as f64)
    }

    /// Pulls `pi` onto the feasible set: exact trace shift, then the
    /// smallest blend towards [`SdpProblem::center`] that clears every
    /// spectral constraint.
    pub fn repair(&self, pi: &HermitianOperator) -> Result<HermitianOperator> {
        let n = self.dim();
        let shifted = pi + &HermitianOperator::identity(n).scale((self.k - pi.trace()) / n as f64);
        let c = self.k / n as f64;
        let ev = shifted.eigenvalues();
        let pt = shifted.partial_transpose(self.dims)?.eigenvalues();
        let (lmax, lmin) = (ev[0], ev[ev.len() - 1]);
        let (mmax, mmin) = (pt[0], pt[pt.len() - 1]);
        let (band_lo, band_hi) = self.variant.pt_band();
        let mut t: f64 = 0.0;
        if lmin < 0.0 {
            t = t.max(-lmin / (c - lmin));
        }
        if lmax > 1.0 {
            t = t.max((lmax - 1.0) / (lmax - c));
        }
        if mmin < band_lo {
            t = t.max((band_lo - mmin) / (c - mmin));
        }
        if mmax > band_hi {
            t = t.max((mmax - band_hi) / (mmax - c));
        }
        if t == 0.0 {
            return Ok(shifted);
        }
        let t = (t * (1.0 + 1e-9) + 1e-15).min(1.0);
        Ok(&shifted.scale(1.0 - t) + &self.center().scale(t))
    }

    /// Smallest dual bound over `D = tρ` (t on a grid in [0, 2]) and
    /// `n_random` random Hermitian `D`.
    pub fn dual_certificate(&self, n_random: usize, seed: u64) -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bank: Vec<HermitianOperator> = (0..=40).map(|i| self.rho.scale(i as f64 / 20.0)).collect();
        bank.extend((0..n_random).map(|_| random_hermitian(self.dim(), &mut rng).scale(0.25)));
        let mut best = f64::INFINITY;
        for d in &bank {
            best = best.min(self.dual_bound(d)?);
        }
        Ok(best)
    }

    /// Dual bound for one `D`; λ is optimized for the mixed variant.
    pub fn dual_bound(&self, d: &HermitianOperator) -> Result<f64> {
        match self.variant {
            Variant::Ppt => dual_fidelity_bound(&self.rho, d, self.k, self.dims),
            Variant::Mixed { ks } => Ok(minimize_mixed_over_lambda(&self.rho, d, self.k, ks, self.dims)?.1),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Residuals {
    pub psd_gap: f64,
    pub cap_gap: f64,
    pub pt_gap: f64,
    pub trace_gap: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        self.psd_gap.max(self.cap_gap).max(self.pt_gap).max(self.trace_gap)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SdpOptions {
    /// Ascent step; `None` means `0.5 / ‖ρ‖_op`.
    pub step: Option<f64>,
    pub max_iter: usize,
    pub feasibility_tol: f64,
    /// Objective change allowed over `window` iterations at convergence.
    pub objective_tol: f64,
    pub window: usize,
    pub inner_tol: f64,
    pub inner_max_iter: usize,
}

impl Default for SdpOptions {
    fn default() -> Self {
        SdpOptions {
            step: None,
            max_iter: 200_000,
            feasibility_tol: 1e-7,
            objective_tol: 1e-9,
            window: 50,
            inner_tol: 1e-13,
            inner_max_iter: 20_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SdpResult {
    pub value: f64,
    pub pi: HermitianOperator,
    pub residuals: Residuals,
    pub iterations: usize,
    pub converged: bool,
    pub solver: &'static str,
}

/// A method for solving [`SdpProblem`]s.
pub trait FidelitySolver: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn solve(&self, problem: &SdpProblem, opts: &SdpOptions) -> Result<SdpResult>;
}

#[derive(Debug, Default, Clone)]
pub struct SolverRegistry {
    solvers: BTreeMap<&'static str, Arc<dyn FidelitySolver>>,
}

impl SolverRegistry {
    pub fn builtin() -> Self {
        let mut r = Self::default();
        r.register(Arc::new(ProjectedAscent));
        r.register(Arc::new(CommutantLp));
        r
    }

    pub fn register(&mut self, solver: Arc<dyn FidelitySolver>) {
        self.solvers.insert(solver.name(), solver);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn FidelitySolver>> {
        self.solvers
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownSolver(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.solvers.keys().copied().collect()
    }
}

pub fn solvers() -> &'static SolverRegistry {
    static REGISTRY: OnceLock<SolverRegistry> = OnceLock::new();
    REGISTRY.get_or_init(SolverRegistry::builtin)
}

/// Solves the PPT program (`Π^Γ ⪰ 0`) by projected ascent.
pub fn primal_fidelity_sdp(problem: &SdpProblem, opts: &SdpOptions) -> Result<SdpResult> {
    if problem.variant != Variant::Ppt {
        return Err(Error::InvalidArgument("expected the PPT variant".into()));
    }
    ProjectedAscent.solve(problem, opts)
}

/// Solves the mixed program (`|Π^Γ| ⪯ I/K_s`) by projected ascent.
pub fn primal_fidelity_sdp_mixed(problem: &SdpProblem, opts: &SdpOptions) -> Result<SdpResult> {
    if !matches!(problem.variant, Variant::Mixed { .. }) {
        return Err(Error::InvalidArgument("expected the mixed variant".into()));
    }
    ProjectedAscent.solve(problem, opts)
}
