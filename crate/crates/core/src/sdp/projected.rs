use std::collections::VecDeque;

use super::{FidelitySolver, SdpOptions, SdpProblem, SdpResult};
use crate::error::Result;
use crate::operator::{BipartiteDims, HermitianOperator};

/// Projected ascent `Π ← P(Π + ηρ)`, where `P` is Dykstra's alternating
/// projection onto the intersection of the three constraint sets.
#[derive(Clone, Copy, Debug, Default)]
pub struct ProjectedAscent;

fn clip_spectrum(a: &HermitianOperator, lo: f64, hi: f64) -> HermitianOperator {
    a.eigensystem().rebuild_with(|l| l.clamp(lo, hi))
}

struct Projector<'a> {
    dims: BipartiteDims,
    k: f64,
    band: (f64, f64),
    opts: &'a SdpOptions,
}

impl Projector<'_> {
    fn box_set(&self, a: &HermitianOperator) -> HermitianOperator {
        clip_spectrum(a, 0.0, 1.0)
    }

    fn pt_set(&self, a: &HermitianOperator) -> Result<HermitianOperator> {
        let pt = a.partial_transpose(self.dims)?;
        clip_spectrum(&pt, self.band.0, self.band.1).partial_transpose(self.dims)
    }

    fn trace_set(&self, a: &HermitianOperator) -> HermitianOperator {
        let n = a.dim();
        a + &HermitianOperator::identity(n).scale((self.k - a.trace()) / n as f64)
    }

    /// Dykstra's algorithm; returns the projection and the sweeps used.
    fn project(&self, x0: &HermitianOperator) -> Result<(HermitianOperator, usize)> {
        let n = x0.dim();
        let mut x = x0.clone();
        let mut corr = [
            HermitianOperator::zeros(n),
            HermitianOperator::zeros(n),
            HermitianOperator::zeros(n),
        ];
        for sweep in 1..=self.opts.inner_max_iter {
            let start = x.clone();
            // the iterate can sit still for a sweep while corrections move
            let mut moved: f64 = 0.0;
            for (i, c) in corr.iter_mut().enumerate() {
                let y = &x + c;
                let p = match i {
                    0 => self.box_set(&y),
                    1 => self.pt_set(&y)?,
                    _ => self.trace_set(&y),
                };
                let next_c = &y - &p;
                moved = moved.max(next_c.max_abs_diff(c));
                *c = next_c;
                x = p;
            }
            if x.max_abs_diff(&start).max(moved) < self.opts.inner_tol {
                return Ok((x, sweep));
            }
        }
        Ok((x, self.opts.inner_max_iter))
    }
}

impl FidelitySolver for ProjectedAscent {
    fn name(&self) -> &'static str {
        "projected-ascent"
    }

    fn solve(&self, problem: &SdpProblem, opts: &SdpOptions) -> Result<SdpResult> {
        let rho = &problem.rho;
        let proj = Projector {
            dims: problem.dims,
            k: problem.k,
            band: problem.variant.pt_band(),
            opts,
        };
        let mut eta = opts.step.unwrap_or(0.5 / rho.norms().op_norm);
        let mut pi = problem.center();
        let mut value = pi.inner(rho);
        let mut history: VecDeque<f64> = VecDeque::from([value]);
        let mut converged = false;
        let mut iterations = 0;

        while iterations < opts.max_iter {
            iterations += 1;
            let (next, _) = proj.project(&(&pi + &rho.scale(eta)))?;
            let next_value = next.inner(rho);
            if next_value < value - 1e-14 {
                eta *= 0.5;
                if eta < 1e-12 {
                    break;
                }
                continue;
            }
            let step = next.max_abs_diff(&pi);
            pi = next;
            value = next_value;
            history.push_back(value);
            if history.len() > opts.window + 1 {
                history.pop_front();
            }
            let stalled = history.len() > opts.window
                && (value - history[0]).abs() < opts.objective_tol;
            if (stalled || step < 1e-13) && problem.residuals(&pi)?.max() < opts.feasibility_tol {
                converged = true;
                break;
            }
        }

        let pi = problem.repair(&pi)?;
        let residuals = problem.residuals(&pi)?;
        Ok(SdpResult {
            value: pi.inner(rho),
            pi,
            residuals,
            iterations,
            converged: converged && residuals.max() <= opts.feasibility_tol,
            solver: self.name(),
        })
    }
}
