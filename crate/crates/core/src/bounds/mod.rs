//! Upper bounds on locally accessible information and the matching deficits.

pub mod closed_form;
pub mod dual;
pub mod optimize;
pub mod protocol;

pub use closed_form::{closed_form_bounds, isotropic_as_printed, ClosedFormBounds, IsotropicPrinted};
pub use dual::{dual_fidelity_bound, dual_fidelity_bound_mixed, minimize_mixed_over_lambda};
pub use optimize::{b2_best, b2_optimize_family, b2_optimize_symmetric, B2Optimum, SigmaStar};
pub use protocol::{r_protocol_general, r_protocol_sup, Measurement};

use crate::entropy::{relative_entropy, von_neumann_entropy, TRACE_TOL};
use crate::error::{Error, Result};
use crate::families::StateFamily;
use crate::operator::{BipartiteDims, HermitianOperator};

/// PSD tolerance applied to input states.
pub const STATE_PSD_TOL: f64 = 1e-10;

/// Deficits in `(-NOISE_FLOOR, 0)` are reported as 0.
pub const NOISE_FLOOR: f64 = 1e-9;

pub(crate) fn validate_state(rho: &HermitianOperator) -> Result<()> {
    rho.validate_state(STATE_PSD_TOL, TRACE_TOL)
}

/// `I(ρ) = log2(d_A d_B) - S(ρ)`.
pub fn information_content(rho: &HermitianOperator, dims: BipartiteDims) -> Result<f64> {
    dims.check(rho)?;
    validate_state(rho)?;
    Ok((dims.total() as f64).log2() - von_neumann_entropy(rho)?)
}

/// `B1(ρ) = log2(d_A d_B) + log2 ‖ρ^Γ‖_op`.
pub fn b1_general(rho: &HermitianOperator, dims: BipartiteDims) -> Result<f64> {
    dims.check(rho)?;
    validate_state(rho)?;
    let pt = rho.partial_transpose(dims)?;
    Ok((dims.total() as f64).log2() + pt.norms().op_norm.log2())
}

/// `B2(ρ, σ) = log2(d_A d_B) + S(ρ|σ) + log2 ‖σ^Γ‖_op`; `+∞` when
/// `supp ρ ⊄ supp σ`.
pub fn b2_general(rho: &HermitianOperator, sigma: &HermitianOperator, dims: BipartiteDims) -> Result<f64> {
    dims.check(rho)?;
    dims.check(sigma)?;
    validate_state(rho)?;
    validate_state(sigma)?;
    let rel = relative_entropy(rho, sigma)?;
    if rel.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let pt = sigma.partial_transpose(dims)?;
    Ok((dims.total() as f64).log2() + rel + pt.norms().op_norm.log2())
}

fn clamp_noise(x: f64) -> f64 {
    if x < 0.0 && x > -NOISE_FLOOR {
        0.0
    } else {
        x
    }
}

/// `(δ_B, δ_P) = (I - B2, I - r_P)`.
pub fn deficit_bounds(info: f64, b2: f64, r_protocol: f64) -> (f64, f64) {
    (clamp_noise(info - b2), clamp_noise(info - r_protocol))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReportOptions {
    /// Haar-random measurement bases tried on top of the computational one.
    pub random_bases: usize,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            random_bases: 50,
            seed: 0x5eed,
        }
    }
}

/// Everything the engine knows about one state.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub info_content: f64,
    pub b1: f64,
    pub b2: f64,
    pub sigma_star: SigmaStar,
    /// `None` when Alice's marginal is not maximally mixed.
    pub r_protocol: Option<f64>,
    pub delta_b: f64,
    pub delta_p: Option<f64>,
}

impl BoundReport {
    /// Report for an arbitrary state. `r_P` is the best rate over the
    /// computational basis and `opts.random_bases` Haar bases.
    pub fn for_state(rho: &HermitianOperator, dims: BipartiteDims, opts: ReportOptions) -> Result<Self> {
        let info = information_content(rho, dims)?;
        let b1 = b1_general(rho, dims)?;
        let opt = b2_best(rho, dims)?;
        let r_protocol = match r_protocol_sup(rho, dims, opts.random_bases, opts.seed) {
            Ok(r) => Some(r),
            Err(Error::MarginalNotMaximallyMixed { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(Self::assemble(info, b1, opt, r_protocol))
    }

    /// Report for a family member. B2 is minimized over the family and
    /// `r_P` is the family's closed form.
    pub fn for_family(family: &dyn StateFamily, d: usize, t: f64) -> Result<Self> {
        let rho = family.state(d, t)?;
        let dims = BipartiteDims::square(d);
        let info = information_content(&rho, dims)?;
        let b1 = b1_general(&rho, dims)?;
        let mut opt = b2_optimize_family(family, &rho, dims)?;
        if b1 < opt.value {
            opt = B2Optimum {
                value: b1,
                sigma_star: SigmaStar::State,
            };
        }
        let r_protocol = family.closed_form(d, t)?.r_protocol;
        Ok(Self::assemble(info, b1, opt, Some(r_protocol)))
    }

    fn assemble(info: f64, b1: f64, opt: B2Optimum, r_protocol: Option<f64>) -> Self {
        let delta_b = clamp_noise(info - opt.value);
        let delta_p = r_protocol.map(|r| clamp_noise(info - r));
        BoundReport {
            info_content: info,
            b1,
            b2: opt.value,
            sigma_star: opt.sigma_star,
            r_protocol,
            delta_b,
            delta_p,
        }
    }
}
