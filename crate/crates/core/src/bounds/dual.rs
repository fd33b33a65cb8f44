//! Dual certificates for the PPT fidelity programs.
//!
//! Any Hermitian `D` gives an upper bound on
//! `max Tr[Πρ]` over `0 ⪯ Π ⪯ I`, `Tr Π = K` and the PT constraint.

use crate::error::{Error, Result};
use crate::operator::{BipartiteDims, HermitianOperator};

fn check(rho: &HermitianOperator, d: &HermitianOperator, k: f64, dims: BipartiteDims) -> Result<()> {
    dims.check(rho)?;
    dims.check(d)?;
    if !(k > 0.0 && k <= dims.total() as f64) {
        return Err(Error::OutOfRange {
            name: "K",
            value: k,
            lo: 0.0,
            hi: dims.total() as f64,
        });
    }
    Ok(())
}

/// `Tr(ρ - D)_+ + K λ_max(D^Γ)` for the program with `Π^Γ ⪰ 0`.
pub fn dual_fidelity_bound(
    rho: &HermitianOperator,
    d: &HermitianOperator,
    k: f64,
    dims: BipartiteDims,
) -> Result<f64> {
    check(rho, d, k, dims)?;
    let gap = (rho - d).trace_positive_part();
    Ok(gap + k * d.partial_transpose(dims)?.max_eigenvalue())
}

fn mixed_value(pt_eigs: &[f64], gap: f64, lam: f64, k: f64, ks: f64) -> f64 {
    let abs_sum: f64 = pt_eigs.iter().map(|m| (m - lam).abs()).sum();
    gap + abs_sum / ks + lam * k
}

fn check_ks(ks: f64) -> Result<()> {
    if !(ks > 0.0 && ks.is_finite()) {
        return Err(Error::OutOfRange {
            name: "K_s",
            value: ks,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    Ok(())
}

/// `Tr(ρ - D)_+ + (1/K_s) Tr|D^Γ - λI| + λK` for the program with
/// `-I/K_s ⪯ Π^Γ ⪯ I/K_s`.
pub fn dual_fidelity_bound_mixed(
    rho: &HermitianOperator,
    d: &HermitianOperator,
    lam: f64,
    k: f64,
    ks: f64,
    dims: BipartiteDims,
) -> Result<f64> {
    check(rho, d, k, dims)?;
    check_ks(ks)?;
    let gap = (rho - d).trace_positive_part();
    let eigs = d.partial_transpose(dims)?.eigenvalues();
    Ok(mixed_value(&eigs, gap, lam, k, ks))
}

/// Minimizes [`dual_fidelity_bound_mixed`] over λ. The objective is convex
/// and piecewise linear in λ with breakpoints at the eigenvalues of `D^Γ`,
/// so the minimum sits on one of them. Returns `(λ*, value)`.
///
/// Requires `K·K_s ≤ d_A d_B`; otherwise the primal is infeasible and the
/// dual is unbounded below.
pub fn minimize_mixed_over_lambda(
    rho: &HermitianOperator,
    d: &HermitianOperator,
    k: f64,
    ks: f64,
    dims: BipartiteDims,
) -> Result<(f64, f64)> {
    check(rho, d, k, dims)?;
    check_ks(ks)?;
    let n = dims.total() as f64;
    if k * ks > n * (1.0 + 1e-12) {
        return Err(Error::Infeasible(format!("K·K_s = {} exceeds dimension {n}", k * ks)));
    }
    let gap = (rho - d).trace_positive_part();
    let eigs = d.partial_transpose(dims)?.eigenvalues();
    let best = eigs
        .iter()
        .map(|&lam| (lam, mixed_value(&eigs, gap, lam, k, ks)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty spectrum");
    Ok(best)
}
