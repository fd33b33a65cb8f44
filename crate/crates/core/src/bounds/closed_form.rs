//! Piecewise closed forms for Werner and isotropic states.
//!
//! Two printed expressions for the isotropic family do not survive a numeric
//! check and are kept separately in [`isotropic_as_printed`]:
//! the last term of the entangled-branch B2 enters with a `-` sign there
//! (the optimum over `σ(p)` gives `+`), and the protocol rate expression does
//! not vanish at the maximally mixed state. [`isotropic`] uses the forms
//! that follow from the definitions.

use crate::entropy::neg_x_log2_x;
use crate::error::Result;
use crate::families::{Isotropic, StateFamily, Werner};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedFormBounds {
    pub b1: f64,
    pub b2: f64,
    pub r_protocol: f64,
}

/// `x log2 y` with `0 log 0 = 0`.
fn xlogy(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.log2()
    }
}

/// Entropy of a family member from its class eigenvalues and multiplicities.
fn class_entropy(family: &dyn StateFamily, d: usize, t: f64) -> f64 {
    family
        .class_eigenvalues(d, t)
        .into_iter()
        .zip(family.class_ranks(d))
        .map(|(e, m)| m as f64 * neg_x_log2_x(e))
        .sum()
}

/// `B1`, `B2` and `r_P` for `ρ_W(d, β)`.
pub fn werner(d: usize, beta: f64) -> Result<ClosedFormBounds> {
    Werner.check_param(d, beta)?;
    let beta = beta.clamp(-1.0, 1.0);
    let df = d as f64;
    let log_d = df.log2();
    let norm = df * df + df * beta;

    let b1 = if -2.0 / df < beta && beta < 0.0 {
        2.0 * log_d - norm.log2()
    } else {
        2.0 * log_d + ((1.0 + df * beta) / norm).abs().log2()
    };

    let entropy = class_entropy(&Werner, d, beta);
    let p_sym = (df * df + df) / 2.0 * (1.0 + beta) / norm;
    let p_anti = (df * df - df) / 2.0 * (1.0 - beta) / norm;
    let knot = -3.0 * df / (df * df + 2.0);
    let b2 = if beta < knot {
        2.0 * log_d
            - entropy
            - xlogy(p_sym, (df - 2.0) / df)
            - xlogy(p_anti, (df + 2.0) / df)
    } else if beta < -1.0 / df {
        let alpha = (1.0 + df * beta) / (df + beta);
        2.0 * log_d - entropy - xlogy(p_sym, 1.0 + alpha) - xlogy(p_anti, 1.0 - alpha)
    } else {
        2.0 * log_d - entropy
    };

    let r_protocol =
        log_d + xlogy((1.0 + beta) / (df + beta), 1.0 + beta) - (df + beta).log2();

    Ok(ClosedFormBounds { b1, b2, r_protocol })
}

fn isotropic_parts(d: usize, lam: f64) -> (f64, f64, f64, f64) {
    let df = d as f64;
    let d2 = df * df;
    let f = (1.0 + lam * (d2 - 1.0)) / d2;
    let entropy = class_entropy(&Isotropic, d, lam);
    let p = ((df + 1.0) * lam - 1.0) / ((1.0 - d2) * (lam - 1.0) + df);
    (df, f, entropy, p)
}

fn isotropic_b1(d: usize, lam: f64) -> f64 {
    let df = d as f64;
    if lam < 0.0 {
        (1.0 - lam * (df + 1.0)).log2()
    } else {
        (lam * (df - 1.0) + 1.0).log2()
    }
}

/// `B1`, `B2` and `r_P` for `ρ_iso(d, λ)`.
pub fn isotropic(d: usize, lam: f64) -> Result<ClosedFormBounds> {
    Isotropic.check_param(d, lam)?;
    let (lo, hi) = Isotropic.param_range(d);
    let lam = lam.clamp(lo, hi);
    let (df, f, entropy, p) = isotropic_parts(d, lam);
    let d2 = df * df;
    let log_d = df.log2();

    let b2 = if lam <= 1.0 / (df + 1.0) {
        2.0 * log_d - entropy
    } else if lam >= 1.0 {
        log_d
    } else {
        2.0 * log_d - entropy
            + ((1.0 + p * (df - 1.0)) / (1.0 - p)).log2()
            + f * ((1.0 - p) / (1.0 + p * (d2 - 1.0))).log2()
    };

    // Alice's outcome leaves Bob with eigenvalues a (once) and b (d-1 times).
    let a = lam + (1.0 - lam) / df;
    let b = (1.0 - lam) / df;
    let r_protocol = log_d + xlogy(a, a) + (df - 1.0) * xlogy(b, b);

    Ok(ClosedFormBounds {
        b1: isotropic_b1(d, lam),
        b2,
        r_protocol,
    })
}

/// Isotropic expressions exactly as printed, kept for discrepancy reports.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsotropicPrinted {
    pub b2: f64,
    pub r_protocol: f64,
}

pub fn isotropic_as_printed(d: usize, lam: f64) -> Result<IsotropicPrinted> {
    Isotropic.check_param(d, lam)?;
    let (lo, hi) = Isotropic.param_range(d);
    let lam = lam.clamp(lo, hi);
    let (df, f, entropy, p) = isotropic_parts(d, lam);
    let d2 = df * df;
    let log_d = df.log2();
    let b2 = if lam <= 1.0 / (df + 1.0) {
        2.0 * log_d - entropy
    } else if lam >= 1.0 {
        log_d
    } else {
        2.0 * log_d - entropy + ((1.0 + p * (df - 1.0)) / (1.0 - p)).log2()
            - f * ((1.0 - p) / (1.0 + p * (d2 - 1.0))).log2()
    };
    let c = (1.0 - lam) / df;
    let r_protocol = log_d + (lam + c) * (1.0 + c).log2();
    Ok(IsotropicPrinted { b2, r_protocol })
}

/// Dispatch on a family name.
pub fn closed_form_bounds(family: &str, d: usize, param: f64) -> Result<ClosedFormBounds> {
    crate::families::registry().get(family)?.closed_form(d, param)
}
