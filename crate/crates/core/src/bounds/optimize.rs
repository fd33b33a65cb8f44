//! One-dimensional minimization of `B2(ρ, σ(t))` over a symmetric family.

use std::fmt;

use crate::entropy::von_neumann_entropy;
use crate::error::{Error, Result};
use crate::families::{registry, StateFamily};
use crate::operator::{BipartiteDims, HermitianOperator, EIG_CUTOFF};

use super::{b1_general, validate_state};

/// Coarse grid spacing over the family parameter.
pub const GRID_STEP: f64 = 1e-3;

/// Golden-section stopping width on the parameter.
pub const PARAM_TOL: f64 = 1e-9;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum inside `[a, b]`.
pub(crate) fn golden_section(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let key = |v: f64| if v.is_nan() { f64::INFINITY } else { v };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = key(f(c));
    let mut fd = key(f(d));
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = key(f(c));
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = key(f(d));
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Grid scan over `[lo, hi]` (plus `extra` points) followed by golden-section
/// refinement around the best grid point. Returns `(argmin, min)`.
pub(crate) fn minimize_scalar(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    step: f64,
    extra: &[f64],
    tol: f64,
) -> (f64, f64) {
    let key = |v: f64| if v.is_nan() { f64::INFINITY } else { v };
    let n = (((hi - lo) / step).ceil() as usize).max(1);
    let mut pts: Vec<f64> = (0..=n)
        .map(|i| lo + (hi - lo) * i as f64 / n as f64)
        .chain(extra.iter().copied().filter(|t| (lo..=hi).contains(t)))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let vals: Vec<f64> = pts.iter().map(|&t| key(f(t))).collect();
    let best = (0..pts.len())
        .min_by(|&i, &j| vals[i].total_cmp(&vals[j]))
        .expect("grid is non-empty");
    let a = pts[best.saturating_sub(1)];
    let b = pts[(best + 1).min(pts.len() - 1)];
    let (tg, vg) = golden_section(&f, a, b, tol);
    if vg < vals[best] {
        (tg, vg)
    } else {
        (pts[best], vals[best])
    }
}

/// The reference state achieving a reported B2 value.
#[derive(Clone, Debug, PartialEq)]
pub enum SigmaStar {
    /// A family member `σ(t)`.
    Family { family: &'static str, param: f64 },
    /// `σ = ρ`, which reproduces B1.
    State,
}

impl fmt::Display for SigmaStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaStar::Family { family, param } => write!(f, "{family}({param})"),
            SigmaStar::State => write!(f, "rho"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct B2Optimum {
    pub value: f64,
    pub sigma_star: SigmaStar,
}

/// `t ↦ B2(ρ, σ(t))` for a fixed ρ, using the fact that every family member
/// is diagonal in the class projectors: `log2 σ(t) = Σ_k log2 e_k(t) Q_k`.
/// Only `S(ρ)` and the class weights `Tr(ρ Q_k)` of ρ are needed.
pub struct FamilyObjective<'a> {
    family: &'a dyn StateFamily,
    d: usize,
    log_dim: f64,
    entropy: f64,
    weights: Vec<f64>,
}

impl<'a> FamilyObjective<'a> {
    pub fn new(family: &'a dyn StateFamily, rho: &HermitianOperator, dims: BipartiteDims) -> Result<Self> {
        let d = dims.local_dim()?;
        dims.check(rho)?;
        validate_state(rho)?;
        let weights = family
            .class_projectors(d)?
            .iter()
            .map(|q| rho.inner(q))
            .collect();
        Ok(FamilyObjective {
            family,
            d,
            log_dim: (dims.total() as f64).log2(),
            entropy: von_neumann_entropy(rho)?,
            weights,
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let eig = self.family.class_eigenvalues(self.d, t);
        let mut cross = 0.0;
        for (&w, &e) in self.weights.iter().zip(&eig) {
            if e <= 0.0 {
                if w > EIG_CUTOFF {
                    return f64::INFINITY;
                }
                continue;
            }
            cross -= w * e.log2();
        }
        let pt_norm = self
            .family
            .pt_eigenvalues(self.d, t)
            .into_iter()
            .fold(0.0f64, |m, l| m.max(l.abs()));
        self.log_dim + (cross - self.entropy) + pt_norm.log2()
    }

    pub fn minimize(&self, extra: &[f64]) -> (f64, f64) {
        let (lo, hi) = self.family.param_range(self.d);
        let mut candidates = self.family.kinks(self.d);
        candidates.extend_from_slice(extra);
        minimize_scalar(|t| self.eval(t), lo, hi, GRID_STEP, &candidates, PARAM_TOL)
    }
}

/// `min_t B2(ρ, σ(t))` over one family. Valid as an upper bound for any ρ;
/// the optimum over all σ when ρ itself is invariant under the family's twirl.
pub fn b2_optimize_family(
    family: &dyn StateFamily,
    rho: &HermitianOperator,
    dims: BipartiteDims,
) -> Result<B2Optimum> {
    let obj = FamilyObjective::new(family, rho, dims)?;
    // the twirled ρ is a candidate so a family member is never beaten by B1
    let own = family.project_param(rho, dims)?;
    let (param, value) = obj.minimize(&[own]);
    Ok(B2Optimum {
        value,
        sigma_star: SigmaStar::Family {
            family: family.name(),
            param,
        },
    })
}

/// B2 for a Werner or isotropic state, minimized over the matching family.
pub fn b2_optimize_symmetric(rho: &HermitianOperator, dims: BipartiteDims) -> Result<B2Optimum> {
    let family = registry()
        .detect(rho, dims)
        .ok_or(Error::NotInvariant("U⊗U or U⊗U*"))?;
    b2_optimize_family(family.as_ref(), rho, dims)
}

/// Best available B2 for an arbitrary state: the minimum of `B2(ρ, ρ) = B1`
/// and every registered family restriction (square dimensions only).
pub fn b2_best(rho: &HermitianOperator, dims: BipartiteDims) -> Result<B2Optimum> {
    let mut best = B2Optimum {
        value: b1_general(rho, dims)?,
        sigma_star: SigmaStar::State,
    };
    if dims.local_dim().is_ok() {
        for family in registry().iter() {
            let opt = b2_optimize_family(family.as_ref(), rho, dims)?;
            if opt.value < best.value {
                best = opt;
            }
        }
    }
    Ok(best)
}
