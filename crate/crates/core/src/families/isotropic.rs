use super::{max_entangled_projector, StateFamily, Symmetry};
use crate::bounds::closed_form::{self, ClosedFormBounds};
use crate::error::Result;
use crate::measures::{self, MeasurePoint};
use crate::operator::{BipartiteDims, HermitianOperator};

/// `ρ_iso = λ P+ + (1-λ) I/d²`, `λ ∈ [-1/(d²-1), 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsotropicParam {
    pub d: usize,
    pub lam: f64,
}

impl IsotropicParam {
    pub fn new(d: usize, lam: f64) -> Result<Self> {
        Isotropic.check_param(d, lam)?;
        let (lo, hi) = Isotropic.param_range(d);
        Ok(IsotropicParam {
            d,
            lam: lam.clamp(lo, hi),
        })
    }
}

pub fn isotropic(p: IsotropicParam) -> HermitianOperator {
    let n = p.d * p.d;
    &max_entangled_projector(p.d).scale(p.lam)
        + &HermitianOperator::identity(n).scale((1.0 - p.lam) / n as f64)
}

/// Fidelity with `P+`: `λ + (1-λ)/d²`.
pub(crate) fn singlet_fraction(d: usize, lam: f64) -> f64 {
    let d2 = (d * d) as f64;
    ((d2 - 1.0) * lam + 1.0) / d2
}

/// The `U⊗U*`-invariant family.
#[derive(Clone, Copy, Debug, Default)]
pub struct Isotropic;

impl StateFamily for Isotropic {
    fn name(&self) -> &'static str {
        "isotropic"
    }

    fn symmetry(&self) -> Symmetry {
        Symmetry::UuStar
    }

    fn param_range(&self, d: usize) -> (f64, f64) {
        let d2 = (d * d) as f64;
        (-1.0 / (d2 - 1.0), 1.0)
    }

    fn is_separable(&self, d: usize, lam: f64) -> bool {
        lam <= 1.0 / (d as f64 + 1.0)
    }

    fn state(&self, d: usize, lam: f64) -> Result<HermitianOperator> {
        Ok(isotropic(IsotropicParam::new(d, lam)?))
    }

    fn class_projectors(&self, d: usize) -> Result<Vec<HermitianOperator>> {
        super::check_local_dim(d)?;
        let p = max_entangled_projector(d);
        let rest = &HermitianOperator::identity(d * d) - &p;
        Ok(vec![p, rest])
    }

    fn class_ranks(&self, d: usize) -> Vec<usize> {
        vec![1, d * d - 1]
    }

    fn class_eigenvalues(&self, d: usize, lam: f64) -> Vec<f64> {
        let d2 = (d * d) as f64;
        vec![lam + (1.0 - lam) / d2, (1.0 - lam) / d2]
    }

    fn pt_eigenvalues(&self, d: usize, lam: f64) -> Vec<f64> {
        // (λP+ + (1-λ)I/d²)^Γ = λV/d + (1-λ)I/d²
        let df = d as f64;
        let base = (1.0 - lam) / (df * df);
        vec![base + lam / df, base - lam / df]
    }

    fn kinks(&self, _d: usize) -> Vec<f64> {
        vec![0.0]
    }

    fn project_param(&self, rho: &HermitianOperator, dims: BipartiteDims) -> Result<f64> {
        let d = dims.local_dim()?;
        dims.check(rho)?;
        let f = rho.inner(&max_entangled_projector(d)) / rho.trace();
        let d2 = (d * d) as f64;
        let (lo, hi) = self.param_range(d);
        Ok(((d2 * f - 1.0) / (d2 - 1.0)).clamp(lo, hi))
    }

    fn closed_form(&self, d: usize, lam: f64) -> Result<ClosedFormBounds> {
        closed_form::isotropic(d, lam)
    }

    fn measures(&self, d: usize, lam: f64) -> Result<MeasurePoint> {
        Ok(MeasurePoint {
            family: self.name(),
            d,
            param: lam,
            er: measures::er_isotropic(d, lam)?,
            ef: measures::ef_isotropic(d, lam)?,
            g_raw: Some(measures::isotropic_g_raw(d, lam)?),
        })
    }
}
