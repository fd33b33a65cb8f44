use super::{check_local_dim, structural_operators, StateFamily, Symmetry, PARAM_SLACK};
use crate::bounds::closed_form::{self, ClosedFormBounds};
use crate::error::{Error, Result};
use crate::measures::{self, MeasurePoint};
use crate::operator::{BipartiteDims, HermitianOperator};

/// `ρ_W = (I + βV) / (d² + dβ)`, `β ∈ [-1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WernerParam {
    pub d: usize,
    pub beta: f64,
}

impl WernerParam {
    pub fn new(d: usize, beta: f64) -> Result<Self> {
        Werner.check_param(d, beta)?;
        Ok(WernerParam {
            d,
            beta: beta.clamp(-1.0, 1.0),
        })
    }
}

pub fn werner(p: WernerParam) -> HermitianOperator {
    let d = p.d as f64;
    let s = structural_operators(p.d).expect("validated dimension");
    let id = HermitianOperator::identity(p.d * p.d);
    (&id + &s.flip.scale(p.beta)).scale(1.0 / (d * d + d * p.beta))
}

/// `p P_A/N_A + (1-p) P_S/N_S`, the Werner state with antisymmetric weight `p`.
pub fn werner_from_antisymmetric_weight(d: usize, p: f64) -> Result<HermitianOperator> {
    check_local_dim(d)?;
    if !(-PARAM_SLACK..=1.0 + PARAM_SLACK).contains(&p) {
        return Err(Error::OutOfRange {
            name: "antisymmetric weight",
            value: p,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let s = structural_operators(d)?;
    let (n_s, n_a) = dims_sym_antisym(d);
    Ok(&s.antisym.scale(p / n_a) + &s.sym.scale((1.0 - p) / n_s))
}

fn dims_sym_antisym(d: usize) -> (f64, f64) {
    let d = d as f64;
    ((d * d + d) / 2.0, (d * d - d) / 2.0)
}

/// Antisymmetric weight `Tr(ρ_W P_A)` of the Werner state with parameter β.
pub(crate) fn antisym_weight(d: usize, beta: f64) -> f64 {
    let (_, n_a) = dims_sym_antisym(d);
    let d = d as f64;
    n_a * (1.0 - beta) / (d * d + d * beta)
}

/// The `U⊗U`-invariant family.
#[derive(Clone, Copy, Debug, Default)]
pub struct Werner;

impl StateFamily for Werner {
    fn name(&self) -> &'static str {
        "werner"
    }

    fn symmetry(&self) -> Symmetry {
        Symmetry::Uu
    }

    fn param_range(&self, _d: usize) -> (f64, f64) {
        (-1.0, 1.0)
    }

    fn is_separable(&self, d: usize, beta: f64) -> bool {
        beta >= -1.0 / d as f64
    }

    fn state(&self, d: usize, beta: f64) -> Result<HermitianOperator> {
        Ok(werner(WernerParam::new(d, beta)?))
    }

    fn class_projectors(&self, d: usize) -> Result<Vec<HermitianOperator>> {
        let s = structural_operators(d)?;
        Ok(vec![s.sym, s.antisym])
    }

    fn class_ranks(&self, d: usize) -> Vec<usize> {
        vec![(d * d + d) / 2, (d * d - d) / 2]
    }

    fn class_eigenvalues(&self, d: usize, beta: f64) -> Vec<f64> {
        let d = d as f64;
        let norm = d * d + d * beta;
        vec![(1.0 + beta) / norm, (1.0 - beta) / norm]
    }

    fn pt_eigenvalues(&self, d: usize, beta: f64) -> Vec<f64> {
        // (I + βV)^Γ = I + βd P+
        let d = d as f64;
        let norm = d * d + d * beta;
        vec![(1.0 + d * beta) / norm, 1.0 / norm]
    }

    fn kinks(&self, d: usize) -> Vec<f64> {
        vec![-2.0 / d as f64, 0.0]
    }

    fn project_param(&self, rho: &HermitianOperator, dims: BipartiteDims) -> Result<f64> {
        let d = dims.local_dim()?;
        dims.check(rho)?;
        let s = structural_operators(d)?;
        let p = rho.inner(&s.antisym) / rho.trace();
        let (_, n_a) = dims_sym_antisym(d);
        let df = d as f64;
        Ok(((n_a - p * df * df) / (n_a + p * df)).clamp(-1.0, 1.0))
    }

    fn closed_form(&self, d: usize, beta: f64) -> Result<ClosedFormBounds> {
        closed_form::werner(d, beta)
    }

    fn measures(&self, d: usize, beta: f64) -> Result<MeasurePoint> {
        Ok(MeasurePoint {
            family: self.name(),
            d,
            param: beta,
            er: measures::er_inf_werner(d, beta)?,
            ef: measures::ef_werner(d, beta)?,
            g_raw: None,
        })
    }
}
