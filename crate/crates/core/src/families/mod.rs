//! Symmetric state families and the registry that selects them by name.
//!
//! Each family is a one-parameter set of states invariant under a group
//! twirl (`U⊗U` for Werner, `U⊗U*` for isotropic). All members of a family
//! share the same spectral projectors ("classes"), which is what lets the
//! bounds engine evaluate relative entropies against family members without
//! diagonalizing anything.

mod isotropic;
mod werner;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use nalgebra::{DMatrix, DVector};

use crate::bounds::closed_form::ClosedFormBounds;
use crate::error::{Error, Result};
use crate::measures::MeasurePoint;
use crate::operator::{BipartiteDims, HermitianOperator, C64};

pub use isotropic::{isotropic, Isotropic, IsotropicParam};
pub use werner::{werner, werner_from_antisymmetric_weight, Werner, WernerParam};
pub(crate) use isotropic::singlet_fraction as isotropic_singlet_fraction;
pub(crate) use werner::antisym_weight as werner_antisym_weight;

/// Tolerance used when deciding whether a state belongs to a family.
pub const INVARIANCE_TOL: f64 = 1e-10;

/// Slack on parameter-range checks for values produced by arithmetic.
pub(crate) const PARAM_SLACK: f64 = 1e-12;

/// The symmetry group that defines a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    /// `U ⊗ U`
    Uu,
    /// `U ⊗ U*`
    UuStar,
}

impl Symmetry {
    pub fn label(&self) -> &'static str {
        match self {
            Symmetry::Uu => "U⊗U",
            Symmetry::UuStar => "U⊗U*",
        }
    }
}

/// Flip, symmetric/antisymmetric projectors and the maximally entangled
/// projector on `d ⊗ d`.
#[derive(Clone, Debug)]
pub struct StructuralOperators {
    pub flip: HermitianOperator,
    pub sym: HermitianOperator,
    pub antisym: HermitianOperator,
    pub max_entangled: HermitianOperator,
}

pub fn structural_operators(d: usize) -> Result<StructuralOperators> {
    check_local_dim(d)?;
    let n = d * d;
    let mut v = DMatrix::zeros(n, n);
    for i in 0..d {
        for j in 0..d {
            v[(i * d + j, j * d + i)] = C64::new(1.0, 0.0);
        }
    }
    let flip = HermitianOperator::new(v)?;
    let id = HermitianOperator::identity(n);
    let sym = (&id + &flip).scale(0.5);
    let antisym = (&id - &flip).scale(0.5);
    Ok(StructuralOperators {
        flip,
        sym,
        antisym,
        max_entangled: max_entangled_projector(d),
    })
}

/// `|Φ+⟩⟨Φ+|` with `|Φ+⟩ = d^{-1/2} Σ_i |ii⟩`.
pub fn max_entangled_projector(d: usize) -> HermitianOperator {
    let mut phi = DVector::zeros(d * d);
    let amp = 1.0 / (d as f64).sqrt();
    for i in 0..d {
        phi[i * d + i] = C64::new(amp, 0.0);
    }
    HermitianOperator::projector(&phi)
}

pub(crate) fn check_local_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!(
            "local dimension must be at least 2, got {d}"
        )));
    }
    Ok(())
}

/// Projector onto `|00⟩^{⊗m}`, as an operator on `2^m ⊗ 2^m`.
pub fn product_pure_pairs(m: u32) -> Result<HermitianOperator> {
    if m == 0 {
        return Err(Error::InvalidArgument("need at least one pair".into()));
    }
    let d = 1usize << m;
    Ok(HermitianOperator::basis_projector(d * d, 0))
}

/// A one-parameter symmetric state family.
///
/// Members are `Σ_k e_k(t) Q_k` for fixed orthogonal projectors `Q_k`
/// (the family's classes) of rank `m_k`.
pub trait StateFamily: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn symmetry(&self) -> Symmetry;

    /// Closed parameter interval of valid states at local dimension `d`.
    fn param_range(&self, d: usize) -> (f64, f64);

    fn is_separable(&self, d: usize, t: f64) -> bool;

    fn state(&self, d: usize, t: f64) -> Result<HermitianOperator>;

    fn class_projectors(&self, d: usize) -> Result<Vec<HermitianOperator>>;

    fn class_ranks(&self, d: usize) -> Vec<usize>;

    /// Eigenvalue of member `t` on each class.
    fn class_eigenvalues(&self, d: usize, t: f64) -> Vec<f64>;

    /// Distinct eigenvalues of the partial transpose of member `t`.
    fn pt_eigenvalues(&self, d: usize, t: f64) -> Vec<f64>;

    /// Parameters at which `‖σ(t)^Γ‖_op` switches branch.
    fn kinks(&self, d: usize) -> Vec<f64>;

    /// Parameter of the family member with the same class weights as `rho`.
    fn project_param(&self, rho: &HermitianOperator, dims: BipartiteDims) -> Result<f64>;

    fn closed_form(&self, d: usize, t: f64) -> Result<ClosedFormBounds>;

    fn measures(&self, d: usize, t: f64) -> Result<MeasurePoint>;

    fn check_param(&self, d: usize, t: f64) -> Result<()> {
        check_local_dim(d)?;
        let (lo, hi) = self.param_range(d);
        if !(t >= lo - PARAM_SLACK && t <= hi + PARAM_SLACK) {
            return Err(Error::OutOfRange {
                name: "family parameter",
                value: t,
                lo,
                hi,
            });
        }
        Ok(())
    }

    /// Group average, computed as the projection onto the span of the
    /// class projectors. Linear, so it also accepts non-states.
    fn twirl(&self, rho: &HermitianOperator, dims: BipartiteDims) -> Result<HermitianOperator> {
        let d = dims.local_dim()?;
        check_local_dim(d)?;
        dims.check(rho)?;
        let projectors = self.class_projectors(d)?;
        let ranks = self.class_ranks(d);
        let mut out = HermitianOperator::zeros(d * d);
        for (q, m) in projectors.iter().zip(ranks) {
            out = &out + &q.scale(rho.inner(q) / m as f64);
        }
        Ok(out)
    }

    /// Whether `rho` is fixed by the twirl within [`INVARIANCE_TOL`].
    fn contains(&self, rho: &HermitianOperator, dims: BipartiteDims) -> bool {
        match self.twirl(rho, dims) {
            Ok(t) => t.max_abs_diff(rho) <= INVARIANCE_TOL,
            Err(_) => false,
        }
    }
}

/// Name-indexed collection of state families.
#[derive(Debug, Default, Clone)]
pub struct FamilyRegistry {
    families: BTreeMap<&'static str, Arc<dyn StateFamily>>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(Werner));
        r.register(Arc::new(Isotropic));
        r
    }

    pub fn register(&mut self, family: Arc<dyn StateFamily>) {
        self.families.insert(family.name(), family);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn StateFamily>> {
        self.families
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.families.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn StateFamily>> {
        self.families.values()
    }

    /// First registered family (in name order) that contains `rho`.
    pub fn detect(
        &self,
        rho: &HermitianOperator,
        dims: BipartiteDims,
    ) -> Option<Arc<dyn StateFamily>> {
        if dims.local_dim().is_err() || dims.check(rho).is_err() {
            return None;
        }
        self.iter().find(|f| f.contains(rho, dims)).cloned()
    }
}

/// The process-wide registry of built-in families.
pub fn registry() -> &'static FamilyRegistry {
    static REGISTRY: OnceLock<FamilyRegistry> = OnceLock::new();
    REGISTRY.get_or_init(FamilyRegistry::builtin)
}

/// `∫ (U⊗U) ρ (U⊗U)† dU`.
pub fn twirl_uu(rho: &HermitianOperator, dims: BipartiteDims) -> Result<HermitianOperator> {
    Werner.twirl(rho, dims)
}

/// `∫ (U⊗U*) ρ (U⊗U*)† dU`.
pub fn twirl_uustar(rho: &HermitianOperator, dims: BipartiteDims) -> Result<HermitianOperator> {
    Isotropic.twirl(rho, dims)
}
