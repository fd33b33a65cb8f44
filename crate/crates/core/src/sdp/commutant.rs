use super::{FidelitySolver, SdpOptions, SdpProblem, SdpResult};
use crate::error::{Error, Result};
use crate::families::{Isotropic, StateFamily, Symmetry, Werner};

/// Exact solver for twirl-invariant ρ. The twirl maps any feasible Π to a
/// feasible `x Q1 + y Q2` with the same objective, so the program collapses
/// to a linear program in two variables.
#[derive(Clone, Copy, Debug, Default)]
pub struct CommutantLp;

impl FidelitySolver for CommutantLp {
    fn name(&self) -> &'static str {
        "commutant-lp"
    }

    fn solve(&self, problem: &SdpProblem, _opts: &SdpOptions) -> Result<SdpResult> {
        let symmetry = if Werner.contains(&problem.rho, problem.dims) {
            Symmetry::Uu
        } else if Isotropic.contains(&problem.rho, problem.dims) {
            Symmetry::UuStar
        } else {
            return Err(Error::NotInvariant("U⊗U or U⊗U*"));
        };
        commutant_reduce_lp(problem, symmetry)
    }
}

fn family_for(symmetry: Symmetry) -> &'static dyn StateFamily {
    match symmetry {
        Symmetry::Uu => &Werner,
        Symmetry::UuStar => &Isotropic,
    }
}

/// Eigenvalues of `(x Q1 + y Q2)^Γ` as linear forms `(p, q) ↦ p x + q y`.
fn pt_forms(symmetry: Symmetry, d: f64) -> [(f64, f64); 2] {
    match symmetry {
        // x P_S + y P_A = (x+y)/2 I + (x-y)/2 V, and V^Γ = d P+
        Symmetry::Uu => [((1.0 + d) / 2.0, (1.0 - d) / 2.0), (0.5, 0.5)],
        // x P+ + y (I - P+) = y I + (x-y) P+, and P+^Γ = V/d
        Symmetry::UuStar => [(1.0 / d, 1.0 - 1.0 / d), (-1.0 / d, 1.0 + 1.0 / d)],
    }
}

/// Solves the program restricted to the commutant of the given twirl.
pub fn commutant_reduce_lp(problem: &SdpProblem, symmetry: Symmetry) -> Result<SdpResult> {
    let family = family_for(symmetry);
    if !family.contains(&problem.rho, problem.dims) {
        return Err(Error::NotInvariant(symmetry.label()));
    }
    let d = problem.dims.local_dim()?;
    let q = family.class_projectors(d)?;
    let m = family.class_ranks(d);
    let (m1, m2) = (m[0] as f64, m[1] as f64);
    let w1 = problem.rho.inner(&q[0]);
    let w2 = problem.rho.inner(&q[1]);

    // constraints a x + b y ≥ r
    let mut cons = vec![(1.0, 0.0, 0.0), (-1.0, 0.0, -1.0), (0.0, 1.0, 0.0), (0.0, -1.0, -1.0)];
    let (lo, hi) = problem.variant.pt_band();
    for (p, qq) in pt_forms(symmetry, d as f64) {
        cons.push((p, qq, lo));
        if hi.is_finite() {
            cons.push((-p, -qq, -hi));
        }
    }

    // eliminate y on the trace line m1 x + m2 y = K
    let k = problem.k;
    let (mut xlo, mut xhi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (a, b, r) in cons {
        let coef = a - b * m1 / m2;
        let rhs = r - b * k / m2;
        if coef.abs() < 1e-14 {
            if rhs > 1e-12 {
                return Err(Error::Infeasible("commutant program has no feasible point".into()));
            }
        } else if coef > 0.0 {
            xlo = xlo.max(rhs / coef);
        } else {
            xhi = xhi.min(rhs / coef);
        }
    }
    if xlo > xhi + 1e-12 {
        return Err(Error::Infeasible("commutant program has no feasible point".into()));
    }
    let xhi = xhi.max(xlo);
    let y_of = |x: f64| (k - m1 * x) / m2;
    let obj = |x: f64| w1 * x + w2 * y_of(x);
    let x = if obj(xhi) >= obj(xlo) { xhi } else { xlo };
    let pi = &q[0].scale(x) + &q[1].scale(y_of(x));
    let residuals = problem.residuals(&pi)?;
    Ok(SdpResult {
        value: obj(x),
        pi,
        residuals,
        iterations: 0,
        converged: true,
        solver: "commutant-lp",
    })
}
