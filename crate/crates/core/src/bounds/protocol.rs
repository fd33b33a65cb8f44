//! Lower bounds from the one-way protocol: Alice measures a rank-1 basis,
//! announces the outcome, and Bob compresses what is left.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::entropy::von_neumann_entropy;
use crate::error::{Error, Result};
use crate::operator::{BipartiteDims, HermitianOperator, C64};
use crate::random::haar_unitary;

use super::validate_state;

/// Tolerance for `Tr_B ρ = I/d_A` and for measurement completeness.
pub const MARGINAL_TOL: f64 = 1e-9;

/// A complete rank-1 projective measurement on subsystem A.
#[derive(Clone, Debug)]
pub struct Measurement {
    projectors: Vec<HermitianOperator>,
}

impl Measurement {
    pub fn new(projectors: Vec<HermitianOperator>) -> Result<Self> {
        let n = projectors
            .first()
            .ok_or_else(|| Error::InvalidMeasurement("no projectors".into()))?
            .dim();
        if projectors.len() != n {
            return Err(Error::InvalidMeasurement(format!(
                "{} projectors on a {n}-dimensional space",
                projectors.len()
            )));
        }
        let mut sum = HermitianOperator::zeros(n);
        for (i, p) in projectors.iter().enumerate() {
            if p.dim() != n {
                return Err(Error::InvalidMeasurement(format!("projector {i} has wrong dimension")));
            }
            let sq = HermitianOperator::from_matrix_unchecked(p.matrix() * p.matrix());
            if sq.max_abs_diff(p) > MARGINAL_TOL || (p.trace() - 1.0).abs() > MARGINAL_TOL {
                return Err(Error::InvalidMeasurement(format!("element {i} is not a rank-1 projector")));
            }
            sum = &sum + p;
        }
        if sum.max_abs_diff(&HermitianOperator::identity(n)) > MARGINAL_TOL {
            return Err(Error::InvalidMeasurement("projectors do not sum to identity".into()));
        }
        Ok(Measurement { projectors })
    }

    /// Projectors onto the columns of a unitary.
    pub fn from_basis(u: &DMatrix<C64>) -> Result<Self> {
        let projectors = (0..u.ncols())
            .map(|j| HermitianOperator::projector(&u.column(j).into_owned()))
            .collect();
        Self::new(projectors)
    }

    pub fn computational(d: usize) -> Self {
        Measurement {
            projectors: (0..d).map(|i| HermitianOperator::basis_projector(d, i)).collect(),
        }
    }

    pub fn haar<R: rand::Rng + ?Sized>(d: usize, rng: &mut R) -> Self {
        Self::from_basis(&haar_unitary(d, rng)).expect("Haar unitary yields a valid basis")
    }

    pub fn dim(&self) -> usize {
        self.projectors.len()
    }

    pub fn projectors(&self) -> &[HermitianOperator] {
        &self.projectors
    }
}

fn check_marginal(rho: &HermitianOperator, dims: BipartiteDims) -> Result<()> {
    let marginal = rho.partial_trace_b(dims)?;
    let deviation = marginal.max_abs_diff(&HermitianOperator::maximally_mixed(dims.d_a));
    if deviation > MARGINAL_TOL {
        return Err(Error::MarginalNotMaximallyMixed { deviation });
    }
    Ok(())
}

/// Unnormalized conditional state `Tr_A[(P ⊗ I) ρ]`.
fn conditional(rho: &HermitianOperator, p: &HermitianOperator, dims: BipartiteDims) -> DMatrix<C64> {
    let (da, db) = (dims.d_a, dims.d_b);
    let m = rho.matrix();
    DMatrix::from_fn(db, db, |b, b2| {
        let mut acc = C64::new(0.0, 0.0);
        for a in 0..da {
            for a2 in 0..da {
                let pa = p.get(a2, a);
                if pa != C64::new(0.0, 0.0) {
                    acc += pa * m[(a * db + b, a2 * db + b2)];
                }
            }
        }
        acc
    })
}

/// Rate of the protocol with Alice's measurement `meas`:
/// `log2 d_B - Σ_i p_i S(ρ_B^i)`.
pub fn r_protocol_general(rho: &HermitianOperator, dims: BipartiteDims, meas: &Measurement) -> Result<f64> {
    dims.check(rho)?;
    validate_state(rho)?;
    if meas.dim() != dims.d_a {
        return Err(Error::DimensionMismatch {
            expected: dims.d_a,
            got: meas.dim(),
        });
    }
    check_marginal(rho, dims)?;
    let mut rate = (dims.d_b as f64).log2();
    for p in meas.projectors() {
        let cond = HermitianOperator::from_matrix_unchecked(conditional(rho, p, dims));
        let prob = cond.trace();
        if prob <= 1e-15 {
            continue;
        }
        rate -= prob * von_neumann_entropy(&cond.scale(1.0 / prob))?;
    }
    Ok(rate)
}

/// Best rate over the computational basis and `n_random` Haar-random bases
/// drawn from a ChaCha8 stream seeded with `seed`.
pub fn r_protocol_sup(rho: &HermitianOperator, dims: BipartiteDims, n_random: usize, seed: u64) -> Result<f64> {
    let mut best = r_protocol_general(rho, dims, &Measurement::computational(dims.d_a))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..n_random {
        let meas = Measurement::haar(dims.d_a, &mut rng);
        best = best.max(r_protocol_general(rho, dims, &meas)?);
    }
    Ok(best)
}
