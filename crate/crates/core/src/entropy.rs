//! Entropic functionals, all in bits.

use crate::error::{Error, Result};
use crate::operator::{HermitianOperator, EIG_CUTOFF};

/// Trace tolerance for density operators.
pub const TRACE_TOL: f64 = 1e-9;

/// Tolerance on probabilities and distribution normalization.
pub const PROB_TOL: f64 = 1e-9;

/// `-x log2 x` with `0 log 0 = 0`.
#[inline]
pub(crate) fn neg_x_log2_x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Shannon entropy of a spectrum, clamping `(-EIG_CUTOFF, 0)` noise.
fn spectral_entropy(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in eigenvalues {
        if l < -EIG_CUTOFF {
            return Err(Error::NotPositive { min_eigenvalue: l });
        }
        s += neg_x_log2_x(l);
    }
    Ok(s)
}

fn check_trace(rho: &HermitianOperator) -> Result<()> {
    let tr = rho.trace();
    if !((tr - 1.0).abs() <= TRACE_TOL) {
        return Err(Error::BadTrace { trace: tr });
    }
    Ok(())
}

/// `S(ρ) = -Tr ρ log2 ρ`.
pub fn von_neumann_entropy(rho: &HermitianOperator) -> Result<f64> {
    check_trace(rho)?;
    spectral_entropy(&rho.eigenvalues())
}

/// `S(ρ|σ) = Tr ρ log2 ρ - Tr ρ log2 σ`, evaluated in σ's eigenbasis.
///
/// Returns `f64::INFINITY` when ρ puts more than [`EIG_CUTOFF`] weight on the
/// kernel of σ.
pub fn relative_entropy(rho: &HermitianOperator, sigma: &HermitianOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: sigma.dim(),
        });
    }
    check_trace(rho)?;
    check_trace(sigma)?;
    let s_rho = spectral_entropy(&rho.eigenvalues())?;

    let es = sigma.eigensystem();
    if es.min() < -EIG_CUTOFF {
        return Err(Error::NotPositive {
            min_eigenvalue: es.min(),
        });
    }
    let n = rho.dim();
    let rm = rho.matrix();
    let mut cross = 0.0;
    for (j, &s) in es.eigenvalues.iter().enumerate() {
        let v = es.eigenvectors.column(j);
        // ⟨v|ρ|v⟩
        let mut w = 0.0;
        for a in 0..n {
            let mut row = num_complex::Complex64::new(0.0, 0.0);
            for b in 0..n {
                row += rm[(a, b)] * v[b];
            }
            w += (v[a].conj() * row).re;
        }
        if s <= EIG_CUTOFF {
            if w > EIG_CUTOFF {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross -= w * s.log2();
    }
    Ok(cross - s_rho)
}

/// Binary entropy `H2(p)`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(-PROB_TOL..=1.0 + PROB_TOL).contains(&p) {
        return Err(Error::OutOfRange {
            name: "p",
            value: p,
            lo: 0.0,
            hi: 1.0,
        });
    }
    let p = p.clamp(0.0, 1.0);
    Ok(neg_x_log2_x(p) + neg_x_log2_x(1.0 - p))
}

/// Shannon entropy of a probability vector.
pub fn shannon_entropy(dist: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for &p in dist {
        if !(-PROB_TOL..=1.0 + PROB_TOL).contains(&p) {
            return Err(Error::OutOfRange {
                name: "probability",
                value: p,
                lo: 0.0,
                hi: 1.0,
            });
        }
        total += p;
    }
    if !((total - 1.0).abs() <= PROB_TOL) {
        return Err(Error::InvalidArgument(format!(
            "distribution sums to {total}, expected 1"
        )));
    }
    Ok(dist.iter().map(|&p| neg_x_log2_x(p.max(0.0))).sum())
}

/// `H2` for arguments already known to be probabilities up to rounding.
pub(crate) fn h2(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    neg_x_log2_x(p) + neg_x_log2_x(1.0 - p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    use crate::operator::C64;

    fn bell(d: usize) -> HermitianOperator {
        let mut v = DVector::zeros(d * d);
        for i in 0..d {
            v[i * d + i] = C64::new(1.0 / (d as f64).sqrt(), 0.0);
        }
        HermitianOperator::projector(&v)
    }

    #[test]
    fn entropy_of_maximally_mixed() {
        for d in 2..=4 {
            let s = von_neumann_entropy(&HermitianOperator::maximally_mixed(d * d)).unwrap();
            assert!((s - 2.0 * (d as f64).log2()).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_of_pure_states() {
        assert!(von_neumann_entropy(&bell(3)).unwrap().abs() < 1e-10);
        assert_eq!(
            von_neumann_entropy(&HermitianOperator::basis_projector(4, 2)).unwrap(),
            0.0
        );
    }

    #[test]
    fn entropy_rejects_non_states() {
        let neg = HermitianOperator::from_diagonal(&[1.1, -0.1]);
        assert!(matches!(
            von_neumann_entropy(&neg),
            Err(Error::NotPositive { .. })
        ));
        let short = HermitianOperator::from_diagonal(&[0.5, 0.4]);
        assert!(matches!(
            von_neumann_entropy(&short),
            Err(Error::BadTrace { .. })
        ));
    }

    #[test]
    fn relative_entropy_examples() {
        let r = HermitianOperator::from_diagonal(&[0.7, 0.2, 0.1]);
        assert!(relative_entropy(&r, &r).unwrap().abs() < 1e-12);

        for d in 2..=3 {
            let s = relative_entropy(&bell(d), &HermitianOperator::maximally_mixed(d * d)).unwrap();
            assert!((s - 2.0 * (d as f64).log2()).abs() < 1e-10);
        }

        let p00 = HermitianOperator::basis_projector(4, 0);
        assert_eq!(relative_entropy(&p00, &bell(2).scale(1.0)).unwrap(), f64::INFINITY);
        // Support inside: finite.
        assert!(relative_entropy(&bell(2), &bell(2)).unwrap().abs() < 1e-9);
    }

    #[test]
    fn relative_entropy_dimension_mismatch() {
        let a = HermitianOperator::maximally_mixed(2);
        let b = HermitianOperator::maximally_mixed(3);
        assert!(relative_entropy(&a, &b).is_err());
    }

    #[test]
    fn binary_and_shannon() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.2).is_err());
        assert_eq!(shannon_entropy(&[0.25; 4]).unwrap(), 2.0);
        assert!(shannon_entropy(&[0.5, 0.6]).is_err());
        assert!(shannon_entropy(&[1.2, -0.2]).is_err());
    }
}
