//! Random unitaries, states and Hermitian operators.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::operator::{HermitianOperator, C64};

fn ginibre<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<C64> {
    DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    })
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of
/// `R`'s diagonal folded back into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<C64> {
    let qr = ginibre(n, rng).qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Hermitian operator with i.i.d. Gaussian entries (GUE up to scale).
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianOperator {
    let g = ginibre(n, rng);
    HermitianOperator::from_matrix_unchecked(&g + g.adjoint())
}

/// Full-rank random density operator `G G† / Tr(G G†)`.
pub fn random_state<R: Rng + ?Sized>(n: usize, rng: &mut R) -> HermitianOperator {
    let g = ginibre(n, rng);
    let m = &g * g.adjoint();
    let tr: f64 = (0..n).map(|i| m[(i, i)].re).sum();
    HermitianOperator::from_matrix_unchecked(m).scale(1.0 / tr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 3, 5] {
            let u = haar_unitary(n, &mut rng);
            let gram = u.adjoint() * &u;
            assert!((gram - DMatrix::<C64>::identity(n, n)).camax() < 1e-12);
        }
    }

    #[test]
    fn random_state_is_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let r = random_state(6, &mut rng);
        assert!((r.trace() - 1.0).abs() < 1e-12);
        assert!(r.min_eigenvalue() > 0.0);
    }
}
