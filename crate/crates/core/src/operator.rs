//! Dense Hermitian operators on bipartite spaces.
//!
//! [`HermitianOperator`] is the carrier for every state, reference state,
//! dual variable and constraint operator in the crate. It keeps its matrix
//! exactly Hermitian (validated on construction, symmetrized afterwards), so
//! spectral routines never have to guess.
//!
//! Index convention for a space `C^dA ⊗ C^dB`: basis vector `|a⟩|b⟩` has
//! flat index `a * dB + b`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Elementwise tolerance for Hermiticity of constructed operators.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Eigenvalues in `(-EIG_CUTOFF, 0)` are treated as zero.
pub const EIG_CUTOFF: f64 = 1e-10;

/// Local dimensions of a bipartite system `C^dA ⊗ C^dB`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BipartiteDims {
    pub d_a: usize,
    pub d_b: usize,
}

impl BipartiteDims {
    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a == 0 || d_b == 0 {
            return Err(Error::InvalidArgument(format!(
                "local dimensions must be positive, got {d_a} x {d_b}"
            )));
        }
        Ok(BipartiteDims { d_a, d_b })
    }

    /// `d ⊗ d`.
    pub fn square(d: usize) -> Self {
        BipartiteDims { d_a: d, d_b: d }
    }

    pub fn total(&self) -> usize {
        self.d_a * self.d_b
    }

    /// The common local dimension, or an error for `dA != dB`.
    pub fn local_dim(&self) -> Result<usize> {
        if self.d_a == self.d_b {
            Ok(self.d_a)
        } else {
            Err(Error::NotSquareBipartite {
                d_a: self.d_a,
                d_b: self.d_b,
            })
        }
    }

    pub fn check(&self, op: &HermitianOperator) -> Result<()> {
        if op.dim() != self.total() {
            return Err(Error::DimensionMismatch {
                expected: self.total(),
                got: op.dim(),
            });
        }
        Ok(())
    }

    /// Dimensions of `n` copies regrouped as `(A^n) ⊗ (B^n)`.
    pub fn power(&self, n: u32) -> Self {
        BipartiteDims {
            d_a: self.d_a.pow(n),
            d_b: self.d_b.pow(n),
        }
    }
}

impl fmt::Display for BipartiteDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.d_a, self.d_b)
    }
}

/// Spectral decomposition with eigenvalues sorted in descending order.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    /// Column `i` is the eigenvector for `eigenvalues[i]`.
    pub eigenvectors: DMatrix<C64>,
}

impl EigenSystem {
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let n = self.eigenvalues.len();
        let mut scaled = self.eigenvectors.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            for i in 0..n {
                scaled[(i, j)] *= lambda;
            }
        }
        &scaled * self.eigenvectors.adjoint()
    }

    /// `Σ f(λ_i) |v_i⟩⟨v_i|`.
    pub fn rebuild_with(&self, f: impl Fn(f64) -> f64) -> HermitianOperator {
        let n = self.eigenvalues.len();
        let mut scaled = self.eigenvectors.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            for i in 0..n {
                scaled[(i, j)] *= w;
            }
        }
        HermitianOperator::from_matrix_unchecked(&scaled * self.eigenvectors.adjoint())
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }
}

/// Full spectral decomposition of a raw Hermitian matrix.
pub fn hermitian_eigensystem(m: &DMatrix<C64>) -> Result<EigenSystem> {
    let op = HermitianOperator::new(m.clone())?;
    Ok(op.eigensystem())
}

/// The four norm-like spectral quantities used by the bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorNorms {
    pub op_norm: f64,
    pub trace_norm: f64,
    pub lambda_max: f64,
    pub max_abs_eig: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    m: DMatrix<C64>,
}

fn hermitian_deviation(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

impl HermitianOperator {
    /// Validates Hermiticity to [`HERMITIAN_TOL`].
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        Self::with_tolerance(m, HERMITIAN_TOL)
    }

    pub fn with_tolerance(m: DMatrix<C64>, tol: f64) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidArgument("empty operator".into()));
        }
        let deviation = hermitian_deviation(&m);
        if !(deviation <= tol) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::from_matrix_unchecked(m))
    }

    /// Symmetrizes without validation; for results Hermitian by construction.
    pub(crate) fn from_matrix_unchecked(m: DMatrix<C64>) -> Self {
        let adj = m.adjoint();
        HermitianOperator {
            m: (m + adj) * C64::new(0.5, 0.0),
        }
    }

    pub fn from_real(m: DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(|x| C64::new(x, 0.0)))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        HermitianOperator { m }
    }

    pub fn identity(n: usize) -> Self {
        HermitianOperator {
            m: DMatrix::identity(n, n),
        }
    }

    pub fn zeros(n: usize) -> Self {
        HermitianOperator {
            m: DMatrix::zeros(n, n),
        }
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self::identity(n).scale(1.0 / n as f64)
    }

    /// `|v⟩⟨v|` (no normalization).
    pub fn projector(v: &DVector<C64>) -> Self {
        HermitianOperator::from_matrix_unchecked(v * v.adjoint())
    }

    /// `|i⟩⟨i|` in the computational basis of dimension `n`.
    pub fn basis_projector(n: usize, i: usize) -> Self {
        let mut m = DMatrix::zeros(n, n);
        m[(i, i)] = C64::new(1.0, 0.0);
        HermitianOperator { m }
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.m[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.m[(i, i)].re).sum()
    }

    /// `Re Tr(A B)`; exact for Hermitian pairs.
    pub fn inner(&self, other: &HermitianOperator) -> f64 {
        self.m
            .iter()
            .zip(other.m.transpose().iter())
            .map(|(a, b)| (a * b).re)
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest elementwise modulus of `A - B`.
    pub fn max_abs_diff(&self, other: &HermitianOperator) -> f64 {
        self.m
            .iter()
            .zip(other.m.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, s: f64) -> Self {
        HermitianOperator {
            m: &self.m * C64::new(s, 0.0),
        }
    }

    pub fn kron(&self, other: &HermitianOperator) -> Self {
        HermitianOperator {
            m: self.m.kronecker(&other.m),
        }
    }

    /// `U A U†` for a square (typically unitary) `U`.
    pub fn conjugate_by(&self, u: &DMatrix<C64>) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: u.nrows(),
            });
        }
        Ok(HermitianOperator::from_matrix_unchecked(
            u * &self.m * u.adjoint(),
        ))
    }

    /// `A^Γ`: transpose of the second tensor factor.
    pub fn partial_transpose(&self, dims: BipartiteDims) -> Result<Self> {
        dims.check(self)?;
        let (da, db) = (dims.d_a, dims.d_b);
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for a in 0..da {
            for b in 0..db {
                for a2 in 0..da {
                    for b2 in 0..db {
                        out[(a * db + b, a2 * db + b2)] = self.m[(a * db + b2, a2 * db + b)];
                    }
                }
            }
        }
        Ok(HermitianOperator { m: out })
    }

    /// `Tr_A`, an operator on B.
    pub fn partial_trace_a(&self, dims: BipartiteDims) -> Result<Self> {
        dims.check(self)?;
        let (da, db) = (dims.d_a, dims.d_b);
        let mut out = DMatrix::zeros(db, db);
        for b in 0..db {
            for b2 in 0..db {
                out[(b, b2)] = (0..da).map(|a| self.m[(a * db + b, a * db + b2)]).sum();
            }
        }
        Ok(HermitianOperator { m: out })
    }

    /// `Tr_B`, an operator on A.
    pub fn partial_trace_b(&self, dims: BipartiteDims) -> Result<Self> {
        dims.check(self)?;
        let (da, db) = (dims.d_a, dims.d_b);
        let mut out = DMatrix::zeros(da, da);
        for a in 0..da {
            for a2 in 0..da {
                out[(a, a2)] = (0..db).map(|b| self.m[(a * db + b, a2 * db + b)]).sum();
            }
        }
        Ok(HermitianOperator { m: out })
    }

    /// `n` copies of a bipartite operator, regrouped so that all A factors
    /// come first: the result lives on `(A^n) ⊗ (B^n)`.
    pub fn tensor_power(&self, dims: BipartiteDims, n: u32) -> Result<(Self, BipartiteDims)> {
        dims.check(self)?;
        if n == 0 {
            return Err(Error::InvalidArgument("tensor power needs n >= 1".into()));
        }
        let out_dims = dims.power(n);
        let big = out_dims.total();
        let (da, db) = (dims.d_a, dims.d_b);
        // digits of a grouped index (A-block, B-block) -> per-copy local index
        let split = |idx: usize| -> Vec<usize> {
            let (mut ia, mut ib) = (idx / out_dims.d_b, idx % out_dims.d_b);
            let mut local = vec![0; n as usize];
            for k in (0..n as usize).rev() {
                let (a, b) = (ia % da, ib % db);
                ia /= da;
                ib /= db;
                local[k] = a * db + b;
            }
            local
        };
        let digits: Vec<Vec<usize>> = (0..big).map(split).collect();
        let mut out = DMatrix::zeros(big, big);
        for r in 0..big {
            for c in 0..big {
                let mut z = C64::new(1.0, 0.0);
                for k in 0..n as usize {
                    z *= self.m[(digits[r][k], digits[c][k])];
                    if z == C64::new(0.0, 0.0) {
                        break;
                    }
                }
                out[(r, c)] = z;
            }
        }
        Ok((HermitianOperator::from_matrix_unchecked(out), out_dims))
    }

    pub fn eigensystem(&self) -> EigenSystem {
        let eig = SymmetricEigen::new(self.m.clone());
        let n = self.dim();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
        let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let eigenvectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
        EigenSystem {
            eigenvalues,
            eigenvectors,
        }
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.m.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues().last().expect("non-empty operator")
    }

    /// `H_+ = Σ_{λ_i ≥ 0} λ_i |ψ_i⟩⟨ψ_i|`.
    pub fn positive_part(&self) -> Self {
        self.eigensystem().rebuild_with(|l| l.max(0.0))
    }

    pub fn norms(&self) -> OperatorNorms {
        norms_from_eigenvalues(&self.eigenvalues())
    }

    /// `Tr (A)_+`, the sum of positive eigenvalues.
    pub fn trace_positive_part(&self) -> f64 {
        self.eigenvalues().iter().filter(|&&l| l > 0.0).sum()
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    /// Checks a density operator: PSD to `psd_tol`, trace 1 to `trace_tol`.
    pub fn validate_state(&self, psd_tol: f64, trace_tol: f64) -> Result<()> {
        let tr = self.trace();
        if !((tr - 1.0).abs() <= trace_tol) {
            return Err(Error::BadTrace { trace: tr });
        }
        let min = self.min_eigenvalue();
        if min < -psd_tol {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(())
    }
}

pub(crate) fn norms_from_eigenvalues(ev: &[f64]) -> OperatorNorms {
    let max_abs_eig = ev.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    OperatorNorms {
        op_norm: max_abs_eig,
        trace_norm: ev.iter().map(|l| l.abs()).sum(),
        lambda_max: ev.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        max_abs_eig,
    }
}

/// Free-function form of [`HermitianOperator::partial_transpose`].
pub fn partial_transpose(a: &HermitianOperator, dims: BipartiteDims) -> Result<HermitianOperator> {
    a.partial_transpose(dims)
}

pub fn positive_part(h: &HermitianOperator) -> HermitianOperator {
    h.positive_part()
}

pub fn operator_norms(a: &HermitianOperator) -> OperatorNorms {
    a.norms()
}

impl Add for &HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: &HermitianOperator) -> HermitianOperator {
        HermitianOperator { m: &self.m + &rhs.m }
    }
}

impl Sub for &HermitianOperator {
    type Output = HermitianOperator;
    fn sub(self, rhs: &HermitianOperator) -> HermitianOperator {
        HermitianOperator { m: &self.m - &rhs.m }
    }
}

impl Add for HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: HermitianOperator) -> HermitianOperator {
        HermitianOperator { m: self.m + rhs.m }
    }
}

impl Sub for HermitianOperator {
    type Output = HermitianOperator;
    fn sub(self, rhs: HermitianOperator) -> HermitianOperator {
        HermitianOperator { m: self.m - rhs.m }
    }
}

impl Mul<f64> for &HermitianOperator {
    type Output = HermitianOperator;
    fn mul(self, s: f64) -> HermitianOperator {
        self.scale(s)
    }
}

impl Neg for &HermitianOperator {
    type Output = HermitianOperator;
    fn neg(self) -> HermitianOperator {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn bell_plus_2() -> HermitianOperator {
        let mut v = DVector::zeros(4);
        v[0] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        v[3] = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        HermitianOperator::projector(&v)
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.5, 0.0), c(0.4, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            HermitianOperator::new(m.clone()),
            Err(Error::NotHermitian { .. })
        ));
        assert!(hermitian_eigensystem(&m).is_err());
    }

    #[test]
    fn rejects_non_square() {
        let m = DMatrix::<C64>::zeros(2, 3);
        assert!(matches!(
            HermitianOperator::new(m),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn product_projector_is_pt_invariant() {
        for (da, db) in [(2, 2), (2, 3), (3, 2)] {
            let dims = BipartiteDims::new(da, db).unwrap();
            let p = HermitianOperator::basis_projector(da * db, 0);
            assert_eq!(p.partial_transpose(dims).unwrap(), p);
        }
    }

    #[test]
    fn pt_of_bell_state_is_half_flip() {
        // direct index swap on the 4x4 matrix
        let p = bell_plus_2();
        let pt = p.partial_transpose(BipartiteDims::square(2)).unwrap();
        let mut expected = DMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                expected[(i * 2 + j, j * 2 + i)] = c(0.5, 0.0);
            }
        }
        assert!((pt.matrix() - expected).camax() < 1e-15);
    }

    #[test]
    fn pt_dimension_mismatch() {
        let a = HermitianOperator::identity(5);
        assert!(matches!(
            a.partial_transpose(BipartiteDims::square(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn eigenvalues_descending() {
        let a = HermitianOperator::from_diagonal(&[1.0, 3.0, -2.0]);
        let ev = a.eigenvalues();
        assert_eq!(ev.len(), 3);
        for (got, want) in ev.iter().zip([3.0, 1.0, -2.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        for l in HermitianOperator::identity(4).eigenvalues() {
            assert!((l - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn eigensystem_reconstructs_complex_matrix() {
        let m = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(2.0, 0.0),
                c(1.0, -1.0),
                c(0.0, 0.5),
                c(1.0, 1.0),
                c(-1.0, 0.0),
                c(0.3, 0.0),
                c(0.0, -0.5),
                c(0.3, 0.0),
                c(0.5, 0.0),
            ],
        );
        let es = hermitian_eigensystem(&m).unwrap();
        assert!((es.reconstruct() - &m).camax() < 1e-12);
        let gram = es.eigenvectors.adjoint() * &es.eigenvectors;
        assert!((gram - DMatrix::<C64>::identity(3, 3)).camax() < 1e-12);
    }

    #[test]
    fn positive_part_examples() {
        let h = HermitianOperator::from_diagonal(&[1.0, -2.0]);
        let hp = h.positive_part();
        assert!(hp.max_abs_diff(&HermitianOperator::from_diagonal(&[1.0, 0.0])) < 1e-14);

        let x = HermitianOperator::from_real(DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]))
            .unwrap();
        let xp = x.positive_part();
        assert!((xp.trace() - 1.0).abs() < 1e-14);
        // rank-1 projector: P^2 = P
        let sq = HermitianOperator::from_matrix_unchecked(xp.matrix() * xp.matrix());
        assert!(sq.max_abs_diff(&xp) < 1e-14);
        assert!((xp.get(0, 1).re - 0.5).abs() < 1e-14);

        let psd = HermitianOperator::from_diagonal(&[0.2, 0.8]);
        assert!(psd.positive_part().max_abs_diff(&psd) < 1e-14);
    }

    #[test]
    fn norms_examples() {
        let n = HermitianOperator::identity(9).norms();
        assert_eq!((n.op_norm, n.trace_norm), (1.0, 9.0));
        let z = HermitianOperator::zeros(4).norms();
        assert_eq!((z.op_norm, z.trace_norm, z.lambda_max, z.max_abs_eig), (0.0, 0.0, 0.0, 0.0));
        let h = HermitianOperator::from_diagonal(&[0.5, 0.5, 0.5, -0.5]).norms();
        assert_eq!((h.op_norm, h.trace_norm, h.lambda_max), (0.5, 2.0, 0.5));
    }

    #[test]
    fn partial_traces() {
        let dims = BipartiteDims::new(2, 3).unwrap();
        let a = HermitianOperator::from_diagonal(&[0.1, 0.2, 0.3, 0.05, 0.15, 0.2]);
        let ra = a.partial_trace_b(dims).unwrap();
        let rb = a.partial_trace_a(dims).unwrap();
        assert!((ra.get(0, 0).re - 0.6).abs() < 1e-15);
        assert!((rb.get(2, 2).re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tensor_power_regroups_factors() {
        // P00 ⊗ P00 regrouped is still the |00⟩ projector on (A1A2)(B1B2)
        let p = HermitianOperator::basis_projector(4, 0);
        let (p2, dims2) = p.tensor_power(BipartiteDims::square(2), 2).unwrap();
        assert_eq!(dims2, BipartiteDims::square(4));
        assert_eq!(p2, HermitianOperator::basis_projector(16, 0));

        // |01⟩ on each copy: A-part |00⟩, B-part |11⟩ -> index 0*4 + 3
        let q = HermitianOperator::basis_projector(4, 1);
        let (q2, _) = q.tensor_power(BipartiteDims::square(2), 2).unwrap();
        assert_eq!(q2, HermitianOperator::basis_projector(16, 3));

        // spectrum of a tensor square is the pairwise products
        let r = HermitianOperator::from_diagonal(&[0.4, 0.3, 0.2, 0.1]);
        let (r2, _) = r.tensor_power(BipartiteDims::square(2), 2).unwrap();
        assert!((r2.trace() - 1.0).abs() < 1e-14);
        assert!((r2.max_eigenvalue() - 0.16).abs() < 1e-14);
    }
}
