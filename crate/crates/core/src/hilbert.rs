//! Dense complex Hermitian linear algebra for small systems.
//!
//! Everything here works on dimensions up to a few dozen. Eigenvalues are
//! always taken from the explicitly Hermitized matrix `(m + m†)/2` so that
//! roundoff asymmetry never leaks into the spectrum.
//!
//! Entropies use base-2 logarithms throughout.

use std::fmt;
use std::ops::Index;

use nalgebra::linalg::SymmetricEigen;
use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub use nalgebra::Complex;

pub type C64 = Complex<f64>;

/// Maximum tolerated `|m_ij - conj(m_ji)|`.
pub const TOL_HERM: f64 = 1e-10;
/// Maximum tolerated `|Tr ρ - 1|`.
pub const TOL_TRACE: f64 = 1e-10;
/// Most negative eigenvalue still accepted as positive semidefinite.
pub const TOL_PSD: f64 = 1e-9;

/// Square complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare(m.nrows(), m.ncols()));
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidParams("matrix dimension must be positive".into()));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self(m))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        Self::new(DMatrix::from_fn(dim, dim, f))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        Self::from_fn(diag.len(), |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::new(DMatrix::identity(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// `max |m_ij - conj(m_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(self.0.kronecker(&other.0))
    }

    pub fn scaled(&self, factor: f64) -> ComplexMatrix {
        ComplexMatrix(self.0.map(|z| z * factor))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn hermitized(&self) -> DMatrix<C64> {
        (&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim(), self.dim())?;
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|j| {
                    let z = self.0[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Eigenvalues of a Hermitian matrix in descending order.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.0)
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors as columns.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let err = m.hermiticity_error();
    if err > TOL_HERM {
        return Err(Error::NotHermitian(err));
    }
    let eig = SymmetricEigen::try_new(m.hermitized(), f64::EPSILON, 0)
        .ok_or(Error::EigenNonConvergent)?;
    let n = m.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok((values, vectors))
}

/// Hermitian, unit-trace, positive-semidefinite matrix over a tensor product
/// of subsystems.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    subsystem_dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, subsystem_dims: Vec<usize>) -> Result<Self> {
        let product: usize = subsystem_dims.iter().product();
        if subsystem_dims.is_empty() || subsystem_dims.contains(&0) || product != matrix.dim() {
            return Err(Error::DimensionMismatch(product, matrix.dim()));
        }
        let herm = matrix.hermiticity_error();
        if herm > TOL_HERM {
            return Err(Error::NotHermitian(herm));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > TOL_TRACE {
            return Err(Error::NotDensityMatrix(format!(
                "trace {:.12} + {:.3e}i",
                tr.re, tr.im
            )));
        }
        let min = hermitian_eigenvalues(&matrix)?
            .last()
            .copied()
            .unwrap_or(0.0);
        if min < -TOL_PSD {
            return Err(Error::NotDensityMatrix(format!(
                "minimum eigenvalue {min:.3e}"
            )));
        }
        Ok(Self {
            matrix,
            subsystem_dims,
        })
    }

    /// `|ψ⟩⟨ψ|` for a normalized ket.
    pub fn from_pure(ket: &[C64], subsystem_dims: Vec<usize>) -> Result<Self> {
        let m = ComplexMatrix::from_fn(ket.len(), |i, j| ket[i] * ket[j].conj())?;
        Self::new(m, subsystem_dims)
    }

    pub fn maximally_mixed(subsystem_dims: Vec<usize>) -> Result<Self> {
        let d: usize = subsystem_dims.iter().product();
        Self::new(ComplexMatrix::identity(d)?.scaled(1.0 / d as f64), subsystem_dims)
    }

    /// `ρ_A ⊗ ρ_B`, concatenating subsystem layouts.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<Self> {
        let mut dims = self.subsystem_dims.clone();
        dims.extend_from_slice(&other.subsystem_dims);
        Self::new(self.matrix.kron(&other.matrix), dims)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn subsystem_dims(&self) -> &[usize] {
        &self.subsystem_dims
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.matrix)
    }

    fn bipartite(&self, index: usize) -> Result<(usize, usize)> {
        match self.subsystem_dims.as_slice() {
            &[a, b] if index < 2 => Ok((a, b)),
            _ => Err(Error::BadSubsystemIndex {
                index,
                dims: self.subsystem_dims.clone(),
            }),
        }
    }
}

impl Index<(usize, usize)> for DensityMatrix {
    type Output = C64;

    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.matrix[idx]
    }
}

/// Partial transpose of a bipartite state with respect to subsystem 0 (A)
/// or 1 (B).
pub fn partial_transpose(rho: &DensityMatrix, subsystem: usize) -> Result<ComplexMatrix> {
    let (da, db) = rho.bipartite(subsystem)?;
    let m = rho.matrix();
    ComplexMatrix::from_fn(da * db, |row, col| {
        let (i, j) = (row / db, row % db);
        let (k, l) = (col / db, col % db);
        if subsystem == 0 {
            m[(k * db + j, i * db + l)]
        } else {
            m[(i * db + l, k * db + j)]
        }
    })
}

/// Reduced state of subsystem `keep` of a bipartite state.
pub fn partial_trace(rho: &DensityMatrix, keep: usize) -> Result<DensityMatrix> {
    let (da, db) = rho.bipartite(keep)?;
    let m = rho.matrix();
    let reduced = if keep == 0 {
        ComplexMatrix::from_fn(da, |a, c| (0..db).map(|b| m[(a * db + b, c * db + b)]).sum())?
    } else {
        ComplexMatrix::from_fn(db, |b, d| (0..da).map(|a| m[(a * db + b, a * db + d)]).sum())?
    };
    let dim = reduced.dim();
    DensityMatrix::new(reduced, vec![dim])
}

/// Sum of the absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?.iter().map(|x| x.abs()).sum())
}

/// `-Σ λ log2 λ`. Eigenvalues in `(-TOL_PSD, 0)` count as zero.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    entropy_of_spectrum(&rho.eigenvalues()?)
}

pub(crate) fn entropy_of_spectrum(spectrum: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in spectrum {
        if lambda < -TOL_PSD {
            return Err(Error::NotDensityMatrix(format!(
                "negative eigenvalue {lambda:.3e} in entropy"
            )));
        }
        if lambda > 0.0 {
            s -= lambda * lambda.log2();
        }
    }
    Ok(s.max(0.0))
}

/// `sqrt(½ Tr[(ρ - σ)²])`.
pub fn hs_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch(rho.dim(), sigma.dim()));
    }
    let sq: f64 = rho
        .matrix()
        .as_matrix()
        .iter()
        .zip(sigma.matrix().as_matrix().iter())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum();
    Ok((0.5 * sq).sqrt())
}

/// Density matrix carrying an encoded phase `φ`.
///
/// Each entry depends on `φ` as `entry(φ) = entry(φ_ref) · e^{i m_ij (φ - φ_ref)}`
/// with an integer mask `m` that is antisymmetric with a zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiFamily {
    base: DensityMatrix,
    phi_ref: f64,
    phase_mask: Vec<i8>,
}

impl PhiFamily {
    pub fn new(base: DensityMatrix, phi_ref: f64, phase_mask: Vec<i8>) -> Result<Self> {
        let n = base.dim();
        if phase_mask.len() != n * n {
            return Err(Error::DimensionMismatch(n * n, phase_mask.len()));
        }
        for i in 0..n {
            for j in 0..n {
                if phase_mask[i * n + j] != -phase_mask[j * n + i] {
                    return Err(Error::InvalidParams(format!(
                        "phase mask not antisymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self {
            base,
            phi_ref,
            phase_mask,
        })
    }

    pub fn base(&self) -> &DensityMatrix {
        &self.base
    }

    pub fn phi_ref(&self) -> f64 {
        self.phi_ref
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn mask(&self, i: usize, j: usize) -> i8 {
        self.phase_mask[i * self.dim() + j]
    }

    /// Member of the family at phase `phi`.
    pub fn at(&self, phi: f64) -> Result<DensityMatrix> {
        let shift = phi - self.phi_ref;
        let m = self.base.matrix();
        let shifted = ComplexMatrix::from_fn(self.dim(), |i, j| {
            m[(i, j)] * C64::from_polar(1.0, f64::from(self.mask(i, j)) * shift)
        })?;
        DensityMatrix::new(shifted, self.base.subsystem_dims.clone())
    }

    /// Same family re-anchored at a different reference phase.
    pub fn rebased(&self, phi: f64) -> Result<Self> {
        Ok(Self {
            base: self.at(phi)?,
            phi_ref: phi,
            phase_mask: self.phase_mask.clone(),
        })
    }

    /// `dρ/dφ`, entrywise `i m_ij ρ_ij`.
    pub fn derivative(&self) -> ComplexMatrix {
        let m = self.base.matrix();
        ComplexMatrix(DMatrix::from_fn(self.dim(), self.dim(), |i, j| {
            C64::new(0.0, f64::from(self.mask(i, j))) * m[(i, j)]
        }))
    }

    /// Multiply every entry by a real factor, keeping the phase structure.
    /// The result is re-validated as a density matrix.
    pub fn map_entries(&self, mut factor: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let m = self.base.matrix();
        let mapped = ComplexMatrix::from_fn(self.dim(), |i, j| m[(i, j)] * factor(i, j))?;
        Ok(Self {
            base: DensityMatrix::new(mapped, self.base.subsystem_dims.clone())?,
            phi_ref: self.phi_ref,
            phase_mask: self.phase_mask.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn ket_00_12() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut ket = vec![c(0.0); 6];
        ket[0] = c(s);
        ket[5] = c(s);
        DensityMatrix::from_pure(&ket, vec![2, 3]).unwrap()
    }

    fn diag(d: &[f64]) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::from_real_diagonal(d).unwrap(), vec![d.len()]).unwrap()
    }

    #[test]
    fn eigenvalues_of_diagonal_are_sorted_descending() {
        let m = ComplexMatrix::from_real_diagonal(&[-1.0, 1.0]).unwrap();
        assert_eq!(hermitian_eigenvalues(&m).unwrap(), vec![1.0, -1.0]);
    }

    #[test]
    fn maximally_mixed_qubit_spectrum() {
        let rho = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        let ev = rho.eigenvalues().unwrap();
        assert!((ev[0] - 0.5).abs() < 1e-15 && (ev[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = ComplexMatrix::from_fn(2, |i, j| if i < j { c(1.0) } else { c(0.0) }).unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian(_))));
        assert!(matches!(trace_norm(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn partial_transpose_of_bell_like_state_has_negative_half() {
        let pt = partial_transpose(&ket_00_12(), 0).unwrap();
        let ev = hermitian_eigenvalues(&pt).unwrap();
        let expected = [0.5, 0.5, 0.5, 0.0, 0.0, -0.5];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{ev:?}");
        }
        assert!((trace_norm(&pt).unwrap() - 2.0).abs() < 1e-12);
        // eigen-pair residuals as an independent check on the solver
        let (vals, vecs) = hermitian_eigen(&pt).unwrap();
        for k in 0..6 {
            let v = vecs.column(k);
            let r = pt.as_matrix() * v - v * c(vals[k]);
            assert!(r.norm() < 1e-12);
        }
    }

    #[test]
    fn partial_transpose_of_product_state() {
        let rho_a = DensityMatrix::new(
            ComplexMatrix::from_fn(2, |i, j| match (i, j) {
                (0, 0) => c(0.7),
                (1, 1) => c(0.3),
                (0, 1) => C64::new(0.1, 0.2),
                _ => C64::new(0.1, -0.2),
            })
            .unwrap(),
            vec![2],
        )
        .unwrap();
        let rho_b = diag(&[0.5, 0.3, 0.2]);
        let prod = rho_a.tensor(&rho_b).unwrap();
        let pt = partial_transpose(&prod, 0).unwrap();
        let transposed_a = ComplexMatrix::new(rho_a.matrix().as_matrix().transpose()).unwrap();
        let expected = transposed_a.kron(rho_b.matrix());
        assert!(pt.max_abs_diff(&expected) < 1e-15);
        assert!(*hermitian_eigenvalues(&pt).unwrap().last().unwrap() > -1e-12);
    }

    #[test]
    fn partial_transpose_fixes_identity() {
        let rho = DensityMatrix::maximally_mixed(vec![2, 3]).unwrap();
        for k in 0..2 {
            let pt = partial_transpose(&rho, k).unwrap();
            assert!(pt.max_abs_diff(rho.matrix()) < 1e-16);
        }
    }

    #[test]
    fn bad_subsystem_index() {
        let rho = DensityMatrix::maximally_mixed(vec![2, 3]).unwrap();
        assert!(matches!(
            partial_transpose(&rho, 2),
            Err(Error::BadSubsystemIndex { .. })
        ));
        assert!(matches!(
            partial_trace(&rho, 5),
            Err(Error::BadSubsystemIndex { .. })
        ));
        let single = DensityMatrix::maximally_mixed(vec![6]).unwrap();
        assert!(partial_trace(&single, 0).is_err());
    }

    #[test]
    fn partial_trace_cases() {
        let a = diag(&[0.25, 0.75]);
        let b = diag(&[0.2, 0.3, 0.5]);
        let prod = a.tensor(&b).unwrap();
        let ra = partial_trace(&prod, 0).unwrap();
        assert!(ra.matrix().max_abs_diff(a.matrix()) < 1e-15);

        let mm = DensityMatrix::maximally_mixed(vec![2, 3]).unwrap();
        let rb = partial_trace(&mm, 1).unwrap();
        let third = DensityMatrix::maximally_mixed(vec![3]).unwrap();
        assert!(rb.matrix().max_abs_diff(third.matrix()) < 1e-15);

        // uniform superposition with e^{iφ} on |00⟩, traced down to the qubit
        let phi = 0.83_f64;
        let mut ket = vec![c(1.0 / 6f64.sqrt()); 6];
        ket[0] = C64::from_polar(1.0 / 6f64.sqrt(), phi);
        let rho = DensityMatrix::from_pure(&ket, vec![2, 3]).unwrap();
        let q = partial_trace(&rho, 0).unwrap();
        let off = (C64::from_polar(1.0, phi) + c(2.0)) / 6.0;
        assert!((q[(0, 0)] - c(0.5)).norm() < 1e-15);
        assert!((q[(1, 1)] - c(0.5)).norm() < 1e-15);
        assert!((q[(0, 1)] - off).norm() < 1e-15);
    }

    #[test]
    fn trace_norm_examples() {
        assert!((trace_norm(ket_00_12().matrix()).unwrap() - 1.0).abs() < 1e-12);
        let m = ComplexMatrix::from_real_diagonal(&[0.5, -0.5]).unwrap();
        assert!((trace_norm(&m).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn entropy_examples() {
        assert!(von_neumann_entropy(&ket_00_12()).unwrap().abs() < 1e-12);
        let mm = DensityMatrix::maximally_mixed(vec![3]).unwrap();
        assert!((von_neumann_entropy(&mm).unwrap() - 3f64.log2()).abs() < 1e-12);
        let s = von_neumann_entropy(&diag(&[0.75, 0.25])).unwrap();
        assert!((s - (2.0 - 0.75 * 3f64.log2())).abs() < 1e-12);
        assert!((s - 0.811_278_124_459_132_9).abs() < 1e-12);
    }

    #[test]
    fn hs_distance_examples() {
        let a = diag(&[0.75, 0.25]);
        assert_eq!(hs_distance(&a, &a).unwrap(), 0.0);
        let up = diag(&[1.0, 0.0]);
        let down = diag(&[0.0, 1.0]);
        assert!((hs_distance(&up, &down).unwrap() - 1.0).abs() < 1e-15);
        let mm = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        assert!((hs_distance(&a, &mm).unwrap() - 0.25).abs() < 1e-15);
        let three = DensityMatrix::maximally_mixed(vec![3]).unwrap();
        assert!(hs_distance(&a, &three).is_err());
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = ComplexMatrix::from_real_diagonal(&[0.5, 0.6]).unwrap();
        assert!(DensityMatrix::new(bad_trace, vec![2]).is_err());
        let not_psd = ComplexMatrix::from_real_diagonal(&[1.5, -0.5]).unwrap();
        assert!(DensityMatrix::new(not_psd, vec![2]).is_err());
        let wrong_dims = ComplexMatrix::identity(4).unwrap().scaled(0.25);
        assert!(DensityMatrix::new(wrong_dims, vec![2, 3]).is_err());
    }

    #[test]
    fn phi_family_rejects_symmetric_mask() {
        let rho = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        assert!(PhiFamily::new(rho, 0.0, vec![0, 1, 1, 0]).is_err());
    }

    fn random_state(dims: Vec<usize>, seed: &[f64]) -> DensityMatrix {
        // ρ = G G† / Tr(G G†) with G filled from the seed values
        let d: usize = dims.iter().product();
        let g = DMatrix::from_fn(d, d, |i, j| {
            let k = 2 * (i * d + j);
            C64::new(seed[k % seed.len()], seed[(k + 1) % seed.len()])
        });
        let p = &g * g.adjoint();
        let tr = p.trace().re;
        DensityMatrix::new(ComplexMatrix::new(p / C64::new(tr, 0.0)).unwrap(), dims).unwrap()
    }

    proptest! {
        #[test]
        fn hs_distance_is_a_metric(
            a in proptest::collection::vec(-1.0f64..1.0, 37),
            b in proptest::collection::vec(-1.0f64..1.0, 41),
            c in proptest::collection::vec(-1.0f64..1.0, 43),
        ) {
            let (x, y, z) = (
                random_state(vec![3], &a),
                random_state(vec![3], &b),
                random_state(vec![3], &c),
            );
            let xy = hs_distance(&x, &y).unwrap();
            prop_assert!((xy - hs_distance(&y, &x).unwrap()).abs() < 1e-15);
            prop_assert!(hs_distance(&x, &z).unwrap() <= xy + hs_distance(&y, &z).unwrap() + 1e-12);
        }

        #[test]
        fn partial_transpose_commutes_with_trace_over_b(
            seed in proptest::collection::vec(-1.0f64..1.0, 73),
        ) {
            let rho = random_state(vec![2, 3], &seed);
            let pt = partial_transpose(&rho, 1).unwrap();
            // ρ^{T_B} is not always PSD, so trace it out by hand
            let reduced = ComplexMatrix::from_fn(2, |a, c| {
                (0..3).map(|b| pt[(a * 3 + b, c * 3 + b)]).sum()
            }).unwrap();
            let direct = partial_trace(&rho, 0).unwrap();
            prop_assert!(reduced.max_abs_diff(direct.matrix()) < 1e-12);
        }

        #[test]
        fn trace_norm_matches_negative_eigenvalue_sum(
            seed in proptest::collection::vec(-1.0f64..1.0, 73),
        ) {
            let rho = random_state(vec![2, 3], &seed);
            let pt = partial_transpose(&rho, 0).unwrap();
            let ev = hermitian_eigenvalues(&pt).unwrap();
            let neg: f64 = ev.iter().filter(|&&x| x < 0.0).map(|x| -x).sum();
            prop_assert!((trace_norm(&pt).unwrap() - (1.0 + 2.0 * neg)).abs() < 1e-10);
            prop_assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        }
    }
}
