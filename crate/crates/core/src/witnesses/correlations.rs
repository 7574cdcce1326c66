//! Entanglement negativity and measurement-induced disturbance (MID) of
//! bipartite states, plus the closed forms for the mixed qubit⊗qutrit family.

use nalgebra::DMatrix;

use crate::error::Result;
use crate::hilbert::{
    entropy_of_spectrum, hermitian_eigen, partial_trace, partial_transpose, trace_norm,
    von_neumann_entropy, ComplexMatrix, DensityMatrix, C64,
};

/// Eigenvalues closer than this are treated as one degenerate cluster.
pub const DEGENERACY_GAP: f64 = 1e-9;

/// Which closed form applies to the mixed initial family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrelationTopology {
    /// Independent baths, independent telegraph noise, composite environment.
    Independent,
    /// One telegraph fluctuator shared by qubit and qutrit.
    Common,
}

/// Sum of the moduli of the negative eigenvalues of `ρ^{T_A}`.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho, 0)?;
    let (ev, _) = hermitian_eigen(&pt)?;
    Ok(ev.iter().filter(|&&x| x < 0.0).map(|x| -x).sum())
}

/// `½(‖ρ^{T_A}‖₁ - 1)`.
pub fn negativity_via_trace_norm(rho: &DensityMatrix) -> Result<f64> {
    Ok(0.5 * (trace_norm(&partial_transpose(rho, 0)?)? - 1.0))
}

/// Negativity of the evolved mixed family with coherence factor `f`.
///
/// The independent form follows from the spectrum of the partial transpose,
/// `{p/2, p/2, [p ± (1-2p)F]/2, [(1-2p) ± pF]/2}`.
pub fn negativity_closed(p: f64, f: f64, topology: CorrelationTopology) -> f64 {
    let q = 1.0 - 2.0 * p;
    match topology {
        CorrelationTopology::Independent => {
            0.5 * (p - 1.0)
                + 0.25 * ((p + q * f).abs() + (p - q * f).abs() + (q + p * f).abs() + (q - p * f).abs())
        }
        CorrelationTopology::Common => {
            0.25 * ((p - 1.0) + (3.0 * p - 1.0).abs() + (q - p * f).abs() + (q + p * f).abs())
        }
    }
}

/// The independent-environment negativity expression exactly as it is
/// usually printed, with `(1-p)F` in the first two moduli. It disagrees with
/// the partial-transpose spectrum whenever `0 < p` or `F < 1` and is kept only
/// for comparison.
pub fn negativity_closed_printed(p: f64, f: f64) -> f64 {
    0.5 * (p - 1.0)
        + 0.25
            * ((p + (1.0 - p) * f).abs()
                + (p - (1.0 - p) * f).abs()
                + (p - (1.0 - 2.0 * p) * f).abs()
                + (p + (1.0 - 2.0 * p) * f).abs())
}

/// `(1+F) log2(1+F) + (1-F) log2(1-F)` with `0·log 0 = 0`.
fn coherence_gain(f: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
    term(1.0 + f) + term(1.0 - f)
}

/// MID of the evolved mixed family with coherence factor `f` (base-2 logs).
pub fn mid_closed(p: f64, f: f64, topology: CorrelationTopology) -> f64 {
    match topology {
        CorrelationTopology::Independent => 0.5 * (1.0 - p) * coherence_gain(f),
        CorrelationTopology::Common => (1.0 - 2.0 * p) + 0.5 * p * coherence_gain(f),
    }
}

/// Orthonormal eigenbasis (columns, eigenvalues descending) in which every
/// degenerate cluster is replaced by the Gram-Schmidt orthonormalization of
/// the computational basis vectors projected onto that eigenspace.
pub fn eigenbasis_with_tiebreak(m: &ComplexMatrix) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let (values, vectors) = hermitian_eigen(m)?;
    let d = values.len();
    let mut basis = vectors.clone();
    let mut start = 0;
    while start < d {
        let mut end = start + 1;
        while end < d && values[end - 1] - values[end] < DEGENERACY_GAP {
            end += 1;
        }
        let k = end - start;
        if k > 1 {
            let block = vectors.columns(start, k);
            let projector = &block * block.adjoint();
            let mut accepted: Vec<nalgebra::DVector<C64>> = Vec::with_capacity(k);
            for i in 0..d {
                if accepted.len() == k {
                    break;
                }
                let mut v = projector.column(i).into_owned();
                for u in &accepted {
                    let overlap = u.dotc(&v);
                    v -= u * overlap;
                }
                let norm = v.norm();
                if norm > 1e-6 {
                    accepted.push(v / C64::new(norm, 0.0));
                }
            }
            for (offset, v) in accepted.iter().enumerate() {
                basis.set_column(start + offset, v);
            }
        }
        start = end;
    }
    Ok((values, basis))
}

/// `Π(ρ) = Σ_ij (Π_i^A ⊗ Π_j^B) ρ (Π_i^A ⊗ Π_j^B)` with rank-one projectors on
/// the (tie-broken) eigenbases of the marginals.
pub fn locally_dephased(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let (_, ua) = eigenbasis_with_tiebreak(partial_trace(rho, 0)?.matrix())?;
    let (_, ub) = eigenbasis_with_tiebreak(partial_trace(rho, 1)?.matrix())?;
    let u = ua.kronecker(&ub);
    let rotated = u.adjoint() * rho.matrix().as_matrix() * &u;
    let diag = DMatrix::from_fn(u.nrows(), u.ncols(), |i, j| {
        if i == j {
            C64::new(rotated[(i, i)].re, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let dephased = &u * diag * u.adjoint();
    DensityMatrix::new(ComplexMatrix::new(dephased)?, rho.subsystem_dims().to_vec())
}

/// `S(ρ_A) + S(ρ_B) - S(ρ)`.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    Ok(von_neumann_entropy(&partial_trace(rho, 0)?)? + von_neumann_entropy(&partial_trace(rho, 1)?)?
        - von_neumann_entropy(rho)?)
}

/// Measurement-induced disturbance `I(ρ) - I(Π(ρ))`.
pub fn mid(rho: &DensityMatrix) -> Result<f64> {
    Ok(mutual_information(rho)? - mutual_information(&locally_dephased(rho)?)?)
}

/// Shannon entropy (bits) of the diagonal of `ρ` in the marginal eigenbasis;
/// `mid(ρ) = this - S(ρ)`.
pub fn dephased_entropy(rho: &DensityMatrix) -> Result<f64> {
    let (_, ua) = eigenbasis_with_tiebreak(partial_trace(rho, 0)?.matrix())?;
    let (_, ub) = eigenbasis_with_tiebreak(partial_trace(rho, 1)?.matrix())?;
    let u = ua.kronecker(&ub);
    let rotated = u.adjoint() * rho.matrix().as_matrix() * &u;
    let probs: Vec<f64> = (0..u.nrows()).map(|i| rotated[(i, i)].re.max(0.0)).collect();
    entropy_of_spectrum(&probs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::initial_mixed;

    fn ket(amps: &[(usize, f64)]) -> DensityMatrix {
        let mut k = vec![C64::new(0.0, 0.0); 6];
        for &(i, a) in amps {
            k[i] = C64::new(a, 0.0);
        }
        DensityMatrix::from_pure(&k, vec![2, 3]).unwrap()
    }

    fn with_coherence(p: f64, f: f64, common: bool) -> DensityMatrix {
        let rho = initial_mixed(p).unwrap();
        let m = rho.matrix();
        let out = ComplexMatrix::from_fn(6, |i, j| match (i, j) {
            (0, 5) | (5, 0) => m[(i, j)] * f,
            (2, 3) | (3, 2) if !common => m[(i, j)] * f,
            _ => m[(i, j)],
        })
        .unwrap();
        DensityMatrix::new(out, vec![2, 3]).unwrap()
    }

    #[test]
    fn negativity_examples() {
        let product = ket(&[(1, 1.0)]);
        assert!(negativity(&product).unwrap().abs() < 1e-12);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = ket(&[(0, s), (5, s)]);
        assert!((negativity(&bell).unwrap() - 0.5).abs() < 1e-12);
        assert!((negativity_via_trace_norm(&bell).unwrap() - 0.5).abs() < 1e-12);
        let sep = initial_mixed(1.0 / 3.0).unwrap();
        assert!(negativity(&sep).unwrap().abs() < 1e-12);
    }

    #[test]
    fn closed_negativity_special_values() {
        use CorrelationTopology::*;
        assert!((negativity_closed(0.0, 1.0, Independent) - 0.5).abs() < 1e-15);
        for &f in &[0.0, 0.3, 1.0] {
            assert!((negativity_closed(0.0, f, Common) - 0.5).abs() < 1e-15);
        }
        for &p in &[0.0, 0.1, 0.25, 0.4, 0.5] {
            assert!(negativity_closed(p, 0.0, Independent).abs() < 1e-15);
        }
        // the printed variant only agrees at p = 0, F = 1
        assert!((negativity_closed_printed(0.0, 1.0) - 0.5).abs() < 1e-15);
        assert!((negativity_closed_printed(0.4, 1.0) - 0.2).abs() < 1e-12);
        assert!((negativity_closed(0.4, 1.0, Independent) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_match_generic_routes() {
        for &p in &[0.0, 0.1, 1.0 / 3.0, 0.4, 0.5] {
            for &f in &[-0.8, -0.2, 0.0, 0.35, 0.6, 0.97, 1.0] {
                let ind = with_coherence(p, f, false);
                let com = with_coherence(p, f, true);
                use CorrelationTopology::*;
                assert!((negativity(&ind).unwrap() - negativity_closed(p, f, Independent)).abs() < 1e-10);
                assert!((negativity(&com).unwrap() - negativity_closed(p, f, Common)).abs() < 1e-10);
                assert!((mid(&ind).unwrap() - mid_closed(p, f, Independent)).abs() < 1e-10, "p={p} f={f}");
                assert!((mid(&com).unwrap() - mid_closed(p, f, Common)).abs() < 1e-10, "p={p} f={f}");
            }
        }
    }

    #[test]
    fn closed_mid_special_values() {
        use CorrelationTopology::*;
        assert!((mid_closed(0.0, 1.0, Independent) - 1.0).abs() < 1e-15);
        assert_eq!(mid_closed(0.3, 0.0, Independent), 0.0);
        for &f in &[-1.0, -0.4, 0.2, 1.0] {
            assert!((mid_closed(0.0, f, Common) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn classical_state_has_no_disturbance() {
        let rho = DensityMatrix::new(
            ComplexMatrix::from_real_diagonal(&[0.1, 0.2, 0.05, 0.3, 0.15, 0.2]).unwrap(),
            vec![2, 3],
        )
        .unwrap();
        assert!(mid(&rho).unwrap().abs() < 1e-12);
        let mm = DensityMatrix::maximally_mixed(vec![2, 3]).unwrap();
        assert!(mid(&mm).unwrap().abs() < 1e-12);
    }

    #[test]
    fn mid_agrees_with_dephased_entropy_route() {
        let s = 1.0 / 6f64.sqrt();
        let rho = ket(&[(0, -s), (1, s), (2, s), (3, s), (4, s), (5, s)]);
        let a = mid(&rho).unwrap();
        let b = dephased_entropy(&rho).unwrap() - von_neumann_entropy(&rho).unwrap();
        assert!((a - b).abs() < 1e-10);
        assert!(a > 0.0);
    }

    #[test]
    fn tiebreak_returns_computational_basis_for_identity() {
        let m = ComplexMatrix::identity(3).unwrap().scaled(1.0 / 3.0);
        let (_, u) = eigenbasis_with_tiebreak(&m).unwrap();
        let id = DMatrix::<C64>::identity(3, 3);
        assert!((u - id).norm() < 1e-12);
    }
}
