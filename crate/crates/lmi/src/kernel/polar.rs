//! Polar decomposition A = P U with P = (A Aᵀ)^{1/2} and U orthogonal.

use super::{sym_eigen, KernelError};
use crate::config::ToleranceConfig;
use crate::matrix::DenseMatrix;

/// The two polar factors of a nonsingular matrix.
#[derive(Debug, Clone)]
pub struct PolarParts {
    /// Symmetric positive definite factor (A Aᵀ)^{1/2}.
    pub p: DenseMatrix,
    /// Orthogonal factor P⁻¹ A.
    pub u: DenseMatrix,
}

/// Polar decomposition through the spectral square root of A Aᵀ.
/// Fails with `Singular` when A Aᵀ has an eigenvalue at or below the margin.
pub fn polar_decompose(a: &DenseMatrix, cfg: &ToleranceConfig) -> Result<PolarParts, KernelError> {
    let n = a.dim();
    let g = a * &a.transpose();
    let eig = sym_eigen(&g, cfg)?;
    let threshold = cfg.zero_threshold(g.frobenius());
    if eig.eigenvalues.iter().any(|&l| l <= threshold) {
        return Err(KernelError::Singular);
    }
    let q = &eig.eigenvectors;
    let mut q_sqrt = q.clone();
    let mut q_inv_sqrt = q.clone();
    for j in 0..n {
        let root = eig.eigenvalues[j].sqrt();
        for i in 0..n {
            q_sqrt[(i, j)] *= root;
            q_inv_sqrt[(i, j)] /= root;
        }
    }
    let p = &q_sqrt * &q.transpose();
    let u = &(&q_inv_sqrt * &q.transpose()) * a;
    Ok(PolarParts { p, u })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn orthogonal_input_has_identity_stretch() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let q = DenseMatrix::from_rows(&[vec![s, s], vec![-s, s]]).unwrap();
        let parts = polar_decompose(&q, &cfg()).unwrap();
        assert!((&parts.p - &DenseMatrix::identity(2)).frobenius() < 1e-12);
        assert!((&parts.u - &q).frobenius() < 1e-12);
    }

    #[test]
    fn scaled_identity() {
        let a = DenseMatrix::identity(3).scaled(2.0);
        let parts = polar_decompose(&a, &cfg()).unwrap();
        assert!((&parts.p - &a).frobenius() < 1e-12);
        assert!((&parts.u - &DenseMatrix::identity(3)).frobenius() < 1e-12);
    }

    #[test]
    fn rotation_scaling_block() {
        // A = [[1,1],[−1,1]]: A Aᵀ = 2I, so P = √2·I and U is the −45° rotation.
        let a = DenseMatrix::from_rows(&[vec![1.0, 1.0], vec![-1.0, 1.0]]).unwrap();
        let parts = polar_decompose(&a, &cfg()).unwrap();
        let sqrt2 = std::f64::consts::SQRT_2;
        assert!((&parts.p - &DenseMatrix::identity(2).scaled(sqrt2)).frobenius() < 1e-12);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let want_u = DenseMatrix::from_rows(&[vec![s, s], vec![-s, s]]).unwrap();
        assert!((&parts.u - &want_u).frobenius() < 1e-12);
        let back = &parts.p * &parts.u;
        assert!((&back - &a).frobenius() < 1e-12);
    }

    #[test]
    fn singular_input_rejected() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 0.0], vec![2.0, 0.0]]).unwrap();
        assert_eq!(polar_decompose(&a, &cfg()).unwrap_err(), KernelError::Singular);
    }
}
