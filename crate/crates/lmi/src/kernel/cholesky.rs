//! Cholesky factorization, doubling as the positive-definiteness test.

use super::KernelError;
use crate::config::ToleranceConfig;
use crate::matrix::DenseMatrix;

/// Factor a symmetric positive definite matrix as A = T Tᵀ with T lower
/// triangular and positive diagonal. A pivot at or below
/// def_margin·‖A‖_F rejects the matrix.
pub fn cholesky_spd(a: &DenseMatrix, cfg: &ToleranceConfig) -> Result<DenseMatrix, KernelError> {
    let n = a.dim();
    let norm = a.frobenius();
    if a.asymmetry() > cfg.def_margin * norm.max(f64::MIN_POSITIVE) && a.asymmetry() > 0.0 {
        return Err(KernelError::NotSymmetric);
    }
    let threshold = cfg.def_margin * norm;
    let mut t = DenseMatrix::zeros(n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d -= t[(j, k)] * t[(j, k)];
        }
        if d <= threshold {
            return Err(KernelError::NotPositiveDefinite);
        }
        let tjj = d.sqrt();
        t[(j, j)] = tjj;
        for i in (j + 1)..n {
            let mut v = 0.5 * (a[(i, j)] + a[(j, i)]);
            for k in 0..j {
                v -= t[(i, k)] * t[(j, k)];
            }
            t[(i, j)] = v / tjj;
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn identity_factors_to_itself() {
        let t = cholesky_spd(&DenseMatrix::identity(2), &cfg()).unwrap();
        assert!((&t - &DenseMatrix::identity(2)).frobenius() < 1e-15);
    }

    #[test]
    fn known_factor() {
        let a = DenseMatrix::from_rows(&[vec![4.0, 2.0], vec![2.0, 5.0]]).unwrap();
        let t = cholesky_spd(&a, &cfg()).unwrap();
        let want = DenseMatrix::from_rows(&[vec![2.0, 0.0], vec![1.0, 2.0]]).unwrap();
        assert!((&t - &want).frobenius() < 1e-14);
        assert!((&(&t * &t.transpose()) - &a).frobenius() < 1e-14);
    }

    #[test]
    fn rejects_indefinite() {
        let a = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(cholesky_spd(&a, &cfg()), Err(KernelError::NotPositiveDefinite));
    }

    #[test]
    fn accepts_tiny_well_conditioned_matrix() {
        let a = DenseMatrix::identity(2).scaled(1e-8);
        let t = cholesky_spd(&a, &cfg()).unwrap();
        assert!((&(&t * &t.transpose()) - &a).frobenius() < 1e-20);
    }
}
