//! Cyclic Jacobi eigensolver for symmetric matrices.

use super::KernelError;
use crate::config::ToleranceConfig;
use crate::matrix::DenseMatrix;

/// Budget of full cyclic sweeps before giving up.
const MAX_SWEEPS: usize = 30;

/// Spectral decomposition A = Q Λ Qᵀ of a symmetric matrix, eigenvalues in
/// weakly decreasing order, eigenvectors as the matching columns of Q.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DenseMatrix,
}

impl SymEigen {
    /// Q Λ Qᵀ, for reconstruction checks.
    pub fn reassemble(&self) -> DenseMatrix {
        let q = &self.eigenvectors;
        let n = q.dim();
        let mut ql = q.clone();
        for i in 0..n {
            for j in 0..n {
                ql[(i, j)] *= self.eigenvalues[j];
            }
        }
        &ql * &q.transpose()
    }
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// The input may deviate from exact symmetry by up to def_margin·‖A‖_F; it is
/// symmetrized before iterating. Anything worse is rejected.
pub fn sym_eigen(a: &DenseMatrix, cfg: &ToleranceConfig) -> Result<SymEigen, KernelError> {
    let n = a.dim();
    let norm = a.frobenius();
    if a.asymmetry() > cfg.def_margin * norm.max(f64::MIN_POSITIVE) && a.asymmetry() > 0.0 {
        return Err(KernelError::NotSymmetric);
    }
    let mut w = a.sym_part();
    let mut q = DenseMatrix::identity(n);
    let target = cfg.eig_tol * norm;

    let mut converged = off_diagonal_norm(&w) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(KernelError::NoConvergence);
        }
        for p in 0..n {
            for r in (p + 1)..n {
                let apq = w[(p, r)];
                if apq == 0.0 {
                    continue;
                }
                let app = w[(p, p)];
                let aqq = w[(r, r)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // W ← Jᵀ W J with J the rotation in the (p, r) plane.
                w[(p, p)] = app - t * apq;
                w[(r, r)] = aqq + t * apq;
                w[(p, r)] = 0.0;
                w[(r, p)] = 0.0;
                for k in 0..n {
                    if k != p && k != r {
                        let akp = w[(k, p)];
                        let akq = w[(k, r)];
                        w[(k, p)] = c * akp - s * akq;
                        w[(p, k)] = w[(k, p)];
                        w[(k, r)] = s * akp + c * akq;
                        w[(r, k)] = w[(k, r)];
                    }
                }
                for k in 0..n {
                    let qkp = q[(k, p)];
                    let qkq = q[(k, r)];
                    q[(k, p)] = c * qkp - s * qkq;
                    q[(k, r)] = s * qkp + c * qkq;
                }
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&w) <= target;
    }

    // Sort descending, permuting eigenvector columns alongside.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(j, j)].partial_cmp(&w[(i, i)]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| w[(i, i)]).collect();
    let eigenvectors = DenseMatrix::from_fn(n, |i, j| q[(i, order[j])]);
    Ok(SymEigen { eigenvalues, eigenvectors })
}
