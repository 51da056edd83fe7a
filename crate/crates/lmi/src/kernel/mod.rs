//! Dense symmetric/skew/general spectral kernel.
//!
//! Everything here works on real matrices; Hermitian questions about
//! H = A + iB are answered through the real 2n×2n embedding
//! [[A, −B], [B, A]], whose spectrum is that of H with doubled multiplicity.

mod cholesky;
mod jacobi;
mod polar;
mod qr;

pub use cholesky::cholesky_spd;
pub use jacobi::{sym_eigen, SymEigen};
pub use polar::{polar_decompose, PolarParts};
pub use qr::general_eigenvalues;

use crate::config::ToleranceConfig;
use crate::matrix::DenseMatrix;
use std::fmt;

/// Error raised by the spectral kernel.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelError {
    /// Input asymmetry exceeds tolerance.
    NotSymmetric,
    /// Input is not skew-symmetric within tolerance.
    NotSkewSymmetric,
    /// Cholesky pivot at or below the definiteness margin.
    NotPositiveDefinite,
    /// UUᵀ deviates from the identity beyond tolerance.
    NotOrthogonal,
    /// Singular input where an invertible factor was required.
    Singular,
    /// Iteration budget exhausted.
    NoConvergence,
    /// Operands have different dimensions.
    DimensionMismatch { left: usize, right: usize },
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::NotSymmetric => write!(f, "matrix is not symmetric within tolerance"),
            KernelError::NotSkewSymmetric => {
                write!(f, "matrix is not skew-symmetric within tolerance")
            }
            KernelError::NotPositiveDefinite => write!(f, "matrix is not positive definite"),
            KernelError::NotOrthogonal => write!(f, "matrix is not orthogonal within tolerance"),
            KernelError::Singular => write!(f, "matrix is singular to working precision"),
            KernelError::NoConvergence => write!(f, "eigensolver iteration budget exhausted"),
            KernelError::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
        }
    }
}

impl std::error::Error for KernelError {}

/// Allowed deviation of UUᵀ from I in orthogonality checks.
pub(crate) const ORTH_TOL: f64 = 1e-6;

/// Signature of a symmetric matrix: counts of positive, negative and
/// near-zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

/// Definiteness classes, with the semidefinite classes excluding the strict
/// ones: a matrix with an eigenvalue inside the zero margin is never
/// classified definite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PosDef,
    PosSemi,
    NegDef,
    NegSemi,
    Indefinite,
    Zero,
}

/// Spectrum of a skew-symmetric matrix: one ν_j > 0 per conjugate pair ±iν_j,
/// plus the count of zero eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewSpectrum {
    pub nus: Vec<f64>,
    pub zero_count: usize,
}

impl SkewSpectrum {
    pub fn max_nu(&self) -> f64 {
        self.nus.iter().fold(0.0, |a, &v| a.max(v))
    }
}

/// Real symmetric embedding [[A, −B], [B, A]] of the Hermitian matrix A + iB.
pub fn hermitian_embedding(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix, KernelError> {
    let n = a.dim();
    if b.dim() != n {
        return Err(KernelError::DimensionMismatch { left: n, right: b.dim() });
    }
    let mut e = DenseMatrix::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            e[(i, j)] = a[(i, j)];
            e[(n + i, n + j)] = a[(i, j)];
            e[(i, n + j)] = -b[(i, j)];
            e[(n + i, j)] = b[(i, j)];
        }
    }
    Ok(e)
}

/// Eigenvalue signature of a symmetric matrix, thresholded at
/// ±def_margin·max(1, ‖A‖_F).
pub fn inertia(a: &DenseMatrix, cfg: &ToleranceConfig) -> Result<Inertia, KernelError> {
    let eig = sym_eigen(a, cfg)?;
    let t = cfg.zero_threshold(a.frobenius());
    let mut r = Inertia { n_pos: 0, n_neg: 0, n_zero: 0 };
    for &l in &eig.eigenvalues {
        if l > t {
            r.n_pos += 1;
        } else if l < -t {
            r.n_neg += 1;
        } else {
            r.n_zero += 1;
        }
    }
    Ok(r)
}

/// Classify a symmetric matrix by the thresholded signs of its eigenvalues.
pub fn definiteness(a: &DenseMatrix, cfg: &ToleranceConfig) -> Result<Definiteness, KernelError> {
    let i = inertia(a, cfg)?;
    Ok(classify_inertia(&i))
}

pub fn classify_inertia(i: &Inertia) -> Definiteness {
    match (i.n_pos, i.n_neg, i.n_zero) {
        (0, 0, _) => Definiteness::Zero,
        (p, 0, 0) if p > 0 => Definiteness::PosDef,
        (_, 0, _) => Definiteness::PosSemi,
        (0, n, 0) if n > 0 => Definiteness::NegDef,
        (0, _, _) => Definiteness::NegSemi,
        _ => Definiteness::Indefinite,
    }
}

/// Is the Hermitian matrix A + iB negative definite? Decided by a Cholesky
/// factorization of the negated real embedding.
pub fn hermitian_negdef(
    a: &DenseMatrix,
    b: &DenseMatrix,
    cfg: &ToleranceConfig,
) -> Result<bool, KernelError> {
    let e = hermitian_embedding(a, b)?;
    match cholesky_spd(&e.scaled(-1.0), cfg) {
        Ok(_) => Ok(true),
        Err(KernelError::NotPositiveDefinite) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Largest eigenvalue of the Hermitian matrix A + iB, via the embedding.
pub fn hermitian_max_eig(
    a: &DenseMatrix,
    b: &DenseMatrix,
    cfg: &ToleranceConfig,
) -> Result<f64, KernelError> {
    let e = hermitian_embedding(a, b)?;
    let eig = sym_eigen(&e, cfg)?;
    Ok(eig.eigenvalues[0])
}

/// ν_j of a skew-symmetric matrix: square roots of the nonzero eigenvalues of
/// KᵀK, one per ±iν_j pair.
pub fn skew_spectrum(k: &DenseMatrix, cfg: &ToleranceConfig) -> Result<SkewSpectrum, KernelError> {
    let norm = k.frobenius();
    if k.skew_defect() > cfg.zero_threshold(norm) {
        return Err(KernelError::NotSkewSymmetric);
    }
    let n = k.dim();
    let ktk = &k.transpose() * k;
    let eig = sym_eigen(&ktk, cfg)?;
    let t = cfg.zero_threshold(norm.max(1.0));
    // Singular values, descending; nonzero ones come in pairs.
    let mut sv: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let mut nus = Vec::new();
    let mut i = 0;
    while i + 1 < sv.len() && sv[i] > t && sv[i + 1] > t {
        nus.push(0.5 * (sv[i] + sv[i + 1]));
        i += 2;
    }
    // A lone above-threshold value has no partner; treat it as zero.
    if i < sv.len() && sv[i] > t {
        sv[i] = 0.0;
    }
    let zero_count = n - 2 * nus.len();
    Ok(SkewSpectrum { nus, zero_count })
}

/// Arguments φ_j ∈ [0, π] of the eigenvalues e^{±iφ_j} of an orthogonal
/// matrix, read off as arccos of the eigenvalues of Sym(U). Conjugate pairs
/// appear as equal values; the list is ascending.
pub fn orthogonal_arg_spectrum(
    u: &DenseMatrix,
    cfg: &ToleranceConfig,
) -> Result<Vec<f64>, KernelError> {
    let n = u.dim();
    let gram = u * &u.transpose();
    if (&gram - &DenseMatrix::identity(n)).frobenius() > ORTH_TOL {
        return Err(KernelError::NotOrthogonal);
    }
    let eig = sym_eigen(&u.sym_part(), cfg)?;
    Ok(eig.eigenvalues.iter().map(|&l| l.clamp(-1.0, 1.0).acos()).collect())
}

/// Congruence transform S A Sᵀ.
pub fn congruence(a: &DenseMatrix, s: &DenseMatrix) -> Result<DenseMatrix, KernelError> {
    if a.dim() != s.dim() {
        return Err(KernelError::DimensionMismatch { left: a.dim(), right: s.dim() });
    }
    Ok(&(s * a) * &s.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn intro_sym() -> DenseMatrix {
        DenseMatrix::from_rows(&[
            vec![0.0, 0.0, 1.0],
            vec![0.0, 1.0, 0.0],
            vec![1.0, 0.0, 0.0],
        ])
        .unwrap()
    }

    fn intro_skew() -> DenseMatrix {
        DenseMatrix::from_rows(&[
            vec![0.0, 0.0, 0.0],
            vec![0.0, 0.0, -1.0],
            vec![0.0, 1.0, 0.0],
        ])
        .unwrap()
    }

    #[test]
    fn inertia_of_intro_symmetric_part() {
        let i = inertia(&intro_sym(), &cfg()).unwrap();
        assert_eq!(i, Inertia { n_pos: 2, n_neg: 1, n_zero: 0 });
    }

    #[test]
    fn inertia_of_zero_and_diagonal() {
        let z = DenseMatrix::zeros(4);
        assert_eq!(inertia(&z, &cfg()).unwrap(), Inertia { n_pos: 0, n_neg: 0, n_zero: 4 });
        let d = DenseMatrix::diag(&[5.0, -1.0, 0.0]);
        assert_eq!(inertia(&d, &cfg()).unwrap(), Inertia { n_pos: 1, n_neg: 1, n_zero: 1 });
    }

    #[test]
    fn definiteness_classes() {
        let c = cfg();
        assert_eq!(
            definiteness(&DenseMatrix::identity(3).scaled(-1.0), &c).unwrap(),
            Definiteness::NegDef
        );
        let psd = DenseMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        assert_eq!(definiteness(&psd, &c).unwrap(), Definiteness::PosSemi);
        let indef = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(definiteness(&indef, &c).unwrap(), Definiteness::Indefinite);
        assert_eq!(definiteness(&DenseMatrix::zeros(2), &c).unwrap(), Definiteness::Zero);
    }

    #[test]
    fn hermitian_negdef_cases() {
        let c = cfg();
        let neg_i = DenseMatrix::identity(2).scaled(-1.0);
        let zero = DenseMatrix::zeros(2);
        assert!(hermitian_negdef(&neg_i, &zero, &c).unwrap());

        // H = -I + i[[0,1],[-1,0]] has eigenvalues -1 ± 1, so ⪯ 0 but not ≺ 0.
        let b = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        assert!(!hermitian_negdef(&neg_i, &b, &c).unwrap());

        // Characteristic value of the intro region at the origin.
        let l = DenseMatrix::identity(3).scaled(-1.0);
        let z3 = DenseMatrix::zeros(3);
        assert!(hermitian_negdef(&l, &z3, &c).unwrap());

        assert!(matches!(
            hermitian_negdef(&neg_i, &z3, &c),
            Err(KernelError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn skew_spectrum_cases() {
        let c = cfg();
        let s = skew_spectrum(&intro_skew(), &c).unwrap();
        assert_eq!(s.nus.len(), 1);
        assert!((s.nus[0] - 1.0).abs() < 1e-12);
        assert_eq!(s.zero_count, 1);

        let z = skew_spectrum(&DenseMatrix::zeros(3), &c).unwrap();
        assert!(z.nus.is_empty());
        assert_eq!(z.zero_count, 3);

        let k = DenseMatrix::from_rows(&[vec![0.0, 3.0], vec![-3.0, 0.0]]).unwrap();
        let s = skew_spectrum(&k, &c).unwrap();
        assert_eq!(s.nus.len(), 1);
        assert!((s.nus[0] - 3.0).abs() < 1e-12);

        let not_skew = DenseMatrix::identity(2);
        assert_eq!(skew_spectrum(&not_skew, &c), Err(KernelError::NotSkewSymmetric));
    }

    #[test]
    fn orthogonal_args() {
        let c = cfg();
        let id = DenseMatrix::identity(3);
        for phi in orthogonal_arg_spectrum(&id, &c).unwrap() {
            assert!(phi.abs() < 1e-12);
        }
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rot = DenseMatrix::from_rows(&[vec![s, s], vec![-s, s]]).unwrap();
        let phis = orthogonal_arg_spectrum(&rot, &c).unwrap();
        for phi in phis {
            assert!((phi - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        }
        let neg = DenseMatrix::identity(2).scaled(-1.0);
        for phi in orthogonal_arg_spectrum(&neg, &c).unwrap() {
            assert!((phi - std::f64::consts::PI).abs() < 1e-12);
        }
        let not_orth = DenseMatrix::diag(&[2.0, 1.0]);
        assert_eq!(orthogonal_arg_spectrum(&not_orth, &c), Err(KernelError::NotOrthogonal));
    }

    #[test]
    fn congruence_basics() {
        let a = intro_sym();
        let id = DenseMatrix::identity(3);
        assert_eq!(congruence(&a, &id).unwrap(), a);

        let t = DenseMatrix::from_rows(&[vec![2.0, 0.0], vec![1.0, 2.0]]).unwrap();
        let got = congruence(&DenseMatrix::identity(2), &t).unwrap();
        let want = &t * &t.transpose();
        assert!((&got - &want).frobenius() < 1e-14);
    }
}
