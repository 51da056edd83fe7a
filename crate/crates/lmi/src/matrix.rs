//! Dense real square matrices, row-major, plus the small direct solvers the
//! rest of the crate is built on.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

/// Error raised while building or factoring a matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum MatrixError {
    /// Zero-dimensional matrix.
    Empty,
    /// Row lengths do not form a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// A NaN or infinite entry was rejected at construction.
    NonFinite { row: usize, col: usize },
    /// Near-zero pivot in a direct solve.
    Singular,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::Empty => write!(f, "matrix must have dimension >= 1"),
            MatrixError::NotSquare { rows, cols } => {
                write!(f, "matrix is not square: {rows} rows but {cols} columns in some row")
            }
            MatrixError::NonFinite { row, col } => {
                write!(f, "non-finite entry at ({row}, {col})")
            }
            MatrixError::Singular => write!(f, "matrix is singular to working precision"),
        }
    }
}

impl std::error::Error for MatrixError {}

/// Real n-by-n matrix with row-major storage.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Zero matrix of dimension `n`.
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "dimension must be >= 1");
        DenseMatrix { n, data: vec![0.0; n * n] }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Diagonal matrix from the given entries.
    pub fn diag(entries: &[f64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Build from nested rows, validating squareness and finiteness.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Empty);
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::NotSquare { rows: n, cols: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(MatrixError::NonFinite { row: i, col: j });
                }
                data.push(v);
            }
        }
        Ok(DenseMatrix { n, data })
    }

    /// Build from a function of the index pair.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    /// Symmetric part (A + Aᵀ)/2.
    pub fn sym_part(&self) -> Self {
        Self::from_fn(self.n, |i, j| 0.5 * (self[(i, j)] + self[(j, i)]))
    }

    /// Skew-symmetric part (A − Aᵀ)/2.
    pub fn skew_part(&self) -> Self {
        Self::from_fn(self.n, |i, j| 0.5 * (self[(i, j)] - self[(j, i)]))
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut m = self.clone();
        for v in &mut m.data {
            *v *= s;
        }
        m
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// ‖A − Aᵀ‖_F, the distance from symmetry.
    pub fn asymmetry(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let d = self[(i, j)] - self[(j, i)];
                s += 2.0 * d * d;
            }
        }
        s.sqrt()
    }

    /// ‖A + Aᵀ‖_F, the distance from skew-symmetry.
    pub fn skew_defect(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                let d = self[(i, j)] + self[(j, i)];
                let w = if i == j { 1.0 } else { 2.0 };
                s += w * d * d;
            }
        }
        s.sqrt()
    }

    /// Principal submatrix on the given strictly increasing index set.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        assert!(!idx.is_empty());
        Self::from_fn(idx.len(), |i, j| self[(idx[i], idx[j])])
    }

    /// Direct sum diag{A₁, …, A_k}.
    pub fn block_diag(blocks: &[&DenseMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zeros(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m[(off + i, off + j)] = b[(i, j)];
                }
            }
            off += b.n;
        }
        m
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self[(i, j)]).collect()).collect()
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * x[j]).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

impl Add for &DenseMatrix {
    type Output = DenseMatrix;
    fn add(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
        m
    }
}

impl Sub for &DenseMatrix {
    type Output = DenseMatrix;
    fn sub(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
        m
    }
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;
    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut m = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    m[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        m
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                write!(f, "{:>12.6} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// LU factorization with partial pivoting, packed in place.
pub struct Lu {
    lu: DenseMatrix,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &DenseMatrix) -> Result<Self, MatrixError> {
        let n = a.dim();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs().max(1.0);
        for k in 0..n {
            let mut p = k;
            let mut best = lu[(k, k)].abs();
            for i in (k + 1)..n {
                if lu[(i, k)].abs() > best {
                    best = lu[(i, k)].abs();
                    p = i;
                }
            }
            if best <= f64::EPSILON * scale * n as f64 {
                return Err(MatrixError::Singular);
            }
            if p != k {
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
                perm.swap(k, p);
            }
            for i in (k + 1)..n {
                let f = lu[(i, k)] / lu[(k, k)];
                lu[(i, k)] = f;
                for j in (k + 1)..n {
                    let sub = f * lu[(k, j)];
                    lu[(i, j)] -= sub;
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    pub fn solve_vec(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.dim();
        assert_eq!(b.len(), n);
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                x[i] -= self.lu[(i, j)] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                x[i] -= self.lu[(i, j)] * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    /// Solve A X = B column by column.
    pub fn solve_matrix(&self, b: &DenseMatrix) -> DenseMatrix {
        let n = self.lu.dim();
        assert_eq!(b.dim(), n);
        let mut out = DenseMatrix::zeros(n);
        for col in 0..n {
            let rhs: Vec<f64> = (0..n).map(|i| b[(i, col)]).collect();
            let x = self.solve_vec(&rhs);
            for i in 0..n {
                out[(i, col)] = x[i];
            }
        }
        out
    }
}

/// Solve L x = b for lower-triangular L.
pub fn solve_lower(l: &DenseMatrix, b: &[f64]) -> Vec<f64> {
    let n = l.dim();
    let mut x = b.to_vec();
    for i in 0..n {
        for j in 0..i {
            x[i] -= l[(i, j)] * x[j];
        }
        x[i] /= l[(i, i)];
    }
    x
}

/// T⁻¹ A T⁻ᵀ for lower-triangular T; used to push matrices through a
/// Cholesky congruence without forming the inverse.
pub fn triangular_congruence(t: &DenseMatrix, a: &DenseMatrix) -> DenseMatrix {
    let n = t.dim();
    assert_eq!(a.dim(), n);
    // X = T⁻¹ A, column by column of A.
    let mut x = DenseMatrix::zeros(n);
    for col in 0..n {
        let rhs: Vec<f64> = (0..n).map(|i| a[(i, col)]).collect();
        let sol = solve_lower(t, &rhs);
        for i in 0..n {
            x[(i, col)] = sol[i];
        }
    }
    // Result R solves R Tᵀ = X, i.e. T Rᵀ = Xᵀ.
    let mut out = DenseMatrix::zeros(n);
    for row in 0..n {
        let rhs: Vec<f64> = (0..n).map(|j| x[(row, j)]).collect();
        let sol = solve_lower(t, &rhs);
        for j in 0..n {
            out[(row, j)] = sol[j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_rows_validates() {
        assert_eq!(DenseMatrix::from_rows(&[]), Err(MatrixError::Empty));
        assert_eq!(
            DenseMatrix::from_rows(&[vec![1.0, 2.0]]),
            Err(MatrixError::NotSquare { rows: 1, cols: 2 })
        );
        assert_eq!(
            DenseMatrix::from_rows(&[vec![1.0, f64::NAN], vec![0.0, 1.0]]),
            Err(MatrixError::NonFinite { row: 0, col: 1 })
        );
    }

    #[test]
    fn sym_skew_split_recombines() {
        let m = DenseMatrix::from_rows(&[
            vec![0.0, 0.0, 1.0],
            vec![0.0, 1.0, -1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        let s = m.sym_part();
        let k = m.skew_part();
        let back = &s + &k;
        assert!((&back - &m).frobenius() == 0.0);
        assert!(s.asymmetry() == 0.0);
        assert!(k.skew_defect() == 0.0);
    }

    #[test]
    fn lu_solves_small_system() {
        let a = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![5.0, 3.0]]).unwrap();
        let lu = Lu::factor(&a).unwrap();
        let x = lu.solve_vec(&[4.0, 11.0]);
        assert!((x[0] - 1.0).abs() < 1e-12);
        assert!((x[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn lu_rejects_singular() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(Lu::factor(&a), Err(MatrixError::Singular)));
    }

    #[test]
    fn triangular_congruence_matches_explicit_inverse() {
        let t = DenseMatrix::from_rows(&[vec![2.0, 0.0], vec![1.0, 3.0]]).unwrap();
        let a = DenseMatrix::from_rows(&[vec![0.0, 5.0], vec![-5.0, 0.0]]).unwrap();
        let got = triangular_congruence(&t, &a);
        // T⁻¹ = [[0.5, 0], [-1/6, 1/3]]
        let tinv = DenseMatrix::from_rows(&[vec![0.5, 0.0], vec![-1.0 / 6.0, 1.0 / 3.0]]).unwrap();
        let want = &(&tinv * &a) * &tinv.transpose();
        assert!((&got - &want).frobenius() < 1e-14);
    }
}
