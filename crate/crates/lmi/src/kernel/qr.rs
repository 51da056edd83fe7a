//! Full spectrum of a general real matrix: Householder reduction to upper
//! Hessenberg form followed by the implicit double-shift QR iteration.

use super::KernelError;
use crate::matrix::DenseMatrix;
use num_complex::Complex64;

/// Householder reduction to upper Hessenberg form, in place on nested rows.
fn hessenberg(a: &mut [Vec<f64>]) {
    let n = a.len();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let mut norm2 = 0.0;
        for i in k + 1..n {
            norm2 += a[i][k] * a[i][k];
        }
        let norm = norm2.sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if a[k + 1][k] >= 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k + 1..n).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for x in &mut v {
            *x /= vnorm;
        }
        // A ← (I − 2vvᵀ) A on rows k+1..n
        for j in k..n {
            let dot: f64 = (0..v.len()).map(|i| v[i] * a[k + 1 + i][j]).sum();
            for i in 0..v.len() {
                a[k + 1 + i][j] -= 2.0 * v[i] * dot;
            }
        }
        // A ← A (I − 2vvᵀ) on columns k+1..n
        for i in 0..n {
            let dot: f64 = (0..v.len()).map(|j| v[j] * a[i][k + 1 + j]).sum();
            for j in 0..v.len() {
                a[i][k + 1 + j] -= 2.0 * v[j] * dot;
            }
        }
        a[k + 1][k] = alpha;
        for i in k + 2..n {
            a[i][k] = 0.0;
        }
    }
}

/// Eigenvalues of an upper Hessenberg matrix by the double-shift QR
/// iteration with deflation and occasional exceptional shifts.
fn hqr(a: &mut [Vec<f64>]) -> Result<Vec<Complex64>, KernelError> {
    let n = a.len();
    let mut out: Vec<Complex64> = Vec::with_capacity(n);
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[i][j].abs();
        }
    }
    if anorm == 0.0 {
        return Ok(vec![Complex64::new(0.0, 0.0); n]);
    }

    let eps = f64::EPSILON;
    let mut t = 0.0;
    let mut nn = n as isize - 1;
    while nn >= 0 {
        let mut its = 0;
        loop {
            // Look for a negligible subdiagonal element.
            let mut l = 0usize;
            let mut ll = nn as usize;
            while ll >= 1 {
                let mut s = a[ll - 1][ll - 1].abs() + a[ll][ll].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[ll][ll - 1].abs() <= eps * s {
                    a[ll][ll - 1] = 0.0;
                    l = ll;
                    break;
                }
                ll -= 1;
            }
            let nnu = nn as usize;
            let mut x = a[nnu][nnu];
            if l == nnu {
                out.push(Complex64::new(x + t, 0.0));
                nn -= 1;
                break;
            }
            let y = a[nnu - 1][nnu - 1];
            let w = a[nnu][nnu - 1] * a[nnu - 1][nnu];
            if l == nnu - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + z.copysign(p);
                    let r1 = x + z;
                    let r2 = if z != 0.0 { x - w / z } else { x + z };
                    out.push(Complex64::new(r1, 0.0));
                    out.push(Complex64::new(r2, 0.0));
                } else {
                    out.push(Complex64::new(x + p, z));
                    out.push(Complex64::new(x + p, -z));
                }
                nn -= 2;
                break;
            }

            if its == 30 {
                return Err(KernelError::NoConvergence);
            }
            let (x, y, w) = if its == 10 || its == 20 {
                // Exceptional shift.
                t += x;
                for i in 0..=nnu {
                    a[i][i] -= x;
                }
                let s = a[nnu][nnu - 1].abs() + a[nnu - 1][nnu - 2].abs();
                (0.75 * s, 0.75 * s, -0.4375 * s * s)
            } else {
                (x, y, w)
            };
            its += 1;

            // Find two consecutive small subdiagonals.
            let mut m = nnu - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a[m][m];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[m + 1][m] + a[m][m + 1];
                q = a[m + 1][m + 1] - z - rr - ss;
                r = a[m + 2][m + 1];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[m][m - 1].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[m - 1][m - 1].abs() + z.abs() + a[m + 1][m + 1].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nnu {
                a[i][i - 2] = 0.0;
                if i != m + 2 {
                    a[i][i - 3] = 0.0;
                }
            }

            // Double QR step on rows l..=nn, columns m..=nn.
            for k in m..nnu {
                let mut scale = 1.0;
                if k != m {
                    p = a[k][k - 1];
                    q = a[k + 1][k - 1];
                    r = if k != nnu - 1 { a[k + 2][k - 1] } else { 0.0 };
                    scale = p.abs() + q.abs() + r.abs();
                    if scale != 0.0 {
                        p /= scale;
                        q /= scale;
                        r /= scale;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[k][k - 1] = -a[k][k - 1];
                    }
                } else {
                    a[k][k - 1] = -s * scale;
                }
                p += s;
                let xf = p / s;
                let yf = q / s;
                let zf = r / s;
                q /= p;
                r /= p;
                for j in k..=nnu {
                    let mut pp = a[k][j] + q * a[k + 1][j];
                    if k != nnu - 1 {
                        pp += r * a[k + 2][j];
                        a[k + 2][j] -= pp * zf;
                    }
                    a[k + 1][j] -= pp * yf;
                    a[k][j] -= pp * xf;
                }
                let mmin = nnu.min(k + 3);
                for i in l..=mmin {
                    let mut pp = xf * a[i][k] + yf * a[i][k + 1];
                    if k != nnu - 1 {
                        pp += zf * a[i][k + 2];
                        a[i][k + 2] -= pp * r;
                    }
                    a[i][k + 1] -= pp * q;
                    a[i][k] -= pp;
                }
            }
        }
    }
    Ok(out)
}

/// Full complex spectrum of a general real matrix. Conjugate pairs are exact
/// by construction; the result is sorted by real part, then imaginary part.
pub fn general_eigenvalues(a: &DenseMatrix) -> Result<Vec<Complex64>, KernelError> {
    let mut rows = a.rows();
    hessenberg(&mut rows);
    let mut vals = hqr(&mut rows)?;
    vals.sort_by(|p, q| {
        p.re.partial_cmp(&q.re).unwrap().then(p.im.partial_cmp(&q.im).unwrap())
    });
    Ok(vals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(z: Complex64, re: f64, im: f64, tol: f64) -> bool {
        (z.re - re).abs() < tol && (z.im - im).abs() < tol
    }

    #[test]
    fn diagonal_spectrum() {
        let a = DenseMatrix::diag(&[1.0, 2.0, 3.0]);
        let e = general_eigenvalues(&a).unwrap();
        assert!(close(e[0], 1.0, 0.0, 1e-12));
        assert!(close(e[1], 2.0, 0.0, 1e-12));
        assert!(close(e[2], 3.0, 0.0, 1e-12));
    }

    #[test]
    fn rotation_gives_conjugate_pair() {
        let a = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        let e = general_eigenvalues(&a).unwrap();
        assert!(close(e[0], 0.0, -1.0, 1e-12));
        assert!(close(e[1], 0.0, 1.0, 1e-12));
        assert_eq!(e[0].re, e[1].re);
        assert_eq!(e[0].im, -e[1].im);
    }

    #[test]
    fn companion_of_quadratic() {
        // z² − 3z + 2 = (z − 1)(z − 2)
        let a = DenseMatrix::from_rows(&[vec![0.0, -2.0], vec![1.0, 3.0]]).unwrap();
        let e = general_eigenvalues(&a).unwrap();
        assert!(close(e[0], 1.0, 0.0, 1e-10));
        assert!(close(e[1], 2.0, 0.0, 1e-10));
    }

    #[test]
    fn mixed_block_spectrum() {
        // diag{rotation-scaling (2 ± 3i), 5, −1}
        let a = DenseMatrix::from_rows(&[
            vec![2.0, 3.0, 0.0, 0.0],
            vec![-3.0, 2.0, 0.0, 0.0],
            vec![0.0, 0.0, 5.0, 0.0],
            vec![0.0, 0.0, 0.0, -1.0],
        ])
        .unwrap();
        let e = general_eigenvalues(&a).unwrap();
        assert!(close(e[0], -1.0, 0.0, 1e-10));
        assert!(close(e[1], 2.0, -3.0, 1e-10));
        assert!(close(e[2], 2.0, 3.0, 1e-10));
        assert!(close(e[3], 5.0, 0.0, 1e-10));
    }

    #[test]
    fn dense_matrix_with_known_characteristic_roots() {
        // Companion of z³ − 6z² + 11z − 6 = (z−1)(z−2)(z−3).
        let a = DenseMatrix::from_rows(&[
            vec![0.0, 0.0, 6.0],
            vec![1.0, 0.0, -11.0],
            vec![0.0, 1.0, 6.0],
        ])
        .unwrap();
        let e = general_eigenvalues(&a).unwrap();
        assert!(close(e[0], 1.0, 0.0, 1e-9));
        assert!(close(e[1], 2.0, 0.0, 1e-9));
        assert!(close(e[2], 3.0, 0.0, 1e-9));
    }
}
