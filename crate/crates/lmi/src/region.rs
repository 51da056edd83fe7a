//! The LMI region model: a validated generating pair (L, M), the
//! characteristic function f(z) = L + Mz + Mᵀz̄, membership tests, region
//! algebra, and builders for the standard textbook regions.

use crate::config::ToleranceConfig;
use crate::kernel;
use crate::matrix::DenseMatrix;
use std::fmt;

/// Error raised when constructing or transforming a region.
#[derive(Debug, Clone, PartialEq)]
pub enum RegionError {
    /// The L matrix is not symmetric within tolerance.
    NotSymmetricL,
    /// L and M have different dimensions.
    DimensionMismatch { l: usize, m: usize },
    /// Scaling by zero is not a bijection of the plane.
    ZeroScale,
    /// A builder parameter is outside its admissible range.
    ParameterOutOfRange { param: &'static str, requirement: &'static str },
}

impl fmt::Display for RegionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionError::NotSymmetricL => write!(f, "L must be symmetric"),
            RegionError::DimensionMismatch { l, m } => {
                write!(f, "L is {l}x{l} but M is {m}x{m}")
            }
            RegionError::ZeroScale => write!(f, "scale factor must be nonzero"),
            RegionError::ParameterOutOfRange { param, requirement } => {
                write!(f, "parameter {param} out of range: requires {requirement}")
            }
        }
    }
}

impl std::error::Error for RegionError {}

/// Point x + iy of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub x: f64,
    pub y: f64,
}

impl ComplexPoint {
    pub fn new(x: f64, y: f64) -> Self {
        ComplexPoint { x, y }
    }

    pub fn conj(self) -> Self {
        ComplexPoint { x: self.x, y: -self.y }
    }

    pub fn abs(self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// An LMI region {z : L + Mz + Mᵀz̄ ≺ 0}, carrying the symmetric/skew split
/// of M that every evaluation goes through. Immutable after construction.
#[derive(Debug, Clone)]
pub struct LmiRegion {
    l: DenseMatrix,
    m: DenseMatrix,
    sym_m: DenseMatrix,
    skew_m: DenseMatrix,
}

impl LmiRegion {
    /// Validate and build a region from its generating pair. L may deviate
    /// from symmetry by at most def_margin·‖L‖_F and is symmetrized.
    pub fn new(l: DenseMatrix, m: DenseMatrix, cfg: &ToleranceConfig) -> Result<Self, RegionError> {
        if l.dim() != m.dim() {
            return Err(RegionError::DimensionMismatch { l: l.dim(), m: m.dim() });
        }
        if l.asymmetry() > cfg.def_margin * l.frobenius().max(f64::MIN_POSITIVE) {
            return Err(RegionError::NotSymmetricL);
        }
        let sym_m = m.sym_part();
        let skew_m = m.skew_part();
        Ok(LmiRegion { l: l.sym_part(), m, sym_m, skew_m })
    }

    /// Order of this characteristic function (dimension of L and M).
    pub fn order(&self) -> usize {
        self.l.dim()
    }

    pub fn l(&self) -> &DenseMatrix {
        &self.l
    }

    pub fn m(&self) -> &DenseMatrix {
        &self.m
    }

    pub fn sym_m(&self) -> &DenseMatrix {
        &self.sym_m
    }

    pub fn skew_m(&self) -> &DenseMatrix {
        &self.skew_m
    }

    /// Does M have a vanishing skew part (within tolerance)?
    pub fn skew_is_zero(&self, cfg: &ToleranceConfig) -> bool {
        self.skew_m.frobenius() <= cfg.zero_threshold(self.m.frobenius())
    }

    /// Does M have a vanishing symmetric part (within tolerance)?
    pub fn sym_is_zero(&self, cfg: &ToleranceConfig) -> bool {
        self.sym_m.frobenius() <= cfg.zero_threshold(self.m.frobenius())
    }

    /// The characteristic value at z, split as the Hermitian pair (A, B)
    /// with f(z) = A + iB: A = L + 2x·Sym(M), B = 2y·Skew(M).
    pub fn char_fn(&self, z: ComplexPoint) -> (DenseMatrix, DenseMatrix) {
        let a = &self.l + &self.sym_m.scaled(2.0 * z.x);
        let b = self.skew_m.scaled(2.0 * z.y);
        (a, b)
    }

    /// Strict membership: f(z) ≺ 0. Points within the definiteness margin of
    /// the boundary are excluded.
    pub fn contains(&self, z: ComplexPoint, cfg: &ToleranceConfig) -> bool {
        let (a, b) = self.char_fn(z);
        kernel::hermitian_negdef(&a, &b, cfg).expect("characteristic value is a valid Hermitian pair")
    }

    /// Closure membership: f(z) ⪯ 0, largest eigenvalue at most the margin.
    pub fn contains_closure(&self, z: ComplexPoint, cfg: &ToleranceConfig) -> bool {
        let (a, b) = self.char_fn(z);
        let lmax = kernel::hermitian_max_eig(&a, &b, cfg)
            .expect("characteristic value is a valid Hermitian pair");
        lmax <= cfg.zero_threshold(a.frobenius().hypot(b.frobenius()))
    }

    /// Largest eigenvalue of f(z); negative inside, positive outside.
    pub fn boundary_indicator(&self, z: ComplexPoint, cfg: &ToleranceConfig) -> f64 {
        let (a, b) = self.char_fn(z);
        kernel::hermitian_max_eig(&a, &b, cfg)
            .expect("characteristic value is a valid Hermitian pair")
    }

    /// Intersection by block-diagonal stacking of the generating pairs.
    pub fn intersect(&self, other: &LmiRegion) -> LmiRegion {
        let l = DenseMatrix::block_diag(&[&self.l, &other.l]);
        let m = DenseMatrix::block_diag(&[&self.m, &other.m]);
        LmiRegion {
            sym_m: m.sym_part(),
            skew_m: m.skew_part(),
            l,
            m,
        }
    }

    /// The region α + 𝔇 shifted along the real axis: L ← L − 2α·Sym(M).
    pub fn shift(&self, alpha: f64) -> LmiRegion {
        let l = &self.l - &self.sym_m.scaled(2.0 * alpha);
        LmiRegion { l, m: self.m.clone(), sym_m: self.sym_m.clone(), skew_m: self.skew_m.clone() }
    }

    /// The region α·𝔇: L ← |α|L, M ← sign(α)M.
    pub fn scale(&self, alpha: f64) -> Result<LmiRegion, RegionError> {
        if alpha == 0.0 {
            return Err(RegionError::ZeroScale);
        }
        let sign = if alpha > 0.0 { 1.0 } else { -1.0 };
        let l = self.l.scaled(alpha.abs());
        let m = self.m.scaled(sign);
        Ok(LmiRegion { sym_m: m.sym_part(), skew_m: m.skew_part(), l, m })
    }

    /// The congruence-transformed pair (S L Sᵀ, S M Sᵀ), which defines the
    /// same region for nonsingular S.
    pub fn congruent(&self, s: &DenseMatrix, cfg: &ToleranceConfig) -> Result<LmiRegion, RegionError> {
        let l = kernel::congruence(&self.l, s)
            .map_err(|_| RegionError::DimensionMismatch { l: self.l.dim(), m: s.dim() })?;
        let m = kernel::congruence(&self.m, s)
            .map_err(|_| RegionError::DimensionMismatch { l: self.m.dim(), m: s.dim() })?;
        LmiRegion::new(l.sym_part(), m, cfg)
    }
}

/// Builders for the standard regions, emitting the textbook generating
/// matrices verbatim.
pub mod builders {
    use super::*;

    /// ℂ⁻ = {Re z < 0}, characteristic function z + z̄.
    pub fn left_halfplane() -> LmiRegion {
        let cfg = ToleranceConfig::default();
        LmiRegion::new(DenseMatrix::zeros(1), DenseMatrix::diag(&[1.0]), &cfg).unwrap()
    }

    /// Open disk D(a, r) centered on the real axis.
    pub fn disk(a: f64, r: f64) -> Result<LmiRegion, RegionError> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(RegionError::ParameterOutOfRange { param: "r", requirement: "finite r > 0" });
        }
        if !a.is_finite() {
            return Err(RegionError::ParameterOutOfRange { param: "a", requirement: "finite a" });
        }
        let l = DenseMatrix::from_rows(&[vec![-r, -a], vec![-a, -r]]).unwrap();
        let m = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        Ok(LmiRegion::new(l, m, &ToleranceConfig::default()).unwrap())
    }

    /// Conic sector with apex at the origin, half-angle θ, opening toward −∞.
    pub fn conic_sector(theta: f64) -> Result<LmiRegion, RegionError> {
        if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2) {
            return Err(RegionError::ParameterOutOfRange {
                param: "theta",
                requirement: "0 < theta < pi/2",
            });
        }
        let (s, c) = (theta.sin(), theta.cos());
        let l = DenseMatrix::zeros(2);
        let m = DenseMatrix::from_rows(&[vec![s, c], vec![-c, s]]).unwrap();
        Ok(LmiRegion::new(l, m, &ToleranceConfig::default()).unwrap())
    }

    /// Conic sector truncated by the line x = δ (δ < 0).
    pub fn sliced_sector(theta: f64, delta: f64) -> Result<LmiRegion, RegionError> {
        if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2) {
            return Err(RegionError::ParameterOutOfRange {
                param: "theta",
                requirement: "0 < theta < pi/2",
            });
        }
        if !(delta < 0.0 && delta.is_finite()) {
            return Err(RegionError::ParameterOutOfRange {
                param: "delta",
                requirement: "finite delta < 0",
            });
        }
        let (s, c) = (theta.sin(), theta.cos());
        let l = DenseMatrix::diag(&[0.0, 0.0, -2.0 * delta]);
        let m = DenseMatrix::from_rows(&[
            vec![s, c, 0.0],
            vec![-c, s, 0.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap();
        Ok(LmiRegion::new(l, m, &ToleranceConfig::default()).unwrap())
    }

    /// Vertical strip −β < Re z < −α with 0 < α < β.
    pub fn vstrip(alpha: f64, beta: f64) -> Result<LmiRegion, RegionError> {
        if !(alpha > 0.0 && beta > alpha && beta.is_finite()) {
            return Err(RegionError::ParameterOutOfRange {
                param: "alpha,beta",
                requirement: "0 < alpha < beta, finite",
            });
        }
        let l = DenseMatrix::diag(&[2.0 * alpha, -2.0 * beta]);
        let m = DenseMatrix::diag(&[1.0, -1.0]);
        Ok(LmiRegion::new(l, m, &ToleranceConfig::default()).unwrap())
    }

    /// Horizontal strip from the textbook matrices; with those matrices the
    /// strip realized is |Im z| < w0/2.
    pub fn hstrip(w0: f64) -> Result<LmiRegion, RegionError> {
        if !(w0 > 0.0 && w0.is_finite()) {
            return Err(RegionError::ParameterOutOfRange { param: "w0", requirement: "finite w0 > 0" });
        }
        let l = DenseMatrix::diag(&[-w0, -w0]);
        let m = DenseMatrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        Ok(LmiRegion::new(l, m, &ToleranceConfig::default()).unwrap())
    }

    /// S(α, r, θ): intersection of the halfplane {x < α}, the disk D(0, r)
    /// and the conic sector of half-angle θ; order 5. Empty when α < −r.
    pub fn s_region(alpha: f64, r: f64, theta: f64) -> Result<LmiRegion, RegionError> {
        if !(alpha < 0.0 && alpha.is_finite()) {
            return Err(RegionError::ParameterOutOfRange {
                param: "alpha",
                requirement: "finite alpha < 0",
            });
        }
        if !(r > 0.0 && r.is_finite()) {
            return Err(RegionError::ParameterOutOfRange { param: "r", requirement: "finite r > 0" });
        }
        if !(theta > 0.0 && theta < std::f64::consts::FRAC_PI_2) {
            return Err(RegionError::ParameterOutOfRange {
                param: "theta",
                requirement: "0 < theta < pi/2",
            });
        }
        let (s, c) = (theta.sin(), theta.cos());
        let l = DenseMatrix::diag(&[-2.0 * alpha, -r, -r, 0.0, 0.0]);
        let mut m = DenseMatrix::zeros(5);
        m[(0, 0)] = 1.0;
        m[(1, 2)] = 1.0;
        m[(3, 3)] = s;
        m[(3, 4)] = c;
        m[(4, 3)] = -c;
        m[(4, 4)] = s;
        Ok(LmiRegion::new(l, m, &ToleranceConfig::default()).unwrap())
    }

    /// Interior of the left-opening parabola y² < −ε²x.
    pub fn parabola(eps: f64) -> Result<LmiRegion, RegionError> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(RegionError::ParameterOutOfRange { param: "eps", requirement: "finite eps > 0" });
        }
        let l = DenseMatrix::diag(&[-eps * eps, 0.0]);
        let m = DenseMatrix::from_rows(&[vec![0.5, -1.0], vec![0.0, 0.5]]).unwrap();
        Ok(LmiRegion::new(l, m, &ToleranceConfig::default()).unwrap())
    }
}
