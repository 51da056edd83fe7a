//! Numerical tolerances shared across the crate.

/// Tolerances used by the eigensolvers, definiteness tests and geometric
/// comparisons. All fields must be strictly positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Jacobi convergence: off-diagonal Frobenius norm relative to ‖A‖_F.
    pub eig_tol: f64,
    /// Definiteness threshold, applied as ±def_margin·max(1, ‖A‖_F) around zero.
    pub def_margin: f64,
    /// Absolute tolerance for interval and angle comparisons.
    pub geom_tol: f64,
}

impl ToleranceConfig {
    pub fn new(eig_tol: f64, def_margin: f64, geom_tol: f64) -> Option<Self> {
        if eig_tol > 0.0 && def_margin > 0.0 && geom_tol > 0.0 {
            Some(ToleranceConfig { eig_tol, def_margin, geom_tol })
        } else {
            None
        }
    }

    /// Threshold below which an eigenvalue of `a`-sized matrices counts as zero.
    pub fn zero_threshold(&self, norm: f64) -> f64 {
        self.def_margin * norm.max(1.0)
    }
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig { eig_tol: 1e-12, def_margin: 1e-9, geom_tol: 1e-8 }
    }
}
