//! Geometric analysis of LMI regions: emptiness, the real-axis interval,
//! boundedness, lineality, recession cones and their inner angle, vertical
//! slice bounds, inscribed disks and the ω characteristic.

use crate::config::ToleranceConfig;
use crate::kernel::{
    self, cholesky_spd, general_eigenvalues, orthogonal_arg_spectrum, polar_decompose, skew_spectrum,
    sym_eigen, Definiteness, KernelError,
};
use crate::matrix::{triangular_congruence, DenseMatrix, Lu};
use crate::region::{ComplexPoint, LmiRegion};
use num_complex::Complex64;
use std::fmt;

/// Error raised by the analysis routines.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalysisError {
    /// The region is empty where a nonempty one is required.
    EmptyRegion,
    /// The requested abscissa is not strictly inside the real-axis interval.
    OutOfInterval,
    /// Sym(M) is singular where an inverse is required.
    SingularSymM,
    /// The real-axis interval strictly contains the origin, so r(x)/|x|
    /// degenerates.
    ContainsOrigin,
    /// Sym(M) is not definite where a cone angle is required.
    NotDefinite,
    /// The region is the whole plane; every disk is inscribed.
    WholePlane,
    /// Propagated kernel failure.
    Kernel(KernelError),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::EmptyRegion => write!(f, "region is empty"),
            AnalysisError::OutOfInterval => {
                write!(f, "abscissa is not strictly inside the real-axis interval")
            }
            AnalysisError::SingularSymM => write!(f, "Sym(M) is singular"),
            AnalysisError::ContainsOrigin => {
                write!(f, "real-axis interval contains the origin")
            }
            AnalysisError::NotDefinite => write!(f, "Sym(M) is not definite"),
            AnalysisError::WholePlane => write!(f, "region is the whole plane"),
            AnalysisError::Kernel(e) => write!(f, "kernel failure: {e}"),
        }
    }
}

impl std::error::Error for AnalysisError {}

impl From<KernelError> for AnalysisError {
    fn from(e: KernelError) -> Self {
        AnalysisError::Kernel(e)
    }
}

/// Open interval of the real axis, possibly unbounded, or empty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealInterval {
    Empty,
    /// Open interval (lo, hi); lo may be −∞ and hi may be +∞.
    Open { lo: f64, hi: f64 },
}

impl RealInterval {
    pub fn is_empty(&self) -> bool {
        matches!(self, RealInterval::Empty)
    }

    /// Strict containment of x.
    pub fn contains(&self, x: f64) -> bool {
        match *self {
            RealInterval::Empty => false,
            RealInterval::Open { lo, hi } => x > lo && x < hi,
        }
    }

    /// Containment with a safety margin away from finite endpoints.
    pub fn contains_with_margin(&self, x: f64, margin: f64) -> bool {
        match *self {
            RealInterval::Empty => false,
            RealInterval::Open { lo, hi } => {
                let lo_ok = lo.is_infinite() || x > lo + margin;
                let hi_ok = hi.is_infinite() || x < hi - margin;
                lo_ok && hi_ok
            }
        }
    }

    pub fn endpoints(&self) -> Option<(f64, f64)> {
        match *self {
            RealInterval::Empty => None,
            RealInterval::Open { lo, hi } => Some((lo, hi)),
        }
    }

    pub fn to_json(&self) -> String {
        match *self {
            RealInterval::Empty => "{\"empty\":true}".to_string(),
            RealInterval::Open { lo, hi } => {
                format!("{{\"lo\":{},\"hi\":{}}}", json_num(lo), json_num(hi))
            }
        }
    }
}

/// Render a float for JSON, spelling infinities as quoted strings.
pub(crate) fn json_num(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else if v > 0.0 {
        "\"inf\"".to_string()
    } else {
        "\"-inf\"".to_string()
    }
}

/// Lineality space of a region: the set of directions along which full lines
/// stay inside.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinealityClass {
    Zero,
    RealAxis,
    ImaginaryAxis,
    WholePlane,
}

impl LinealityClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            LinealityClass::Zero => "zero",
            LinealityClass::RealAxis => "real_axis",
            LinealityClass::ImaginaryAxis => "imaginary_axis",
            LinealityClass::WholePlane => "whole_plane",
        }
    }
}

/// Direction along the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    TowardMinusInf,
    TowardPlusInf,
}

impl Orientation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Orientation::TowardMinusInf => "toward_minus_inf",
            Orientation::TowardPlusInf => "toward_plus_inf",
        }
    }
}

/// Shape class of the recession cone {z : Mz + Mᵀz̄ ⪯ 0}.
///
/// The ray kinds are named for the semidefiniteness class of Sym(M) that
/// produces them: `RayPos` is the single horizontal ray of a singular
/// positive-semidefinite symmetric part and extends toward −∞, `RayNeg` the
/// negative-semidefinite counterpart extending toward +∞. The `orientation`
/// field of [`RecessionCone`] always carries the direction of recession.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecessionKind {
    Point,
    RayPos,
    RayNeg,
    ProperCone,
    LeftHalfplane,
    RightHalfplane,
    RealLine,
    ImaginaryAxisLine,
    VerticalHalfplaneClosed,
    Plane,
}

impl RecessionKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RecessionKind::Point => "point",
            RecessionKind::RayPos => "ray_pos",
            RecessionKind::RayNeg => "ray_neg",
            RecessionKind::ProperCone => "proper_cone",
            RecessionKind::LeftHalfplane => "left_halfplane",
            RecessionKind::RightHalfplane => "right_halfplane",
            RecessionKind::RealLine => "real_line",
            RecessionKind::ImaginaryAxisLine => "imaginary_axis_line",
            RecessionKind::VerticalHalfplaneClosed => "vertical_halfplane_closed",
            RecessionKind::Plane => "plane",
        }
    }
}

/// Recession cone classification, with the half-angle for proper cones and
/// the direction of recession where one exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecessionCone {
    pub kind: RecessionKind,
    pub angle: Option<f64>,
    pub orientation: Option<Orientation>,
}

impl RecessionCone {
    fn plain(kind: RecessionKind) -> Self {
        RecessionCone { kind, angle: None, orientation: None }
    }

    fn oriented(kind: RecessionKind, o: Orientation) -> Self {
        RecessionCone { kind, angle: None, orientation: Some(o) }
    }

    pub fn to_json(&self) -> String {
        let mut s = format!("{{\"kind\":\"{}\"", self.kind.as_str());
        if let Some(a) = self.angle {
            s.push_str(&format!(",\"angle\":{}", json_num(a)));
        }
        if let Some(o) = self.orientation {
            s.push_str(&format!(",\"orientation\":\"{}\"", o.as_str()));
        }
        s.push('}');
        s
    }
}

/// Aggregate analysis of one region.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionReport {
    pub order: usize,
    pub empty: bool,
    pub bounded: bool,
    pub interval: RealInterval,
    pub lineality: LinealityClass,
    pub recession: RecessionCone,
}

impl RegionReport {
    pub fn to_json(&self) -> String {
        format!(
            "{{\"order\":{},\"empty\":{},\"bounded\":{},\"interval\":{},\"lineality\":\"{}\",\"recession\":{}}}",
            self.order,
            self.empty,
            self.bounded,
            self.interval.to_json(),
            self.lineality.as_str(),
            self.recession.to_json(),
        )
    }
}

/// Disk D(center_x, radius) centered on the real axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center_x: f64,
    pub radius: f64,
}

impl Disk {
    pub fn to_json(&self) -> String {
        format!("{{\"center_x\":{},\"radius\":{}}}", json_num(self.center_x), json_num(self.radius))
    }
}

/// Sampled infimum of r(x)/|x| with the grid size that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaEstimate {
    pub value: f64,
    pub samples: usize,
}

impl OmegaEstimate {
    pub fn to_json(&self) -> String {
        format!("{{\"value\":{},\"samples\":{}}}", json_num(self.value), self.samples)
    }
}

fn symmetric_negdef(a: &DenseMatrix, cfg: &ToleranceConfig) -> bool {
    matches!(cholesky_spd(&a.scaled(-1.0), cfg), Ok(_))
}

/// L + 2x·Sym(M), the characteristic value restricted to the real axis.
fn l_at(r: &LmiRegion, x: f64) -> DenseMatrix {
    r.l() + &r.sym_m().scaled(2.0 * x)
}

fn member_on_axis(r: &LmiRegion, x: f64, cfg: &ToleranceConfig) -> bool {
    symmetric_negdef(&l_at(r, x), cfg)
}

/// The open interval 𝔇 ∩ ℝ = {x : L + 2x·Sym(M) ≺ 0}.
///
/// Candidate boundary abscissae are taken from the real spectrum of
/// −½·Sym(M)⁻¹L (reduced to the range of Sym(M) through a Schur complement
/// when singular); membership at segment midpoints then selects the single
/// open feasible interval, with far probes deciding unbounded sides.
pub fn real_interval(r: &LmiRegion, cfg: &ToleranceConfig) -> RealInterval {
    let s = r.sym_m();
    let l = r.l();
    let n = r.order();

    if r.sym_is_zero(cfg) {
        return if symmetric_negdef(l, cfg) {
            RealInterval::Open { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
        } else {
            RealInterval::Empty
        };
    }

    let eig_s = sym_eigen(s, cfg).expect("Sym(M) is symmetric by construction");
    let zero_t = cfg.zero_threshold(s.frobenius());
    let nonzero: Vec<usize> =
        (0..n).filter(|&i| eig_s.eigenvalues[i].abs() > zero_t).collect();
    let kernel_idx: Vec<usize> =
        (0..n).filter(|&i| eig_s.eigenvalues[i].abs() <= zero_t).collect();
    if nonzero.is_empty() {
        return if symmetric_negdef(l, cfg) {
            RealInterval::Open { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
        } else {
            RealInterval::Empty
        };
    }
    let sigma_min = nonzero
        .iter()
        .map(|&i| eig_s.eigenvalues[i].abs())
        .fold(f64::INFINITY, f64::min);

    let mut candidates: Vec<f64> = Vec::new();
    if kernel_idx.is_empty() {
        // det(L + 2xS) = 0 at the real eigenvalues of −½·S⁻¹L.
        if let Ok(lu) = Lu::factor(s) {
            let c = lu.solve_matrix(l).scaled(-0.5);
            if let Ok(eigs) = general_eigenvalues(&c) {
                let imag_tol = 1e-7 * (1.0 + c.frobenius());
                for e in eigs {
                    if e.im.abs() <= imag_tol {
                        candidates.push(e.re);
                    }
                }
            }
        }
    } else {
        // Reduce the pencil to the range of S by a Schur complement over the
        // kernel block; degenerate kernel blocks fall back to probing alone.
        let q = &eig_s.eigenvectors;
        let lt = &(&q.transpose() * l) * q;
        let l_kk = lt.submatrix(&kernel_idx);
        if let Ok(lu_kk) = Lu::factor(&l_kk) {
            let nr = nonzero.len();
            let l_rr = lt.submatrix(&nonzero);
            let mut l_rk = DenseMatrix::zeros(nr.max(kernel_idx.len()));
            // Rectangular corner blocks, padded square for the small solver.
            let pad = nr.max(kernel_idx.len());
            let mut l_kr = DenseMatrix::zeros(pad);
            for (a, &i) in nonzero.iter().enumerate() {
                for (b, &j) in kernel_idx.iter().enumerate() {
                    l_rk[(a, b)] = lt[(i, j)];
                    l_kr[(b, a)] = lt[(j, i)];
                }
            }
            // A_eff = L_rr − L_rk·L_kk⁻¹·L_kr on the range block.
            let mut a_eff = l_rr.clone();
            for a in 0..nr {
                for b in 0..nr {
                    let rhs: Vec<f64> = (0..kernel_idx.len()).map(|t| l_kr[(t, b)]).collect();
                    let x = lu_kk.solve_vec(&rhs);
                    let mut dot = 0.0;
                    for (t, xv) in x.iter().enumerate() {
                        dot += l_rk[(a, t)] * xv;
                    }
                    a_eff[(a, b)] -= dot;
                }
            }
            let mut c = DenseMatrix::zeros(nr);
            for a in 0..nr {
                let lam = eig_s.eigenvalues[nonzero[a]];
                for b in 0..nr {
                    c[(a, b)] = -0.5 * a_eff[(a, b)] / lam;
                }
            }
            if let Ok(eigs) = general_eigenvalues(&c) {
                let imag_tol = 1e-7 * (1.0 + c.frobenius());
                for e in eigs {
                    if e.im.abs() <= imag_tol {
                        candidates.push(e.re);
                    }
                }
            }
        }
    }

    candidates.retain(|v| v.is_finite());
    candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
    candidates.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs())));

    let probe = 10.0 * (1.0 + l.frobenius() / sigma_min.max(cfg.def_margin));
    if candidates.is_empty() {
        return if member_on_axis(r, 0.0, cfg) {
            RealInterval::Open { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
        } else {
            RealInterval::Empty
        };
    }

    // Segment test points: far-left probe, midpoints, far-right probe.
    let k = candidates.len();
    let mut tests = Vec::with_capacity(k + 1);
    tests.push(candidates[0].min(-probe) - 1.0);
    for i in 1..k {
        tests.push(0.5 * (candidates[i - 1] + candidates[i]));
    }
    tests.push(candidates[k - 1].max(probe) + 1.0);

    let feasible: Vec<bool> = tests.iter().map(|&x| member_on_axis(r, x, cfg)).collect();
    let first = feasible.iter().position(|&f| f);
    let Some(start) = first else {
        return RealInterval::Empty;
    };
    let mut end = start;
    while end + 1 < feasible.len() && feasible[end + 1] {
        end += 1;
    }
    let lo = if start == 0 { f64::NEG_INFINITY } else { candidates[start - 1] };
    let hi = if end == k { f64::INFINITY } else { candidates[end] };
    RealInterval::Open { lo, hi }
}

/// Emptiness through the real-axis interval.
pub fn is_empty(r: &LmiRegion, cfg: &ToleranceConfig) -> bool {
    real_interval(r, cfg).is_empty()
}

/// Estimate the rank of a matrix by Gaussian elimination with full pivoting.
fn rank_estimate(a: &DenseMatrix, tol: f64) -> usize {
    let n = a.dim();
    let mut w = a.clone();
    let mut rank = 0;
    let mut live_rows: Vec<usize> = (0..n).collect();
    let mut live_cols: Vec<usize> = (0..n).collect();
    while !live_rows.is_empty() && !live_cols.is_empty() {
        let mut best = 0.0;
        let mut bi = 0;
        let mut bj = 0;
        for (ri, &i) in live_rows.iter().enumerate() {
            for (cj, &j) in live_cols.iter().enumerate() {
                if w[(i, j)].abs() > best {
                    best = w[(i, j)].abs();
                    bi = ri;
                    bj = cj;
                }
            }
        }
        if best <= tol {
            break;
        }
        rank += 1;
        let pi = live_rows[bi];
        let pj = live_cols[bj];
        live_rows.remove(bi);
        live_cols.remove(bj);
        for &i in &live_rows {
            let f = w[(i, pj)] / w[(pi, pj)];
            for &j in &live_cols {
                let sub = f * w[(pi, j)];
                w[(i, j)] -= sub;
            }
        }
    }
    rank
}

/// Necessary condition for nonemptiness: C = Sym(M)⁻¹L must have a real
/// spectrum and a full set of eigenvectors. A `false` certifies emptiness;
/// `true` alone proves nothing.
pub fn necessary_nonempty(r: &LmiRegion, cfg: &ToleranceConfig) -> Result<bool, AnalysisError> {
    let s = r.sym_m();
    let eig_s = sym_eigen(s, cfg).expect("Sym(M) is symmetric by construction");
    let zero_t = cfg.zero_threshold(s.frobenius());
    if eig_s.eigenvalues.iter().any(|l| l.abs() <= zero_t) {
        return Err(AnalysisError::SingularSymM);
    }
    let lu = Lu::factor(s).map_err(|_| AnalysisError::SingularSymM)?;
    let c = lu.solve_matrix(r.l());
    let scale = 1.0 + c.frobenius();
    let eigs = general_eigenvalues(&c)?;
    if eigs.iter().any(|e| e.im.abs() > 1e-7 * scale) {
        return Ok(false);
    }
    // Cluster the (real) spectrum and compare algebraic multiplicity with
    // the nullity of C − λI on each cluster.
    let mut res: Vec<f64> = eigs.iter().map(|e| e.re).collect();
    res.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let gap = 1e-7 * scale;
    let mut i = 0;
    while i < res.len() {
        let mut j = i + 1;
        while j < res.len() && (res[j] - res[j - 1]).abs() <= gap {
            j += 1;
        }
        let mult = j - i;
        if mult > 1 {
            let lambda = res[i..j].iter().sum::<f64>() / mult as f64;
            let mut shifted = c.clone();
            for d in 0..shifted.dim() {
                shifted[(d, d)] -= lambda;
            }
            let rank = rank_estimate(&shifted, 1e-8 * scale);
            if shifted.dim() - rank < mult {
                return Ok(false);
            }
        }
        i = j;
    }
    Ok(true)
}

/// Lineality space classification.
pub fn lineality(r: &LmiRegion, cfg: &ToleranceConfig) -> Result<LinealityClass, AnalysisError> {
    let sym_zero = r.sym_is_zero(cfg);
    let skew_zero = r.skew_is_zero(cfg);
    if sym_zero && skew_zero {
        return if symmetric_negdef(r.l(), cfg) {
            Ok(LinealityClass::WholePlane)
        } else {
            Err(AnalysisError::EmptyRegion)
        };
    }
    if is_empty(r, cfg) {
        return Err(AnalysisError::EmptyRegion);
    }
    Ok(if skew_zero {
        LinealityClass::ImaginaryAxis
    } else if sym_zero {
        LinealityClass::RealAxis
    } else {
        LinealityClass::Zero
    })
}

/// Inner half-angle of the recession cone when Sym(M) is definite.
///
/// Computed by the Cholesky-congruence route: with ±Sym(M) = TTᵀ and ν_i the
/// skew spectrum of T⁻¹·Skew(M)·T⁻ᵀ, the cone is the intersection of the
/// elementary cones arctan(1/ν_i), so θ = min_i arctan(1/ν_i). The polar
/// route min_j |π/2 − arg λ_j(U)| is evaluated as a cross-check; it bounds θ
/// from above and coincides with it exactly when M is normal. Returns π/2
/// for Skew(M) = 0 (the cone degenerates to a halfplane).
pub fn cone_angle(r: &LmiRegion, cfg: &ToleranceConfig) -> Result<f64, AnalysisError> {
    let def = kernel::definiteness(r.sym_m(), cfg)?;
    let sign = match def {
        Definiteness::PosDef => 1.0,
        Definiteness::NegDef => -1.0,
        _ => return Err(AnalysisError::NotDefinite),
    };
    if r.skew_is_zero(cfg) {
        return Ok(std::f64::consts::FRAC_PI_2);
    }

    let t = cholesky_spd(&r.sym_m().scaled(sign), cfg)?;
    let reduced = triangular_congruence(&t, r.skew_m());
    let nus = skew_spectrum(&reduced, cfg)?.nus;
    let theta = nus
        .iter()
        .map(|&nu| (1.0 / nu).atan())
        .fold(std::f64::consts::FRAC_PI_2, f64::min);

    let parts = polar_decompose(r.m(), cfg)?;
    let phis = orthogonal_arg_spectrum(&parts.u, cfg)?;
    let theta_upper = phis
        .iter()
        .map(|&phi| (std::f64::consts::FRAC_PI_2 - phi).abs())
        .fold(f64::INFINITY, f64::min);
    assert!(
        theta <= theta_upper + cfg.geom_tol,
        "polar-route bound violated: {theta} > {theta_upper}"
    );
    Ok(theta)
}

/// Recession cone of a nonempty region, classified from the definiteness of
/// Sym(M) and the vanishing of Skew(M).
pub fn recession_cone(r: &LmiRegion, cfg: &ToleranceConfig) -> Result<RecessionCone, AnalysisError> {
    if is_empty(r, cfg) {
        return Err(AnalysisError::EmptyRegion);
    }
    let skew_zero = r.skew_is_zero(cfg);
    let def = kernel::definiteness(r.sym_m(), cfg)?;
    Ok(match (def, skew_zero) {
        (Definiteness::Zero, true) => RecessionCone::plain(RecessionKind::Plane),
        (Definiteness::Zero, false) => RecessionCone::plain(RecessionKind::RealLine),
        (Definiteness::Indefinite, false) => RecessionCone::plain(RecessionKind::Point),
        (Definiteness::Indefinite, true) => {
            RecessionCone::plain(RecessionKind::ImaginaryAxisLine)
        }
        (Definiteness::PosDef, false) => RecessionCone {
            kind: RecessionKind::ProperCone,
            angle: Some(cone_angle(r, cfg)?),
            orientation: Some(Orientation::TowardMinusInf),
        },
        (Definiteness::NegDef, false) => RecessionCone {
            kind: RecessionKind::ProperCone,
            angle: Some(cone_angle(r, cfg)?),
            orientation: Some(Orientation::TowardPlusInf),
        },
        (Definiteness::PosDef, true) => {
            RecessionCone::oriented(RecessionKind::LeftHalfplane, Orientation::TowardMinusInf)
        }
        (Definiteness::NegDef, true) => {
            RecessionCone::oriented(RecessionKind::RightHalfplane, Orientation::TowardPlusInf)
        }
        (Definiteness::PosSemi, false) => {
            RecessionCone::oriented(RecessionKind::RayPos, Orientation::TowardMinusInf)
        }
        (Definiteness::NegSemi, false) => {
            RecessionCone::oriented(RecessionKind::RayNeg, Orientation::TowardPlusInf)
        }
        (Definiteness::PosSemi, true) => RecessionCone::oriented(
            RecessionKind::VerticalHalfplaneClosed,
            Orientation::TowardMinusInf,
        ),
        (Definiteness::NegSemi, true) => RecessionCone::oriented(
            RecessionKind::VerticalHalfplaneClosed,
            Orientation::TowardPlusInf,
        ),
    })
}

/// Half-height of the vertical slice of the region at abscissa x0: |y| bound
/// 1/(2·νmax) with νmax the largest skew spectral value of
/// T⁻¹·Skew(M)·T⁻ᵀ, −L(x0) = TTᵀ. Infinite when Skew(M) = 0.
pub fn slice_bound(r: &LmiRegion, x0: f64, cfg: &ToleranceConfig) -> Result<f64, AnalysisError> {
    let interval = real_interval(r, cfg);
    if !interval.contains_with_margin(x0, cfg.geom_tol) {
        return Err(AnalysisError::OutOfInterval);
    }
    if r.skew_is_zero(cfg) {
        return Ok(f64::INFINITY);
    }
    let neg_lx = l_at(r, x0).scaled(-1.0);
    let t = cholesky_spd(&neg_lx, cfg).map_err(|_| AnalysisError::OutOfInterval)?;
    let reduced = triangular_congruence(&t, r.skew_m());
    let spec = skew_spectrum(&reduced, cfg)?;
    let nu_max = spec.max_nu();
    if nu_max <= 0.0 {
        Ok(f64::INFINITY)
    } else {
        Ok(1.0 / (2.0 * nu_max))
    }
}

fn default_center(interval: &RealInterval) -> f64 {
    match *interval {
        RealInterval::Empty => 0.0,
        RealInterval::Open { lo, hi } => match (lo.is_finite(), hi.is_finite()) {
            (true, true) => 0.5 * (lo + hi),
            (false, true) => hi - 1.0,
            (true, false) => lo + 1.0,
            (false, false) => 0.0,
        },
    }
}

/// A disk guaranteed inside the region, centered at x0 (or a default center),
/// with the altitude-to-hypotenuse radius over the nearer interval endpoint
/// and the slice bound. Degenerates to ρ = d for vertical strips (infinite
/// slice) and to ρ = y for horizontal strips (infinite interval).
pub fn inscribed_disk(
    r: &LmiRegion,
    x0: Option<f64>,
    cfg: &ToleranceConfig,
) -> Result<Disk, AnalysisError> {
    let interval = real_interval(r, cfg);
    let Some((lo, hi)) = interval.endpoints() else {
        return Err(AnalysisError::EmptyRegion);
    };
    let x = x0.unwrap_or_else(|| default_center(&interval));
    if !interval.contains_with_margin(x, cfg.geom_tol) {
        return Err(AnalysisError::OutOfInterval);
    }
    let y = slice_bound(r, x, cfg)?;
    let d = (x - lo).min(hi - x);
    let radius = match (d.is_finite(), y.is_finite()) {
        (true, true) => d * y / (d * d + y * y).sqrt(),
        (true, false) => d,
        (false, true) => y,
        (false, false) => return Err(AnalysisError::WholePlane),
    };
    Ok(Disk { center_x: x, radius })
}

/// Sampled infimum of r(𝔇, x)/|x| over the real-axis interval, on a
/// 256-point logarithmic grid plus refinement ladders toward each finite
/// endpoint; an unbounded side is truncated 10³ beyond the finite end.
pub fn omega(r: &LmiRegion, cfg: &ToleranceConfig) -> Result<OmegaEstimate, AnalysisError> {
    let interval = real_interval(r, cfg);
    let Some((lo, hi)) = interval.endpoints() else {
        return Err(AnalysisError::EmptyRegion);
    };
    if lo < 0.0 && hi > 0.0 {
        return Err(AnalysisError::ContainsOrigin);
    }

    let a = if lo.is_finite() { lo } else { (if hi.is_finite() { hi } else { 0.0 }) - 1000.0 };
    let b = if hi.is_finite() { hi } else { (if lo.is_finite() { lo } else { 0.0 }) + 1000.0 };
    let negative_side = b <= 0.0;
    let (mut abs_lo, mut abs_hi) = if negative_side { (-b, -a) } else { (a, b) };
    if abs_lo <= 0.0 {
        abs_lo = (abs_hi * 1e-6).min(1e-3);
    }
    abs_lo *= 1.0 + 1e-9;
    abs_hi *= 1.0 - 1e-9;

    let mut xs: Vec<f64> = Vec::with_capacity(300);
    if abs_lo < abs_hi {
        let ratio = abs_hi / abs_lo;
        for i in 0..256 {
            let t = i as f64 / 255.0;
            let m = abs_lo * ratio.powf(t);
            xs.push(if negative_side { -m } else { m });
        }
    } else {
        xs.push(0.5 * (a + b));
    }
    // Refinement toward each finite endpoint of the original interval.
    let w = if (hi - lo).is_finite() { 0.5 * (hi - lo) } else { 1.0 }.min(1.0);
    for j in 1..=8 {
        let h = w * 10f64.powi(-j);
        if lo.is_finite() {
            xs.push(lo + h);
        }
        if hi.is_finite() {
            xs.push(hi - h);
        }
    }

    let mut best = f64::INFINITY;
    let mut used = 0;
    for &x in &xs {
        if x == 0.0 || !interval.contains_with_margin(x, cfg.geom_tol) {
            continue;
        }
        match inscribed_disk(r, Some(x), cfg) {
            Ok(disk) => {
                used += 1;
                best = best.min(disk.radius / x.abs());
            }
            Err(AnalysisError::OutOfInterval) => continue,
            Err(e) => return Err(e),
        }
    }
    if used == 0 {
        return Err(AnalysisError::EmptyRegion);
    }
    Ok(OmegaEstimate { value: best, samples: used })
}

/// Full per-region report. For an empty region the remaining fields take the
/// degenerate conventions empty/bounded/Point/Zero.
pub fn region_report(r: &LmiRegion, cfg: &ToleranceConfig) -> Result<RegionReport, AnalysisError> {
    let interval = real_interval(r, cfg);
    if interval.is_empty() {
        return Ok(RegionReport {
            order: r.order(),
            empty: true,
            bounded: true,
            interval,
            lineality: LinealityClass::Zero,
            recession: RecessionCone::plain(RecessionKind::Point),
        });
    }
    let lineality = lineality(r, cfg)?;
    let recession = recession_cone(r, cfg)?;
    Ok(RegionReport {
        order: r.order(),
        empty: false,
        bounded: recession.kind == RecessionKind::Point,
        interval,
        lineality,
        recession,
    })
}

/// Is every listed eigenvalue inside the region?
pub fn dstable(spectrum: &[Complex64], r: &LmiRegion, cfg: &ToleranceConfig) -> bool {
    spectrum.iter().all(|e| r.contains(ComplexPoint::new(e.re, e.im), cfg))
}

/// D-stability of a system matrix: compute its spectrum, then test membership.
pub fn dstable_matrix(
    a: &DenseMatrix,
    r: &LmiRegion,
    cfg: &ToleranceConfig,
) -> Result<bool, AnalysisError> {
    let spectrum = general_eigenvalues(a)?;
    Ok(dstable(&spectrum, r, cfg))
}
