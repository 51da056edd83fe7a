//! Rasterization and figure output: membership grids, zero contours of the
//! leading-principal-minor fields, and deterministic SVG/CSV writers.

use crate::analysis::{self, Disk, RealInterval};
use crate::classify::ElementaryPiece;
use crate::config::ToleranceConfig;
use crate::region::{ComplexPoint, LmiRegion};
use num_complex::Complex64;
use std::fmt;
use std::io::Write as _;
use std::path::Path;

#[derive(Debug)]
pub enum PlotError {
    /// Viewport bounds inverted or pixel counts below 16.
    InvalidViewport,
    /// Leading order outside 1..=n.
    IndexOutOfRange,
    Io(std::io::Error),
}

impl fmt::Display for PlotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlotError::InvalidViewport => write!(f, "invalid viewport"),
            PlotError::IndexOutOfRange => write!(f, "leading order out of range"),
            PlotError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl std::error::Error for PlotError {}

impl From<std::io::Error> for PlotError {
    fn from(e: std::io::Error) -> Self {
        PlotError::Io(e)
    }
}

/// World-coordinate window and its pixel resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
    pub width_px: usize,
    pub height_px: usize,
}

impl Viewport {
    pub fn new(
        x_lo: f64,
        x_hi: f64,
        y_lo: f64,
        y_hi: f64,
        width_px: usize,
        height_px: usize,
    ) -> Result<Self, PlotError> {
        let finite = x_lo.is_finite() && x_hi.is_finite() && y_lo.is_finite() && y_hi.is_finite();
        if !(finite && x_lo < x_hi && y_lo < y_hi && width_px >= 16 && height_px >= 16) {
            return Err(PlotError::InvalidViewport);
        }
        Ok(Viewport { x_lo, x_hi, y_lo, y_hi, width_px, height_px })
    }

    /// Center of cell (ix, iy); iy counts from y_lo upward.
    pub fn cell_center(&self, ix: usize, iy: usize) -> ComplexPoint {
        let dx = (self.x_hi - self.x_lo) / self.width_px as f64;
        let dy = (self.y_hi - self.y_lo) / self.height_px as f64;
        ComplexPoint::new(
            self.x_lo + (ix as f64 + 0.5) * dx,
            self.y_lo + (iy as f64 + 0.5) * dy,
        )
    }

    /// Corner (ix, iy) of the cell lattice, 0..=width, 0..=height.
    fn corner(&self, ix: usize, iy: usize) -> ComplexPoint {
        let dx = (self.x_hi - self.x_lo) / self.width_px as f64;
        let dy = (self.y_hi - self.y_lo) / self.height_px as f64;
        ComplexPoint::new(self.x_lo + ix as f64 * dx, self.y_lo + iy as f64 * dy)
    }
}

/// Membership raster with the largest-eigenvalue field and boundary band.
#[derive(Debug, Clone)]
pub struct MembershipGrid {
    pub viewport: Viewport,
    /// Row-major cells, index iy·width + ix.
    pub cells: Vec<bool>,
    pub lambda_max: Vec<f64>,
    pub boundary_mask: Vec<bool>,
}

impl MembershipGrid {
    pub fn at(&self, ix: usize, iy: usize) -> bool {
        self.cells[iy * self.viewport.width_px + ix]
    }

    pub fn member_count(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }
}

/// Magnitude scale of the characteristic values over a viewport, used to
/// size the boundary band.
fn field_scale(r: &LmiRegion, vp: &Viewport) -> f64 {
    let xm = vp.x_lo.abs().max(vp.x_hi.abs());
    let ym = vp.y_lo.abs().max(vp.y_hi.abs());
    (r.l().frobenius() + 2.0 * xm * r.sym_m().frobenius() + 2.0 * ym * r.skew_m().frobenius())
        .max(1.0)
}

/// Evaluate membership at every cell center; cells whose largest eigenvalue
/// is within 10⁻³ of the scale are flagged as boundary.
pub fn raster(r: &LmiRegion, vp: &Viewport, cfg: &ToleranceConfig) -> MembershipGrid {
    let band = 1e-3 * field_scale(r, vp);
    let mut cells = Vec::with_capacity(vp.width_px * vp.height_px);
    let mut lambda_max = Vec::with_capacity(vp.width_px * vp.height_px);
    let mut boundary_mask = Vec::with_capacity(vp.width_px * vp.height_px);
    for iy in 0..vp.height_px {
        for ix in 0..vp.width_px {
            let z = vp.cell_center(ix, iy);
            let lmax = r.boundary_indicator(z, cfg);
            cells.push(r.contains(z, cfg));
            boundary_mask.push(lmax.abs() <= band);
            lambda_max.push(lmax);
        }
    }
    MembershipGrid { viewport: *vp, cells, lambda_max, boundary_mask }
}

/// Determinant of the leading j×j block of the Hermitian value f(z); real up
/// to rounding, computed by a complex LU with partial pivoting.
fn leading_minor_det(r: &LmiRegion, z: ComplexPoint, j: usize) -> f64 {
    let (a, b) = r.char_fn(z);
    let mut w: Vec<Vec<Complex64>> = (0..j)
        .map(|p| (0..j).map(|q| Complex64::new(a[(p, q)], b[(p, q)])).collect())
        .collect();
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..j {
        let mut pivot = k;
        let mut best = w[k][k].norm();
        for p in (k + 1)..j {
            if w[p][k].norm() > best {
                best = w[p][k].norm();
                pivot = p;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if pivot != k {
            w.swap(k, pivot);
            det = -det;
        }
        det *= w[k][k];
        for p in (k + 1)..j {
            let f = w[p][k] / w[k][k];
            for q in (k + 1)..j {
                let sub = f * w[k][q];
                w[p][q] -= sub;
            }
        }
    }
    det.re
}

/// Zero contours of det(f(z) leading j×j block) on the viewport lattice,
/// extracted by marching squares with linear interpolation. Each polyline is
/// one cell-local segment.
pub fn minor_curves(
    r: &LmiRegion,
    vp: &Viewport,
    j: usize,
    _cfg: &ToleranceConfig,
) -> Result<Vec<Vec<(f64, f64)>>, PlotError> {
    if j == 0 || j > r.order() {
        return Err(PlotError::IndexOutOfRange);
    }
    let w = vp.width_px;
    let h = vp.height_px;
    let mut field = vec![0.0f64; (w + 1) * (h + 1)];
    for iy in 0..=h {
        for ix in 0..=w {
            field[iy * (w + 1) + ix] = leading_minor_det(r, vp.corner(ix, iy), j);
        }
    }
    let f = |ix: usize, iy: usize| field[iy * (w + 1) + ix];
    // Interpolated zero crossing between two corner values.
    let lerp = |pa: ComplexPoint, va: f64, pb: ComplexPoint, vb: f64| -> (f64, f64) {
        let t = if (vb - va).abs() < f64::MIN_POSITIVE { 0.5 } else { -va / (vb - va) };
        let t = t.clamp(0.0, 1.0);
        (pa.x + t * (pb.x - pa.x), pa.y + t * (pb.y - pa.y))
    };

    let mut segments: Vec<Vec<(f64, f64)>> = Vec::new();
    for iy in 0..h {
        for ix in 0..w {
            let p00 = vp.corner(ix, iy);
            let p10 = vp.corner(ix + 1, iy);
            let p01 = vp.corner(ix, iy + 1);
            let p11 = vp.corner(ix + 1, iy + 1);
            let v00 = f(ix, iy);
            let v10 = f(ix + 1, iy);
            let v01 = f(ix, iy + 1);
            let v11 = f(ix + 1, iy + 1);
            let mut case = 0usize;
            if v00 > 0.0 {
                case |= 1;
            }
            if v10 > 0.0 {
                case |= 2;
            }
            if v11 > 0.0 {
                case |= 4;
            }
            if v01 > 0.0 {
                case |= 8;
            }
            if case == 0 || case == 15 {
                continue;
            }
            let bottom = || lerp(p00, v00, p10, v10);
            let right = || lerp(p10, v10, p11, v11);
            let top = || lerp(p01, v01, p11, v11);
            let left = || lerp(p00, v00, p01, v01);
            let mut push = |a: (f64, f64), b: (f64, f64)| segments.push(vec![a, b]);
            match case {
                1 | 14 => push(left(), bottom()),
                2 | 13 => push(bottom(), right()),
                3 | 12 => push(left(), right()),
                4 | 11 => push(right(), top()),
                6 | 9 => push(bottom(), top()),
                7 | 8 => push(left(), top()),
                5 | 10 => {
                    // Saddle: split by the center sign.
                    let center = 0.25 * (v00 + v10 + v01 + v11);
                    let flip = (case == 5) == (center > 0.0);
                    if flip {
                        push(left(), bottom());
                        push(right(), top());
                    } else {
                        push(left(), top());
                        push(bottom(), right());
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    Ok(segments)
}

/// Shortest float representation capped at nine significant digits; keeps
/// SVG and CSV output byte-stable.
pub fn fmt9(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }
    let s = format!("{v}");
    let digits = s
        .split(['e', 'E'])
        .next()
        .unwrap()
        .chars()
        .filter(|c| c.is_ascii_digit())
        .collect::<String>();
    let sig = digits.trim_start_matches('0').len();
    if sig <= 9 {
        return s;
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        let fixed = format!("{v:.decimals$}");
        let trimmed = fixed.trim_end_matches('0').trim_end_matches('.');
        if trimmed == "-0" {
            "0".to_string()
        } else {
            trimmed.to_string()
        }
    } else {
        format!("{v:.8e}")
    }
}

/// Overlay drawn on top of the raster: an inscribed disk or the boundary of
/// an elementary factor.
#[derive(Debug, Clone)]
pub enum Overlay {
    Disk(Disk),
    Piece(ElementaryPiece),
}

struct SvgMapper {
    vp: Viewport,
    w: f64,
    h: f64,
}

impl SvgMapper {
    fn px(&self, x: f64) -> f64 {
        (x - self.vp.x_lo) / (self.vp.x_hi - self.vp.x_lo) * self.w
    }

    fn py(&self, y: f64) -> f64 {
        (self.vp.y_hi - y) / (self.vp.y_hi - self.vp.y_lo) * self.h
    }
}

/// Write a standalone SVG: filled membership cells, boundary polylines,
/// overlays and axes. Output is deterministic for identical inputs.
pub fn emit_svg(
    grid: &MembershipGrid,
    curves: &[Vec<(f64, f64)>],
    overlays: &[Overlay],
    path: &Path,
) -> Result<(), PlotError> {
    let vp = grid.viewport;
    let cell_w = 4.0f64;
    let map = SvgMapper { vp, w: vp.width_px as f64 * cell_w, h: vp.height_px as f64 * cell_w };
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        fmt9(map.w),
        fmt9(map.h),
        fmt9(map.w),
        fmt9(map.h)
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n",
        fmt9(map.w),
        fmt9(map.h)
    ));

    // Member cells, merged into horizontal runs per row.
    out.push_str("<g fill=\"#7fb2d9\" stroke=\"none\">\n");
    for iy in 0..vp.height_px {
        let mut ix = 0;
        while ix < vp.width_px {
            if !grid.at(ix, iy) {
                ix += 1;
                continue;
            }
            let start = ix;
            while ix < vp.width_px && grid.at(ix, iy) {
                ix += 1;
            }
            // Row iy covers world y in [y_lo + iy·dy, y_lo + (iy+1)·dy];
            // flip to pixel space.
            let y_top = map.h - (iy as f64 + 1.0) * cell_w;
            out.push_str(&format!(
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>\n",
                fmt9(start as f64 * cell_w),
                fmt9(y_top),
                fmt9((ix - start) as f64 * cell_w),
                fmt9(cell_w)
            ));
        }
    }
    out.push_str("</g>\n");

    // Axes.
    out.push_str("<g stroke=\"#888888\" stroke-width=\"1\">\n");
    if vp.x_lo < 0.0 && vp.x_hi > 0.0 {
        let x = map.px(0.0);
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"0\" x2=\"{}\" y2=\"{}\"/>\n",
            fmt9(x),
            fmt9(x),
            fmt9(map.h)
        ));
    }
    if vp.y_lo < 0.0 && vp.y_hi > 0.0 {
        let y = map.py(0.0);
        out.push_str(&format!(
            "<line x1=\"0\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
            fmt9(y),
            fmt9(map.w),
            fmt9(y)
        ));
    }
    out.push_str("</g>\n");

    // Boundary curves.
    out.push_str("<g stroke=\"#1f3c88\" stroke-width=\"1.5\" fill=\"none\">\n");
    for poly in curves {
        if poly.len() < 2 {
            continue;
        }
        let pts: Vec<String> = poly
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt9(map.px(x)), fmt9(map.py(y))))
            .collect();
        out.push_str(&format!("<polyline points=\"{}\"/>\n", pts.join(" ")));
    }
    out.push_str("</g>\n");

    // Overlays.
    out.push_str("<g stroke=\"#c0392b\" stroke-width=\"1.5\" fill=\"none\">\n");
    for overlay in overlays {
        match overlay {
            Overlay::Disk(d) => {
                let rx = d.radius / (vp.x_hi - vp.x_lo) * map.w;
                let ry = d.radius / (vp.y_hi - vp.y_lo) * map.h;
                out.push_str(&format!(
                    "<ellipse cx=\"{}\" cy=\"{}\" rx=\"{}\" ry=\"{}\"/>\n",
                    fmt9(map.px(d.center_x)),
                    fmt9(map.py(0.0)),
                    fmt9(rx),
                    fmt9(ry)
                ));
            }
            Overlay::Piece(piece) => {
                emit_piece_outline(&mut out, piece, &map);
            }
        }
    }
    out.push_str("</g>\n");
    out.push_str("</svg>\n");

    let mut file = std::fs::File::create(path)?;
    file.write_all(out.as_bytes())?;
    Ok(())
}

fn emit_piece_outline(out: &mut String, piece: &ElementaryPiece, map: &SvgMapper) {
    let vp = map.vp;
    match *piece {
        ElementaryPiece::ShiftedHalfplane { boundary, .. } => {
            if boundary >= vp.x_lo && boundary <= vp.x_hi {
                let x = map.px(boundary);
                out.push_str(&format!(
                    "<line x1=\"{}\" y1=\"0\" x2=\"{}\" y2=\"{}\"/>\n",
                    fmt9(x),
                    fmt9(x),
                    fmt9(map.h)
                ));
            }
        }
        ElementaryPiece::ShiftedCone { vertex, half_angle, orientation } => {
            let slope = half_angle.tan();
            let reach = match orientation {
                crate::analysis::Orientation::TowardMinusInf => vp.x_lo - vertex,
                crate::analysis::Orientation::TowardPlusInf => vp.x_hi - vertex,
            };
            let xe = vertex + reach;
            for sign in [1.0, -1.0] {
                out.push_str(&format!(
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                    fmt9(map.px(vertex)),
                    fmt9(map.py(0.0)),
                    fmt9(map.px(xe)),
                    fmt9(map.py(sign * reach.abs() * slope))
                ));
            }
        }
        ElementaryPiece::HorizontalStripe { half_width } => {
            for sign in [1.0, -1.0] {
                let y = sign * half_width;
                if y >= vp.y_lo && y <= vp.y_hi {
                    out.push_str(&format!(
                        "<line x1=\"0\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
                        fmt9(map.py(y)),
                        fmt9(map.w),
                        fmt9(map.py(y))
                    ));
                }
            }
        }
        ElementaryPiece::Hyperbola { a11, a22, a13, a33 } => {
            // Sample y²(x) = (a11·x² + 2·a13·x + a33)/(−a22) per pixel column.
            if a22 == 0.0 {
                return;
            }
            for sign in [1.0, -1.0] {
                let mut pts: Vec<String> = Vec::new();
                for ix in 0..=vp.width_px {
                    let x = vp.x_lo + (vp.x_hi - vp.x_lo) * ix as f64 / vp.width_px as f64;
                    let y2 = (a11 * x * x + 2.0 * a13 * x + a33) / (-a22);
                    if y2 >= 0.0 {
                        let y = sign * y2.sqrt();
                        if y >= vp.y_lo && y <= vp.y_hi {
                            pts.push(format!("{},{}", fmt9(map.px(x)), fmt9(map.py(y))));
                            continue;
                        }
                    }
                    if pts.len() >= 2 {
                        out.push_str(&format!("<polyline points=\"{}\"/>\n", pts.join(" ")));
                    }
                    pts.clear();
                }
                if pts.len() >= 2 {
                    out.push_str(&format!("<polyline points=\"{}\"/>\n", pts.join(" ")));
                }
            }
        }
        ElementaryPiece::WholePlane | ElementaryPiece::Empty => {}
    }
}

/// Write the grid as CSV rows x,y,member,lambda_max with a header line.
pub fn emit_csv(grid: &MembershipGrid, path: &Path) -> Result<(), PlotError> {
    let vp = grid.viewport;
    let mut out = String::from("x,y,member,lambda_max\n");
    for iy in 0..vp.height_px {
        for ix in 0..vp.width_px {
            let z = vp.cell_center(ix, iy);
            let idx = iy * vp.width_px + ix;
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt9(z.x),
                fmt9(z.y),
                if grid.cells[idx] { 1 } else { 0 },
                fmt9(grid.lambda_max[idx])
            ));
        }
    }
    let mut file = std::fs::File::create(path)?;
    file.write_all(out.as_bytes())?;
    Ok(())
}

/// Fit a viewport to a region: the real interval (infinite sides clamped 5
/// beyond the finite data) by the largest slice bound over 32 samples, with a
/// 10% margin.
pub fn auto_viewport(
    r: &LmiRegion,
    cfg: &ToleranceConfig,
    width_px: usize,
    height_px: usize,
) -> Viewport {
    let interval = analysis::real_interval(r, cfg);
    let (lo, hi) = match interval {
        RealInterval::Empty => (-1.0, 1.0),
        RealInterval::Open { lo, hi } => {
            let lo_f = if lo.is_finite() { lo } else { (if hi.is_finite() { hi } else { 0.0 }) - 5.0 };
            let hi_f = if hi.is_finite() { hi } else { (if lo.is_finite() { lo } else { 0.0 }) + 5.0 };
            (lo_f, hi_f)
        }
    };
    let mut hmax: f64 = 0.0;
    if !interval.is_empty() {
        for i in 0..32 {
            let t = (i as f64 + 0.5) / 32.0;
            let x = lo + (hi - lo) * t;
            if let Ok(b) = analysis::slice_bound(r, x, cfg) {
                if b.is_finite() {
                    hmax = hmax.max(b);
                }
            }
        }
    }
    if hmax == 0.0 {
        hmax = 5.0;
    }
    let mx = 0.1 * (hi - lo);
    let my = 0.1 * (2.0 * hmax);
    Viewport::new(lo - mx, hi + mx, -hmax - my, hmax + my, width_px, height_px)
        .expect("auto viewport is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::builders::*;
    use crate::testutil::intro_region;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn vp64() -> Viewport {
        Viewport::new(-2.0, 2.0, -2.0, 2.0, 64, 64).unwrap()
    }

    #[test]
    fn viewport_validation() {
        assert!(Viewport::new(1.0, -1.0, 0.0, 1.0, 64, 64).is_err());
        assert!(Viewport::new(-1.0, 1.0, -1.0, 1.0, 8, 64).is_err());
    }

    #[test]
    fn disk_area_fraction() {
        let c = cfg();
        let grid = raster(&disk(0.0, 1.0).unwrap(), &vp64(), &c);
        let total = 64.0 * 64.0;
        let frac = grid.member_count() as f64 / total;
        let want = std::f64::consts::PI / 16.0;
        assert!((frac - want).abs() < 0.02 * want + 0.01, "got {frac}, want {want}");
    }

    #[test]
    fn empty_region_rasters_to_nothing() {
        let c = cfg();
        let empty = s_region(-2.0, 1.0, 0.5).unwrap();
        let grid = raster(&empty, &vp64(), &c);
        assert_eq!(grid.member_count(), 0);
    }

    #[test]
    fn halfplane_rasters_to_left_half() {
        let c = cfg();
        let grid = raster(&left_halfplane(), &vp64(), &c);
        for iy in 0..64 {
            for ix in 0..64 {
                let z = grid.viewport.cell_center(ix, iy);
                assert_eq!(grid.at(ix, iy), z.x < 0.0, "at {z:?}");
            }
        }
    }

    #[test]
    fn boundary_cells_are_sandwiched() {
        let c = cfg();
        for region in [disk(0.0, 1.0).unwrap(), intro_region()] {
            let grid = raster(&region, &vp64(), &c);
            for iy in 1..63 {
                for ix in 1..63 {
                    if !grid.boundary_mask[iy * 64 + ix] {
                        continue;
                    }
                    let mut saw_in = false;
                    let mut saw_out = false;
                    for dy in -1i64..=1 {
                        for dx in -1i64..=1 {
                            let v = grid.at((ix as i64 + dx) as usize, (iy as i64 + dy) as usize);
                            saw_in |= v;
                            saw_out |= !v;
                        }
                    }
                    assert!(saw_in && saw_out, "boundary cell ({ix},{iy}) not sandwiched");
                }
            }
        }
    }

    #[test]
    fn halfplane_minor_curve_is_vertical_line() {
        let c = cfg();
        let curves = minor_curves(&left_halfplane(), &vp64(), 1, &c).unwrap();
        assert!(!curves.is_empty());
        for seg in curves {
            for (x, _) in seg {
                assert!(x.abs() < 1e-9, "curve strayed to x = {x}");
            }
        }
    }

    #[test]
    fn disk_minor_curve_follows_circle() {
        let c = cfg();
        let vp = vp64();
        let curves = minor_curves(&disk(0.0, 1.0).unwrap(), &vp, 2, &c).unwrap();
        assert!(!curves.is_empty());
        let cell = 4.0 / 64.0;
        for seg in curves {
            for (x, y) in seg {
                let dist = (x.hypot(y) - 1.0).abs();
                assert!(dist <= cell, "point ({x},{y}) off the unit circle by {dist}");
            }
        }
    }

    #[test]
    fn minor_curves_validate_order() {
        let c = cfg();
        assert!(matches!(
            minor_curves(&left_halfplane(), &vp64(), 2, &c),
            Err(PlotError::IndexOutOfRange)
        ));
    }

    #[test]
    fn intro_minor_curves_exist_near_the_boundary() {
        let c = cfg();
        let r = intro_region();
        let vp = vp64();
        // The order-2 and order-3 leading-minor curves both bound the region.
        for j in [2usize, 3] {
            let curves = minor_curves(&r, &vp, j, &c).unwrap();
            assert!(!curves.is_empty(), "no curves for j={j}");
            for seg in &curves {
                for &(x, y) in seg {
                    let v = leading_minor_det(&r, crate::region::ComplexPoint::new(x, y), j);
                    // Points come from linear interpolation, so the field is
                    // only approximately zero there.
                    assert!(v.abs() < 0.5, "j={j}: field value {v} at ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn empty_grid_emits_valid_svg() {
        let c = cfg();
        let empty = s_region(-2.0, 1.0, 0.5).unwrap();
        let vp = Viewport::new(-2.0, 2.0, -2.0, 2.0, 16, 16).unwrap();
        let grid = raster(&empty, &vp, &c);
        let dir = std::env::temp_dir().join("lmi_plot_empty_svg");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("empty.svg");
        emit_svg(&grid, &[], &[], &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("<?xml"));
        assert!(text.contains("</svg>"));
        // Only the background rectangle; no member runs.
        assert_eq!(text.matches("<rect").count(), 1);
    }

    #[test]
    fn piece_overlays_render_as_lines() {
        use crate::analysis::Orientation;
        let c = cfg();
        let composite = s_region(-0.5, 2.0, std::f64::consts::FRAC_PI_4).unwrap();
        let vp = Viewport::new(-3.0, 3.0, -3.0, 3.0, 32, 32).unwrap();
        let grid = raster(&composite, &vp, &c);
        let overlays = vec![
            Overlay::Disk(Disk { center_x: 0.0, radius: 2.0 }),
            Overlay::Piece(ElementaryPiece::ShiftedCone {
                vertex: 0.0,
                half_angle: std::f64::consts::FRAC_PI_4,
                orientation: Orientation::TowardMinusInf,
            }),
            Overlay::Piece(ElementaryPiece::ShiftedHalfplane {
                boundary: -0.5,
                orientation: Orientation::TowardMinusInf,
            }),
        ];
        let dir = std::env::temp_dir().join("lmi_plot_overlays");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("composite.svg");
        emit_svg(&grid, &[], &overlays, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("<ellipse"));
        assert!(text.matches("<line").count() >= 3);
    }

    #[test]
    fn tiny_csv_has_header_and_four_rows() {
        // A literal 2x2 grid (below the validated pixel minimum, built
        // directly) writes a header plus one row per cell.
        let vp = Viewport { x_lo: -1.0, x_hi: 1.0, y_lo: -1.0, y_hi: 1.0, width_px: 2, height_px: 2 };
        let grid = MembershipGrid {
            viewport: vp,
            cells: vec![true, false, false, true],
            lambda_max: vec![-1.0, 1.0, 1.0, -1.0],
            boundary_mask: vec![false; 4],
        };
        let dir = std::env::temp_dir().join("lmi_plot_csv_tiny");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("tiny.csv");
        emit_csv(&grid, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "x,y,member,lambda_max");
        assert_eq!(lines[1], "-0.5,-0.5,1,-1");
    }

    #[test]
    fn unit_disk_center_cell_is_member() {
        let c = cfg();
        let vp = Viewport::new(-1.0, 1.0, -1.0, 1.0, 16, 16).unwrap();
        let grid = raster(&disk(0.0, 1.0).unwrap(), &vp, &c);
        // Cell (8, 8) sits just above and right of the origin.
        assert!(grid.at(8, 8));
    }

    #[test]
    fn csv_round_trip() {
        let c = cfg();
        let vp = Viewport::new(-1.0, 1.0, -1.0, 1.0, 16, 16).unwrap();
        let grid = raster(&disk(0.0, 1.0).unwrap(), &vp, &c);
        let dir = std::env::temp_dir().join("lmi_plot_csv_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("grid.csv");
        emit_csv(&grid, &path).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "x,y,member,lambda_max");
        let mut bits = Vec::new();
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 4);
            bits.push(fields[2] == "1");
        }
        assert_eq!(bits.len(), 256);
        assert_eq!(bits, grid.cells);
    }

    #[test]
    fn svg_output_is_deterministic() {
        let c = cfg();
        let vp = Viewport::new(-2.0, 2.0, -2.0, 2.0, 32, 32).unwrap();
        let region = intro_region();
        let grid = raster(&region, &vp, &c);
        let curves = minor_curves(&region, &vp, 3, &c).unwrap();
        let overlays = vec![Overlay::Disk(Disk { center_x: 0.0, radius: 0.3535 })];
        let dir = std::env::temp_dir().join("lmi_plot_svg_test");
        std::fs::create_dir_all(&dir).unwrap();
        let p1 = dir.join("a.svg");
        let p2 = dir.join("b.svg");
        emit_svg(&grid, &curves, &overlays, &p1).unwrap();
        emit_svg(&grid, &curves, &overlays, &p2).unwrap();
        let b1 = std::fs::read(&p1).unwrap();
        let b2 = std::fs::read(&p2).unwrap();
        assert!(!b1.is_empty());
        assert_eq!(b1, b2);
        assert!(std::str::from_utf8(&b1).unwrap().starts_with("<?xml"));
    }

    #[test]
    fn fmt9_caps_digits() {
        assert_eq!(fmt9(0.0), "0");
        assert_eq!(fmt9(1.5), "1.5");
        assert_eq!(fmt9(-3.0), "-3");
        let long = std::f64::consts::PI;
        let s = fmt9(long);
        let digits: usize = s.chars().filter(|c| c.is_ascii_digit()).count();
        assert!(digits <= 10, "{s}");
        assert_eq!(fmt9(long), fmt9(long));
    }
}
