//! Brute-force verification oracles. These only ever call the membership
//! tests `contains`/`contains_closure`, never the analytic routines they are
//! used to check, so they stay an independent route to the same answers.

use crate::analysis::{Disk, RealInterval};
use crate::config::ToleranceConfig;
use crate::region::{ComplexPoint, LmiRegion};
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    /// The membership pattern at the scan radius is not a single angular arc
    /// around the real axis.
    NotCone,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NotCone => write!(f, "membership at scan radius is not a cone arc"),
        }
    }
}

impl std::error::Error for OracleError {}

/// Estimate 𝔇 ∩ ℝ by a coarse scan of [lo, hi] followed by bisection of the
/// two boundary brackets; endpoints are sharp to (hi−lo)/steps/2¹⁰.
pub fn interval_by_scan(
    r: &LmiRegion,
    lo: f64,
    hi: f64,
    steps: usize,
    cfg: &ToleranceConfig,
) -> RealInterval {
    assert!(steps >= 1000, "scan needs at least 1000 steps");
    assert!(hi > lo);
    let member = |x: f64| r.contains(ComplexPoint::new(x, 0.0), cfg);
    let xs: Vec<f64> = (0..=steps).map(|i| lo + (hi - lo) * i as f64 / steps as f64).collect();
    let flags: Vec<bool> = xs.iter().map(|&x| member(x)).collect();
    let Some(first) = flags.iter().position(|&f| f) else {
        return RealInterval::Empty;
    };
    let mut last = first;
    while last + 1 < flags.len() && flags[last + 1] {
        last += 1;
    }

    let bisect = |mut inside: f64, mut outside: f64| {
        for _ in 0..10 {
            let mid = 0.5 * (inside + outside);
            if member(mid) {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        0.5 * (inside + outside)
    };

    let left = if first == 0 { f64::NEG_INFINITY } else { bisect(xs[first], xs[first - 1]) };
    let right =
        if last == flags.len() - 1 { f64::INFINITY } else { bisect(xs[last], xs[last + 1]) };
    RealInterval::Open { lo: left, hi: right }
}

/// Does the closed disk sit inside the region? Checks the boundary circle and
/// five interior rings by direct membership.
pub fn containment_by_sampling(
    r: &LmiRegion,
    d: &Disk,
    samples: usize,
    cfg: &ToleranceConfig,
) -> bool {
    assert!(samples >= 360, "need at least 360 angular samples");
    for ring in 0..=5usize {
        let rho = d.radius * (1.0 - ring as f64 / 5.0 * 0.999);
        for k in 0..samples {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / samples as f64;
            let z = ComplexPoint::new(d.center_x + rho * ang.cos(), rho * ang.sin());
            if !r.contains(z, cfg) {
                return false;
            }
        }
    }
    true
}

/// Estimate the half-angle of a conic recession pattern by scanning rays at
/// the given radius: the member arc must be a single run of angles around one
/// end of the real axis. Resolution π/angular_steps.
pub fn angle_by_ray_scan(
    r: &LmiRegion,
    radius: f64,
    angular_steps: usize,
    cfg: &ToleranceConfig,
) -> Result<f64, OracleError> {
    assert!(radius >= 1e4, "scan radius must be at least 1e4");
    assert!(angular_steps >= 8);
    // Sample angles in (−π, π]; LMI regions are symmetric about ℝ, so scan
    // the upper half and mirror.
    let member_at = |ang: f64| {
        let z = ComplexPoint::new(radius * ang.cos(), radius * ang.sin());
        r.contains(z, cfg)
    };
    let toward_minus = member_at(std::f64::consts::PI);
    let toward_plus = member_at(0.0);
    if toward_minus == toward_plus {
        return Err(OracleError::NotCone);
    }
    // Walk from the member end of the axis upward until membership stops.
    let base = if toward_minus { std::f64::consts::PI } else { 0.0 };
    let dir = if toward_minus { -1.0 } else { 1.0 };
    let step = std::f64::consts::PI / angular_steps as f64;
    let mut k = 0usize;
    while (k as f64) * step < std::f64::consts::FRAC_PI_2 {
        let ang = base + dir * (k as f64 + 1.0) * step;
        if !member_at(ang) {
            break;
        }
        k += 1;
    }
    if (k as f64) * step >= std::f64::consts::FRAC_PI_2 {
        return Err(OracleError::NotCone);
    }
    // Refine the arc edge by bisection.
    let mut inside = base + dir * (k as f64) * step;
    let mut outside = base + dir * (k as f64 + 1.0) * step;
    for _ in 0..20 {
        let mid = 0.5 * (inside + outside);
        if member_at(mid) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok((0.5 * (inside + outside) - base).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis;
    use crate::region::builders::*;
    use crate::testutil::intro_region;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn interval_scan_matches_known_intervals() {
        let c = cfg();
        let est = interval_by_scan(&intro_region(), -2.0, 2.0, 4000, &c);
        let (lo, hi) = est.endpoints().unwrap();
        assert!((lo + 0.5).abs() < 1e-6);
        assert!((hi - 0.5).abs() < 1e-6);

        let est = interval_by_scan(&disk(1.0, 0.5).unwrap(), -2.0, 4.0, 6000, &c);
        let (lo, hi) = est.endpoints().unwrap();
        assert!((lo - 0.5).abs() < 1e-6);
        assert!((hi - 1.5).abs() < 1e-6);

        let empty = s_region(-2.0, 1.0, FRAC_PI_6).unwrap();
        assert_eq!(interval_by_scan(&empty, -5.0, 5.0, 2000, &c), RealInterval::Empty);
    }

    #[test]
    fn disk_containment_sampling() {
        let c = cfg();
        let r = intro_region();
        assert!(containment_by_sampling(
            &r,
            &Disk { center_x: 0.0, radius: 0.3535 },
            360,
            &c
        ));
        assert!(!containment_by_sampling(
            &r,
            &Disk { center_x: 0.0, radius: 0.51 },
            360,
            &c
        ));
    }

    #[test]
    fn computed_disks_fit_after_shrink() {
        let c = cfg();
        // Membership at 1e-9-relative distances from the boundary needs a
        // margin sharper than the default definiteness band.
        let sharp = ToleranceConfig { def_margin: 1e-13, ..c };
        for region in [
            intro_region(),
            disk(0.3, 1.2).unwrap(),
            parabola(0.8).unwrap(),
            conic_sector(FRAC_PI_3).unwrap(),
            vstrip(1.0, 2.5).unwrap(),
            hstrip(1.5).unwrap(),
        ] {
            let d = analysis::inscribed_disk(&region, None, &c).unwrap();
            let shrunk = Disk { center_x: d.center_x, radius: d.radius * (1.0 - 1e-9) };
            assert!(containment_by_sampling(&region, &shrunk, 360, &sharp));
        }
    }

    #[test]
    fn ray_scan_recovers_sector_angles() {
        let c = cfg();
        for theta in [FRAC_PI_6, FRAC_PI_3] {
            let got = angle_by_ray_scan(&conic_sector(theta).unwrap(), 1e4, 4096, &c).unwrap();
            assert!((got - theta).abs() <= std::f64::consts::PI / 4096.0, "theta {theta}: {got}");
        }
        // The recession angle is unaffected by shifts.
        let shifted = conic_sector(FRAC_PI_6).unwrap().shift(-5.0);
        let got = angle_by_ray_scan(&shifted, 1e6, 4096, &c).unwrap();
        assert!((got - FRAC_PI_6).abs() <= std::f64::consts::PI / 4096.0);

        assert_eq!(
            angle_by_ray_scan(&disk(0.0, 1.0).unwrap(), 1e4, 512, &c).unwrap_err(),
            OracleError::NotCone
        );
    }
}
