//! Build a composite region and place a disk inside it.

use lmi::{analysis, region::builders, ToleranceConfig};

fn main() {
    let cfg = ToleranceConfig::default();
    let region = builders::s_region(-0.5, 2.0, std::f64::consts::FRAC_PI_4).unwrap();
    let report = analysis::region_report(&region, &cfg).unwrap();
    assert!(report.bounded);
    let disk = analysis::inscribed_disk(&region, None, &cfg).unwrap();
    println!("D({}, {}) fits inside", disk.center_x, disk.radius);
}
