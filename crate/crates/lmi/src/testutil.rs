//! Shared fixtures for the unit tests.

use crate::config::ToleranceConfig;
use crate::matrix::DenseMatrix;
use crate::region::LmiRegion;

/// The order-3 worked-example region: L = −I, M with the indefinite
/// symmetric part {−1, 1, 1} and one skew pair.
pub fn intro_region() -> LmiRegion {
    let l = DenseMatrix::identity(3).scaled(-1.0);
    let m = DenseMatrix::from_rows(&[
        vec![0.0, 0.0, 1.0],
        vec![0.0, 1.0, -1.0],
        vec![1.0, 1.0, 0.0],
    ])
    .unwrap();
    LmiRegion::new(l, m, &ToleranceConfig::default()).unwrap()
}
