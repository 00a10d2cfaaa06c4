//! User coordinates: (range r, spatial angle theta) and the equivalent
//! (theta, curvature mu) parameterization with `mu = (1 - theta^2) / (2 r)`.
//!
//! The spatial angle is the sine-space direction in [-1, 1). Curvature
//! indexes wavefront bending at the array: constant-mu loci are the "range
//! rings" the wideband training sweeps. The conversion is a bijection for
//! r > 0 and |theta| < 1; at theta = -1 the curvature collapses to zero and
//! the mu-form is not invertible, so the curvature constructor insists on
//! mu > 0.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolarError {
    #[error("range must be positive, got {0} m")]
    NonPositiveRange(f64),
    #[error("curvature must be positive, got {0} 1/m")]
    NonPositiveCurvature(f64),
    #[error("spatial angle must lie in [-1, 1), got {0}")]
    AngleOutOfDomain(f64),
}

/// A user location in both polar forms; immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    /// Range from the array center, meters.
    pub range: f64,
    /// Spatial angle in [-1, 1).
    pub angle: f64,
    /// Curvature (1 - angle^2) / (2 range), 1/meters.
    pub curvature: f64,
}

impl PolarPoint {
    pub fn from_range_angle(range: f64, angle: f64) -> Result<PolarPoint, PolarError> {
        if !(range > 0.0) {
            return Err(PolarError::NonPositiveRange(range));
        }
        check_angle(angle)?;
        Ok(PolarPoint {
            range,
            angle,
            curvature: (1.0 - angle * angle) / (2.0 * range),
        })
    }

    pub fn from_curvature_angle(curvature: f64, angle: f64) -> Result<PolarPoint, PolarError> {
        if !(curvature > 0.0) {
            return Err(PolarError::NonPositiveCurvature(curvature));
        }
        check_angle(angle)?;
        Ok(PolarPoint {
            range: (1.0 - angle * angle) / (2.0 * curvature),
            angle,
            curvature,
        })
    }

    /// Cartesian position (x toward the bore-sight, y along the array), meters.
    pub fn cartesian(&self) -> (f64, f64) {
        let x = self.range * (1.0 - self.angle * self.angle).sqrt();
        let y = self.range * self.angle;
        (x, y)
    }
}

fn check_angle(angle: f64) -> Result<(), PolarError> {
    if !(-1.0..1.0).contains(&angle) {
        return Err(PolarError::AngleOutOfDomain(angle));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn curvature_examples() {
        let p = PolarPoint::from_range_angle(10.0, 0.0).unwrap();
        assert_eq!(p.curvature, 0.05);
        let q = PolarPoint::from_curvature_angle(0.01, 0.0).unwrap();
        assert_eq!(q.range, 50.0);
        let r = PolarPoint::from_range_angle(25.0, 0.6).unwrap();
        assert!((r.curvature - 0.0128).abs() < 1e-15);
        let back = PolarPoint::from_curvature_angle(r.curvature, r.angle).unwrap();
        assert!((back.range - 25.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_out_of_domain_inputs() {
        assert!(PolarPoint::from_range_angle(0.0, 0.0).is_err());
        assert!(PolarPoint::from_range_angle(-3.0, 0.0).is_err());
        assert!(PolarPoint::from_range_angle(10.0, 1.0).is_err());
        assert!(PolarPoint::from_range_angle(10.0, -1.5).is_err());
        assert!(PolarPoint::from_curvature_angle(0.0, 0.0).is_err());
        assert!(PolarPoint::from_curvature_angle(-0.1, 0.0).is_err());
    }

    // Round-trip property: r -> mu -> r is the identity to 1e-12 relative
    // error over a million random points.
    #[test]
    fn round_trip_bijection() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x00C0FFEE);
        for _ in 0..1_000_000 {
            let r: f64 = rng.random_range(1e-3..1e6);
            let theta: f64 = rng.random_range(-0.999_999..1.0);
            let p = PolarPoint::from_range_angle(r, theta).unwrap();
            let q = PolarPoint::from_curvature_angle(p.curvature, p.angle).unwrap();
            assert!(
                (q.range - r).abs() <= 1e-12 * r,
                "round trip failed at r={r}, theta={theta}: got {}",
                q.range
            );
        }
    }

    #[test]
    fn cartesian_matches_definition() {
        let p = PolarPoint::from_range_angle(20.0, 0.5).unwrap();
        let (x, y) = p.cartesian();
        assert!((x - 20.0 * (0.75f64).sqrt()).abs() < 1e-12);
        assert!((y - 10.0).abs() < 1e-12);
        assert!(((x * x + y * y).sqrt() - 20.0).abs() < 1e-12);
    }
}
