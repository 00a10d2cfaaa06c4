//! Time-delay and phase-shifter beamformers, and array gain.
//!
//! A TD circuit applies delay `tau_n = (n s theta' - (n s)^2 mu') / c` at
//! element n, producing the frequency-dependent phase profile that steers
//! (and deliberately splits) beams across subcarriers. Phase shifters apply
//! the same quadratic profile but locked to the carrier wavelength. The
//! effective beamformer multiplies both entrywise; it is renormalized to
//! unit norm so transmit power is carried entirely by P_t.
//!
//! TD parameters are allowed far outside the physical angle domain [-1, 1):
//! the sweep designs depend on exactly that.

use num_complex::Complex64;
use thiserror::Error;

use crate::channel::{hermitian_inner, quadratic_phase_vector, SteeringVector};
use crate::geometry::ArrayGeometry;
use crate::SPEED_OF_LIGHT;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BeamformError {
    #[error("beamformer geometry ({w_kind}, {w_count} elements) does not match steering vector ({a_kind}, {a_count} elements)")]
    GeometryMismatch {
        w_kind: crate::geometry::ArrayKind,
        w_count: usize,
        a_kind: crate::geometry::ArrayKind,
        a_count: usize,
    },
    #[error("beamformer frequency {w_freq} Hz does not match steering vector frequency {a_freq} Hz")]
    FrequencyMismatch { w_freq: f64, a_freq: f64 },
}

/// The four adjustable beamformer parameters. Finiteness is the only
/// requirement; the sweep designs intentionally use angles far outside
/// [-1, 1) and negative curvatures.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TdPsParams {
    pub td_angle: f64,
    pub td_curvature: f64,
    pub ps_angle: f64,
    pub ps_curvature: f64,
}

impl TdPsParams {
    pub fn td_only(td_angle: f64, td_curvature: f64) -> TdPsParams {
        TdPsParams {
            td_angle,
            td_curvature,
            ps_angle: 0.0,
            ps_curvature: 0.0,
        }
    }
}

/// Unit-norm weight vector at one frequency, with the parameters that
/// produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Beamformer {
    pub geometry: ArrayGeometry,
    pub freq: f64,
    pub entries: Vec<Complex64>,
    pub params: TdPsParams,
}

impl Beamformer {
    /// Physical delay of each TD circuit, seconds (diagnostic).
    pub fn delays(&self) -> Vec<f64> {
        let s = self.geometry.spacing();
        self.geometry
            .indices()
            .map(|n| {
                let x = n as f64 * s;
                (x * self.params.td_angle - x * x * self.params.td_curvature) / SPEED_OF_LIGHT
            })
            .collect()
    }
}

/// TD-only beamformer: entries `(1/sqrt(cnt)) exp(+j 2pi/lambda_m (n s theta' - (n s)^2 mu'))`.
pub fn td_beamformer(
    geometry: &ArrayGeometry,
    td_angle: f64,
    td_curvature: f64,
    freq: f64,
) -> Beamformer {
    Beamformer {
        geometry: geometry.clone(),
        freq,
        entries: quadratic_phase_vector(geometry, td_angle, td_curvature, freq),
        params: TdPsParams::td_only(td_angle, td_curvature),
    }
}

/// PS-only beamformer: the same quadratic profile evaluated at the carrier,
/// hence identical at every subcarrier.
pub fn ps_beamformer(
    geometry: &ArrayGeometry,
    ps_angle: f64,
    ps_curvature: f64,
    carrier_freq: f64,
) -> Beamformer {
    Beamformer {
        geometry: geometry.clone(),
        freq: carrier_freq,
        entries: quadratic_phase_vector(geometry, ps_angle, ps_curvature, carrier_freq),
        params: TdPsParams {
            td_angle: 0.0,
            td_curvature: 0.0,
            ps_angle,
            ps_curvature,
        },
    }
}

/// Combined TD-PS beamformer at subcarrier frequency `freq`: phases add,
/// amplitude stays 1/sqrt(cnt) so the weight vector keeps unit norm.
pub fn combined_beamformer(
    geometry: &ArrayGeometry,
    params: &TdPsParams,
    freq: f64,
    carrier_freq: f64,
) -> Beamformer {
    let k_m = 2.0 * std::f64::consts::PI * freq / SPEED_OF_LIGHT;
    let k_c = 2.0 * std::f64::consts::PI * carrier_freq / SPEED_OF_LIGHT;
    let amp = 1.0 / (geometry.count() as f64).sqrt();
    let entries = geometry
        .positions()
        .map(|x| {
            let phase = k_m * (x * params.td_angle - x * x * params.td_curvature)
                + k_c * (x * params.ps_angle - x * x * params.ps_curvature);
            Complex64::from_polar(amp, phase)
        })
        .collect();
    Beamformer {
        geometry: geometry.clone(),
        freq,
        entries,
        params: *params,
    }
}

/// `|w^H a|` for a beamformer and steering vector on the same geometry and
/// frequency. Unit-norm factors on both sides put this in [0, 1].
pub fn array_gain(w: &Beamformer, a: &SteeringVector) -> Result<f64, BeamformError> {
    if w.geometry.kind != a.geometry.kind || w.geometry.count() != a.geometry.count() {
        return Err(BeamformError::GeometryMismatch {
            w_kind: w.geometry.kind,
            w_count: w.geometry.count(),
            a_kind: a.geometry.kind,
            a_count: a.geometry.count(),
        });
    }
    if w.freq != a.freq {
        return Err(BeamformError::FrequencyMismatch {
            w_freq: w.freq,
            a_freq: a.freq,
        });
    }
    Ok(hermitian_inner(&w.entries, &a.entries).norm())
}

/// Closed-form array gain of a uniformly activated sparse array:
/// `|sin(pi rho cnt u (theta - theta') / 2) / (cnt sin(pi rho u (theta - theta') / 2))|`,
/// extended by continuity (value 1) at the removable singularities. `u = 1`
/// gives the dense-array pattern.
pub fn sula_gain_closed_form(
    theta: f64,
    td_angle: f64,
    activation_interval: usize,
    count: usize,
    rho: f64,
) -> f64 {
    let x = std::f64::consts::PI * rho * activation_interval as f64 * (theta - td_angle) / 2.0;
    let cnt = count as f64;
    // distance from the nearest multiple of pi
    let frac = x - std::f64::consts::PI * (x / std::f64::consts::PI).round();
    if frac.abs() < 1e-9 {
        return 1.0;
    }
    ((cnt * x).sin() / (cnt * x.sin())).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{far_field_steering, near_field_steering, PhaseModel};
    use crate::config::reference_config;
    use crate::config::ValidatedConfig;
    use crate::grid::FrequencyGrid;
    use crate::polar::PolarPoint;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};

    fn cfg() -> ValidatedConfig {
        reference_config().validate().unwrap()
    }

    #[test]
    fn zero_params_give_equal_phase_weights() {
        let c = cfg();
        let geom = ArrayGeometry::sparse_subarray(&c);
        let w = td_beamformer(&geom, 0.0, 0.0, 61e9);
        for e in &w.entries {
            assert!((e - Complex64::new(1.0 / 17.0f64.sqrt(), 0.0)).norm() < 1e-15);
        }
        let p = ps_beamformer(&geom, 0.0, 0.0, c.carrier_freq);
        assert_eq!(p.entries, w.entries);
    }

    #[test]
    fn td_matched_to_far_field_steering_has_unit_gain() {
        let c = cfg();
        let geom = ArrayGeometry::sparse_subarray(&c);
        let theta = -0.37;
        let f = 59.2e9;
        let w = td_beamformer(&geom, theta, 0.0, f);
        let a = far_field_steering(theta, &geom, f).unwrap();
        let g = array_gain(&w, &a).unwrap();
        assert!((g - 1.0).abs() < 1e-12);
    }

    #[test]
    fn delays_reproduce_entry_phases() {
        // two routes to the same weights: quadratic phase profile at
        // lambda_m, and exp(-j 2 pi f_m tau_n) from the physical delays
        let c = cfg();
        let geom = ArrayGeometry::sparse_subarray(&c);
        let w = td_beamformer(&geom, -6.125, 0.0, 61.5e9);
        let delays = w.delays();
        let amp = 1.0 / (geom.count() as f64).sqrt();
        for (e, tau) in w.entries.iter().zip(delays) {
            // stored entries are conjugates of the applied w^H profile
            let direct = Complex64::from_polar(amp, 2.0 * std::f64::consts::PI * 61.5e9 * tau);
            assert!((e - direct).norm() < 1e-12);
        }
    }

    #[test]
    fn ps_equals_td_at_carrier_and_phases_add() {
        let c = cfg();
        let geom = ArrayGeometry::dense_subarray(&c);
        let (theta, mu) = (0.21, 0.013);
        let ps = ps_beamformer(&geom, theta, mu, c.carrier_freq);
        let td = td_beamformer(&geom, theta, mu, c.carrier_freq);
        for (a, b) in ps.entries.iter().zip(&td.entries) {
            assert!((a - b).norm() < 1e-14);
        }
        // phase additivity: products of entries match the summed parameters
        let p1 = ps_beamformer(&geom, 0.1, 0.004, c.carrier_freq);
        let p2 = ps_beamformer(&geom, 0.2, 0.006, c.carrier_freq);
        let sum = ps_beamformer(&geom, 0.3, 0.010, c.carrier_freq);
        let amp = 1.0 / (geom.count() as f64).sqrt();
        for ((a, b), s) in p1.entries.iter().zip(&p2.entries).zip(&sum.entries) {
            assert!((a * b / amp - s).norm() < 1e-12);
        }
    }

    #[test]
    fn combined_beamformer_norm_and_td_limit() {
        let c = cfg();
        let geom = ArrayGeometry::full(&c);
        let params = TdPsParams {
            td_angle: 0.15,
            td_curvature: -0.79,
            ps_angle: 0.0,
            ps_curvature: 0.82,
        };
        let w = combined_beamformer(&geom, &params, 59e9, c.carrier_freq);
        let norm: f64 = w.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
        assert!((norm - 1.0).abs() < 1e-12);
        let amp = 1.0 / (geom.count() as f64).sqrt();
        for e in &w.entries {
            assert!((e.norm() - amp).abs() < 1e-15);
        }
        // all-zero PS part reduces to the TD beamformer
        let td_params = TdPsParams::td_only(0.15, -0.79);
        let w_td = combined_beamformer(&geom, &td_params, 59e9, c.carrier_freq);
        let direct = td_beamformer(&geom, 0.15, -0.79, 59e9);
        for (a, b) in w_td.entries.iter().zip(&direct.entries) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn combined_beamformer_peaks_at_summed_curvature() {
        // at the carrier the TD and PS curvatures add exactly
        let c = cfg();
        let geom = ArrayGeometry::full(&c);
        let params = TdPsParams {
            td_angle: 0.0,
            td_curvature: -0.7908,
            ps_angle: 0.0,
            ps_curvature: 0.8208,
        };
        let w = combined_beamformer(&geom, &params, c.carrier_freq, c.carrier_freq);
        let target = params.td_curvature + params.ps_curvature;
        let mut best = (f64::NEG_INFINITY, 0.0);
        let mut mu = 0.005;
        while mu <= 0.055 {
            let user = PolarPoint::from_curvature_angle(mu, 0.0).unwrap();
            let b = near_field_steering(&user, &geom, c.carrier_freq, PhaseModel::Fresnel).unwrap();
            let g = array_gain(&w, &b).unwrap();
            if g > best.0 {
                best = (g, mu);
            }
            mu += 0.0005;
        }
        assert!(
            (best.1 - target).abs() < 0.0006,
            "gain peak at mu = {} but target {}",
            best.1,
            target
        );
        assert!(best.0 > 0.999);
    }

    #[test]
    fn gain_bounds_and_mismatch_errors() {
        let c = cfg();
        let sparse = ArrayGeometry::sparse_subarray(&c);
        let dense = ArrayGeometry::dense_subarray(&c);
        let w = td_beamformer(&sparse, 0.0, 0.0, 60e9);
        let a = far_field_steering(0.2, &dense, 60e9).unwrap();
        assert!(matches!(
            array_gain(&w, &a),
            Err(BeamformError::GeometryMismatch { .. })
        ));
        let a2 = far_field_steering(0.2, &sparse, 61e9).unwrap();
        assert!(matches!(
            array_gain(&w, &a2),
            Err(BeamformError::FrequencyMismatch { .. })
        ));
        // orthogonal DFT directions on the dense subarray at the carrier
        let wq = td_beamformer(&dense, 0.0, 0.0, c.carrier_freq);
        let aq = far_field_steering(2.0 / dense.count() as f64, &dense, c.carrier_freq).unwrap();
        assert!(array_gain(&wq, &aq).unwrap() < 1e-10);
    }

    #[test]
    fn gain_invariant_under_common_phase_rotation() {
        let c = cfg();
        let geom = ArrayGeometry::sparse_subarray(&c);
        let mut w = td_beamformer(&geom, -1.2, 0.0, 60.5e9);
        let a = far_field_steering(0.33, &geom, 60.5e9).unwrap();
        let g0 = array_gain(&w, &a).unwrap();
        let rot = Complex64::from_polar(1.0, 1.234);
        for e in &mut w.entries {
            *e *= rot;
        }
        let g1 = array_gain(&w, &a).unwrap();
        assert!((g0 - g1).abs() < 1e-14);
        assert!(g1 <= 1.0 + 1e-12);
    }

    #[test]
    fn closed_form_matches_inner_product_everywhere() {
        let c = cfg();
        let grid = FrequencyGrid::new(&c);
        let geom = ArrayGeometry::sparse_subarray(&c);
        let td_angle = -6.125;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let theta = rng.random_range(-1.0..1.0);
            let m = rng.random_range(1..=grid.len());
            let f = grid.freq(m);
            let w = td_beamformer(&geom, td_angle, 0.0, f);
            let a = far_field_steering(theta, &geom, f).unwrap();
            let direct = array_gain(&w, &a).unwrap();
            let closed =
                sula_gain_closed_form(theta, td_angle, c.activation_interval, 17, grid.ratio(m));
            assert!(
                (direct - closed).abs() < 1e-10,
                "theta={theta} m={m}: direct={direct} closed={closed}"
            );
        }
    }

    #[test]
    fn closed_form_continuity_at_beam_centers() {
        // exactly on a beam the denominator vanishes; the limit is 1
        let g = sula_gain_closed_form(0.25, 0.25, 8, 17, 1.0);
        assert_eq!(g, 1.0);
        // period of the sparse-array pattern is 2 / (u rho)
        let rho: f64 = 1.01;
        let period = 2.0 / (8.0 * rho);
        let g1 = sula_gain_closed_form(0.1, 0.0, 8, 17, rho);
        let g2 = sula_gain_closed_form(0.1 + period, 0.0, 8, 17, rho);
        assert!((g1 - g2).abs() < 1e-9);
    }
}
