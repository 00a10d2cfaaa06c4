//! Steering vectors and line-of-sight channels for the three array
//! configurations.
//!
//! Conventions used throughout the crate:
//! - A near-field steering vector stores entries
//!   `b_n = (1/sqrt(cnt)) * exp(-j 2pi/lambda (r_n - r_0))`, where `r_n` is
//!   the element-to-user distance. Under the Fresnel expansion
//!   `r_n - r_0 = -n s theta + (n s)^2 mu` this becomes
//!   `b_n = (1/sqrt(cnt)) * exp(+j 2pi/lambda (n s theta - (n s)^2 mu))`.
//! - A far-field steering vector is the mu -> 0 limit:
//!   `a_q = (1/sqrt(cnt)) * exp(+j 2pi/lambda q s theta)`.
//! - Beamformers (see [`crate::beamform`]) share the same phase
//!   orientation; conjugation happens inside the inner product, so a
//!   beamformer whose parameters equal the user's coordinates is a matched
//!   filter with gain 1.
//!
//! Channels used for simulation: the full array carries the spherical
//! (exact-range) near-field model including the carrier phase
//! `exp(-j 2pi r_0 / lambda_m)`; the central subarray and the sparse
//! subarray are modeled with planar wavefronts, which is the operating
//! assumption of the first two training stages.
//! [`sparse_planar_mismatch`] quantifies what that assumption ignores.

use num_complex::Complex64;
use thiserror::Error;

use crate::config::ValidatedConfig;
use crate::geometry::{ArrayGeometry, ArrayKind};
use crate::grid::FrequencyGrid;
use crate::polar::PolarPoint;
use crate::SPEED_OF_LIGHT;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("near-field steering is not defined for the sparse subarray; its link is planar")]
    SparseNearField,
    #[error("far-field steering is not defined for the full array; it would hide the near field")]
    FullArrayFarField,
    #[error("the {kind} array takes the {expected} channel model")]
    ModelMismatch { kind: ArrayKind, expected: &'static str },
    #[error("user range {range} m is outside the validated bounds [{lo}, {hi}] m")]
    UserOutOfRange { range: f64, lo: f64, hi: f64 },
    #[error("vector length {got} does not match geometry element count {want}")]
    LengthMismatch { got: usize, want: usize },
}

/// Phase model for near-field vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseModel {
    /// Exact element-to-user distances.
    Exact,
    /// Quadratic (Fresnel) expansion of the distances.
    Fresnel,
}

/// Which propagation model backs a [`LosChannel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelModel {
    NearFieldExact,
    NearFieldFresnel,
    FarFieldPlanar,
}

/// Unit-norm array response vector at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector {
    pub geometry: ArrayGeometry,
    pub freq: f64,
    pub entries: Vec<Complex64>,
}

impl SteeringVector {
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `sum conj(x_n) y_n` — the `x^H y` of the gain and received-signal formulas.
pub fn hermitian_inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    debug_assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// Distance from an array element at axial offset `element_offset` (meters)
/// to the user.
pub fn exact_element_range(user: &PolarPoint, element_offset: f64) -> f64 {
    let r = user.range;
    (r * r + element_offset * element_offset - 2.0 * r * user.angle * element_offset).sqrt()
}

/// Fresnel-approximate distance for element index `n` of a geometry with
/// physical spacing `spacing`: `r - n s theta + (n s)^2 mu`.
pub fn fresnel_element_range(user: &PolarPoint, n: i64, spacing: f64) -> f64 {
    let x = n as f64 * spacing;
    user.range - x * user.angle + x * x * user.curvature
}

/// Range beyond which the Fresnel expansion keeps the worst-case path error
/// below `lambda/16` at the given angle. Bounds the cubic and quartic terms
/// of the distance expansion at the aperture edge, with a 5% margin for the
/// remainder.
pub fn fresnel_accuracy_distance(geometry: &ArrayGeometry, wavelength: f64, angle: f64) -> f64 {
    let x = geometry.half_aperture();
    let tol = wavelength / 16.0;
    let a2 = 1.0 - angle * angle;
    let cubic = ((angle * a2).abs() * x.powi(3) / (2.0 * tol)).sqrt();
    let quartic = ((a2 * (5.0 * angle * angle - 1.0)).abs() * x.powi(4) / (8.0 * tol)).cbrt();
    1.05 * cubic.max(quartic)
}

fn phase_factor(freq: f64) -> f64 {
    2.0 * std::f64::consts::PI * freq / SPEED_OF_LIGHT
}

/// Fresnel-phase steering vector parameterized directly by (angle, curvature).
/// No domain checks: out-of-physical-range parameters are meaningful here
/// (they are how the time-delay sweeps alias beams into the visible region),
/// so this is also the codeword generator for the polar codebook.
pub(crate) fn quadratic_phase_vector(
    geometry: &ArrayGeometry,
    angle: f64,
    curvature: f64,
    freq: f64,
) -> Vec<Complex64> {
    let k = phase_factor(freq);
    let amp = 1.0 / (geometry.count() as f64).sqrt();
    geometry
        .positions()
        .map(|x| {
            let phase = k * (x * angle - x * x * curvature);
            Complex64::from_polar(amp, phase)
        })
        .collect()
}

/// Near-field steering vector of the full array or dense subarray.
pub fn near_field_steering(
    user: &PolarPoint,
    geometry: &ArrayGeometry,
    freq: f64,
    model: PhaseModel,
) -> Result<SteeringVector, ChannelError> {
    if geometry.kind == ArrayKind::SparseSubarray {
        return Err(ChannelError::SparseNearField);
    }
    let entries = match model {
        PhaseModel::Exact => {
            let k = phase_factor(freq);
            let amp = 1.0 / (geometry.count() as f64).sqrt();
            geometry
                .positions()
                .map(|x| {
                    let delta = exact_element_range(user, x) - user.range;
                    Complex64::from_polar(amp, -k * delta)
                })
                .collect()
        }
        PhaseModel::Fresnel => quadratic_phase_vector(geometry, user.angle, user.curvature, freq),
    };
    Ok(SteeringVector {
        geometry: geometry.clone(),
        freq,
        entries,
    })
}

/// Planar-wavefront steering vector of the dense or sparse subarray.
pub fn far_field_steering(
    angle: f64,
    geometry: &ArrayGeometry,
    freq: f64,
) -> Result<SteeringVector, ChannelError> {
    if geometry.kind == ArrayKind::Full {
        return Err(ChannelError::FullArrayFarField);
    }
    Ok(SteeringVector {
        geometry: geometry.clone(),
        freq,
        entries: quadratic_phase_vector(geometry, angle, 0.0, freq),
    })
}

/// LoS channel vectors h_m for every requested subcarrier. The received
/// pilot is `y_m = sqrt(P_t) h_m^H w_m + n_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct LosChannel {
    pub geometry: ArrayGeometry,
    pub user: PolarPoint,
    pub model: ChannelModel,
    pub freqs: Vec<f64>,
    /// Path gains beta_m = lambda_m / (4 pi r_0).
    pub path_gains: Vec<f64>,
    pub vectors: Vec<Vec<Complex64>>,
}

impl LosChannel {
    pub fn build(
        cfg: &ValidatedConfig,
        grid: &FrequencyGrid,
        user: &PolarPoint,
        kind: ArrayKind,
        model: ChannelModel,
    ) -> Result<LosChannel, ChannelError> {
        Self::build_for_freqs(cfg, grid.freqs(), user, kind, model)
    }

    /// Build over an explicit frequency list (stage 2 measures only its
    /// selected subcarriers).
    pub fn build_for_freqs(
        cfg: &ValidatedConfig,
        freqs: &[f64],
        user: &PolarPoint,
        kind: ArrayKind,
        model: ChannelModel,
    ) -> Result<LosChannel, ChannelError> {
        if user.range < cfg.range_min || user.range > cfg.range_max {
            return Err(ChannelError::UserOutOfRange {
                range: user.range,
                lo: cfg.range_min,
                hi: cfg.range_max,
            });
        }
        match (kind, model) {
            (ArrayKind::Full, ChannelModel::NearFieldExact | ChannelModel::NearFieldFresnel) => {}
            (ArrayKind::DenseSubarray | ArrayKind::SparseSubarray, ChannelModel::FarFieldPlanar) => {}
            (kind, _) => {
                let expected = if kind == ArrayKind::Full {
                    "near-field"
                } else {
                    "far-field planar"
                };
                return Err(ChannelError::ModelMismatch { kind, expected });
            }
        }
        let geometry = ArrayGeometry::of_kind(cfg, kind);
        let scale = (geometry.count() as f64).sqrt();
        let mut path_gains = Vec::with_capacity(freqs.len());
        let mut vectors = Vec::with_capacity(freqs.len());
        for &f in freqs {
            let lambda = SPEED_OF_LIGHT / f;
            let beta = lambda / (4.0 * std::f64::consts::PI * user.range);
            path_gains.push(beta);
            let h = match model {
                ChannelModel::FarFieldPlanar => {
                    let a = far_field_steering(user.angle, &geometry, f)?;
                    a.entries
                        .into_iter()
                        .map(|e| e * scale * beta)
                        .collect::<Vec<_>>()
                }
                ChannelModel::NearFieldExact | ChannelModel::NearFieldFresnel => {
                    let phase_model = if model == ChannelModel::NearFieldExact {
                        PhaseModel::Exact
                    } else {
                        PhaseModel::Fresnel
                    };
                    let b = near_field_steering(user, &geometry, f, phase_model)?;
                    // carrier phase over the line-of-sight distance
                    let global = Complex64::from_polar(1.0, -phase_factor(f) * user.range);
                    b.entries
                        .into_iter()
                        .map(|e| e * scale * beta * global)
                        .collect::<Vec<_>>()
                }
            };
            vectors.push(h);
        }
        Ok(LosChannel {
            geometry,
            user: *user,
            model,
            freqs: freqs.to_vec(),
            path_gains,
            vectors,
        })
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// `h_m^H w` for the stored subcarrier index (0-based position in the
    /// frequency list).
    pub fn received_amplitude(&self, idx: usize, weights: &[Complex64]) -> Complex64 {
        hermitian_inner(&self.vectors[idx], weights)
    }
}

/// How well the planar model fits the true spherical wavefront on the
/// sparse subarray: `|a(theta_0)^H b_exact|` at the given frequency.
pub fn sparse_planar_mismatch(
    cfg: &ValidatedConfig,
    user: &PolarPoint,
    freq: f64,
) -> f64 {
    let geometry = ArrayGeometry::sparse_subarray(cfg);
    let planar = quadratic_phase_vector(&geometry, user.angle, 0.0, freq);
    let k = phase_factor(freq);
    let amp = 1.0 / (geometry.count() as f64).sqrt();
    let exact: Vec<Complex64> = geometry
        .positions()
        .map(|x| {
            let delta = exact_element_range(user, x) - user.range;
            Complex64::from_polar(amp, -k * delta)
        })
        .collect();
    hermitian_inner(&planar, &exact).norm()
}
