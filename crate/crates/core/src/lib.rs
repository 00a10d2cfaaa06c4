//! Link-level simulation of wideband beam training for extremely large
//! antenna arrays whose users sit in the radiative near field.
//!
//! The library models an OFDM downlink from a dense uniform linear array,
//! the grating-lobe ("rainbow block") beam patterns produced by sparsely
//! activating that array under true-time-delay beamforming, and a
//! three-pilot training procedure that estimates a user's spatial angle
//! and range at sub-grid resolution. Benchmark training schemes
//! (exhaustive polar search, near-field rainbow, two-phase) and a seeded
//! Monte Carlo experiment harness sit on top of the same channel and
//! beamforming substrate.
//!
//! Module map:
//! - [`config`]: validated system parameters and the config-file parser
//! - [`grid`]: the OFDM subcarrier grid
//! - [`geometry`]: antenna index sets for the full/dense/sparse arrays
//! - [`polar`]: (range, angle) <-> (angle, curvature) coordinates
//! - [`channel`]: steering vectors and LoS channels
//! - [`beamform`]: time-delay / phase-shifter beamformers and array gain
//! - [`rainbow`]: multi-beam and rainbow-block analytics for the sparse array
//! - [`training`]: the three-stage training pipeline
//! - [`benchmarks`]: comparison training schemes
//! - [`experiment`]: NMSE / achievable-rate Monte Carlo harness

pub mod beamform;
pub mod benchmarks;
pub mod channel;
pub mod config;
pub mod experiment;
pub mod geometry;
pub mod grid;
pub mod polar;
pub mod rainbow;
pub mod training;

pub use config::{SystemConfig, ValidatedConfig};
pub use grid::FrequencyGrid;
pub use polar::PolarPoint;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
