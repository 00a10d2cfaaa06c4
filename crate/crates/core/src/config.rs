//! System parameters, validation, and the config-file front end.
//!
//! A [`SystemConfig`] is a raw parameter bundle; [`SystemConfig::validate`]
//! checks every structural and geometric invariant and produces a
//! [`ValidatedConfig`] carrying the derived quantities (antenna spacing,
//! aperture, Fresnel/Rayleigh distances, sparse-array size) that the rest
//! of the library assumes are consistent.
//!
//! Config files are flat TOML documents keyed by the `SystemConfig` field
//! names. Physical values may be plain numbers in base SI units (Hz, W, m)
//! or strings with a unit suffix: `"60 GHz"`, `"30 dBm"`, `"10 m"`.

use thiserror::Error;

use crate::SPEED_OF_LIGHT;

/// Raw system parameters, as read from a config file or built in code.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Total antennas in the dense array (N, odd).
    pub num_antennas_total: usize,
    /// Antennas in the central subarray (Q, odd).
    pub subarray_antennas: usize,
    /// Sparse activation interval (U): every U-th subarray element is driven.
    pub activation_interval: usize,
    /// Carrier frequency f_c in Hz.
    pub carrier_freq: f64,
    /// Total bandwidth B in Hz.
    pub bandwidth: f64,
    /// Number of OFDM subcarriers M.
    pub num_subcarriers: usize,
    /// Transmit power in watts (linear).
    pub transmit_power: f64,
    /// Noise power in watts (linear). Zero selects noise-free operation.
    pub noise_power: f64,
    /// Lower edge of the served range interval, meters.
    pub range_min: f64,
    /// Upper edge of the served range interval, meters.
    pub range_max: f64,
}

/// Validation failure; one variant per violated invariant.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("num_antennas_total must be a positive odd integer, got {0}")]
    EvenArraySize(usize),
    #[error("subarray_antennas (Q) must be a positive odd integer, got {0}")]
    EvenSubarraySize(usize),
    #[error("subarray_antennas (Q={q}) must not exceed num_antennas_total (N={n})")]
    SubarrayLargerThanArray { q: usize, n: usize },
    #[error("activation_interval must be at least 1")]
    ZeroActivationInterval,
    #[error("activation_interval (U={u}) must not exceed subarray_antennas (Q={q})")]
    ActivationIntervalTooLarge { u: usize, q: usize },
    #[error("(Q-1) = {qm1} is not divisible by activation_interval U = {u}")]
    SparseCountNotIntegral { qm1: usize, u: usize },
    #[error("carrier_freq must be positive, got {0} Hz")]
    NonPositiveCarrier(f64),
    #[error("bandwidth must be positive, got {0} Hz")]
    NonPositiveBandwidth(f64),
    #[error("bandwidth ({b:.3e} Hz) must be smaller than carrier_freq ({fc:.3e} Hz)")]
    BandwidthExceedsCarrier { b: f64, fc: f64 },
    #[error("num_subcarriers must be at least 1")]
    NoSubcarriers,
    #[error("transmit_power must be positive, got {0} W")]
    NonPositivePower(f64),
    #[error("noise_power must be non-negative, got {0} W")]
    NegativeNoisePower(f64),
    #[error("range bounds must satisfy 0 < range_min < range_max, got [{lo}, {hi}] m")]
    BadRangeBounds { lo: f64, hi: f64 },
    #[error(
        "range_min = {r_min} m is inside the Fresnel distance {fresnel:.3} m of the full array; \
         the near-field model does not hold there"
    )]
    RangeBelowFresnel { r_min: f64, fresnel: f64 },
    #[error(
        "range_max = {r_max} m is beyond the effective Rayleigh distance {rayleigh:.3} m of the \
         full array; users that far out are no longer in its near field"
    )]
    RangeBeyondRayleigh { r_max: f64, rayleigh: f64 },
    #[error(
        "range_max = {r_max} m is inside the effective Rayleigh distance {subarray_rayleigh:.3} m \
         of the Q = {q} central subarray; no served range lies in its far field \
         (requires Q <= {q_limit})"
    )]
    SubarrayNeverFarField {
        r_max: f64,
        subarray_rayleigh: f64,
        q: usize,
        q_limit: usize,
    },
    #[error("config file: {0}")]
    File(String),
}

/// A [`SystemConfig`] whose invariants have been checked, plus derived fields.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedConfig {
    raw: SystemConfig,
    /// Inter-antenna spacing d_c = lambda_c / 2, meters.
    pub antenna_spacing: f64,
    /// Carrier wavelength, meters.
    pub carrier_wavelength: f64,
    /// Activated sparse-array size: (Q-1)/U + 1.
    pub sparse_antennas: usize,
    /// Full-array aperture D = (N-1) d_c, meters.
    pub aperture: f64,
    /// Fresnel distance 1.2 D of the full array, meters.
    pub fresnel_distance: f64,
    /// Effective Rayleigh distance 0.367 * 2 D^2 / lambda_c of the full array, meters.
    pub rayleigh_distance: f64,
    /// Effective Rayleigh distance of the Q-antenna central subarray, meters.
    pub subarray_rayleigh_distance: f64,
    /// Non-fatal findings (e.g. part of the range interval inside the
    /// subarray's near field).
    pub warnings: Vec<String>,
}

impl std::ops::Deref for ValidatedConfig {
    type Target = SystemConfig;
    fn deref(&self) -> &SystemConfig {
        &self.raw
    }
}

impl SystemConfig {
    /// Check every invariant and populate the derived geometry.
    pub fn validate(self) -> Result<ValidatedConfig, ConfigError> {
        let cfg = &self;
        if cfg.num_antennas_total == 0 || cfg.num_antennas_total % 2 == 0 {
            return Err(ConfigError::EvenArraySize(cfg.num_antennas_total));
        }
        if cfg.subarray_antennas == 0 || cfg.subarray_antennas % 2 == 0 {
            return Err(ConfigError::EvenSubarraySize(cfg.subarray_antennas));
        }
        if cfg.subarray_antennas > cfg.num_antennas_total {
            return Err(ConfigError::SubarrayLargerThanArray {
                q: cfg.subarray_antennas,
                n: cfg.num_antennas_total,
            });
        }
        if cfg.activation_interval == 0 {
            return Err(ConfigError::ZeroActivationInterval);
        }
        if cfg.activation_interval > cfg.subarray_antennas {
            return Err(ConfigError::ActivationIntervalTooLarge {
                u: cfg.activation_interval,
                q: cfg.subarray_antennas,
            });
        }
        if (cfg.subarray_antennas - 1) % cfg.activation_interval != 0 {
            return Err(ConfigError::SparseCountNotIntegral {
                qm1: cfg.subarray_antennas - 1,
                u: cfg.activation_interval,
            });
        }
        if !(cfg.carrier_freq > 0.0) {
            return Err(ConfigError::NonPositiveCarrier(cfg.carrier_freq));
        }
        if !(cfg.bandwidth > 0.0) {
            return Err(ConfigError::NonPositiveBandwidth(cfg.bandwidth));
        }
        if cfg.bandwidth >= cfg.carrier_freq {
            return Err(ConfigError::BandwidthExceedsCarrier {
                b: cfg.bandwidth,
                fc: cfg.carrier_freq,
            });
        }
        if cfg.num_subcarriers == 0 {
            return Err(ConfigError::NoSubcarriers);
        }
        if !(cfg.transmit_power > 0.0) {
            return Err(ConfigError::NonPositivePower(cfg.transmit_power));
        }
        if !(cfg.noise_power >= 0.0) {
            return Err(ConfigError::NegativeNoisePower(cfg.noise_power));
        }
        if !(cfg.range_min > 0.0 && cfg.range_min < cfg.range_max) {
            return Err(ConfigError::BadRangeBounds {
                lo: cfg.range_min,
                hi: cfg.range_max,
            });
        }

        let carrier_wavelength = SPEED_OF_LIGHT / cfg.carrier_freq;
        let antenna_spacing = carrier_wavelength / 2.0;
        let aperture = (cfg.num_antennas_total - 1) as f64 * antenna_spacing;
        let fresnel_distance = 1.2 * aperture;
        let rayleigh_distance = 0.367 * 2.0 * aperture * aperture / carrier_wavelength;
        let subarray_aperture = (cfg.subarray_antennas - 1) as f64 * antenna_spacing;
        let subarray_rayleigh_distance =
            0.367 * 2.0 * subarray_aperture * subarray_aperture / carrier_wavelength;

        if cfg.range_min <= fresnel_distance {
            return Err(ConfigError::RangeBelowFresnel {
                r_min: cfg.range_min,
                fresnel: fresnel_distance,
            });
        }
        if cfg.range_max >= rayleigh_distance {
            return Err(ConfigError::RangeBeyondRayleigh {
                r_max: cfg.range_max,
                rayleigh: rayleigh_distance,
            });
        }
        // The training stages assume the served interval reaches into the
        // central subarray's far field. The closed-form size limit
        // Q <= sqrt(r / (0.367 d_c)) must hold at r = range_max; holding it
        // at range_min as well is desirable but stricter than the reference
        // system itself satisfies, so that case only warns.
        if cfg.range_max <= subarray_rayleigh_distance {
            let q_limit = (cfg.range_max / (0.367 * antenna_spacing)).sqrt().floor() as usize;
            return Err(ConfigError::SubarrayNeverFarField {
                r_max: cfg.range_max,
                subarray_rayleigh: subarray_rayleigh_distance,
                q: cfg.subarray_antennas,
                q_limit,
            });
        }
        let mut warnings = Vec::new();
        let q_strict = (cfg.range_min / (0.367 * antenna_spacing)).sqrt();
        if (cfg.subarray_antennas as f64) > q_strict {
            warnings.push(format!(
                "subarray Rayleigh distance {:.2} m exceeds range_min {} m: users closer than \
                 {:.2} m are not in the far field of the Q = {} central subarray \
                 (strict bound Q <= {})",
                subarray_rayleigh_distance,
                cfg.range_min,
                subarray_rayleigh_distance,
                cfg.subarray_antennas,
                q_strict.floor() as usize,
            ));
        }

        let sparse_antennas = (cfg.subarray_antennas - 1) / cfg.activation_interval + 1;
        Ok(ValidatedConfig {
            raw: self,
            antenna_spacing,
            carrier_wavelength,
            sparse_antennas,
            aperture,
            fresnel_distance,
            rayleigh_distance,
            subarray_rayleigh_distance,
            warnings,
        })
    }

    /// Parse a flat TOML config document. Unknown keys are rejected.
    pub fn from_toml_str(text: &str) -> Result<SystemConfig, ConfigError> {
        let table: toml::Table = text
            .parse()
            .map_err(|e| ConfigError::File(format!("invalid TOML: {e}")))?;
        let mut cfg = SystemConfig::template();
        for (key, value) in &table {
            cfg.apply_key(key, value)?;
        }
        Ok(cfg)
    }

    /// Apply `key=value` overrides (CLI syntax) on top of a parsed config.
    /// Values use the same grammar as config-file values.
    pub fn apply_overrides(&mut self, overrides: &[String]) -> Result<(), ConfigError> {
        for item in overrides {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                ConfigError::File(format!("override '{item}' is not of the form key=value"))
            })?;
            let value = value.trim().trim_matches('"');
            // bare scalars first; anything else (`60 GHz`, `30 dBm`) is a
            // unit-suffixed string
            let parsed = if let Ok(i) = value.parse::<i64>() {
                toml::Value::Integer(i)
            } else if let Ok(f) = value.parse::<f64>() {
                toml::Value::Float(f)
            } else {
                toml::Value::String(value.to_string())
            };
            self.apply_key(key.trim(), &parsed)?;
        }
        Ok(())
    }

    /// Render the config as a single `key=value` line for output headers.
    pub fn header_line(&self) -> String {
        format!(
            "num_antennas_total={} subarray_antennas={} activation_interval={} \
             carrier_freq={} bandwidth={} num_subcarriers={} transmit_power={} \
             noise_power={} range_min={} range_max={}",
            self.num_antennas_total,
            self.subarray_antennas,
            self.activation_interval,
            self.carrier_freq,
            self.bandwidth,
            self.num_subcarriers,
            self.transmit_power,
            self.noise_power,
            self.range_min,
            self.range_max
        )
    }

    fn template() -> SystemConfig {
        SystemConfig {
            num_antennas_total: 0,
            subarray_antennas: 0,
            activation_interval: 0,
            carrier_freq: 0.0,
            bandwidth: 0.0,
            num_subcarriers: 0,
            transmit_power: 0.0,
            noise_power: 0.0,
            range_min: 0.0,
            range_max: 0.0,
        }
    }

    fn apply_key(&mut self, key: &str, value: &toml::Value) -> Result<(), ConfigError> {
        match key {
            "num_antennas_total" => self.num_antennas_total = parse_count(key, value)?,
            "subarray_antennas" => self.subarray_antennas = parse_count(key, value)?,
            "activation_interval" => self.activation_interval = parse_count(key, value)?,
            "num_subcarriers" => self.num_subcarriers = parse_count(key, value)?,
            "carrier_freq" => self.carrier_freq = parse_quantity(key, value, Unit::Frequency)?,
            "bandwidth" => self.bandwidth = parse_quantity(key, value, Unit::Frequency)?,
            "transmit_power" => self.transmit_power = parse_quantity(key, value, Unit::Power)?,
            "noise_power" => self.noise_power = parse_quantity(key, value, Unit::Power)?,
            "range_min" => self.range_min = parse_quantity(key, value, Unit::Length)?,
            "range_max" => self.range_max = parse_quantity(key, value, Unit::Length)?,
            other => {
                return Err(ConfigError::File(format!("unknown config key '{other}'")));
            }
        }
        Ok(())
    }
}

enum Unit {
    Frequency,
    Power,
    Length,
}

fn parse_count(key: &str, value: &toml::Value) -> Result<usize, ConfigError> {
    match value {
        toml::Value::Integer(i) if *i >= 0 => Ok(*i as usize),
        _ => Err(ConfigError::File(format!(
            "key '{key}' expects a non-negative integer, got {value}"
        ))),
    }
}

/// Numbers are base SI (Hz, W, m); strings carry a unit suffix.
fn parse_quantity(key: &str, value: &toml::Value, unit: Unit) -> Result<f64, ConfigError> {
    let bad = |msg: String| ConfigError::File(format!("key '{key}': {msg}"));
    match value {
        toml::Value::Float(f) => Ok(*f),
        toml::Value::Integer(i) => Ok(*i as f64),
        toml::Value::String(s) => {
            let s = s.trim();
            let split = s
                .find(|c: char| c.is_ascii_alphabetic())
                .ok_or_else(|| bad(format!("missing unit in '{s}'")))?;
            let (num, suffix) = s.split_at(split);
            let x: f64 = num
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad number in '{s}'")))?;
            let suffix = suffix.trim();
            let scaled = match (unit, suffix) {
                (Unit::Frequency, "Hz") => x,
                (Unit::Frequency, "kHz") => x * 1e3,
                (Unit::Frequency, "MHz") => x * 1e6,
                (Unit::Frequency, "GHz") => x * 1e9,
                (Unit::Frequency, "THz") => x * 1e12,
                (Unit::Power, "W") => x,
                (Unit::Power, "mW") => x * 1e-3,
                (Unit::Power, "dBm") => 1e-3 * 10f64.powf(x / 10.0),
                (Unit::Power, "dBW") => 10f64.powf(x / 10.0),
                (Unit::Length, "m") => x,
                (Unit::Length, "km") => x * 1e3,
                (Unit::Length, "cm") => x * 1e-2,
                (Unit::Length, "mm") => x * 1e-3,
                (_, other) => return Err(bad(format!("unsupported unit '{other}'"))),
            };
            Ok(scaled)
        }
        other => Err(bad(format!("expected number or string, got {other}"))),
    }
}

/// The reference system used throughout the tests: N = 513, Q = 129, U = 8,
/// f_c = 60 GHz, B = 3 GHz, M = 1024, P_t = 30 dBm, noise -80 dBm,
/// range 10..50 m.
pub fn reference_config() -> SystemConfig {
    SystemConfig {
        num_antennas_total: 513,
        subarray_antennas: 129,
        activation_interval: 8,
        carrier_freq: 60e9,
        bandwidth: 3e9,
        num_subcarriers: 1024,
        transmit_power: 1.0,
        noise_power: 1e-11,
        range_min: 10.0,
        range_max: 50.0,
    }
}
