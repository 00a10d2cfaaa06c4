//! The OFDM subcarrier grid.
//!
//! Subcarrier m (1-based, m = 1..M) sits at
//! `f_m = f_c + (m - 1 - (M-1)/2) * B / M`, so the grid straddles the
//! carrier symmetrically with spacing B/M. All public interfaces speak
//! 1-based subcarrier indices.

use crate::config::ValidatedConfig;

#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    freqs: Vec<f64>,
    carrier: f64,
    spacing: f64,
}

impl FrequencyGrid {
    pub fn new(cfg: &ValidatedConfig) -> FrequencyGrid {
        Self::from_parts(cfg.carrier_freq, cfg.bandwidth, cfg.num_subcarriers)
    }

    pub fn from_parts(carrier: f64, bandwidth: f64, num_subcarriers: usize) -> FrequencyGrid {
        let m_total = num_subcarriers as f64;
        let spacing = bandwidth / m_total;
        let freqs = (1..=num_subcarriers)
            .map(|m| carrier + (m as f64 - 1.0 - (m_total - 1.0) / 2.0) * spacing)
            .collect();
        FrequencyGrid {
            freqs,
            carrier,
            spacing,
        }
    }

    pub fn len(&self) -> usize {
        self.freqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs.is_empty()
    }

    /// Frequency of subcarrier `m` (1-based).
    pub fn freq(&self, m: usize) -> f64 {
        self.freqs[m - 1]
    }

    /// All subcarrier frequencies in ascending order.
    pub fn freqs(&self) -> &[f64] {
        &self.freqs
    }

    pub fn carrier(&self) -> f64 {
        self.carrier
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Lowest subcarrier frequency f_L = f_1.
    pub fn low_edge(&self) -> f64 {
        self.freqs[0]
    }

    /// Highest subcarrier frequency f_H = f_M.
    pub fn high_edge(&self) -> f64 {
        *self.freqs.last().unwrap()
    }

    /// Frequency ratio rho_m = f_m / f_c for subcarrier `m` (1-based).
    pub fn ratio(&self, m: usize) -> f64 {
        self.freqs[m - 1] / self.carrier
    }

    pub fn low_ratio(&self) -> f64 {
        self.low_edge() / self.carrier
    }

    pub fn high_ratio(&self) -> f64 {
        self.high_edge() / self.carrier
    }

    /// 1-based index of the subcarrier closest to the carrier; the lower
    /// index wins the tie that even M produces.
    pub fn central_index(&self) -> usize {
        let mut best = 1;
        let mut best_dist = f64::INFINITY;
        for (i, f) in self.freqs.iter().enumerate() {
            let d = (f - self.carrier).abs();
            if d < best_dist - 1e-9 * self.carrier.abs() {
                best = i + 1;
                best_dist = d;
            }
        }
        best
    }

    /// 1-based indices of the subcarriers at or below the carrier.
    pub fn indices_at_or_below_carrier(&self) -> impl Iterator<Item = usize> + '_ {
        self.freqs
            .iter()
            .enumerate()
            .take_while(|(_, f)| **f <= self.carrier)
            .map(|(i, _)| i + 1)
    }
}
