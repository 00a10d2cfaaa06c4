//! Antenna index sets for the three array configurations.
//!
//! All arrays are symmetric around the center element, indexed
//! `-(count-1)/2 ..= (count-1)/2`. Element `n` of a geometry with physical
//! spacing `s` sits at `(0, n*s)` on the array axis. The sparse subarray
//! keeps every U-th element of the dense central subarray, so its index
//! steps are worth `U * d_c` of physical offset.

use crate::config::ValidatedConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrayKind {
    /// The whole N-antenna dense array.
    Full,
    /// The Q-antenna dense central subarray.
    DenseSubarray,
    /// The sparsely activated central subarray ((Q-1)/U + 1 antennas).
    SparseSubarray,
}

impl std::fmt::Display for ArrayKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ArrayKind::Full => "full",
            ArrayKind::DenseSubarray => "dense",
            ArrayKind::SparseSubarray => "sparse",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArrayGeometry {
    pub kind: ArrayKind,
    count: usize,
    /// Physical spacing between consecutive activated elements, meters.
    spacing: f64,
}

impl ArrayGeometry {
    pub fn full(cfg: &ValidatedConfig) -> ArrayGeometry {
        ArrayGeometry {
            kind: ArrayKind::Full,
            count: cfg.num_antennas_total,
            spacing: cfg.antenna_spacing,
        }
    }

    pub fn dense_subarray(cfg: &ValidatedConfig) -> ArrayGeometry {
        ArrayGeometry {
            kind: ArrayKind::DenseSubarray,
            count: cfg.subarray_antennas,
            spacing: cfg.antenna_spacing,
        }
    }

    pub fn sparse_subarray(cfg: &ValidatedConfig) -> ArrayGeometry {
        ArrayGeometry {
            kind: ArrayKind::SparseSubarray,
            count: cfg.sparse_antennas,
            spacing: cfg.antenna_spacing * cfg.activation_interval as f64,
        }
    }

    pub fn of_kind(cfg: &ValidatedConfig, kind: ArrayKind) -> ArrayGeometry {
        match kind {
            ArrayKind::Full => Self::full(cfg),
            ArrayKind::DenseSubarray => Self::dense_subarray(cfg),
            ArrayKind::SparseSubarray => Self::sparse_subarray(cfg),
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Symmetric element indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        let half = (self.count as i64 - 1) / 2;
        -half..=half
    }

    /// Physical offsets of the elements along the array axis, meters.
    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        self.indices().map(|n| n as f64 * self.spacing)
    }

    /// Half-aperture of the activated elements, meters.
    pub fn half_aperture(&self) -> f64 {
        (self.count as f64 - 1.0) / 2.0 * self.spacing
    }
}
