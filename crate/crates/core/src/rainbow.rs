//! Beam-pattern analytics for the sparsely activated subarray.
//!
//! Driving the sparse subarray with a TD beamformer set to `td_angle`
//! produces, at subcarrier ratio `rho_m = f_m / f_c`, unit-gain beams at
//! every angle `td_angle + 2 k / (u rho_m)` (integer k) that lands in the
//! visible region [-1, 1): grating lobes, replicated per subcarrier and
//! shifted by the beam-split effect. Collecting one lobe index per
//! subcarrier — the index the carrier frequency itself would use — yields a
//! "rainbow block": a swath of M nearly uniformly spaced beams. There are
//! exactly `u` such blocks, and for a sweep parameter below -1 they can be
//! arranged to tile the whole angular domain, which is what
//! [`solve_sweep_td_parameter`] computes and [`coverage_report`] checks.
//!
//! Beam counting is done by enumerating the integer lattice inside the
//! half-open visible region rather than by a closed-form count; enumeration
//! is exact at the boundaries where printed counting formulas are
//! ambiguous.

use thiserror::Error;

use crate::grid::FrequencyGrid;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RainbowError {
    #[error(
        "td_angle = {0} does not sweep: rainbow-block analysis requires td_angle < -1 \
         (angles inside [-1, 1) steer one beam of every subcarrier to the same place)"
    )]
    TdAngleNotSweeping(f64),
    #[error("a zero curvature alias index produces no range spread")]
    ZeroAliasIndex,
}

/// One grating-lobe beam: the lattice index and the angle it lands on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beam {
    pub k: i64,
    pub angle: f64,
}

/// Integer lattice indices k with `td_angle + 2k/(u rho)` inside [-1, 1).
fn lattice_bounds(td_angle: f64, u: usize, rho: f64) -> (i64, i64) {
    let half_period = 2.0 / (u as f64 * rho);
    // theta >= -1  =>  k >= (-1 - td_angle) / half_period
    let k_min = ((-1.0 - td_angle) / half_period).ceil() as i64;
    // theta < 1   =>  k < (1 - td_angle) / half_period
    let upper = (1.0 - td_angle) / half_period;
    let k_max = if upper == upper.floor() {
        upper as i64 - 1
    } else {
        upper.floor() as i64
    };
    (k_min, k_max)
}

/// All beams formed at frequency `freq` in ascending angle order.
pub fn multi_beam_angles(td_angle: f64, u: usize, freq: f64, carrier: f64) -> Vec<Beam> {
    let rho = freq / carrier;
    let half_period = 2.0 / (u as f64 * rho);
    let (k_min, k_max) = lattice_bounds(td_angle, u, rho);
    (k_min..=k_max)
        .map(|k| Beam {
            k,
            angle: td_angle + k as f64 * half_period,
        })
        .collect()
}

/// Number of beams formed at frequency `freq`.
pub fn num_beams(td_angle: f64, u: usize, freq: f64, carrier: f64) -> usize {
    let (k_min, k_max) = lattice_bounds(td_angle, u, freq / carrier);
    (k_max - k_min + 1).max(0) as usize
}

/// True when the TD angle lies in the visible region, in which case one
/// beam of every subcarrier steers to the same angle and the sweep wastes
/// the whole band.
pub fn is_ineffective_td(td_angle: f64) -> bool {
    (-1.0..1.0).contains(&td_angle)
}

/// One angle of a rainbow block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockAngle {
    /// 1-based subcarrier index.
    pub subcarrier: usize,
    pub freq: f64,
    pub angle: f64,
    /// False when the shared lobe index pushes this subcarrier's angle
    /// outside [-1, 1); the angle is kept anyway since the block geometry
    /// needs it.
    pub physical: bool,
}

/// The block of per-subcarrier beams sharing one carrier-lattice index.
#[derive(Debug, Clone, PartialEq)]
pub struct RainbowBlock {
    /// 1-based block index, ordered by angle.
    pub index: usize,
    /// Shared lattice index of the carrier frequency.
    pub k_central: i64,
    /// Beam angle at the carrier frequency (the block center).
    pub central_angle: f64,
    /// Block edge at the highest subcarrier (smaller angle).
    pub upper_edge: f64,
    /// Block edge at the lowest subcarrier (larger angle).
    pub lower_edge: f64,
    /// Angular width `lower_edge - upper_edge`.
    pub width: f64,
    /// Signed interval to the next block's upper edge; negative means the
    /// blocks overlap. Absent for the last block.
    pub gap_to_next: Option<f64>,
    /// One angle per subcarrier, ascending subcarrier order (descending angle).
    pub angles: Vec<BlockAngle>,
}

/// Decompose the all-subcarrier beam pattern into its `u` rainbow blocks.
pub fn rainbow_blocks(
    td_angle: f64,
    u: usize,
    grid: &FrequencyGrid,
) -> Result<Vec<RainbowBlock>, RainbowError> {
    if td_angle >= -1.0 {
        return Err(RainbowError::TdAngleNotSweeping(td_angle));
    }
    let (k_min, _) = lattice_bounds(td_angle, u, 1.0);
    let rho_h = grid.high_ratio();
    let rho_l = grid.low_ratio();
    let mut blocks = Vec::with_capacity(u);
    for uc in 1..=u {
        let k = k_min + (uc as i64 - 1);
        let lobe = |rho: f64| td_angle + 2.0 * k as f64 / (u as f64 * rho);
        let angles: Vec<BlockAngle> = grid
            .freqs()
            .iter()
            .enumerate()
            .map(|(i, &f)| {
                let angle = lobe(f / grid.carrier());
                BlockAngle {
                    subcarrier: i + 1,
                    freq: f,
                    angle,
                    physical: (-1.0..1.0).contains(&angle),
                }
            })
            .collect();
        let upper_edge = lobe(rho_h);
        let lower_edge = lobe(rho_l);
        blocks.push(RainbowBlock {
            index: uc,
            k_central: k,
            central_angle: lobe(1.0),
            upper_edge,
            lower_edge,
            width: lower_edge - upper_edge,
            gap_to_next: None,
            angles,
        });
    }
    for i in 0..u - 1 {
        let next_upper = blocks[i + 1].upper_edge;
        blocks[i].gap_to_next = Some(next_upper - blocks[i].lower_edge);
    }
    Ok(blocks)
}

/// TD sweep parameter that tiles [-1, 1) with the `u` rainbow blocks:
/// `-1 + (1 - 2 ceil(f_H / B)) / u`, with the blocks' carrier-frequency
/// centers at `-1 + (2 u_c - 1)/u`.
pub fn solve_sweep_td_parameter(u: usize, grid: &FrequencyGrid) -> f64 {
    let bandwidth = grid.spacing() * grid.len() as f64;
    let k_th = (grid.high_edge() / bandwidth).ceil();
    -1.0 + (1.0 - 2.0 * k_th) / u as f64
}

/// Angular-coverage audit of the rainbow blocks against [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageReport {
    /// True when the union of block coverage intervals contains [-1, 1].
    pub covered: bool,
    /// Largest uncovered stretch (negative values mean slack everywhere).
    pub max_gap: f64,
    /// Largest overlap between adjacent blocks.
    pub max_overlap: f64,
}

pub fn coverage_report(
    td_angle: f64,
    u: usize,
    grid: &FrequencyGrid,
) -> Result<CoverageReport, RainbowError> {
    let blocks = rainbow_blocks(td_angle, u, grid)?;
    // blocks are in ascending angle order with interval [upper, lower] each
    let mut max_gap = blocks[0].upper_edge - (-1.0);
    let mut max_overlap: f64 = 0.0;
    for b in &blocks {
        if let Some(gap) = b.gap_to_next {
            max_gap = max_gap.max(gap);
            max_overlap = max_overlap.max(-gap);
        }
    }
    max_gap = max_gap.max(1.0 - blocks[u - 1].lower_edge);
    Ok(CoverageReport {
        covered: max_gap <= 0.0,
        max_gap,
        max_overlap,
    })
}

/// Focus behavior with the phase shifters off: each subcarrier lands on its
/// own curvature, spread by roughly `4 s B / (c M)` between neighbors.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeSpread {
    /// First-order estimate of the curvature step between adjacent
    /// subcarriers, 1/m.
    pub delta_mu: f64,
    /// Exact per-subcarrier focus curvature
    /// `mu' + (2 s / d_c) f_c / f_m`, 1/m.
    pub focus: Vec<f64>,
}

pub fn td_only_range_spread(
    alias_index: i64,
    td_curvature: f64,
    antenna_spacing: f64,
    grid: &FrequencyGrid,
) -> Result<RangeSpread, RainbowError> {
    if alias_index == 0 {
        return Err(RainbowError::ZeroAliasIndex);
    }
    let bandwidth = grid.spacing() * grid.len() as f64;
    let delta_mu =
        4.0 * alias_index as f64 * bandwidth / (crate::SPEED_OF_LIGHT * grid.len() as f64);
    let step = 2.0 * alias_index as f64 / antenna_spacing;
    let focus = grid
        .freqs()
        .iter()
        .map(|&f| td_curvature + step * grid.carrier() / f)
        .collect();
    Ok(RangeSpread { delta_mu, focus })
}
