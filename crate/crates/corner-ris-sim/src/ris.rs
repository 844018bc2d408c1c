//! The 1-bit coded reflecting surface: phase-profile synthesis for a
//! commanded reflection angle, quantization to two cell states, far-field
//! reradiation pattern, and beam metrics.
//!
//! Angles are measured from the panel normal, in the steering plane spanned
//! by the column axis (the 16-cell axis in the stock panel). The sign
//! convention follows the panel tangent, which is the normal rotated +90
//! degrees in scene coordinates.

use crate::error::{Result, SimError};
use crate::SPEED_OF_LIGHT;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Geometry and cell model of the reflecting panel.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RisPanel {
    /// Cells along the steering (in-plane) axis.
    pub n_cols: usize,
    /// Cells along the transverse axis; phase is uniform across rows.
    pub n_rows: usize,
    /// Cell periodicity in meters.
    pub period: f64,
    /// Design frequency in Hz for phase-profile synthesis.
    pub freq_design: f64,
    /// Cell ON-state reflection phase, radians.
    pub phase_on: f64,
    /// Cell OFF-state reflection phase, radians.
    pub phase_off: f64,
    /// Half-width of the per-cell uniform phase perturbation, radians.
    /// Zero disables the perturbation.
    pub phase_error: f64,
    /// Seed for the fixed per-cell phase-error draw.
    pub phase_error_seed: u64,
    /// Cell reflection amplitude in (0, 1].
    pub cell_amplitude: f64,
    /// Element-factor exponent q in cos^q(theta).
    pub element_exponent: f64,
}

impl Default for RisPanel {
    fn default() -> Self {
        Self {
            n_cols: 16,
            n_rows: 10,
            period: 0.016,
            freq_design: 5.45e9,
            phase_on: PI,
            phase_off: 0.0,
            phase_error: 0.0,
            phase_error_seed: 0,
            cell_amplitude: 1.0,
            element_exponent: 1.0,
        }
    }
}

impl RisPanel {
    pub fn validate(&self) -> Result<()> {
        if self.period <= 0.0 {
            return Err(SimError::Config("cell period must be positive".into()));
        }
        if self.n_cols == 0 || self.n_rows == 0 {
            return Err(SimError::Config("panel must have at least one cell".into()));
        }
        if !(self.cell_amplitude > 0.0 && self.cell_amplitude <= 1.0) {
            return Err(SimError::Config(format!(
                "cell amplitude {} outside (0, 1]",
                self.cell_amplitude
            )));
        }
        Ok(())
    }

    pub fn n_cells(&self) -> usize {
        self.n_cols * self.n_rows
    }

    /// Panel aperture area, meters squared.
    pub fn aperture_area(&self) -> f64 {
        (self.n_cols as f64 * self.period) * (self.n_rows as f64 * self.period)
    }

    /// Column center offset from the panel center, meters.
    pub fn col_offset(&self, m: usize) -> f64 {
        (m as f64 - (self.n_cols as f64 - 1.0) / 2.0) * self.period
    }

    /// Fixed per-cell phase perturbations, row-major, drawn once from the
    /// panel seed. All zeros when `phase_error` is zero.
    pub fn phase_error_draws(&self) -> Vec<f64> {
        let n = self.n_cells();
        if self.phase_error == 0.0 {
            return vec![0.0; n];
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.phase_error_seed);
        (0..n)
            .map(|_| rng.gen_range(-self.phase_error..=self.phase_error))
            .collect()
    }

    fn element_factor(&self, theta_rad: f64) -> f64 {
        theta_rad.cos().max(0.0).powf(self.element_exponent)
    }
}

/// Continuous (pre-quantization) phase profile, wrapped to [-pi, pi).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    pub n_cols: usize,
    pub n_rows: usize,
    /// Row-major values, radians.
    pub values: Vec<f64>,
}

impl PhaseProfile {
    pub fn at(&self, col: usize, row: usize) -> f64 {
        self.values[row * self.n_cols + col]
    }
}

/// One bit per cell: 0 selects the OFF state, 1 the ON state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingMap {
    pub n_cols: usize,
    pub n_rows: usize,
    /// Row-major bits.
    pub bits: Vec<u8>,
}

impl CodingMap {
    pub fn at(&self, col: usize, row: usize) -> u8 {
        self.bits[row * self.n_cols + col]
    }

    /// Uniform all-zero coding (every cell in the OFF state).
    pub fn uniform(panel: &RisPanel) -> Self {
        Self {
            n_cols: panel.n_cols,
            n_rows: panel.n_rows,
            bits: vec![0; panel.n_cells()],
        }
    }

    /// Plain-text grid: one line per row, '0'/'1' per column.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.bits.len() + self.n_rows);
        for row in 0..self.n_rows {
            for col in 0..self.n_cols {
                out.push(if self.at(col, row) == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        if lines.is_empty() {
            return Err(SimError::InvalidInput("empty coding map text".into()));
        }
        let n_cols = lines[0].trim().len();
        let mut bits = Vec::with_capacity(lines.len() * n_cols);
        for line in &lines {
            let line = line.trim();
            if line.len() != n_cols {
                return Err(SimError::InvalidInput(
                    "ragged rows in coding map text".into(),
                ));
            }
            for ch in line.chars() {
                match ch {
                    '0' => bits.push(0),
                    '1' => bits.push(1),
                    _ => {
                        return Err(SimError::InvalidInput(format!(
                            "invalid coding map character '{ch}'"
                        )))
                    }
                }
            }
        }
        Ok(Self {
            n_cols,
            n_rows: lines.len(),
            bits,
        })
    }
}

/// Scattered-field pattern over observation angle, source-normalized.
#[derive(Debug, Clone)]
pub struct Pattern {
    /// Observation angles, degrees, strictly increasing over [-90, 90].
    pub angles_deg: Vec<f64>,
    /// Complex scattered field per angle.
    pub gain: Vec<Complex64>,
}

/// Beam metrics extracted from a pattern.
#[derive(Debug, Clone, Copy)]
pub struct PatternMetrics {
    pub peak_angle_deg: f64,
    pub beamwidth_3db_deg: f64,
    pub peak_gain_db: f64,
    /// Highest local maximum outside the main lobe, dB relative to peak.
    pub highest_sidelobe_db: f64,
}

fn wrap_phase(x: f64) -> f64 {
    let w = (x + PI).rem_euclid(2.0 * PI) - PI;
    // rem_euclid can return exactly 2*pi for tiny negative inputs
    if w >= PI {
        w - 2.0 * PI
    } else {
        w
    }
}

fn circular_distance(a: f64, b: f64) -> f64 {
    wrap_phase(a - b).abs()
}

fn check_steering_angle(label: &str, deg: f64) -> Result<()> {
    if !(deg.abs() < 90.0) {
        return Err(SimError::InvalidInput(format!(
            "{label} angle {deg} degrees outside (-90, 90)"
        )));
    }
    Ok(())
}

/// Phase profile that redirects a plane wave arriving from `theta_i` toward
/// `theta_r`: cell phase = wrap(-k x_m (sin theta_r + sin theta_i)),
/// constant across rows.
pub fn continuous_phase_profile(
    panel: &RisPanel,
    theta_i_deg: f64,
    theta_r_deg: f64,
    freq: f64,
) -> Result<PhaseProfile> {
    check_steering_angle("incidence", theta_i_deg)?;
    check_steering_angle("reflection", theta_r_deg)?;
    let k = 2.0 * PI * freq / SPEED_OF_LIGHT;
    let s = theta_r_deg.to_radians().sin() + theta_i_deg.to_radians().sin();
    let mut values = Vec::with_capacity(panel.n_cells());
    for _row in 0..panel.n_rows {
        for col in 0..panel.n_cols {
            values.push(wrap_phase(-k * panel.col_offset(col) * s));
        }
    }
    Ok(PhaseProfile {
        n_cols: panel.n_cols,
        n_rows: panel.n_rows,
        values,
    })
}

/// Nearest-state quantization: bit 1 where the wrapped phase is closer to
/// the ON state than to the OFF state on the circle; ties break to 0.
pub fn quantize_1bit(profile: &PhaseProfile, panel: &RisPanel) -> CodingMap {
    assert_eq!(profile.n_cols, panel.n_cols, "profile shape mismatch");
    assert_eq!(profile.n_rows, panel.n_rows, "profile shape mismatch");
    let bits = profile
        .values
        .iter()
        .map(|&phi| {
            let d_off = circular_distance(phi, panel.phase_off);
            let d_on = circular_distance(phi, panel.phase_on);
            u8::from(d_on < d_off)
        })
        .collect();
    CodingMap {
        n_cols: panel.n_cols,
        n_rows: panel.n_rows,
        bits,
    }
}

/// Raw aperture sum for a given incidence/observation pair, without the
/// element factor. Full in-phase magnitude is `n_cols * n_rows` at unit
/// cell amplitude.
fn aperture_sum(
    panel: &RisPanel,
    coding: &CodingMap,
    theta_in_rad: f64,
    theta_out_rad: f64,
    freq: f64,
) -> Complex64 {
    let k = 2.0 * PI * freq / SPEED_OF_LIGHT;
    let s = theta_out_rad.sin() + theta_in_rad.sin();
    let errors = panel.phase_error_draws();
    let mut acc = Complex64::new(0.0, 0.0);
    for row in 0..panel.n_rows {
        for col in 0..panel.n_cols {
            let idx = row * panel.n_cols + col;
            let state = if coding.bits[idx] == 1 {
                panel.phase_on
            } else {
                panel.phase_off
            };
            let phase = state + errors[idx] + k * panel.col_offset(col) * s;
            acc += Complex64::from_polar(panel.cell_amplitude, phase);
        }
    }
    acc
}

/// Scattered field over observation angle for a fixed incidence, sampled on
/// a uniform grid with `grid_step_deg` spacing (at most 0.1 degrees).
pub fn reradiation_pattern(
    panel: &RisPanel,
    coding: &CodingMap,
    theta_i_deg: f64,
    freq: f64,
    grid_step_deg: f64,
) -> Result<Pattern> {
    check_steering_angle("incidence", theta_i_deg)?;
    if !(grid_step_deg > 0.0 && grid_step_deg <= 0.1) {
        return Err(SimError::InvalidInput(format!(
            "pattern grid step {grid_step_deg} must be in (0, 0.1] degrees"
        )));
    }
    let ti = theta_i_deg.to_radians();
    let n = (180.0 / grid_step_deg).round() as usize;
    let mut angles = Vec::with_capacity(n + 1);
    let mut gain = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let ang = -90.0 + i as f64 * grid_step_deg;
        let th = ang.to_radians();
        let g = aperture_sum(panel, coding, ti, th, freq) * panel.element_factor(th);
        angles.push(ang);
        gain.push(g);
    }
    Ok(Pattern {
        angles_deg: angles,
        gain,
    })
}

/// Peak, 3-dB width, and sidelobe level of a pattern.
pub fn pattern_metrics(pattern: &Pattern) -> Result<PatternMetrics> {
    let mags: Vec<f64> = pattern.gain.iter().map(|g| g.norm()).collect();
    let (peak_idx, &peak) = mags
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    if peak <= 0.0 {
        return Err(SimError::InvalidInput(
            "pattern is identically zero".into(),
        ));
    }
    let level = peak / 2.0_f64.sqrt();
    let mut lo = peak_idx;
    while lo > 0 && mags[lo - 1] >= level {
        lo -= 1;
    }
    let mut hi = peak_idx;
    while hi + 1 < mags.len() && mags[hi + 1] >= level {
        hi += 1;
    }
    let mut sidelobe: f64 = 0.0;
    for i in 1..mags.len() - 1 {
        if i >= lo && i <= hi {
            continue;
        }
        if mags[i] >= mags[i - 1] && mags[i] >= mags[i + 1] {
            sidelobe = sidelobe.max(mags[i]);
        }
    }
    Ok(PatternMetrics {
        peak_angle_deg: pattern.angles_deg[peak_idx],
        beamwidth_3db_deg: pattern.angles_deg[hi] - pattern.angles_deg[lo],
        peak_gain_db: 20.0 * peak.log10(),
        highest_sidelobe_db: if sidelobe > 0.0 {
            20.0 * (sidelobe / peak).log10()
        } else {
            f64::NEG_INFINITY
        },
    })
}

/// Two-port link gain of the panel between an arrival and a departure
/// direction. Symmetric in its angle arguments; the full-aperture in-phase
/// sum has magnitude `n_cols * n_rows` before the obliquity factor
/// sqrt(E(theta_in) E(theta_out)).
pub fn ris_link_gain(
    panel: &RisPanel,
    coding: &CodingMap,
    theta_in_deg: f64,
    theta_out_deg: f64,
    freq: f64,
) -> Complex64 {
    if theta_in_deg.abs() >= 90.0 || theta_out_deg.abs() >= 90.0 {
        return Complex64::new(0.0, 0.0);
    }
    let tin = theta_in_deg.to_radians();
    let tout = theta_out_deg.to_radians();
    let obliquity = (panel.element_factor(tin) * panel.element_factor(tout)).sqrt();
    aperture_sum(panel, coding, tin, tout, freq) * obliquity
}

/// Coding that steers the design incidence toward `theta_r` at the panel's
/// design frequency.
pub fn steering_coding(panel: &RisPanel, theta_i_deg: f64, theta_r_deg: f64) -> Result<CodingMap> {
    let profile = continuous_phase_profile(panel, theta_i_deg, theta_r_deg, panel.freq_design)?;
    Ok(quantize_1bit(&profile, panel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const THETA_I: f64 = -60.0;

    #[test]
    fn specular_command_needs_no_gradient() {
        let panel = RisPanel::default();
        let prof = continuous_phase_profile(&panel, -60.0, 60.0, panel.freq_design).unwrap();
        for &v in &prof.values {
            assert_relative_eq!(v, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn broadside_command_is_flat() {
        let panel = RisPanel::default();
        let prof = continuous_phase_profile(&panel, 0.0, 0.0, panel.freq_design).unwrap();
        assert!(prof.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn steering_profile_slope_matches_closed_form() {
        // slope per cell = -k d (sin 30 - sin 60), k = 2 pi f / c
        let panel = RisPanel::default();
        let f = 5.45e9;
        let k = 2.0 * PI * f / SPEED_OF_LIGHT;
        let expected = -k * panel.period * (30.0_f64.to_radians().sin() - 60.0_f64.to_radians().sin());
        assert_relative_eq!(expected, 0.668_951_6, epsilon = 1e-6);
        let prof = continuous_phase_profile(&panel, THETA_I, 30.0, f).unwrap();
        for col in 0..panel.n_cols - 1 {
            let d = wrap_phase(prof.at(col + 1, 0) - prof.at(col, 0));
            assert_relative_eq!(d, expected, epsilon = 1e-9);
        }
    }

    #[test]
    fn angle_out_of_range_rejected() {
        let panel = RisPanel::default();
        assert!(continuous_phase_profile(&panel, -60.0, 95.0, panel.freq_design).is_err());
        assert!(continuous_phase_profile(&panel, 90.0, 0.0, panel.freq_design).is_err());
    }

    #[test]
    fn quantize_uniform_profile_is_all_off() {
        let panel = RisPanel::default();
        let prof = continuous_phase_profile(&panel, -60.0, 60.0, panel.freq_design).unwrap();
        let coding = quantize_1bit(&prof, &panel);
        assert!(coding.bits.iter().all(|&b| b == 0));
    }

    #[test]
    fn quantize_tie_breaks_to_off() {
        let panel = RisPanel::default();
        let prof = PhaseProfile {
            n_cols: panel.n_cols,
            n_rows: panel.n_rows,
            values: vec![PI / 2.0; panel.n_cells()],
        };
        let coding = quantize_1bit(&prof, &panel);
        assert!(coding.bits.iter().all(|&b| b == 0));
    }

    #[test]
    fn quantize_ramp_gives_stripes_of_expected_width() {
        // per-cell slope for the 15-degree command; stripes of
        // round(pi / slope) cells alternate along the columns
        let panel = RisPanel::default();
        let coding = steering_coding(&panel, THETA_I, 15.0).unwrap();
        let slope = {
            let k = 2.0 * PI * panel.freq_design / SPEED_OF_LIGHT;
            (k * panel.period * (15.0_f64.to_radians().sin() + (-60.0_f64).to_radians().sin())).abs()
        };
        let stripe = PI / slope; // about 2.8 cells
        let row: Vec<u8> = (0..panel.n_cols).map(|c| coding.at(c, 0)).collect();
        let mut runs = Vec::new();
        let mut len = 1;
        for i in 1..row.len() {
            if row[i] == row[i - 1] {
                len += 1;
            } else {
                runs.push(len);
                len = 1;
            }
        }
        runs.push(len);
        assert!(runs.len() >= 4, "expected alternating stripes, got {row:?}");
        // interior runs match the stripe width to within a cell
        for &r in &runs[1..runs.len() - 1] {
            assert!(
                (r as f64 - stripe).abs() <= 1.0,
                "stripe width {r} vs expected {stripe:.2}"
            );
        }
        // rows are identical
        for r in 1..panel.n_rows {
            for c in 0..panel.n_cols {
                assert_eq!(coding.at(c, r), coding.at(c, 0));
            }
        }
    }

    #[test]
    fn uniform_coding_peaks_at_specular() {
        let panel = RisPanel::default();
        let coding = CodingMap::uniform(&panel);
        let pat = reradiation_pattern(&panel, &coding, THETA_I, panel.freq_design, 0.05).unwrap();
        let m = pattern_metrics(&pat).unwrap();
        // element factor pulls the wide 60-degree beam slightly broadside
        assert!(
            (m.peak_angle_deg - 60.0).abs() < 5.0,
            "specular peak at {}",
            m.peak_angle_deg
        );
        // raw aperture sum at exactly +60 is fully in phase
        let g = aperture_sum(
            &panel,
            &coding,
            THETA_I.to_radians(),
            60.0_f64.to_radians(),
            panel.freq_design,
        );
        assert_relative_eq!(g.norm(), panel.n_cells() as f64, epsilon = 1e-9);
    }

    #[test]
    fn single_cell_pattern_is_element_factor() {
        let panel = RisPanel {
            n_cols: 1,
            n_rows: 1,
            ..RisPanel::default()
        };
        let coding = CodingMap::uniform(&panel);
        let pat = reradiation_pattern(&panel, &coding, 0.0, panel.freq_design, 0.1).unwrap();
        for (ang, g) in pat.angles_deg.iter().zip(&pat.gain) {
            let expected = ang.to_radians().cos().max(0.0);
            assert_relative_eq!(g.norm(), expected, epsilon = 1e-9);
        }
    }

    #[test]
    fn steered_30_peak_within_2_degrees() {
        let panel = RisPanel::default();
        let coding = steering_coding(&panel, THETA_I, 30.0).unwrap();
        let pat = reradiation_pattern(&panel, &coding, THETA_I, panel.freq_design, 0.05).unwrap();
        let m = pattern_metrics(&pat).unwrap();
        assert!(
            (m.peak_angle_deg - 30.0).abs() <= 2.0,
            "peak at {}",
            m.peak_angle_deg
        );
    }

    #[test]
    fn uniform_broadside_beamwidth_matches_aperture_formula() {
        // 0.886 lambda / (N d) radians for a uniform line source
        let panel = RisPanel::default();
        let coding = CodingMap::uniform(&panel);
        let pat = reradiation_pattern(&panel, &coding, 0.0, panel.freq_design, 0.05).unwrap();
        let m = pattern_metrics(&pat).unwrap();
        let lambda = SPEED_OF_LIGHT / panel.freq_design;
        let expected = (0.886 * lambda / (panel.n_cols as f64 * panel.period)).to_degrees();
        assert_relative_eq!(m.peak_angle_deg, 0.0, epsilon = 0.06);
        assert!(
            (m.beamwidth_3db_deg - expected).abs() < 0.3,
            "beamwidth {} vs {}",
            m.beamwidth_3db_deg,
            expected
        );
    }

    #[test]
    fn peak_angle_stable_under_grid_refinement() {
        let panel = RisPanel::default();
        let coding = steering_coding(&panel, THETA_I, 30.0).unwrap();
        let coarse = reradiation_pattern(&panel, &coding, THETA_I, panel.freq_design, 0.1).unwrap();
        let fine = reradiation_pattern(&panel, &coding, THETA_I, panel.freq_design, 0.05).unwrap();
        let mc = pattern_metrics(&coarse).unwrap();
        let mf = pattern_metrics(&fine).unwrap();
        assert!((mc.peak_angle_deg - mf.peak_angle_deg).abs() <= 0.05 + 1e-9);
    }

    #[test]
    fn doubling_columns_halves_beamwidth() {
        let narrow = RisPanel::default();
        let wide = RisPanel {
            n_cols: 32,
            ..RisPanel::default()
        };
        let bw = |panel: &RisPanel| {
            let coding = CodingMap::uniform(panel);
            let pat =
                reradiation_pattern(panel, &coding, 0.0, panel.freq_design, 0.05).unwrap();
            pattern_metrics(&pat).unwrap().beamwidth_3db_deg
        };
        let ratio = bw(&narrow) / bw(&wide);
        assert!((ratio - 2.0).abs() / 2.0 < 0.05, "ratio {ratio}");
    }

    #[test]
    fn link_gain_uniform_specular_magnitude() {
        let panel = RisPanel::default();
        let coding = CodingMap::uniform(&panel);
        let g = ris_link_gain(&panel, &coding, -60.0, 60.0, panel.freq_design);
        // 160 cells in phase, obliquity sqrt(cos 60 cos 60) = 0.5
        assert_relative_eq!(g.norm(), 80.0, epsilon = 1e-9);
    }

    #[test]
    fn link_gain_reciprocity_exact() {
        let panel = RisPanel::default();
        let coding = steering_coding(&panel, THETA_I, 45.0).unwrap();
        for (a, b) in [(-60.0, 45.0), (-10.0, 72.5), (3.0, -81.0)] {
            let g1 = ris_link_gain(&panel, &coding, a, b, 5.5e9);
            let g2 = ris_link_gain(&panel, &coding, b, a, 5.5e9);
            assert_relative_eq!(g1.re, g2.re, epsilon = 1e-12);
            assert_relative_eq!(g1.im, g2.im, epsilon = 1e-12);
        }
    }

    #[test]
    fn link_gain_far_off_lobe_is_small() {
        let panel = RisPanel::default();
        let coding = steering_coding(&panel, THETA_I, 30.0).unwrap();
        let peak = ris_link_gain(&panel, &coding, -60.0, 30.0, panel.freq_design).norm();
        let off = ris_link_gain(&panel, &coding, -60.0, -65.0, panel.freq_design).norm();
        assert!(off < 0.1 * peak, "off-lobe {off} vs peak {peak}");
    }

    #[test]
    fn link_gain_beyond_horizon_is_zero() {
        let panel = RisPanel::default();
        let coding = CodingMap::uniform(&panel);
        assert_eq!(ris_link_gain(&panel, &coding, -60.0, 95.0, 5.5e9).norm(), 0.0);
    }

    #[test]
    fn phase_error_keeps_peak_within_a_degree() {
        let clean = RisPanel::default();
        let noisy = RisPanel {
            phase_error: 20.0_f64.to_radians(),
            phase_error_seed: 42,
            ..RisPanel::default()
        };
        for theta_r in [15.0, 30.0, 45.0] {
            let peak = |panel: &RisPanel| {
                let coding = steering_coding(panel, THETA_I, theta_r).unwrap();
                let pat =
                    reradiation_pattern(panel, &coding, THETA_I, panel.freq_design, 0.05).unwrap();
                pattern_metrics(&pat).unwrap().peak_angle_deg
            };
            let shift = (peak(&clean) - peak(&noisy)).abs();
            assert!(shift < 1.0, "theta_r {theta_r}: peak shifted {shift} deg");
        }
    }

    #[test]
    fn coding_map_text_round_trip() {
        let panel = RisPanel::default();
        let coding = steering_coding(&panel, THETA_I, 30.0).unwrap();
        let text = coding.to_text();
        assert_eq!(text.lines().count(), panel.n_rows);
        assert_eq!(text.lines().next().unwrap().len(), panel.n_cols);
        let parsed = CodingMap::from_text(&text).unwrap();
        assert_eq!(parsed, coding);
    }

    #[test]
    fn coding_map_text_rejects_garbage() {
        assert!(CodingMap::from_text("0101\n01x1\n").is_err());
        assert!(CodingMap::from_text("0101\n011\n").is_err());
        assert!(CodingMap::from_text("").is_err());
    }
}
