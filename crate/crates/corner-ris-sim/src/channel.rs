//! Slow-time baseband synthesis at the monostatic receiver.
//!
//! Echo amplitudes follow the square root of the radar range equation,
//! composed per path: antenna weight at the radar end, one 1/R spreading
//! factor per scattering hop, wall reflection coefficients, and the panel
//! link gain for relayed paths. Specular wall bounces unfold — a hop's
//! spreading length is the summed leg length between rescattering nodes
//! (radar, panel, target), which keeps grazing reflections near wall
//! junctions finite. Each sample coherently sums all ordered
//! outbound/return path pairs for every scatterer, then adds a static
//! clutter term and circular white noise.

use crate::error::{Result, SimError};
use crate::geometry::{Point2, PropagationPath, Scene, Vec2};
use crate::kinematics::{gait_scatterers, GaitParams, Trajectory};
use crate::ris::{ris_link_gain, CodingMap, RisPanel};
use crate::SPEED_OF_LIGHT;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Monostatic CW radar parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadarConfig {
    /// Carrier frequency, Hz.
    pub freq: f64,
    pub tx_power_dbm: f64,
    /// Slow-time sampling rate, Hz.
    pub fs: f64,
    /// Capture length, seconds.
    pub duration: f64,
    /// Antenna gain, dB, applied to both ports.
    pub antenna_gain_db: f64,
    /// Full 3-dB beamwidth of the Gaussian antenna main lobe, degrees.
    pub antenna_beamwidth_deg: f64,
    /// Per-sample complex noise power, dBm.
    pub noise_floor_dbm: f64,
    /// Static clutter power at the receiver, dBm.
    pub clutter_dbm: f64,
    /// Wall-reflection budget for the image method.
    pub max_bounces: usize,
}

impl Default for RadarConfig {
    fn default() -> Self {
        Self {
            freq: 5.5e9,
            tx_power_dbm: 3.0,
            fs: 370.0,
            duration: 3.0,
            antenna_gain_db: 12.0,
            antenna_beamwidth_deg: 50.0,
            noise_floor_dbm: -102.0,
            clutter_dbm: -40.0,
            max_bounces: 2,
        }
    }
}

impl RadarConfig {
    pub fn validate(&self) -> Result<()> {
        if self.fs <= 0.0 || self.duration <= 0.0 || self.freq <= 0.0 {
            return Err(SimError::Config(
                "fs, duration and carrier frequency must be positive".into(),
            ));
        }
        if self.antenna_beamwidth_deg <= 0.0 {
            return Err(SimError::Config("antenna beamwidth must be positive".into()));
        }
        if self.max_bounces > 2 {
            return Err(SimError::Config(
                "image-method bounce budget is limited to 2".into(),
            ));
        }
        Ok(())
    }

    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.freq
    }

    pub fn n_samples(&self) -> usize {
        (self.fs * self.duration).round() as usize
    }

    /// Nyquist headroom for the fastest scatterer the kinematics can
    /// produce: 2 f v / c must stay below fs / 2.
    pub fn check_nyquist(&self, v_max: f64) -> Result<()> {
        let f_max = 2.0 * self.freq * v_max / SPEED_OF_LIGHT;
        if f_max >= self.fs / 2.0 {
            return Err(SimError::Physics(format!(
                "max Doppler {f_max:.1} Hz reaches the Nyquist limit {:.1} Hz",
                self.fs / 2.0
            )));
        }
        Ok(())
    }

    /// Amplitude weight of the Gaussian antenna main lobe at an angle off
    /// boresight; -3 dB in power at half the beamwidth.
    pub fn antenna_amp(&self, off_boresight_deg: f64) -> f64 {
        let half = self.antenna_beamwidth_deg / 2.0;
        2.0_f64.powf(-(off_boresight_deg / half).powi(2) / 2.0)
    }
}

/// Complex slow-time receiver samples.
#[derive(Debug, Clone)]
pub struct BasebandSignal {
    pub samples: Vec<Complex64>,
    pub fs: f64,
    pub t0: f64,
}

impl BasebandSignal {
    /// CSV export with header `t,re,im`, nine significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,re,im\n");
        for (k, s) in self.samples.iter().enumerate() {
            let t = self.t0 + k as f64 / self.fs;
            out.push_str(&format!("{:.8e},{:.8e},{:.8e}\n", t, s.re, s.im));
        }
        out
    }
}

fn dbm_to_amp(dbm: f64) -> f64 {
    10.0_f64.powf(dbm / 20.0)
}

/// sqrt(Pt Gt Gr) * (lambda / 4 pi), the path-independent amplitude prefix.
fn amplitude_prefix(cfg: &RadarConfig) -> f64 {
    let pt_mw = 10.0_f64.powf(cfg.tx_power_dbm / 10.0);
    let g = 10.0_f64.powf(cfg.antenna_gain_db / 10.0);
    (pt_mw * g * g).sqrt() * cfg.wavelength() / (4.0 * PI)
}

/// Geometric one-way factor of a path: antenna weight at the radar-end
/// departure angle, unfolded 1/R spreading per scattering hop, and the
/// wall coefficient product. Via-RIS paths split into a feed hop (first
/// leg, radar to panel) and a relay hop (the rest); plain paths are a
/// single hop of the total unfolded length. The relay gain itself is not
/// included here.
fn one_way_factor(path: &PropagationPath, cfg: &RadarConfig, boresight: Vec2) -> f64 {
    let dep = path.departure_dir();
    let off = dep.dot(boresight).clamp(-1.0, 1.0).acos().to_degrees();
    let spreading = if path.via_ris {
        let feed = path.leg_lengths[0];
        let relay: f64 = path.leg_lengths[1..].iter().sum();
        1.0 / (feed * relay)
    } else {
        1.0 / path.total_length()
    };
    cfg.antenna_amp(off) * spreading * path.wall_coeff_product
}

fn check_near_field(path: &PropagationPath, lambda: f64) -> Result<()> {
    if let Some(&short) = path
        .leg_lengths
        .iter()
        .find(|&&l| l < lambda)
    {
        return Err(SimError::Physics(format!(
            "path leg of {short:.3} m is shorter than a wavelength"
        )));
    }
    Ok(())
}

/// Complex echo amplitude for one outbound/return path pair off a scatterer
/// of the given RCS. `ris_gain_roundleg` is the product of the panel link
/// gains over however many of the two paths are relayed (unity when
/// neither is).
pub fn path_amplitude(
    outbound: &PropagationPath,
    inbound: &PropagationPath,
    rcs_m2: f64,
    cfg: &RadarConfig,
    boresight: Vec2,
    ris_gain_roundleg: Complex64,
) -> Result<Complex64> {
    let lambda = cfg.wavelength();
    check_near_field(outbound, lambda)?;
    check_near_field(inbound, lambda)?;
    let f_out = one_way_factor(outbound, cfg, boresight);
    let f_in = one_way_factor(inbound, cfg, boresight);
    let l_total = outbound.total_length() + inbound.total_length();
    let phase = Complex64::from_polar(1.0, -2.0 * PI * cfg.freq * l_total / SPEED_OF_LIGHT);
    Ok(amplitude_prefix(cfg) * (rcs_m2 / (4.0 * PI)).sqrt() * f_out * f_in * ris_gain_roundleg * phase)
}

/// Panel state used during synthesis.
pub struct RisState<'a> {
    pub panel: &'a RisPanel,
    pub coding: &'a CodingMap,
}

/// One-way route to a scatterer with its complex factor (relay gain folded
/// in for via-RIS routes) and total length.
struct OneWay {
    factor: Complex64,
    length: f64,
}

/// Plane-wave scattering length of the panel aperture per unit normalized
/// link gain: the full in-phase aperture reradiates like A / lambda meters
/// of scattering length, and `ris_link_gain` is normalized to the cell
/// count.
fn relay_scatter_len(panel: &RisPanel, lambda: f64) -> f64 {
    panel.aperture_area() / (lambda * panel.n_cells() as f64)
}

fn sub_wavelength_leg(path: &PropagationPath, lambda: f64) -> bool {
    path.leg_lengths.iter().any(|&l| l < lambda)
}

fn one_ways_for_scatterer(
    scene: &Scene,
    ris: Option<&RisState<'_>>,
    cfg: &RadarConfig,
    target: Point2,
    theta_in_deg: f64,
    ris_reachable: bool,
    lambda: f64,
) -> Vec<OneWay> {
    let mut ways = Vec::new();
    // Degenerate corner-grazing and wall-touching routes carry sub-
    // wavelength legs where ray spreading no longer applies; drop them.
    for path in scene.trace_paths(scene.radar_pos, target, cfg.max_bounces) {
        if sub_wavelength_leg(&path, lambda) {
            continue;
        }
        ways.push(OneWay {
            factor: Complex64::new(one_way_factor(&path, cfg, scene.radar_boresight), 0.0),
            length: path.total_length(),
        });
    }
    if let Some(state) = ris {
        if ris_reachable {
            let feed_len = scene.radar_pos.distance_to(scene.ris_pos);
            let feed_off = scene.off_boresight_deg(scene.ris_pos);
            let feed_amp = cfg.antenna_amp(feed_off) / feed_len;
            let tangent = scene.ris_normal.perp();
            let scatter_len = relay_scatter_len(state.panel, lambda);
            for path in scene.trace_paths(scene.ris_pos, target, cfg.max_bounces) {
                if sub_wavelength_leg(&path, lambda) {
                    continue;
                }
                let dep = path.departure_dir();
                let theta_out =
                    dep.dot(tangent).atan2(dep.dot(scene.ris_normal)).to_degrees();
                if theta_out.abs() >= 90.0 {
                    continue;
                }
                let g = ris_link_gain(state.panel, state.coding, theta_in_deg, theta_out, cfg.freq)
                    * scatter_len;
                if g.norm() == 0.0 {
                    continue;
                }
                ways.push(OneWay {
                    factor: g * feed_amp * path.wall_coeff_product / path.total_length(),
                    length: feed_len + path.total_length(),
                });
            }
        }
    }
    ways
}

/// Synthesize the monostatic slow-time signal for a walking target in the
/// scene, optionally relayed by the coded panel. Deterministic under
/// `seed`; sample-parallel.
pub fn synthesize_baseband(
    scene: &Scene,
    ris: Option<RisState<'_>>,
    traj: &Trajectory,
    gait: &GaitParams,
    cfg: &RadarConfig,
    seed: u64,
) -> Result<BasebandSignal> {
    cfg.validate()?;
    gait.validate()?;
    cfg.check_nyquist(traj.speed + gait.max_swing_amp())?;
    let n = cfg.n_samples();
    let span = traj.end_time() - traj.start_time();
    if span + 1e-9 < cfg.duration {
        return Err(SimError::Config(format!(
            "trajectory covers {span:.2} s but the capture needs {:.2} s",
            cfg.duration
        )));
    }
    let lambda = cfg.wavelength();

    // Panel feed: the radar must see the panel face.
    let (theta_in_deg, ris_reachable) = match &ris {
        Some(_) => {
            let tangent = scene.ris_normal.perp();
            let u = Vec2::between(scene.ris_pos, scene.radar_pos).normalized();
            let theta = u.dot(tangent).atan2(u.dot(scene.ris_normal)).to_degrees();
            let visible = scene.line_of_sight(scene.radar_pos, scene.ris_pos);
            (theta, visible && theta.abs() < 90.0)
        }
        None => (0.0, false),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let clutter = Complex64::from_polar(
        dbm_to_amp(cfg.clutter_dbm),
        rng.gen_range(0.0..2.0 * PI),
    );
    let sigma = dbm_to_amp(cfg.noise_floor_dbm);
    let noise: Vec<Complex64> = (0..n)
        .map(|_| {
            // Box-Muller: one pair drives both quadratures
            let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
            let u2: f64 = rng.gen();
            let r = (-2.0 * u1.ln()).sqrt();
            let (s, c) = (2.0 * PI * u2).sin_cos();
            Complex64::new(r * c, r * s) * (sigma / 2.0_f64.sqrt())
        })
        .collect();

    let prefix = amplitude_prefix(cfg);
    let samples: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|k| {
            let t = k as f64 / cfg.fs;
            let mut acc = clutter + noise[k];
            for sc in gait_scatterers(traj, gait, t) {
                let ways = one_ways_for_scatterer(
                    scene,
                    ris.as_ref(),
                    cfg,
                    sc.position,
                    theta_in_deg,
                    ris_reachable,
                    lambda,
                );
                let scale = prefix * (sc.rcs / (4.0 * PI)).sqrt();
                let mut echo = Complex64::new(0.0, 0.0);
                for out in &ways {
                    for back in &ways {
                        let l_total = out.length + back.length;
                        let phase = Complex64::from_polar(
                            1.0,
                            -2.0 * PI * cfg.freq * l_total / SPEED_OF_LIGHT,
                        );
                        echo += out.factor * back.factor * phase;
                    }
                }
                acc += scale * echo;
            }
            acc
        })
        .collect();

    Ok(BasebandSignal {
        samples,
        fs: cfg.fs,
        t0: 0.0,
    })
}
