//! Walking-target kinematics: span trajectories with smoothed turnarounds
//! and a five-point scatterer decomposition of the walker (torso, two
//! hands, two feet) whose limbs carry sinusoidal gait velocities.

use crate::error::{Result, SimError};
use crate::geometry::{Point2, Scene, Vec2};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Half-width of the cosine velocity taper applied at reversals, seconds.
/// The full turn takes 0.2 s.
pub const TURN_TAPER_HALF_S: f64 = 0.1;

/// The four measured walking paths plus free-form waypoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TrajectoryKind {
    /// Tangential crossing in front of the radar, inside the beam.
    T1,
    /// Down the shadowed corridor arm toward the corner and the panel.
    T2,
    /// Radial: approach the radar, turn, recede.
    T3,
    /// Across the shadowed arm's width at a standoff from the corner.
    T4,
    Custom,
}

/// Default span endpoints for the canonical corridor, meters.
///
/// T2 starts 5.0 m from the default panel position and ends at the edge of
/// the radar's line of sight; T4's line sits `standoff` meters down the arm
/// from the inside corner and crosses the full 2.4 m width.
pub mod canonical {
    use crate::geometry::Point2;

    pub const T1_SPAN: (Point2, Point2) = (
        Point2 { x: 1.7, y: 3.7 },
        Point2 { x: -1.15, y: 3.7 },
    );
    pub const T2_SPAN: (Point2, Point2) = (
        Point2 { x: 3.62, y: 3.7 },
        Point2 { x: 1.8, y: 3.7 },
    );
    pub const T3_SPAN: (Point2, Point2) = (
        Point2 { x: 0.0, y: 2.75 },
        Point2 { x: 0.0, y: 0.5 },
    );
    /// Inside corner of the canonical corridor; T4 lines hang off it.
    pub const CORNER_X: f64 = 1.2;
    pub const ARM_Y_TOP: f64 = 4.9;
    pub const ARM_Y_BOTTOM: f64 = 2.5;

    pub fn t4_span(standoff_m: f64) -> (Point2, Point2) {
        let x = CORNER_X + standoff_m;
        (
            Point2 { x, y: ARM_Y_TOP },
            Point2 { x, y: ARM_Y_BOTTOM },
        )
    }
}

/// Gait model parameters for the point-scatterer walker.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaitParams {
    /// Steps per second. The stock walker does 1.8 at 1.5 m/s.
    pub cadence: f64,
    pub torso_rcs: f64,
    pub limb_rcs: f64,
    /// Hand velocity oscillation amplitude, m/s.
    pub arm_swing_amp: f64,
    /// Foot velocity oscillation amplitude, m/s.
    pub leg_swing_amp: f64,
    /// How many of the five scatterers to emit (torso first).
    pub n_scatterers: usize,
}

impl Default for GaitParams {
    fn default() -> Self {
        Self {
            cadence: 1.8,
            torso_rcs: 1.0,
            limb_rcs: 0.1,
            arm_swing_amp: 1.0,
            leg_swing_amp: 2.5,
            n_scatterers: 5,
        }
    }
}

impl GaitParams {
    pub fn validate(&self) -> Result<()> {
        if self.cadence <= 0.0 {
            return Err(SimError::Config("gait cadence must be positive".into()));
        }
        if self.torso_rcs <= 0.0 || self.limb_rcs <= 0.0 {
            return Err(SimError::Config("scatterer RCS must be positive".into()));
        }
        if !(1..=5).contains(&self.n_scatterers) {
            return Err(SimError::Config(format!(
                "n_scatterers {} outside 1..=5",
                self.n_scatterers
            )));
        }
        Ok(())
    }

    /// Largest limb swing amplitude among the emitted scatterers, m/s.
    pub fn max_swing_amp(&self) -> f64 {
        match self.n_scatterers {
            1 => 0.0,
            2 | 3 => self.arm_swing_amp,
            _ => self.arm_swing_amp.max(self.leg_swing_amp),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BodyPart {
    Torso,
    LeftHand,
    RightHand,
    LeftFoot,
    RightFoot,
}

/// A point scatterer of the walker at one instant.
#[derive(Debug, Clone, Copy)]
pub struct Scatterer {
    pub position: Point2,
    /// Annotation only; scatterers are points to the channel.
    pub radial_extent: f64,
    pub rcs: f64,
    pub body_part: BodyPart,
}

/// A time-parameterized walking path. Waypoints carry strictly increasing
/// times; reversals between collinear legs are smoothed with a 0.2 s cosine
/// velocity taper so Doppler stays continuous.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub kind: TrajectoryKind,
    pub waypoints: Vec<(f64, Point2)>,
    pub speed: f64,
    pub turnaround: bool,
    /// Fixed limb-oscillation axis when all legs are collinear.
    axis: Vec2,
}

/// Inputs for [`build_trajectory`].
#[derive(Debug, Clone)]
pub struct TrajectoryParams {
    pub speed: f64,
    /// Capture length the schedule must cover, seconds.
    pub duration: f64,
    /// Whether to walk the span back and forth.
    pub turnaround: bool,
    /// T4 only: distance from the inside corner along the arm, meters.
    pub standoff: Option<f64>,
    /// Replaces the canonical span endpoints when set.
    pub span_override: Option<(Point2, Point2)>,
    /// Custom kind: explicit (time, point) waypoints.
    pub custom_waypoints: Option<Vec<(f64, Point2)>>,
}

impl Default for TrajectoryParams {
    fn default() -> Self {
        Self {
            speed: 1.5,
            duration: 3.0,
            turnaround: true,
            standoff: None,
            span_override: None,
            custom_waypoints: None,
        }
    }
}

/// Build one of the four stock walking paths (or a custom one) against a
/// scene, rejecting paths that cross wall interiors.
pub fn build_trajectory(
    kind: TrajectoryKind,
    scene: &Scene,
    params: &TrajectoryParams,
) -> Result<Trajectory> {
    if params.speed <= 0.0 {
        return Err(SimError::Config("walking speed must be positive".into()));
    }
    if kind == TrajectoryKind::Custom {
        let wps = params
            .custom_waypoints
            .clone()
            .ok_or_else(|| SimError::Config("custom trajectory needs waypoints".into()))?;
        return Trajectory::from_waypoints(kind, wps, params.speed, scene);
    }
    let span = if let Some(span) = params.span_override {
        span
    } else {
        match kind {
            TrajectoryKind::T1 => canonical::T1_SPAN,
            TrajectoryKind::T2 => canonical::T2_SPAN,
            TrajectoryKind::T3 => canonical::T3_SPAN,
            TrajectoryKind::T4 => {
                let standoff = params.standoff.ok_or_else(|| {
                    SimError::Config("trajectory t4 requires a standoff".into())
                })?;
                if standoff <= 0.0 {
                    return Err(SimError::Config("t4 standoff must be positive".into()));
                }
                canonical::t4_span(standoff)
            }
            TrajectoryKind::Custom => unreachable!(),
        }
    };
    Trajectory::from_span(kind, span, params, scene)
}

impl Trajectory {
    /// Back-and-forth schedule over a straight span, covering `duration`.
    pub fn from_span(
        kind: TrajectoryKind,
        (start, end): (Point2, Point2),
        params: &TrajectoryParams,
        scene: &Scene,
    ) -> Result<Self> {
        let leg_len = start.distance_to(end);
        if leg_len < 1e-9 {
            return Err(SimError::Config("trajectory span is degenerate".into()));
        }
        let leg_time = leg_len / params.speed;
        if leg_time < 2.5 * TURN_TAPER_HALF_S {
            return Err(SimError::Config(format!(
                "span of {leg_len:.2} m at {} m/s leaves no room for turn tapers",
                params.speed
            )));
        }
        let mut waypoints = vec![(0.0, start), (leg_time, end)];
        if params.turnaround {
            let mut t = leg_time;
            let mut at_end = true;
            while t < params.duration + TURN_TAPER_HALF_S {
                t += leg_time;
                at_end = !at_end;
                waypoints.push((t, if at_end { end } else { start }));
            }
        } else if leg_time < params.duration {
            return Err(SimError::Config(format!(
                "span covers {leg_time:.2} s but {:.2} s are required and turnaround is off",
                params.duration
            )));
        }
        Self::from_waypoints(kind, waypoints, params.speed, scene)
    }

    pub fn from_waypoints(
        kind: TrajectoryKind,
        waypoints: Vec<(f64, Point2)>,
        speed: f64,
        scene: &Scene,
    ) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(SimError::Config("trajectory needs at least two waypoints".into()));
        }
        for w in waypoints.windows(2) {
            let dt = w[1].0 - w[0].0;
            if dt <= 0.0 {
                return Err(SimError::Config(
                    "waypoint times must be strictly increasing".into(),
                ));
            }
            let d = w[0].1.distance_to(w[1].1);
            let leg_speed = d / dt;
            if d > 1e-9 && (leg_speed - speed).abs() > 0.1 * speed {
                return Err(SimError::Config(format!(
                    "leg speed {leg_speed:.3} m/s deviates more than 10% from {speed} m/s"
                )));
            }
            for wall in &scene.walls {
                if crate::geometry::segments_intersect(w[0].1, w[1].1, wall.a, wall.b) {
                    return Err(SimError::Config(
                        "trajectory leg passes through a wall".into(),
                    ));
                }
            }
        }
        let axis = Vec2::between(waypoints[0].1, waypoints[1].1).normalized();
        Ok(Self {
            kind,
            waypoints,
            speed,
            turnaround: waypoints.len() > 2,
            axis,
        })
    }

    /// A walker standing still at `p`, limbs oscillating along `axis`.
    pub fn stationary(p: Point2, axis: Vec2, span_s: f64) -> Self {
        Self {
            kind: TrajectoryKind::Custom,
            waypoints: vec![(0.0, p), (span_s, p)],
            speed: 0.0,
            turnaround: false,
            axis: axis.normalized(),
        }
    }

    pub fn start_time(&self) -> f64 {
        self.waypoints[0].0
    }

    pub fn end_time(&self) -> f64 {
        self.waypoints[self.waypoints.len() - 1].0
    }

    /// Unit axis along which the limbs oscillate.
    pub fn oscillation_axis(&self) -> Vec2 {
        self.axis
    }

    fn leg_velocity(&self, leg: usize) -> Vec2 {
        let (t0, p0) = self.waypoints[leg];
        let (t1, p1) = self.waypoints[leg + 1];
        let dt = t1 - t0;
        Vec2::new((p1.x - p0.x) / dt, (p1.y - p0.y) / dt)
    }

    fn leg_index(&self, t: f64) -> usize {
        let n = self.waypoints.len() - 1;
        for k in 0..n {
            if t < self.waypoints[k + 1].0 {
                return k;
            }
        }
        n - 1
    }

    /// Body position and velocity at time `t` within the schedule.
    pub fn state(&self, t: f64) -> (Point2, Vec2) {
        let t = t.clamp(self.start_time(), self.end_time());
        let leg = self.leg_index(t);
        // taper around an interior corner?
        for corner in [leg, leg + 1] {
            if corner == 0 || corner >= self.waypoints.len() - 1 {
                continue;
            }
            let tc = self.waypoints[corner].0;
            if (t - tc).abs() <= TURN_TAPER_HALF_S {
                return self.taper_state(corner, t);
            }
        }
        let (t0, p0) = self.waypoints[leg];
        let v = self.leg_velocity(leg);
        let dt = t - t0;
        (Point2::new(p0.x + v.x * dt, p0.y + v.y * dt), v)
    }

    /// Cosine-blended state inside the 0.2 s window around corner `k`.
    fn taper_state(&self, k: usize, t: f64) -> (Point2, Vec2) {
        let tc = self.waypoints[k].0;
        let v_in = self.leg_velocity(k - 1);
        let v_out = self.leg_velocity(k);
        // entry point of the taper window, on the incoming leg
        let (t0, p0) = self.waypoints[k - 1];
        let dt_in = tc - TURN_TAPER_HALF_S - t0;
        let entry = Point2::new(p0.x + v_in.x * dt_in, p0.y + v_in.y * dt_in);
        let x = t - (tc - TURN_TAPER_HALF_S); // 0..0.2
        let w = PI * x / (2.0 * TURN_TAPER_HALF_S);
        let mean = Vec2::new((v_in.x + v_out.x) / 2.0, (v_in.y + v_out.y) / 2.0);
        let half_diff = Vec2::new((v_in.x - v_out.x) / 2.0, (v_in.y - v_out.y) / 2.0);
        let sin_int = (2.0 * TURN_TAPER_HALF_S / PI) * w.sin();
        let pos = Point2::new(
            entry.x + mean.x * x + half_diff.x * sin_int,
            entry.y + mean.y * x + half_diff.y * sin_int,
        );
        let vel = Vec2::new(
            mean.x + half_diff.x * w.cos(),
            mean.y + half_diff.y * w.cos(),
        );
        (pos, vel)
    }
}

const LIMB_TABLE: [(BodyPart, f64); 4] = [
    (BodyPart::LeftHand, 0.0),
    (BodyPart::RightHand, PI),
    (BodyPart::LeftFoot, PI),
    (BodyPart::RightFoot, 0.0),
];

/// Scatterer set at time `t`: the torso rides the trajectory; each limb is
/// displaced along the walking axis by the integral of its sinusoidal
/// swing velocity, arms in antiphase with legs and left with right.
pub fn gait_scatterers(traj: &Trajectory, gait: &GaitParams, t: f64) -> Vec<Scatterer> {
    let (body, _) = traj.state(t);
    let axis = traj.oscillation_axis();
    let mut out = Vec::with_capacity(gait.n_scatterers);
    out.push(Scatterer {
        position: body,
        radial_extent: 0.0,
        rcs: gait.torso_rcs,
        body_part: BodyPart::Torso,
    });
    for (part, phase) in LIMB_TABLE.iter().take(gait.n_scatterers.saturating_sub(1)) {
        let amp = match part {
            BodyPart::LeftHand | BodyPart::RightHand => gait.arm_swing_amp,
            _ => gait.leg_swing_amp,
        };
        // integral of amp*sin(2 pi c t + phi)
        let disp = -(amp / (2.0 * PI * gait.cadence))
            * (2.0 * PI * gait.cadence * t + phase).cos();
        out.push(Scatterer {
            position: Point2::new(body.x + axis.x * disp, body.y + axis.y * disp),
            radial_extent: 0.0,
            rcs: gait.limb_rcs,
            body_part: *part,
        });
    }
    out
}
