//! 2-D corridor geometry: visibility tests and specular multipath by the
//! image method.
//!
//! The scene is a set of opaque wall segments in the horizontal plane at
//! mount height. Propagation paths are straight legs joined by specular
//! reflection points; a path is valid only if every reflection point lies on
//! its wall segment and every leg clears all wall interiors.

use crate::error::{Result, SimError};
use serde::{Deserialize, Serialize};

/// A point in the corridor plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance_to(&self, other: Point2) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// A 2-D vector; used for boresight and panel-normal directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn normalized(&self) -> Vec2 {
        let n = self.norm();
        Vec2::new(self.x / n, self.y / n)
    }

    pub fn dot(&self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Perpendicular vector, rotated +90 degrees (counterclockwise).
    pub fn perp(&self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn between(a: Point2, b: Point2) -> Vec2 {
        Vec2::new(b.x - a.x, b.y - a.y)
    }
}

fn cross(a: Vec2, b: Vec2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// An opaque wall segment with an amplitude reflection coefficient.
///
/// `thickness` is an annotation only; propagation treats walls as
/// infinitely thin opaque reflectors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WallSegment {
    pub a: Point2,
    pub b: Point2,
    pub reflection_coeff: f64,
    #[serde(default)]
    pub thickness: f64,
}

impl WallSegment {
    pub fn new(a: Point2, b: Point2, reflection_coeff: f64) -> Result<Self> {
        if a.distance_to(b) < 1e-9 {
            return Err(SimError::InvalidInput(
                "wall endpoints must be distinct".into(),
            ));
        }
        if !(0.0..=1.0).contains(&reflection_coeff) {
            return Err(SimError::InvalidInput(format!(
                "wall reflection coefficient {reflection_coeff} outside [0, 1]"
            )));
        }
        Ok(Self {
            a,
            b,
            reflection_coeff,
            thickness: 0.0,
        })
    }

    fn direction(&self) -> Vec2 {
        Vec2::between(self.a, self.b).normalized()
    }
}

/// The static world: walls plus radar and reflecting-surface poses.
#[derive(Debug, Clone)]
pub struct Scene {
    pub walls: Vec<WallSegment>,
    pub radar_pos: Point2,
    pub radar_boresight: Vec2,
    /// Full 3-dB beamwidth of the radar antennas, degrees.
    pub radar_beamwidth_deg: f64,
    pub ris_pos: Point2,
    pub ris_normal: Vec2,
    /// Mount height of radar and panel, meters. Annotation only; the
    /// propagation model is 2-D in the mount plane.
    pub mount_height: f64,
}

/// Region classification relative to the radar beam.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Los,
    Nlos,
}

/// A specular propagation path from a source to a destination.
///
/// `vertices` runs source, reflection points in order, destination. Paths
/// relayed off the reflecting surface are built by the channel layer and
/// carry `via_ris = true` with the panel position as an interior vertex.
#[derive(Debug, Clone)]
pub struct PropagationPath {
    pub vertices: Vec<Point2>,
    pub leg_lengths: Vec<f64>,
    pub wall_coeff_product: f64,
    pub via_ris: bool,
}

impl PropagationPath {
    pub fn total_length(&self) -> f64 {
        self.leg_lengths.iter().sum()
    }

    /// Number of wall reflections along the path.
    pub fn bounces(&self) -> usize {
        let interior = self.vertices.len() - 2;
        if self.via_ris {
            interior - 1
        } else {
            interior
        }
    }

    /// Direction of the first leg, from the source.
    pub fn departure_dir(&self) -> Vec2 {
        Vec2::between(self.vertices[0], self.vertices[1]).normalized()
    }
}

/// True iff the open interiors of two segments intersect. Contact at an
/// endpoint of either segment does not count as an intersection.
pub fn segments_intersect(a0: Point2, a1: Point2, b0: Point2, b1: Point2) -> bool {
    let r = Vec2::between(a0, a1);
    let s = Vec2::between(b0, b1);
    let qp = Vec2::between(a0, b0);
    let denom = cross(r, s);
    if denom.abs() < 1e-15 {
        // Parallel or collinear: overlapping collinear interiors count.
        if cross(qp, r).abs() > 1e-12 {
            return false;
        }
        let rr = r.dot(r);
        let t0 = qp.dot(r) / rr;
        let t1 = t0 + s.dot(r) / rr;
        let (lo, hi) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
        return lo < 1.0 - 1e-12 && hi > 1e-12;
    }
    let t = cross(qp, s) / denom;
    let u = cross(qp, r) / denom;
    const EPS: f64 = 1e-12;
    t > EPS && t < 1.0 - EPS && u > EPS && u < 1.0 - EPS
}

/// Reflection of a point across the infinite line through a wall.
pub fn mirror_point(p: Point2, wall: &WallSegment) -> Point2 {
    let d = wall.direction();
    let v = Vec2::between(wall.a, p);
    let along = v.dot(d);
    let foot = Point2::new(wall.a.x + along * d.x, wall.a.y + along * d.y);
    Point2::new(2.0 * foot.x - p.x, 2.0 * foot.y - p.y)
}

impl Scene {
    pub fn new(
        walls: Vec<WallSegment>,
        radar_pos: Point2,
        radar_boresight: Vec2,
        radar_beamwidth_deg: f64,
        ris_pos: Point2,
        ris_normal: Vec2,
        mount_height: f64,
    ) -> Result<Self> {
        if radar_boresight.norm() < 1e-12 || ris_normal.norm() < 1e-12 {
            return Err(SimError::InvalidInput(
                "boresight and panel normal must be nonzero".into(),
            ));
        }
        if !(radar_beamwidth_deg > 0.0 && radar_beamwidth_deg <= 360.0) {
            return Err(SimError::InvalidInput(format!(
                "radar beamwidth {radar_beamwidth_deg} degrees out of range"
            )));
        }
        let scene = Self {
            walls,
            radar_pos,
            radar_boresight: radar_boresight.normalized(),
            radar_beamwidth_deg,
            ris_pos,
            ris_normal: ris_normal.normalized(),
            mount_height,
        };
        for (name, p) in [("radar", radar_pos), ("ris", ris_pos)] {
            if scene.point_on_any_wall(p) {
                return Err(SimError::InvalidInput(format!(
                    "{name} position lies on a wall segment"
                )));
            }
        }
        Ok(scene)
    }

    fn point_on_any_wall(&self, p: Point2) -> bool {
        self.walls.iter().any(|w| {
            let d = w.direction();
            let v = Vec2::between(w.a, p);
            let along = v.dot(d);
            let len = w.a.distance_to(w.b);
            let perp = (v.x * d.y - v.y * d.x).abs();
            along > -1e-9 && along < len + 1e-9 && perp < 1e-9
        })
    }

    /// True iff the open segment pq crosses no wall interior.
    pub fn line_of_sight(&self, p: Point2, q: Point2) -> bool {
        self.walls
            .iter()
            .all(|w| !segments_intersect(p, q, w.a, w.b))
    }

    /// Angle of `p` off the radar boresight, degrees in [0, 180].
    pub fn off_boresight_deg(&self, p: Point2) -> f64 {
        let u = Vec2::between(self.radar_pos, p).normalized();
        u.dot(self.radar_boresight).clamp(-1.0, 1.0).acos().to_degrees()
    }

    /// LOS iff geometrically visible from the radar and within half the
    /// antenna beamwidth of boresight.
    pub fn classify_region(&self, p: Point2) -> Region {
        if self.line_of_sight(self.radar_pos, p)
            && self.off_boresight_deg(p) <= self.radar_beamwidth_deg / 2.0
        {
            Region::Los
        } else {
            Region::Nlos
        }
    }

    /// All unblocked specular paths from `src` to `dst` with at most
    /// `max_bounces` wall reflections, sorted by total length ascending.
    ///
    /// Image method: the source is mirrored across each ordered wall
    /// sequence, reflection points are recovered back-to-front and must lie
    /// strictly inside their wall segments, and every leg must clear all
    /// wall interiors.
    pub fn trace_paths(&self, src: Point2, dst: Point2, max_bounces: usize) -> Vec<PropagationPath> {
        let mut paths = Vec::new();
        if self.line_of_sight(src, dst) {
            if let Some(p) = self.build_path(src, dst, &[]) {
                paths.push(p);
            }
        }
        let n = self.walls.len();
        let mut seq = Vec::new();
        if max_bounces >= 1 {
            for i in 0..n {
                seq.clear();
                seq.push(i);
                if let Some(p) = self.try_sequence(src, dst, &seq) {
                    paths.push(p);
                }
                if max_bounces >= 2 {
                    for j in 0..n {
                        if i == j {
                            continue;
                        }
                        let seq2 = [i, j];
                        if let Some(p) = self.try_sequence(src, dst, &seq2) {
                            paths.push(p);
                        }
                    }
                }
            }
        }
        debug_assert!(max_bounces <= 2 || n == 0, "bounce orders above 2 not enumerated");
        paths.sort_by(|a, b| a.total_length().partial_cmp(&b.total_length()).unwrap());
        paths
    }

    fn try_sequence(&self, src: Point2, dst: Point2, seq: &[usize]) -> Option<PropagationPath> {
        // Forward images of the source across the wall sequence.
        let mut images = vec![src];
        for &i in seq {
            images.push(mirror_point(*images.last().unwrap(), &self.walls[i]));
        }
        // Walk backwards from the destination to recover reflection points.
        let mut pts = vec![dst];
        let mut cur = dst;
        for k in (0..seq.len()).rev() {
            let wall = &self.walls[seq[k]];
            let img = images[k + 1];
            let hit = segment_line_hit(cur, img, wall)?;
            pts.push(hit);
            cur = hit;
        }
        pts.push(src);
        pts.reverse();
        self.build_path_checked(pts, seq)
    }

    fn build_path_checked(&self, pts: Vec<Point2>, seq: &[usize]) -> Option<PropagationPath> {
        // Each leg must clear every wall except at its own reflection
        // endpoints; nudging the leg endpoints toward each other avoids
        // false positives against the mirror walls themselves.
        for k in 0..pts.len() - 1 {
            if !self.leg_clear(pts[k], pts[k + 1]) {
                return None;
            }
        }
        let coeff = seq
            .iter()
            .map(|&i| self.walls[i].reflection_coeff)
            .product();
        let legs: Vec<f64> = pts.windows(2).map(|w| w[0].distance_to(w[1])).collect();
        if legs.iter().any(|&l| l < 1e-9) {
            return None;
        }
        Some(PropagationPath {
            vertices: pts,
            leg_lengths: legs,
            wall_coeff_product: coeff,
            via_ris: false,
        })
    }

    fn build_path(&self, src: Point2, dst: Point2, seq: &[usize]) -> Option<PropagationPath> {
        self.build_path_checked(vec![src, dst], seq)
    }

    /// True iff the leg from p to q, shrunk slightly at both ends, crosses
    /// no wall interior. The shrink keeps legs that start or end exactly on
    /// a wall (their own reflection point) from blocking themselves.
    fn leg_clear(&self, p: Point2, q: Point2) -> bool {
        let d = Vec2::between(p, q);
        let len = d.norm();
        if len < 1e-9 {
            return false;
        }
        let t = 1e-7_f64.min(0.4);
        let p2 = Point2::new(p.x + d.x * t, p.y + d.y * t);
        let q2 = Point2::new(q.x - d.x * t, q.y - d.y * t);
        self.line_of_sight(p2, q2)
    }
}

/// Intersection of the segment from `from` toward `img` with the wall
/// segment, strictly inside both. Returns the hit point.
fn segment_line_hit(from: Point2, img: Point2, wall: &WallSegment) -> Option<Point2> {
    let r = Vec2::between(from, img);
    let s = Vec2::between(wall.a, wall.b);
    let denom = cross(r, s);
    if denom.abs() < 1e-15 {
        return None;
    }
    let qp = Vec2::between(from, wall.a);
    let t = cross(qp, s) / denom;
    let u = cross(qp, r) / denom;
    const EPS: f64 = 1e-9;
    if t <= EPS || t >= 1.0 - EPS || u <= EPS || u >= 1.0 - EPS {
        return None;
    }
    Some(Point2::new(from.x + t * r.x, from.y + t * r.y))
}
