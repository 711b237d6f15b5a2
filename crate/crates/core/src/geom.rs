//! Points, point sets and the exact-sign predicates everything else is built on.
//!
//! Coordinates are `f64`. Orientation uses a relative tolerance: a determinant
//! with magnitude below `1e-9 * scale^2` is reported as collinear, where
//! `scale` is the largest absolute coordinate among the three points. Wheel
//! point sets never go through the numeric path for crossing questions; see
//! [`wheel_crossing`].

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ORIENTATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() {
            return Err(Error::DegenerateInput(format!("non-finite coordinate ({x}, {y})")));
        }
        Ok(Self { x, y })
    }

    fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConfigTag {
    General,
    Convex,
    /// `2n` points: `2n - 1` equally spaced on a circle (indices `0..2n-1`)
    /// plus the circle's center at index `2n - 1`.
    Wheel {
        n: usize,
    },
}

impl fmt::Display for ConfigTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigTag::General => write!(f, "general"),
            ConfigTag::Convex => write!(f, "convex"),
            ConfigTag::Wheel { .. } => write!(f, "wheel"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Ccw,
    Cw,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of the signed area of triangle `pqr`.
pub fn orientation(p: Point, q: Point, r: Point) -> Result<Orientation> {
    if !p.is_finite() || !q.is_finite() || !r.is_finite() {
        return Err(Error::DegenerateInput("non-finite coordinate in orientation".into()));
    }
    let det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    let scale = [p.x, p.y, q.x, q.y, r.x, r.y].iter().fold(0.0_f64, |acc, c| acc.max(c.abs()));
    if det.abs() < ORIENTATION_TOLERANCE * scale * scale || det == 0.0 {
        Ok(Orientation::Collinear)
    } else if det > 0.0 {
        Ok(Orientation::Ccw)
    } else {
        Ok(Orientation::Cw)
    }
}

/// Straight-line edge between two point indices, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeomEdge {
    pub a: usize,
    pub b: usize,
}

impl GeomEdge {
    /// Panics if `u == v`; use [`GeomEdge::try_new`] for untrusted input.
    pub fn new(u: usize, v: usize) -> Self {
        Self::try_new(u, v).expect("loop edge")
    }

    pub fn try_new(u: usize, v: usize) -> Result<Self> {
        if u == v {
            return Err(Error::InvalidParameter(format!("loop edge at {u}")));
        }
        Ok(Self { a: u.min(v), b: u.max(v) })
    }

    pub fn shares_endpoint(&self, other: &GeomEdge) -> bool {
        self.a == other.a || self.a == other.b || self.b == other.a || self.b == other.b
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    /// The endpoint that is not `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

impl fmt::Display for GeomEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    points: Vec<Point>,
    tag: ConfigTag,
}

impl PointSet {
    /// Validates the invariants implied by `tag` and builds the set.
    pub fn new(points: Vec<Point>, tag: ConfigTag) -> Result<Self> {
        let ps = Self { points, tag };
        ps.validate()?;
        Ok(ps)
    }

    pub fn general(points: Vec<Point>) -> Result<Self> {
        Self::new(points, ConfigTag::General)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn tag(&self) -> ConfigTag {
        self.tag
    }

    /// `Some(n)` for a `Wheel{n}` set.
    pub fn wheel_n(&self) -> Option<usize> {
        match self.tag {
            ConfigTag::Wheel { n } => Some(n),
            _ => None,
        }
    }

    pub fn wheel_center(&self) -> Option<usize> {
        self.wheel_n().map(|n| 2 * n - 1)
    }

    /// Same points, different tag, re-validated.
    pub fn with_tag(&self, tag: ConfigTag) -> Result<Self> {
        Self::new(self.points.clone(), tag)
    }

    /// Orientation of three indexed points, failing on collinear triples.
    pub fn strict_orientation(&self, i: usize, j: usize, k: usize) -> Result<Orientation> {
        match orientation(self.points[i], self.points[j], self.points[k])? {
            Orientation::Collinear => Err(Error::DegenerateInput(format!("points {i}, {j}, {k} are collinear"))),
            o => Ok(o),
        }
    }

    /// Crossing test routed through exact index arithmetic on wheel sets.
    pub fn edges_cross(&self, e1: GeomEdge, e2: GeomEdge) -> Result<bool> {
        match self.tag {
            ConfigTag::Wheel { n } => wheel_crossing(e1, e2, n),
            _ => segments_cross(e1, e2, self),
        }
    }

    pub fn all_edges(&self) -> Vec<GeomEdge> {
        let n = self.len();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                out.push(GeomEdge { a, b });
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        for (i, p) in self.points.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::InvariantViolation(format!("point {i} is not finite")));
            }
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.points[i] == self.points[j] {
                    return Err(Error::InvariantViolation(format!("points {i} and {j} coincide")));
                }
            }
        }
        self.check_general_position()?;
        match self.tag {
            ConfigTag::General => Ok(()),
            ConfigTag::Convex => {
                if self.len() >= 3 && convex_hull(self)?.len() != self.len() {
                    return Err(Error::InvariantViolation("convex tag but some point is interior to the hull".into()));
                }
                Ok(())
            }
            ConfigTag::Wheel { n } => self.check_wheel(n),
        }
    }

    fn check_general_position(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if orientation(self.points[i], self.points[j], self.points[k])? == Orientation::Collinear {
                        return Err(Error::InvariantViolation(format!("points {i}, {j}, {k} are collinear")));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_wheel(&self, n: usize) -> Result<()> {
        if n < 2 || self.len() != 2 * n {
            return Err(Error::InvariantViolation(format!(
                "wheel with n = {n} needs {} points, found {}",
                2 * n,
                self.len()
            )));
        }
        let m = 2 * n - 1;
        let c = self.points[m];
        let radius = dist(c, self.points[0]);
        let tol = 1e-7 * radius.max(1.0);
        let step = 2.0 * PI / m as f64;
        let base = angle_about(c, self.points[0]);
        for k in 0..m {
            let p = self.points[k];
            if (dist(c, p) - radius).abs() > tol {
                return Err(Error::InvariantViolation(format!("wheel point {k} is off the circle")));
            }
            let expected = normalize_angle(base + step * k as f64);
            let got = angle_about(c, p);
            let diff = (got - expected).abs();
            if diff.min(2.0 * PI - diff) > 1e-7 {
                return Err(Error::InvariantViolation(format!(
                    "wheel point {k} is not at the expected angular position"
                )));
            }
        }
        Ok(())
    }
}

fn dist(p: Point, q: Point) -> f64 {
    (p.x - q.x).hypot(p.y - q.y)
}

/// Angle of `p` seen from `origin`, in `[0, 2pi)`.
pub fn angle_about(origin: Point, p: Point) -> f64 {
    normalize_angle((p.y - origin.y).atan2(p.x - origin.x))
}

fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(2.0 * PI);
    if r >= 2.0 * PI {
        0.0
    } else {
        r
    }
}

/// True iff the open segments of `e1` and `e2` meet in one interior point.
/// Edges sharing an endpoint never cross.
pub fn segments_cross(e1: GeomEdge, e2: GeomEdge, ps: &PointSet) -> Result<bool> {
    let n = ps.len();
    for v in [e1.a, e1.b, e2.a, e2.b] {
        if v >= n {
            return Err(Error::InvalidParameter(format!("index {v} out of range for {n} points")));
        }
    }
    if e1.shares_endpoint(&e2) {
        return Ok(false);
    }
    let o1 = ps.strict_orientation(e1.a, e1.b, e2.a)?;
    let o2 = ps.strict_orientation(e1.a, e1.b, e2.b)?;
    let o3 = ps.strict_orientation(e2.a, e2.b, e1.a)?;
    let o4 = ps.strict_orientation(e2.a, e2.b, e1.b)?;
    Ok(o1 != o2 && o3 != o4)
}

/// Crossing relation on `Wheel{n}` decided from indices alone.
///
/// Circle points are `0..2n-1` in anticlockwise order and the center is
/// `2n - 1`. Two chords cross iff their endpoints interleave; a radial edge
/// `x v_a` crosses chord `v_c v_d` iff `v_a` lies strictly on the shorter arc
/// between `v_c` and `v_d` (the circle has an odd number of points, so no
/// chord passes through the center).
pub fn wheel_crossing(e1: GeomEdge, e2: GeomEdge, n: usize) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("wheel needs n >= 2, got {n}")));
    }
    let m = 2 * n - 1;
    let center = m;
    for v in [e1.a, e1.b, e2.a, e2.b] {
        if v > center {
            return Err(Error::InvalidParameter(format!("index {v} out of range for Wheel{{{n}}}")));
        }
    }
    if e1.shares_endpoint(&e2) {
        return Ok(false);
    }
    let r1 = e1.contains(center);
    let r2 = e2.contains(center);
    match (r1, r2) {
        (true, true) => Ok(false),
        (true, false) => Ok(on_short_arc(e1.other(center), e2, m)),
        (false, true) => Ok(on_short_arc(e2.other(center), e1, m)),
        (false, false) => {
            let inside = |v: usize| e1.a < v && v < e1.b;
            Ok(inside(e2.a) != inside(e2.b))
        }
    }
}

fn on_short_arc(v: usize, chord: GeomEdge, m: usize) -> bool {
    let (lo, hi) = (chord.a, chord.b);
    let inner_is_short = 2 * (hi - lo) < m;
    let inside = lo < v && v < hi;
    inside == inner_is_short
}

pub fn default_wheel_seed(n: usize) -> f64 {
    -PI / 2.0 + PI / (2 * n - 1) as f64
}

/// Regular wheel: `2n - 1` points anticlockwise on a circle of the given
/// radius around the origin, starting at `seed_angle`, and the center last.
pub fn make_wheel(n: usize, radius: f64, seed_angle: f64) -> Result<PointSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("wheel needs n >= 2, got {n}")));
    }
    if !(radius > 0.0) || !radius.is_finite() || !seed_angle.is_finite() {
        return Err(Error::InvalidParameter(format!("bad radius {radius} or seed angle")));
    }
    let m = 2 * n - 1;
    let mut points = circle_points(m, radius, seed_angle);
    points.push(Point { x: 0.0, y: 0.0 });
    PointSet::new(points, ConfigTag::Wheel { n })
}

/// Regular convex polygon with `count` vertices, anticlockwise.
pub fn regular_polygon(count: usize, radius: f64, seed_angle: f64) -> Result<PointSet> {
    if count < 3 {
        return Err(Error::InvalidParameter(format!("polygon needs >= 3 vertices, got {count}")));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidParameter(format!("bad radius {radius}")));
    }
    PointSet::new(circle_points(count, radius, seed_angle), ConfigTag::Convex)
}

fn circle_points(count: usize, radius: f64, seed_angle: f64) -> Vec<Point> {
    (0..count)
        .map(|k| {
            let t = seed_angle + 2.0 * PI * k as f64 / count as f64;
            Point { x: radius * t.cos(), y: radius * t.sin() }
        })
        .collect()
}

/// `count` points on the unit circle at random angles, kept apart by a
/// minimum angular gap so the set is comfortably in general position.
pub fn random_convex<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Result<PointSet> {
    if count < 3 {
        return Err(Error::InvalidParameter(format!("need >= 3 points, got {count}")));
    }
    let min_gap = PI / (4.0 * count as f64);
    loop {
        let mut angles: Vec<f64> = (0..count).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        angles.sort_by(f64::total_cmp);
        let ok = angles.windows(2).all(|w| w[1] - w[0] > min_gap) && angles[0] + 2.0 * PI - angles[count - 1] > min_gap;
        if !ok {
            continue;
        }
        let points = angles.iter().map(|t| Point { x: t.cos(), y: t.sin() }).collect();
        if let Ok(ps) = PointSet::new(points, ConfigTag::Convex) {
            return Ok(ps);
        }
    }
}

/// `count` points uniform in the unit square, redrawn until no three are
/// (numerically) collinear.
pub fn random_general<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Result<PointSet> {
    if count < 3 {
        return Err(Error::InvalidParameter(format!("need >= 3 points, got {count}")));
    }
    loop {
        let points = (0..count).map(|_| Point { x: rng.gen_range(0.0..1.0), y: rng.gen_range(0.0..1.0) }).collect();
        if let Ok(ps) = PointSet::general(points) {
            return Ok(ps);
        }
    }
}

/// Convex hull vertices in anticlockwise order, starting from the point with
/// the smallest `(x, y)`.
pub fn convex_hull(ps: &PointSet) -> Result<Vec<usize>> {
    let n = ps.len();
    if n < 3 {
        return Err(Error::InvalidParameter(format!("hull needs >= 3 points, got {n}")));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| {
        let (p, q) = (ps.point(i), ps.point(j));
        p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y))
    });
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        push_hull(ps, &mut lower, i)?;
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        push_hull(ps, &mut upper, i)?;
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Ok(lower)
}

fn push_hull(ps: &PointSet, chain: &mut Vec<usize>, i: usize) -> Result<()> {
    while chain.len() >= 2 {
        let a = chain[chain.len() - 2];
        let b = chain[chain.len() - 1];
        match ps.strict_orientation(a, b, i)? {
            Orientation::Ccw => break,
            _ => {
                chain.pop();
            }
        }
    }
    chain.push(i);
    Ok(())
}
