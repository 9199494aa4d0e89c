//! Exact planar predicates and the point configurations used by the
//! constructions.
//!
//! All coordinates are integers bounded by [`COORD_LIMIT`] in absolute value,
//! so every orientation determinant is an exact `i64`. There is no
//! floating-point arithmetic anywhere in this module.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::Edge;

/// Largest admissible absolute coordinate value (2^20).
pub const COORD_LIMIT: i64 = 1 << 20;

/// Largest vertex count accepted by [`gen_convex`].
pub const MAX_CONVEX_POINTS: usize = 64;

/// Largest cluster size accepted by [`gen_four_cluster`].
pub const MAX_CLUSTER_SIZE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("coordinate ({0}, {1}) exceeds the bound 2^20")]
    CoordinateOutOfRange(i64, i64),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("points {0}, {1}, {2} are collinear")]
    Collinear(usize, usize, usize),
    #[error("points {0}, {1}, {2} are not in clockwise order; the listing is not a clockwise convex polygon")]
    NotConvex(usize, usize, usize),
    #[error("edge {0} is compared with itself")]
    IdenticalEdge(Edge),
    #[error("vertex {vertex} is outside 1..={n}")]
    IndexOutOfRange { vertex: usize, n: usize },
    #[error("size {0} is out of range")]
    SizeOutOfRange(usize),
    #[error("cluster layout is invalid: {0}")]
    BadClusters(String),
    #[error("four-cluster containment hypothesis violated: {0}")]
    HypothesisViolated(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// A lattice point with coordinates in `[-2^20, 2^20]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    x: i64,
    y: i64,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Result<Self, GeomError> {
        if x.abs() > COORD_LIMIT || y.abs() > COORD_LIMIT {
            return Err(GeomError::CoordinateOutOfRange(x, y));
        }
        Ok(Point { x, y })
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn y(&self) -> i64 {
        self.y
    }
}

impl TryFrom<[i64; 2]> for Point {
    type Error = GeomError;

    fn try_from([x, y]: [i64; 2]) -> Result<Self, Self::Error> {
        Point::new(x, y)
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Exact sign of the determinant `(q - p) x (r - p)`.
///
/// Differences are bounded by 2^21, so the products stay below 2^43.
pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    let det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    match det.signum() {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

/// True iff the open segments `p1p2` and `q1q2` properly intersect.
///
/// Segments sharing an endpoint never cross; general position rules out
/// overlaps and touching.
pub fn open_segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    if p1 == q1 || p1 == q2 || p2 == q1 || p2 == q2 {
        return false;
    }
    let d1 = orientation(p1, p2, q1);
    let d2 = orientation(p1, p2, q2);
    let d3 = orientation(q1, q2, p1);
    let d4 = orientation(q1, q2, p2);
    let straddles = |a: Orientation, b: Orientation| {
        a != Orientation::Collinear && b != Orientation::Collinear && a != b
    };
    straddles(d1, d2) && straddles(d3, d4)
}

/// A labeled point set in general position. Vertex `v` (1-based) is
/// `points[v - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::PointSetJson", into = "crate::io::PointSetJson")]
pub struct PointSet {
    points: Vec<Point>,
    convex: bool,
}

impl PointSet {
    /// Builds a point set, checking distinctness and that no three points are
    /// collinear.
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        check_general_position(&points)?;
        Ok(PointSet { points, convex: false })
    }

    /// Builds a point set and certifies that the listing is the clockwise
    /// order of a convex polygon.
    pub fn convex(points: Vec<Point>) -> Result<Self, GeomError> {
        check_general_position(&points)?;
        check_clockwise_convex(&points)?;
        Ok(PointSet { points, convex: true })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_convex(&self) -> bool {
        self.convex
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// The point of vertex `v` (1-based).
    pub fn point(&self, v: usize) -> Result<Point, GeomError> {
        if v == 0 || v > self.points.len() {
            return Err(GeomError::IndexOutOfRange { vertex: v, n: self.points.len() });
        }
        Ok(self.points[v - 1])
    }

    /// The point set with vertex `v` removed. Convex certification survives
    /// deletion since a subset of a convex polygon's vertices, in the same
    /// cyclic order, is again a convex polygon.
    pub fn without_vertex(&self, v: usize) -> Result<PointSet, GeomError> {
        self.point(v)?;
        let mut points = self.points.clone();
        points.remove(v - 1);
        Ok(PointSet { points, convex: self.convex })
    }
}

fn check_general_position(points: &[Point]) -> Result<(), GeomError> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i] == points[j] {
                return Err(GeomError::DuplicatePoint(i + 1, j + 1));
            }
        }
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for k in j + 1..points.len() {
                if orientation(points[i], points[j], points[k]) == Orientation::Collinear {
                    return Err(GeomError::Collinear(i + 1, j + 1, k + 1));
                }
            }
        }
    }
    Ok(())
}

// A listing is a clockwise convex polygon iff every triple taken in listing
// order turns clockwise.
fn check_clockwise_convex(points: &[Point]) -> Result<(), GeomError> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for k in j + 1..points.len() {
                if orientation(points[i], points[j], points[k]) != Orientation::Clockwise {
                    return Err(GeomError::NotConvex(i + 1, j + 1, k + 1));
                }
            }
        }
    }
    Ok(())
}

/// Whether the straight-line drawings of two edges cross in `ps`.
pub fn segments_cross(a: Edge, b: Edge, ps: &PointSet) -> Result<bool, GeomError> {
    if a == b {
        return Err(GeomError::IdenticalEdge(a));
    }
    Ok(open_segments_intersect(
        ps.point(a.u())?,
        ps.point(a.v())?,
        ps.point(b.u())?,
        ps.point(b.v())?,
    ))
}

/// Crossing test for chords of a convex `n`-gon labeled in cyclic order:
/// two chords cross iff their endpoints strictly interleave.
pub fn convex_crossing(n: usize, e1: Edge, e2: Edge) -> bool {
    debug_assert!(e1 != e2, "convex_crossing called with identical chords");
    debug_assert!(e1.v() <= n && e2.v() <= n);
    let (a, b) = (e1.u(), e1.v());
    let (c, d) = (e2.u(), e2.v());
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(d)
}

/// `n` lattice points on the parabola `y = -x^2`, listed left to right, which
/// is clockwise around their convex hull.
pub fn gen_convex(n: usize) -> Result<PointSet, GeomError> {
    if !(1..=MAX_CONVEX_POINTS).contains(&n) {
        return Err(GeomError::SizeOutOfRange(n));
    }
    let points = (0..n as i64)
        .map(|i| Point::new(i, -i * i))
        .collect::<Result<Vec<_>, _>>()?;
    PointSet::convex(points)
}

/// A point set split into four clusters A1..A4 of equal size, such that every
/// A4 point lies strictly inside every triangle with one corner from each of
/// A1, A2, A3. Cluster entries are 0-based positions into the point list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusteredPointSet {
    base: PointSet,
    clusters: [Vec<usize>; 4],
}

impl ClusteredPointSet {
    /// Validates the partition and runs the exhaustive containment check.
    pub fn new(base: PointSet, clusters: [Vec<usize>; 4]) -> Result<Self, GeomError> {
        let k = clusters[0].len();
        if k == 0 || clusters.iter().any(|c| c.len() != k) {
            return Err(GeomError::BadClusters("clusters must be non-empty and of equal size".into()));
        }
        if base.len() != 4 * k {
            return Err(GeomError::BadClusters(format!(
                "{} points cannot be split into four clusters of size {k}",
                base.len()
            )));
        }
        let mut seen = vec![false; 4 * k];
        for &i in clusters.iter().flatten() {
            if i >= 4 * k || seen[i] {
                return Err(GeomError::BadClusters(format!("index {i} repeated or out of range")));
            }
            seen[i] = true;
        }
        let cps = ClusteredPointSet { base, clusters };
        cps.check_hypothesis()?;
        Ok(cps)
    }

    pub fn base(&self) -> &PointSet {
        &self.base
    }

    pub fn clusters(&self) -> &[Vec<usize>; 4] {
        &self.clusters
    }

    pub fn cluster_size(&self) -> usize {
        self.clusters[0].len()
    }

    /// Checks all k^3 corner triples against all k interior points.
    pub fn check_hypothesis(&self) -> Result<(), GeomError> {
        let pts = self.base.points();
        let [a1, a2, a3, a4] = &self.clusters;
        for &i in a1 {
            for &j in a2 {
                for &l in a3 {
                    for &m in a4 {
                        if !strictly_inside(pts[m], pts[i], pts[j], pts[l]) {
                            return Err(GeomError::HypothesisViolated(format!(
                                "point {m} is not inside the triangle of points {i}, {j}, {l}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn strictly_inside(p: Point, a: Point, b: Point, c: Point) -> bool {
    let o1 = orientation(a, b, p);
    let o2 = orientation(b, c, p);
    let o3 = orientation(c, a, p);
    o1 != Orientation::Collinear && o1 == o2 && o2 == o3
}

/// Layout knobs for [`gen_four_cluster_with`].
#[derive(Clone, Copy, Debug)]
pub struct FourClusterParams {
    /// Half-width of the big triangle.
    pub triangle_scale: i64,
    /// Initial cluster radius; halved whenever the hypothesis check fails.
    pub cluster_radius: i64,
    pub max_attempts: usize,
    pub seed: u64,
}

impl Default for FourClusterParams {
    fn default() -> Self {
        FourClusterParams {
            triangle_scale: 400_000,
            cluster_radius: 4_000,
            max_attempts: 32,
            seed: 0x5eed,
        }
    }
}

/// Four tight clusters: A1, A2, A3 near the corners of a large triangle and
/// A4 near its centroid.
pub fn gen_four_cluster(k: usize) -> Result<ClusteredPointSet, GeomError> {
    gen_four_cluster_with(k, FourClusterParams::default())
}

pub fn gen_four_cluster_with(k: usize, params: FourClusterParams) -> Result<ClusteredPointSet, GeomError> {
    if !(1..=MAX_CLUSTER_SIZE).contains(&k) {
        return Err(GeomError::SizeOutOfRange(k));
    }
    let s = params.triangle_scale;
    let centers = [(-s, -3 * s / 4), (0, s), (s, -3 * s / 4), (0, -s / 6)];
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut radius = params.cluster_radius;
    let mut last_err = GeomError::HypothesisViolated("no attempt made".into());
    for attempt in 0..params.max_attempts {
        // Within a cluster the points sit on a small parabolic arc, so no
        // three of them are collinear; jitter breaks accidental collinearity
        // across clusters.
        let jitter = if attempt == 0 { 0 } else { (radius / 16).max(1) };
        let mut points = Vec::with_capacity(4 * k);
        for (cx, cy) in centers {
            for j in 0..k as i64 {
                let t = if k == 1 { 0 } else { 2 * j - (k as i64 - 1) };
                let step = radius / (k as i64).max(1);
                let dx = t * step + rng.gen_range(-jitter..=jitter);
                let dy = t * t * step / (2 * k as i64) + rng.gen_range(-jitter..=jitter);
                points.push(Point::new(cx + dx, cy + dy)?);
            }
        }
        let base = match PointSet::new(points) {
            Ok(b) => b,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        let clusters = std::array::from_fn(|c| (c * k..(c + 1) * k).collect());
        match ClusteredPointSet::new(base, clusters) {
            Ok(cps) => return Ok(cps),
            Err(e @ GeomError::HypothesisViolated(_)) => {
                last_err = e;
                radius = (radius / 2).max(1);
            }
            Err(e) => last_err = e,
        }
    }
    Err(match last_err {
        e @ GeomError::HypothesisViolated(_) => e,
        other => GeomError::HypothesisViolated(format!("retry budget exhausted: {other}")),
    })
}
