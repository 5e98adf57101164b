//! 2-D convex geometry for down-closed rate regions: hulls, halfspace
//! clipping, polygon intersection, containment and Pareto frontiers.
//!
//! Every region lives in the nonnegative quadrant and is interpreted as
//! down-closed: a region containing a rate pair contains every componentwise
//! smaller nonnegative pair. Canonical vertex lists are counterclockwise and
//! start at the lexicographic minimum, so region equality is list equality
//! within tolerance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance for vertex dedup, containment and collinearity.
pub const GEOM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// A single linear constraint `c1*R1 + c2*R2 <= d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Halfspace {
    pub c1: f64,
    pub c2: f64,
    pub d: f64,
}

impl Halfspace {
    pub fn new(c1: f64, c2: f64, d: f64) -> Self {
        Self { c1, c2, d }
    }
}

/// A rate region in halfspace form; `R1 >= 0`, `R2 >= 0` are implicit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceSet {
    pub constraints: Vec<Halfspace>,
}

impl HalfspaceSet {
    pub fn new(constraints: Vec<Halfspace>) -> Self {
        Self { constraints }
    }
}

/// A down-closed convex region given by its canonical vertex list.
///
/// An empty vertex list denotes the empty region. One or two vertices denote
/// a degenerate point or segment region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexRegion {
    pub vertices: Vec<Point2>,
}

impl ConvexRegion {
    pub fn empty() -> Self {
        Self {
            vertices: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Vertex list of the region down-closed into the nonnegative quadrant:
    /// the hull of the vertices together with their axis projections and the
    /// origin.
    pub fn down_closed(&self) -> ConvexRegion {
        if self.is_empty() {
            return ConvexRegion::empty();
        }
        let xmax = self.vertices.iter().fold(0.0f64, |m, p| m.max(p.x));
        let ymax = self.vertices.iter().fold(0.0f64, |m, p| m.max(p.y));
        let mut pts = self.vertices.clone();
        pts.push(Point2::new(0.0, 0.0));
        pts.push(Point2::new(xmax, 0.0));
        pts.push(Point2::new(0.0, ymax));
        convex_hull(&pts).expect("nonempty input")
    }
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn dist(a: Point2, b: Point2) -> f64 {
    ((a.x - b.x).powi(2) + (a.y - b.y).powi(2)).sqrt()
}

fn lex_less(a: Point2, b: Point2) -> bool {
    a.x < b.x || (a.x == b.x && a.y < b.y)
}

/// Collinearity threshold for three points at the given coordinate scale.
fn collinear_eps(scale: f64) -> f64 {
    GEOM_TOL * scale.max(1.0)
}

/// Monotone-chain convex hull with canonical output order.
pub fn convex_hull(points: &[Point2]) -> Result<ConvexRegion> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut pts: Vec<Point2> = points.to_vec();
    for p in &pts {
        if !p.x.is_finite() || !p.y.is_finite() {
            return Err(Error::NonFinite("point coordinate"));
        }
    }
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
    });
    pts.dedup_by(|a, b| dist(*a, *b) <= GEOM_TOL);
    if pts.len() == 1 {
        return Ok(ConvexRegion {
            vertices: clamp_nonneg(pts),
        });
    }
    let scale = pts
        .iter()
        .fold(0.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs()));
    let eps = collinear_eps(scale);

    let build = |iter: &mut dyn Iterator<Item = Point2>| {
        let mut chain: Vec<Point2> = Vec::new();
        for p in iter {
            while chain.len() >= 2
                && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= eps
            {
                chain.pop();
            }
            chain.push(p);
        }
        chain
    };
    let mut lower = build(&mut pts.iter().copied());
    let mut upper = build(&mut pts.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.extend(upper);
    let mut hull = lower;
    // degenerate all-collinear input collapses to the two extreme points
    if hull.len() < 2 {
        hull = vec![pts[0], *pts.last().unwrap()];
        hull.dedup_by(|a, b| dist(*a, *b) <= GEOM_TOL);
    }
    Ok(ConvexRegion {
        vertices: canonicalize(hull),
    })
}

fn clamp_nonneg(mut pts: Vec<Point2>) -> Vec<Point2> {
    for p in &mut pts {
        if p.x < 0.0 && p.x > -GEOM_TOL {
            p.x = 0.0;
        }
        if p.y < 0.0 && p.y > -GEOM_TOL {
            p.y = 0.0;
        }
    }
    pts
}

/// Rotates a CCW vertex ring so it starts at the lexicographic minimum and
/// snaps near-zero coordinates to the axes.
fn canonicalize(mut hull: Vec<Point2>) -> Vec<Point2> {
    hull = clamp_nonneg(hull);
    if hull.len() <= 1 {
        return hull;
    }
    let start = hull
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            if lex_less(**a, **b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        })
        .map(|(i, _)| i)
        .unwrap();
    hull.rotate_left(start);
    hull
}

/// Clips a convex polygon (given CCW) against `c1*x + c2*y <= d`.
fn clip_halfspace(poly: &[Point2], hs: Halfspace) -> Vec<Point2> {
    let inside = |p: Point2| hs.c1 * p.x + hs.c2 * p.y - hs.d;
    let mut out = Vec::with_capacity(poly.len() + 1);
    let n = poly.len();
    for i in 0..n {
        let cur = poly[i];
        let next = poly[(i + 1) % n];
        let fc = inside(cur);
        let fn_ = inside(next);
        if fc <= 0.0 {
            out.push(cur);
        }
        if (fc < 0.0 && fn_ > 0.0) || (fc > 0.0 && fn_ < 0.0) {
            let t = fc / (fc - fn_);
            out.push(Point2::new(
                cur.x + t * (next.x - cur.x),
                cur.y + t * (next.y - cur.y),
            ));
        }
    }
    out
}

fn clip_polygon(poly: Vec<Point2>, halfspaces: &[Halfspace]) -> Vec<Point2> {
    let mut poly = poly;
    for &hs in halfspaces {
        if poly.is_empty() {
            break;
        }
        poly = clip_halfspace(&poly, hs);
    }
    poly
}

const BIG: f64 = 1e9;

/// Converts a halfspace set into its canonical vertex representation within
/// the nonnegative quadrant.
///
/// Infeasible sets yield the empty region; sets unbounded in the quadrant
/// are an error.
pub fn halfspaces_to_region(hs: &HalfspaceSet) -> Result<ConvexRegion> {
    for c in &hs.constraints {
        if !c.c1.is_finite() || !c.c2.is_finite() || !c.d.is_finite() {
            return Err(Error::NonFinite("halfspace coefficient"));
        }
        if c.c1 == 0.0 && c.c2 == 0.0 {
            return Err(Error::NonFinite("zero halfspace normal"));
        }
    }
    // first pass at a huge box to detect unboundedness
    let box_poly = |m: f64| {
        vec![
            Point2::new(0.0, 0.0),
            Point2::new(m, 0.0),
            Point2::new(m, m),
            Point2::new(0.0, m),
        ]
    };
    let coarse = clip_polygon(box_poly(BIG), &hs.constraints);
    if coarse.is_empty() {
        return Ok(ConvexRegion::empty());
    }
    let reach = coarse.iter().fold(0.0f64, |m, p| m.max(p.x).max(p.y));
    if reach >= BIG * (1.0 - 1e-9) {
        return Err(Error::Unbounded);
    }
    // second pass at a tight box for full precision
    let fine = clip_polygon(box_poly(2.0 * reach + 1.0), &hs.constraints);
    if fine.is_empty() {
        return Ok(ConvexRegion::empty());
    }
    convex_hull(&fine)
}

/// Intersection of two down-closed regions, again in canonical form.
pub fn intersect_regions(a: &ConvexRegion, b: &ConvexRegion) -> ConvexRegion {
    if a.is_empty() || b.is_empty() {
        return ConvexRegion::empty();
    }
    let pa = a.down_closed().vertices;
    let pb = b.down_closed().vertices;
    if pa.is_empty() || pb.is_empty() {
        return ConvexRegion::empty();
    }
    // clip a's polygon by the edge halfspaces of b
    let clipped = clip_polygon(pa, &edge_halfspaces(&pb));
    if clipped.is_empty() {
        return ConvexRegion::empty();
    }
    convex_hull(&clipped).unwrap_or_else(|_| ConvexRegion::empty())
}

/// Edge halfspaces of a CCW convex vertex ring; interior is on the left of
/// each directed edge. Degenerate rings (point, segment) produce the
/// halfspaces pinning the point or the segment's supporting strip.
fn edge_halfspaces(poly: &[Point2]) -> Vec<Halfspace> {
    let mut out = Vec::new();
    match poly.len() {
        0 => {}
        1 => {
            let p = poly[0];
            out.push(Halfspace::new(1.0, 0.0, p.x));
            out.push(Halfspace::new(-1.0, 0.0, -p.x));
            out.push(Halfspace::new(0.0, 1.0, p.y));
            out.push(Halfspace::new(0.0, -1.0, -p.y));
        }
        _ => {
            let n = poly.len();
            for i in 0..n {
                let p = poly[i];
                let q = poly[(i + 1) % n];
                let (ex, ey) = (q.x - p.x, q.y - p.y);
                let len = (ex * ex + ey * ey).sqrt();
                if len <= GEOM_TOL {
                    continue;
                }
                // outward normal of a CCW edge is (ey, -ex)
                let (c1, c2) = (ey / len, -ex / len);
                out.push(Halfspace::new(c1, c2, c1 * p.x + c2 * p.y));
                if n == 2 {
                    // a segment needs both sides of its supporting line
                    out.push(Halfspace::new(-c1, -c2, -(c1 * p.x + c2 * p.y)));
                }
            }
        }
    }
    out
}

fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let (ex, ey) = (b.x - a.x, b.y - a.y);
    let len2 = ex * ex + ey * ey;
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p.x - a.x) * ex + (p.y - a.y) * ey) / len2).clamp(0.0, 1.0);
    dist(p, Point2::new(a.x + t * ex, a.y + t * ey))
}

/// True iff `p` lies within distance `tol` of the down-closed region.
pub fn contains(region: &ConvexRegion, p: Point2, tol: f64) -> bool {
    if region.is_empty() {
        return false;
    }
    let poly = region.down_closed().vertices;
    match poly.len() {
        0 => false,
        1 => dist(p, poly[0]) <= tol,
        _ => {
            let n = poly.len();
            let inside = (0..n).all(|i| cross(poly[i], poly[(i + 1) % n], p) >= -GEOM_TOL);
            if inside && n >= 3 {
                return true;
            }
            (0..n)
                .map(|i| point_segment_distance(p, poly[i], poly[(i + 1) % n]))
                .fold(f64::INFINITY, f64::min)
                <= tol
        }
    }
}

/// True iff every vertex of `inner` lies in `outer` within `tol`.
pub fn is_subset(inner: &ConvexRegion, outer: &ConvexRegion, tol: f64) -> bool {
    if inner.is_empty() {
        return true;
    }
    inner
        .down_closed()
        .vertices
        .iter()
        .all(|&v| contains(outer, v, tol))
}

/// The Pareto-maximal vertices of the region, sorted by increasing `x`.
pub fn pareto_frontier(region: &ConvexRegion) -> Vec<Point2> {
    let verts = region.down_closed().vertices;
    let mut frontier: Vec<Point2> = verts
        .iter()
        .copied()
        .filter(|&v| {
            !verts.iter().any(|&u| {
                u.x >= v.x - GEOM_TOL
                    && u.y >= v.y - GEOM_TOL
                    && (u.x > v.x + GEOM_TOL || u.y > v.y + GEOM_TOL)
            })
        })
        .collect();
    frontier.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    frontier.dedup_by(|a, b| dist(*a, *b) <= GEOM_TOL);
    frontier
}
