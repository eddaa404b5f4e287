//! Planar primitives: directed angles, the imaginary-part orientation
//! predicate, convex hulls, and containment tests.
//!
//! Conventions, fixed once and used everywhere:
//!
//! - angles are counterclockwise and live in `[0, 2pi)`;
//! - `orient_im(u, v, w) > 0` exactly when the counterclockwise angle at
//!   `v` from `u` to `w` lies in `(0, pi)`;
//! - hull polygons are listed clockwise, so the signed area of a hull is
//!   negative and every consecutive vertex triple `(p, q, r)` of a convex
//!   clockwise polygon satisfies `orient_im(p, q, r) > 0`.

use crate::error::Error;
use crate::{ComplexScalar, Result};

/// Two consecutive polygon vertices closer than this are considered
/// coincident.
const VERTEX_MERGE_TOL: f64 = 1e-12;

/// Relative collinearity threshold inside the hull: triples whose cross
/// product is at most `1e-12 * scale^2` are flattened, where `scale` is the
/// point-set diameter estimate.
const COLLINEAR_EPS_FACTOR: f64 = 1e-12;

/// Counterclockwise angle at `v` from the direction of `u - v` to the
/// direction of `w - v`, in `[0, 2pi)`.
pub fn ccw_angle(u: ComplexScalar, v: ComplexScalar, w: ComplexScalar) -> Result<f64> {
    for (z, what) in [(u, "angle endpoint"), (v, "angle vertex"), (w, "angle endpoint")] {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite { what });
        }
    }
    let du = u - v;
    let dw = w - v;
    if du.norm_sqr() == 0.0 || dw.norm_sqr() == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    Ok(crate::normalize_angle(
        dw.im.atan2(dw.re) - du.im.atan2(du.re),
    ))
}

/// `Im((conj(u) - conj(v)) (w - v))`, the orientation quantity. Positive
/// exactly when `ccw_angle(u, v, w)` is in `(0, pi)`, zero on collinear
/// triples.
pub fn orient_im(u: ComplexScalar, v: ComplexScalar, w: ComplexScalar) -> f64 {
    let p = u - v;
    let q = w - v;
    p.re * q.im - p.im * q.re
}

/// Cross product `(a - o) x (b - o)`; twice the signed area of the triangle
/// `(o, a, b)` under the counterclockwise-positive convention.
fn cross(o: ComplexScalar, a: ComplexScalar, b: ComplexScalar) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonOrientation {
    Clockwise,
    CounterClockwise,
}

/// Three-way containment verdict with a boundary band of width `tol`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

/// An ordered planar vertex cycle. Construction validates that consecutive
/// vertices are distinct and that the cycle has nonzero signed area; the
/// orientation flag is derived from the area's sign.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<ComplexScalar>,
    orientation: PolygonOrientation,
}

impl Polygon {
    pub fn new(vertices: Vec<ComplexScalar>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::TooFewVertices {
                count: vertices.len(),
            });
        }
        for z in &vertices {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite {
                    what: "polygon vertex",
                });
            }
        }
        let n = vertices.len();
        for i in 0..n {
            if (vertices[i] - vertices[(i + 1) % n]).norm() < VERTEX_MERGE_TOL {
                return Err(Error::DuplicateVertex { index: i });
            }
        }
        let area = signed_area(&vertices);
        if area == 0.0 {
            return Err(Error::ZeroArea);
        }
        let orientation = if area > 0.0 {
            PolygonOrientation::CounterClockwise
        } else {
            PolygonOrientation::Clockwise
        };
        Ok(Self {
            vertices,
            orientation,
        })
    }

    pub fn vertices(&self) -> &[ComplexScalar] {
        &self.vertices
    }

    pub fn orientation(&self) -> PolygonOrientation {
        self.orientation
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// True when the cycle is listed clockwise and strictly convex: every
    /// consecutive triple `(p, q, r)` has `orient_im(p, q, r) > 0`.
    pub fn is_convex_clockwise(&self) -> bool {
        if self.orientation != PolygonOrientation::Clockwise {
            return false;
        }
        let v = &self.vertices;
        let n = v.len();
        (0..n).all(|i| orient_im(v[i], v[(i + 1) % n], v[(i + 2) % n]) > 0.0)
    }

    /// Iterator over directed edges `(v_i, v_{i+1})`, wrapping around.
    pub fn edges(&self) -> impl Iterator<Item = (ComplexScalar, ComplexScalar)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

/// Shoelace signed area; positive for counterclockwise cycles.
pub fn signed_area(vertices: &[ComplexScalar]) -> f64 {
    let n = vertices.len();
    let mut acc = 0.0;
    for i in 0..n {
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        acc += p.re * q.im - q.re * p.im;
    }
    0.5 * acc
}

/// Convex hull by monotone chain with coordinate tie-break (re, then im).
///
/// The output is listed clockwise starting from the lexicographically
/// smallest vertex; points within the collinearity band of a hull edge are
/// excluded. Errors when fewer than 3 distinct points remain or all input
/// points are collinear.
pub fn convex_hull(points: &[ComplexScalar]) -> Result<Polygon> {
    for z in points {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite { what: "hull point" });
        }
    }
    let mut pts = points.to_vec();
    pts.sort_unstable_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    if pts.len() < 3 {
        return Err(Error::TooFewHullPoints {
            distinct: pts.len(),
        });
    }
    let (mut min_im, mut max_im) = (f64::INFINITY, f64::NEG_INFINITY);
    for z in &pts {
        min_im = min_im.min(z.im);
        max_im = max_im.max(z.im);
    }
    let scale = (pts[pts.len() - 1].re - pts[0].re).hypot(max_im - min_im);
    let eps = COLLINEAR_EPS_FACTOR * scale * scale;

    let mut lower: Vec<ComplexScalar> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= eps {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<ComplexScalar> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= eps {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::CollinearPoints);
    }
    // counterclockwise -> clockwise, then canonical start
    lower.reverse();
    let start = lower
        .iter()
        .enumerate()
        .min_by(|(_, p), (_, q)| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)))
        .map(|(i, _)| i)
        .unwrap_or(0);
    lower.rotate_left(start);
    Polygon::new(lower)
}

/// Closed-triangle membership with a signed distance band: points within
/// `tol` of an edge count as inside.
pub fn in_triangle(
    p: ComplexScalar,
    u: ComplexScalar,
    v: ComplexScalar,
    w: ComplexScalar,
    tol: f64,
) -> Result<bool> {
    let area2 = cross(u, v, w);
    if area2 == 0.0 {
        return Err(Error::DegenerateTriangle);
    }
    let s = area2.signum();
    for (a, b) in [(u, v), (v, w), (w, u)] {
        let d = s * cross(a, b, p) / (b - a).norm();
        if d < -tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Half-plane containment test against a convex polygon. The verdict is the
/// sign of the least signed edge distance: less than `-tol` is outside,
/// within `tol` of zero is boundary, above `tol` is inside.
pub fn in_convex_polygon(p: ComplexScalar, poly: &Polygon, tol: f64) -> Containment {
    let s = match poly.orientation() {
        PolygonOrientation::CounterClockwise => 1.0,
        PolygonOrientation::Clockwise => -1.0,
    };
    let mut min_d = f64::INFINITY;
    for (a, b) in poly.edges() {
        let d = s * cross(a, b, p) / (b - a).norm();
        min_d = min_d.min(d);
    }
    if min_d < -tol {
        Containment::Outside
    } else if min_d <= tol {
        Containment::Boundary
    } else {
        Containment::Inside
    }
}

/// Distance from `p` to the closest point of segment `ab`.
pub fn segment_distance(p: ComplexScalar, a: ComplexScalar, b: ComplexScalar) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a).re * d.re + (p - a).im * d.im) / len2).clamp(0.0, 1.0);
    (p - (a + t * d)).norm()
}

/// Distance from `p` to the polygon regarded as a closed region (zero when
/// inside or on the boundary).
pub fn distance_to_polygon(p: ComplexScalar, poly: &Polygon) -> f64 {
    if in_convex_polygon(p, poly, 0.0) != Containment::Outside {
        return 0.0;
    }
    poly.edges()
        .map(|(a, b)| segment_distance(p, a, b))
        .fold(f64::INFINITY, f64::min)
}

/// Comparison record between a predicted and an empirical hull.
#[derive(Debug, Clone, PartialEq)]
pub struct HullReport {
    /// Vertex count of the predicted polygon.
    pub predicted_vertices: usize,
    /// Vertex count of the empirical polygon.
    pub empirical_vertices: usize,
    /// Max over predicted vertices of the distance to the nearest empirical
    /// vertex.
    pub max_vertex_distance: f64,
    /// Max over empirical vertices of the distance to the predicted polygon
    /// (outward excursions only; interior vertices contribute zero).
    pub max_outward_distance: f64,
    /// Tolerance the verdict was taken at.
    pub vertex_tol: f64,
    pub pass: bool,
}

/// Compares two convex polygons vertex-wise, insensitive to the cyclic
/// starting index.
pub fn hull_match(predicted: &Polygon, empirical: &Polygon, vertex_tol: f64) -> HullReport {
    let max_vertex_distance = predicted
        .vertices()
        .iter()
        .map(|p| {
            empirical
                .vertices()
                .iter()
                .map(|q| (p - q).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    let max_outward_distance = empirical
        .vertices()
        .iter()
        .map(|q| distance_to_polygon(*q, predicted))
        .fold(0.0, f64::max);
    HullReport {
        predicted_vertices: predicted.vertices().len(),
        empirical_vertices: empirical.vertices().len(),
        max_vertex_distance,
        max_outward_distance,
        vertex_tol,
        pass: max_vertex_distance <= vertex_tol && max_outward_distance <= vertex_tol,
    }
}
