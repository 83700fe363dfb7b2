use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::numfmt::sig12;
use crate::tol;

/// A point in the unit square: `x` is cumulative `P(i | not e)`, `y` is
/// cumulative `P(i | e)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };
    pub const ONE: Point = Point { x: 1.0, y: 1.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Signed height of `a` above the directed line `o -> b`, scaled to a
/// Euclidean distance. Positive means `a` lies to the left (above, for
/// left-to-right lines).
fn height_above(o: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - o.x, b.y - o.y);
    let len = dx.hypot(dy);
    let cross = dx * (a.y - o.y) - dy * (a.x - o.x);
    if len == 0.0 {
        // degenerate base: fall back to the distance from o
        return (a.x - o.x).hypot(a.y - o.y);
    }
    cross / len
}

/// Upper concave envelope of a point set by Andrew's monotone chain.
///
/// Vertices lying within `tol::GEOMETRY` of the line through their
/// neighbours are dropped, so collinear runs collapse to one segment and
/// near-duplicate points merge.
pub(crate) fn upper_hull(mut points: Vec<Point>) -> Vec<Point> {
    points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    let mut hull: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            if height_above(o, a, p) <= tol::GEOMETRY {
                hull.pop();
            } else {
                break;
            }
        }
        if let Some(last) = hull.last() {
            if (last.x - p.x).abs() <= tol::GEOMETRY && (last.y - p.y).abs() <= tol::GEOMETRY {
                // keep the higher of two coincident points
                if p.y > last.y {
                    hull.pop();
                    hull.push(p);
                }
                continue;
            }
        }
        hull.push(p);
    }
    hull
}

/// The concave piecewise-linear boundary of a binary system's canonical
/// region, running from `(0,0)` to `(1,1)` above the diagonal.
///
/// Only the upper boundary is stored: every canonical region also contains
/// the diagonal, so the boundary determines the region.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalCurve {
    vertices: Vec<Point>,
}

impl CanonicalCurve {
    /// Validates and normalizes a vertex list (collinear vertices merged).
    pub fn from_vertices(vertices: Vec<Point>) -> Result<Self> {
        let (first, last) = match (vertices.first(), vertices.last()) {
            (Some(f), Some(l)) if vertices.len() >= 2 => (*f, *l),
            _ => return Err(Error::InvalidCurve("need at least two vertices".into())),
        };
        let near = |p: Point, q: Point| {
            (p.x - q.x).abs() <= tol::GEOMETRY && (p.y - q.y).abs() <= tol::GEOMETRY
        };
        if !near(first, Point::ORIGIN) {
            return Err(Error::InvalidCurve(format!(
                "first vertex ({}, {}) is not (0,0)",
                first.x, first.y
            )));
        }
        if !near(last, Point::ONE) {
            return Err(Error::InvalidCurve(format!(
                "last vertex ({}, {}) is not (1,1)",
                last.x, last.y
            )));
        }
        for (k, v) in vertices.iter().enumerate() {
            if !v.x.is_finite() || !v.y.is_finite() {
                return Err(Error::InvalidCurve(format!("vertex {k} is not finite")));
            }
            if v.y < v.x - tol::GEOMETRY {
                return Err(Error::InvalidCurve(format!("vertex {k} lies below the diagonal")));
            }
        }
        for (k, w) in vertices.windows(2).enumerate() {
            if w[1].x < w[0].x - tol::GEOMETRY || w[1].y < w[0].y - tol::GEOMETRY {
                return Err(Error::InvalidCurve(format!("vertex {} decreases", k + 1)));
            }
        }
        for (k, w) in vertices.windows(3).enumerate() {
            if height_above(w[0], w[1], w[2]) < -tol::GEOMETRY {
                return Err(Error::InvalidCurve(format!("curve is not concave at vertex {}", k + 1)));
            }
        }
        let mut snapped = vertices;
        let n = snapped.len();
        snapped[0] = Point::ORIGIN;
        snapped[n - 1] = Point::ONE;
        Ok(Self::from_hull(snapped))
    }

    /// Builds the curve as the upper envelope of points already known to lie
    /// in the unit square above the diagonal and to include both corners.
    pub(crate) fn from_hull(points: Vec<Point>) -> Self {
        let mut vertices = upper_hull(points);
        if let Some(first) = vertices.first_mut() {
            *first = Point::ORIGIN;
        }
        if let Some(last) = vertices.last_mut() {
            *last = Point::ONE;
        }
        Self { vertices }
    }

    /// The diagonal: the curve of an uninformative system.
    pub fn diagonal() -> Self {
        Self {
            vertices: vec![Point::ORIGIN, Point::ONE],
        }
    }

    /// The curve of perfect information.
    pub fn perfect() -> Self {
        Self {
            vertices: vec![Point::ORIGIN, Point::new(0.0, 1.0), Point::ONE],
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Number of linear segments, which is the observation count of the
    /// reconstructed system.
    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Slopes of the segments in order; `+inf` for a vertical first segment.
    pub fn slopes(&self) -> Vec<f64> {
        self.vertices
            .windows(2)
            .map(|w| {
                let dx = w[1].x - w[0].x;
                let dy = w[1].y - w[0].y;
                if dx == 0.0 {
                    f64::INFINITY
                } else {
                    dy / dx
                }
            })
            .collect()
    }

    /// Height of the boundary at `x` in `[0,1]`. At `x = 0` this is the top of
    /// a vertical first segment, i.e. the right limit.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, 1.0);
        for w in self.vertices.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b.x > a.x && b.x >= x {
                let t = ((x - a.x) / (b.x - a.x)).max(0.0);
                return a.y + t * (b.y - a.y);
            }
        }
        1.0
    }

    /// Area between the curve and the diagonal.
    pub fn area_above_diagonal(&self) -> f64 {
        self.vertices
            .windows(2)
            .map(|w| (w[1].x - w[0].x) * ((w[0].y - w[0].x) + (w[1].y - w[1].x)) / 2.0)
            .sum()
    }

    /// Curve CSV: header `x,y`, one vertex per line, 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y\n");
        for v in &self.vertices {
            let _ = writeln!(out, "{},{}", sig12(v.x), sig12(v.y));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn collinear_vertices_merge() {
        let c = CanonicalCurve::from_vertices(vec![p(0.0, 0.0), p(0.05, 0.45), p(0.1, 0.9), p(1.0, 1.0)])
            .unwrap();
        assert_eq!(c.vertices(), &[p(0.0, 0.0), p(0.1, 0.9), p(1.0, 1.0)]);
        let d = CanonicalCurve::from_vertices(vec![p(0.0, 0.0), p(0.5, 0.5), p(1.0, 1.0)]).unwrap();
        assert_eq!(d, CanonicalCurve::diagonal());
    }

    #[test]
    fn rejects_invalid_curves() {
        assert!(CanonicalCurve::from_vertices(vec![p(0.0, 0.0)]).is_err());
        assert!(CanonicalCurve::from_vertices(vec![p(0.1, 0.0), p(1.0, 1.0)]).is_err());
        assert!(CanonicalCurve::from_vertices(vec![p(0.0, 0.0), p(0.9, 0.9)]).is_err());
        // convex kink
        assert!(CanonicalCurve::from_vertices(vec![p(0.0, 0.0), p(0.5, 0.6), p(0.6, 0.9), p(1.0, 1.0)])
            .is_err());
        // below the diagonal
        assert!(CanonicalCurve::from_vertices(vec![p(0.0, 0.0), p(0.5, 0.4), p(1.0, 1.0)]).is_err());
    }

    #[test]
    fn evaluation_and_slopes() {
        let c = CanonicalCurve::perfect();
        assert_eq!(c.eval(0.0), 1.0);
        assert_eq!(c.eval(0.3), 1.0);
        assert_eq!(c.slopes(), vec![f64::INFINITY, 0.0]);
        let s = CanonicalCurve::from_vertices(vec![p(0.0, 0.0), p(0.1, 0.9), p(1.0, 1.0)]).unwrap();
        assert_eq!(s.eval(0.0), 0.0);
        assert!((s.eval(0.05) - 0.45).abs() < 1e-15);
        assert!((s.eval(0.55) - 0.95).abs() < 1e-15);
        assert!((CanonicalCurve::perfect().area_above_diagonal() - 0.5).abs() < 1e-15);
        assert_eq!(CanonicalCurve::diagonal().area_above_diagonal(), 0.0);
    }

    #[test]
    fn csv_export() {
        let s = CanonicalCurve::from_vertices(vec![p(0.0, 0.0), p(0.1, 0.9), p(1.0, 1.0)]).unwrap();
        assert_eq!(s.to_csv(), "x,y\n0,0\n0.1,0.9\n1,1\n");
    }

    #[test]
    fn hull_of_scattered_points() {
        let pts = vec![p(0.0, 0.0), p(0.2, 0.3), p(0.5, 0.95), p(0.1, 0.9), p(0.7, 0.9), p(1.0, 1.0)];
        let hull = upper_hull(pts);
        assert_eq!(hull, vec![p(0.0, 0.0), p(0.1, 0.9), p(0.5, 0.95), p(1.0, 1.0)]);
    }
}
