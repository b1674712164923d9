//! Floating-point plane geometry with a fixed tolerance.

use std::ops::{Add, Mul, Sub};

/// Tolerance for collinearity, degeneracy and residual checks.
pub const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// Twice the signed area of `abc`; positive when counterclockwise.
pub fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b - a).cross(c - a)
}

pub fn triangle_area(a: Point, b: Point, c: Point) -> f64 {
    orient(a, b, c).abs() / 2.0
}

fn sign(x: f64) -> i8 {
    if x > EPS {
        1
    } else if x < -EPS {
        -1
    } else {
        0
    }
}

/// True when the open segments cross at a single interior point of both.
pub fn segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = sign(orient(a, b, c));
    let d2 = sign(orient(a, b, d));
    let d3 = sign(orient(c, d, a));
    let d4 = sign(orient(c, d, b));
    d1 * d2 < 0 && d3 * d4 < 0
}

fn on_segment(p: Point, a: Point, b: Point) -> bool {
    sign(orient(a, b, p)) == 0
        && p.x >= a.x.min(b.x) - EPS
        && p.x <= a.x.max(b.x) + EPS
        && p.y >= a.y.min(b.y) - EPS
        && p.y <= a.y.max(b.y) + EPS
}

/// True when the closed segments share any point.
pub fn segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool {
    segments_properly_cross(a, b, c, d)
        || on_segment(c, a, b)
        || on_segment(d, a, b)
        || on_segment(a, c, d)
        || on_segment(b, c, d)
}

/// Strictly inside the triangle (either orientation).
pub fn point_strictly_in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    let s = sign(orient(a, b, c));
    s != 0 && sign(orient(a, b, p)) == s && sign(orient(b, c, p)) == s && sign(orient(c, a, p)) == s
}

/// Inside or on the boundary of the triangle.
pub fn point_in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    let s = sign(orient(a, b, c));
    if s == 0 {
        return false;
    }
    [orient(a, b, p), orient(b, c, p), orient(c, a, p)]
        .iter()
        .all(|&o| sign(o) == s || sign(o) == 0)
}

pub fn circumcenter(a: Point, b: Point, c: Point) -> Option<Point> {
    let d = 2.0 * orient(a, b, c);
    if d.abs() < EPS * EPS {
        return None;
    }
    let (ba, ca) = (b - a, c - a);
    let (bl, cl) = (ba.dot(ba), ca.dot(ca));
    let ux = (ca.y * bl - ba.y * cl) / d;
    let uy = (ba.x * cl - ca.x * bl) / d;
    Some(a + Point::new(ux, uy))
}

pub fn centroid(a: Point, b: Point, c: Point) -> Point {
    (a + b + c) * (1.0 / 3.0)
}

/// Twice the signed area of a closed polygon.
pub fn polygon_signed_area2(poly: &[Point]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| poly[i].cross(poly[(i + 1) % n])).sum()
}

/// A polygon is simple when no two non-adjacent edges touch and adjacent
/// edges meet only at their shared vertex.
pub fn polygon_is_simple(poly: &[Point]) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if a.dist(b) < EPS {
            return false;
        }
        for j in i + 1..n {
            let (c, d) = (poly[j], poly[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // edges (x, shared) and (shared, y) may not fold back onto each other
                let (x, shared, y) = if j == i + 1 { (a, b, d) } else { (b, a, c) };
                if on_segment(y, x, shared) || on_segment(x, shared, y) {
                    return false;
                }
            } else if segments_touch(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Even-odd point-in-polygon test; points on the boundary are unspecified.
pub fn point_in_polygon(p: Point, poly: &[Point]) -> bool {
    let n = poly.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn crossing_predicates() {
        assert!(segments_properly_cross(p(0., 0.), p(2., 2.), p(0., 2.), p(2., 0.)));
        // shared endpoint is not a proper crossing
        assert!(!segments_properly_cross(p(0., 0.), p(1., 1.), p(1., 1.), p(2., 0.)));
        assert!(segments_touch(p(0., 0.), p(1., 1.), p(1., 1.), p(2., 0.)));
        // T-junction touches but does not cross
        assert!(!segments_properly_cross(p(0., 0.), p(2., 0.), p(1., 0.), p(1., 1.)));
        assert!(segments_touch(p(0., 0.), p(2., 0.), p(1., 0.), p(1., 1.)));
        assert!(!segments_touch(p(0., 0.), p(1., 0.), p(0., 1.), p(1., 1.)));
    }

    #[test]
    fn circumcenter_is_equidistant() {
        let (a, b, c) = (p(0., 0.), p(4., 0.), p(1., 3.));
        let o = circumcenter(a, b, c).unwrap();
        assert!((o.dist(a) - o.dist(b)).abs() < 1e-12);
        assert!((o.dist(a) - o.dist(c)).abs() < 1e-12);
        assert!(circumcenter(a, b, p(8., 0.)).is_none());
    }

    #[test]
    fn simple_polygons() {
        let square = [p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)];
        assert!(polygon_is_simple(&square));
        let bowtie = [p(0., 0.), p(1., 1.), p(1., 0.), p(0., 1.)];
        assert!(!polygon_is_simple(&bowtie));
        assert!(point_in_polygon(p(0.5, 0.5), &square));
        assert!(!point_in_polygon(p(1.5, 0.5), &square));
        assert!((polygon_signed_area2(&square) - 2.0).abs() < 1e-12);
    }
}
