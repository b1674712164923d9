//! Seeded random polygons with convex holes and interior points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{orient, Point};
use crate::pipeline::earclip::triangulate;
use crate::triangulation::{violations, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    /// Boundary vertices, at least 3.
    pub boundary: usize,
    pub holes: usize,
    /// Vertices per hole, at least 3.
    pub hole_size: usize,
    pub interior_points: usize,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            boundary: 8,
            holes: 0,
            hole_size: 4,
            interior_points: 0,
            seed: 0,
        }
    }
}

/// A star-shaped polygon around the origin, holes as small regular polygons
/// on a grid near the center, triangulated by ear clipping, then with
/// interior points inserted by splitting random triangles.
pub fn generate(cfg: &GeneratorConfig) -> Result<Triangulation> {
    if cfg.boundary < 3 || (cfg.holes > 0 && cfg.hole_size < 3) {
        return Err(Error::Precondition(
            "boundary and hole sizes must be at least 3".to_string(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.boundary;
    let jitter = if n >= 6 { 0.3 } else { 0.0 };
    let mut points = Vec::new();
    for i in 0..n {
        let a = std::f64::consts::TAU * (i as f64 + rng.gen_range(-jitter..=jitter)) / n as f64;
        let r = rng.gen_range(0.6..=1.0);
        points.push(Point::new(r * a.cos(), r * a.sin()));
    }
    let boundary: Vec<usize> = (0..n).collect();
    let safe = (0..n)
        .map(|i| segment_distance(Point::default(), points[i], points[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min);

    let mut holes = Vec::new();
    if cfg.holes > 0 {
        let grid = (cfg.holes as f64).sqrt().ceil() as usize;
        let half = 0.8 * safe / std::f64::consts::SQRT_2;
        let cell = 2.0 * half / grid as f64;
        let rho = 0.3 * cell;
        for k in 0..cfg.holes {
            let (gx, gy) = (k % grid, k / grid);
            let c = Point::new(
                -half + cell * (gx as f64 + 0.5) + rng.gen_range(-0.1..=0.1) * cell,
                -half + cell * (gy as f64 + 0.5) + rng.gen_range(-0.1..=0.1) * cell,
            );
            let phase = rng.gen_range(0.0..std::f64::consts::TAU);
            let start = points.len();
            for j in 0..cfg.hole_size {
                let a = phase + std::f64::consts::TAU * j as f64 / cfg.hole_size as f64;
                points.push(c + Point::new(rho * a.cos(), rho * a.sin()));
            }
            holes.push((start..start + cfg.hole_size).collect::<Vec<_>>());
        }
    }

    let mut triangles = triangulate(&points, &boundary, &holes)?;
    for _ in 0..cfg.interior_points {
        let i = rng.gen_range(0..triangles.len());
        let [a, b, c] = triangles[i];
        let (u, v): (f64, f64) = (rng.gen(), rng.gen());
        let (u, v) = if u + v > 1.0 { (1.0 - u, 1.0 - v) } else { (u, v) };
        let w = [0.2 + 0.4 * u, 0.2 + 0.4 * v, 0.2 + 0.4 * (1.0 - u - v)];
        let p = points[a] * w[0] + points[b] * w[1] + points[c] * w[2];
        let x = points.len();
        points.push(p);
        triangles[i] = [a, b, x];
        triangles.push([b, c, x]);
        triangles.push([c, a, x]);
    }
    for t in &mut triangles {
        if orient(points[t[0]], points[t[1]], points[t[2]]) < 0.0 {
            t.swap(1, 2);
        }
    }
    let t = Triangulation {
        points,
        triangles,
        boundary,
        holes,
    };
    let bad = violations(&t);
    if !bad.is_empty() {
        return Err(Error::Degenerate(format!(
            "generated triangulation is invalid: {}",
            bad.join("; ")
        )));
    }
    Ok(t)
}

fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let t = ((p - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}
