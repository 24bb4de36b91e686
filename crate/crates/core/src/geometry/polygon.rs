use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Convex polygon with counterclockwise vertices in convex position. A segment
/// (2 vertices) or a point (1 vertex) is a degenerate polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon2D {
    vertices: Vec<[f64; 2]>,
}

impl Polygon2D {
    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Hull of complex points read as `(re, im)`.
    pub fn hull_of_complex(points: &[Complex64]) -> Self {
        let pts: Vec<[f64; 2]> = points.iter().map(|z| [z.re, z.im]).collect();
        convex_hull_2d(&pts)
    }
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// Smallest convex polygon containing `points` (monotone chain). Collinear
/// boundary points are dropped; collinear input gives a segment.
///
/// Panics on an empty slice.
pub fn convex_hull_2d(points: &[[f64; 2]]) -> Polygon2D {
    assert!(!points.is_empty(), "convex hull of an empty set");
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let scale = pts
        .iter()
        .map(|p| p[0].abs().max(p[1].abs()))
        .fold(1.0_f64, f64::max);
    let tol = 1e-12 * scale * scale;
    pts.dedup_by(|a, b| dist(*a, *b) <= 1e-12 * scale);
    if pts.len() < 3 {
        return Polygon2D { vertices: pts };
    }

    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= tol {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= tol {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    // all points collinear: the chains collapse onto the two extremes
    if lower.len() < 3 {
        lower.dedup();
    }
    Polygon2D { vertices: lower }
}

/// Boundary length; a segment's boundary is traversed twice.
pub fn polygon_perimeter(p: &Polygon2D) -> f64 {
    let v = &p.vertices;
    match v.len() {
        0 | 1 => 0.0,
        2 => 2.0 * dist(v[0], v[1]),
        n => (0..n).map(|i| dist(v[i], v[(i + 1) % n])).sum(),
    }
}

/// Enclosed area (shoelace); zero for segments and points.
pub fn polygon_area(p: &Polygon2D) -> f64 {
    let v = &p.vertices;
    let n = v.len();
    if n < 3 {
        return 0.0;
    }
    let twice: f64 = (0..n)
        .map(|i| {
            let (a, b) = (v[i], v[(i + 1) % n]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum();
    0.5 * twice.abs()
}

/// Minkowski sum of two convex polygons.
pub fn minkowski_sum(p: &Polygon2D, q: &Polygon2D) -> Polygon2D {
    let sums: Vec<[f64; 2]> = p
        .vertices
        .iter()
        .flat_map(|a| q.vertices.iter().map(move |b| [a[0] + b[0], a[1] + b[1]]))
        .collect();
    convex_hull_2d(&sums)
}

/// Mixed area `V(P, Q) = (area(P ⊕ Q) − area(P) − area(Q)) / 2`.
pub fn polygon_mixed_area(p: &Polygon2D, q: &Polygon2D) -> f64 {
    let s = minkowski_sum(p, q);
    0.5 * (polygon_area(&s) - polygon_area(p) - polygon_area(q))
}
