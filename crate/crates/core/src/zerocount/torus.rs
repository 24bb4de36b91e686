//! Common zeros of two real trigonometric polynomials on the torus `T²`.
//!
//! The zero curve of `f` is traced by marching squares on a periodic grid;
//! wherever `g` changes sign along a traced segment, 2-D Newton on `(f, g)`
//! polishes the crossing into a common zero.

use std::f64::consts::PI;

use super::{CountError, CountResult, Diagnostics, GRID_FACTOR};
use crate::geometry::{polygon_area, polygon_mixed_area, Polygon2D};
use crate::spectra::TrigPolynomialND;

const NEWTON_TOL: f64 = 1e-10;
const NEWTON_MAX_STEPS: usize = 50;
const DEDUP_TOL: f64 = 1e-6;
/// Allowed fraction of failed Newton refinements per count.
const MAX_FAILURE_RATE: f64 = 0.01;

fn wrap(d: f64) -> f64 {
    (d + PI).rem_euclid(2.0 * PI) - PI
}

fn torus_dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    wrap(a[0] - b[0]).hypot(wrap(a[1] - b[1]))
}

fn newton(f: &TrigPolynomialND, g: &TrigPolynomialND, start: [f64; 2], max_move: f64) -> Option<[f64; 2]> {
    let mut x = start;
    for _ in 0..NEWTON_MAX_STEPS {
        let (fv, fg) = f.eval_with_gradient(&x);
        let (gv, gg) = g.eval_with_gradient(&x);
        let det = fg[0] * gg[1] - fg[1] * gg[0];
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let dx = (fv * gg[1] - gv * fg[1]) / det;
        let dy = (fg[0] * gv - gg[0] * fv) / det;
        x = [x[0] - dx, x[1] - dy];
        if torus_dist(x, start) > max_move {
            return None;
        }
        if dx.hypot(dy) < NEWTON_TOL {
            return Some([x[0].rem_euclid(2.0 * PI), x[1].rem_euclid(2.0 * PI)]);
        }
    }
    None
}

struct Trace {
    zeros: Vec<[f64; 2]>,
    candidates: usize,
    failed: usize,
    min_rel: f64,
}

/// Crossing of the zero level on the edge from `a` (value `fa`) to `b`.
fn crossing(a: [f64; 2], b: [f64; 2], fa: f64, fb: f64) -> [f64; 2] {
    let t = fa / (fa - fb);
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

fn trace(f: &TrigPolynomialND, g: &TrigPolynomialND, n: usize) -> Trace {
    let h = 2.0 * PI / n as f64;
    let coord = |k: usize| (k as f64 + 0.5) * h;
    let values: Vec<f64> = (0..n * n).map(|idx| f.eval(&[coord(idx / n), coord(idx % n)])).collect();
    let at = |i: usize, j: usize| values[(i % n) * n + (j % n)];
    let max_abs = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let min_rel = values.iter().fold(f64::INFINITY, |m, v| m.min(v.abs())) / max_abs;

    let mut zeros: Vec<[f64; 2]> = Vec::new();
    let mut candidates = 0;
    let mut failed = 0;
    let max_move = 4.0 * h;
    for i in 0..n {
        for j in 0..n {
            // corners counterclockwise; coordinates unwrapped past 2π
            let p = [
                [coord(i), coord(j)],
                [coord(i) + h, coord(j)],
                [coord(i) + h, coord(j) + h],
                [coord(i), coord(j) + h],
            ];
            let v = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
            let pos: Vec<bool> = v.iter().map(|&x| x >= 0.0).collect();
            let mut pts = Vec::with_capacity(4);
            for e in 0..4 {
                let (a, b) = (e, (e + 1) % 4);
                if pos[a] != pos[b] {
                    pts.push(crossing(p[a], p[b], v[a], v[b]));
                }
            }
            let segments: Vec<([f64; 2], [f64; 2])> = match pts.len() {
                2 => vec![(pts[0], pts[1])],
                4 => {
                    // saddle: the center value decides which corners connect
                    let center = f.eval(&[coord(i) + 0.5 * h, coord(j) + 0.5 * h]);
                    if (center >= 0.0) == pos[0] {
                        vec![(pts[0], pts[1]), (pts[2], pts[3])]
                    } else {
                        vec![(pts[3], pts[0]), (pts[1], pts[2])]
                    }
                }
                _ => Vec::new(),
            };
            for (a, b) in segments {
                let (ga, gb) = (g.eval(&a), g.eval(&b));
                if (ga >= 0.0) == (gb >= 0.0) {
                    continue;
                }
                candidates += 1;
                let start = crossing(a, b, ga, gb);
                match newton(f, g, start, max_move) {
                    Some(z) => {
                        if !zeros.iter().any(|&w| torus_dist(w, z) < DEDUP_TOL) {
                            zeros.push(z);
                        }
                    }
                    None => failed += 1,
                }
            }
        }
    }
    Trace {
        zeros,
        candidates,
        failed,
        min_rel,
    }
}

fn grid_size(f: &TrigPolynomialND, g: &TrigPolynomialND) -> usize {
    let deg = f
        .spectrum()
        .max_abs_coordinate()
        .max(g.spectrum().max_abs_coordinate())
        .max(1);
    GRID_FACTOR * deg as usize
}

/// Upper bound on isolated common zeros: `2!·area(conv Λ)` for a shared
/// spectrum, `2!·V(conv Λ₁, conv Λ₂)` (mixed area) otherwise.
pub fn torus_zero_bound(f: &TrigPolynomialND, g: &TrigPolynomialND) -> f64 {
    let hull = |p: &TrigPolynomialND| {
        let pts: Vec<[f64; 2]> = p
            .spectrum()
            .points()
            .iter()
            .map(|q| [q[0] as f64, q[1] as f64])
            .collect();
        crate::geometry::convex_hull_2d(&pts)
    };
    let (a, b): (Polygon2D, Polygon2D) = (hull(f), hull(g));
    if f.spectrum() == g.spectrum() {
        2.0 * polygon_area(&a)
    } else {
        2.0 * polygon_mixed_area(&a, &b)
    }
}

fn check(f: &TrigPolynomialND, g: &TrigPolynomialND) -> Result<(), CountError> {
    for p in [f, g] {
        if p.dim() != 2 {
            return Err(CountError::Dimension { found: p.dim() });
        }
        if p.is_identically_zero() {
            return Err(CountError::IdenticallyZero);
        }
    }
    Ok(())
}

/// Common zeros located at grid size `64·deg`.
pub fn torus_common_zeros(f: &TrigPolynomialND, g: &TrigPolynomialND) -> Result<Vec<[f64; 2]>, CountError> {
    check(f, g)?;
    Ok(trace(f, g, grid_size(f, g)).zeros)
}

/// Refinement levels tried before giving up: grid sizes `N, 2N, 4N, 8N`.
const MAX_LEVELS: u32 = 4;

/// Number of common zeros of `f` and `g` on `T²`.
///
/// Grids of size `N, 2N, …` are traced in turn and every Newton-polished zero
/// is kept. The count is certified once two consecutive grids, both free of
/// Newton failures, each find every zero seen so far, and the total respects
/// [`torus_zero_bound`].
pub fn torus_common_zeros_count(
    f: &TrigPolynomialND,
    g: &TrigPolynomialND,
) -> Result<CountResult, CountError> {
    check(f, g)?;
    let n = grid_size(f, g);
    let bound = torus_zero_bound(f, g) + 1e-9;
    let mut union: Vec<[f64; 2]> = Vec::new();
    let mut min_rel = f64::INFINITY;
    let mut prev_complete = false;
    let mut last = None;
    for level in 0..MAX_LEVELS {
        let t = trace(f, g, n << level);
        min_rel = min_rel.min(t.min_rel);
        for &z in &t.zeros {
            if !union.iter().any(|&w| torus_dist(w, z) < DEDUP_TOL) {
                union.push(z);
            }
        }
        let complete = t.failed == 0 && t.zeros.len() == union.len();
        let diagnostics = Diagnostics {
            min_abs: min_rel,
            refinement_depth: level,
        };
        if level > 0 && complete && prev_complete && union.len() as f64 <= bound {
            return Ok(CountResult::certified(union.len(), diagnostics));
        }
        prev_complete = complete;
        last = Some((t.failed, t.candidates, diagnostics));
    }
    let (failed, candidates, diagnostics) = last.expect("at least one level");
    if failed as f64 > MAX_FAILURE_RATE * candidates as f64 {
        return Err(CountError::NewtonDivergence { failed, candidates });
    }
    Ok(CountResult::uncertified(union.len(), diagnostics))
}
