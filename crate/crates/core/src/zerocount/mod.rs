//! Empirical zero counters. Every counter runs two independent methods or two
//! resolutions and reports whether they agree; disagreeing results come back
//! with `certified == false` and are never averaged by the harness.

mod disk;
mod real;
mod torus;

use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::SphericalCurve;
use crate::spectra::TrigPolynomial;

pub use disk::{disk_zeros_count, disk_zeros_count_at};
pub use real::{companion_real_roots, real_roots_count, scan_real_roots, sturm_real_roots};
pub use torus::{torus_common_zeros, torus_common_zeros_count, torus_zero_bound};

/// Grid points per unit of degree for periodic sign-change scans.
pub const GRID_FACTOR: usize = 64;

const BISECTION_TOL: f64 = 1e-13;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CountError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("function vanishes on every sample")]
    IdenticallyZero,
    #[error("odd number of sign changes ({0}) on a closed curve")]
    OddCount(usize),
    #[error("hyperplane normal is zero")]
    ZeroNormal,
    #[error("radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("argument principle did not converge within {0} nodes")]
    Nonconvergence(usize),
    #[error("Newton refinement failed on {failed} of {candidates} candidates")]
    NewtonDivergence { failed: usize, candidates: usize },
    #[error("system of {found} equations, expected 2 bivariate functions")]
    Dimension { found: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Diagnostics {
    /// Smallest sampled `|f|`, relative to the largest one (or to the term
    /// magnitudes for exponential sums).
    pub min_abs: f64,
    /// Deepest bisection or subdivision level used.
    pub refinement_depth: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountResult {
    pub count: usize,
    /// True when two methods or resolutions returned the same count.
    pub certified: bool,
    pub diagnostics: Diagnostics,
}

impl CountResult {
    pub(crate) fn certified(count: usize, diagnostics: Diagnostics) -> Self {
        Self {
            count,
            certified: true,
            diagnostics,
        }
    }

    pub(crate) fn uncertified(count: usize, diagnostics: Diagnostics) -> Self {
        Self {
            count,
            certified: false,
            diagnostics,
        }
    }
}

struct PeriodicScan {
    brackets: Vec<(f64, f64)>,
    min_abs: f64,
    max_abs: f64,
}

fn is_nonneg(v: f64) -> bool {
    v >= 0.0
}

type Derivative<'a> = Option<&'a dyn Fn(f64) -> f64>;

/// Sign changes of a `2π`-periodic function on the half-offset grid
/// `2π(k + 1/2)/n`. With a derivative, a cell whose endpoints share a sign but
/// whose derivative changes sign is searched for a hidden pair of zeros around
/// the critical point.
fn periodic_scan(g: &impl Fn(f64) -> f64, dg: Derivative, n: usize) -> PeriodicScan {
    let step = 2.0 * PI / n as f64;
    let values: Vec<f64> = (0..n).map(|k| g((k as f64 + 0.5) * step)).collect();
    let slopes: Option<Vec<f64>> = dg.map(|d| (0..n).map(|k| d((k as f64 + 0.5) * step)).collect());
    let mut brackets = Vec::new();
    for k in 0..n {
        let (a, b) = (values[k], values[(k + 1) % n]);
        let t = (k as f64 + 0.5) * step;
        if is_nonneg(a) != is_nonneg(b) {
            brackets.push((t, t + step));
        } else if let (Some(d), Some(sl)) = (dg, &slopes) {
            let (da, db) = (sl[k], sl[(k + 1) % n]);
            if is_nonneg(da) != is_nonneg(db) {
                let (c, _) = bisect(d, t, t + step);
                if is_nonneg(g(c)) != is_nonneg(a) {
                    brackets.push((t, c));
                    brackets.push((c, t + step));
                }
            }
        }
    }
    let (min_abs, max_abs) = values
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), v| (lo.min(v.abs()), hi.max(v.abs())));
    PeriodicScan {
        brackets,
        min_abs,
        max_abs,
    }
}

fn bisect(g: &(impl Fn(f64) -> f64 + ?Sized), mut lo: f64, mut hi: f64) -> (f64, u32) {
    let lo_sign = is_nonneg(g(lo));
    let mut depth = 0;
    while hi - lo > BISECTION_TOL && depth < 64 {
        let mid = 0.5 * (lo + hi);
        if is_nonneg(g(mid)) == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
        depth += 1;
    }
    (0.5 * (lo + hi), depth)
}

/// Counts zeros of a periodic function from sign changes at `n` and `2n`
/// samples; retries at `4n` when the two disagree or the count is odd.
fn count_periodic(g: &impl Fn(f64) -> f64, dg: Derivative, n: usize) -> Result<(CountResult, Vec<f64>), CountError> {
    let coarse = periodic_scan(g, dg, n);
    if coarse.max_abs == 0.0 {
        return Err(CountError::IdenticallyZero);
    }
    let fine = periodic_scan(g, dg, 2 * n);
    let (scan, certified) = if coarse.brackets.len() == fine.brackets.len() && fine.brackets.len() % 2 == 0 {
        (fine, true)
    } else {
        let finest = periodic_scan(g, dg, 4 * n);
        let agree = finest.brackets.len() == fine.brackets.len();
        (finest, agree)
    };
    let count = scan.brackets.len();
    if count % 2 == 1 {
        return Err(CountError::OddCount(count));
    }
    let mut depth = 0;
    let roots = scan
        .brackets
        .iter()
        .map(|&(lo, hi)| {
            let (r, d) = bisect(g, lo, hi);
            depth = depth.max(d);
            r.rem_euclid(2.0 * PI)
        })
        .collect();
    let diagnostics = Diagnostics {
        min_abs: scan.min_abs / scan.max_abs,
        refinement_depth: depth,
    };
    let result = if certified {
        CountResult::certified(count, diagnostics)
    } else {
        CountResult::uncertified(count, diagnostics)
    };
    Ok((result, roots))
}

fn trig_grid(degree: u64) -> usize {
    GRID_FACTOR * degree.max(1) as usize
}

/// Number of zeros of `f` on the circle `[0, 2π)`.
pub fn circle_zeros_count(f: &TrigPolynomial) -> Result<CountResult, CountError> {
    circle_zeros(f).map(|(r, _)| r)
}

/// Count and bisection-refined locations of the zeros of `f` on `[0, 2π)`.
pub fn circle_zeros(f: &TrigPolynomial) -> Result<(CountResult, Vec<f64>), CountError> {
    if f.is_identically_zero() {
        return Err(CountError::IdenticallyZero);
    }
    count_periodic(&|t| f.eval(t), Some(&|t| f.derivative(t)), trig_grid(f.degree()))
}

/// `#(K ∩ ξ^⊥)`: sign changes of `t ↦ ⟨K(t), ξ⟩`.
pub fn hyperplane_curve_intersections(
    curve: &SphericalCurve,
    normal: &[f64],
) -> Result<CountResult, CountError> {
    if normal.iter().all(|&x| x == 0.0) {
        return Err(CountError::ZeroNormal);
    }
    let g = |t: f64| -> f64 {
        curve
            .point(t)
            .iter()
            .zip(normal)
            .map(|(a, b)| a * b)
            .sum()
    };
    let dg = |t: f64| -> f64 {
        curve
            .velocity(t)
            .iter()
            .zip(normal)
            .map(|(a, b)| a * b)
            .sum()
    };
    count_periodic(&g, Some(&dg), trig_grid(curve.degree())).map(|(r, _)| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_trig, RngStream};
    use crate::geometry::{kappa_curve, SphericalCurve};
    use crate::spectra::Spectrum1D;

    fn raw(spec: &[i64], a0: f64, cos: &[f64], sin: &[f64]) -> TrigPolynomial {
        TrigPolynomial::from_raw(Spectrum1D::new(spec.to_vec()).unwrap(), a0, cos, sin).unwrap()
    }

    #[test]
    fn cosine_has_two_zeros() {
        let (r, roots) = circle_zeros(&raw(&[-1, 1], 0.0, &[1.0], &[0.0])).unwrap();
        assert_eq!(r.count, 2);
        assert!(r.certified);
        assert!((roots[0] - PI / 2.0).abs() < 1e-12);
        assert!((roots[1] - 3.0 * PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn phase_shifted_cos5() {
        let s = std::f64::consts::SQRT_2;
        let f = raw(&[-5, 5], 0.0, &[s], &[0.1 * s]);
        assert_eq!(circle_zeros_count(&f).unwrap().count, 10);
    }

    #[test]
    fn positive_function_has_none() {
        let f = raw(&[-1, 0, 1], 3.0, &[1.0], &[0.0]);
        let r = circle_zeros_count(&f).unwrap();
        assert_eq!(r.count, 0);
        assert!(r.certified);
    }

    #[test]
    fn zero_function_rejected() {
        let f = raw(&[-1, 0, 1], 0.0, &[0.0], &[0.0]);
        assert_eq!(circle_zeros_count(&f), Err(CountError::IdenticallyZero));
    }

    #[test]
    fn great_circle_cut_twice() {
        let c = SphericalCurve::great_circle(4).unwrap();
        let r = hyperplane_curve_intersections(&c, &[0.3, -1.2, 0.5, 2.0]).unwrap();
        assert_eq!(r.count, 2);
        assert!(r.certified);
        assert_eq!(hyperplane_curve_intersections(&c, &[0.0; 4]), Err(CountError::ZeroNormal));
    }

    #[test]
    fn constant_direction_never_cuts_kappa() {
        let s = Spectrum1D::symmetric_range(1);
        let k = kappa_curve(&s).unwrap();
        let r = hyperplane_curve_intersections(&k, &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(r.count, 0);
    }

    #[test]
    fn kappa_route_equals_direct_route() {
        let s = Spectrum1D::new(vec![-4, -1, 0, 1, 4]).unwrap();
        let k = kappa_curve(&s).unwrap();
        for i in 0..200 {
            let f = sample_trig(&s, &mut RngStream::new(17, i).rng()).unwrap();
            let direct = circle_zeros_count(&f).unwrap();
            let sliced = hyperplane_curve_intersections(&k, &f.coordinates()).unwrap();
            assert_eq!(direct.count, sliced.count);
            assert_eq!(direct.count % 2, 0);
        }
    }
}
