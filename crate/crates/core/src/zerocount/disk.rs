//! Zeros of an exponential sum in a disk, by the argument principle.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{CountError, CountResult, Diagnostics};
use crate::spectra::ExpSum;

/// Subdivision cap for one contour.
pub const MAX_NODES: usize = 1 << 20;
/// A node with `|f| < NEAR_ZERO · Σ|terms|` means a zero is too close to the
/// contour to trust the winding number.
const NEAR_ZERO: f64 = 1e-10;
const MAX_NUDGES: u32 = 8;

fn initial_nodes(f: &ExpSum, r: f64) -> usize {
    let d = f.spectrum().diameter().max(1.0);
    64 + 32 * (r * d).ceil() as usize
}

struct Winding {
    turns: i64,
    depth: u32,
    min_rel: f64,
}

enum WindingOutcome {
    Done(Winding),
    NearZero,
    TooManyNodes(usize),
}

/// Total change of `arg f` along `center + r e^{iθ}`, subdividing every step
/// whose argument increment reaches `π/2`.
fn winding(f: &ExpSum, center: Complex64, r: f64, nodes: usize) -> WindingOutcome {
    let eval = |theta: f64| {
        let sv = f.eval_scaled(center + Complex64::from_polar(r, theta));
        (sv.value, sv.value.norm() / sv.magnitude)
    };
    let step = 2.0 * PI / nodes as f64;
    let mut total = 0.0;
    let mut used = nodes;
    let mut depth = 0;
    let mut min_rel = f64::INFINITY;
    let (mut prev_v, rel0) = eval(0.0);
    if rel0 < NEAR_ZERO {
        return WindingOutcome::NearZero;
    }
    min_rel = min_rel.min(rel0);
    let first_v = prev_v;
    for k in 0..nodes {
        let (a, b) = (k as f64 * step, (k + 1) as f64 * step);
        let end_v = if k + 1 == nodes {
            first_v
        } else {
            let (v, rel) = eval(b);
            if rel < NEAR_ZERO {
                return WindingOutcome::NearZero;
            }
            min_rel = min_rel.min(rel);
            v
        };
        // depth-first refinement of [a, b]
        let mut stack = vec![(a, b, prev_v, end_v, 0u32)];
        while let Some((lo, hi, vlo, vhi, d)) = stack.pop() {
            let delta = (vhi * vlo.conj()).arg();
            if delta.abs() < FRAC_PI_2 {
                total += delta;
                continue;
            }
            used += 1;
            if used > MAX_NODES {
                return WindingOutcome::TooManyNodes(used);
            }
            let mid = 0.5 * (lo + hi);
            let (vm, rel) = eval(mid);
            if rel < NEAR_ZERO {
                return WindingOutcome::NearZero;
            }
            min_rel = min_rel.min(rel);
            depth = depth.max(d + 1);
            // push the right half first so the left half is summed first
            stack.push((mid, hi, vm, vhi, d + 1));
            stack.push((lo, mid, vlo, vm, d + 1));
        }
        prev_v = end_v;
    }
    WindingOutcome::Done(Winding {
        turns: (total / (2.0 * PI)).round() as i64,
        depth,
        min_rel,
    })
}

/// Zeros of `f` in the open disk `|z| < r`.
pub fn disk_zeros_count(f: &ExpSum, r: f64) -> Result<CountResult, CountError> {
    disk_zeros_count_at(f, Complex64::new(0.0, 0.0), r)
}

/// Zeros of `f` in `|z − center| < r`. When a zero sits on the contour the
/// radius is nudged outward by `1e-3 (1 + 1/diam Λ)` and the count retried.
pub fn disk_zeros_count_at(f: &ExpSum, center: Complex64, r: f64) -> Result<CountResult, CountError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(CountError::InvalidRadius(r));
    }
    let diam = f.spectrum().diameter();
    let nudge = 1e-3 * (1.0 + if diam > 0.0 { 1.0 / diam } else { 1.0 });
    let mut radius = r;
    for _ in 0..=MAX_NUDGES {
        let n0 = initial_nodes(f, radius);
        let first = match winding(f, center, radius, n0) {
            WindingOutcome::Done(w) => w,
            WindingOutcome::NearZero => {
                radius += nudge;
                continue;
            }
            WindingOutcome::TooManyNodes(n) => return Err(CountError::Nonconvergence(n)),
        };
        let second = match winding(f, center, radius, 2 * n0) {
            WindingOutcome::Done(w) => w,
            WindingOutcome::NearZero => {
                radius += nudge;
                continue;
            }
            WindingOutcome::TooManyNodes(n) => return Err(CountError::Nonconvergence(n)),
        };
        let diagnostics = Diagnostics {
            min_abs: first.min_rel.min(second.min_rel),
            refinement_depth: first.depth.max(second.depth),
        };
        let count = second.turns.max(0) as usize;
        return Ok(if first.turns == second.turns && second.turns >= 0 {
            CountResult::certified(count, diagnostics)
        } else {
            CountResult::uncertified(count, diagnostics)
        });
    }
    Err(CountError::Nonconvergence(initial_nodes(f, radius)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::{sample_expsum, RngStream};
    use crate::spectra::ComplexSpectrum;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn integer_zeros() -> ExpSum {
        // e^{2πiz} − 1
        let s = ComplexSpectrum::new(vec![c(0.0, 0.0), c(0.0, -2.0 * PI)]).unwrap();
        ExpSum::new(s, vec![c(-1.0, 0.0), c(1.0, 0.0)]).unwrap()
    }

    #[test]
    fn integers_in_disk() {
        let r = disk_zeros_count(&integer_zeros(), 10.5).unwrap();
        assert_eq!(r.count, 21);
        assert!(r.certified);
        for (radius, expect) in [(0.5, 1), (1.5, 3), (3.2, 7), (25.5, 51)] {
            assert_eq!(disk_zeros_count(&integer_zeros(), radius).unwrap().count, expect);
        }
    }

    #[test]
    fn zero_on_contour_is_nudged() {
        // r = 3 passes through the zeros ±3; the nudged contour encloses them
        let r = disk_zeros_count(&integer_zeros(), 3.0).unwrap();
        assert_eq!(r.count, 7);
    }

    #[test]
    fn sine_zeros() {
        // e^{iz} − e^{−iz}: conj(λ) = ±i
        let s = ComplexSpectrum::new(vec![c(0.0, -1.0), c(0.0, 1.0)]).unwrap();
        let f = ExpSum::new(s, vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!(disk_zeros_count(&f, 10.0).unwrap().count, 7);
    }

    #[test]
    fn single_exponential_never_vanishes() {
        let s = ComplexSpectrum::new(vec![c(1.0, 0.0)]).unwrap();
        let f = ExpSum::new(s, vec![c(1.0, 0.0)]).unwrap();
        for r in [0.5, 5.0, 40.0] {
            let res = disk_zeros_count(&f, r).unwrap();
            assert_eq!(res.count, 0);
            assert!(res.certified);
        }
    }

    #[test]
    fn recentred_disk() {
        let f = integer_zeros();
        let r = disk_zeros_count_at(&f, c(100.0, 0.0), 1.5).unwrap();
        assert_eq!(r.count, 3);
    }

    #[test]
    fn invalid_radius() {
        assert_eq!(disk_zeros_count(&integer_zeros(), 0.0), Err(CountError::InvalidRadius(0.0)));
        assert!(disk_zeros_count(&integer_zeros(), f64::NAN).is_err());
    }

    #[test]
    fn monotone_in_radius() {
        let s = ComplexSpectrum::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        for i in 0..5 {
            let f = sample_expsum(&s, &mut RngStream::new(4, i).rng()).unwrap();
            let mut last = 0;
            for r in [2.0, 5.0, 10.0, 20.0, 30.0] {
                let n = disk_zeros_count(&f, r).unwrap();
                assert!(n.certified);
                assert!(n.count >= last);
                last = n.count;
            }
        }
    }
}
