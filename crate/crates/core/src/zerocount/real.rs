//! Distinct real roots of a real polynomial.
//!
//! Three routes, paired by degree:
//!
//! | degree      | primary                    | certifier                 |
//! |-------------|----------------------------|---------------------------|
//! | ≤ 40        | balanced companion matrix  | Sturm sequence at ±∞      |
//! | ≤ 200       | balanced companion matrix  | sign scan                 |
//! | > 200       | sign scan                  | sign scan, half the step  |
//!
//! A double-precision Sturm chain loses its sign pattern well before degree
//! 100, and dense eigenvalues cost O(m³), so the scan takes over at the top.

use nalgebra::linalg::balancing::balance_parlett_reinsch;
use nalgebra::{DMatrix, Schur};

use super::{CountError, CountResult, Diagnostics};
use crate::ensembles::RealPolynomial;

pub const STURM_MAX_DEGREE: usize = 40;
pub const COMPANION_MAX_DEGREE: usize = 200;

/// A companion eigenvalue is real when `|Im λ| ≤ IMAG_TOL (1 + |λ|)`.
const IMAG_TOL: f64 = 1e-6;
/// Real eigenvalues closer than this (relative) are one root.
const CLUSTER_TOL: f64 = 1e-7;
const STURM_DROP_TOL: f64 = 1e-12;
const PERTURB_RETRIES: usize = 3;

/// Real roots from the eigenvalues of the balanced companion matrix, or `None`
/// when the QR iteration does not converge. Input must have a nonzero
/// leading coefficient and degree ≥ 1.
pub fn companion_real_roots(coeffs: &[f64]) -> Option<Vec<f64>> {
    let m = coeffs.len() - 1;
    let lead = coeffs[m];
    let mut c = DMatrix::<f64>::zeros(m, m);
    for i in 1..m {
        c[(i, i - 1)] = 1.0;
    }
    for i in 0..m {
        c[(i, m - 1)] = -coeffs[i] / lead;
    }
    balance_parlett_reinsch(&mut c);
    let schur = Schur::try_new(c, f64::EPSILON, 200 * m.max(10))?;
    let mut real: Vec<f64> = schur
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= IMAG_TOL * (1.0 + z.norm()))
        .map(|z| z.re)
        .collect();
    real.sort_by(f64::total_cmp);
    real.dedup_by(|a, b| (*a - *b).abs() <= CLUSTER_TOL * (1.0 + a.abs()));
    Some(real)
}

fn normalize(p: &mut Vec<f64>) {
    let scale = p.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    if scale > 0.0 {
        p.iter_mut().for_each(|c| *c /= scale);
    }
    while p.len() > 1 && p.last().unwrap().abs() <= STURM_DROP_TOL {
        p.pop();
    }
}

/// Remainder of `a` divided by `b` (ascending coefficients, `b` normalized).
fn poly_rem(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db];
    while r.len() > db && r.len() > 0 {
        let dr = r.len() - 1;
        let q = r[dr] / lb;
        for j in 0..=db {
            r[dr - db + j] -= q * b[j];
        }
        r.pop();
    }
    r
}

/// Distinct real roots by Sturm's theorem, from the leading coefficients of
/// the chain `p, p', −rem(…)` evaluated at `±∞`.
pub fn sturm_real_roots(coeffs: &[f64]) -> usize {
    let mut p0 = coeffs.to_vec();
    normalize(&mut p0);
    let mut p1: Vec<f64> = p0.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect();
    if p1.is_empty() {
        return 0;
    }
    normalize(&mut p1);
    let mut chain = vec![p0, p1];
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        if b.len() == 1 {
            break;
        }
        let mut r: Vec<f64> = poly_rem(a, b).into_iter().map(|c| -c).collect();
        let before = r.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        if before <= STURM_DROP_TOL {
            break;
        }
        normalize(&mut r);
        chain.push(r);
    }
    let variations = |signs: Vec<bool>| signs.windows(2).filter(|w| w[0] != w[1]).count();
    let at_pos_inf: Vec<bool> = chain.iter().map(|p| *p.last().unwrap() > 0.0).collect();
    let at_neg_inf: Vec<bool> = chain
        .iter()
        .map(|p| {
            let lead = *p.last().unwrap() > 0.0;
            if (p.len() - 1) % 2 == 0 {
                lead
            } else {
                !lead
            }
        })
        .collect();
    variations(at_neg_inf).saturating_sub(variations(at_pos_inf))
}

fn horner_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Sign changes of `p` on `[-1, 1]`, sampled uniformly in `u = atanh(x)`.
/// Cells without a sign change but with a sign change of `p'` are searched
/// for a hidden pair of roots around the critical point.
fn scan_unit_interval(coeffs: &[f64], step: f64, half_width: f64) -> usize {
    let n = (2.0 * half_width / step).ceil() as usize;
    let mut xs: Vec<f64> = Vec::with_capacity(n + 3);
    xs.push(-1.0);
    xs.extend((0..=n).map(|k| (-half_width + k as f64 * step).tanh()));
    xs.push(1.0);
    xs.dedup();
    let vals: Vec<(f64, f64)> = xs.iter().map(|&x| horner_with_derivative(coeffs, x)).collect();
    let mut count = 0;
    for k in 0..xs.len() - 1 {
        let (pa, da) = vals[k];
        let (pb, db) = vals[k + 1];
        if (pa >= 0.0) != (pb >= 0.0) {
            count += 1;
        } else if (da >= 0.0) != (db >= 0.0) {
            let (mut lo, mut hi) = (xs[k], xs[k + 1]);
            let lo_sign = da >= 0.0;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if (horner_with_derivative(coeffs, mid).1 >= 0.0) == lo_sign {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let (pc, _) = horner_with_derivative(coeffs, 0.5 * (lo + hi));
            if (pc >= 0.0) != (pa >= 0.0) {
                count += 2;
            }
        }
    }
    count
}

/// Real roots by sign scanning: roots in `[-1, 1]` from `p`, the rest from the
/// reversed polynomial `x^m p(1/x)`. `resolution` divides the step.
pub fn scan_real_roots(coeffs: &[f64], resolution: u32) -> usize {
    let m = coeffs.len().saturating_sub(1).max(1) as f64;
    let step = 1.0 / (16.0 * f64::from(resolution) * (1.0 + m / 64.0).sqrt());
    let half_width = 0.5 * (2000.0 * m * m * m).ln();
    let reversed: Vec<f64> = coeffs.iter().rev().copied().collect();
    scan_unit_interval(coeffs, step, half_width) + scan_unit_interval(&reversed, step, half_width)
}

fn perturbed(coeffs: &[f64], attempt: usize) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let wiggle = (((k * 7 + attempt * 13) % 11) as f64 - 5.0) * 1e-12 * attempt as f64;
            c * (1.0 + wiggle)
        })
        .collect()
}

/// Number of distinct real roots of `p`.
pub fn real_roots_count(p: &RealPolynomial) -> Result<CountResult, CountError> {
    let trimmed = p.trimmed();
    if trimmed.is_empty() {
        return Err(CountError::ZeroPolynomial);
    }
    // a root at the origin is counted once and divided out
    let zeros = trimmed.iter().take_while(|&&c| c == 0.0).count();
    let coeffs = &trimmed[zeros..];
    let origin = usize::from(zeros > 0);
    let degree = coeffs.len() - 1;
    let diag = Diagnostics::default();
    if degree == 0 {
        return Ok(CountResult::certified(origin, diag));
    }
    if degree > COMPANION_MAX_DEGREE {
        let a = scan_real_roots(coeffs, 1);
        let b = scan_real_roots(coeffs, 2);
        let r = if a == b {
            CountResult::certified(b + origin, diag)
        } else {
            CountResult::uncertified(b + origin, diag)
        };
        return Ok(r);
    }
    let certify = |c: &[f64]| -> usize {
        if degree <= STURM_MAX_DEGREE {
            sturm_real_roots(c)
        } else {
            scan_real_roots(c, 1)
        }
    };
    let primary = companion_real_roots(coeffs).map(|r| r.len());
    if let Some(n) = primary {
        if certify(coeffs) == n {
            return Ok(CountResult::certified(n + origin, diag));
        }
    }
    for attempt in 1..=PERTURB_RETRIES {
        let q = perturbed(coeffs, attempt);
        if let Some(r) = companion_real_roots(&q) {
            if certify(&q) == r.len() {
                let d = Diagnostics {
                    refinement_depth: attempt as u32,
                    ..diag
                };
                return Ok(CountResult::certified(r.len() + origin, d));
            }
        }
    }
    let n = primary.unwrap_or_else(|| scan_real_roots(coeffs, 2));
    Ok(CountResult::uncertified(n + origin, Diagnostics { refinement_depth: PERTURB_RETRIES as u32, ..diag }))
}
