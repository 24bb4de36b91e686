//! Closed-form predictions, as pure functions of the spectrum.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    convex_hull_2d, ellipsoid_volume, mixed_area, newton_ellipsoid, polygon_area, polygon_perimeter,
    pseudovolume, ComplexPolytope, GeometryError, Polygon2D,
};
use crate::spectra::{ComplexSpectrum, Spectrum1D, SpectrumError, SpectrumND};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PredictError {
    #[error("degree must be at least {min}, got {found}")]
    DegreeTooSmall { min: u64, found: u64 },
    #[error("Newton polytope is not full-dimensional")]
    DegenerateHull,
    #[error("need spectra of dimension {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("prediction for dimension {0} is not available")]
    UnsupportedDimension(usize),
    #[error("spectrum needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Reading of the boundary length `l(f)` in `N(f, r) ≈ r l(f) / 2π`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeConvention {
    /// Full perimeter of the Newton polygon.
    #[default]
    Perimeter,
    /// Half the perimeter.
    Semiperimeter,
}

impl SlopeConvention {
    pub const ALL: [SlopeConvention; 2] = [SlopeConvention::Perimeter, SlopeConvention::Semiperimeter];

    pub fn name(self) -> &'static str {
        match self {
            SlopeConvention::Perimeter => "perimeter",
            SlopeConvention::Semiperimeter => "semiperimeter",
        }
    }
}

impl fmt::Display for SlopeConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SlopeConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "perimeter" => Ok(SlopeConvention::Perimeter),
            "semiperimeter" => Ok(SlopeConvention::Semiperimeter),
            other => Err(format!("unknown convention `{other}` (perimeter|semiperimeter)")),
        }
    }
}

/// Leading term `(2/π) ln m` of the Kac mean.
pub fn kac_asymptotic(m: u64) -> Result<f64, PredictError> {
    if m < 2 {
        return Err(PredictError::DegreeTooSmall { min: 2, found: m });
    }
    Ok(2.0 / PI * (m as f64).ln())
}

/// Mean number of zeros on the circle: `2 √((1/#Λ) Σ λ²)`.
pub fn trig_expected(s: &Spectrum1D) -> Result<f64, PredictError> {
    s.require_symmetric()?;
    Ok(2.0 * s.mean_square().sqrt())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn content<'a>(coords: impl Iterator<Item = &'a i64>) -> u64 {
    coords.fold(0, |g, &c| gcd(g, c.unsigned_abs()))
}

/// Probability that a root is real: `(1/deg) √((1/#Λ) Σ λ²)`. Evaluated on
/// `Λ / gcd(Λ)`, so `trig_prob(kΛ)` and `trig_prob(Λ)` are bit-identical.
pub fn trig_prob(s: &Spectrum1D) -> Result<f64, PredictError> {
    let g = content(s.points().iter());
    if g == 0 {
        return Err(PredictError::DegreeTooSmall { min: 1, found: 0 });
    }
    let reduced = Spectrum1D::new(s.points().iter().map(|&k| k / g as i64).collect())?;
    Ok(reduced.mean_square().sqrt() / reduced.degree() as f64)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Mean number of common zeros on `Tⁿ` of `n` independent equations with
/// spectrum `Λ`: `n! vol Ell(Λ)`.
pub fn nd_expected(s: &SpectrumND) -> Result<f64, PredictError> {
    s.require_symmetric()?;
    Ok(factorial(s.dim()) * ellipsoid_volume(&newton_ellipsoid(s)))
}

/// Volume of `conv Λ` for `n ≤ 2`.
pub fn hull_volume(s: &SpectrumND) -> Result<f64, PredictError> {
    match s.dim() {
        1 => {
            let (lo, hi) = s
                .points()
                .iter()
                .fold((i64::MAX, i64::MIN), |(lo, hi), p| (lo.min(p[0]), hi.max(p[0])));
            Ok((hi - lo) as f64)
        }
        2 => Ok(polygon_area(&newton_polygon(s))),
        n => Err(PredictError::UnsupportedDimension(n)),
    }
}

/// `conv Λ` of a planar spectrum.
pub fn newton_polygon(s: &SpectrumND) -> Polygon2D {
    let pts: Vec<[f64; 2]> = s.points().iter().map(|p| [p[0] as f64, p[1] as f64]).collect();
    convex_hull_2d(&pts)
}

/// `vol Ell(Λ) / vol conv Λ`, the expected fraction of complex solutions
/// that are real. Like [`trig_prob`], computed on `Λ / gcd(Λ)`.
pub fn nd_prob(s: &SpectrumND) -> Result<f64, PredictError> {
    s.require_symmetric()?;
    let g = content(s.points().iter().flatten());
    if g == 0 {
        return Err(PredictError::DegenerateHull);
    }
    let reduced = SpectrumND::new(
        s.points()
            .iter()
            .map(|p| p.iter().map(|&c| c / g as i64).collect())
            .collect(),
    )?;
    let hull = hull_volume(&reduced)?;
    if hull <= 0.0 {
        return Err(PredictError::DegenerateHull);
    }
    Ok(ellipsoid_volume(&newton_ellipsoid(&reduced)) / hull)
}

/// Two equations with distinct planar spectra: `2! V(Ell(Λ₁), Ell(Λ₂))`.
pub fn nd_expected_mixed(s1: &SpectrumND, s2: &SpectrumND) -> Result<f64, PredictError> {
    for s in [s1, s2] {
        if s.dim() != 2 {
            return Err(PredictError::Dimension {
                expected: 2,
                found: s.dim(),
            });
        }
        s.require_symmetric()?;
    }
    Ok(2.0 * mixed_area(&newton_ellipsoid(s1), &newton_ellipsoid(s2))?)
}

/// Growth rate of `N(f, r)` in `r`: perimeter of `conv Λ̄` over `2π`, halved
/// under the semiperimeter convention.
pub fn expsum_slope(s: &ComplexSpectrum, convention: SlopeConvention) -> Result<f64, PredictError> {
    if s.len() < 2 {
        return Err(PredictError::TooFewPoints(s.len()));
    }
    let conj: Vec<_> = s.points().iter().map(|z| z.conj()).collect();
    let perimeter = polygon_perimeter(&Polygon2D::hull_of_complex(&conj));
    Ok(match convention {
        SlopeConvention::Perimeter => perimeter / (2.0 * PI),
        SlopeConvention::Semiperimeter => perimeter / (4.0 * PI),
    })
}

/// `pvol(Δ) / (2π)ⁿ` with its Monte Carlo standard error.
pub fn pvol_leading_coefficient(
    p: &ComplexPolytope,
    angle_samples: usize,
    seed: u64,
) -> Result<(f64, f64), PredictError> {
    let est = pseudovolume(p, angle_samples, seed)?;
    let scale = (2.0 * PI).powi(p.complex_dim() as i32);
    Ok((est.value / scale, est.stderr / scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    fn sym(m: u32) -> Spectrum1D {
        Spectrum1D::symmetric_range(m)
    }

    #[test]
    fn kac_values() {
        close(kac_asymptotic(100).unwrap(), 2.931742, 1e-6);
        close(kac_asymptotic(10).unwrap(), 1.46587, 1e-5);
        assert!(kac_asymptotic(1).is_err());
        // m ≈ e^{π/2}
        close(2.0 / PI * (PI / 2.0), 1.0, 1e-15);
    }

    #[test]
    fn trig_values() {
        assert_eq!(trig_expected(&sym(3)).unwrap(), 4.0);
        close(trig_prob(&sym(3)).unwrap(), 2.0 / 3.0, 1e-15);
        for k in [1, 4, 9] {
            let s = Spectrum1D::new(vec![-k, k]).unwrap();
            assert_eq!(trig_expected(&s).unwrap(), 2.0 * k as f64);
        }
        assert_eq!(trig_expected(&Spectrum1D::new(vec![0]).unwrap()).unwrap(), 0.0);
        assert!(trig_prob(&Spectrum1D::new(vec![0]).unwrap()).is_err());
        assert!(trig_expected(&Spectrum1D::new(vec![0, 1]).unwrap()).is_err());
        close(trig_prob(&sym(10_000)).unwrap(), 1.0 / 3.0_f64.sqrt(), 1e-4);
        let s = sym(2);
        assert_eq!(trig_prob(&s.scaled(7).unwrap()).unwrap(), trig_prob(&s).unwrap());
    }

    #[test]
    fn nd_values() {
        let sq = SpectrumND::integer_box(&[-1, -1], &[1, 1]).unwrap();
        close(nd_expected(&sq).unwrap(), 4.0 * PI / 3.0, 1e-12);
        close(nd_prob(&sq).unwrap(), PI / 6.0, 1e-12);
        let cross = SpectrumND::new(vec![vec![0, 0], vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]).unwrap();
        close(nd_expected(&cross).unwrap(), 4.0 * PI / 5.0, 1e-12);
        for m in 1..6 {
            let s = sym(m);
            close(nd_expected(&s.to_nd()).unwrap(), trig_expected(&s).unwrap(), 1e-12);
            close(nd_prob(&s.to_nd()).unwrap(), trig_prob(&s).unwrap(), 1e-12);
        }
        let pair = Spectrum1D::new(vec![-3, 3]).unwrap().to_nd();
        close(nd_prob(&pair).unwrap(), 1.0, 1e-15);
    }

    #[test]
    fn mixed_values() {
        let sq = SpectrumND::integer_box(&[-1, -1], &[1, 1]).unwrap();
        let cross = SpectrumND::new(vec![vec![0, 0], vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]).unwrap();
        close(nd_expected_mixed(&sq, &sq).unwrap(), nd_expected(&sq).unwrap(), 1e-9);
        close(nd_expected_mixed(&sq, &cross).unwrap(), 2.0 * PI * (4.0_f64 / 15.0).sqrt(), 1e-9);
        let k3 = nd_expected_mixed(&sq.scaled(3).unwrap(), &cross).unwrap();
        close(k3 / nd_expected_mixed(&sq, &cross).unwrap(), 3.0, 3e-9);
        assert!(nd_expected_mixed(&sym(2).to_nd(), &cross).is_err());
    }

    #[test]
    fn slopes() {
        let c = |re, im| Complex64::new(re, im);
        let ints = ComplexSpectrum::new(vec![c(0.0, 0.0), c(0.0, 2.0 * PI)]).unwrap();
        close(expsum_slope(&ints, SlopeConvention::Perimeter).unwrap(), 2.0, 1e-12);
        close(expsum_slope(&ints, SlopeConvention::Semiperimeter).unwrap(), 1.0, 1e-12);
        let sine = ComplexSpectrum::new(vec![c(0.0, 1.0), c(0.0, -1.0)]).unwrap();
        close(expsum_slope(&sine, SlopeConvention::Perimeter).unwrap(), 2.0 / PI, 1e-12);
        let tri = ComplexSpectrum::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        close(expsum_slope(&tri, SlopeConvention::Perimeter).unwrap(), 0.54339, 1e-5);
        let one = ComplexSpectrum::new(vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(expsum_slope(&one, SlopeConvention::Perimeter), Err(PredictError::TooFewPoints(1)));
        assert_eq!("Semiperimeter".parse::<SlopeConvention>(), Ok(SlopeConvention::Semiperimeter));
        assert_eq!(SlopeConvention::default(), SlopeConvention::Perimeter);
    }

    #[test]
    fn pvol_coefficients() {
        let c = |re, im| Complex64::new(re, im);
        let seg = ComplexPolytope::new(&[vec![c(0.0, 0.0)], vec![c(0.0, 2.0 * PI)]]).unwrap();
        close(pvol_leading_coefficient(&seg, 1000, 0).unwrap().0, 1.0, 1e-12);
        let tri = ComplexPolytope::new(&[vec![c(0.0, 0.0)], vec![c(1.0, 0.0)], vec![c(0.0, 1.0)]]).unwrap();
        close(pvol_leading_coefficient(&tri, 1000, 0).unwrap().0, 0.27169, 1e-5);
        let sq = ComplexPolytope::new(&[
            vec![c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        close(pvol_leading_coefficient(&sq, 1000, 0).unwrap().0, 1.0 / (4.0 * PI * PI), 1e-12);
    }
}
