use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use super::GeometryError;
use crate::ensembles::{standard_normal_vec, RngStream};
use crate::spectra::{trig_basis, Spectrum1D};
use crate::zerocount::hyperplane_curve_intersections;

type CurveFn = Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>;

const SPHERE_TOL: f64 = 1e-10;
const SPHERE_CHECKS: usize = 256;

/// Closed curve `t ↦ point(t)`, `t ∈ [0, 2π)`, on the unit sphere of `Rⁿ`,
/// with its derivative. `degree` bounds the frequencies of the coordinate
/// functions and sets the sampling density of intersection counts.
#[derive(Clone)]
pub struct SphericalCurve {
    dim: usize,
    degree: u64,
    point: CurveFn,
    velocity: CurveFn,
}

impl fmt::Debug for SphericalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SphericalCurve")
            .field("dim", &self.dim)
            .field("degree", &self.degree)
            .finish_non_exhaustive()
    }
}

impl SphericalCurve {
    /// Checks `|point(t)| = 1` on a uniform sample of parameters.
    pub fn new(
        dim: usize,
        degree: u64,
        point: impl Fn(f64) -> Vec<f64> + Send + Sync + 'static,
        velocity: impl Fn(f64) -> Vec<f64> + Send + Sync + 'static,
    ) -> Result<Self, GeometryError> {
        for index in 0..SPHERE_CHECKS {
            let t = 2.0 * PI * index as f64 / SPHERE_CHECKS as f64;
            let p = point(t);
            if p.len() != dim {
                return Err(GeometryError::Dimension {
                    expected: dim,
                    found: p.len(),
                });
            }
            let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > SPHERE_TOL {
                return Err(GeometryError::NotOnSphere { index, norm });
            }
        }
        Ok(Self {
            dim,
            degree,
            point: Arc::new(point),
            velocity: Arc::new(velocity),
        })
    }

    /// `t ↦ cos t e₁ + sin t e₂` in `Rⁿ`, `n ≥ 2`.
    pub fn great_circle(dim: usize) -> Result<Self, GeometryError> {
        if dim < 2 {
            return Err(GeometryError::Dimension {
                expected: 2,
                found: dim,
            });
        }
        Self::new(
            dim,
            1,
            move |t| {
                let mut p = vec![0.0; dim];
                p[0] = t.cos();
                p[1] = t.sin();
                p
            },
            move |t| {
                let mut v = vec![0.0; dim];
                v[0] = -t.sin();
                v[1] = t.cos();
                v
            },
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn point(&self, t: f64) -> Vec<f64> {
        (self.point)(t)
    }

    pub fn velocity(&self, t: f64) -> Vec<f64> {
        (self.velocity)(t)
    }

    /// `∫ |point'(t)| dt` by the periodic trapezoid rule.
    pub fn length(&self, nodes: usize) -> f64 {
        let step = 2.0 * PI / nodes as f64;
        (0..nodes)
            .map(|k| {
                let v = self.velocity(k as f64 * step);
                v.iter().map(|x| x * x).sum::<f64>().sqrt()
            })
            .sum::<f64>()
            * step
    }
}

/// `κ(θ) = F_θ/√n`, the normalized evaluation functional, in the coordinates
/// of the orthonormal basis of `Trig(Λ)`.
pub fn kappa_point(spectrum: &Spectrum1D, theta: f64) -> Vec<f64> {
    let scale = 1.0 / (spectrum.len() as f64).sqrt();
    trig_basis(spectrum)
        .into_iter()
        .map(|b| b.eval(theta) * scale)
        .collect()
}

pub fn kappa_velocity(spectrum: &Spectrum1D, theta: f64) -> Vec<f64> {
    let scale = 1.0 / (spectrum.len() as f64).sqrt();
    trig_basis(spectrum)
        .into_iter()
        .map(|b| b.derivative(theta) * scale)
        .collect()
}

/// `|dκ/dθ|`, the constant `√((1/#Λ) Σ λ²)`.
pub fn kappa_speed(spectrum: &Spectrum1D) -> Result<f64, GeometryError> {
    spectrum.require_symmetric()?;
    Ok(spectrum.mean_square().sqrt())
}

/// Length of `κ(S)`: `2π · kappa_speed`.
pub fn kappa_length(spectrum: &Spectrum1D) -> Result<f64, GeometryError> {
    Ok(2.0 * PI * kappa_speed(spectrum)?)
}

/// `κ(S)` as a spherical curve. The constant spectrum `{0}` maps the whole
/// circle to one point.
pub fn kappa_curve(spectrum: &Spectrum1D) -> Result<SphericalCurve, GeometryError> {
    spectrum.require_symmetric()?;
    let a = spectrum.clone();
    let b = spectrum.clone();
    SphericalCurve::new(
        spectrum.len(),
        spectrum.degree(),
        move |t| kappa_point(&a, t),
        move |t| kappa_velocity(&b, t),
    )
}

/// Monte Carlo estimate of `E #(K ∩ ξ^⊥)` over standard Gaussian `ξ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CroftonEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: usize,
    pub discarded: usize,
}

/// Averages hyperplane intersection counts of `curve` over `trials` Gaussian
/// normals; trial `i` draws its normal from stream `(seed, i)`. Uncertified
/// counts are discarded and reported.
pub fn crofton_estimate(
    curve: &SphericalCurve,
    trials: usize,
    seed: u64,
) -> Result<CroftonEstimate, GeometryError> {
    if trials == 0 {
        return Err(GeometryError::NoTrials);
    }
    let mut counts = Vec::with_capacity(trials);
    let mut discarded = 0;
    for i in 0..trials {
        let xi = standard_normal_vec(curve.dim(), &mut RngStream::new(seed, i as u64).rng());
        match hyperplane_curve_intersections(curve, &xi) {
            Ok(r) if r.certified => counts.push(r.count as f64),
            _ => discarded += 1,
        }
    }
    let (mean, stderr) = crate::harness::mean_and_stderr(&counts);
    Ok(CroftonEstimate {
        mean,
        stderr,
        trials,
        discarded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::TrigPolynomial;

    #[test]
    fn kappa_lengths() {
        let s = Spectrum1D::symmetric_range(1);
        let l = kappa_length(&s).unwrap();
        assert!((l - 2.0 * PI * (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((l - 5.130).abs() < 1e-3);
        for k in 1..5 {
            let s = Spectrum1D::new(vec![-k, k]).unwrap();
            assert!((kappa_length(&s).unwrap() - 2.0 * PI * k as f64).abs() < 1e-12);
        }
        assert_eq!(kappa_length(&Spectrum1D::new(vec![0]).unwrap()).unwrap(), 0.0);
        assert!(kappa_length(&Spectrum1D::new(vec![-1, 2]).unwrap()).is_err());
    }

    #[test]
    fn kappa_on_unit_sphere_with_constant_speed() {
        let s = Spectrum1D::new(vec![-4, -1, 0, 1, 4]).unwrap();
        let speed = kappa_speed(&s).unwrap();
        for k in 0..1024 {
            let t = 2.0 * PI * k as f64 / 1024.0;
            let p = kappa_point(&s, t);
            let v = kappa_velocity(&s, t);
            let np = p.iter().map(|x| x * x).sum::<f64>().sqrt();
            let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((np - 1.0).abs() < 1e-10);
            assert!((nv - speed).abs() < 1e-10);
        }
    }

    #[test]
    fn reproducing_property() {
        let s = Spectrum1D::new(vec![-3, -2, 0, 2, 3]).unwrap();
        let coords = [0.7, -1.2, 0.4, 2.0, -0.3];
        let f = TrigPolynomial::from_coordinates(s.clone(), &coords).unwrap();
        let root_n = (s.len() as f64).sqrt();
        for k in 0..256 {
            let t = 2.0 * PI * k as f64 / 256.0;
            let ip: f64 = kappa_point(&s, t).iter().zip(&coords).map(|(a, b)| a * b).sum();
            assert!((ip * root_n - f.eval(t)).abs() < 1e-10);
        }
    }

    #[test]
    fn curve_validation() {
        let bad = SphericalCurve::new(2, 1, |t| vec![2.0 * t.cos(), 2.0 * t.sin()], |t| vec![-t.sin(), t.cos()]);
        assert!(matches!(bad, Err(GeometryError::NotOnSphere { index: 0, .. })));
        assert!(SphericalCurve::great_circle(1).is_err());
        let c = SphericalCurve::great_circle(3).unwrap();
        assert!((c.length(64) - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn crofton_great_circle_always_two() {
        let c = SphericalCurve::great_circle(3).unwrap();
        let est = crofton_estimate(&c, 200, 3).unwrap();
        assert_eq!(est.mean, 2.0);
        assert_eq!(est.stderr, 0.0);
        assert_eq!(est.discarded, 0);
        assert_eq!(crofton_estimate(&c, 0, 3), Err(GeometryError::NoTrials));
    }
}
