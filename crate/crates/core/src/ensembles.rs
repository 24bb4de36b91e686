//! Seeded Gaussian samplers for every random model.
//!
//! Each trial gets its own generator derived from `(seed, index)`: a ChaCha8
//! keyed by the seed, positioned on stream `index`. Draws therefore depend
//! only on the pair, never on which worker ran the trial or in what order.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spectra::{
    ComplexSpectrum, ExpSum, Spectrum1D, SpectrumError, SpectrumND, TrigPolynomial,
    TrigPolynomialND,
};

/// Coefficients below this modulus are redrawn by [`sample_expsum`].
pub const MIN_EXPSUM_COEFF: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    #[error("degree must be at least 1, got {0}")]
    DegreeTooSmall(u32),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("system of {equations} equations needs {equations} variables, spectrum #{index} has dimension {dim}")]
    DimensionMismatch {
        equations: usize,
        index: usize,
        dim: usize,
    },
    #[error("exponential sum needs at least 2 frequencies, got {0}")]
    TooFewPoints(usize),
}

/// Identifies the random stream of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub index: u64,
}

impl RngStream {
    pub fn new(seed: u64, index: u64) -> Self {
        Self { seed, index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.index);
        rng
    }
}

pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn standard_normal_vec<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    (0..n).map(|_| standard_normal(rng)).collect()
}

/// Real polynomial `Σ c_k x^k`; the degree is nominal (the leading
/// coefficient of a Gaussian draw is never exactly zero, but may be small).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn nominal_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Coefficients with trailing (highest-degree) exact zeros removed.
    pub fn trimmed(&self) -> Vec<f64> {
        let n = self.coeffs.iter().rposition(|&c| c != 0.0).map_or(0, |i| i + 1);
        self.coeffs[..n].to_vec()
    }
}

/// Kac ensemble: `m + 1` iid standard normal coefficients.
pub fn sample_kac<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Result<RealPolynomial, SampleError> {
    if m < 1 {
        return Err(SampleError::DegreeTooSmall(m));
    }
    Ok(RealPolynomial::new(standard_normal_vec(m as usize + 1, rng)))
}

/// `ln k!` for `k = 0..=m`.
fn ln_factorials(m: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(m + 1);
    let mut acc = 0.0;
    out.push(acc);
    for k in 1..=m {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// Variance of the `k`-th Kostlan coefficient, `C(m, k)`.
pub fn kostlan_variance(m: u32, k: u32) -> f64 {
    let lf = ln_factorials(m as usize);
    let (m, k) = (m as usize, k as usize);
    (lf[m] - lf[k] - lf[m - k]).exp()
}

/// Kostlan ensemble: `c_k ~ N(0, C(m, k))` independent.
pub fn sample_kostlan<R: Rng + ?Sized>(m: u32, rng: &mut R) -> Result<RealPolynomial, SampleError> {
    if m < 1 {
        return Err(SampleError::DegreeTooSmall(m));
    }
    let lf = ln_factorials(m as usize);
    let mu = m as usize;
    let coeffs = (0..=mu)
        .map(|k| {
            let sd = (0.5 * (lf[mu] - lf[k] - lf[mu - k])).exp();
            sd * standard_normal(rng)
        })
        .collect();
    Ok(RealPolynomial::new(coeffs))
}

/// Standard Gaussian element of `Trig(Λ)`: iid standard normal coordinates on
/// the orthonormal basis, drawn in basis order.
pub fn sample_trig<R: Rng + ?Sized>(
    spectrum: &Spectrum1D,
    rng: &mut R,
) -> Result<TrigPolynomial, SampleError> {
    spectrum.require_symmetric()?;
    let coords = standard_normal_vec(spectrum.len(), rng);
    Ok(TrigPolynomial::from_coordinates(spectrum.clone(), &coords)?)
}

/// Standard Gaussian n-variate trigonometric polynomial; the constant is drawn
/// first, then `(α, β)` for each point of the half spectrum.
pub fn sample_trig_nd<R: Rng + ?Sized>(
    spectrum: &SpectrumND,
    rng: &mut R,
) -> Result<TrigPolynomialND, SampleError> {
    spectrum.require_symmetric()?;
    let c0 = if spectrum.contains_origin() {
        standard_normal(rng)
    } else {
        0.0
    };
    let nh = spectrum.half().count();
    let mut alphas = Vec::with_capacity(nh);
    let mut betas = Vec::with_capacity(nh);
    for _ in 0..nh {
        alphas.push(standard_normal(rng));
        betas.push(standard_normal(rng));
    }
    Ok(TrigPolynomialND::new(spectrum.clone(), c0, alphas, betas)?)
}

/// One independent sample per equation of an `n × n` system.
pub fn sample_trig_system<R: Rng + ?Sized>(
    spectra: &[SpectrumND],
    rng: &mut R,
) -> Result<Vec<TrigPolynomialND>, SampleError> {
    let n = spectra.len();
    if let Some((index, s)) = spectra.iter().enumerate().find(|(_, s)| s.dim() != n) {
        return Err(SampleError::DimensionMismatch {
            equations: n,
            index,
            dim: s.dim(),
        });
    }
    spectra.iter().map(|s| sample_trig_nd(s, rng)).collect()
}

/// Standard complex normal `(g₁ + i g₂)/√2`.
pub fn standard_complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re = standard_normal(rng);
    let im = standard_normal(rng);
    Complex64::new(re, im) * FRAC_1_SQRT_2
}

/// Exponential sum with iid standard complex normal coefficients; any draw
/// smaller than [`MIN_EXPSUM_COEFF`] in modulus is redrawn.
pub fn sample_expsum<R: Rng + ?Sized>(
    spectrum: &ComplexSpectrum,
    rng: &mut R,
) -> Result<ExpSum, SampleError> {
    if spectrum.len() < 2 {
        return Err(SampleError::TooFewPoints(spectrum.len()));
    }
    let coeffs = (0..spectrum.len())
        .map(|_| loop {
            let c = standard_complex_normal(rng);
            if c.norm() >= MIN_EXPSUM_COEFF {
                break c;
            }
        })
        .collect();
    Ok(ExpSum::new(spectrum.clone(), coeffs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stream(seed: u64) -> ChaCha8Rng {
        RngStream::new(seed, 0).rng()
    }

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a = sample_kac(5, &mut RngStream::new(42, 3).rng()).unwrap();
        let b = sample_kac(5, &mut RngStream::new(42, 3).rng()).unwrap();
        let c = sample_kac(5, &mut RngStream::new(42, 4).rng()).unwrap();
        let d = sample_kac(5, &mut RngStream::new(43, 3).rng()).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
        assert_eq!(a.coeffs().len(), 6);
    }

    #[test]
    fn degree_zero_rejected() {
        assert_eq!(sample_kac(0, &mut stream(0)), Err(SampleError::DegreeTooSmall(0)));
        assert_eq!(sample_kostlan(0, &mut stream(0)), Err(SampleError::DegreeTooSmall(0)));
    }

    #[test]
    fn kostlan_degree_one_matches_kac() {
        let a = sample_kac(1, &mut stream(9)).unwrap();
        let b = sample_kostlan(1, &mut stream(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn kostlan_variances() {
        assert!((kostlan_variance(10, 5) - 252.0).abs() < 1e-9);
        assert!((kostlan_variance(10, 0) - 1.0).abs() < 1e-12);
        // no overflow past the f64 factorial range
        let v = kostlan_variance(200, 100);
        assert!(v.is_finite() && v > 1e58);
    }

    #[test]
    fn kostlan_empirical_variance() {
        let mut rng = stream(11);
        let n = 20_000;
        let mut sum = 0.0;
        let mut sq = 0.0;
        for _ in 0..n {
            let p = sample_kostlan(10, &mut rng).unwrap();
            let c = p.coeffs()[5];
            sum += c;
            sq += c * c;
        }
        let mean = sum / n as f64;
        let var = sq / n as f64 - mean * mean;
        assert!((var - 252.0).abs() / 252.0 < 0.05, "variance {var}");
    }

    #[test]
    fn trig_sampling_requires_symmetry() {
        let s = Spectrum1D::new(vec![-1, 2]).unwrap();
        assert_eq!(
            sample_trig(&s, &mut stream(0)),
            Err(SampleError::Spectrum(SpectrumError::NotSymmetric))
        );
    }

    #[test]
    fn trig_coordinates_are_the_draws() {
        let s = Spectrum1D::symmetric_range(3);
        let f = sample_trig(&s, &mut stream(5)).unwrap();
        let xi = standard_normal_vec(7, &mut stream(5));
        assert_eq!(f.coordinates(), xi);
    }

    #[test]
    fn constant_spectrum_has_constant_sample() {
        let s = Spectrum1D::new(vec![0]).unwrap();
        let f = sample_trig(&s, &mut stream(1)).unwrap();
        assert_eq!(f.eval(0.3), f.eval(2.0));
    }

    #[test]
    fn system_dimension_checked() {
        let s = SpectrumND::integer_box(&[-1, -1], &[1, 1]).unwrap();
        assert!(matches!(
            sample_trig_system(&[s.clone()], &mut stream(0)),
            Err(SampleError::DimensionMismatch { equations: 1, .. })
        ));
        let sys = sample_trig_system(&[s.clone(), s], &mut stream(0)).unwrap();
        assert_eq!(sys.len(), 2);
        assert_ne!(sys[0], sys[1]);
    }

    #[test]
    fn expsum_needs_two_points() {
        let s = ComplexSpectrum::new(vec![Complex64::new(0.0, 0.0)]).unwrap();
        assert_eq!(sample_expsum(&s, &mut stream(0)), Err(SampleError::TooFewPoints(1)));
    }

    #[test]
    fn complex_normal_unit_variance() {
        let mut rng = stream(2);
        let n = 50_000;
        let mean_sq: f64 = (0..n).map(|_| standard_complex_normal(&mut rng).norm_sqr()).sum::<f64>() / n as f64;
        assert!((mean_sq - 1.0).abs() < 0.02);
    }
}
