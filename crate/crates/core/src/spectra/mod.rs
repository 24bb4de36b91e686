//! Spectra (finite frequency sets) and the functions built on them: real
//! trigonometric polynomials, Laurent polynomials and exponential sums.
//!
//! Trigonometric polynomials are stored by their coordinates on the
//! `L2(S)`-orthonormal basis `1, √2 cos(λθ), √2 sin(λθ)` under the inner
//! product `(f, g) = (1/2π) ∫ f g`. The same basis (and the same coordinate
//! order) is used by the κ-embedding in [`crate::geometry`] and by the samplers
//! in [`crate::ensembles`], so a coefficient vector means the same thing
//! everywhere in the crate.

mod parse;

use std::f64::consts::SQRT_2;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use parse::{parse_complex_list, parse_spectrum_1d, parse_spectrum_nd, parse_real_list};

/// Absolute tolerance under which two complex frequencies are the same point.
pub const COMPLEX_POINT_TOL: f64 = 1e-12;

/// Tolerance of the conjugate-symmetry test `a_k = conj(a_{-k})`.
pub const REALITY_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectrumError {
    #[error("spectrum is empty")]
    Empty,
    #[error("duplicate frequency {0}")]
    Duplicate(String),
    #[error("frequency vector #{index} has length {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("spectrum dimension must be positive")]
    ZeroDimension,
    #[error("spectrum is not centrally symmetric")]
    NotSymmetric,
    #[error("expected {expected} coefficients, got {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("coefficient of frequency {0} is zero")]
    ZeroCoefficient(String),
    #[error("constant coefficient given but 0 is not in the spectrum")]
    StrayConstant,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Finite set of integer frequencies, sorted ascending, without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Spectrum1D {
    points: Vec<i64>,
}

impl Spectrum1D {
    pub fn new(mut points: Vec<i64>) -> Result<Self, SpectrumError> {
        if points.is_empty() {
            return Err(SpectrumError::Empty);
        }
        points.sort_unstable();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(SpectrumError::Duplicate(w[0].to_string()));
        }
        Ok(Self { points })
    }

    /// The inclusive range `lo..=hi`.
    pub fn range(lo: i64, hi: i64) -> Result<Self, SpectrumError> {
        Self::new((lo..=hi).collect())
    }

    /// `{-m, ..., m}`, the spectrum of a real Laurent polynomial of degree `m`.
    pub fn symmetric_range(m: u32) -> Self {
        let m = i64::from(m);
        Self {
            points: (-m..=m).collect(),
        }
    }

    pub fn points(&self) -> &[i64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, k: i64) -> bool {
        self.points.binary_search(&k).is_ok()
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        self.points.iter().all(|&k| self.contains(-k))
    }

    /// `max |λ|`.
    pub fn degree(&self) -> u64 {
        self.points.iter().map(|k| k.unsigned_abs()).max().unwrap_or(0)
    }

    /// `(1/#Λ) Σ λ²`.
    pub fn mean_square(&self) -> f64 {
        let sum: f64 = self.points.iter().map(|&k| (k as f64) * (k as f64)).sum();
        sum / self.points.len() as f64
    }

    /// Positive frequencies, ascending.
    pub fn positive(&self) -> impl Iterator<Item = i64> + '_ {
        self.points.iter().copied().filter(|&k| k > 0)
    }

    /// `kΛ` for a nonzero integer `k`.
    pub fn scaled(&self, k: i64) -> Result<Self, SpectrumError> {
        if k == 0 {
            return Err(SpectrumError::Duplicate("0".into()));
        }
        Self::new(self.points.iter().map(|p| p * k).collect())
    }

    pub fn require_symmetric(&self) -> Result<(), SpectrumError> {
        if self.is_centrally_symmetric() {
            Ok(())
        } else {
            Err(SpectrumError::NotSymmetric)
        }
    }

    /// As a one-dimensional lattice spectrum.
    pub fn to_nd(&self) -> SpectrumND {
        SpectrumND {
            dim: 1,
            points: self.points.iter().map(|&k| vec![k]).collect(),
        }
    }
}

impl TryFrom<Vec<i64>> for Spectrum1D {
    type Error = SpectrumError;
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<Spectrum1D> for Vec<i64> {
    fn from(s: Spectrum1D) -> Self {
        s.points
    }
}

impl fmt::Display for Spectrum1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Finite set of integer vectors of a common length, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct SpectrumND {
    dim: usize,
    points: Vec<Vec<i64>>,
}

impl SpectrumND {
    pub fn new(mut points: Vec<Vec<i64>>) -> Result<Self, SpectrumError> {
        let dim = points.first().ok_or(SpectrumError::Empty)?.len();
        if dim == 0 {
            return Err(SpectrumError::ZeroDimension);
        }
        if let Some((index, p)) = points.iter().enumerate().find(|(_, p)| p.len() != dim) {
            return Err(SpectrumError::DimensionMismatch {
                index,
                expected: dim,
                found: p.len(),
            });
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(SpectrumError::Duplicate(format!("{:?}", w[0])));
        }
        Ok(Self { dim, points })
    }

    /// Every integer vector in the box `lo ≤ λ ≤ hi` (componentwise).
    pub fn integer_box(lo: &[i64], hi: &[i64]) -> Result<Self, SpectrumError> {
        if lo.len() != hi.len() {
            return Err(SpectrumError::DimensionMismatch {
                index: 1,
                expected: lo.len(),
                found: hi.len(),
            });
        }
        let mut points = vec![Vec::new()];
        for (&a, &b) in lo.iter().zip(hi) {
            points = points
                .into_iter()
                .flat_map(|p| {
                    (a..=b).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        Self::new(points)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        self.points.iter().all(|p| {
            let neg: Vec<i64> = p.iter().map(|x| -x).collect();
            self.contains(&neg)
        })
    }

    pub fn require_symmetric(&self) -> Result<(), SpectrumError> {
        if self.is_centrally_symmetric() {
            Ok(())
        } else {
            Err(SpectrumError::NotSymmetric)
        }
    }

    /// Largest coordinate magnitude over all points.
    pub fn max_abs_coordinate(&self) -> u64 {
        self.points
            .iter()
            .flat_map(|p| p.iter().map(|x| x.unsigned_abs()))
            .max()
            .unwrap_or(0)
    }

    /// One representative of each `±λ` pair: the vectors whose first nonzero
    /// coordinate is positive.
    pub fn half(&self) -> impl Iterator<Item = &[i64]> + '_ {
        self.points.iter().map(Vec::as_slice).filter(|p| {
            p.iter()
                .find(|&&x| x != 0)
                .is_some_and(|&x| x > 0)
        })
    }

    pub fn contains_origin(&self) -> bool {
        self.contains(&vec![0; self.dim])
    }

    pub fn scaled(&self, k: i64) -> Result<Self, SpectrumError> {
        if k == 0 {
            return Err(SpectrumError::Duplicate("0".into()));
        }
        Self::new(
            self.points
                .iter()
                .map(|p| p.iter().map(|x| x * k).collect())
                .collect(),
        )
    }

    /// Points as real vectors.
    pub fn real_points(&self) -> Vec<Vec<f64>> {
        self.points
            .iter()
            .map(|p| p.iter().map(|&x| x as f64).collect())
            .collect()
    }
}

impl TryFrom<Vec<Vec<i64>>> for SpectrumND {
    type Error = SpectrumError;
    fn try_from(v: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<SpectrumND> for Vec<Vec<i64>> {
    fn from(s: SpectrumND) -> Self {
        s.points
    }
}

impl fmt::Display for SpectrumND {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|p| {
                let c: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                format!("({})", c.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Finite set of complex frequencies in input order; two points closer than
/// [`COMPLEX_POINT_TOL`] are duplicates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct ComplexSpectrum {
    points: Vec<Complex64>,
}

impl ComplexSpectrum {
    pub fn new(points: Vec<Complex64>) -> Result<Self, SpectrumError> {
        if points.is_empty() {
            return Err(SpectrumError::Empty);
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].iter().any(|q| (p - q).norm() <= COMPLEX_POINT_TOL) {
                return Err(SpectrumError::Duplicate(p.to_string()));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                d = d.max((p - q).norm());
            }
        }
        d
    }

    pub fn max_norm(&self) -> f64 {
        self.points.iter().map(|p| p.norm()).fold(0.0, f64::max)
    }
}

impl TryFrom<Vec<[f64; 2]>> for ComplexSpectrum {
    type Error = SpectrumError;
    fn try_from(v: Vec<[f64; 2]>) -> Result<Self, Self::Error> {
        Self::new(v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    }
}

impl From<ComplexSpectrum> for Vec<[f64; 2]> {
    fn from(s: ComplexSpectrum) -> Self {
        s.points.into_iter().map(|p| [p.re, p.im]).collect()
    }
}

/// One element of the orthonormal basis of `Trig(Λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigBasisFn {
    /// `1`
    Constant,
    /// `√2 cos(kθ)`
    Cos(i64),
    /// `√2 sin(kθ)`
    Sin(i64),
}

impl TrigBasisFn {
    pub fn eval(self, theta: f64) -> f64 {
        match self {
            Self::Constant => 1.0,
            Self::Cos(k) => SQRT_2 * (k as f64 * theta).cos(),
            Self::Sin(k) => SQRT_2 * (k as f64 * theta).sin(),
        }
    }

    pub fn derivative(self, theta: f64) -> f64 {
        match self {
            Self::Constant => 0.0,
            Self::Cos(k) => -SQRT_2 * k as f64 * (k as f64 * theta).sin(),
            Self::Sin(k) => SQRT_2 * k as f64 * (k as f64 * theta).cos(),
        }
    }
}

/// Orthonormal basis of `Trig(Λ)` in coordinate order: the constant (when
/// `0 ∈ Λ`), then `cos, sin` for each positive frequency ascending.
pub fn trig_basis(spectrum: &Spectrum1D) -> Vec<TrigBasisFn> {
    let mut basis = Vec::with_capacity(spectrum.len());
    if spectrum.contains(0) {
        basis.push(TrigBasisFn::Constant);
    }
    for k in spectrum.positive() {
        basis.push(TrigBasisFn::Cos(k));
        basis.push(TrigBasisFn::Sin(k));
    }
    basis
}

/// Real trigonometric polynomial `c0 + Σ √2 (α_λ cos λθ + β_λ sin λθ)` over
/// the positive frequencies of a centrally symmetric spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrigPolynomial {
    spectrum: Spectrum1D,
    c0: f64,
    alphas: Vec<f64>,
    betas: Vec<f64>,
}

impl TrigPolynomial {
    pub fn new(
        spectrum: Spectrum1D,
        c0: f64,
        alphas: Vec<f64>,
        betas: Vec<f64>,
    ) -> Result<Self, SpectrumError> {
        spectrum.require_symmetric()?;
        let npos = spectrum.positive().count();
        for v in [&alphas, &betas] {
            if v.len() != npos {
                return Err(SpectrumError::CoefficientCount {
                    expected: npos,
                    found: v.len(),
                });
            }
        }
        if !spectrum.contains(0) && c0 != 0.0 {
            return Err(SpectrumError::StrayConstant);
        }
        Ok(Self {
            spectrum,
            c0,
            alphas,
            betas,
        })
    }

    /// From coordinates in [`trig_basis`] order.
    pub fn from_coordinates(spectrum: Spectrum1D, coords: &[f64]) -> Result<Self, SpectrumError> {
        spectrum.require_symmetric()?;
        if coords.len() != spectrum.len() {
            return Err(SpectrumError::CoefficientCount {
                expected: spectrum.len(),
                found: coords.len(),
            });
        }
        let (c0, rest) = if spectrum.contains(0) {
            (coords[0], &coords[1..])
        } else {
            (0.0, coords)
        };
        let alphas = rest.iter().step_by(2).copied().collect();
        let betas = rest.iter().skip(1).step_by(2).copied().collect();
        Self::new(spectrum, c0, alphas, betas)
    }

    /// From the raw form `a0 + Σ a_λ cos λθ + b_λ sin λθ`.
    pub fn from_raw(
        spectrum: Spectrum1D,
        a0: f64,
        cos_coeffs: &[f64],
        sin_coeffs: &[f64],
    ) -> Result<Self, SpectrumError> {
        let scale = |v: &[f64]| v.iter().map(|x| x / SQRT_2).collect();
        Self::new(spectrum, a0, scale(cos_coeffs), scale(sin_coeffs))
    }

    pub fn spectrum(&self) -> &Spectrum1D {
        &self.spectrum
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn degree(&self) -> u64 {
        self.spectrum.degree()
    }

    /// Coordinates in [`trig_basis`] order.
    pub fn coordinates(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.spectrum.len());
        if self.spectrum.contains(0) {
            out.push(self.c0);
        }
        for (a, b) in self.alphas.iter().zip(&self.betas) {
            out.push(*a);
            out.push(*b);
        }
        out
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut acc = self.c0;
        for ((k, a), b) in self.spectrum.positive().zip(&self.alphas).zip(&self.betas) {
            let (s, c) = (k as f64 * theta).sin_cos();
            acc += SQRT_2 * (a * c + b * s);
        }
        acc
    }

    pub fn derivative(&self, theta: f64) -> f64 {
        let mut acc = 0.0;
        for ((k, a), b) in self.spectrum.positive().zip(&self.alphas).zip(&self.betas) {
            let kf = k as f64;
            let (s, c) = (kf * theta).sin_cos();
            acc += SQRT_2 * kf * (b * c - a * s);
        }
        acc
    }

    pub fn is_identically_zero(&self) -> bool {
        self.c0 == 0.0
            && self.alphas.iter().all(|&a| a == 0.0)
            && self.betas.iter().all(|&b| b == 0.0)
    }

    /// The real Laurent polynomial whose restriction to the unit circle is
    /// this function: `a_0 = c0`, `a_k = (α_k − iβ_k)/√2`, `a_{−k} = conj(a_k)`.
    pub fn to_laurent(&self) -> LaurentPolynomial {
        let mut coeffs = Vec::with_capacity(self.spectrum.len());
        let npos = self.alphas.len();
        for &k in self.spectrum.points() {
            let c = match k.cmp(&0) {
                std::cmp::Ordering::Equal => Complex64::new(self.c0, 0.0),
                std::cmp::Ordering::Greater => {
                    let j = self.positive_index(k);
                    Complex64::new(self.alphas[j], -self.betas[j]) / SQRT_2
                }
                std::cmp::Ordering::Less => {
                    let j = self.positive_index(-k);
                    Complex64::new(self.alphas[j], self.betas[j]) / SQRT_2
                }
            };
            coeffs.push(c);
        }
        debug_assert_eq!(coeffs.len(), 2 * npos + usize::from(self.spectrum.contains(0)));
        LaurentPolynomial {
            spectrum: self.spectrum.clone(),
            coeffs,
        }
    }

    fn positive_index(&self, k: i64) -> usize {
        self.spectrum
            .positive()
            .position(|p| p == k)
            .expect("symmetric spectrum has every positive frequency")
    }
}

/// `Σ a_m z^m` over a finite integer spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaurentPolynomial {
    spectrum: Spectrum1D,
    coeffs: Vec<Complex64>,
}

impl LaurentPolynomial {
    pub fn new(spectrum: Spectrum1D, coeffs: Vec<Complex64>) -> Result<Self, SpectrumError> {
        if coeffs.len() != spectrum.len() {
            return Err(SpectrumError::CoefficientCount {
                expected: spectrum.len(),
                found: coeffs.len(),
            });
        }
        Ok(Self { spectrum, coeffs })
    }

    pub fn spectrum(&self) -> &Spectrum1D {
        &self.spectrum
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `a_k`, zero when `k ∉ Λ`.
    pub fn coefficient(&self, k: i64) -> Complex64 {
        match self.spectrum.points().binary_search(&k) {
            Ok(i) => self.coeffs[i],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.spectrum
            .points()
            .iter()
            .zip(&self.coeffs)
            .map(|(&k, a)| a * z.powi(k as i32))
            .sum()
    }

    /// Whether `a_k = conj(a_{−k})` for every `k`, i.e. the function is real on
    /// the unit circle.
    pub fn is_real_on_circle(&self) -> bool {
        self.spectrum.points().iter().zip(&self.coeffs).all(|(&k, a)| {
            let b = self.coefficient(-k).conj();
            (a - b).norm() <= REALITY_TOL
        })
    }

    /// Ordinary polynomial coefficients (ascending) of `z^{−min Λ}·L(z)`, whose
    /// nonzero roots are the roots of `L`.
    pub fn shifted_polynomial(&self) -> Vec<Complex64> {
        let lo = self.spectrum.points()[0];
        let hi = *self.spectrum.points().last().unwrap();
        let mut out = vec![Complex64::new(0.0, 0.0); (hi - lo) as usize + 1];
        for (&k, a) in self.spectrum.points().iter().zip(&self.coeffs) {
            out[(k - lo) as usize] = *a;
        }
        out
    }
}

/// Exponential sum `f(z) = Σ c_λ e^{conj(λ) z}`, every coefficient nonzero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpSum {
    spectrum: ComplexSpectrum,
    coeffs: Vec<Complex64>,
}

/// Value of an exponential sum together with the scale it was computed at.
///
/// `value · e^{log_scale}` is the true value, and `magnitude · e^{log_scale}`
/// is `Σ |c_λ e^{conj(λ) z}|`, the size of the largest cancellation that can
/// occur at `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledValue {
    pub value: Complex64,
    pub magnitude: f64,
    pub log_scale: f64,
}

impl ExpSum {
    pub fn new(spectrum: ComplexSpectrum, coeffs: Vec<Complex64>) -> Result<Self, SpectrumError> {
        if coeffs.len() != spectrum.len() {
            return Err(SpectrumError::CoefficientCount {
                expected: spectrum.len(),
                found: coeffs.len(),
            });
        }
        if let Some(i) = coeffs.iter().position(|c| *c == Complex64::new(0.0, 0.0)) {
            return Err(SpectrumError::ZeroCoefficient(spectrum.points()[i].to_string()));
        }
        Ok(Self { spectrum, coeffs })
    }

    /// Like [`ExpSum::new`] but drops terms with a zero coefficient.
    pub fn pruned(
        points: Vec<Complex64>,
        coeffs: Vec<Complex64>,
    ) -> Result<Self, SpectrumError> {
        if coeffs.len() != points.len() {
            return Err(SpectrumError::CoefficientCount {
                expected: points.len(),
                found: coeffs.len(),
            });
        }
        let (p, c): (Vec<_>, Vec<_>) = points
            .into_iter()
            .zip(coeffs)
            .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
            .unzip();
        Self::new(ComplexSpectrum::new(p)?, c)
    }

    pub fn spectrum(&self) -> &ComplexSpectrum {
        &self.spectrum
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.spectrum
            .points()
            .iter()
            .zip(&self.coeffs)
            .map(|(l, c)| c * (l.conj() * z).exp())
            .sum()
    }

    /// `f(z)` divided by `e^{max_λ Re(conj(λ) z)}`, which keeps every term at
    /// most `|c_λ|` in size for large `|z|`.
    pub fn eval_scaled(&self, z: Complex64) -> ScaledValue {
        let exps: Vec<Complex64> = self.spectrum.points().iter().map(|l| l.conj() * z).collect();
        let log_scale = exps.iter().map(|e| e.re).fold(f64::NEG_INFINITY, f64::max);
        let mut value = Complex64::new(0.0, 0.0);
        let mut magnitude = 0.0;
        for (e, c) in exps.iter().zip(&self.coeffs) {
            let term = c * (e - log_scale).exp();
            magnitude += term.norm();
            value += term;
        }
        ScaledValue {
            value,
            magnitude,
            log_scale,
        }
    }
}

/// `a_0 + Σ √2 (α cos⟨λ,θ⟩ + β sin⟨λ,θ⟩)` over half of a centrally symmetric
/// lattice spectrum; coordinates on the `L2(Tⁿ)`-orthonormal basis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrigPolynomialND {
    spectrum: SpectrumND,
    c0: f64,
    half: Vec<Vec<i64>>,
    alphas: Vec<f64>,
    betas: Vec<f64>,
}

impl TrigPolynomialND {
    pub fn new(
        spectrum: SpectrumND,
        c0: f64,
        alphas: Vec<f64>,
        betas: Vec<f64>,
    ) -> Result<Self, SpectrumError> {
        spectrum.require_symmetric()?;
        let half: Vec<Vec<i64>> = spectrum.half().map(<[i64]>::to_vec).collect();
        for v in [&alphas, &betas] {
            if v.len() != half.len() {
                return Err(SpectrumError::CoefficientCount {
                    expected: half.len(),
                    found: v.len(),
                });
            }
        }
        if !spectrum.contains_origin() && c0 != 0.0 {
            return Err(SpectrumError::StrayConstant);
        }
        Ok(Self {
            spectrum,
            c0,
            half,
            alphas,
            betas,
        })
    }

    /// From the raw form `a0 + Σ a_λ cos⟨λ,θ⟩ + b_λ sin⟨λ,θ⟩`, with `a_λ, b_λ`
    /// listed in [`SpectrumND::half`] order.
    pub fn from_raw(
        spectrum: SpectrumND,
        a0: f64,
        cos_coeffs: &[f64],
        sin_coeffs: &[f64],
    ) -> Result<Self, SpectrumError> {
        let scale = |v: &[f64]| v.iter().map(|x| x / SQRT_2).collect();
        Self::new(spectrum, a0, scale(cos_coeffs), scale(sin_coeffs))
    }

    pub fn spectrum(&self) -> &SpectrumND {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.spectrum.dim()
    }

    pub fn eval(&self, theta: &[f64]) -> f64 {
        let mut acc = self.c0;
        for ((l, a), b) in self.half.iter().zip(&self.alphas).zip(&self.betas) {
            let phase: f64 = l.iter().zip(theta).map(|(&k, t)| k as f64 * t).sum();
            let (s, c) = phase.sin_cos();
            acc += SQRT_2 * (a * c + b * s);
        }
        acc
    }

    /// Value and gradient.
    pub fn eval_with_gradient(&self, theta: &[f64]) -> (f64, Vec<f64>) {
        let mut acc = self.c0;
        let mut grad = vec![0.0; theta.len()];
        for ((l, a), b) in self.half.iter().zip(&self.alphas).zip(&self.betas) {
            let phase: f64 = l.iter().zip(theta).map(|(&k, t)| k as f64 * t).sum();
            let (s, c) = phase.sin_cos();
            acc += SQRT_2 * (a * c + b * s);
            let d = SQRT_2 * (b * c - a * s);
            for (g, &k) in grad.iter_mut().zip(l) {
                *g += d * k as f64;
            }
        }
        (acc, grad)
    }

    pub fn is_identically_zero(&self) -> bool {
        self.c0 == 0.0
            && self.alphas.iter().all(|&a| a == 0.0)
            && self.betas.iter().all(|&b| b == 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn central_symmetry() {
        assert!(Spectrum1D::range(-3, 3).unwrap().is_centrally_symmetric());
        assert!(!Spectrum1D::new(vec![-1, 2]).unwrap().is_centrally_symmetric());
        let s = SpectrumND::new(vec![vec![1, 0], vec![-1, 0], vec![0, 0]]).unwrap();
        assert!(s.is_centrally_symmetric());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Spectrum1D::symmetric_range(4).degree(), 4);
        assert_eq!(Spectrum1D::new(vec![0]).unwrap().degree(), 0);
        assert_eq!(Spectrum1D::new(vec![-5, -2, 2, 5]).unwrap().degree(), 5);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(Spectrum1D::new(vec![]), Err(SpectrumError::Empty));
        assert!(matches!(
            Spectrum1D::new(vec![1, 2, 1]),
            Err(SpectrumError::Duplicate(_))
        ));
        assert!(matches!(
            SpectrumND::new(vec![vec![1, 0], vec![1]]),
            Err(SpectrumError::DimensionMismatch { index: 1, .. })
        ));
        assert!(matches!(
            ComplexSpectrum::new(vec![c(1.0, 0.0), c(1.0, 1e-13)]),
            Err(SpectrumError::Duplicate(_))
        ));
        assert!(ComplexSpectrum::new(vec![c(1.0, 0.0), c(1.0, 1e-11)]).is_ok());
    }

    #[test]
    fn stored_sorted() {
        let s = Spectrum1D::new(vec![5, -2, 2, -5]).unwrap();
        assert_eq!(s.points(), &[-5, -2, 2, 5]);
    }

    #[test]
    fn cosine_to_laurent() {
        let s = Spectrum1D::new(vec![-1, 1]).unwrap();
        let f = TrigPolynomial::from_raw(s, 0.0, &[1.0], &[0.0]).unwrap();
        let l = f.to_laurent();
        assert!((l.coefficient(1) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((l.coefficient(-1) - c(0.5, 0.0)).norm() < 1e-15);
        for i in 0..16 {
            let t = i as f64 * 0.4;
            let z = Complex64::from_polar(1.0, t);
            assert!(((z + z.inv()) / 2.0 - l.eval(z)).norm() < 1e-14);
            assert!((f.eval(t) - t.cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn sine_to_laurent() {
        let s = Spectrum1D::new(vec![-1, 1]).unwrap();
        let f = TrigPolynomial::from_raw(s, 0.0, &[0.0], &[1.0]).unwrap();
        let l = f.to_laurent();
        let expected = c(0.0, 2.0).inv();
        assert!((l.coefficient(1) - expected).norm() < 1e-15);
        assert!((l.coefficient(-1) - expected.conj()).norm() < 1e-15);
    }

    #[test]
    fn reality_predicate() {
        let s = Spectrum1D::new(vec![-1, 1]).unwrap();
        let real = LaurentPolynomial::new(s.clone(), vec![c(0.5, 0.0), c(0.5, 0.0)]).unwrap();
        assert!(real.is_real_on_circle());
        let not_real = LaurentPolynomial::new(s, vec![c(0.0, 1.0), c(0.0, 1.0)]).unwrap();
        assert!(!not_real.is_real_on_circle());
        // missing a_{-1} reads as zero
        let one_sided =
            LaurentPolynomial::new(Spectrum1D::new(vec![0, 1]).unwrap(), vec![c(1.0, 0.0), c(1.0, 0.0)])
                .unwrap();
        assert!(!one_sided.is_real_on_circle());
    }

    #[test]
    fn trig_requires_symmetry() {
        let s = Spectrum1D::new(vec![-1, 2]).unwrap();
        assert_eq!(
            TrigPolynomial::new(s, 0.0, vec![1.0], vec![1.0]),
            Err(SpectrumError::NotSymmetric)
        );
        let s = Spectrum1D::new(vec![-1, 1]).unwrap();
        assert_eq!(
            TrigPolynomial::new(s, 1.0, vec![1.0], vec![1.0]),
            Err(SpectrumError::StrayConstant)
        );
    }

    #[test]
    fn coordinates_round_trip_and_derivative() {
        let s = Spectrum1D::new(vec![-3, -1, 0, 1, 3]).unwrap();
        let coords = [0.3, -1.0, 2.0, 0.5, -0.25];
        let f = TrigPolynomial::from_coordinates(s.clone(), &coords).unwrap();
        assert_eq!(f.coordinates(), coords);
        let basis = trig_basis(&s);
        let h = 1e-6;
        for i in 0..20 {
            let t = i as f64 * 0.3;
            let direct: f64 = basis.iter().zip(&coords).map(|(b, x)| b.eval(t) * x).sum();
            assert!((direct - f.eval(t)).abs() < 1e-13);
            let fd = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
            assert!((fd - f.derivative(t)).abs() < 1e-7);
        }
    }

    #[test]
    fn expsum_conjugates_exponent() {
        // spectrum {-2πi} evaluates e^{2πiz}
        let s = ComplexSpectrum::new(vec![c(0.0, 0.0), c(0.0, -2.0 * PI)]).unwrap();
        let f = ExpSum::new(s, vec![c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        for k in -3..=3 {
            assert!(f.eval(c(k as f64, 0.0)).norm() < 1e-12);
        }
        assert!(f.eval(c(0.5, 0.0)).norm() > 1.0);
        let z = c(3.0, -40.0);
        let sv = f.eval_scaled(z);
        let direct = f.eval(z);
        assert!((sv.value * sv.log_scale.exp() - direct).norm() < 1e-9 * direct.norm());
    }

    #[test]
    fn expsum_rejects_zero_coefficient() {
        let s = ComplexSpectrum::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(
            ExpSum::new(s, vec![c(0.0, 0.0), c(1.0, 0.0)]),
            Err(SpectrumError::ZeroCoefficient(_))
        ));
        let f = ExpSum::pruned(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(f.spectrum().len(), 1);
    }

    #[test]
    fn half_spectrum() {
        let s = SpectrumND::integer_box(&[-1, -1], &[1, 1]).unwrap();
        assert_eq!(s.len(), 9);
        let half: Vec<&[i64]> = s.half().collect();
        assert_eq!(half.len(), 4);
        assert!(half.iter().all(|p| !half.contains(&&*p.iter().map(|x| -x).collect::<Vec<_>>())));
    }

    #[test]
    fn nd_gradient_matches_finite_difference() {
        let s = SpectrumND::integer_box(&[-1, -2], &[1, 2]).unwrap();
        let nh = s.half().count();
        let alphas: Vec<f64> = (0..nh).map(|i| (i as f64 * 0.7).sin()).collect();
        let betas: Vec<f64> = (0..nh).map(|i| (i as f64 * 1.3).cos()).collect();
        let f = TrigPolynomialND::new(s, 0.4, alphas, betas).unwrap();
        let t = [0.7, -1.9];
        let (v, g) = f.eval_with_gradient(&t);
        assert!((v - f.eval(&t)).abs() < 1e-14);
        let h = 1e-6;
        for j in 0..2 {
            let mut tp = t;
            let mut tm = t;
            tp[j] += h;
            tm[j] -= h;
            let fd = (f.eval(&tp) - f.eval(&tm)) / (2.0 * h);
            assert!((fd - g[j]).abs() < 1e-7);
        }
    }
}
