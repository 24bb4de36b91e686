//! Seeded Monte Carlo experiments: sample, count, aggregate, compare with the
//! closed-form prediction.
//!
//! Trial `i` draws everything from the stream `(seed, i)`, so a report depends
//! only on the configuration, never on the number of workers.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use crate::ensembles::{
    sample_expsum, sample_kac, sample_kostlan, sample_trig, sample_trig_system, standard_normal_vec,
    RngStream, SampleError,
};
use crate::geometry::{
    kappa_curve, kappa_length, polygon_area, polygon_perimeter, pseudovolume, ComplexPolytope,
    FaceTerm, GeometryError, Polygon2D, SphericalCurve, DEFAULT_ANGLE_SAMPLES,
};
use crate::predictors::{
    expsum_slope, kac_asymptotic, nd_expected, nd_expected_mixed, trig_expected, PredictError,
    SlopeConvention,
};
use crate::spectra::{ComplexSpectrum, Spectrum1D, SpectrumND};
use crate::zerocount::{
    circle_zeros_count, disk_zeros_count, hyperplane_curve_intersections, real_roots_count,
    torus_common_zeros_count, CountError, CountResult,
};

/// Largest tolerated fraction of uncertified trials.
pub const MAX_DISCARD_RATE: f64 = 0.001;
/// Kostlan means also pass within this relative distance of `√m`.
pub const KOSTLAN_REL_TOL: f64 = 0.02;
pub const DEFAULT_RADII: [f64; 8] = [5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0];

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("trial count must be positive")]
    NoTrials,
    #[error("radii must be positive and strictly increasing")]
    Radii,
    #[error("slope fit needs at least 4 radii, got {0}")]
    TooFewRadii(usize),
    #[error("radii and counts differ in length ({radii} vs {counts})")]
    LengthMismatch { radii: usize, counts: usize },
    #[error("counts decrease between radius {r0} and {r1}: counting failure")]
    NotMonotone { r0: f64, r1: f64 },
    #[error("{discarded} of {trials} trials uncertified (cap 0.1%); first: {examples}")]
    DiscardRate {
        discarded: usize,
        trials: usize,
        examples: String,
    },
    #[error("invalid curve: {0}")]
    Curve(String),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error(transparent)]
    Predict(#[from] PredictError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Curve sliced by random hyperplanes in a Crofton experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "curve", rename_all = "snake_case")]
pub enum CroftonCurve {
    GreatCircle { dim: usize },
    Kappa { spectrum: Spectrum1D },
}

impl CroftonCurve {
    fn build(&self) -> Result<SphericalCurve, HarnessError> {
        match self {
            CroftonCurve::GreatCircle { dim } => SphericalCurve::great_circle(*dim),
            CroftonCurve::Kappa { spectrum } => kappa_curve(spectrum),
        }
        .map_err(|e| HarnessError::Curve(e.to_string()))
    }

    fn length(&self) -> Result<f64, HarnessError> {
        Ok(match self {
            CroftonCurve::GreatCircle { .. } => 2.0 * PI,
            CroftonCurve::Kappa { spectrum } => kappa_length(spectrum)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExperimentKind {
    /// Real roots of Kac polynomials of degree `m`.
    Kac { m: u32 },
    /// Real roots of Kostlan polynomials of degree `m`.
    Kostlan { m: u32 },
    /// Zeros on the circle of a random element of `Trig(Λ)`.
    Trig1d { spectrum: Spectrum1D },
    /// Common zeros on `T²` of two independent equations with spectrum `Λ`.
    Trig2d { spectrum: SpectrumND },
    /// Common zeros on `T²` of equations with spectra `Λ₁`, `Λ₂`.
    Trig2dMixed { first: SpectrumND, second: SpectrumND },
    /// Hyperplane sections of a spherical curve against `length/π`.
    Crofton(CroftonCurve),
    /// Zero-count growth of random exponential sums, fitted over `radii`.
    Expsum { spectrum: ComplexSpectrum },
    /// Monte Carlo pseudovolume of a polytope.
    Pvol { polytope: ComplexPolytope },
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Kac { .. } => "kac",
            ExperimentKind::Kostlan { .. } => "kostlan",
            ExperimentKind::Trig1d { .. } => "trig1d",
            ExperimentKind::Trig2d { .. } => "trig2d",
            ExperimentKind::Trig2dMixed { .. } => "trig2d_mixed",
            ExperimentKind::Crofton(_) => "crofton",
            ExperimentKind::Expsum { .. } => "expsum",
            ExperimentKind::Pvol { .. } => "pvol",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub kind: ExperimentKind,
    pub trials: usize,
    pub seed: u64,
    /// Disk radii of expsum experiments.
    pub radii: Vec<f64>,
    pub z_max: f64,
    /// Relative tolerance of fit-type verdicts.
    pub slack: f64,
    pub convention: SlopeConvention,
    pub angle_samples: usize,
    /// Worker threads; `0` means one per available core. Never affects results.
    #[serde(skip)]
    pub workers: usize,
    /// Keep per-trial records in the report.
    #[serde(skip)]
    pub per_trial: bool,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind) -> Self {
        Self {
            kind,
            trials: 1000,
            seed: 0,
            radii: DEFAULT_RADII.to_vec(),
            z_max: 3.0,
            slack: 0.05,
            convention: SlopeConvention::Perimeter,
            angle_samples: DEFAULT_ANGLE_SAMPLES,
            workers: 1,
            per_trial: false,
        }
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn radii(mut self, radii: Vec<f64>) -> Self {
        self.radii = radii;
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn per_trial(mut self, on: bool) -> Self {
        self.per_trial = on;
        self
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.trials == 0 {
            return Err(HarnessError::NoTrials);
        }
        if let ExperimentKind::Expsum { .. } = self.kind {
            let increasing = self.radii.windows(2).all(|w| w[0] < w[1]);
            if !increasing || self.radii.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
                return Err(HarnessError::Radii);
            }
            if self.radii.len() < 4 {
                return Err(HarnessError::TooFewRadii(self.radii.len()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// No finite-size prediction to test against (asymptotic statements).
    Informational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    /// Zero count, or fitted slope for expsum trials; `None` when discarded.
    pub value: Option<f64>,
    pub certified: bool,
    /// Expsum only: `N(f, r)` per radius.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// `max |fit − data|`.
    pub residual: f64,
}

/// Expsum summary: the mean staircase, its fit, and both slope readings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpsumSummary {
    pub radii: Vec<f64>,
    pub mean_counts: Vec<f64>,
    pub fit: SlopeFit,
    pub predicted_perimeter: f64,
    pub predicted_semiperimeter: f64,
    pub relative_residual_perimeter: f64,
    pub relative_residual_semiperimeter: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PvolSummary {
    pub pseudovolume: f64,
    pub stderr: f64,
    pub leading_coefficient: f64,
    pub faces: Vec<FaceTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub empirical_mean: f64,
    pub empirical_stderr: f64,
    /// Prediction under the configured convention; `null` when none exists.
    pub predicted: f64,
    pub z_score: f64,
    pub discarded_trials: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expsum: Option<ExpsumSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pvol: Option<PvolSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_trial: Option<Vec<TrialRecord>>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> Result<String, HarnessError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One CSV row per trial; expsum rows carry one `n_r<radius>` column per
    /// radius.
    pub fn write_trials_csv<W: Write>(&self, records: &[TrialRecord], out: W) -> Result<(), HarnessError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["trial".to_string(), "value".to_string(), "certified".to_string()];
        header.extend(self.config.radii_for_csv().iter().map(|r| format!("n_r{r}")));
        header.push("error".to_string());
        w.write_record(&header)?;
        let ncounts = header.len() - 4;
        for rec in records {
            let mut row = vec![
                rec.trial.to_string(),
                rec.value.map(fmt_full).unwrap_or_default(),
                rec.certified.to_string(),
            ];
            for k in 0..ncounts {
                row.push(rec.counts.get(k).map(|c| c.to_string()).unwrap_or_default());
            }
            row.push(rec.error.clone().unwrap_or_default());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// `(r, N, fit)` rows of the mean expsum staircase; empty for other kinds.
    pub fn write_curve_csv<W: Write>(&self, out: W) -> Result<(), HarnessError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["r", "N", "fit"])?;
        if let Some(s) = &self.expsum {
            for (r, n) in s.radii.iter().zip(&s.mean_counts) {
                let fit = s.fit.intercept + s.fit.slope * r;
                w.write_record([fmt_full(*r), fmt_full(*n), fmt_full(fit)])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

impl ExperimentConfig {
    fn radii_for_csv(&self) -> &[f64] {
        match self.kind {
            ExperimentKind::Expsum { .. } => &self.radii,
            _ => &[],
        }
    }
}

/// Shortest representation that round-trips.
fn fmt_full(x: f64) -> String {
    format!("{x:?}")
}

/// Sample mean and `std/√n` (sample standard deviation, `n − 1` divisor),
/// summed in slice order. `NaN` for an empty slice; stderr 0 for one value.
pub fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    (mean, (ss / (n - 1) as f64).sqrt() / (n as f64).sqrt())
}

/// `(mean − predicted)/stderr`. A zero stderr gives 0 when the two agree to
/// `1e-9` relative and `±∞` otherwise.
pub fn z_score(mean: f64, stderr: f64, predicted: f64) -> f64 {
    let diff = mean - predicted;
    if stderr > 0.0 {
        diff / stderr
    } else if diff.abs() <= 1e-9 * predicted.abs().max(1.0) {
        0.0
    } else {
        diff.signum() * f64::INFINITY
    }
}

/// Least-squares line through `(r, N(f, r))`.
pub fn slope_fit(radii: &[f64], counts: &[f64]) -> Result<SlopeFit, HarnessError> {
    if radii.len() != counts.len() {
        return Err(HarnessError::LengthMismatch {
            radii: radii.len(),
            counts: counts.len(),
        });
    }
    if radii.len() < 4 {
        return Err(HarnessError::TooFewRadii(radii.len()));
    }
    for k in 1..radii.len() {
        if counts[k] < counts[k - 1] {
            return Err(HarnessError::NotMonotone {
                r0: radii[k - 1],
                r1: radii[k],
            });
        }
    }
    let n = radii.len() as f64;
    let mr = radii.iter().sum::<f64>() / n;
    let mc = counts.iter().sum::<f64>() / n;
    let sxy: f64 = radii.iter().zip(counts).map(|(r, c)| (r - mr) * (c - mc)).sum();
    let sxx: f64 = radii.iter().map(|r| (r - mr).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mc - slope * mr;
    let residual = radii
        .iter()
        .zip(counts)
        .map(|(r, c)| (intercept + slope * r - c).abs())
        .fold(0.0, f64::max);
    Ok(SlopeFit {
        slope,
        intercept,
        residual,
    })
}

enum Trial {
    Counted(f64, Vec<usize>),
    Discarded(String),
}

fn from_count(r: Result<CountResult, CountError>) -> Trial {
    match r {
        Ok(c) if c.certified => Trial::Counted(c.count as f64, Vec::new()),
        Ok(c) => Trial::Discarded(format!("uncertified count {}", c.count)),
        Err(e) => Trial::Discarded(e.to_string()),
    }
}

/// Per-experiment state shared by all trials.
enum Plan {
    Kac(u32),
    Kostlan(u32),
    Trig1d(Spectrum1D),
    Trig2d(Vec<SpectrumND>),
    Crofton(SphericalCurve),
    Expsum(ComplexSpectrum, Vec<f64>),
}

impl Plan {
    fn run(&self, seed: u64, i: u64) -> Result<Trial, HarnessError> {
        let mut rng = RngStream::new(seed, i).rng();
        Ok(match self {
            Plan::Kac(m) => from_count(real_roots_count(&sample_kac(*m, &mut rng)?)),
            Plan::Kostlan(m) => from_count(real_roots_count(&sample_kostlan(*m, &mut rng)?)),
            Plan::Trig1d(s) => from_count(circle_zeros_count(&sample_trig(s, &mut rng)?)),
            Plan::Trig2d(spectra) => {
                let sys = sample_trig_system(spectra, &mut rng)?;
                from_count(torus_common_zeros_count(&sys[0], &sys[1]))
            }
            Plan::Crofton(curve) => {
                let xi = standard_normal_vec(curve.dim(), &mut rng);
                from_count(hyperplane_curve_intersections(curve, &xi))
            }
            Plan::Expsum(s, radii) => {
                let f = sample_expsum(s, &mut rng)?;
                let mut counts = Vec::with_capacity(radii.len());
                for &r in radii {
                    match disk_zeros_count(&f, r) {
                        Ok(c) if c.certified => counts.push(c.count),
                        Ok(c) => return Ok(Trial::Discarded(format!("uncertified count {} at r = {r}", c.count))),
                        Err(e) => return Ok(Trial::Discarded(format!("{e} at r = {r}"))),
                    }
                }
                let as_f: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
                match slope_fit(radii, &as_f) {
                    Ok(fit) => Trial::Counted(fit.slope, counts),
                    Err(e) => Trial::Discarded(e.to_string()),
                }
            }
        })
    }
}

fn run_trials(plan: &Plan, cfg: &ExperimentConfig) -> Result<Vec<Trial>, HarnessError> {
    let seed = cfg.seed;
    let indices = 0..cfg.trials as u64;
    #[cfg(feature = "parallel")]
    {
        if cfg.workers != 1 {
            use rayon::prelude::*;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.workers)
                .build()
                .map_err(|e| HarnessError::Pool(e.to_string()))?;
            return pool.install(|| indices.into_par_iter().map(|i| plan.run(seed, i)).collect());
        }
    }
    indices.map(|i| plan.run(seed, i)).collect()
}

/// Runs the experiment described by `cfg`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, HarnessError> {
    cfg.validate()?;
    let (plan, predicted) = match &cfg.kind {
        ExperimentKind::Kac { m } => (Plan::Kac(*m), kac_asymptotic(u64::from(*m))?),
        ExperimentKind::Kostlan { m } => (Plan::Kostlan(*m), f64::from(*m).sqrt()),
        ExperimentKind::Trig1d { spectrum } => (Plan::Trig1d(spectrum.clone()), trig_expected(spectrum)?),
        ExperimentKind::Trig2d { spectrum } => {
            if spectrum.dim() != 2 {
                return Err(PredictError::Dimension {
                    expected: 2,
                    found: spectrum.dim(),
                }
                .into());
            }
            (Plan::Trig2d(vec![spectrum.clone(), spectrum.clone()]), nd_expected(spectrum)?)
        }
        ExperimentKind::Trig2dMixed { first, second } => (
            Plan::Trig2d(vec![first.clone(), second.clone()]),
            nd_expected_mixed(first, second)?,
        ),
        ExperimentKind::Crofton(c) => (Plan::Crofton(c.build()?), c.length()? / PI),
        ExperimentKind::Expsum { spectrum } => (
            Plan::Expsum(spectrum.clone(), cfg.radii.clone()),
            expsum_slope(spectrum, cfg.convention)?,
        ),
        ExperimentKind::Pvol { polytope } => return run_pvol(cfg, polytope),
    };

    let trials = run_trials(&plan, cfg)?;
    let mut values = Vec::with_capacity(trials.len());
    let mut records = Vec::new();
    let mut failures = Vec::new();
    let mut staircase = match &cfg.kind {
        ExperimentKind::Expsum { .. } => vec![0.0; cfg.radii.len()],
        _ => Vec::new(),
    };
    for (i, t) in trials.into_iter().enumerate() {
        let rec = match t {
            Trial::Counted(v, counts) => {
                values.push(v);
                for (acc, c) in staircase.iter_mut().zip(&counts) {
                    *acc += *c as f64;
                }
                TrialRecord {
                    trial: i as u64,
                    value: Some(v),
                    certified: true,
                    counts,
                    error: None,
                }
            }
            Trial::Discarded(reason) => {
                failures.push(format!("trial {i}: {reason}"));
                TrialRecord {
                    trial: i as u64,
                    value: None,
                    certified: false,
                    counts: Vec::new(),
                    error: Some(reason),
                }
            }
        };
        if cfg.per_trial {
            records.push(rec);
        }
    }
    let discarded = failures.len();
    if discarded as f64 > MAX_DISCARD_RATE * cfg.trials as f64 {
        return Err(HarnessError::DiscardRate {
            discarded,
            trials: cfg.trials,
            examples: failures.iter().take(5).cloned().collect::<Vec<_>>().join("; "),
        });
    }
    let (mean, stderr) = mean_and_stderr(&values);
    let z = z_score(mean, stderr, predicted);

    let mut expsum = None;
    let verdict = match &cfg.kind {
        ExperimentKind::Kac { .. } => Verdict::Informational,
        ExperimentKind::Kostlan { .. } => {
            let rel = ((mean - predicted) / predicted).abs();
            pass_if(z.abs() <= cfg.z_max || rel <= KOSTLAN_REL_TOL)
        }
        ExperimentKind::Expsum { spectrum } => {
            let kept = values.len() as f64;
            let mean_counts: Vec<f64> = staircase.iter().map(|s| s / kept).collect();
            let fit = slope_fit(&cfg.radii, &mean_counts)?;
            let per = expsum_slope(spectrum, SlopeConvention::Perimeter)?;
            let semi = expsum_slope(spectrum, SlopeConvention::Semiperimeter)?;
            let summary = ExpsumSummary {
                radii: cfg.radii.clone(),
                mean_counts,
                fit,
                predicted_perimeter: per,
                predicted_semiperimeter: semi,
                relative_residual_perimeter: ((mean - per) / per).abs(),
                relative_residual_semiperimeter: ((mean - semi) / semi).abs(),
            };
            let rel = ((mean - predicted) / predicted).abs();
            expsum = Some(summary);
            pass_if(rel <= cfg.slack)
        }
        _ => pass_if(z.abs() <= cfg.z_max),
    };
    Ok(ExperimentReport {
        config: cfg.clone(),
        empirical_mean: mean,
        empirical_stderr: stderr,
        predicted,
        z_score: z,
        discarded_trials: discarded,
        verdict,
        expsum,
        pvol: None,
        per_trial: cfg.per_trial.then_some(records),
    })
}

fn pass_if(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Known pseudovolume: the semiperimeter of the hull for `n = 1`, the area for
/// a polytope inside `R² ⊂ C²`.
pub fn pvol_reference(p: &ComplexPolytope) -> Option<f64> {
    let planar = |coord: usize| -> Polygon2D {
        let pts: Vec<[f64; 2]> = p
            .real_vertices()
            .iter()
            .map(|v| [v[coord], v[coord + 1]])
            .collect();
        crate::geometry::convex_hull_2d(&pts)
    };
    match p.complex_dim() {
        1 => Some(0.5 * polygon_perimeter(&planar(0))),
        2 if p.is_real() => {
            let pts: Vec<[f64; 2]> = p.real_vertices().iter().map(|v| [v[0], v[2]]).collect();
            Some(polygon_area(&crate::geometry::convex_hull_2d(&pts)))
        }
        _ => None,
    }
}

fn run_pvol(cfg: &ExperimentConfig, p: &ComplexPolytope) -> Result<ExperimentReport, HarnessError> {
    let est = pseudovolume(p, cfg.angle_samples, cfg.seed)?;
    let scale = (2.0 * PI).powi(p.complex_dim() as i32);
    let (predicted, z, verdict) = match pvol_reference(p) {
        Some(reference) => {
            let z = z_score(est.value, est.stderr, reference);
            (reference, z, pass_if(z.abs() <= cfg.z_max))
        }
        None => (f64::NAN, f64::NAN, Verdict::Informational),
    };
    Ok(ExperimentReport {
        config: cfg.clone(),
        empirical_mean: est.value,
        empirical_stderr: est.stderr,
        predicted,
        z_score: z,
        discarded_trials: 0,
        verdict,
        expsum: None,
        pvol: Some(PvolSummary {
            pseudovolume: est.value,
            stderr: est.stderr,
            leading_coefficient: est.value / scale,
            faces: est.faces,
        }),
        per_trial: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn exact_line_fit() {
        let radii = [5.0, 10.0, 15.0, 20.0];
        let counts: Vec<f64> = radii.iter().map(|r| 2.0 * r + 1.0).collect();
        let fit = slope_fit(&radii, &counts).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn fit_rejects_bad_input() {
        assert!(matches!(slope_fit(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]), Err(HarnessError::TooFewRadii(3))));
        assert!(matches!(
            slope_fit(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]),
            Err(HarnessError::NotMonotone { .. })
        ));
    }

    #[test]
    fn stderr_formula() {
        let (m, s) = mean_and_stderr(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((s - (5.0_f64 / 3.0).sqrt() / 2.0).abs() < 1e-15);
        assert_eq!(mean_and_stderr(&[7.0]), (7.0, 0.0));
        assert_eq!(z_score(4.0, 0.0, 4.0), 0.0);
        assert_eq!(z_score(5.0, 0.0, 4.0), f64::INFINITY);
    }

    #[test]
    fn deterministic_pair_spectrum() {
        let s = Spectrum1D::new(vec![-2, 2]).unwrap();
        let cfg = ExperimentConfig::new(ExperimentKind::Trig1d { spectrum: s }).trials(50).seed(3).per_trial(true);
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.empirical_mean, 4.0);
        assert_eq!(r.empirical_stderr, 0.0);
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.per_trial.unwrap().iter().all(|t| t.value == Some(4.0)));
    }

    #[test]
    fn integer_zeros_slope() {
        let c = |re, im| Complex64::new(re, im);
        let s = ComplexSpectrum::new(vec![c(0.0, 0.0), c(0.0, 2.0 * PI)]).unwrap();
        let radii: Vec<f64> = (0..8).map(|k| 5.5 + 5.0 * k as f64).collect();
        let f = crate::spectra::ExpSum::new(s, vec![c(-1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let counts: Vec<f64> = radii
            .iter()
            .map(|&r| disk_zeros_count(&f, r).unwrap().count as f64)
            .collect();
        for (r, n) in radii.iter().zip(&counts) {
            assert_eq!(*n, 2.0 * r.floor() + 1.0);
        }
        let fit = slope_fit(&radii, &counts).unwrap();
        assert!((fit.slope - 2.0).abs() < 0.02);
    }

    #[test]
    fn report_json_keys() {
        let s = Spectrum1D::symmetric_range(1);
        let cfg = ExperimentConfig::new(ExperimentKind::Trig1d { spectrum: s }).trials(20);
        let r = run_experiment(&cfg).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        for key in ["empirical_mean", "empirical_stderr", "predicted", "z_score", "discarded_trials", "verdict"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["config"]["kind"], "trig1d");
        assert_eq!(v["config"]["spectrum"], serde_json::json!([-1, 0, 1]));
    }

    #[test]
    fn invalid_configs() {
        let s = Spectrum1D::symmetric_range(1);
        assert!(matches!(
            run_experiment(&ExperimentConfig::new(ExperimentKind::Trig1d { spectrum: s }).trials(0)),
            Err(HarnessError::NoTrials)
        ));
        let c = |re, im| Complex64::new(re, im);
        let e = ComplexSpectrum::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let cfg = ExperimentConfig::new(ExperimentKind::Expsum { spectrum: e }).radii(vec![5.0, 4.0, 6.0, 7.0]);
        assert!(matches!(run_experiment(&cfg), Err(HarnessError::Radii)));
    }

    #[test]
    fn curve_csv_rows() {
        let c = |re, im| Complex64::new(re, im);
        let e = ComplexSpectrum::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let cfg = ExperimentConfig::new(ExperimentKind::Expsum { spectrum: e }).trials(2).per_trial(true);
        let r = run_experiment(&cfg).unwrap();
        let mut buf = Vec::new();
        r.write_curve_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + DEFAULT_RADII.len());
        let mut buf = Vec::new();
        r.write_trials_csv(r.per_trial.as_ref().unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("trial,value,certified,n_r5,"));
        assert_eq!(text.lines().count(), 3);
    }
}
