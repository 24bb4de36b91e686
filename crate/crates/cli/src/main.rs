use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use realzeros::ensembles::{sample_expsum, sample_kac, sample_kostlan, sample_trig, sample_trig_system, RealPolynomial, RngStream};
use realzeros::geometry::{
    ellipsoid_volume, kappa_length, kappa_speed, mixed_area, newton_ellipsoid, polygon_area, polygon_perimeter,
    pseudovolume, ComplexPolytope, Polygon2D, DEFAULT_ANGLE_SAMPLES,
};
use realzeros::harness::{
    run_experiment, CroftonCurve, ExperimentConfig, ExperimentKind, ExperimentReport, Verdict, DEFAULT_RADII,
};
use realzeros::predictors::{
    expsum_slope, hull_volume, kac_asymptotic, nd_expected, nd_expected_mixed, nd_prob, pvol_leading_coefficient,
    trig_expected, trig_prob, SlopeConvention,
};
use realzeros::spectra::{
    parse_complex_list, parse_real_list, parse_spectrum_1d, parse_spectrum_nd, ComplexSpectrum, ExpSum,
    Spectrum1D, SpectrumError, SpectrumND, TrigPolynomial, TrigPolynomialND,
};
use realzeros::zerocount::{circle_zeros, disk_zeros_count, real_roots_count, torus_common_zeros_count, CountResult};

#[derive(Parser)]
#[command(name = "realzeros", version, about = "Expected and counted real zeros of random polynomials, trigonometric polynomials and exponential sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form predictions for a spectrum
    Predict(PredictArgs),
    /// Count zeros of one function, given or sampled
    Count(CountArgs),
    /// Newton ellipsoids, hulls, mixed areas, curve lengths
    Geom(GeomArgs),
    /// Seeded Monte Carlo experiment against the prediction
    Experiment(ExperimentArgs),
    /// Pseudovolume of a polytope in C^n (n <= 2)
    Pvol(PvolArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PredictKind {
    Kac,
    Kostlan,
    Trig1d,
    Trig2d,
    Trig2dMixed,
    Expsum,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountKind {
    /// Real roots of a real polynomial (coefficients ascending)
    Poly,
    Kac,
    Kostlan,
    Trig1d,
    Trig2d,
    Expsum,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeomKind {
    /// Newton ellipsoid of a lattice spectrum
    Ellipsoid,
    /// Mixed area of two planar Newton ellipses
    Mixed,
    /// Speed and length of the kappa curve of a 1-D spectrum
    Kappa,
    /// Newton polygon of a complex spectrum
    Hull,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentKindArg {
    Kac,
    Kostlan,
    Trig1d,
    Trig2d,
    Trig2dMixed,
    Crofton,
    Expsum,
    Pvol,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Perimeter,
    Semiperimeter,
}

impl From<ConventionArg> for SlopeConvention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Perimeter => SlopeConvention::Perimeter,
            ConventionArg::Semiperimeter => SlopeConvention::Semiperimeter,
        }
    }
}

#[derive(Args)]
struct SpectrumOpts {
    /// Spectrum: "-3..3", "-5,-2,2,5", "(-1,0);(1,0);(0,0)", "(-1,-1)..(1,1)" or "0, 1, 1i, 2+3i"; repeat for two equations [default: none]
    #[arg(long, allow_hyphen_values = true)]
    spectrum: Vec<String>,
    /// Polynomial degree for kac/kostlan [default: none]
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Args)]
struct OutOpts {
    /// Write the machine-readable JSON report here [default: none]
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(value_enum)]
    kind: PredictKind,
    #[command(flatten)]
    spectrum: SpectrumOpts,
    /// Reading of the boundary length for exponential sums
    #[arg(long, value_enum, default_value = "perimeter")]
    convention: ConventionArg,
    #[command(flatten)]
    out: OutOpts,
}

#[derive(Args)]
struct CountArgs {
    #[arg(value_enum)]
    kind: CountKind,
    #[command(flatten)]
    spectrum: SpectrumOpts,
    /// Coefficients; sampled from --seed when omitted. poly: ascending real; trig1d: a0 (if 0 in the spectrum) then a_k, b_k per positive k; expsum: one complex per frequency [default: none]
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Disk radius for expsum [default: none]
    #[arg(long)]
    radius: Option<f64>,
    /// Seed for sampled functions [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    out: OutOpts,
}

#[derive(Args)]
struct GeomArgs {
    #[arg(value_enum)]
    kind: GeomKind,
    #[command(flatten)]
    spectrum: SpectrumOpts,
    #[command(flatten)]
    out: OutOpts,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(value_enum)]
    kind: ExperimentKindArg,
    #[command(flatten)]
    spectrum: SpectrumOpts,
    /// Number of trials
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Base seed; trial i uses stream (seed, i) [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// Radii for expsum, comma separated [default: 5,10,...,40]
    #[arg(long, alias = "radius")]
    radii: Option<String>,
    /// Ambient dimension of the great circle for crofton without --spectrum
    #[arg(long, default_value_t = 4)]
    dim: usize,
    /// Reading of the boundary length for expsum
    #[arg(long, value_enum, default_value = "perimeter")]
    convention: ConventionArg,
    /// Exterior-angle samples per face for pvol
    #[arg(long, default_value_t = DEFAULT_ANGLE_SAMPLES)]
    angle_samples: usize,
    /// Polytope for pvol: JSON text or a path to a JSON file [default: none]
    #[arg(long)]
    polytope: Option<String>,
    /// Worker threads, 0 = all cores; results do not depend on it
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Verdict threshold on |z|
    #[arg(long, default_value_t = 3.0)]
    z_max: f64,
    /// Relative tolerance of slope fits
    #[arg(long, default_value_t = 0.05)]
    slack: f64,
    /// Write one CSV row per trial here [default: none]
    #[arg(long)]
    per_trial: Option<PathBuf>,
    /// Write the (r, N, fit) staircase of an expsum experiment as CSV here [default: none]
    #[arg(long)]
    emit_curve: Option<PathBuf>,
    #[command(flatten)]
    out: OutOpts,
}

#[derive(Args)]
struct PvolArgs {
    /// Polytope: JSON array of vertices, each a list of [re, im] pairs, or a path to such a file
    polytope: String,
    /// Exterior-angle samples per face
    #[arg(long, default_value_t = DEFAULT_ANGLE_SAMPLES)]
    angle_samples: usize,
    /// Seed of the angle sampler [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    out: OutOpts,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn runtime(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

fn spectrum_error(flag: &str, input: &str, e: SpectrumError) -> Failure {
    match e {
        SpectrumError::Parse { position, message } => usage(format!(
            "invalid {flag} at position {position}: {message}\n  {input}\n  {}^",
            " ".repeat(position)
        )),
        other => usage(format!("invalid {flag} `{input}`: {other}")),
    }
}

fn seed_or_notice(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        eprintln!("notice: no --seed given, using seed 0");
        0
    })
}

fn one_spectrum(opts: &SpectrumOpts) -> Result<&str, Failure> {
    match opts.spectrum.as_slice() {
        [s] => Ok(s),
        [] => Err(usage("--spectrum is required")),
        _ => Err(usage("expected a single --spectrum")),
    }
}

fn two_spectra(opts: &SpectrumOpts) -> Result<(SpectrumND, SpectrumND), Failure> {
    match opts.spectrum.as_slice() {
        [a, b] => Ok((nd(a)?, nd(b)?)),
        _ => Err(usage("expected --spectrum exactly twice")),
    }
}

fn one_d(s: &str) -> Result<Spectrum1D, Failure> {
    parse_spectrum_1d(s).map_err(|e| spectrum_error("--spectrum", s, e))
}

fn nd(s: &str) -> Result<SpectrumND, Failure> {
    parse_spectrum_nd(s).map_err(|e| spectrum_error("--spectrum", s, e))
}

fn complex(s: &str) -> Result<ComplexSpectrum, Failure> {
    let pts = parse_complex_list(s).map_err(|e| spectrum_error("--spectrum", s, e))?;
    ComplexSpectrum::new(pts).map_err(|e| spectrum_error("--spectrum", s, e))
}

fn degree(opts: &SpectrumOpts) -> Result<u32, Failure> {
    opts.m.ok_or_else(|| usage("--m is required"))
}

fn load_polytope(arg: &str) -> Result<ComplexPolytope, Failure> {
    let text = if arg.trim_start().starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| usage(format!("cannot read polytope `{arg}`: {e}")))?
    };
    ComplexPolytope::from_json(&text).map_err(|e| usage(format!("invalid polytope: {e}")))
}

/// Ordered (label, value) rows printed as a table and written as JSON.
#[derive(Default)]
struct Rows(Vec<(String, Value)>);

impl Rows {
    fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.0.push((key.to_string(), value.into()));
    }

    fn count(&mut self, prefix: &str, r: &CountResult) {
        self.push(prefix, r.count);
        self.push(&format!("{prefix}_certified"), r.certified);
    }

    fn print(&self) {
        let width = self.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.0 {
            println!("{k:<width$}  {}", display(v));
        }
    }

    fn json(&self) -> Value {
        Value::Object(self.0.iter().cloned().collect::<Map<_, _>>())
    }
}

fn display(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            if x == x.trunc() && x.abs() < 1e15 {
                format!("{x:.1}")
            } else {
                format!("{x:.6}")
            }
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn write_out(path: &Option<PathBuf>, value: &Value) -> Result<(), Failure> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value).map_err(runtime)?;
        fs::write(p, text + "\n").map_err(|e| runtime(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn predict(a: &PredictArgs) -> Result<Rows, Failure> {
    let mut rows = Rows::default();
    match a.kind {
        PredictKind::Kac => {
            let m = degree(&a.spectrum)?;
            rows.push("asymptotic", kac_asymptotic(m.into()).map_err(|e| usage(e.to_string()))?);
        }
        PredictKind::Kostlan => {
            let m = degree(&a.spectrum)?;
            rows.push("expected", f64::from(m).sqrt());
        }
        PredictKind::Trig1d => {
            let s = one_d(one_spectrum(&a.spectrum)?)?;
            rows.push("expected", trig_expected(&s).map_err(|e| usage(e.to_string()))?);
            rows.push("probability", trig_prob(&s).map_err(|e| usage(e.to_string()))?);
        }
        PredictKind::Trig2d => {
            let s = nd(one_spectrum(&a.spectrum)?)?;
            rows.push("expected", nd_expected(&s).map_err(|e| usage(e.to_string()))?);
            rows.push("probability", nd_prob(&s).map_err(|e| usage(e.to_string()))?);
        }
        PredictKind::Trig2dMixed => {
            let (s1, s2) = two_spectra(&a.spectrum)?;
            rows.push("expected", nd_expected_mixed(&s1, &s2).map_err(|e| usage(e.to_string()))?);
        }
        PredictKind::Expsum => {
            let s = complex(one_spectrum(&a.spectrum)?)?;
            let selected: SlopeConvention = a.convention.into();
            rows.push("slope", expsum_slope(&s, selected).map_err(|e| usage(e.to_string()))?);
            for c in SlopeConvention::ALL {
                rows.push(&format!("slope_{}", c.name()), expsum_slope(&s, c).map_err(|e| usage(e.to_string()))?);
            }
        }
    }
    Ok(rows)
}

fn real_coeffs(text: &str) -> Result<Vec<f64>, Failure> {
    parse_real_list(text).map_err(|e| spectrum_error("--coeffs", text, e))
}

fn trig_from_raw(s: Spectrum1D, coeffs: &[f64]) -> Result<TrigPolynomial, Failure> {
    let has0 = s.contains(0);
    let npos = s.positive().count();
    let expected = usize::from(has0) + 2 * npos;
    if coeffs.len() != expected {
        return Err(usage(format!("--coeffs: expected {expected} values, got {}", coeffs.len())));
    }
    let (a0, rest) = if has0 { (coeffs[0], &coeffs[1..]) } else { (0.0, coeffs) };
    let cos: Vec<f64> = rest.iter().step_by(2).copied().collect();
    let sin: Vec<f64> = rest.iter().skip(1).step_by(2).copied().collect();
    TrigPolynomial::from_raw(s, a0, &cos, &sin).map_err(|e| usage(e.to_string()))
}

fn count(a: &CountArgs) -> Result<Rows, Failure> {
    let mut rows = Rows::default();
    let rng = || RngStream::new(seed_or_notice(a.seed), 0).rng();
    match a.kind {
        CountKind::Poly | CountKind::Kac | CountKind::Kostlan => {
            let p = match (a.kind, &a.coeffs) {
                (CountKind::Poly, Some(c)) => RealPolynomial::new(real_coeffs(c)?),
                (CountKind::Poly, None) => return Err(usage("--coeffs is required")),
                (CountKind::Kac, _) => sample_kac(degree(&a.spectrum)?, &mut rng()).map_err(|e| usage(e.to_string()))?,
                _ => sample_kostlan(degree(&a.spectrum)?, &mut rng()).map_err(|e| usage(e.to_string()))?,
            };
            let r = real_roots_count(&p).map_err(runtime)?;
            rows.count("real_roots", &r);
        }
        CountKind::Trig1d => {
            let s = one_d(one_spectrum(&a.spectrum)?)?;
            let f = match &a.coeffs {
                Some(c) => trig_from_raw(s, &real_coeffs(c)?)?,
                None => sample_trig(&s, &mut rng()).map_err(|e| usage(e.to_string()))?,
            };
            let (r, roots) = circle_zeros(&f).map_err(runtime)?;
            rows.count("zeros", &r);
            rows.push("locations", roots);
        }
        CountKind::Trig2d => {
            let spectra = match a.spectrum.spectrum.len() {
                1 => vec![nd(&a.spectrum.spectrum[0])?; 2],
                2 => {
                    let (x, y) = two_spectra(&a.spectrum)?;
                    vec![x, y]
                }
                _ => return Err(usage("expected --spectrum once or twice")),
            };
            if a.coeffs.is_some() {
                return Err(usage("trig2d counts sampled systems only; omit --coeffs"));
            }
            let sys: Vec<TrigPolynomialND> =
                sample_trig_system(&spectra, &mut rng()).map_err(|e| usage(e.to_string()))?;
            let r = torus_common_zeros_count(&sys[0], &sys[1]).map_err(runtime)?;
            rows.count("common_zeros", &r);
        }
        CountKind::Expsum => {
            let s = complex(one_spectrum(&a.spectrum)?)?;
            let radius = a.radius.ok_or_else(|| usage("--radius is required"))?;
            let f = match &a.coeffs {
                Some(c) => {
                    let coeffs: Vec<Complex64> = parse_complex_list(c).map_err(|e| spectrum_error("--coeffs", c, e))?;
                    ExpSum::new(s, coeffs).map_err(|e| usage(e.to_string()))?
                }
                None => sample_expsum(&s, &mut rng()).map_err(|e| usage(e.to_string()))?,
            };
            let r = disk_zeros_count(&f, radius).map_err(runtime)?;
            rows.count("zeros", &r);
        }
    }
    Ok(rows)
}

fn geom(a: &GeomArgs) -> Result<Rows, Failure> {
    let mut rows = Rows::default();
    match a.kind {
        GeomKind::Ellipsoid => {
            let s = nd(one_spectrum(&a.spectrum)?)?;
            let e = newton_ellipsoid(&s);
            let form: Vec<Vec<f64>> = (0..e.dim()).map(|i| (0..e.dim()).map(|j| e.form()[(i, j)]).collect()).collect();
            rows.push("form", json!(form));
            rows.push("volume", ellipsoid_volume(&e));
            if let Ok(h) = hull_volume(&s) {
                rows.push("hull_volume", h);
            }
            if let Ok(p) = nd_prob(&s) {
                rows.push("probability", p);
            }
        }
        GeomKind::Mixed => {
            let (s1, s2) = two_spectra(&a.spectrum)?;
            let v = mixed_area(&newton_ellipsoid(&s1), &newton_ellipsoid(&s2)).map_err(|e| usage(e.to_string()))?;
            rows.push("mixed_area", v);
        }
        GeomKind::Kappa => {
            let s = one_d(one_spectrum(&a.spectrum)?)?;
            rows.push("speed", kappa_speed(&s).map_err(|e| usage(e.to_string()))?);
            rows.push("length", kappa_length(&s).map_err(|e| usage(e.to_string()))?);
        }
        GeomKind::Hull => {
            let s = complex(one_spectrum(&a.spectrum)?)?;
            let conj: Vec<Complex64> = s.points().iter().map(|z| z.conj()).collect();
            let hull = Polygon2D::hull_of_complex(&conj);
            rows.push("vertices", json!(hull.vertices()));
            rows.push("perimeter", polygon_perimeter(&hull));
            rows.push("area", polygon_area(&hull));
        }
    }
    Ok(rows)
}

fn parse_radii(text: &str) -> Result<Vec<f64>, Failure> {
    real_coeffs(text).map_err(|f| Failure {
        message: f.message.replace("--coeffs", "--radii"),
        ..f
    })
}

fn experiment(a: &ExperimentArgs) -> Result<(Rows, ExperimentReport), Failure> {
    let kind = match a.kind {
        ExperimentKindArg::Kac => ExperimentKind::Kac { m: degree(&a.spectrum)? },
        ExperimentKindArg::Kostlan => ExperimentKind::Kostlan { m: degree(&a.spectrum)? },
        ExperimentKindArg::Trig1d => ExperimentKind::Trig1d {
            spectrum: one_d(one_spectrum(&a.spectrum)?)?,
        },
        ExperimentKindArg::Trig2d => ExperimentKind::Trig2d {
            spectrum: nd(one_spectrum(&a.spectrum)?)?,
        },
        ExperimentKindArg::Trig2dMixed => {
            let (first, second) = two_spectra(&a.spectrum)?;
            ExperimentKind::Trig2dMixed { first, second }
        }
        ExperimentKindArg::Crofton => match a.spectrum.spectrum.as_slice() {
            [] => ExperimentKind::Crofton(CroftonCurve::GreatCircle { dim: a.dim }),
            [s] => ExperimentKind::Crofton(CroftonCurve::Kappa { spectrum: one_d(s)? }),
            _ => return Err(usage("expected at most one --spectrum")),
        },
        ExperimentKindArg::Expsum => ExperimentKind::Expsum {
            spectrum: complex(one_spectrum(&a.spectrum)?)?,
        },
        ExperimentKindArg::Pvol => {
            let p = a.polytope.as_deref().ok_or_else(|| usage("--polytope is required"))?;
            ExperimentKind::Pvol { polytope: load_polytope(p)? }
        }
    };
    let mut cfg = ExperimentConfig::new(kind)
        .trials(a.trials)
        .seed(seed_or_notice(a.seed))
        .workers(a.workers)
        .per_trial(a.per_trial.is_some())
        .radii(match &a.radii {
            Some(r) => parse_radii(r)?,
            None => DEFAULT_RADII.to_vec(),
        });
    cfg.convention = a.convention.into();
    cfg.angle_samples = a.angle_samples;
    cfg.z_max = a.z_max;
    cfg.slack = a.slack;
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    let report = run_experiment(&cfg).map_err(runtime)?;

    if let (Some(path), Some(records)) = (&a.per_trial, &report.per_trial) {
        let file = fs::File::create(path).map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))?;
        report.write_trials_csv(records, file).map_err(runtime)?;
    }
    if let Some(path) = &a.emit_curve {
        let file = fs::File::create(path).map_err(|e| runtime(format!("cannot write {}: {e}", path.display())))?;
        report.write_curve_csv(file).map_err(runtime)?;
    }

    let mut rows = Rows::default();
    rows.push("kind", cfg.kind.name());
    rows.push("trials", cfg.trials);
    rows.push("seed", cfg.seed);
    rows.push("empirical_mean", report.empirical_mean);
    rows.push("empirical_stderr", report.empirical_stderr);
    rows.push("predicted", report.predicted);
    rows.push("z_score", report.z_score);
    rows.push("discarded_trials", report.discarded_trials);
    if let Some(e) = &report.expsum {
        rows.push("fit_slope", e.fit.slope);
        rows.push("fit_intercept", e.fit.intercept);
        rows.push("fit_residual", e.fit.residual);
        rows.push("predicted_perimeter", e.predicted_perimeter);
        rows.push("predicted_semiperimeter", e.predicted_semiperimeter);
        rows.push("relative_residual_perimeter", e.relative_residual_perimeter);
        rows.push("relative_residual_semiperimeter", e.relative_residual_semiperimeter);
    }
    if let Some(p) = &report.pvol {
        rows.push("leading_coefficient", p.leading_coefficient);
    }
    rows.push("verdict", serde_json::to_value(report.verdict).map_err(runtime)?);
    Ok((rows, report))
}

fn pvol(a: &PvolArgs) -> Result<Rows, Failure> {
    let p = load_polytope(&a.polytope)?;
    let seed = seed_or_notice(a.seed);
    let est = pseudovolume(&p, a.angle_samples, seed).map_err(|e| usage(e.to_string()))?;
    let (lead, lead_err) = pvol_leading_coefficient(&p, a.angle_samples, seed).map_err(|e| usage(e.to_string()))?;
    let mut rows = Rows::default();
    rows.push("pseudovolume", est.value);
    rows.push("stderr", est.stderr);
    rows.push("leading_coefficient", lead);
    rows.push("leading_coefficient_stderr", lead_err);
    rows.push("faces", est.faces.len());
    rows.push("face_terms", serde_json::to_value(&est.faces).map_err(runtime)?);
    Ok(rows)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Predict(a) => finish(predict(a)?, &a.out.out),
        Command::Count(a) => finish(count(a)?, &a.out.out),
        Command::Geom(a) => finish(geom(a)?, &a.out.out),
        Command::Pvol(a) => {
            let rows = pvol(a)?;
            let printed = Rows(rows.0.iter().filter(|(k, _)| k != "face_terms").cloned().collect());
            printed.print();
            write_out(&a.out.out, &rows.json())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Experiment(a) => {
            let (rows, report) = experiment(a)?;
            rows.print();
            write_out(&a.out.out, &serde_json::to_value(&report).map_err(runtime)?)?;
            Ok(if report.verdict == Verdict::Fail {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
    }
}

fn finish(rows: Rows, out: &Option<PathBuf>) -> Result<ExitCode, Failure> {
    rows.print();
    write_out(out, &rows.json())?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
