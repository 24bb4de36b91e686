//! Browser bindings for the interactive page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string;
//! errors come back as a thrown string.

use std::f64::consts::PI;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use realzeros::ensembles::{sample_expsum, sample_trig, RngStream};
use realzeros::geometry::{ellipsoid_volume, newton_ellipsoid, Polygon2D};
use realzeros::predictors::{expsum_slope, hull_volume, nd_expected, nd_prob, newton_polygon, trig_expected, trig_prob, SlopeConvention};
use realzeros::spectra::{parse_complex_list, parse_spectrum_1d, parse_spectrum_nd, ComplexSpectrum};
use realzeros::zerocount::{circle_zeros, disk_zeros_count};

const PLOT_POINTS: usize = 720;
const ELLIPSE_POINTS: usize = 256;

fn err(e: impl ToString) -> String {
    e.to_string()
}

/// One seeded random trigonometric polynomial on the circle with its zeros.
pub fn trig_sample_json(spectrum: &str, seed: u64) -> Result<Value, String> {
    let s = parse_spectrum_1d(spectrum).map_err(err)?;
    let f = sample_trig(&s, &mut RngStream::new(seed, 0).rng()).map_err(err)?;
    let (count, zeros) = circle_zeros(&f).map_err(err)?;
    let theta: Vec<f64> = (0..=PLOT_POINTS).map(|k| 2.0 * PI * k as f64 / PLOT_POINTS as f64).collect();
    let values: Vec<f64> = theta.iter().map(|&t| f.eval(t)).collect();
    Ok(json!({
        "theta": theta,
        "values": values,
        "zeros": zeros,
        "count": count.count,
        "certified": count.certified,
        "expected": trig_expected(&s).map_err(err)?,
        "probability": trig_prob(&s).map_err(err)?,
    }))
}

/// Zero counts `N(r)` of one seeded exponential sum on `steps` radii up to
/// `r_max`, with the two candidate slopes.
pub fn expsum_staircase_json(spectrum: &str, seed: u64, r_max: f64, steps: usize) -> Result<Value, String> {
    if !(r_max > 0.0) || steps == 0 {
        return Err("need r_max > 0 and steps > 0".into());
    }
    let s = ComplexSpectrum::new(parse_complex_list(spectrum).map_err(err)?).map_err(err)?;
    let f = sample_expsum(&s, &mut RngStream::new(seed, 0).rng()).map_err(err)?;
    let radii: Vec<f64> = (1..=steps).map(|k| r_max * k as f64 / steps as f64).collect();
    let mut counts = Vec::with_capacity(steps);
    for &r in &radii {
        counts.push(disk_zeros_count(&f, r).map_err(err)?.count);
    }
    let conj: Vec<_> = s.points().iter().map(|z| z.conj()).collect();
    let hull = Polygon2D::hull_of_complex(&conj);
    Ok(json!({
        "radii": radii,
        "counts": counts,
        "slope_perimeter": expsum_slope(&s, SlopeConvention::Perimeter).map_err(err)?,
        "slope_semiperimeter": expsum_slope(&s, SlopeConvention::Semiperimeter).map_err(err)?,
        "hull": hull.vertices(),
    }))
}

/// Newton ellipse and Newton polygon of a planar lattice spectrum.
pub fn newton_ellipse_json(spectrum: &str) -> Result<Value, String> {
    let s = parse_spectrum_nd(spectrum).map_err(err)?;
    if s.dim() != 2 {
        return Err(format!("expected a planar spectrum, got dimension {}", s.dim()));
    }
    let e = newton_ellipsoid(&s);
    let m = e.form();
    let (a, b, d) = (m[(0, 0)], m[(0, 1)], m[(1, 1)]);
    // boundary = L·(unit circle) for any L with L Lᵀ = M
    let l11 = a.sqrt();
    let l21 = if l11 > 0.0 { b / l11 } else { 0.0 };
    let l22 = (d - l21 * l21).max(0.0).sqrt();
    let boundary: Vec<[f64; 2]> = (0..=ELLIPSE_POINTS)
        .map(|k| {
            let (sn, cs) = (2.0 * PI * k as f64 / ELLIPSE_POINTS as f64).sin_cos();
            [l11 * cs, l21 * cs + l22 * sn]
        })
        .collect();
    let points: Vec<[i64; 2]> = s.points().iter().map(|p| [p[0], p[1]]).collect();
    Ok(json!({
        "points": points,
        "hull": newton_polygon(&s).vertices(),
        "ellipse": boundary,
        "form": [[a, b], [b, d]],
        "ellipse_area": ellipsoid_volume(&e),
        "hull_area": hull_volume(&s).ok(),
        "expected": nd_expected(&s).ok(),
        "probability": nd_prob(&s).ok(),
    }))
}

fn export(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn trig_sample(spectrum: &str, seed: u32) -> Result<String, JsValue> {
    export(trig_sample_json(spectrum, seed.into()))
}

#[wasm_bindgen]
pub fn expsum_staircase(spectrum: &str, seed: u32, r_max: f64, steps: u32) -> Result<String, JsValue> {
    export(expsum_staircase_json(spectrum, seed.into(), r_max, steps as usize))
}

#[wasm_bindgen]
pub fn newton_ellipse(spectrum: &str) -> Result<String, JsValue> {
    export(newton_ellipse_json(spectrum))
}
