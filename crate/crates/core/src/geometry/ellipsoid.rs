use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Serialize, Serializer};

use super::GeometryError;
use crate::spectra::SpectrumND;

/// Node count of the periodic trapezoid rule used for support-function
/// quadrature.
pub const QUADRATURE_NODES: usize = 4096;

const SYMMETRY_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-12;
/// Relative eigenvalue size under which a form counts as singular.
const SINGULAR_TOL: f64 = 1e-12;

/// Centered ellipsoid with support function `h(x) = √(xᵀ M x)`, `M` symmetric
/// positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct Ellipsoid {
    form: DMatrix<f64>,
    eigenvalues: Vec<f64>,
}

impl Serialize for Ellipsoid {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<f64>> = self
            .form
            .row_iter()
            .map(|r| r.iter().copied().collect())
            .collect();
        rows.serialize(s)
    }
}

impl Ellipsoid {
    pub fn new(form: DMatrix<f64>) -> Result<Self, GeometryError> {
        let (rows, cols) = form.shape();
        if rows != cols || rows == 0 {
            return Err(GeometryError::NotSquare { rows, cols });
        }
        let asym = (&form - form.transpose()).amax();
        if asym > SYMMETRY_TOL {
            return Err(GeometryError::NotSymmetric(asym));
        }
        let sym = (&form + form.transpose()) * 0.5;
        let mut eigenvalues: Vec<f64> = SymmetricEigen::new(sym.clone()).eigenvalues.iter().copied().collect();
        eigenvalues.sort_by(f64::total_cmp);
        if eigenvalues[0] < -PSD_TOL {
            return Err(GeometryError::NotPositiveSemidefinite(eigenvalues[0]));
        }
        Ok(Self {
            form: sym,
            eigenvalues,
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, GeometryError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GeometryError::NotSquare {
                rows: n,
                cols: rows.first().map_or(0, Vec::len),
            });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// Disk of radius `r` in the plane.
    pub fn disk(r: f64) -> Self {
        Self::new(DMatrix::identity(2, 2) * (r * r)).expect("scaled identity is a valid form")
    }

    pub fn dim(&self) -> usize {
        self.form.nrows()
    }

    pub fn form(&self) -> &DMatrix<f64> {
        &self.form
    }

    /// Ascending eigenvalues of the form.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn is_singular(&self) -> bool {
        let top = self.eigenvalues.last().copied().unwrap_or(0.0);
        self.eigenvalues[0] <= SINGULAR_TOL * top.max(f64::MIN_POSITIVE)
    }

    pub fn support(&self, x: &[f64]) -> f64 {
        let v = nalgebra::DVector::from_column_slice(x);
        v.dot(&(&self.form * &v)).max(0.0).sqrt()
    }

    /// `tE`: support scaled by `t`, form by `t²`.
    pub fn scaled(&self, t: f64) -> Self {
        Self::new(&self.form * (t * t)).expect("positive multiple of a valid form")
    }

    /// Support and its angular derivative at `u = (cos θ, sin θ)`; planar
    /// nonsingular forms only.
    fn support_2d(&self, theta: f64) -> (f64, f64) {
        let (s, c) = theta.sin_cos();
        let m = &self.form;
        let (a, b, d) = (m[(0, 0)], m[(0, 1)], m[(1, 1)]);
        let q = a * c * c + 2.0 * b * s * c + d * s * s;
        let h = q.sqrt();
        // d/dθ (uᵀMu) = 2 u'ᵀ M u with u' = (−sin θ, cos θ)
        let dq = 2.0 * (-s * (a * c + b * s) + c * (b * c + d * s));
        (h, 0.5 * dq / h)
    }
}

/// `Ell(Λ)`: form `M = (1/#Λ) Σ λλᵀ`.
pub fn newton_ellipsoid(spectrum: &SpectrumND) -> Ellipsoid {
    let n = spectrum.dim();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for p in spectrum.points() {
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += (p[i] * p[j]) as f64;
            }
        }
    }
    m /= spectrum.len() as f64;
    Ellipsoid::new(m).expect("sum of outer products is symmetric PSD")
}

/// Volume of the unit ball in `Rⁿ`.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / n as f64 * unit_ball_volume(n - 2),
    }
}

/// `ω_n √det M`; zero for a singular form.
pub fn ellipsoid_volume(e: &Ellipsoid) -> f64 {
    if e.is_singular() {
        return 0.0;
    }
    let det: f64 = e.eigenvalues.iter().product();
    unit_ball_volume(e.dim()) * det.sqrt()
}

/// Area of a planar convex body from its support function `h` and angular
/// derivative `h'`: `(1/2) ∫₀^{2π} (h² − h'²) dθ`, periodic trapezoid rule.
pub fn support_area(nodes: usize, support: impl Fn(f64) -> (f64, f64)) -> f64 {
    let step = 2.0 * PI / nodes as f64;
    let sum: f64 = (0..nodes)
        .map(|k| {
            let (h, dh) = support(k as f64 * step);
            h * h - dh * dh
        })
        .sum();
    0.5 * sum * step
}

/// Mixed area `V(A, B) = (area(A ⊕ B) − area(A) − area(B))/2` of two planar
/// nonsingular ellipses, by support-function quadrature.
pub fn mixed_area(a: &Ellipsoid, b: &Ellipsoid) -> Result<f64, GeometryError> {
    for e in [a, b] {
        if e.dim() != 2 {
            return Err(GeometryError::Dimension {
                expected: 2,
                found: e.dim(),
            });
        }
        if e.is_singular() {
            return Err(GeometryError::Singular);
        }
    }
    let area_a = support_area(QUADRATURE_NODES, |t| a.support_2d(t));
    let area_b = support_area(QUADRATURE_NODES, |t| b.support_2d(t));
    let area_sum = support_area(QUADRATURE_NODES, |t| {
        let (ha, da) = a.support_2d(t);
        let (hb, db) = b.support_2d(t);
        (ha + hb, da + db)
    });
    Ok(0.5 * (area_sum - area_a - area_b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{convex_hull_2d, polygon_area};
    use crate::spectra::Spectrum1D;

    fn diag(a: f64, b: f64) -> Ellipsoid {
        Ellipsoid::from_rows(&[vec![a, 0.0], vec![0.0, b]]).unwrap()
    }

    /// Inscribed polygon through the support points `∇h(u) = Mu/h(u)` of a
    /// sum of ellipses, at `n` directions.
    fn minkowski_polygon_area(forms: &[&Ellipsoid], n: usize) -> f64 {
        let pts: Vec<[f64; 2]> = (0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                let u = [t.cos(), t.sin()];
                let mut p = [0.0, 0.0];
                for e in forms {
                    let m = e.form();
                    let mu = [m[(0, 0)] * u[0] + m[(0, 1)] * u[1], m[(1, 0)] * u[0] + m[(1, 1)] * u[1]];
                    let h = e.support(&u);
                    p[0] += mu[0] / h;
                    p[1] += mu[1] / h;
                }
                p
            })
            .collect();
        polygon_area(&convex_hull_2d(&pts))
    }

    #[test]
    fn newton_ellipsoid_of_symmetric_range() {
        for m in 1..6_i64 {
            let e = newton_ellipsoid(&Spectrum1D::symmetric_range(m as u32).to_nd());
            let expect = (m * (m + 1)) as f64 / 3.0;
            assert!((e.form()[(0, 0)] - expect).abs() < 1e-12);
            assert!((ellipsoid_volume(&e) - 2.0 * expect.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn newton_ellipsoid_of_box_and_degenerate_pair() {
        let s = SpectrumND::integer_box(&[-1, -1], &[1, 1]).unwrap();
        let e = newton_ellipsoid(&s);
        assert!((e.form()[(0, 0)] - 2.0 / 3.0).abs() < 1e-15);
        assert!((e.form()[(1, 1)] - 2.0 / 3.0).abs() < 1e-15);
        assert!(e.form()[(0, 1)].abs() < 1e-15);
        assert!((ellipsoid_volume(&e) - PI * 2.0 / 3.0).abs() < 1e-12);

        let pair = SpectrumND::new(vec![vec![1, 0], vec![-1, 0]]).unwrap();
        let e = newton_ellipsoid(&pair);
        assert!(e.is_singular());
        assert_eq!(ellipsoid_volume(&e), 0.0);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Ellipsoid::from_rows(&[vec![1.0, 0.5], vec![0.0, 1.0]]),
            Err(GeometryError::NotSymmetric(_))
        ));
        assert!(matches!(
            Ellipsoid::from_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]),
            Err(GeometryError::NotPositiveSemidefinite(_))
        ));
        assert!(matches!(
            Ellipsoid::from_rows(&[vec![1.0, 0.0]]),
            Err(GeometryError::NotSquare { .. })
        ));
    }

    #[test]
    fn segment_volume_is_length() {
        let e = Ellipsoid::from_rows(&[vec![2.25]]).unwrap();
        assert!((ellipsoid_volume(&e) - 3.0).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
    }

    #[test]
    fn mixed_area_of_disks() {
        let d1 = Ellipsoid::disk(1.0);
        let d2 = Ellipsoid::disk(2.0);
        assert!((mixed_area(&d1, &d1).unwrap() - PI).abs() < 1e-9);
        assert!((mixed_area(&d1, &d2).unwrap() - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn mixed_area_against_polygonal_oracle() {
        let a = diag(1.0, 4.0);
        let b = diag(4.0, 1.0);
        let n = 10_000;
        let oracle = 0.5
            * (minkowski_polygon_area(&[&a, &b], n)
                - minkowski_polygon_area(&[&a], n)
                - minkowski_polygon_area(&[&b], n));
        let v = mixed_area(&a, &b).unwrap();
        assert!(((v - oracle) / oracle).abs() < 1e-6, "{v} vs {oracle}");
    }

    #[test]
    fn mixed_area_errors() {
        let line = diag(1.0, 0.0);
        assert_eq!(mixed_area(&line, &Ellipsoid::disk(1.0)), Err(GeometryError::Singular));
        let e3 = Ellipsoid::new(DMatrix::identity(3, 3)).unwrap();
        assert!(matches!(
            mixed_area(&e3, &Ellipsoid::disk(1.0)),
            Err(GeometryError::Dimension { expected: 2, found: 3 })
        ));
    }
}
