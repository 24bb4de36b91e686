//! Pseudovolume of a convex polytope `Δ ⊂ Cⁿ` (`n ≤ 2`):
//! `Σ c(Γ) A(Γ) vol_n(Γ)` over the faces `Γ` of real dimension `n`.
//!
//! Points of `Cⁿ` are real vectors `(re z₁, im z₁, re z₂, im z₂, ...)`, so
//! multiplication by `i` acts as `(x, y) ↦ (−y, x)` on each coordinate pair.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::linalg::{affine_dim, det, dot, norm, orthogonal_complement, orthonormal_basis, sub};
use super::{convex_hull_2d, GeometryError};
use crate::ensembles::{standard_normal_vec, RngStream};

pub const DEFAULT_ANGLE_SAMPLES: usize = 200_000;

const MAX_VERTICES: usize = 32;
const AFFINE_TOL: f64 = 1e-9;
/// Relative slack of the "maximum attained on the face" test.
const SUPPORT_SLACK: f64 = 1e-9;
const COSINE_FLOOR: f64 = 1e-12;
/// Directions used to validate a caller-supplied face list.
const VALIDATION_SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolytope {
    n: usize,
    vertices: Vec<Vec<f64>>,
    faces: Option<Vec<Vec<usize>>>,
}

impl Serialize for ComplexPolytope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ComplexPolytope", 2)?;
        st.serialize_field("vertices", &self.complex_vertices())?;
        st.serialize_field("faces", &self.faces)?;
        st.end()
    }
}

impl ComplexPolytope {
    /// Each vertex is a point of `Cⁿ`; `n` is taken from the first vertex.
    pub fn new(vertices: &[Vec<Complex64>]) -> Result<Self, GeometryError> {
        let n = vertices.first().ok_or(GeometryError::Empty)?.len();
        if n == 0 {
            return Err(GeometryError::VertexShape(0));
        }
        let mut real = Vec::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != n {
                return Err(GeometryError::VertexShape(i));
            }
            let r: Vec<f64> = v.iter().flat_map(|z| [z.re, z.im]).collect();
            if real.iter().any(|q: &Vec<f64>| norm(&sub(q, &r)) <= AFFINE_TOL) {
                return Err(GeometryError::DuplicateVertex(i));
            }
            real.push(r);
        }
        if real.len() > MAX_VERTICES {
            return Err(GeometryError::TooManyVertices(real.len()));
        }
        Ok(Self {
            n,
            vertices: real,
            faces: None,
        })
    }

    /// Parses a JSON array of vertices, each an array of `[re, im]` pairs.
    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let raw: Vec<Vec<[f64; 2]>> =
            serde_json::from_str(text).map_err(|e| GeometryError::Json(e.to_string()))?;
        let vertices: Vec<Vec<Complex64>> = raw
            .into_iter()
            .map(|v| v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        Self::new(&vertices)
    }

    /// Supplies the `n`-dimensional faces explicitly (vertex index sets). Each
    /// one is checked to be an exposed face of real dimension `n`.
    pub fn with_faces(mut self, faces: Vec<Vec<usize>>) -> Result<Self, GeometryError> {
        self.check_supported()?;
        for (i, face) in faces.iter().enumerate() {
            if face.iter().any(|&v| v >= self.vertices.len()) {
                return Err(GeometryError::InvalidFace(i));
            }
            let closed = self.affine_closure(face);
            let mut sorted = face.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if closed != sorted || self.face_dim(face) != self.n {
                return Err(GeometryError::InvalidFace(i));
            }
            let geom = FaceGeometry::new(&self, &sorted);
            if geom.exterior_angle(&self, VALIDATION_SAMPLES, RngStream::new(0, i as u64)).0 == 0.0 {
                return Err(GeometryError::InvalidFace(i));
            }
        }
        self.faces = Some(faces);
        Ok(self)
    }

    pub fn complex_dim(&self) -> usize {
        self.n
    }

    /// Vertices as real `2n`-vectors.
    pub fn real_vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    /// Vertices as lists of `[re, im]` pairs, the JSON input layout.
    pub fn complex_vertices(&self) -> Vec<Vec<[f64; 2]>> {
        self.vertices
            .iter()
            .map(|v| v.chunks(2).map(|c| [c[0], c[1]]).collect())
            .collect()
    }

    /// Whether every vertex has zero imaginary parts.
    pub fn is_real(&self) -> bool {
        self.vertices.iter().all(|v| v.iter().skip(1).step_by(2).all(|&y| y == 0.0))
    }

    pub fn faces(&self) -> Option<&[Vec<usize>]> {
        self.faces.as_deref()
    }

    fn check_supported(&self) -> Result<(), GeometryError> {
        if self.n > 2 {
            return Err(GeometryError::UnsupportedDimension(self.n));
        }
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let span = self.face_dim(&all);
        if span < self.n {
            return Err(GeometryError::NotSpanning {
                span,
                needed: self.n,
            });
        }
        Ok(())
    }

    fn face_dim(&self, idx: &[usize]) -> usize {
        let pts: Vec<&[f64]> = idx.iter().map(|&i| self.vertices[i].as_slice()).collect();
        affine_dim(&pts, AFFINE_TOL * self.scale())
    }

    fn scale(&self) -> f64 {
        self.vertices.iter().map(|v| norm(v)).fold(1.0, f64::max)
    }

    /// All vertices lying in the affine hull of `idx`, sorted.
    fn affine_closure(&self, idx: &[usize]) -> Vec<usize> {
        let base = &self.vertices[idx[0]];
        let diffs: Vec<Vec<f64>> = idx[1..].iter().map(|&i| sub(&self.vertices[i], base)).collect();
        let tol = AFFINE_TOL * self.scale();
        let basis = orthonormal_basis(&diffs, tol);
        (0..self.vertices.len())
            .filter(|&j| {
                let mut r = sub(&self.vertices[j], base);
                for q in &basis {
                    let c = dot(&r, q);
                    r.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
                }
                norm(&r) <= tol
            })
            .collect()
    }

    /// Vertex sets whose affine hull has dimension `n`, closed under affine
    /// membership. Faces are the candidates with a positive exterior angle.
    fn candidate_faces(&self) -> Vec<Vec<usize>> {
        let nv = self.vertices.len();
        let all: Vec<usize> = (0..nv).collect();
        if self.face_dim(&all) == self.n {
            return vec![all];
        }
        let mut found = BTreeSet::new();
        let mut combo: Vec<usize> = (0..=self.n).collect();
        loop {
            if self.face_dim(&combo) == self.n {
                found.insert(self.affine_closure(&combo));
            }
            // next (n+1)-combination in lexicographic order
            let k = combo.len();
            let Some(i) = (0..k).rev().find(|&i| combo[i] < nv - k + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
        found.into_iter().collect()
    }
}

/// Contribution of one face.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaceTerm {
    pub vertices: Vec<usize>,
    pub volume: f64,
    pub exterior_angle: f64,
    pub angle_stderr: f64,
    pub cosine: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PseudovolumeEstimate {
    pub value: f64,
    /// Monte Carlo standard error from the exterior-angle estimates.
    pub stderr: f64,
    pub faces: Vec<FaceTerm>,
}

struct FaceGeometry {
    vertices: Vec<usize>,
    tangent: Vec<Vec<f64>>,
    normal: Vec<Vec<f64>>,
}

impl FaceGeometry {
    fn new(p: &ComplexPolytope, vertices: &[usize]) -> Self {
        let base = &p.vertices[vertices[0]];
        let diffs: Vec<Vec<f64>> = vertices[1..].iter().map(|&i| sub(&p.vertices[i], base)).collect();
        let tangent = orthonormal_basis(&diffs, AFFINE_TOL * p.scale());
        let normal = orthogonal_complement(&tangent, 2 * p.n);
        Self {
            vertices: vertices.to_vec(),
            tangent,
            normal,
        }
    }

    fn attains_max_on_face(&self, p: &ComplexPolytope, u: &[f64]) -> bool {
        let max = p.vertices.iter().map(|v| dot(u, v)).fold(f64::NEG_INFINITY, f64::max);
        let slack = SUPPORT_SLACK * (1.0 + p.scale());
        self.vertices.iter().all(|&i| dot(u, &p.vertices[i]) >= max - slack)
    }

    /// Fraction of unit directions of the normal space whose functional is
    /// maximized on the whole face, with its standard error. A one-dimensional
    /// normal space has the two-point sphere `{±q}`, which is enumerated.
    fn exterior_angle(&self, p: &ComplexPolytope, samples: usize, stream: RngStream) -> (f64, f64) {
        if self.normal.len() == 1 {
            let q = &self.normal[0];
            let neg: Vec<f64> = q.iter().map(|x| -x).collect();
            let hits = [q.as_slice(), neg.as_slice()]
                .iter()
                .filter(|u| self.attains_max_on_face(p, u))
                .count();
            return (hits as f64 / 2.0, 0.0);
        }
        let mut rng = stream.rng();
        let dim = 2 * p.n;
        let mut hits = 0usize;
        for _ in 0..samples {
            let g = standard_normal_vec(self.normal.len(), &mut rng);
            let mut u = vec![0.0; dim];
            for (gj, q) in g.iter().zip(&self.normal) {
                u.iter_mut().zip(q).for_each(|(x, y)| *x += gj * y);
            }
            if self.attains_max_on_face(p, &u) {
                hits += 1;
            }
        }
        let a = hits as f64 / samples as f64;
        (a, (a * (1.0 - a) / samples as f64).sqrt())
    }

    /// `|det(Qᵀ P)|` for orthonormal bases `Q` of the normal space and `P` of
    /// `i·T`.
    fn cosine(&self) -> f64 {
        let rotated: Vec<Vec<f64>> = self
            .tangent
            .iter()
            .map(|t| t.chunks(2).flat_map(|c| [-c[1], c[0]]).collect())
            .collect();
        let m: Vec<Vec<f64>> = self
            .normal
            .iter()
            .map(|q| rotated.iter().map(|r| dot(q, r)).collect())
            .collect();
        det(&m).abs()
    }

    /// n-volume: length of the projected extent for edges, or the sum of
    /// Gram-determinant triangle areas over a fan of the face polygon.
    fn volume(&self, p: &ComplexPolytope) -> f64 {
        let base = &p.vertices[self.vertices[0]];
        let coords: Vec<Vec<f64>> = self
            .vertices
            .iter()
            .map(|&i| {
                let d = sub(&p.vertices[i], base);
                self.tangent.iter().map(|t| dot(&d, t)).collect()
            })
            .collect();
        match self.tangent.len() {
            1 => {
                let (lo, hi) = coords
                    .iter()
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), c| (lo.min(c[0]), hi.max(c[0])));
                hi - lo
            }
            2 => {
                let pts: Vec<[f64; 2]> = coords.iter().map(|c| [c[0], c[1]]).collect();
                let hull = convex_hull_2d(&pts);
                let lift = |q: [f64; 2]| -> Vec<f64> {
                    (0..base.len())
                        .map(|k| q[0] * self.tangent[0][k] + q[1] * self.tangent[1][k])
                        .collect()
                };
                let v: Vec<Vec<f64>> = hull.vertices().iter().map(|&q| lift(q)).collect();
                (1..v.len().saturating_sub(1))
                    .map(|j| {
                        let a = sub(&v[j], &v[0]);
                        let b = sub(&v[j + 1], &v[0]);
                        let gram = dot(&a, &a) * dot(&b, &b) - dot(&a, &b).powi(2);
                        0.5 * gram.max(0.0).sqrt()
                    })
                    .sum()
            }
            _ => 0.0,
        }
    }
}

/// Pseudovolume with Monte Carlo exterior angles (`angle_samples` directions
/// per face, face `j` drawing from stream `(seed, j)`).
pub fn pseudovolume(
    polytope: &ComplexPolytope,
    angle_samples: usize,
    seed: u64,
) -> Result<PseudovolumeEstimate, GeometryError> {
    polytope.check_supported()?;
    if angle_samples == 0 {
        return Err(GeometryError::NoTrials);
    }
    let faces = match &polytope.faces {
        Some(f) => f
            .iter()
            .map(|v| {
                let mut v = v.clone();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect(),
        None => polytope.candidate_faces(),
    };
    let mut terms = Vec::new();
    let mut value = 0.0;
    let mut var = 0.0;
    for (j, verts) in faces.iter().enumerate() {
        let geom = FaceGeometry::new(polytope, verts);
        let (angle, angle_stderr) = geom.exterior_angle(polytope, angle_samples, RngStream::new(seed, j as u64));
        if angle == 0.0 {
            continue;
        }
        let mut cosine = geom.cosine();
        if cosine < COSINE_FLOOR {
            cosine = 0.0;
        }
        let volume = geom.volume(polytope);
        value += cosine * angle * volume;
        var += (cosine * volume * angle_stderr).powi(2);
        terms.push(FaceTerm {
            vertices: verts.clone(),
            volume,
            exterior_angle: angle,
            angle_stderr,
            cosine,
        });
    }
    Ok(PseudovolumeEstimate {
        value,
        stderr: var.sqrt(),
        faces: terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn planar(points: &[Complex64]) -> ComplexPolytope {
        let v: Vec<Vec<Complex64>> = points.iter().map(|&z| vec![z]).collect();
        ComplexPolytope::new(&v).unwrap()
    }

    #[test]
    fn triangle_gives_semiperimeter() {
        let p = planar(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]);
        let est = pseudovolume(&p, 1000, 1).unwrap();
        assert_eq!(est.faces.len(), 3);
        for f in &est.faces {
            assert_eq!(f.exterior_angle, 0.5);
            assert!((f.cosine - 1.0).abs() < 1e-12);
        }
        assert!((est.value - (2.0 + 2f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn square_diagonals_are_not_faces() {
        let p = planar(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]);
        let est = pseudovolume(&p, 1000, 1).unwrap();
        assert_eq!(est.faces.len(), 4);
        let total: f64 = est.faces.iter().map(|f| f.exterior_angle).sum();
        assert_eq!(total, 2.0);
        assert!((est.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn segment_gives_its_length() {
        let p = planar(&[c(0.0, 0.0), c(0.0, 2.0 * PI)]);
        let est = pseudovolume(&p, 1000, 1).unwrap();
        assert!((est.value - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn real_square_in_c2() {
        let v = vec![
            vec![c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ];
        let p = ComplexPolytope::new(&v).unwrap();
        let est = pseudovolume(&p, 5000, 2).unwrap();
        assert_eq!(est.faces.len(), 1);
        assert!((est.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let three = vec![vec![c(0.0, 0.0); 3], vec![c(1.0, 0.0); 3]];
        let p = ComplexPolytope::new(&three).unwrap();
        assert_eq!(pseudovolume(&p, 10, 0), Err(GeometryError::UnsupportedDimension(3)));
        let point = planar(&[c(1.0, 1.0)]);
        assert!(matches!(pseudovolume(&point, 10, 0), Err(GeometryError::NotSpanning { .. })));
        assert!(matches!(
            ComplexPolytope::new(&[vec![c(0.0, 0.0)], vec![c(0.0, 0.0)]]),
            Err(GeometryError::DuplicateVertex(1))
        ));
        assert!(matches!(
            ComplexPolytope::new(&[vec![c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]]),
            Err(GeometryError::VertexShape(1))
        ));
    }

    #[test]
    fn explicit_faces_validated() {
        let p = planar(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]);
        assert!(p.clone().with_faces(vec![vec![0, 2]]).is_err());
        let ok = p.with_faces(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap();
        assert!((pseudovolume(&ok, 100, 0).unwrap().value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn json_vertices() {
        let p = ComplexPolytope::from_json("[[[0,0]],[[1,0]],[[0,1]]]").unwrap();
        assert_eq!(p.complex_dim(), 1);
        assert_eq!(p.real_vertices().len(), 3);
        assert!(matches!(ComplexPolytope::from_json("[1,2]"), Err(GeometryError::Json(_))));
    }

    #[test]
    fn generic_c2_polytope_is_deterministic() {
        let v = vec![
            vec![c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 1.0)],
        ];
        let p = ComplexPolytope::new(&v).unwrap();
        let a = pseudovolume(&p, 20_000, 9).unwrap();
        let b = pseudovolume(&p, 20_000, 9).unwrap();
        assert_eq!(a, b);
        // 4-simplex: all C(5,3) = 10 triangles are faces
        assert_eq!(a.faces.len(), 10);
        assert!(a.value > 0.0);
        for f in &a.faces {
            assert!(f.exterior_angle > 0.0 && f.exterior_angle < 1.0);
            assert!(f.cosine >= 0.0 && f.cosine <= 1.0 + 1e-12);
        }
    }
}
