// Small dense helpers for vectors in R^d with d ≤ 4.

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Orthonormal basis of the span of `vectors` (modified Gram-Schmidt, two
/// passes). Residuals shorter than `tol` are treated as dependent.
pub(crate) fn orthonormal_basis(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let c = dot(&r, q);
                r.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
            }
        }
        let n = norm(&r);
        if n > tol {
            r.iter_mut().for_each(|x| *x /= n);
            basis.push(r);
        }
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of an orthonormal `basis`
/// in R^dim.
pub(crate) fn orthogonal_complement(basis: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let mut all: Vec<Vec<f64>> = basis.to_vec();
    let mut out = Vec::new();
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        let before = all.len();
        all = orthonormal_basis(&[all.clone(), vec![e]].concat(), 1e-8);
        if all.len() > before {
            out.push(all.last().unwrap().clone());
        }
        if all.len() == dim {
            break;
        }
    }
    out
}

/// Dimension of the affine hull of `points`.
pub(crate) fn affine_dim(points: &[&[f64]], tol: f64) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, first)).collect();
    orthonormal_basis(&diffs, tol).len()
}

/// Determinant of a small square matrix given by rows.
pub(crate) fn det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    m.determinant()
}
