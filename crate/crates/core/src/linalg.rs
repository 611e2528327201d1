//! Dense complex linear algebra helpers on top of nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Unitarity tolerance on `max |U^dag U - I|`.
pub const UNITARY_TOLERANCE: f64 = 1e-8;

/// Consecutive eigenvalues of the Hermitian part closer than this are
/// treated as one cluster and split with the anti-Hermitian part.
const CLUSTER_TOLERANCE: f64 = 1e-6;

/// Rotation applied before splitting `U` into Hermitian parts, chosen so
/// that the phases `0` and `pi` do not sit at the extremes of the cosine.
const SPLIT_ANGLE: f64 = 0.381_966_011_250_105_1;

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `max |U^dag U - I|` entrywise.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let g = u.adjoint() * u;
    let mut worst = 0.0f64;
    for j in 0..g.ncols() {
        for i in 0..g.nrows() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((g[(i, j)] - target).norm());
        }
    }
    worst
}

/// Eigendecomposition of a Hermitian matrix with eigenvalues ascending.
/// Only the lower triangle is read.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), order.len(), |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

/// Largest singular value.
pub fn spectral_norm_of(m: &CMatrix) -> f64 {
    m.singular_values().iter().copied().fold(0.0, f64::max)
}

/// Eigenvalues (unit modulus) and orthonormal eigenvectors of a unitary.
#[derive(Clone, Debug)]
pub struct UnitaryEigen {
    pub eigenvalues: Vec<Complex64>,
    pub eigenvectors: CMatrix,
}

/// Diagonalizes a unitary through its commuting Hermitian parts.
///
/// `C = (gU + (gU)^dag)/2` is diagonalized first. Inside every cluster of
/// (near-)equal eigenvalues of `C` the restriction of
/// `D = (gU - (gU)^dag)/2i` is diagonalized, which separates phases sharing
/// a cosine and keeps exactly degenerate phases orthonormal. Eigenvalues
/// are the normalized Rayleigh quotients `v^dag U v`.
pub fn unitary_eigen(u: &CMatrix) -> Result<UnitaryEigen> {
    if u.nrows() != u.ncols() {
        return Err(Error::DimensionMismatch {
            expected: u.nrows(),
            found: u.ncols(),
        });
    }
    let defect = unitarity_defect(u);
    if !(defect <= UNITARY_TOLERANCE) {
        return Err(Error::NonUnitary(defect));
    }
    let dim = u.nrows();
    let a = u * Complex64::from_polar(1.0, -SPLIT_ANGLE);
    let a_adj = a.adjoint();
    let c = (&a + &a_adj) * Complex64::new(0.5, 0.0);
    let (c_values, mut vectors) = hermitian_eigen(&c);

    let mut d = None;
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && c_values[end] - c_values[end - 1] < CLUSTER_TOLERANCE {
            end += 1;
        }
        if end - start > 1 {
            let d = d.get_or_insert_with(|| (&a - &a_adj) * Complex64::new(0.0, -0.5));
            split_cluster(d, &mut vectors, start, end);
        }
        start = end;
    }

    let uv = u * &vectors;
    let eigenvalues = (0..dim)
        .map(|j| {
            let q = vectors.column(j).dotc(&uv.column(j));
            if q.norm() > 0.0 {
                q / q.norm()
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .collect();
    Ok(UnitaryEigen {
        eigenvalues,
        eigenvectors: vectors,
    })
}

fn split_cluster(d: &CMatrix, vectors: &mut CMatrix, start: usize, end: usize) {
    let block = vectors.columns(start, end - start).into_owned();
    let restricted = block.adjoint() * d * &block;
    let herm = (&restricted + restricted.adjoint()) * Complex64::new(0.5, 0.0);
    let (_, w) = hermitian_eigen(&herm);
    let rotated = block * w;
    vectors.columns_mut(start, end - start).copy_from(&rotated);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hermitian_eigen_sorted() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let (vals, vecs) = hermitian_eigen(&m);
        assert!((vals[0] + 2f64.sqrt()).abs() < 1e-14);
        assert!((vals[1] - 2f64.sqrt()).abs() < 1e-14);
        let recon = &vecs * CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(2, vals.iter().map(|&v| c(v, 0.0)))) * vecs.adjoint();
        assert!(max_abs_diff(&recon, &m) < 1e-14);
    }

    #[test]
    fn unitary_eigen_degenerate_phases() {
        // diag(1, 1, -1, i) in a rotated basis.
        let q = {
            let s = 0.5f64.sqrt();
            let h = CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]);
            h.kronecker(&h)
        };
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(-1.0, 0.0),
            c(0.0, 1.0),
        ]));
        let u = &q * d * q.adjoint();
        let eig = unitary_eigen(&u).unwrap();
        let v = &eig.eigenvectors;
        assert!(max_abs_diff(&(v.adjoint() * v), &CMatrix::identity(4, 4)) < 1e-12);
        for j in 0..4 {
            let uv = &u * v.column(j);
            let lv = v.column(j) * eig.eigenvalues[j];
            assert!((uv - lv).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_unitary() {
        let m = CMatrix::identity(2, 2) * c(1.1, 0.0);
        assert!(matches!(unitary_eigen(&m), Err(Error::NonUnitary(_))));
    }
}
