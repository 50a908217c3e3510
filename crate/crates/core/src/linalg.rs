//! Dense linear-algebra helpers shared across modules.
//!
//! Small matrices go through nalgebra. Large symmetric eigenvalue problems and
//! singular values are delegated to faer, which is several times faster at the
//! sizes the scaling experiments need (up to a few thousand).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type RMat = DMatrix<f64>;
pub type CMat = DMatrix<Complex64>;

/// Largest absolute entry.
pub fn max_abs(m: &RMat) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

pub fn max_abs_c(m: &CMat) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.norm()))
}

/// Eigenvalues of a real symmetric matrix, ascending.
pub fn sym_eigenvalues(m: &RMat) -> Result<Vec<f64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let f = faer::Mat::<f64>::from_fn(n, n, |i, j| m[(i, j)]);
    let mut ev = f
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|e| Error::numerical(format!("symmetric eigensolver: {e:?}")))?;
    ev.sort_by(|a, b| a.total_cmp(b));
    Ok(ev)
}

/// Eigenvalues of a Hermitian matrix, ascending. Falls back to the real
/// symmetric path when the imaginary parts are negligible.
pub fn herm_eigenvalues(m: &CMat) -> Result<Vec<f64>> {
    let n = m.nrows();
    let imag = m.iter().fold(0.0f64, |a, z| a.max(z.im.abs()));
    if imag < 1e-13 {
        return sym_eigenvalues(&m.map(|z| z.re));
    }
    let f = faer::Mat::<faer::c64>::from_fn(n, n, |i, j| {
        let z = m[(i, j)];
        faer::c64::new(z.re, z.im)
    });
    let mut ev = f
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .map_err(|e| Error::numerical(format!("hermitian eigensolver: {e:?}")))?;
    ev.sort_by(|a, b| a.total_cmp(b));
    Ok(ev)
}

/// Singular values of a real matrix, descending.
pub fn singular_values(m: &RMat) -> Result<Vec<f64>> {
    let f = faer::Mat::<f64>::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)]);
    let mut sv = f
        .singular_values()
        .map_err(|e| Error::numerical(format!("svd: {e:?}")))?;
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Sign and log-magnitude of a real determinant via LU with partial pivoting.
pub fn log_det(m: &RMat) -> (f64, f64) {
    let lu = m.clone().lu();
    let u = lu.u();
    let mut sign = lu.p().determinant::<f64>();
    let mut logabs = 0.0;
    for i in 0..u.nrows() {
        let d = u[(i, i)];
        if d == 0.0 {
            return (0.0, f64::NEG_INFINITY);
        }
        if d < 0.0 {
            sign = -sign;
        }
        logabs += d.abs().ln();
    }
    (sign, logabs)
}

/// Haar-random orthogonal matrix (QR of a Gaussian matrix with the sign fix).
pub fn haar_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RMat {
    let g = RMat::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Haar-random unitary matrix.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    let g = CMat::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) / std::f64::consts::SQRT_2
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// Symmetric eigendecomposition with eigenvalues ascending and eigenvector
/// signs fixed so the largest-magnitude component of each vector is positive.
pub fn sym_eigen_sorted(m: &RMat) -> (Vec<f64>, RMat) {
    let n = m.nrows();
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let vals = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = RMat::zeros(n, n);
    for (c, &i) in idx.iter().enumerate() {
        let mut v: DVector<f64> = eig.eigenvectors.column(i).into_owned();
        let mut best = 0;
        for r in 0..n {
            if v[r].abs() > v[best].abs() + 1e-12 {
                best = r;
            }
        }
        if v[best] < 0.0 {
            v.neg_mut();
        }
        vecs.set_column(c, &v);
    }
    (vals, vecs)
}

/// Modified Gram-Schmidt on the columns, in place. Returns false if a column
/// became numerically dependent.
pub fn orthonormalize_columns(m: &mut RMat) -> bool {
    let mut ok = true;
    for j in 0..m.ncols() {
        for i in 0..j {
            let d = m.column(i).dot(&m.column(j));
            let ci = m.column(i).into_owned();
            m.column_mut(j).axpy(-d, &ci, 1.0);
        }
        let nrm = m.column(j).norm();
        if nrm < 1e-12 {
            ok = false;
        } else {
            m.column_mut(j).scale_mut(1.0 / nrm);
        }
    }
    ok
}
