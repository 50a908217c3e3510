//! Gaussian singular value decomposition of a pure bipartite covariance.
//!
//! For a pure `Γ` on `n + n` modes there are orthogonal `O`, `Q` with
//! `Γ = (O ⊕ Q)(⊕_j W(θ_j))(O ⊕ Q)ᵀ`, so the state is a product of
//! independent pairs, each pair a single left mode entangled with a single
//! right mode. Unequal halves are padded to equal size with extra modes in
//! product states: the left extras empty (`J`), the right extras filled (`-J`),
//! which together form `W(0)` pairs.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::{w_block, Bipartition, MajoranaCovariance};
use crate::linalg::{self, RMat};

/// Pairs below this `sin θ` are aligned through a complex SVD of the coupling
/// block instead of being read off `Bᵀ O / sin θ`, which loses accuracy as
/// `sin θ → 0`.
const SMALL_SIN: f64 = 1e-4;
const ZERO_NU: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSvdResult {
    /// Left basis, `2n × 2n` on the padded left modes.
    pub o: RMat,
    /// Right basis, `2n × 2n` on the padded right modes.
    pub q: RMat,
    /// `θ_j ∈ [0, π/2]`, descending (most entangled pair first).
    pub thetas: Vec<f64>,
    bip: Bipartition,
}

/// Orthonormal `O` with `Oᵀ A O = ⊕_j ν_j J`, `ν_j ≥ 0` ascending, for a real
/// antisymmetric `A`.
pub fn antisymmetric_blocks(a: &RMat) -> Result<(RMat, Vec<f64>)> {
    let d = a.nrows();
    let s = a.transpose() * a;
    let (_, vecs) = linalg::sym_eigen_sorted(&s);
    let mut used: Vec<nalgebra::DVector<f64>> = Vec::with_capacity(d);
    let mut blocks: Vec<(nalgebra::DVector<f64>, nalgebra::DVector<f64>, f64)> = Vec::new();
    let mut null: Vec<nalgebra::DVector<f64>> = Vec::new();
    let project = |v: &mut nalgebra::DVector<f64>, basis: &[nalgebra::DVector<f64>]| {
        for _ in 0..2 {
            for u in basis {
                let c = u.dot(v);
                v.axpy(-c, u, 1.0);
            }
        }
    };
    for c in 0..d {
        let mut e = vecs.column(c).into_owned();
        project(&mut e, &used);
        let nrm = e.norm();
        if nrm < 0.1 {
            continue;
        }
        e /= nrm;
        let mut f = a * &e;
        let nu = f.norm();
        if nu <= ZERO_NU {
            used.push(e.clone());
            null.push(e);
            continue;
        }
        f /= nu;
        project(&mut f, &used);
        let c2 = e.dot(&f);
        f.axpy(-c2, &e, 1.0);
        f /= f.norm();
        let nu = f.dot(&(a * &e));
        used.push(e.clone());
        used.push(f.clone());
        blocks.push((f, e, nu));
    }
    if null.len() % 2 != 0 || used.len() != d {
        return Err(Error::numerical("antisymmetric block decomposition failed"));
    }
    for pair in null.chunks(2) {
        let v = pair[0].dot(&(a * &pair[1]));
        if v >= 0.0 {
            blocks.push((pair[0].clone(), pair[1].clone(), v));
        } else {
            blocks.push((pair[1].clone(), pair[0].clone(), -v));
        }
    }
    blocks.sort_by(|x, y| x.2.total_cmp(&y.2));
    let mut o = RMat::zeros(d, d);
    let mut nus = Vec::with_capacity(d / 2);
    for (j, (x, y, nu)) in blocks.into_iter().enumerate() {
        o.set_column(2 * j, &x);
        o.set_column(2 * j + 1, &y);
        nus.push(nu);
    }
    Ok((o, nus))
}

/// `Γ` reordered to `left ++ right` and padded so both halves have
/// `max(|left|, |right|)` modes.
pub fn padded_covariance(g: &MajoranaCovariance, bip: &Bipartition) -> Result<RMat> {
    if bip.n_modes() != g.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: g.n_modes(),
            got: bip.n_modes(),
        });
    }
    let (nl, nr) = (bip.left().len(), bip.right().len());
    let n = nl.max(nr);
    let reordered = g.restrict(&bip.ordering())?;
    let e = reordered.entries();
    // position of each original Majorana in the padded layout
    let pos = |a: usize| -> usize {
        if a < 2 * nl {
            a
        } else {
            2 * n + (a - 2 * nl)
        }
    };
    let mut out = RMat::zeros(4 * n, 4 * n);
    for a in 0..2 * (nl + nr) {
        for b in 0..2 * (nl + nr) {
            out[(pos(a), pos(b))] = e[(a, b)];
        }
    }
    for j in nl..n {
        out[(2 * j, 2 * j + 1)] = 1.0;
        out[(2 * j + 1, 2 * j)] = -1.0;
    }
    for j in nr..n {
        let k = 2 * n + 2 * j;
        out[(k, k + 1)] = -1.0;
        out[(k + 1, k)] = 1.0;
    }
    Ok(out)
}

/// Real `2m × 2m` form of a complex `m × m` matrix, `a + ic ↦ [[a, -c], [c, a]]`.
fn realify(u: &DMatrix<Complex64>) -> RMat {
    let (r, c) = u.shape();
    let mut out = RMat::zeros(2 * r, 2 * c);
    for i in 0..r {
        for j in 0..c {
            let z = u[(i, j)];
            out[(2 * i, 2 * j)] = z.re;
            out[(2 * i, 2 * j + 1)] = -z.im;
            out[(2 * i + 1, 2 * j)] = z.im;
            out[(2 * i + 1, 2 * j + 1)] = z.re;
        }
    }
    out
}

fn complexify(m: &RMat) -> DMatrix<Complex64> {
    let (r, c) = (m.nrows() / 2, m.ncols() / 2);
    DMatrix::from_fn(r, c, |i, j| {
        let (a, b) = (2 * i, 2 * j);
        Complex64::new(
            (m[(a, b)] + m[(a + 1, b + 1)]) / 2.0,
            (m[(a + 1, b)] - m[(a, b + 1)]) / 2.0,
        )
    })
}

pub fn gaussian_svd(g: &MajoranaCovariance, bip: &Bipartition) -> Result<GaussianSvdResult> {
    g.require_pure(1e-8)?;
    let gp = padded_covariance(g, bip)?;
    let n = gp.nrows() / 4;
    let a = gp.view((0, 0), (2 * n, 2 * n)).into_owned();
    let b = gp.view((0, 2 * n), (2 * n, 2 * n)).into_owned();
    let d = gp.view((2 * n, 2 * n), (2 * n, 2 * n)).into_owned();

    let (o_all, nus) = antisymmetric_blocks(&a)?;
    let mut good: Vec<(RMat, RMat, f64)> = Vec::new();
    let mut small: Vec<usize> = Vec::new();
    for (j, &nu) in nus.iter().enumerate() {
        let ob = o_all.columns(2 * j, 2).into_owned();
        let bo = b.transpose() * &ob;
        let s = bo.norm() / std::f64::consts::SQRT_2;
        if s >= SMALL_SIN {
            good.push((ob, bo / s, s.atan2(nu)));
        } else {
            small.push(j);
        }
    }

    let mut q_good = RMat::zeros(2 * n, 2 * good.len());
    for (j, (_, qb, _)) in good.iter().enumerate() {
        q_good.columns_mut(2 * j, 2).copy_from(qb);
    }
    linalg::orthonormalize_columns(&mut q_good);

    let m = small.len();
    let mut o_small = RMat::zeros(2 * n, 2 * m);
    let mut q_small = RMat::zeros(2 * n, 2 * m);
    let mut small_thetas = Vec::with_capacity(m);
    if m > 0 {
        for (c, &j) in small.iter().enumerate() {
            o_small.columns_mut(2 * c, 2).copy_from(&o_all.columns(2 * j, 2));
        }
        let proj = RMat::identity(2 * n, 2 * n) - &q_good * q_good.transpose();
        let (_, pv) = linalg::sym_eigen_sorted(&proj);
        let p = pv.columns(2 * n - 2 * m, 2 * m).into_owned();
        let dp = -(p.transpose() * &d * &p);
        let (x, _) = antisymmetric_blocks(&dp)?;
        let p = p * x;
        let coupling = o_small.transpose() * &b * &p;
        let svd = complexify(&coupling).svd(true, true);
        let u = svd.u.ok_or_else(|| Error::numerical("complex svd failed"))?;
        let vt = svd.v_t.ok_or_else(|| Error::numerical("complex svd failed"))?;
        o_small = &o_small * realify(&u);
        q_small = p * realify(&vt.adjoint());
        small_thetas = svd.singular_values.iter().map(|s| s.min(1.0).asin()).collect();
    }

    let mut blocks: Vec<(RMat, RMat, f64)> = Vec::with_capacity(n);
    for (j, (ob, _, th)) in good.into_iter().enumerate() {
        blocks.push((ob, q_good.columns(2 * j, 2).into_owned(), th));
    }
    for (c, th) in small_thetas.into_iter().enumerate() {
        blocks.push((
            o_small.columns(2 * c, 2).into_owned(),
            q_small.columns(2 * c, 2).into_owned(),
            th,
        ));
    }
    blocks.sort_by(|x, y| y.2.total_cmp(&x.2));
    let mut o = RMat::zeros(2 * n, 2 * n);
    let mut q = RMat::zeros(2 * n, 2 * n);
    let mut thetas = Vec::with_capacity(n);
    for (j, (ob, qb, th)) in blocks.into_iter().enumerate() {
        o.columns_mut(2 * j, 2).copy_from(&ob);
        q.columns_mut(2 * j, 2).copy_from(&qb);
        thetas.push(th);
    }
    Ok(GaussianSvdResult {
        o,
        q,
        thetas,
        bip: bip.clone(),
    })
}

/// `⊕_j W(θ_j)` laid out as `(left pairs, right pairs)`.
fn pair_covariance(thetas: &[f64]) -> RMat {
    let n = thetas.len();
    let mut m = RMat::zeros(4 * n, 4 * n);
    for (j, &t) in thetas.iter().enumerate() {
        let w = w_block(t);
        let idx = [2 * j, 2 * j + 1, 2 * n + 2 * j, 2 * n + 2 * j + 1];
        for (x, &ix) in idx.iter().enumerate() {
            for (y, &iy) in idx.iter().enumerate() {
                m[(ix, iy)] = w[(x, y)];
            }
        }
    }
    m
}

impl GaussianSvdResult {
    pub fn bipartition(&self) -> &Bipartition {
        &self.bip
    }

    /// `(O ⊕ Q)(⊕ W(θ_j))(O ⊕ Q)ᵀ` in the padded `left ++ right` layout.
    pub fn reconstruct(&self) -> RMat {
        self.with_thetas(&self.thetas)
    }

    fn with_thetas(&self, thetas: &[f64]) -> RMat {
        let n = thetas.len();
        let mut oq = RMat::zeros(4 * n, 4 * n);
        oq.view_mut((0, 0), (2 * n, 2 * n)).copy_from(&self.o);
        oq.view_mut((2 * n, 2 * n), (2 * n, 2 * n)).copy_from(&self.q);
        &oq * pair_covariance(thetas) * oq.transpose()
    }

    /// The state with all but the `r` most entangled pairs set to `θ = 0`,
    /// as a covariance on the original modes in their original order.
    pub fn truncate(&self, r: usize) -> MajoranaCovariance {
        let thetas: Vec<f64> = self
            .thetas
            .iter()
            .enumerate()
            .map(|(j, &t)| if j < r { t } else { 0.0 })
            .collect();
        let full = self.with_thetas(&thetas);
        let n = thetas.len();
        let (nl, nr) = (self.bip.left().len(), self.bip.right().len());
        let total = nl + nr;
        // padded position of each original mode's first Majorana
        let mut pos = vec![0usize; total];
        for (i, &m) in self.bip.left().iter().enumerate() {
            pos[m] = 2 * i;
        }
        for (i, &m) in self.bip.right().iter().enumerate() {
            pos[m] = 2 * n + 2 * i;
        }
        let g = RMat::from_fn(2 * total, 2 * total, |a, b| {
            full[(pos[a / 2] + a % 2, pos[b / 2] + b % 2)]
        });
        MajoranaCovariance::new_unchecked(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::random_pure_gaussian;
    use crate::spectrum::gaussian_spectrum_majorana;

    fn residual(g: &MajoranaCovariance, bip: &Bipartition) -> f64 {
        let r = gaussian_svd(g, bip).unwrap();
        let target = padded_covariance(g, bip).unwrap();
        let n = r.thetas.len();
        let eo = linalg::max_abs(&(&r.o * r.o.transpose() - RMat::identity(2 * n, 2 * n)));
        let eq = linalg::max_abs(&(&r.q * r.q.transpose() - RMat::identity(2 * n, 2 * n)));
        assert!(eo < 1e-10 && eq < 1e-10);
        linalg::max_abs(&(r.reconstruct() - target))
    }

    #[test]
    fn product_of_w0_blocks() {
        let mut g = RMat::zeros(8, 8);
        g.view_mut((0, 0), (4, 4)).copy_from(&w_block(0.0));
        g.view_mut((4, 4), (4, 4)).copy_from(&w_block(0.0));
        let g = MajoranaCovariance::new(g).unwrap();
        let bip = Bipartition::new(vec![0, 2], vec![1, 3]).unwrap();
        let r = gaussian_svd(&g, &bip).unwrap();
        assert!(r.thetas.iter().all(|t| t.abs() < 1e-12));
        assert!(residual(&g, &bip) < 1e-12);
    }

    #[test]
    fn random_states_reconstruct() {
        for seed in 0..30 {
            let g = random_pure_gaussian(8, seed, seed % 2 == 0);
            let bip = Bipartition::contiguous(8, 4).unwrap();
            assert!(residual(&g, &bip) < 1e-8, "seed {seed}");
        }
    }

    #[test]
    fn unequal_halves_reconstruct() {
        for seed in 0..10 {
            let g = random_pure_gaussian(7, 100 + seed, false);
            let bip = Bipartition::complement(7, vec![5, 1]).unwrap();
            assert!(residual(&g, &bip) < 1e-8, "seed {seed}");
            let r = gaussian_svd(&g, &bip).unwrap();
            // at most two entangled pairs
            assert!(r.thetas[2..].iter().all(|t| t.abs() < 1e-7));
        }
    }

    #[test]
    fn angles_match_reduced_spectrum() {
        for seed in 0..10 {
            let g = random_pure_gaussian(6, 200 + seed, false);
            let bip = Bipartition::contiguous(6, 3).unwrap();
            let r = gaussian_svd(&g, &bip).unwrap();
            let spec = gaussian_spectrum_majorana(&g.restrict(&[0, 1, 2]).unwrap()).unwrap();
            for (t, l) in r.thetas.iter().zip(spec.lambdas()) {
                assert!((t.cos() - l.abs()).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn nearly_product_pairs() {
        // W(θ) pairs with tiny angles next to a generic pair
        let mut g = RMat::zeros(12, 12);
        for (k, t) in [1e-9, 3e-6, 0.7].iter().enumerate() {
            g.view_mut((4 * k, 4 * k), (4, 4)).copy_from(&w_block(*t));
        }
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(1);
        let o = linalg::haar_orthogonal(6, &mut rng);
        let q = linalg::haar_orthogonal(6, &mut rng);
        let mut oq = RMat::zeros(12, 12);
        // left Majoranas are 0,1,4,5,8,9 and right 2,3,6,7,10,11
        let left = [0, 1, 4, 5, 8, 9];
        let right = [2, 3, 6, 7, 10, 11];
        for i in 0..6 {
            for j in 0..6 {
                oq[(left[i], left[j])] = o[(i, j)];
                oq[(right[i], right[j])] = q[(i, j)];
            }
        }
        let g = MajoranaCovariance::new(&oq * g * oq.transpose()).unwrap();
        let bip = Bipartition::new(vec![0, 2, 4], vec![1, 3, 5]).unwrap();
        assert!(residual(&g, &bip) < 1e-10);
        let r = gaussian_svd(&g, &bip).unwrap();
        assert!((r.thetas[0] - 0.7).abs() < 1e-10);
        assert!((r.thetas[1] - 3e-6).abs() < 1e-10);
    }

    #[test]
    fn non_pure_rejected() {
        let g = MajoranaCovariance::new(RMat::zeros(4, 4)).unwrap();
        let bip = Bipartition::contiguous(2, 1).unwrap();
        assert!(matches!(gaussian_svd(&g, &bip), Err(Error::NotPure(_))));
    }
}
