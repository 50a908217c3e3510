//! Correlation matrices, Majorana covariances and conversions between them.
//!
//! Conventions, fixed for the whole crate:
//!
//! * Majorana operators `c_{j,1} = a_j + a_j†` and `c_{j,2} = i(a_j - a_j†)`,
//!   so `{c, c'} = 2δ`.
//! * Ordering is interleaved: `(c_{0,1}, c_{0,2}, c_{1,1}, c_{1,2}, …)`, i.e.
//!   Majorana `2j + s` belongs to mode `j`.
//! * `Γ_{ab} = (i/2)⟨[c_a, c_b]⟩`. For a single mode `Γ_{12} = ⟨i c_1 c_2⟩ = 1 - 2n`,
//!   so the vacuum is `[[0, 1], [-1, 0]] = J` and the filled mode is `-J`.
//! * A number-conserving state with `C_ij = ⟨a_i† a_j⟩ = C_R + i C_I` has
//!   `Γ_{(i,1),(j,1)} = Γ_{(i,2),(j,2)} = -2 (C_I)_ij` and
//!   `Γ_{(i,1),(j,2)} = δ_ij - 2 (C_R)_ij`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, RMat};

pub const TOL_HERM: f64 = 1e-12;
pub const TOL_PHYS: f64 = 1e-9;
pub const TOL_PAIRING: f64 = 1e-10;

/// `C_ij = ⟨a_i† a_j⟩` for a set of modes.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    entries: CMat,
}

impl CorrelationMatrix {
    /// Validates hermiticity and `0 ≤ C ≤ 1`.
    pub fn new(entries: CMat) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::DimensionMismatch {
                expected: entries.nrows(),
                got: entries.ncols(),
            });
        }
        let scale = linalg::max_abs_c(&entries).max(1.0);
        let asym = linalg::max_abs_c(&(&entries - entries.adjoint()));
        if asym > TOL_HERM * scale {
            return Err(Error::validation(format!(
                "correlation matrix not Hermitian (deviation {asym:.3e})"
            )));
        }
        let c = Self { entries };
        let ev = linalg::herm_eigenvalues(&c.hermitian_part())?;
        if let (Some(&lo), Some(&hi)) = (ev.first(), ev.last()) {
            if lo < -TOL_PHYS || hi > 1.0 + TOL_PHYS {
                return Err(Error::validation(format!(
                    "correlation matrix spectrum [{lo:.3e}, {hi:.3e}] outside [0, 1]"
                )));
            }
        }
        Ok(c)
    }

    pub fn from_real(entries: RMat) -> Result<Self> {
        Self::new(entries.map(|x| Complex64::new(x, 0.0)))
    }

    /// Skips validation; for constructors that are physical by construction.
    pub(crate) fn new_unchecked(entries: CMat) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &CMat {
        &self.entries
    }

    pub fn n_modes(&self) -> usize {
        self.entries.nrows()
    }

    fn hermitian_part(&self) -> CMat {
        (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0)
    }

    /// `V = 2C - 1`, the matrix whose eigenvalues form the entanglement spectrum.
    pub fn v_matrix(&self) -> CMat {
        let n = self.n_modes();
        self.hermitian_part() * Complex64::new(2.0, 0.0) - CMat::identity(n, n)
    }

    /// True when all imaginary parts vanish to `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.entries.iter().all(|z| z.im.abs() <= tol)
    }

    /// `max |C² - C|`, zero for pure number-conserving states.
    pub fn projector_error(&self) -> f64 {
        linalg::max_abs_c(&(&self.entries * &self.entries - &self.entries))
    }
}

/// Real antisymmetric Majorana covariance of `n` modes (`2n × 2n`).
#[derive(Debug, Clone, PartialEq)]
pub struct MajoranaCovariance {
    entries: RMat,
}

impl MajoranaCovariance {
    /// Validates antisymmetry and `‖Γ‖ ≤ 1`.
    pub fn new(entries: RMat) -> Result<Self> {
        let d = entries.nrows();
        if d != entries.ncols() || d % 2 != 0 {
            return Err(Error::validation(format!(
                "covariance must be square of even size, got {}x{}",
                d,
                entries.ncols()
            )));
        }
        let skew = linalg::max_abs(&(&entries + entries.transpose()));
        if skew > TOL_HERM * linalg::max_abs(&entries).max(1.0) {
            return Err(Error::validation(format!(
                "covariance not antisymmetric (deviation {skew:.3e})"
            )));
        }
        if d > 0 {
            let smax = linalg::singular_values(&entries)?[0];
            if smax > 1.0 + TOL_PHYS {
                return Err(Error::validation(format!(
                    "covariance has singular value {smax:.6} > 1"
                )));
            }
        }
        Ok(Self { entries })
    }

    pub(crate) fn new_unchecked(entries: RMat) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &RMat {
        &self.entries
    }

    pub fn into_entries(self) -> RMat {
        self.entries
    }

    pub fn n_modes(&self) -> usize {
        self.entries.nrows() / 2
    }

    pub fn vacuum(n: usize) -> Self {
        let mut g = RMat::zeros(2 * n, 2 * n);
        for j in 0..n {
            g[(2 * j, 2 * j + 1)] = 1.0;
            g[(2 * j + 1, 2 * j)] = -1.0;
        }
        Self { entries: g }
    }

    /// `max |ΓΓᵀ - 1|`.
    pub fn purity_error(&self) -> f64 {
        let d = self.entries.nrows();
        linalg::max_abs(&(&self.entries * self.entries.transpose() - RMat::identity(d, d)))
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        self.purity_error() < tol
    }

    pub(crate) fn require_pure(&self, tol: f64) -> Result<()> {
        let e = self.purity_error();
        if e < tol {
            Ok(())
        } else {
            Err(Error::NotPure(e))
        }
    }

    /// Largest entry of the anomalous block `⟨a_i a_j⟩`.
    pub fn pairing_norm(&self) -> f64 {
        let (g11, g12, g21, g22) = self.site_blocks();
        let n = self.n_modes();
        let mut m: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let re = -(g12[(i, j)] + g21[(i, j)]) / 4.0;
                let im = (g22[(i, j)] - g11[(i, j)]) / 4.0;
                m = m.max(re.hypot(im));
            }
        }
        m
    }

    fn site_blocks(&self) -> (RMat, RMat, RMat, RMat) {
        let n = self.n_modes();
        let g = &self.entries;
        let b = |s: usize, t: usize| RMat::from_fn(n, n, |i, j| g[(2 * i + s, 2 * j + t)]);
        (b(0, 0), b(0, 1), b(1, 0), b(1, 1))
    }

    /// Covariance of the given modes, in the given order.
    pub fn restrict(&self, modes: &[usize]) -> Result<Self> {
        check_region(modes, self.n_modes())?;
        let idx: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let g = RMat::from_fn(idx.len(), idx.len(), |a, b| self.entries[(idx[a], idx[b])]);
        Ok(Self { entries: g })
    }

    /// `RΓRᵀ`.
    pub fn transform(&self, r: &RMat) -> Self {
        Self {
            entries: r * &self.entries * r.transpose(),
        }
    }

    /// Block-diagonal covariance of two independent subsystems.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let a = self.entries.nrows();
        let b = other.entries.nrows();
        let mut g = RMat::zeros(a + b, a + b);
        g.view_mut((0, 0), (a, a)).copy_from(&self.entries);
        g.view_mut((a, a), (b, b)).copy_from(&other.entries);
        Self { entries: g }
    }
}

/// The 4×4 pair block `W(θ) = (cosθ J, sinθ 1; -sinθ 1, -cosθ J)`.
///
/// In the convention of this crate `W(θ)` conserves particle number: it
/// interpolates between `|0⟩|1⟩` at `θ = 0` and `|1⟩|0⟩` at `θ = π`.
pub fn w_block(theta: f64) -> RMat {
    let (s, c) = theta.sin_cos();
    RMat::from_row_slice(
        4,
        4,
        &[
            0.0, c, s, 0.0, //
            -c, 0.0, 0.0, s, //
            -s, 0.0, 0.0, -c, //
            0.0, -s, c, 0.0,
        ],
    )
}

/// Disjoint split of `0..n` into two regions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Bipartition {
    pub fn new(left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        let n = left.len() + right.len();
        let mut seen = vec![false; n];
        for &m in left.iter().chain(right.iter()) {
            if m >= n {
                return Err(Error::IndexOutOfRange { index: m, size: n });
            }
            if seen[m] {
                return Err(Error::validation(format!("mode {m} appears twice in bipartition")));
            }
            seen[m] = true;
        }
        Ok(Self { left, right })
    }

    /// `left = 0..l`, `right = l..n`.
    pub fn contiguous(n: usize, l: usize) -> Result<Self> {
        if l > n {
            return Err(Error::IndexOutOfRange { index: l, size: n });
        }
        Self::new((0..l).collect(), (l..n).collect())
    }

    /// `left` as given, `right` the ascending complement in `0..n`.
    pub fn complement(n: usize, left: Vec<usize>) -> Result<Self> {
        let mut inside = vec![false; n];
        for &m in &left {
            if m >= n {
                return Err(Error::IndexOutOfRange { index: m, size: n });
            }
            inside[m] = true;
        }
        let right = (0..n).filter(|&m| !inside[m]).collect();
        Self::new(left, right)
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn n_modes(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Mode order `left ++ right`.
    pub fn ordering(&self) -> Vec<usize> {
        self.left.iter().chain(self.right.iter()).copied().collect()
    }
}

fn check_region(region: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &m in region {
        if m >= n {
            return Err(Error::IndexOutOfRange { index: m, size: n });
        }
        if seen[m] {
            return Err(Error::validation(format!("mode {m} repeated in region")));
        }
        seen[m] = true;
    }
    Ok(())
}

/// Covariance of the number-conserving Gaussian state with `⟨a†a⟩ = C`.
pub fn to_majorana(c: &CorrelationMatrix) -> MajoranaCovariance {
    let n = c.n_modes();
    let e = c.entries();
    let mut g = RMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = e[(i, j)];
            let d = if i == j { 1.0 } else { 0.0 };
            g[(2 * i, 2 * j)] = -2.0 * z.im;
            g[(2 * i + 1, 2 * j + 1)] = -2.0 * z.im;
            g[(2 * i, 2 * j + 1)] = d - 2.0 * z.re;
            g[(2 * i + 1, 2 * j)] = -d + 2.0 * z.re;
        }
    }
    MajoranaCovariance::new_unchecked(g)
}

/// Inverse of [`to_majorana`]; fails if `⟨aa⟩` does not vanish.
pub fn to_correlation(g: &MajoranaCovariance) -> Result<CorrelationMatrix> {
    let pn = g.pairing_norm();
    if pn > TOL_PAIRING {
        return Err(Error::NotNumberConserving(pn));
    }
    let n = g.n_modes();
    let (g11, g12, g21, g22) = g.site_blocks();
    let c = CMat::from_fn(n, n, |i, j| {
        let d = if i == j { 2.0 } else { 0.0 };
        Complex64::new(
            (d - g12[(i, j)] + g21[(i, j)]) / 4.0,
            -(g11[(i, j)] + g22[(i, j)]) / 4.0,
        )
    });
    Ok(CorrelationMatrix::new_unchecked(c))
}

/// Principal submatrix `C_R`.
pub fn restrict(c: &CorrelationMatrix, region: &[usize]) -> Result<CorrelationMatrix> {
    check_region(region, c.n_modes())?;
    let e = c.entries();
    let m = DMatrix::from_fn(region.len(), region.len(), |a, b| e[(region[a], region[b])]);
    Ok(CorrelationMatrix::new_unchecked(m))
}

/// Seeded random pure Gaussian state on `n` modes.
///
/// The general case conjugates the vacuum by a Haar orthogonal matrix on the
/// `2n` Majoranas. The number-conserving case applies a Haar unitary to a
/// random occupation pattern (each orbital filled with probability 1/2), since
/// a mode unitary alone leaves the vacuum invariant.
pub fn random_pure_gaussian(n: usize, seed: u64, number_conserving: bool) -> MajoranaCovariance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if number_conserving {
        let u = linalg::haar_unitary(n, &mut rng);
        let fill: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.5) { 1.0 } else { 0.0 }).collect();
        let c = CMat::from_fn(n, n, |i, j| {
            (0..n).fold(Complex64::new(0.0, 0.0), |acc, k| {
                acc + u[(i, k)].conj() * u[(j, k)] * fill[k]
            })
        });
        to_majorana(&CorrelationMatrix::new_unchecked(c))
    } else {
        let r = linalg::haar_orthogonal(2 * n, &mut rng);
        MajoranaCovariance::vacuum(n).transform(&r)
    }
}

/// Seeded random pure number-conserving correlation matrix (a projector).
pub fn random_projector(n: usize, seed: u64) -> CorrelationMatrix {
    to_correlation(&random_pure_gaussian(n, seed, true)).expect("number-conserving by construction")
}

/// Seeded random physical (generally mixed) correlation matrix.
pub fn random_physical(n: usize, seed: u64) -> CorrelationMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = linalg::haar_unitary(n, &mut rng);
    let occ: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    let c = CMat::from_fn(n, n, |i, j| {
        (0..n).fold(Complex64::new(0.0, 0.0), |acc, k| {
            acc + u[(i, k)].conj() * u[(j, k)] * occ[k]
        })
    });
    CorrelationMatrix::new_unchecked((&c + c.adjoint()) * Complex64::new(0.5, 0.0))
}
