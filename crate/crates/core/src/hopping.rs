//! Ground-state correlations of the half-filled hopping ring
//! `H = -Σ (a_j† a_{j+1} + h.c.)` and its infinite-chain limit.
//!
//! Zero modes: when `N ≡ 0 (mod 4)` the momenta `±π/2` sit exactly at the
//! Fermi level and the ground state is degenerate. We fill `k = -π/2` and leave
//! `k = +π/2` empty. The resulting correlation matrix has an imaginary part
//! `-sin(πr/2)/N`; for every other `N` it is real.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::CorrelationMatrix;
use crate::linalg::{self, CMat};

/// Allowed momenta `k = 2πj/N ∈ (-π, π]`, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    n: usize,
    js: Vec<i64>,
}

impl MomentumGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::validation(format!("ring size must be at least 2, got {n}")));
        }
        let ni = n as i64;
        let lo = -((ni - 1) / 2);
        let js = (lo..=ni / 2).collect();
        Ok(Self { n, js })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Integer labels `j` with `k = 2πj/N`.
    pub fn labels(&self) -> &[i64] {
        &self.js
    }

    pub fn momentum(&self, idx: usize) -> f64 {
        2.0 * PI * self.js[idx] as f64 / self.n as f64
    }

    pub fn momenta(&self) -> Vec<f64> {
        (0..self.js.len()).map(|i| self.momentum(i)).collect()
    }

    /// 2, 1, 0, -1 for `N ≡ 0, 1, 2, 3 (mod 4)`.
    pub fn m_param(&self) -> i32 {
        [2, 1, 0, -1][self.n % 4]
    }

    /// Whether momentum `idx` is filled in the reference ground state.
    pub fn is_filled(&self, idx: usize) -> bool {
        let j = self.js[idx];
        let four_j = 4 * j.abs();
        let n = self.n as i64;
        four_j < n || (four_j == n && j < 0)
    }
}

/// Momentum occupations `n_k`, aligned with the grid's ascending momenta.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupationFunction {
    n: usize,
    values: Vec<f64>,
}

impl OccupationFunction {
    pub fn new(grid: &MomentumGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.size() {
            return Err(Error::DimensionMismatch {
                expected: grid.size(),
                got: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| !(-1e-12..=1.0 + 1e-12).contains(*v)) {
            return Err(Error::validation(format!("occupation {v} outside [0, 1]")));
        }
        Ok(Self {
            n: grid.size(),
            values,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn ring_size(&self) -> usize {
        self.n
    }
}

pub fn exact_occupation(grid: &MomentumGrid) -> OccupationFunction {
    let values = (0..grid.size())
        .map(|i| if grid.is_filled(i) { 1.0 } else { 0.0 })
        .collect();
    OccupationFunction {
        n: grid.size(),
        values,
    }
}

/// `(1/N) Σ_k n_k e^{ikr}` for `r = -(L-1)..=(L-1)`, indexed by `r + L - 1`.
fn circulant_symbol(occ: &OccupationFunction, grid: &MomentumGrid, l: usize) -> Vec<Complex64> {
    let n = grid.size() as i64;
    let mut out = Vec::with_capacity(2 * l - 1);
    for r in -(l as i64 - 1)..=(l as i64 - 1) {
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, &j) in grid.labels().iter().enumerate() {
            let w = occ.values[idx];
            if w == 0.0 {
                continue;
            }
            let phase = (j * r).rem_euclid(n) as f64 * 2.0 * PI / n as f64;
            acc += Complex64::from_polar(w, phase);
        }
        out.push(acc / n as f64);
    }
    out
}

/// `L × L` Toeplitz correlation matrix of a translation-invariant state with
/// occupations `occ`, restricted to sites `0..L`.
pub fn correlation_from_occupation(
    occ: &OccupationFunction,
    grid: &MomentumGrid,
    l: usize,
) -> Result<CorrelationMatrix> {
    if occ.ring_size() != grid.size() {
        return Err(Error::DimensionMismatch {
            expected: grid.size(),
            got: occ.ring_size(),
        });
    }
    if l == 0 || l > grid.size() {
        return Err(Error::validation(format!(
            "interval length {l} must lie in 1..={}",
            grid.size()
        )));
    }
    let sym = circulant_symbol(occ, grid, l);
    let m = CMat::from_fn(l, l, |i, j| sym[j + l - 1 - i]);
    Ok(CorrelationMatrix::new_unchecked(m))
}

/// Ground-state correlations of `L` consecutive sites on a ring of `N`.
pub fn correlation_finite(l: usize, n: usize) -> Result<CorrelationMatrix> {
    if l > n {
        return Err(Error::validation(format!("interval length {l} exceeds ring size {n}")));
    }
    let grid = MomentumGrid::new(n)?;
    correlation_from_occupation(&exact_occupation(&grid), &grid, l)
}

/// Closed form `(1/N) sin(πr/2 + mπr/(2N)) / sin(πr/N)` of the finite-ring
/// correlation, with both zero modes filled when `N ≡ 0 (mod 4)`.
pub fn finite_correlation_closed_form(r: i64, n: usize) -> f64 {
    let m = [2.0, 1.0, 0.0, -1.0][n % 4];
    let nf = n as f64;
    if r.rem_euclid(n as i64) == 0 {
        let filled = (n as f64 + m) / 2.0;
        return filled / nf;
    }
    let rf = r as f64;
    (PI * rf / 2.0 + m * PI * rf / (2.0 * nf)).sin() / (nf * (PI * rf / nf).sin())
}

/// `sin(πr/2)/(πr)` with `1/2` at `r = 0`.
pub fn infinite_symbol(r: i64) -> f64 {
    if r == 0 {
        0.5
    } else if r % 2 == 0 {
        0.0
    } else {
        let s = if r.rem_euclid(4) == 1 { 1.0 } else { -1.0 };
        s / (PI * r as f64)
    }
}

/// Correlations of `L` consecutive sites of the infinite half-filled chain.
pub fn correlation_infinite(l: usize) -> Result<CorrelationMatrix> {
    if l == 0 {
        return Err(Error::validation("interval length must be positive"));
    }
    let m = CMat::from_fn(l, l, |i, j| Complex64::new(infinite_symbol(j as i64 - i as i64), 0.0));
    Ok(CorrelationMatrix::new_unchecked(m))
}

/// Energy excess of a translation-invariant Gaussian state over the ground
/// state under the flat-band Hamiltonian `Σ_k sgn(|k| - π/2) a_k† a_k`.
pub fn flat_band_energy_error(occ: &OccupationFunction, grid: &MomentumGrid) -> Result<f64> {
    if occ.ring_size() != grid.size() {
        return Err(Error::DimensionMismatch {
            expected: grid.size(),
            got: occ.ring_size(),
        });
    }
    Ok(occ
        .values
        .iter()
        .enumerate()
        .map(|(i, &v)| if grid.is_filled(i) { 1.0 - v } else { v })
        .sum())
}

/// `‖C_{L,N} - C_{L,∞}‖_1`. The difference is Hermitian, so its singular values
/// are the absolute eigenvalues.
pub fn trace_norm_distance(l: usize, n: usize) -> Result<f64> {
    let cf = correlation_finite(l, n)?;
    let ci = correlation_infinite(l)?;
    let d = cf.entries() - ci.entries();
    Ok(linalg::herm_eigenvalues(&d)?.iter().map(|x| x.abs()).sum())
}

/// Series coefficients of the finite-size correction: `a_j` of
/// `sin(m'z)/sin(πz) = Σ a_j z^{2j}` and `b_j` of
/// `cos(m'z)/sin(πz) - 1/(πz) = Σ b_j z^{2j+1}`, with `m' = mπ/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesCoefficients {
    pub m: i32,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

/// Taylor coefficients of `sin(cz)/z` in powers of `z²`.
fn sinc_series(c: f64, terms: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(terms);
    let mut t = c;
    for k in 0..terms {
        out.push(t);
        t *= -c * c / ((2 * k + 2) as f64 * (2 * k + 3) as f64);
    }
    out
}

fn cos_series(c: f64, terms: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(terms);
    let mut t = 1.0;
    for k in 0..terms {
        out.push(t);
        t *= -c * c / ((2 * k + 1) as f64 * (2 * k + 2) as f64);
    }
    out
}

/// Power-series quotient `num / den` (same variable, `den[0] ≠ 0`).
fn series_div(num: &[f64], den: &[f64]) -> Vec<f64> {
    let n = num.len();
    let mut q = vec![0.0; n];
    for i in 0..n {
        let mut s = num[i];
        for k in 1..=i {
            s -= den[k] * q[i - k];
        }
        q[i] = s / den[0];
    }
    q
}

pub fn series_coefficients(m: i32, terms: usize) -> SeriesCoefficients {
    let mp = m as f64 * PI / 2.0;
    // sin(πz) = z · S(z²)
    let s = sinc_series(PI, terms + 1);
    let a = series_div(&sinc_series(mp, terms + 1), &s);
    // cos(m'z)/sin(πz) - 1/(πz) = (cos(m'z) - S(z²)/π) / (z S(z²)); the
    // numerator has no constant term, so the quotient starts at z¹.
    let c = cos_series(mp, terms + 1);
    let num: Vec<f64> = c.iter().zip(&s).map(|(x, y)| x - y / PI).collect();
    let full = series_div(&num[1..], &s);
    SeriesCoefficients {
        m,
        a: a[..terms].to_vec(),
        b: full[..terms].to_vec(),
    }
}

fn remainder_max(m: i32, rho: f64) -> (f64, f64) {
    let mp = m as f64 * PI / 2.0;
    let pole_a = 2.0 * mp.sin() / PI;
    let pole_b = 2.0 * mp.cos() / PI;
    let one = Complex64::new(1.0, 0.0);
    let pi = Complex64::new(PI, 0.0);
    let samples = 2048;
    let (mut ma, mut mb) = (0.0f64, 0.0f64);
    for s in 0..samples {
        let z = Complex64::from_polar(rho, 2.0 * PI * (s as f64 + 0.5) / samples as f64);
        let sp = (pi * z).sin();
        let ga = (z * mp).sin() / sp - pole_a / (one - z * z);
        let gb = (z * mp).cos() / sp - one / (pi * z) - pole_b * z / (one - z * z);
        ma = ma.max(ga.norm());
        mb = mb.max(gb.norm());
    }
    (ma, mb)
}

/// Upper bound on `‖C_{L,N} - C_{L,∞}‖_1`:
/// `2 Σ_j (|a_j| φ^{2j+1} + |b_j| φ^{2j+2})` with `φ = L/N`, summed to `terms`
/// and closed by a tail estimate. Beyond `terms` the coefficients are bounded
/// by their limits `2 sin(m')/π`, `2 cos(m')/π` (from the poles at `z = ±1`)
/// plus a Cauchy estimate for the remainder, analytic in `|z| < 2`, taken on
/// `|z| = 3/2` with a safety factor of 2 on the sampled maximum.
///
/// For `N ≡ 0 (mod 4)` the series describes the state with both zero modes
/// filled; emptying `k = π/2` is a rank-one change of trace norm `L/N`, which
/// is added.
pub fn lemma5_series_bound(l: usize, n: usize, terms: usize) -> Result<f64> {
    let phi = l as f64 / n as f64;
    if phi >= 1.0 {
        return Err(Error::SeriesDivergence(phi));
    }
    let grid = MomentumGrid::new(n)?;
    let m = grid.m_param();
    let co = series_coefficients(m, terms);
    let mut sum = 0.0;
    for j in 0..terms {
        sum += co.a[j].abs() * phi.powi(2 * j as i32 + 1) + co.b[j].abs() * phi.powi(2 * j as i32 + 2);
    }
    let mp = m as f64 * PI / 2.0;
    let (aa, bb) = ((2.0 * mp.sin() / PI).abs(), (2.0 * mp.cos() / PI).abs());
    let rho = 1.5;
    let (ma, mb) = remainder_max(m, rho);
    let (ma, mb) = (2.0 * ma, 2.0 * mb);
    let t = terms as i32;
    let x = phi / rho;
    let geo = 1.0 - x * x;
    let tail = aa * phi.powi(2 * t + 1) / (1.0 - phi * phi)
        + ma * phi * x.powi(2 * t) / geo
        + bb * phi.powi(2 * t + 2) / (1.0 - phi * phi)
        + mb * phi * x.powi(2 * t + 1) / geo;
    let mut bound = 2.0 * (sum + tail);
    if n % 4 == 0 {
        bound += phi;
    }
    Ok(bound)
}
