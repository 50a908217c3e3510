//! Gaussian entanglement spectra, Rényi entropies and counting functions.
//!
//! A pure Gaussian state cut into two regions factorises into independent
//! fermion pairs. Pair `j` is described by `λ_j ∈ [-1, 1]`, an eigenvalue of
//! `V = 2C_R - 1`; `λ = 0` is a maximally entangled pair, `|λ| = 1` a product
//! pair. The angle `θ_j = arccos|λ_j|` is the same data in the language of the
//! Gaussian SVD.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gaussian::{CorrelationMatrix, MajoranaCovariance};
use crate::linalg;
use crate::quadrature;

/// Entanglement eigenvalues, sorted by `|λ|` ascending (most entangled first).
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSpectrum {
    lambdas: Vec<f64>,
}

impl GaussianSpectrum {
    pub fn new(mut lambdas: Vec<f64>) -> Result<Self> {
        if let Some(x) = lambdas.iter().find(|x| !(x.abs() <= 1.0 + 1e-9)) {
            return Err(Error::validation(format!("entanglement eigenvalue {x} outside [-1, 1]")));
        }
        lambdas.sort_by(|a, b| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)));
        Ok(Self { lambdas })
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// `θ_j = arccos|λ_j|`, descending.
    pub fn thetas(&self) -> Vec<f64> {
        self.lambdas.iter().map(|l| l.abs().min(1.0).acos()).collect()
    }

    /// Number of pairs with `|λ| < 1 - tol`.
    pub fn gaussian_rank(&self, tol: f64) -> usize {
        self.lambdas.iter().filter(|l| l.abs() < 1.0 - tol).count()
    }
}

/// Distance from `±1` below which an eigenvalue is taken to be exactly `±1`.
/// Below it `1 - |λ|` is rounding noise, and its square root (which enters
/// `s_α` for `α < 1`) would leave errors of order `1e-7`.
pub const UNIT_SNAP: f64 = 1e-12;

fn snap(x: f64) -> f64 {
    if 1.0 - x.abs() <= UNIT_SNAP {
        x.signum()
    } else {
        x
    }
}

/// Eigenvalues of `2C_R - 1`.
pub fn gaussian_spectrum(c: &CorrelationMatrix) -> Result<GaussianSpectrum> {
    let ev = linalg::herm_eigenvalues(&c.v_matrix())?;
    GaussianSpectrum::new(ev.into_iter().map(snap).collect())
}

/// `|λ|` values of a reduced covariance, from the paired singular values of
/// `Γ_R`. Signs are not recoverable for paired states and are reported as
/// nonnegative.
pub fn gaussian_spectrum_majorana(g: &MajoranaCovariance) -> Result<GaussianSpectrum> {
    let sv = linalg::singular_values(g.entries())?;
    GaussianSpectrum::new(sv.iter().step_by(2).map(|&x| snap(x)).collect())
}

/// Per-pair Rényi entropy `s_α(λ)`; `α = f64::INFINITY` is supported.
pub fn renyi_pair(lambda: f64, alpha: f64) -> f64 {
    let l = lambda.abs().min(1.0);
    let p = (1.0 + l) / 2.0;
    let q = (1.0 - l) / 2.0;
    if alpha.is_infinite() {
        -p.ln()
    } else if alpha == 1.0 {
        let xlx = |x: f64| if x > 0.0 { x * x.ln() } else { 0.0 };
        -xlx(p) - xlx(q)
    } else {
        (p.powf(alpha) + q.powf(alpha)).ln() / (1.0 - alpha)
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::validation(format!("Rényi index must be positive, got {alpha}")))
    }
}

/// `S_α = Σ_j s_α(λ_j)`.
pub fn renyi_entropy(spec: &GaussianSpectrum, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(spec.lambdas.iter().map(|&l| renyi_pair(l, alpha)).sum())
}

/// `∞`-Rényi entropy of the pairs left after discarding the `r` most
/// entangled ones (smallest `|λ|`). This is the entropy lost when only the
/// `r` most entangled pairs are kept, so it vanishes at `r = n`.
pub fn truncated_entropy(spec: &GaussianSpectrum, r: usize) -> Result<f64> {
    if r > spec.len() {
        return Err(Error::validation(format!("rank {r} exceeds spectrum size {}", spec.len())));
    }
    Ok(spec.lambdas[r..].iter().map(|&l| renyi_pair(l, f64::INFINITY)).sum())
}

/// `|{j : |λ_j| < μ}|`.
pub fn counting_function(spec: &GaussianSpectrum, mu: f64) -> usize {
    spec.lambdas.partition_point(|l| l.abs() < mu)
}

/// `f_μ(λ) = (1-λ²)(μ²-λ²)/(2-μ²-λ²)²`, a smooth lower bound on `Θ(μ - |λ|)`.
pub fn f_mu(mu: f64, lambda: f64) -> f64 {
    let l2 = lambda * lambda;
    let m2 = mu * mu;
    (1.0 - l2) * (m2 - l2) / (2.0 - m2 - l2).powi(2)
}

/// Closed form of the asymptotic sum `Σ_j f_μ(λ_j)` on `L` sites:
/// `(4 log L/π²)(artanh(1/√(2-μ²))/(2-μ²)^{3/2} - 1/(2-μ²))`.
pub fn f_mu_bound(mu: f64, l: f64) -> Result<f64> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::validation(format!("μ must lie in (0, 1), got {mu}")));
    }
    let a2 = 2.0 - mu * mu;
    let coef = (1.0 / a2.sqrt()).atanh() / a2.powf(1.5) - 1.0 / a2;
    Ok(4.0 * l.ln() / (PI * PI) * coef)
}

/// Two-term asymptotic `L(f(-1) + f(1))/2 + (2 log L/π²) ∫ f(λ)/(1-λ²) dλ` for
/// spectral sums over the infinite-chain interval of length `L`. Fails when
/// `f` does not vanish at `±1`, where the integral diverges.
pub fn asymptotic_spectral_sum<F: Fn(f64) -> f64>(f: F, l: f64) -> Result<f64> {
    let (fm, fp) = (f(-1.0), f(1.0));
    for (x, v) in [(-1.0, fm), (1.0, fp)] {
        if v.abs() > 1e-12 {
            return Err(Error::DivergentIntegral(x));
        }
    }
    let integral = quadrature::integrate(|x| f(x) / (1.0 - x * x), -1.0, 1.0, 1e-10)?;
    Ok(l * (fm + fp) / 2.0 + 2.0 * l.ln() / (PI * PI) * integral)
}
