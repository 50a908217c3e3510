//! Overlaps of Gaussian states and bounds on how well low-rank states can
//! approximate them.

use std::f64::consts::LN_2;

use crate::assignment;
use crate::error::{Error, Result};
use crate::gaussian::{Bipartition, MajoranaCovariance};
use crate::linalg::{self, RMat};
use crate::spectrum::GaussianSpectrum;
use crate::svd;

/// Schmidt coefficients `s_j ≥ 0`, descending, `Σ s_j² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    values: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|s| !(*s >= 0.0)) {
            return Err(Error::validation("Schmidt coefficients must be nonnegative"));
        }
        let norm: f64 = values.iter().map(|s| s * s).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::validation(format!("Schmidt weights sum to {norm}, not 1")));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Squared overlap `|⟨Γ|γ⟩|² = 2^{-N} √det(1 - Γγ)` of two Gaussian states on
/// `2N` Majoranas.
pub fn gaussian_overlap(g: &MajoranaCovariance, h: &MajoranaCovariance) -> Result<f64> {
    let d = g.entries().nrows();
    if h.entries().nrows() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: h.entries().nrows(),
        });
    }
    let m = RMat::identity(d, d) - g.entries() * h.entries();
    let (sign, logabs) = linalg::log_det(&m);
    // det / 2^{2N} with 2N = d
    let scaled = sign * (logabs - d as f64 * LN_2).exp();
    if scaled < -1e-10 {
        return Err(Error::numerical(format!(
            "det(1 - Γγ) negative beyond tolerance ({scaled:.3e})"
        )));
    }
    Ok(scaled.max(0.0).sqrt().min(1.0))
}

/// Best squared overlap with any state of Schmidt rank `r`:
/// `1 - Σ_{j>r} s_j²`.
pub fn schmidt_truncation_bound(spec: &SchmidtSpectrum, r: usize) -> f64 {
    let r = r.min(spec.len());
    1.0 - spec.values[r..].iter().map(|s| s * s).sum::<f64>()
}

/// Best squared overlap with any Gaussian state of Gaussian rank `r`:
/// `Π_{i>r} (1 + |λ_i|)/2` over all but the `r` most entangled pairs.
pub fn gaussian_rank_bound(spec: &GaussianSpectrum, r: usize) -> Result<f64> {
    if r > spec.len() {
        return Err(Error::validation(format!("rank {r} exceeds spectrum size {}", spec.len())));
    }
    Ok(spec.lambdas()[r..]
        .iter()
        .map(|l| (1.0 + l.abs().min(1.0)) / 2.0)
        .product())
}

fn check_angles(t: &[f64]) -> Result<()> {
    let slack = 1e-12;
    match t
        .iter()
        .find(|x| !(-slack..=std::f64::consts::FRAC_PI_2 + slack).contains(*x))
    {
        Some(x) => Err(Error::validation(format!("angle {x} outside [0, π/2]"))),
        None => Ok(()),
    }
}

/// `max_σ Π_i cos²((θ_i - θ̃_σ(i))/2)`, the largest squared overlap between
/// pure Gaussian states whose Gaussian SVDs have angles `θ` and `θ̃`. Solved
/// exactly as a max-weight assignment on `log cos²` weights. Returns the
/// value and the maximising permutation.
pub fn spectra_overlap_bound_with_perm(thetas: &[f64], tilde: &[f64]) -> Result<(f64, Vec<usize>)> {
    if thetas.len() != tilde.len() {
        return Err(Error::DimensionMismatch {
            expected: thetas.len(),
            got: tilde.len(),
        });
    }
    check_angles(thetas)?;
    check_angles(tilde)?;
    let w: Vec<Vec<f64>> = thetas
        .iter()
        .map(|a| tilde.iter().map(|b| ((a - b) / 2.0).cos().powi(2).ln()).collect())
        .collect();
    let (perm, total) = assignment::max_weight_assignment(&w);
    Ok((total.exp(), perm))
}

pub fn spectra_overlap_bound(thetas: &[f64], tilde: &[f64]) -> Result<f64> {
    spectra_overlap_bound_with_perm(thetas, tilde).map(|x| x.0)
}

/// Closest Gaussian state of Gaussian rank `≤ r` across `bip`: the Gaussian
/// SVD with all but the `r` largest angles set to zero.
pub fn optimal_gaussian_truncation(
    g: &MajoranaCovariance,
    bip: &Bipartition,
    r: usize,
) -> Result<MajoranaCovariance> {
    Ok(svd::gaussian_svd(g, bip)?.truncate(r))
}

/// Prefactors of the entropy/truncation scaling relations. These are
/// order-of-magnitude relations (`≲`) and carry no sharp constants; both
/// default to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffConstants {
    pub gaussian: f64,
    pub non_gaussian: f64,
}

impl Default for TradeoffConstants {
    fn default() -> Self {
        Self {
            gaussian: 1.0,
            non_gaussian: 1.0,
        }
    }
}

/// `ε_G ≲ S_α^{1/α} χ^{-(1-α)/α}` and `ε_NG ≲ S_α^{1/α} D^{-(1-α)/α}` for
/// `0 < α < 1`.
pub fn entropy_truncation_tradeoffs(
    s_alpha: f64,
    alpha: f64,
    chi: f64,
    d: f64,
    k: TradeoffConstants,
) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::validation(format!("α must lie in (0, 1), got {alpha}")));
    }
    if !(s_alpha > 0.0 && chi > 0.0 && d > 0.0) {
        return Err(Error::validation("S_α, χ and D must be positive"));
    }
    let pre = s_alpha.powf(1.0 / alpha);
    let ex = -(1.0 - alpha) / alpha;
    Ok((k.gaussian * pre * chi.powf(ex), k.non_gaussian * pre * d.powf(ex)))
}
