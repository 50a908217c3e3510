//! Conformal-field-theory predictions for the low-lying entanglement spectrum
//! and the bond-dimension estimates that follow from them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::{renyi_pair, GaussianSpectrum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CftParams {
    /// UV cutoff `a` in `ℓ = (N/πa) sin(πL/N)`.
    pub a: f64,
    /// `ℓ = ηN` in the bond-dimension estimates.
    pub eta: f64,
}

impl Default for CftParams {
    fn default() -> Self {
        Self { a: 1.0, eta: 1.3 }
    }
}

impl CftParams {
    pub fn validate(&self) -> Result<()> {
        if self.a > 0.0 && self.eta > 0.0 {
            Ok(())
        } else {
            Err(Error::validation("CFT parameters a and η must be positive"))
        }
    }
}

/// `ε_n = ⌊n/2⌋ + 1/2`.
pub fn epsilon_level(n: usize) -> f64 {
    (n / 2) as f64 + 0.5
}

/// Effective length `ℓ = (N/πa) sin(πL/N)`.
pub fn effective_length(l: usize, n: usize, params: &CftParams) -> f64 {
    n as f64 / (PI * params.a) * (PI * l as f64 / n as f64).sin()
}

/// `tanh(π² ε_n / (2 log ℓ))` for a given `ℓ`.
pub fn cft_level(n: usize, ell: f64) -> Result<f64> {
    if !(ell > 1.0) {
        return Err(Error::validation(format!("effective length ℓ = {ell} must exceed 1")));
    }
    Ok((PI * PI * epsilon_level(n) / (2.0 * ell.ln())).tanh())
}

/// Predicted `|λ_n|` for an interval of `L` sites in a ring of `N`.
pub fn cft_spectrum(n: usize, l: usize, ring: usize, params: &CftParams) -> Result<f64> {
    params.validate()?;
    if l == 0 || l > ring {
        return Err(Error::validation(format!("interval length {l} must lie in 1..={ring}")));
    }
    cft_level(n, effective_length(l, ring, params))
}

/// `S_∞^trunc[χ] ≈ (2 log ℓ/π²) exp(-π²χ/(2 log ℓ))`.
pub fn cft_truncated_entropy(chi: f64, ell: f64) -> f64 {
    let lg = ell.ln();
    2.0 * lg / (PI * PI) * (-PI * PI * chi / (2.0 * lg)).exp()
}

/// Direct tail sum `Σ_{n ≥ χ} s_∞(tanh(π² ε_n / 2 log ℓ))` of the CFT levels.
pub fn cft_tail_sum(chi: usize, ell: f64) -> Result<f64> {
    let mut total = 0.0;
    let mut n = chi;
    loop {
        let term = renyi_pair(cft_level(n, ell)?, f64::INFINITY);
        total += term;
        if term < 1e-18 * total.max(1e-300) || n > chi + 1_000_000 {
            return Ok(total);
        }
        n += 1;
    }
}

/// Number of pairs `χ` needed for fidelity error `ε` at `ℓ = ηN`, from
/// inverting `ε ≈ S_∞^trunc[χ]`:
/// `χ = (2/π²) log(ηN) log((2/(π²ε)) log(ηN))`.
pub fn chi_required(ring: usize, eps: f64, params: &CftParams) -> Result<f64> {
    params.validate()?;
    check_eps(ring, eps)?;
    let lg = (params.eta * ring as f64).ln();
    if lg <= 0.0 {
        return Err(Error::validation("ηN must exceed 1"));
    }
    Ok(2.0 / (PI * PI) * lg * (2.0 * lg / (PI * PI * eps)).ln())
}

/// `log D` for `D(N, ε) ≈ (ηN)^{(log 2/π²) log(2N log(ηN)/(π²ε))}`, which
/// already includes the replacement `ε → ε/N`.
pub fn log_bond_dim_required(ring: usize, eps: f64, params: &CftParams) -> Result<f64> {
    params.validate()?;
    check_eps(ring, eps)?;
    Ok(log_bond_dim_model(ring as f64, eps, params.eta))
}

pub fn bond_dim_required(ring: usize, eps: f64, params: &CftParams) -> Result<f64> {
    log_bond_dim_required(ring, eps, params).map(f64::exp)
}

pub(crate) fn log_bond_dim_model(n: f64, eps: f64, eta: f64) -> f64 {
    let lg = (eta * n).ln();
    2f64.ln() / (PI * PI) * lg * (2.0 * n * lg / (PI * PI * eps)).ln()
}

fn check_eps(ring: usize, eps: f64) -> Result<()> {
    if ring < 2 {
        return Err(Error::validation("ring size must be at least 2"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::validation(format!("ε must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

/// Relative deviations `|mean|λ| - pred| / pred` of the first `count`
/// doublets. Exact eigenvalues are sorted by `|λ|` and paired by adjacency.
pub fn doublet_deviations(
    spec: &GaussianSpectrum,
    l: usize,
    ring: usize,
    params: &CftParams,
    count: usize,
) -> Result<Vec<f64>> {
    if spec.len() < 2 * count {
        return Err(Error::validation("spectrum too short for the requested doublets"));
    }
    let lam = spec.lambdas();
    (0..count)
        .map(|m| {
            let mean = (lam[2 * m].abs() + lam[2 * m + 1].abs()) / 2.0;
            let pred = cft_spectrum(2 * m, l, ring, params)?;
            Ok((mean - pred).abs() / pred)
        })
        .collect()
}

/// Least-squares cutoff `a` for the first `count` doublets, by golden-section
/// search over `log a ∈ [-8, 2]`.
pub fn fit_cutoff(spec: &GaussianSpectrum, l: usize, ring: usize, count: usize) -> Result<f64> {
    let lam = spec.lambdas();
    if lam.len() < 2 * count {
        return Err(Error::validation("spectrum too short for the requested doublets"));
    }
    let ssr = |log_a: f64| -> f64 {
        let p = CftParams {
            a: log_a.exp(),
            eta: 1.0,
        };
        let ell = effective_length(l, ring, &p);
        (0..2 * count)
            .map(|n| match cft_level(n, ell) {
                Ok(v) => (lam[n].abs() - v).powi(2),
                Err(_) => f64::INFINITY,
            })
            .sum()
    };
    Ok(golden_min(ssr, -8.0, 2.0).exp())
}

/// Minimum of a unimodal function on `[lo, hi]`, after a coarse scan.
pub(crate) fn golden_min<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    let steps = 200;
    let h = (hi - lo) / steps as f64;
    let mut best = lo;
    let mut fb = f(lo);
    for i in 1..=steps {
        let x = lo + h * i as f64;
        let fx = f(x);
        if fx < fb {
            fb = fx;
            best = x;
        }
    }
    let (mut a, mut b) = ((best - h).max(lo), (best + h).min(hi));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..100 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    (a + b) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn epsilon_sequence() {
        let e: Vec<f64> = (0..6).map(epsilon_level).collect();
        assert_eq!(e, vec![0.5, 0.5, 1.5, 1.5, 2.5, 2.5]);
    }

    #[test]
    fn doublets_are_degenerate() {
        let p = CftParams::default();
        for m in 0..5 {
            let a = cft_spectrum(2 * m, 100, 400, &p).unwrap();
            let b = cft_spectrum(2 * m + 1, 100, 400, &p).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn spectrum_flattens_for_large_ell() {
        assert!(cft_level(0, 1e300).unwrap() < 0.02);
        assert!(cft_level(0, 1.0).is_err());
        assert!(cft_spectrum(0, 1, 2, &CftParams::default()).is_err());
    }

    #[test]
    fn truncated_entropy_identities() {
        let ell = 500.0;
        assert!((cft_truncated_entropy(0.0, ell) - 2.0 * ell.ln() / (PI * PI)).abs() < 1e-15);
        let e0 = cft_truncated_entropy(0.0, ell);
        let f1 = cft_truncated_entropy(3.0, ell) / e0;
        let f2 = cft_truncated_entropy(6.0, ell) / e0;
        assert!((f2 - f1 * f1).abs() < 1e-15);
    }

    #[test]
    fn truncated_entropy_matches_tail_within_factor_two() {
        let ell = 1e3;
        for chi in [2usize, 4, 8, 12, 20] {
            let est = cft_truncated_entropy(chi as f64, ell);
            let direct = cft_tail_sum(chi, ell).unwrap();
            let r = est / direct;
            assert!((0.5..=2.0).contains(&r), "χ={chi}: ratio {r}");
        }
    }

    #[test]
    fn chi_grows_slowly() {
        let p = CftParams::default();
        let mut last = f64::INFINITY;
        for e in 6..=18 {
            let n = 10usize.pow(e);
            let r = chi_required(n, 1e-2, &p).unwrap() / (n as f64).powf(0.1);
            assert!(r < last);
            last = r;
        }
    }

    #[test]
    fn bond_dimension_subexponential() {
        let p = CftParams::default();
        let mut last = f64::INFINITY;
        for e in 2..=8 {
            let n = 10usize.pow(e);
            let r = log_bond_dim_required(n, 1e-2, &p).unwrap() / n as f64;
            assert!(r < last);
            last = r;
        }
        assert!(last < 1e-4);
    }

    #[test]
    fn chi_required_golden() {
        let v = chi_required(1024, 1e-2, &CftParams::default()).unwrap();
        let lg = (1.3f64 * 1024.0).ln();
        let direct = 2.0 / (PI * PI) * lg * (2.0 / (PI * PI * 1e-2) * lg).ln();
        assert_eq!(v, direct);
        assert!((v - 7.262_759_648).abs() < 1e-8, "{v}");
    }

    #[test]
    fn chi_round_trip() {
        let p = CftParams::default();
        let n = 4096;
        let ell = p.eta * n as f64;
        for chi in [8.0, 12.0, 16.0] {
            let s = cft_truncated_entropy(chi, ell);
            let eps = 1.0 - (-s).exp();
            let back = chi_required(n, eps, &p).unwrap();
            // ε = S + O(S²) shifts χ by O(ε) in units of the level spacing
            let tol = 2.0 * ell.ln() / (PI * PI) * eps * 2.0;
            assert!((back - chi).abs() <= tol, "χ={chi}: {back}");
        }
    }
}
