//! Rings of weakly entangled antipodal pairs: states with an efficient
//! fermionic MPS but no efficient Gaussian one.
//!
//! `ν = ⌈(log N)^{1+β}⌉` pairs join sites `i` and `i + N/2` for `i < ν`, each
//! with Gaussian spectrum `λ = 1 - 2/ν`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{w_block, MajoranaCovariance};
use crate::spectrum::{renyi_pair, GaussianSpectrum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToySpec {
    pub n: usize,
    pub beta: f64,
    pub nu: usize,
    pub lambda: f64,
}

impl ToySpec {
    pub fn new(n: usize, beta: f64) -> Result<Self> {
        if n < 2 || n % 2 != 0 {
            return Err(Error::validation(format!("ring size must be even and at least 2, got {n}")));
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::validation(format!("β must be positive, got {beta}")));
        }
        let nu = ((n as f64).ln().powf(1.0 + beta).ceil() as usize).max(1);
        Ok(Self {
            n,
            beta,
            nu,
            lambda: 1.0 - 2.0 / nu as f64,
        })
    }

    /// Whether the pairs fit on the ring (`ν ≤ N/2`), needed for an explicit state.
    pub fn fits(&self) -> bool {
        self.nu <= self.n / 2
    }

    /// Gaussian spectrum across the half-ring cut: `ν` copies of `λ`.
    pub fn half_ring_spectrum(&self) -> GaussianSpectrum {
        GaussianSpectrum::new(vec![self.lambda; self.nu]).expect("λ ∈ [-1, 1)")
    }

    /// Rényi window `(β/(1+β), 1)` in which `S_α(N/2) = O(log N)`.
    pub fn alpha_window(&self) -> (f64, f64) {
        alpha_window(self.beta)
    }
}

pub fn alpha_window(beta: f64) -> (f64, f64) {
    (beta / (1.0 + beta), 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cut {
    HalfRing,
    /// Sites `start, …, start + len - 1` (mod N).
    Interval { start: usize, len: usize },
}

/// Number of pairs with exactly one end inside the cut.
pub fn crossing_pairs(spec: &ToySpec, cut: Cut) -> usize {
    match cut {
        Cut::HalfRing => spec.nu,
        Cut::Interval { start, len } => {
            let inside = |site: usize| (site + spec.n - start % spec.n) % spec.n < len.min(spec.n);
            (0..spec.nu)
                .filter(|&i| inside(i) != inside(i + spec.n / 2))
                .count()
        }
    }
}

pub fn toy_entropy(spec: &ToySpec, alpha: f64, cut: Cut) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::validation(format!("Rényi index must be positive, got {alpha}")));
    }
    Ok(crossing_pairs(spec, cut) as f64 * renyi_pair(spec.lambda, alpha))
}

/// Covariance of the toy state (vacuum on unpaired sites).
pub fn toy_covariance(spec: &ToySpec) -> Result<MajoranaCovariance> {
    if !spec.fits() {
        return Err(Error::validation(format!(
            "{} pairs do not fit on a ring of {} sites",
            spec.nu, spec.n
        )));
    }
    let mut g = MajoranaCovariance::vacuum(spec.n).into_entries();
    let w = w_block(spec.lambda.clamp(-1.0, 1.0).acos());
    let half = spec.n / 2;
    for i in 0..spec.nu {
        let idx = [2 * i, 2 * i + 1, 2 * (i + half), 2 * (i + half) + 1];
        for (a, &ia) in idx.iter().enumerate() {
            for (b, &ib) in idx.iter().enumerate() {
                g[(ia, ib)] = w[(a, b)];
            }
        }
    }
    MajoranaCovariance::new(g)
}

/// Upper bounds on the overlap with any Gaussian state of Gaussian rank `χ`
/// across the half-ring cut.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToyOverlapBound {
    /// `X = ((1+λ)/2)^{ν-χ}`, a bound on the squared overlap.
    pub squared: f64,
    /// `√X`, the amplitude bound implied by `squared`.
    pub amplitude: f64,
    /// `X` read as a bound on the amplitude itself, as usually quoted.
    pub amplitude_quoted: f64,
    /// `χ ≥ ν`: the state is represented exactly.
    pub exact: bool,
}

pub fn toy_gfmps_overlap_bound(spec: &ToySpec, chi: usize) -> ToyOverlapBound {
    if chi >= spec.nu {
        return ToyOverlapBound {
            squared: 1.0,
            amplitude: 1.0,
            amplitude_quoted: 1.0,
            exact: true,
        };
    }
    let x = ((1.0 + spec.lambda) / 2.0).powi((spec.nu - chi) as i32);
    ToyOverlapBound {
        squared: x,
        amplitude: x.sqrt(),
        amplitude_quoted: x,
        exact: false,
    }
}

/// Smallest `χ` whose squared-overlap bound reaches `1 - ε`.
pub fn min_gaussian_chi(spec: &ToySpec, eps: f64) -> Result<usize> {
    check_eps(eps)?;
    Ok((0..=spec.nu)
        .find(|&chi| toy_gfmps_overlap_bound(spec, chi).squared >= 1.0 - eps)
        .unwrap_or(spec.nu))
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::validation(format!("ε must lie in (0, 1), got {eps}")))
    }
}

/// Smallest Schmidt rank across the half-ring cut with squared-overlap error
/// `≤ ε`. The Schmidt weights are `p^{ν-m} (1-p)^m` with multiplicity
/// `C(ν, m)`, `p = (1+λ)/2`. Returned as `f64` since it can be huge.
pub fn toy_schmidt_rank(spec: &ToySpec, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let p = (1.0 + spec.lambda) / 2.0;
    let q = 1.0 - p;
    let nu = spec.nu;
    // levels in decreasing weight order
    let mut levels: Vec<(f64, f64)> = (0..=nu)
        .map(|m| {
            let ln_w = (nu - m) as f64 * p.ln() + m as f64 * if q > 0.0 { q.ln() } else { f64::NEG_INFINITY };
            (ln_w, ln_binomial(nu, m))
        })
        .collect();
    levels.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut kept = 0.0;
    let mut rank = 0.0;
    for (ln_w, ln_mult) in levels {
        let w = ln_w.exp();
        let level = (ln_w + ln_mult).exp();
        let missing = 1.0 - eps - kept;
        if missing <= 0.0 {
            break;
        }
        if level >= missing {
            rank += (missing / w).ceil();
            return Ok(rank);
        }
        kept += level;
        rank += ln_mult.exp().round();
    }
    Ok(rank)
}

fn ln_binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToyRow {
    #[serde(rename = "N")]
    pub n: usize,
    pub nu: usize,
    pub lambda: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    /// `S_α(N/2)` at the middle of the window.
    pub s_alpha_mid: f64,
    pub min_chi: usize,
    /// `log D` with `D = 2^χ`.
    pub log_d: f64,
    pub schmidt_rank: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToyReport {
    pub rows: Vec<ToyRow>,
    /// `log D / log N` increasing along the rows.
    pub superpolynomial: bool,
    /// `log D / N` decreasing along the rows.
    pub subexponential: bool,
}

pub fn toy_separation_report(beta: f64, eps: f64, n_list: &[usize]) -> Result<ToyReport> {
    check_eps(eps)?;
    let (lo, hi) = alpha_window(beta);
    let mid = (lo + hi) / 2.0;
    let rows: Vec<ToyRow> = n_list
        .iter()
        .map(|&n| {
            let spec = ToySpec::new(n, beta)?;
            let min_chi = min_gaussian_chi(&spec, eps)?;
            Ok(ToyRow {
                n,
                nu: spec.nu,
                lambda: spec.lambda,
                alpha_min: lo,
                alpha_max: hi,
                s_alpha_mid: toy_entropy(&spec, mid, Cut::HalfRing)?,
                min_chi,
                log_d: min_chi as f64 * 2f64.ln(),
                schmidt_rank: toy_schmidt_rank(&spec, eps)?,
            })
        })
        .collect::<Result<_>>()?;
    let ratios = |f: &dyn Fn(&ToyRow) -> f64| rows.iter().map(f).collect::<Vec<f64>>();
    let super_r = ratios(&|r| r.log_d / (r.n as f64).ln());
    let sub_r = ratios(&|r| r.log_d / r.n as f64);
    Ok(ToyReport {
        superpolynomial: super_r.windows(2).all(|w| w[1] > w[0]),
        subexponential: sub_r.windows(2).all(|w| w[1] < w[0]),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::gaussian_rank_bound;
    use crate::fock::{dense_from_covariance, dense_renyi};
    use crate::gaussian::Bipartition;
    use crate::spectrum::gaussian_spectrum_majorana;

    #[test]
    fn spec_definitions() {
        let s = ToySpec::new(1024, 1.0).unwrap();
        let ln = 1024f64.ln();
        assert_eq!(s.nu, (ln * ln).ceil() as usize);
        assert_eq!(s.lambda, 1.0 - 2.0 / s.nu as f64);
        assert!(ToySpec::new(1023, 1.0).is_err());
        assert!(ToySpec::new(1024, 0.0).is_err());
        assert_eq!(alpha_window(1.0), (0.5, 1.0));
    }

    #[test]
    fn half_ring_spectrum_is_nu_copies() {
        let s = ToySpec::new(64, 0.5).unwrap();
        let g = toy_covariance(&s).unwrap();
        let left: Vec<usize> = (0..32).collect();
        let spec = gaussian_spectrum_majorana(&g.restrict(&left).unwrap()).unwrap();
        let entangled: Vec<f64> = spec.lambdas().iter().copied().filter(|l| *l < 1.0 - 1e-9).collect();
        assert_eq!(entangled.len(), s.nu);
        assert!(entangled.iter().all(|l| (l - s.lambda.abs()).abs() < 1e-10));
    }

    #[test]
    fn entropy_matches_dense_oracle() {
        let s = ToySpec::new(6, 0.5).unwrap();
        assert_eq!(s.nu, 3);
        let psi = dense_from_covariance(&toy_covariance(&s).unwrap()).unwrap();
        let bip = Bipartition::contiguous(6, 3).unwrap();
        let dense = dense_renyi(&psi, &bip, 1.0).unwrap();
        let formula = toy_entropy(&s, 1.0, Cut::HalfRing).unwrap();
        assert!((dense - formula).abs() < 1e-10, "{dense} vs {formula}");
        let bip = Bipartition::contiguous(6, 2).unwrap();
        let dense = dense_renyi(&psi, &bip, 2.0).unwrap();
        let formula = toy_entropy(&s, 2.0, Cut::Interval { start: 0, len: 2 }).unwrap();
        assert!((dense - formula).abs() < 1e-10);
    }

    #[test]
    fn interval_cut_counts() {
        let s = ToySpec::new(1024, 1.0).unwrap();
        assert_eq!(crossing_pairs(&s, Cut::Interval { start: 0, len: 512 }), s.nu);
        assert_eq!(crossing_pairs(&s, Cut::Interval { start: 0, len: 10 }), 10);
        assert_eq!(crossing_pairs(&s, Cut::Interval { start: 600, len: 1024 }), 0);
        assert_eq!(crossing_pairs(&s, Cut::Interval { start: 512, len: 512 }), s.nu);
    }

    #[test]
    fn entropy_vanishes_for_unentangled_pairs() {
        let s = ToySpec {
            n: 10,
            beta: 1.0,
            nu: 4,
            lambda: 1.0,
        };
        assert_eq!(toy_entropy(&s, 0.5, Cut::HalfRing).unwrap(), 0.0);
    }

    #[test]
    fn bound_matches_rank_bound() {
        let s = ToySpec::new(4096, 1.0).unwrap();
        for chi in [0, 5, s.nu / 2, s.nu - 1, s.nu] {
            let b = toy_gfmps_overlap_bound(&s, chi);
            let r = gaussian_rank_bound(&s.half_ring_spectrum(), chi).unwrap();
            assert!((b.squared - r).abs() < 1e-12);
            assert!((b.amplitude * b.amplitude - b.squared).abs() < 1e-12);
            assert_eq!(b.amplitude_quoted, b.squared);
        }
        assert!(toy_gfmps_overlap_bound(&s, s.nu).exact);
        assert_eq!(toy_gfmps_overlap_bound(&s, s.nu + 3).squared, 1.0);
    }

    #[test]
    fn zero_rank_bound_approaches_inverse_e() {
        let s = ToySpec::new(1 << 20, 2.0).unwrap();
        let b = toy_gfmps_overlap_bound(&s, 0).squared;
        assert!((b - (-1.0f64).exp()).abs() < 1e-3, "{b}");
    }

    #[test]
    fn min_chi_tracks_nu() {
        for e in [12, 16, 20] {
            let s = ToySpec::new(1 << e, 1.0).unwrap();
            let chi = min_gaussian_chi(&s, 1e-2).unwrap();
            assert!(chi as f64 >= 0.9 * 0.99 * s.nu as f64);
            assert!(toy_gfmps_overlap_bound(&s, chi).squared >= 0.99);
            assert!(toy_gfmps_overlap_bound(&s, chi - 1).squared < 0.99);
        }
    }

    #[test]
    fn schmidt_rank_small_cases() {
        // one pair: weights p, 1-p
        let s = ToySpec {
            n: 4,
            beta: 1.0,
            nu: 1,
            lambda: 0.8,
        };
        assert_eq!(toy_schmidt_rank(&s, 0.15).unwrap(), 1.0);
        assert_eq!(toy_schmidt_rank(&s, 0.05).unwrap(), 2.0);
        // two pairs: 0.81, 0.09, 0.09, 0.01
        let s = ToySpec { nu: 2, ..s };
        assert_eq!(toy_schmidt_rank(&s, 0.15).unwrap(), 2.0);
        assert_eq!(toy_schmidt_rank(&s, 0.02).unwrap(), 3.0);
        assert_eq!(toy_schmidt_rank(&s, 0.005).unwrap(), 4.0);
    }

    #[test]
    fn entropy_slope_in_log_log_n() {
        let (alpha, beta) = (0.5, 1.0);
        let pts: Vec<(f64, f64)> = (10..=20)
            .map(|e| {
                let s = ToySpec::new(1 << e, beta).unwrap();
                let v = toy_entropy(&s, alpha, Cut::HalfRing).unwrap();
                (((1u64 << e) as f64).ln().ln(), v.ln())
            })
            .collect();
        let slope = (pts[10].1 - pts[0].1) / (pts[10].0 - pts[0].0);
        let expect = (1.0 - alpha) * (1.0 + beta);
        assert!((slope - expect).abs() < 0.1 * expect, "{slope}");
    }

    #[test]
    fn separation_report_flags() {
        let ns: Vec<usize> = (10..=20).map(|e| 1 << e).collect();
        let r = toy_separation_report(1.0, 1e-2, &ns).unwrap();
        assert!(r.superpolynomial && r.subexponential);
        assert_eq!(r.rows[0].alpha_min, 0.5);
    }
}
