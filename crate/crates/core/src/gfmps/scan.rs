//! Minimal ladder bond dimension reaching a target energy error, and fits of
//! the resulting `D(N)` to competing growth laws.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ladder::{build_ladder, ladder_errors, max_grid_zeros, Strategy};
use crate::cft::{golden_min, log_bond_dim_model};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    pub chi_majorana: usize,
    #[serde(rename = "D")]
    pub d: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub strategy: Strategy,
    pub wall_time_ms: u64,
    pub saturated: bool,
}

/// Largest number of zeros per polynomial tried on a ring of `n` sites.
fn max_zeros(n: usize, strategy: Strategy) -> Result<usize> {
    let cap = n.saturating_sub(1) / 2; // χ_M ≤ N
    if strategy.uses_grid() {
        Ok(max_grid_zeros(n)?.min(cap))
    } else {
        Ok(cap)
    }
}

/// Smallest odd `χ_M` with `δ ≤ target` for one ring size.
pub fn scan_point(n: usize, delta_target: f64, strategy: Strategy) -> Result<ScanRecord> {
    if !(delta_target > 0.0) {
        return Err(Error::validation(format!("δ target must be positive, got {delta_target}")));
    }
    let start = Instant::now();
    let max_d = max_zeros(n, strategy)?;
    let mut probes: Vec<(usize, f64)> = Vec::new();
    let mut eval = |d: usize| -> Result<(f64, f64)> {
        let (delta, eps) = ladder_errors(&build_ladder(n, strategy, 2 * d + 1)?, n)?;
        probes.push((d, delta));
        Ok((delta, eps))
    };

    let (hi, hi_val, saturated) = if strategy.uses_grid() {
        // exponential search for a passing bracket, then bisection
        let mut hi = 0;
        let mut hi_val = eval(0)?;
        let mut lo: Option<usize> = None;
        while hi_val.0 > delta_target && hi < max_d {
            lo = Some(hi);
            hi = if hi == 0 { 1 } else { (2 * hi).min(max_d) };
            hi_val = eval(hi)?;
        }
        let saturated = hi_val.0 > delta_target;
        if !saturated {
            if let Some(mut lo) = lo {
                while hi - lo > 1 {
                    let mid = (lo + hi) / 2;
                    let v = eval(mid)?;
                    if v.0 <= delta_target {
                        hi = mid;
                        hi_val = v;
                    } else {
                        lo = mid;
                    }
                }
            }
        }
        probes.sort_by_key(|p| p.0);
        if let Some(w) = probes.windows(2).find(|w| w[1].1 > w[0].1 * (1.0 + 1e-9)) {
            return Err(Error::numerical(format!(
                "δ not monotone in χ_M for {strategy} at N = {n}: {:.3e} at χ_M = {} then {:.3e} at χ_M = {}",
                w[0].1,
                2 * w[0].0 + 1,
                w[1].1,
                2 * w[1].0 + 1
            )));
        }
        (hi, hi_val, saturated)
    } else {
        // no monotonicity guarantee off the grid: walk up one degree at a time
        let mut d = 0;
        let mut v = eval(0)?;
        while v.0 > delta_target && d < max_d {
            d += 1;
            v = eval(d)?;
        }
        (d, v, v.0 > delta_target)
    };

    let chi_majorana = 2 * hi + 1;
    Ok(ScanRecord {
        n,
        l: n,
        chi_majorana,
        d: 2f64.powi(chi_majorana.div_ceil(2) as i32),
        delta: hi_val.0,
        epsilon: hi_val.1,
        strategy,
        wall_time_ms: start.elapsed().as_millis() as u64,
        saturated,
    })
}

/// One record per ring size, in input order, computed on `workers` threads
/// (`0` for the rayon default).
pub fn bond_dimension_scan(
    n_list: &[usize],
    delta_target: f64,
    strategy: Strategy,
    workers: usize,
) -> Result<Vec<ScanRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::numerical(e.to_string()))?;
    pool.install(|| {
        n_list
            .par_iter()
            .map(|&n| scan_point(n, delta_target, strategy))
            .collect()
    })
}

/// Least-squares comparison of growth laws for `log D(N)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    /// Fitted `η` of `log D = (log 2/π²) log(ηN) log(2N log(ηN)/(π²ε))`.
    pub eta: f64,
    pub residual_model: f64,
    /// Residual of `log D = a + b log N`.
    pub residual_power_law: f64,
    /// Residual of `log D = a + b N`.
    pub residual_exponential: f64,
    pub points: usize,
}

fn linear_residual(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let b = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    x.iter().zip(y).map(|(a, v)| (v - my - b * (a - mx)).powi(2)).sum()
}

/// Fits unsaturated records, using `ε` for the model's accuracy parameter.
/// `η` is searched over `[0.05, 20]`.
pub fn fit_growth(records: &[ScanRecord], eps: f64) -> Result<GrowthFit> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| !r.saturated)
        .map(|r| (r.n as f64, r.d.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::validation("growth fit needs at least three unsaturated records"));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::validation(format!("ε must lie in (0, 1), got {eps}")));
    }
    let ssr = |log_eta: f64| -> f64 {
        pts.iter()
            .map(|&(n, y)| {
                let m = log_bond_dim_model(n, eps, log_eta.exp());
                if m.is_finite() {
                    (y - m).powi(2)
                } else {
                    f64::INFINITY
                }
            })
            .sum()
    };
    let log_eta = golden_min(ssr, 0.05f64.ln(), 20f64.ln());
    let ns: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let logs: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    Ok(GrowthFit {
        eta: log_eta.exp(),
        residual_model: ssr(log_eta),
        residual_power_law: linear_residual(&logs, &ys),
        residual_exponential: linear_residual(&ns, &ys),
        points: pts.len(),
    })
}
