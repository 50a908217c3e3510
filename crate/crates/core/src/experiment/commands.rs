//! The experiment commands. Each builds a [`Table`] from a resolved config.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::config::ExperimentConfig;
use super::output::{num, Table};
use crate::error::{Error, Result};
use crate::gfmps::scan::{bond_dimension_scan, fit_growth};
use crate::hopping::{correlation_finite, correlation_infinite};
use crate::spectrum::{counting_function, f_mu, f_mu_bound, gaussian_spectrum, renyi_entropy, GaussianSpectrum};
use crate::toy::toy_separation_report;

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::numerical(e.to_string()))
}

/// Spectrum for one entry of `n_list`: `(N label, L, spectrum)`.
fn spectrum_for(cfg: &ExperimentConfig, n: usize) -> Result<(Value, usize, GaussianSpectrum)> {
    match cfg.interval(n) {
        None => Ok((json!("inf"), n, gaussian_spectrum(&correlation_infinite(n)?)?)),
        Some(l) => Ok((json!(n), l, gaussian_spectrum(&correlation_finite(l, n)?)?)),
    }
}

fn spectra(cfg: &ExperimentConfig) -> Result<Vec<(Value, usize, GaussianSpectrum)>> {
    pool(cfg.workers)?.install(|| cfg.n_list.par_iter().map(|&n| spectrum_for(cfg, n)).collect())
}

/// Least-squares slope of `y` against `x`.
pub fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// `(α+1)/(6α)`, `1/6` at `α = ∞`.
pub fn predicted_slope(alpha: f64) -> f64 {
    if alpha.is_infinite() {
        1.0 / 6.0
    } else {
        (alpha + 1.0) / (6.0 * alpha)
    }
}

/// Columns `L, alpha, S_alpha, fitted_slope, predicted_slope`; the slope is
/// fitted against `log L` over the largest decade of `L`.
pub fn entropy_scaling(cfg: &ExperimentConfig) -> Result<Table> {
    let sp = spectra(cfg)?;
    let l_max = sp.iter().map(|s| s.1).max().unwrap_or(0) as f64;
    let mut table = Table::new(&["L", "alpha", "S_alpha", "fitted_slope", "predicted_slope"]);
    let mut fits = Vec::new();
    for &alpha in &cfg.alpha {
        let values: Vec<(usize, f64)> = sp
            .iter()
            .map(|(_, l, s)| Ok((*l, renyi_entropy(s, alpha)?)))
            .collect::<Result<_>>()?;
        let window: Vec<&(usize, f64)> = values.iter().filter(|(l, _)| *l as f64 >= l_max / 10.0).collect();
        let fitted = if window.len() >= 2 {
            let x: Vec<f64> = window.iter().map(|(l, _)| (*l as f64).ln()).collect();
            let y: Vec<f64> = window.iter().map(|(_, s)| *s).collect();
            slope(&x, &y)
        } else {
            f64::NAN
        };
        let pred = predicted_slope(alpha);
        for (l, s) in &values {
            table.push(vec![json!(l), num(alpha), num(*s), num(fitted), num(pred)]);
        }
        fits.push(json!({"alpha": num(alpha), "fitted_slope": num(fitted), "predicted_slope": pred}));
    }
    table.summary = json!({ "fits": fits });
    Ok(table)
}

/// Columns `N, L, mu, I, f_mu_sum, f_mu_bound`: the count of `|λ| < μ`, the
/// spectral sum of `f_μ` that it dominates, and the asymptotic value of that sum.
pub fn counting(cfg: &ExperimentConfig) -> Result<Table> {
    let sp = spectra(cfg)?;
    let mut table = Table::new(&["N", "L", "mu", "I", "f_mu_sum", "f_mu_bound"]);
    for (label, l, s) in &sp {
        for &mu in &cfg.mu {
            let count = counting_function(s, mu);
            let sum: f64 = s.lambdas().iter().map(|&x| f_mu(mu, x)).sum();
            let bound = f_mu_bound(mu, *l as f64)?;
            table.push(vec![label.clone(), json!(l), num(mu), json!(count), num(sum), num(bound)]);
        }
    }
    Ok(table)
}

/// Raw entanglement eigenvalues: columns `N, L, index, lambda`.
pub fn spectrum(cfg: &ExperimentConfig) -> Result<Table> {
    let sp = spectra(cfg)?;
    let mut table = Table::new(&["N", "L", "index", "lambda"]);
    for (label, l, s) in &sp {
        for (i, &x) in s.lambdas().iter().enumerate() {
            table.push(vec![label.clone(), json!(l), json!(i), num(x)]);
        }
    }
    Ok(table)
}

/// One row per ring size and δ target, plus a growth fit per target.
pub fn gfmps_scan(cfg: &ExperimentConfig) -> Result<Table> {
    let mut table = Table::new(&[
        "N",
        "L",
        "chi_majorana",
        "D",
        "delta",
        "epsilon",
        "strategy",
        "wall_time_ms",
        "saturated",
        "delta_target",
    ]);
    let mut fits = Vec::new();
    let mut saturated = 0;
    for &target in &cfg.delta_target {
        let records = bond_dimension_scan(&cfg.n_list, target, cfg.strategy, cfg.workers)?;
        for r in &records {
            if r.epsilon > r.delta * (1.0 + 1e-12) + 1e-300 {
                return Err(Error::numerical(format!("ε = {} exceeds δ = {} at N = {}", r.epsilon, r.delta, r.n)));
            }
            saturated += r.saturated as usize;
            let wall = if cfg.no_timestamp { 0 } else { r.wall_time_ms };
            table.push(vec![
                json!(r.n),
                json!(r.l),
                json!(r.chi_majorana),
                num(r.d),
                num(r.delta),
                num(r.epsilon),
                json!(r.strategy.name()),
                json!(wall),
                json!(r.saturated),
                num(target),
            ]);
        }
        let fit = match fit_growth(&records, target) {
            Ok(f) => serde_json::to_value(f).map_err(|e| Error::numerical(e.to_string()))?,
            Err(e) => json!({ "error": e.to_string() }),
        };
        fits.push(json!({ "delta_target": target, "fit": fit }));
    }
    table.summary = json!({ "strategy": cfg.strategy.name(), "saturated_records": saturated, "fits": fits });
    Ok(table)
}

/// Toy-model separation table for `cfg.beta`, `cfg.epsilon` and `cfg.n_list`.
pub fn toy(cfg: &ExperimentConfig) -> Result<Table> {
    let report = toy_separation_report(cfg.beta, cfg.epsilon, &cfg.n_list)?;
    let mut table = Table::new(&[
        "N",
        "nu",
        "lambda",
        "alpha_min",
        "alpha_max",
        "S_alpha_mid",
        "min_chi",
        "log_D",
        "schmidt_rank",
    ]);
    for r in &report.rows {
        table.push(vec![
            json!(r.n),
            json!(r.nu),
            num(r.lambda),
            num(r.alpha_min),
            num(r.alpha_max),
            num(r.s_alpha_mid),
            json!(r.min_chi),
            num(r.log_d),
            num(r.schmidt_rank),
        ]);
    }
    table.summary = json!({
        "beta": cfg.beta,
        "epsilon": cfg.epsilon,
        "alpha_window": [report.rows.first().map(|r| r.alpha_min), 1.0],
        "superpolynomial": report.superpolynomial,
        "subexponential": report.subexponential,
    });
    Ok(table)
}
