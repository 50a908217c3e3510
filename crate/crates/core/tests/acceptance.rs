//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line to stdout
//! (uncaptured) and the test fails if any criterion fails.

use std::io::Write;
use std::process::Command;

use freefermi::assignment::max_weight_assignment;
use freefermi::bounds::{
    gaussian_overlap, gaussian_rank_bound, optimal_gaussian_truncation, schmidt_truncation_bound,
    spectra_overlap_bound, SchmidtSpectrum,
};
use freefermi::cft::{doublet_deviations, CftParams};
use freefermi::experiment::verify::run_verify;
use freefermi::fock::{dense_from_covariance, dense_overlap, dense_renyi, dense_schmidt, DenseState};
use freefermi::gaussian::{random_pure_gaussian, w_block, Bipartition, MajoranaCovariance};
use freefermi::gfmps::scan::{bond_dimension_scan, fit_growth};
use freefermi::gfmps::ladder::Strategy;
use freefermi::hopping::{correlation_finite, correlation_infinite, lemma5_series_bound, trace_norm_distance};
use freefermi::linalg::{haar_orthogonal, CMat, RMat};
use freefermi::spectrum::{
    counting_function, f_mu, gaussian_spectrum, gaussian_spectrum_majorana, renyi_entropy, GaussianSpectrum,
};
use freefermi::toy::{min_gaussian_chi, toy_schmidt_rank, ToySpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn lsq_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

fn left_modes(n: usize) -> Vec<usize> {
    (0..n / 2).collect()
}

// 1. Slope of S_α against log L on the infinite chain, L ∈ [512, 4096].
fn criterion_1() -> Outcome {
    const TOL: f64 = 0.05;
    let ls = [512usize, 1024, 2048, 4096];
    let specs: Vec<GaussianSpectrum> = ls
        .iter()
        .map(|&l| gaussian_spectrum(&correlation_infinite(l).unwrap()).unwrap())
        .collect();
    let x: Vec<f64> = ls.iter().map(|&l| (l as f64).ln()).collect();
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for alpha in [0.5, 1.0, 2.0, f64::INFINITY] {
        let y: Vec<f64> = specs.iter().map(|s| renyi_entropy(s, alpha).unwrap()).collect();
        let fitted = lsq_slope(&x, &y);
        let predicted = if alpha.is_infinite() { 1.0 / 6.0 } else { (alpha + 1.0) / (6.0 * alpha) };
        let rel = (fitted - predicted).abs() / predicted;
        worst = worst.max(rel);
        parts.push(format!("α={alpha}: {fitted:.4} vs {predicted:.4}"));
    }
    outcome(worst <= TOL, format!("{}; worst rel. error {worst:.4} (tol {TOL})", parts.join(", ")))
}

// 2. Gaussian formulas against the dense Fock oracle.
fn criterion_2() -> Outcome {
    const TOL: f64 = 1e-8;
    let mut err_overlap: f64 = 0.0;
    let mut err_renyi: f64 = 0.0;
    let mut err_schmidt: f64 = 0.0;
    let mut err_rank: f64 = 0.0;
    let seeds = 60u64;
    for seed in 0..seeds {
        let n = 2 + (seed as usize % 7); // 2..=8
        let nc = seed % 2 == 0;
        let g = random_pure_gaussian(n, 1000 + seed, nc);
        let h = random_pure_gaussian(n, 5000 + seed, nc);
        let pg = dense_from_covariance(&g).unwrap();
        let ph = dense_from_covariance(&h).unwrap();
        let dense = dense_overlap(&pg, &ph).unwrap().norm_sqr();
        err_overlap = err_overlap.max((gaussian_overlap(&g, &h).unwrap() - dense).abs());

        let bip = Bipartition::complement(n, left_modes(n)).unwrap();
        let spec = gaussian_spectrum_majorana(&g.restrict(bip.left()).unwrap()).unwrap();
        for alpha in [0.5, 1.0, 2.0, f64::INFINITY] {
            let a = renyi_entropy(&spec, alpha).unwrap();
            let b = dense_renyi(&pg, &bip, alpha).unwrap();
            err_renyi = err_renyi.max((a - b).abs());
        }

        // Schmidt truncation: keep the r largest singular triplets.
        let m = pg.bipartite_matrix(&bip).unwrap();
        let svd = m.clone().svd(true, true);
        let (u, vt) = (svd.u.unwrap(), svd.v_t.unwrap());
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        let schmidt = SchmidtSpectrum::new(dense_schmidt(&pg, &bip).unwrap()).unwrap();
        for r in 1..=order.len() {
            let mut mr = CMat::zeros(m.nrows(), m.ncols());
            for &j in &order[..r] {
                let s = svd.singular_values[j];
                mr += u.column(j) * vt.row(j) * num_complex::Complex64::from(s);
            }
            let phi = DenseState::from_bipartite_matrix(&mr, &bip).unwrap();
            let achieved = dense_overlap(&pg, &phi).unwrap().norm_sqr();
            err_schmidt = err_schmidt.max((achieved - schmidt_truncation_bound(&schmidt, r)).abs());
        }

        for r in 0..=spec.len() {
            let t = optimal_gaussian_truncation(&g, &bip, r).unwrap();
            let achieved = dense_overlap(&pg, &dense_from_covariance(&t).unwrap()).unwrap().norm_sqr();
            err_rank = err_rank.max((achieved - gaussian_rank_bound(&spec, r).unwrap()).abs());
        }
    }
    let worst = err_overlap.max(err_renyi).max(err_schmidt).max(err_rank);
    outcome(
        worst <= TOL,
        format!(
            "{seeds} seeds, n ≤ 8; max errors overlap {err_overlap:.1e}, renyi {err_renyi:.1e}, schmidt {err_schmidt:.1e}, rank {err_rank:.1e} (tol {TOL:.0e})"
        ),
    )
}

fn brute_force_max(w: &[Vec<f64>]) -> f64 {
    fn rec(w: &[Vec<f64>], row: usize, used: &mut Vec<bool>, acc: f64, best: &mut f64) {
        if row == w.len() {
            *best = best.max(acc);
            return;
        }
        for j in 0..w.len() {
            if !used[j] {
                used[j] = true;
                rec(w, row + 1, used, acc + w[row][j], best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::NEG_INFINITY;
    rec(w, 0, &mut vec![false; w.len()], 0.0, &mut best);
    best
}

fn canonical_state(thetas: &[f64]) -> MajoranaCovariance {
    // pair j couples left mode j with right mode n + j
    let n = thetas.len();
    let mut g = RMat::zeros(4 * n, 4 * n);
    for (j, &t) in thetas.iter().enumerate() {
        let w = w_block(t);
        let idx = [2 * j, 2 * j + 1, 2 * (n + j), 2 * (n + j) + 1];
        for a in 0..4 {
            for b in 0..4 {
                g[(idx[a], idx[b])] = w[(a, b)];
            }
        }
    }
    MajoranaCovariance::new(g).unwrap()
}

fn local_rotation(n: usize, rng: &mut ChaCha8Rng) -> RMat {
    let ol = haar_orthogonal(2 * n, rng);
    let or = haar_orthogonal(2 * n, rng);
    let mut o = RMat::zeros(4 * n, 4 * n);
    o.view_mut((0, 0), (2 * n, 2 * n)).copy_from(&ol);
    o.view_mut((2 * n, 2 * n), (2 * n, 2 * n)).copy_from(&or);
    o
}

// 3. Assignment solver against brute force; random same-spectra pairs.
fn criterion_3() -> Outcome {
    const TOL: f64 = 1e-12;
    let mut worst: f64 = 0.0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 1 + (seed as usize % 8);
        let th: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..std::f64::consts::FRAC_PI_2)).collect();
        let tt: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..std::f64::consts::FRAC_PI_2)).collect();
        let w: Vec<Vec<f64>> = th
            .iter()
            .map(|a| tt.iter().map(|b| ((a - b) / 2.0).cos().powi(2).ln()).collect())
            .collect();
        let (_, solver) = max_weight_assignment(&w);
        worst = worst.max((solver.exp() - brute_force_max(&w).exp()).abs());
    }
    let mut violations = 0;
    let mut max_excess = f64::NEG_INFINITY;
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(10_000 + seed);
        let n = 1 + (seed as usize % 4);
        let th: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..std::f64::consts::FRAC_PI_2)).collect();
        let tt: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..std::f64::consts::FRAC_PI_2)).collect();
        let g = canonical_state(&th).transform(&local_rotation(n, &mut rng));
        let h = canonical_state(&tt).transform(&local_rotation(n, &mut rng));
        let ov = gaussian_overlap(&g, &h).unwrap();
        let bound = spectra_overlap_bound(&th, &tt).unwrap();
        max_excess = max_excess.max(ov - bound);
        if ov > bound + 1e-12 {
            violations += 1;
        }
    }
    outcome(
        worst <= TOL && violations == 0,
        format!(
            "solver vs brute force max diff {worst:.1e} (tol {TOL:.0e}) over 100 seeds; \
             {violations} violations in 200 pairs, max overlap - bound {max_excess:.2e}"
        ),
    )
}

// 4. Counting function on the infinite chain.
fn criterion_4() -> Outcome {
    let mus = [0.9, 0.99, 0.999, 0.9999];
    let ls = [128usize, 256, 512, 1024, 2048, 4096];
    let mut inequality = true;
    let mut ratios = Vec::new();
    for &l in &ls {
        let spec = gaussian_spectrum(&correlation_infinite(l).unwrap()).unwrap();
        for &mu in &mus {
            let count = counting_function(&spec, mu) as f64;
            let sum: f64 = spec.lambdas().iter().map(|&x| f_mu(mu, x)).sum();
            inequality &= count >= sum;
        }
        if l >= 1024 {
            let r = counting_function(&spec, 1.0 - 1e-4) as f64 / (l as f64).ln();
            ratios.push((l, r));
        }
    }
    let growth = ratios.iter().all(|&(_, r)| r > 2.0);
    let shown: Vec<String> = ratios.iter().map(|(l, r)| format!("L={l}: {r:.3}")).collect();
    outcome(
        inequality && growth,
        format!("I ≥ Σf_μ on all L, μ: {inequality}; I/log L at μ=1-1e-4: {}", shown.join(", ")),
    )
}

// 5. Series bound against the exact trace-norm distance.
fn criterion_5() -> Outcome {
    let mut holds = true;
    let mut bounded = true;
    let mut parts = Vec::new();
    for (num, den) in [(1usize, 8usize), (1, 4), (1, 2)] {
        let phi = num as f64 / den as f64;
        for n in (6..=10).map(|k| (1usize << k) + 2) {
            let l = (phi * n as f64).round() as usize;
            let dist = trace_norm_distance(l, n).unwrap();
            holds &= lemma5_series_bound(l, n, 64).unwrap() >= dist;
        }
        let seq: Vec<f64> = (6..=11)
            .map(|k| {
                let n = 1usize << k;
                let l = n * num / den;
                let dist = trace_norm_distance(l, n).unwrap();
                holds &= lemma5_series_bound(l, n, 64).unwrap() >= dist;
                dist
            })
            .collect();
        let k = seq.len();
        let max_idx = (0..k).max_by(|&a, &b| seq[a].total_cmp(&seq[b])).unwrap();
        let growth = (seq[k - 1] - seq[k - 2]) / seq[k - 2];
        let ok = max_idx < k - 1 || growth < 0.01;
        bounded &= ok;
        parts.push(format!("φ={num}/{den}: dist(N=2048) {:.4}, last growth {growth:.2e}", seq[k - 1]));
    }
    outcome(holds && bounded, format!("bound ≥ distance: {holds}; {}", parts.join("; ")))
}

fn half_chain_deviations(n: usize) -> Vec<f64> {
    let l = n / 2 - 1;
    let spec = gaussian_spectrum(&correlation_finite(l, n).unwrap()).unwrap();
    doublet_deviations(&spec, l, n, &CftParams::default(), 2).unwrap()
}

// 6. CFT doublets of the half-chain spectrum.
fn criterion_6() -> Outcome {
    const TOL: f64 = 0.15;
    let rows: Vec<(usize, Vec<f64>)> = [1026usize, 2050, 4098].iter().map(|&n| (n, half_chain_deviations(n))).collect();
    let last = &rows[2].1;
    let within = last.iter().all(|&d| d <= TOL);
    // the larger of the two doublet deviations must fall as N doubles
    let worst: Vec<f64> = rows.iter().map(|(_, d)| d.iter().cloned().fold(0.0, f64::max)).collect();
    let decreasing = worst.windows(2).all(|w| w[1] < w[0]);
    let shown: Vec<String> = rows
        .iter()
        .map(|(n, d)| format!("N={n}: [{:.3}, {:.3}]", d[0], d[1]))
        .collect();
    outcome(
        within && decreasing,
        format!("doublet deviations {}; within {TOL} at N=4098: {within}; decreasing: {decreasing}", shown.join(", ")),
    )
}

fn trend_slope(x: &[f64], y: &[f64]) -> f64 {
    lsq_slope(x, y)
}

// 7. Ladder bond-dimension scan.
fn criterion_7() -> Outcome {
    let ns = [34usize, 66, 130, 258, 514, 1026];
    let mut passed = true;
    let mut parts = Vec::new();
    for delta in [1e-2, 1e-4] {
        let recs = match bond_dimension_scan(&ns, delta, Strategy::LogSpread, 1) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("scan failed at δ={delta}: {e}")),
        };
        let a = recs.iter().all(|r| r.epsilon <= r.delta && r.delta <= delta && !r.saturated);
        let logn: Vec<f64> = recs.iter().map(|r| (r.n as f64).ln()).collect();
        let sup: Vec<f64> = recs.iter().map(|r| r.d.ln() / (r.n as f64).ln()).collect();
        let sub: Vec<f64> = recs.iter().map(|r| r.d.ln() / r.n as f64).collect();
        // D is an integer power of two, so the ratio moves in steps; the trend
        // is judged by the least-squares slope against log N
        let b = trend_slope(&logn, &sup) > 0.0;
        let c = sub.windows(2).all(|w| w[1] < w[0]);
        let fit = fit_growth(&recs, delta).unwrap();
        let d = (0.5..=3.0).contains(&fit.eta)
            && fit.residual_model < fit.residual_power_law
            && fit.residual_model < fit.residual_exponential;
        passed &= a && b && c && d;
        let ds: Vec<String> = recs.iter().map(|r| format!("{}", r.d)).collect();
        parts.push(format!(
            "δ={delta:.0e}: D=[{}] (a) {a} (b) {b} (c) {c} (d) {d} [η={:.3}, residuals model {:.3e}, power {:.3e}, exp {:.3e}]",
            ds.join(","),
            fit.eta,
            fit.residual_model,
            fit.residual_power_law,
            fit.residual_exponential
        ));
    }
    outcome(passed, parts.join("; "))
}

// 8. Toy model separation.
fn criterion_8() -> Outcome {
    const EPS: f64 = 1e-2;
    let mut chi_ok = true;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut parts = Vec::new();
    for k in 10..=20 {
        let n = 1usize << k;
        let spec = ToySpec::new(n, 1.0).unwrap();
        let chi = min_gaussian_chi(&spec, EPS).unwrap();
        if k >= 16 {
            chi_ok &= chi as f64 >= 0.9 * (1.0 - EPS) * spec.nu as f64;
        }
        let rank = toy_schmidt_rank(&spec, EPS).unwrap();
        xs.push((n as f64).ln());
        ys.push(rank.ln());
        if k % 5 == 0 {
            parts.push(format!("N=2^{k}: ν={} χ={chi} rank={rank:.3e}", spec.nu));
        }
    }
    // the exponent c of r = N^c must not grow along the range
    let c: Vec<f64> = xs.iter().zip(&ys).map(|(x, y)| y / x).collect();
    let poly = c.windows(2).all(|w| w[1] <= w[0]) && c.iter().all(|e| e.is_finite());
    outcome(
        chi_ok && poly,
        format!(
            "χ ≥ 0.9(1-ε)ν for N ≥ 2^16: {chi_ok}; log rank/log N {:.3} → {:.3}, non-increasing: {poly}; {}",
            c[0],
            c[c.len() - 1],
            parts.join(", ")
        ),
    )
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_freefermi")).args(args).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

// 9. Verify suite and byte-identical reruns.
fn criterion_9() -> Outcome {
    let report = run_verify(7);
    let failing: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    let runs: [&[&str]; 3] = [
        &["counting", "--n-list", "64,128", "--no-timestamp"],
        &["gfmps-scan", "--n-list", "34,66,130", "--delta-target", "1e-2", "--no-timestamp"],
        &["verify", "--seed", "11", "--no-timestamp"],
    ];
    let mut identical = true;
    for args in runs {
        identical &= run_cli(args) == run_cli(args);
    }
    outcome(
        report.passed && identical,
        format!(
            "verify: {} checks, failing {:?}; repeated CLI runs byte-identical: {identical}",
            report.checks.len(),
            failing
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("entropy scaling", criterion_1),
        ("oracle equivalence", criterion_2),
        ("spectra overlap bound", criterion_3),
        ("counting", criterion_4),
        ("finite-size series bound", criterion_5),
        ("CFT doublets", criterion_6),
        ("ladder scan", criterion_7),
        ("toy model", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = Vec::new();
    let stdout = std::io::stdout();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let res = f();
        let tag = if res.passed { "PASS" } else { "FAIL" };
        let mut h = stdout.lock();
        writeln!(h, "{tag} criterion {} ({name}): {}", k + 1, res.detail).unwrap();
        h.flush().unwrap();
        if !res.passed {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
