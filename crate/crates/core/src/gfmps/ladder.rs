//! Two-rail ladder GfMPS ansatz for the half-filled ring.
//!
//! The ladder is parametrised by two odd, monic polynomials `p` and `q` of
//! degree `χ_M`. Writing `c = cos(k/2)`, `s = sin(k/2)`, the paired state has
//! symbol `τ_k = (q(s) + i p(c)) / (q(s) - i p(c))` on the unit circle and
//! occupation `n_k = (1 - Re τ_k)/2 = p(c)² / (p(c)² + q(s)²)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rail::RailSpec;
use crate::error::{Error, Result};
use crate::gaussian::MajoranaCovariance;
use crate::hopping::MomentumGrid;
use crate::linalg::RMat;

/// Odd polynomial in `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum OddPoly {
    /// `x Π_i (x² - ξ_i²)`.
    Roots(Vec<f64>),
    /// Monic rescaling of `Σ_l c_l T_l(x)`.
    Chebyshev(Vec<f64>),
    /// Monomial coefficients, index equals power, leading coefficient one.
    Monomial(Vec<f64>),
}

impl OddPoly {
    pub fn degree(&self) -> usize {
        match self {
            OddPoly::Roots(r) => 2 * r.len() + 1,
            OddPoly::Chebyshev(c) | OddPoly::Monomial(c) => c.len().saturating_sub(1),
        }
    }

    fn validate(&self) -> Result<()> {
        let odd_only = |c: &[f64]| c.iter().step_by(2).all(|&x| x == 0.0);
        match self {
            OddPoly::Roots(r) => {
                if r.iter().any(|x| !x.is_finite()) {
                    return Err(Error::validation("non-finite root"));
                }
            }
            OddPoly::Chebyshev(c) | OddPoly::Monomial(c) => {
                if c.len() < 2 || c.len() % 2 != 0 || !odd_only(c) {
                    return Err(Error::validation("polynomial must be odd with odd degree"));
                }
                if c.iter().any(|x| !x.is_finite()) {
                    return Err(Error::validation("non-finite coefficient"));
                }
                let lead = c[c.len() - 1];
                if let OddPoly::Monomial(_) = self {
                    if (lead - 1.0).abs() > 1e-12 {
                        return Err(Error::validation(format!(
                            "polynomial must be monic, leading coefficient {lead}"
                        )));
                    }
                } else if lead == 0.0 {
                    return Err(Error::validation("leading Chebyshev coefficient vanishes"));
                }
            }
        }
        Ok(())
    }

    /// Sign and `log|·|` of the leading monomial coefficient of `Σ c_l T_l`.
    fn chebyshev_lead(c: &[f64]) -> (f64, f64) {
        let d = c.len() - 1;
        let last = c[d];
        (last.signum(), last.abs().ln() + d.saturating_sub(1) as f64 * 2f64.ln())
    }

    /// Divides monomial coefficients by the leading coefficient. A Chebyshev
    /// series is always read as its monic rescaling, so it is left unchanged.
    pub fn monic(self) -> Result<Self> {
        match self {
            OddPoly::Monomial(c) => {
                let lead = *c.last().unwrap_or(&0.0);
                if lead == 0.0 || !lead.is_finite() {
                    return Err(Error::validation("leading coefficient vanishes"));
                }
                Ok(OddPoly::Monomial(c.iter().map(|x| x / lead).collect()))
            }
            other => Ok(other),
        }
    }

    /// Sign and `log|p(x)|`; the log is `-∞` at a zero.
    pub fn sign_log(&self, x: f64) -> (f64, f64) {
        match self {
            OddPoly::Roots(r) => r.iter().fold((x.signum(), x.abs().ln()), |(s, l), xi| {
                let f = (x - xi) * (x + xi);
                (s * f.signum(), l + (x - xi).abs().ln() + (x + xi).abs().ln())
            }),
            OddPoly::Monomial(c) => {
                let v = c.iter().rev().fold(0.0, |acc, a| acc * x + a);
                (v.signum(), v.abs().ln())
            }
            OddPoly::Chebyshev(c) => {
                let v = clenshaw(c, x);
                let (s, l) = Self::chebyshev_lead(c);
                (s * v.signum(), v.abs().ln() - l)
            }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (s, l) = self.sign_log(x);
        s * l.exp()
    }

    pub fn log_abs(&self, x: f64) -> f64 {
        self.sign_log(x).1
    }

    /// Monomial coefficients in `x`.
    pub fn monomial(&self) -> Vec<f64> {
        match self {
            OddPoly::Monomial(c) => c.clone(),
            OddPoly::Roots(r) => {
                let mut c = vec![0.0, 1.0];
                for xi in r {
                    // multiply by x² - ξ²
                    let mut next = vec![0.0; c.len() + 2];
                    for (i, a) in c.iter().enumerate() {
                        next[i + 2] += a;
                        next[i] -= a * xi * xi;
                    }
                    c = next;
                }
                c
            }
            OddPoly::Chebyshev(cheb) => {
                let n = cheb.len();
                let mut out = vec![0.0; n];
                let (mut t0, mut t1) = (vec![1.0], vec![0.0, 1.0]);
                for (l, a) in cheb.iter().enumerate() {
                    let t = if l == 0 { &t0 } else { &t1 };
                    for (i, v) in t.iter().enumerate() {
                        out[i] += a * v;
                    }
                    if l >= 1 {
                        let mut t2 = vec![0.0; t1.len() + 1];
                        for (i, v) in t1.iter().enumerate() {
                            t2[i + 1] += 2.0 * v;
                        }
                        for (i, v) in t0.iter().enumerate() {
                            t2[i] -= v;
                        }
                        t0 = std::mem::replace(&mut t1, t2);
                    }
                }
                let lead = *out.last().unwrap();
                out.iter().map(|v| v / lead).collect()
            }
        }
    }
}

fn clenshaw(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for a in c.iter().skip(1).rev() {
        let b0 = a + 2.0 * x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    c[0] + x * b1 - b2
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderSpec {
    p: OddPoly,
    q: OddPoly,
}

impl LadderSpec {
    pub fn new(p: OddPoly, q: OddPoly) -> Result<Self> {
        p.validate()?;
        q.validate()?;
        if p.degree() != q.degree() {
            return Err(Error::validation(format!(
                "p and q must share a degree, got {} and {}",
                p.degree(),
                q.degree()
            )));
        }
        Ok(Self { p, q })
    }

    /// From monomial coefficients (index equals power).
    pub fn from_poly_coeffs(p: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        Self::new(OddPoly::Monomial(p), OddPoly::Monomial(q))
    }

    /// `p(x) = q(x) = x`, giving `n_k = cos²(k/2)`.
    pub fn minimal() -> Self {
        Self {
            p: OddPoly::Roots(vec![]),
            q: OddPoly::Roots(vec![]),
        }
    }

    pub fn p(&self) -> &OddPoly {
        &self.p
    }

    pub fn q(&self) -> &OddPoly {
        &self.q
    }

    pub fn chi_majorana(&self) -> usize {
        self.p.degree()
    }

    /// `D = 2^⌈χ_M/2⌉`.
    pub fn bond_dimension(&self) -> f64 {
        2f64.powi(self.chi_majorana().div_ceil(2) as i32)
    }

    /// `log(q(s)²/p(c)²)`; `n_k = 1/(1 + e^u)`.
    fn log_ratio(&self, k: f64) -> Result<f64> {
        let (s, c) = (k / 2.0).sin_cos();
        let lp = self.p.log_abs(c);
        let lq = self.q.log_abs(s);
        if lp == f64::NEG_INFINITY && lq == f64::NEG_INFINITY {
            return Err(Error::DegenerateAnsatz(k));
        }
        Ok(2.0 * (lq - lp))
    }

    pub fn occupation(&self, k: f64) -> Result<f64> {
        let u = self.log_ratio(k)?;
        Ok(logistic(-u))
    }

    /// Phase `τ_k` on the unit circle.
    pub fn tau(&self, k: f64) -> Result<Complex64> {
        let (s, c) = (k / 2.0).sin_cos();
        let (sp, lp) = self.p.sign_log(c);
        let (sq, lq) = self.q.sign_log(s);
        if lp == f64::NEG_INFINITY && lq == f64::NEG_INFINITY {
            return Err(Error::DegenerateAnsatz(k));
        }
        let i = Complex64::i();
        Ok(if lq >= lp {
            let w = sp * sq * (lp - lq).exp();
            (1.0 + i * w) / (1.0 - i * w)
        } else {
            let w = sp * sq * (lq - lp).exp();
            (w + i) / (w - i)
        })
    }

    /// Monic `π(y)` and `θ(y)` in `y = cos k`, ascending coefficients, with
    /// `n_k = (1+y)π² / ((1+y)π² + (1-y)θ²)`.
    pub fn pi_theta(&self) -> (Vec<f64>, Vec<f64>) {
        let half = |poly: &OddPoly, sign: f64| -> Vec<f64> {
            // P(w) with p(x) = x P(x²), then π(y) ∝ P((1 + sign·y)/2)
            let m = poly.monomial();
            let big_p: Vec<f64> = m.iter().skip(1).step_by(2).copied().collect();
            let mut out = vec![0.0; big_p.len()];
            let mut pow = vec![1.0];
            for a in &big_p {
                for (i, v) in pow.iter().enumerate() {
                    out[i] += a * v;
                }
                let mut next = vec![0.0; pow.len() + 1];
                for (i, v) in pow.iter().enumerate() {
                    next[i] += v / 2.0;
                    next[i + 1] += sign * v / 2.0;
                }
                pow = next;
            }
            let lead = *out.last().unwrap();
            out.iter().map(|v| v / lead).collect()
        };
        (half(&self.p, 1.0), half(&self.q, -1.0))
    }
}

fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// `n_k` from `π`, `θ` in `y = cos k`.
pub fn occupation_pi_theta(pi: &[f64], theta: &[f64], k: f64) -> f64 {
    let y = k.cos();
    let ev = |c: &[f64]| c.iter().rev().fold(0.0, |acc, a| acc * y + a);
    let (a, b) = ((1.0 + y) * ev(pi).powi(2), (1.0 - y) * ev(theta).powi(2));
    a / (a + b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    AllNearFermi,
    LogSpread,
    Fourier,
    Chebyshev,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::AllNearFermi,
        Strategy::LogSpread,
        Strategy::Fourier,
        Strategy::Chebyshev,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::AllNearFermi => "all-near-fermi",
            Strategy::LogSpread => "log-spread",
            Strategy::Fourier => "fourier",
            Strategy::Chebyshev => "chebyshev",
        }
    }

    /// Whether zeros sit on the grid momenta of the ring.
    pub fn uses_grid(self) -> bool {
        matches!(self, Strategy::AllNearFermi | Strategy::LogSpread)
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::validation(format!("unknown strategy `{s}`")))
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Grid momenta in `(0, π/2)` ordered from the Fermi point inwards, and in
/// `(π/2, π)` ordered outwards. `0`, `π/2` and `π` are excluded.
fn fermi_ranked_momenta(n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let grid = MomentumGrid::new(n)?;
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (idx, &j) in grid.labels().iter().enumerate() {
        let (four_j, ni) = (4 * j, n as i64);
        if j <= 0 || 2 * j == ni || four_j == ni {
            continue;
        }
        let k = grid.momentum(idx);
        if four_j < ni {
            inside.push(k);
        } else {
            outside.push(k);
        }
    }
    inside.reverse();
    Ok((inside, outside))
}

/// Ranks (1-based, counted from the Fermi point) used by the log-spread
/// strategy: powers of two first, then the smallest unused ranks.
pub fn log_spread_ranks(d: usize, available: usize) -> Result<Vec<usize>> {
    if d > available {
        return Err(Error::validation(format!(
            "{d} zeros requested but only {available} momenta available"
        )));
    }
    let mut ranks: Vec<usize> = std::iter::successors(Some(1usize), |r| Some(r * 2))
        .take_while(|&r| r <= available)
        .take(d)
        .collect();
    let mut next = 1;
    while ranks.len() < d {
        if !ranks.contains(&next) {
            ranks.push(next);
        }
        next += 1;
    }
    Ok(ranks)
}

/// Zeros per polynomial available on a ring of `n` sites for the grid strategies.
pub fn max_grid_zeros(n: usize) -> Result<usize> {
    let (inside, outside) = fermi_ranked_momenta(n)?;
    Ok(inside.len().min(outside.len()))
}

/// Ladder with odd degree `chi_m` chosen by `strategy`. Grid strategies put
/// the zeros of `p` on empty momenta and those of `q` on filled momenta of a
/// ring with `n` sites.
pub fn build_ladder(n: usize, strategy: Strategy, chi_m: usize) -> Result<LadderSpec> {
    if chi_m % 2 == 0 {
        return Err(Error::validation(format!("χ_M must be odd, got {chi_m}")));
    }
    let d = (chi_m - 1) / 2;
    match strategy {
        Strategy::AllNearFermi | Strategy::LogSpread => {
            let (inside, outside) = fermi_ranked_momenta(n)?;
            let available = inside.len().min(outside.len());
            let ranks: Vec<usize> = if strategy == Strategy::AllNearFermi {
                if d > available {
                    return Err(Error::validation(format!(
                        "{d} zeros requested but only {available} momenta available"
                    )));
                }
                (1..=d).collect()
            } else {
                log_spread_ranks(d, available)?
            };
            let p = ranks.iter().map(|&r| (outside[r - 1] / 2.0).cos()).collect();
            let q = ranks.iter().map(|&r| (inside[r - 1] / 2.0).sin()).collect();
            LadderSpec::new(OddPoly::Roots(p), OddPoly::Roots(q))
        }
        Strategy::Fourier => {
            // truncated Chebyshev series of sign(x)·[|x| > 1/√2]
            let c: Vec<f64> = (0..=chi_m)
                .map(|l| {
                    if l % 2 == 0 {
                        0.0
                    } else {
                        4.0 / (l as f64 * PI) * (l as f64 * PI / 4.0).sin()
                    }
                })
                .collect();
            let p = OddPoly::Chebyshev(c);
            LadderSpec::new(p.clone(), p)
        }
        Strategy::Chebyshev => {
            // zeros of π at Chebyshev nodes of [-1, 0] in y = cos k, θ mirrored
            let xi: Vec<f64> = (1..=d)
                .map(|i| {
                    let y = -0.5 + 0.5 * ((2 * i - 1) as f64 * PI / (2 * d) as f64).cos();
                    ((1.0 + y) / 2.0).sqrt()
                })
                .collect();
            LadderSpec::new(OddPoly::Roots(xi.clone()), OddPoly::Roots(xi))
        }
    }
}

/// Occupations of the ladder on the grid of a ring with `n` sites.
pub fn ladder_occupations(spec: &LadderSpec, grid: &MomentumGrid) -> Result<Vec<f64>> {
    (0..grid.size()).map(|i| spec.occupation(grid.momentum(i))).collect()
}

/// Normal correlation matrix `⟨a_i† a_j⟩` of the ladder on `l` sites of an
/// `n`-site ring. The ladder state is paired, so this is not the full state.
pub fn ladder_to_correlation(
    spec: &LadderSpec,
    n: usize,
    l: usize,
) -> Result<crate::gaussian::CorrelationMatrix> {
    let grid = MomentumGrid::new(n)?;
    let occ = crate::hopping::OccupationFunction::new(&grid, ladder_occupations(spec, &grid)?)?;
    crate::hopping::correlation_from_occupation(&occ, &grid, l)
}

/// Full pure covariance of the ladder state on a ring of `n` sites:
/// `Γ_{(i,1),(j,2)} = X_{ij}`, `X` the real orthogonal circulant with symbol `τ_k`.
pub fn ladder_covariance(spec: &LadderSpec, n: usize) -> Result<MajoranaCovariance> {
    let grid = MomentumGrid::new(n)?;
    let taus: Vec<(i64, Complex64)> = grid
        .labels()
        .iter()
        .enumerate()
        .map(|(idx, &j)| Ok((j, spec.tau(grid.momentum(idx))?)))
        .collect::<Result<_>>()?;
    let ni = n as i64;
    let x: Vec<f64> = (0..ni)
        .map(|r| {
            taus.iter()
                .map(|(j, t)| {
                    let ph = (j * r).rem_euclid(ni) as f64 * 2.0 * PI / n as f64;
                    (t * Complex64::from_polar(1.0, ph)).re
                })
                .sum::<f64>()
                / n as f64
        })
        .collect();
    let mut g = RMat::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let v = x[(j as i64 - i as i64).rem_euclid(ni) as usize];
            g[(2 * i, 2 * j + 1)] = v;
            g[(2 * j + 1, 2 * i)] = -v;
        }
    }
    MajoranaCovariance::new(g)
}

/// Energy error `δ = Σ_k |n_k - n_k^exact|` and infidelity `ε = 1 - |⟨ψ|GS⟩|²`
/// against the ring ground state, from the factorised overlap.
///
/// The ladder occupies `k` and `-k` together, so for `N ≡ 0 (mod 4)`, where
/// the ground state fills `-π/2` but not `π/2`, the overlap vanishes
/// identically; such rings are rejected.
pub fn ladder_errors(spec: &LadderSpec, n: usize) -> Result<(f64, f64)> {
    if n % 4 == 0 {
        return Err(Error::validation(format!(
            "ladder errors need N ≢ 0 (mod 4): the ground state at N = {n} is not parity-even in (k, -k) pairs"
        )));
    }
    let grid = MomentumGrid::new(n)?;
    let mut delta = 0.0;
    let mut log_f = 0.0;
    for idx in 0..grid.size() {
        let u = spec.log_ratio(grid.momentum(idx))?;
        // ln n = -softplus(u), ln(1 - n) = -softplus(-u)
        if grid.is_filled(idx) {
            delta += logistic(u);
            log_f -= softplus(u) / 2.0;
        } else {
            delta += logistic(-u);
            log_f -= softplus(-u) / 2.0;
        }
    }
    Ok((delta, -log_f.exp_m1()))
}

/// Composite ladder from two `f = 1` rails with equal virtual dimension:
/// `τ(k) = -e^{ik} T₁(e^{ik}) conj(T₂(e^{ik})) / (T₁(1) conj(T₂(1)))`,
/// fitted to odd monic `p`, `q` of degree `2χ + 1`.
pub fn ladder_from_rails(r1: &RailSpec, r2: &RailSpec) -> Result<LadderSpec> {
    let chi = r1.virtual_modes();
    if r2.virtual_modes() != chi || r1.physical_modes() != 1 || r2.physical_modes() != 1 {
        return Err(Error::validation("rails must have f = 1 and equal virtual dimension"));
    }
    let one = Complex64::new(1.0, 0.0);
    let norm = r1.transfer_scalar(one)? * r2.transfer_scalar(one)?.conj();
    let deg = 2 * chi + 1;
    let unknowns = deg + 1; // odd coefficients of p then q
    let samples = 4 * unknowns + 8;
    let mut rows = Vec::with_capacity(2 * samples * unknowns);
    for m in 0..samples {
        let k = PI * (m as f64 + 0.5) / samples as f64 * 1.9 - 0.95 * PI;
        let z = Complex64::from_polar(1.0, k);
        let tau = -z * r1.transfer_scalar(z)? * r2.transfer_scalar(z)?.conj() / norm;
        let (s, c) = (k / 2.0).sin_cos();
        // q(s)(τ - 1) - i p(c)(τ + 1) = 0
        let mut re = Vec::with_capacity(unknowns);
        let mut im = Vec::with_capacity(unknowns);
        for e in (1..=deg).step_by(2) {
            let v = -Complex64::i() * (tau + 1.0) * c.powi(e as i32);
            re.push(v.re);
            im.push(v.im);
        }
        for e in (1..=deg).step_by(2) {
            let v = (tau - 1.0) * s.powi(e as i32);
            re.push(v.re);
            im.push(v.im);
        }
        rows.extend(re);
        rows.extend(im);
    }
    let a = RMat::from_row_slice(2 * samples, unknowns, &rows);
    let svd = a.svd(false, true);
    let vt = svd.v_t.ok_or_else(|| Error::numerical("SVD failed"))?;
    let (imin, smin) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |b, (i, &s)| if s < b.1 { (i, s) } else { b });
    let smax = svd.singular_values.max();
    if smin > 1e-8 * smax {
        return Err(Error::numerical(format!(
            "rail phases do not fit a ladder of degree {deg} (residual {:.2e})",
            smin / smax
        )));
    }
    let v = vt.row(imin);
    let half = unknowns / 2;
    let expand = |coeffs: Vec<f64>| {
        let mut m = vec![0.0; deg + 1];
        for (i, c) in coeffs.into_iter().enumerate() {
            m[2 * i + 1] = c;
        }
        OddPoly::Monomial(m).monic()
    };
    let p = expand((0..half).map(|i| v[i]).collect())?;
    let q = expand((half..unknowns).map(|i| v[i]).collect())?;
    LadderSpec::new(p, q)
}
