//! Dense Fock-space reference implementation for small systems.
//!
//! Basis states are occupation patterns in binary counting order, mode 0 the
//! least significant bit. The pattern with occupied modes `i_1 < … < i_m` is
//! `a_{i_1}† … a_{i_m}† |0⟩`, which under the Jordan-Wigner sign
//! `a_j† |…⟩ = (-1)^{#occupied below j} |…1_j…⟩` carries no extra sign.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gaussian::{Bipartition, CorrelationMatrix, MajoranaCovariance};
use crate::linalg::{CMat, RMat};

pub const MAX_MODES_NUMBER_CONSERVING: usize = 14;
pub const MAX_MODES_PAIRED: usize = 12;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

fn sign_below(bits: usize, j: usize) -> f64 {
    if (bits & ((1usize << j) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl DenseState {
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1usize << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                got: amps.len(),
            });
        }
        let s = Self { n, amps };
        if (s.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::validation("dense state is not normalised"));
        }
        Ok(s)
    }

    pub fn n_modes(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `a_j |ψ⟩` (unnormalised).
    pub fn annihilate(&self, j: usize) -> Vec<Complex64> {
        let mut out = vec![ZERO; self.amps.len()];
        for (b, &z) in self.amps.iter().enumerate() {
            if b >> j & 1 == 1 {
                out[b ^ (1 << j)] += z * sign_below(b, j);
            }
        }
        out
    }

    /// Majorana `c_{j,s}` (`s ∈ {0, 1}` for the first/second) applied to a vector.
    fn majorana(v: &[Complex64], j: usize, s: usize) -> Vec<Complex64> {
        let mut out = vec![ZERO; v.len()];
        for (b, &z) in v.iter().enumerate() {
            if z == ZERO {
                continue;
            }
            let sg = sign_below(b, j);
            let occupied = b >> j & 1 == 1;
            let f = match (s, occupied) {
                (0, _) => Complex64::new(sg, 0.0),
                // c_2 = i(a - a†): a acts on occupied, -a† on empty
                (_, true) => I * sg,
                (_, false) => -I * sg,
            };
            out[b ^ (1 << j)] += z * f;
        }
        out
    }

    /// `⟨a_i† a_j⟩` for all pairs.
    pub fn correlation(&self) -> CMat {
        let a: Vec<Vec<Complex64>> = (0..self.n).map(|j| self.annihilate(j)).collect();
        CMat::from_fn(self.n, self.n, |i, j| inner(&a[i], &a[j]))
    }

    /// `Γ_ab = (i/2)⟨[c_a, c_b]⟩` in the interleaved Majorana order.
    pub fn covariance(&self) -> RMat {
        let d = 2 * self.n;
        let c: Vec<Vec<Complex64>> = (0..d)
            .map(|a| Self::majorana(&self.amps, a / 2, a % 2))
            .collect();
        RMat::from_fn(d, d, |a, b| {
            if a == b {
                0.0
            } else {
                // ⟨c_a c_b⟩ = ⟨c_a ψ | c_b ψ⟩ and Γ_ab = i⟨c_a c_b⟩ for a ≠ b
                (I * inner(&c[a], &c[b])).re
            }
        })
    }

    /// Amplitudes reordered so that the modes in `order` come first, with the
    /// fermionic sign of the reordering.
    fn reorder(&self, order: &[usize]) -> Vec<Complex64> {
        let mut newpos = vec![0usize; self.n];
        for (p, &m) in order.iter().enumerate() {
            newpos[m] = p;
        }
        let mut out = vec![ZERO; self.amps.len()];
        for (b, &z) in self.amps.iter().enumerate() {
            let occ: Vec<usize> = (0..self.n).filter(|&j| b >> j & 1 == 1).map(|j| newpos[j]).collect();
            let mut inv = 0;
            for x in 0..occ.len() {
                for y in x + 1..occ.len() {
                    if occ[x] > occ[y] {
                        inv += 1;
                    }
                }
            }
            let nb: usize = occ.iter().map(|&p| 1usize << p).sum();
            out[nb] = if inv % 2 == 0 { z } else { -z };
        }
        out
    }

    /// Amplitude matrix `M[l][r]` across the bipartition.
    pub fn bipartite_matrix(&self, bip: &Bipartition) -> Result<CMat> {
        if bip.n_modes() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: bip.n_modes(),
            });
        }
        let v = self.reorder(&bip.ordering());
        let nl = bip.left().len();
        let (dl, dr) = (1usize << nl, 1usize << bip.right().len());
        Ok(CMat::from_fn(dl, dr, |l, r| v[l + (r << nl)]))
    }

    /// Renormalised state from an amplitude matrix over `bip`.
    pub fn from_bipartite_matrix(m: &CMat, bip: &Bipartition) -> Result<Self> {
        let n = bip.n_modes();
        let nl = bip.left().len();
        let mut v = vec![ZERO; 1 << n];
        for l in 0..m.nrows() {
            for r in 0..m.ncols() {
                v[l + (r << nl)] = m[(l, r)];
            }
        }
        let mut tmp = Self { n, amps: v };
        // mode p of `tmp` is original mode order[p]; undo with the inverse permutation
        let order = bip.ordering();
        let mut back = vec![0usize; n];
        for (p, &mo) in order.iter().enumerate() {
            back[mo] = p;
        }
        tmp.amps = tmp.reorder(&back);
        let nrm = tmp.norm();
        if nrm < 1e-14 {
            return Err(Error::numerical("zero amplitude matrix"));
        }
        tmp.amps.iter_mut().for_each(|z| *z /= nrm);
        Ok(tmp)
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Fixes the global phase: first amplitude of maximal modulus made real positive.
fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    for (i, z) in v.iter().enumerate() {
        if z.norm() > v[best].norm() + 1e-12 {
            best = i;
        }
    }
    let ph = v[best] / v[best].norm();
    v.iter_mut().for_each(|z| *z /= ph);
}

/// Slater determinant with `⟨a_i† a_j⟩ = C` for a projector `C`.
pub fn dense_from_correlation(c: &CorrelationMatrix) -> Result<DenseState> {
    let n = c.n_modes();
    if n > MAX_MODES_NUMBER_CONSERVING {
        return Err(Error::OracleCap {
            n,
            cap: MAX_MODES_NUMBER_CONSERVING,
        });
    }
    if c.projector_error() > 1e-9 {
        return Err(Error::validation("correlation matrix is not a projector"));
    }
    // C = W̄ Wᵀ with W the filled orbitals: eigenvectors of C̄ at eigenvalue 1.
    let eig = nalgebra::SymmetricEigen::new(c.entries().map(|z| z.conj()));
    let mut cols: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] > 0.5).collect();
    cols.sort();
    let m = cols.len();
    let w = CMat::from_fn(n, m, |i, k| eig.eigenvectors[(i, cols[k])]);
    let mut amps = vec![ZERO; 1 << n];
    for (b, amp) in amps.iter_mut().enumerate() {
        if (b as u32).count_ones() as usize != m {
            continue;
        }
        let rows: Vec<usize> = (0..n).filter(|&j| b >> j & 1 == 1).collect();
        let sub = DMatrix::from_fn(m, m, |r, k| w[(rows[r], k)]);
        *amp = if m == 0 { Complex64::new(1.0, 0.0) } else { sub.determinant() };
    }
    fix_phase(&mut amps);
    DenseState::new(n, amps)
}

/// General pure Gaussian state from its covariance: the common kernel of the
/// annihilators `b = Σ_a u_a c_a` with `iΓu = u`, found by projecting a fixed
/// generic vector.
pub fn dense_from_covariance(g: &MajoranaCovariance) -> Result<DenseState> {
    let n = g.n_modes();
    if n > MAX_MODES_PAIRED {
        return Err(Error::OracleCap {
            n,
            cap: MAX_MODES_PAIRED,
        });
    }
    let pe = g.purity_error();
    if pe > 1e-8 {
        return Err(Error::NotPure(pe));
    }
    let d = 2 * n;
    let ig = g.entries().map(|x| Complex64::new(0.0, x));
    let eig = nalgebra::SymmetricEigen::new(ig);
    let us: Vec<Vec<Complex64>> = (0..d)
        .filter(|&k| eig.eigenvalues[k] > 0.0)
        .map(|k| {
            // normalise so that {b, b†} = 1
            eig.eigenvectors
                .column(k)
                .iter()
                .map(|z| z / std::f64::consts::SQRT_2)
                .collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<Complex64> = (0..1usize << n)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    for u in &us {
        // P = b b† with b = Σ u_a c_a and b† = Σ ū_a c_a
        let mut bd = vec![ZERO; v.len()];
        for (a, ua) in u.iter().enumerate() {
            let cv = DenseState::majorana(&v, a / 2, a % 2);
            bd.iter_mut().zip(cv).for_each(|(x, y)| *x += ua.conj() * y);
        }
        let mut bbd = vec![ZERO; v.len()];
        for (a, ua) in u.iter().enumerate() {
            let cv = DenseState::majorana(&bd, a / 2, a % 2);
            bbd.iter_mut().zip(cv).for_each(|(x, y)| *x += ua * y);
        }
        v = bbd;
    }
    let nrm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if nrm < 1e-8 {
        return Err(Error::numerical("projection onto the Gaussian state vanished"));
    }
    v.iter_mut().for_each(|z| *z /= nrm);
    fix_phase(&mut v);
    DenseState::new(n, v)
}

/// `⟨ψ|φ⟩`.
pub fn dense_overlap(psi: &DenseState, phi: &DenseState) -> Result<Complex64> {
    if psi.n != phi.n {
        return Err(Error::DimensionMismatch {
            expected: psi.n,
            got: phi.n,
        });
    }
    Ok(inner(&psi.amps, &phi.amps))
}

/// Schmidt coefficients across `bip`, descending.
pub fn dense_schmidt(psi: &DenseState, bip: &Bipartition) -> Result<Vec<f64>> {
    let m = psi.bipartite_matrix(bip)?;
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// Rényi entropy of the reduced state on either side of `bip`.
pub fn dense_renyi(psi: &DenseState, bip: &Bipartition, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::validation(format!("Rényi index must be positive, got {alpha}")));
    }
    let p: Vec<f64> = dense_schmidt(psi, bip)?.iter().map(|s| s * s).collect();
    Ok(if alpha.is_infinite() {
        -p[0].ln()
    } else if alpha == 1.0 {
        -p.iter().filter(|&&x| x > 0.0).map(|x| x * x.ln()).sum::<f64>()
    } else {
        p.iter().map(|x| x.powf(alpha)).sum::<f64>().ln() / (1.0 - alpha)
    })
}
