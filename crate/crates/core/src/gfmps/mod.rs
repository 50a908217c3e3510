//! Translation-invariant Gaussian fermionic matrix product states.
//!
//! A fiducial state on `2f` physical and `2χ_M` virtual Majoranas has
//! covariance `[[A, B], [-Bᵀ, D]]`. Virtual Majoranas are ordered as
//! `χ_M` left bonds followed by `χ_M` right bonds. Contracting the bonds of a
//! ring gives, at each momentum, `G(k) = A + B [D - Ω(k)]⁻¹ Bᵀ` with
//! `Ω(k) = [[0, e^{ik}], [-e^{-ik}, 0]]`.

pub mod ladder;
pub mod rail;
pub mod scan;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::{MajoranaCovariance, TOL_PHYS};
use crate::linalg::{CMat, RMat};

/// Resolvents with an inverse condition number below this are singular.
pub const SINGULAR_RCOND: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FiducialState {
    a: RMat,
    b: RMat,
    d: RMat,
    f: usize,
    chi_m: usize,
}

impl FiducialState {
    /// Validates block shapes and that the assembled covariance is pure.
    pub fn new(a: RMat, b: RMat, d: RMat) -> Result<Self> {
        let two_f = a.nrows();
        let two_chi = d.nrows();
        if two_f % 2 != 0 || two_chi % 2 != 0 || two_f == 0 {
            return Err(Error::validation("fiducial blocks must have even, nonzero sizes"));
        }
        if a.ncols() != two_f || d.ncols() != two_chi {
            return Err(Error::validation("A and D must be square"));
        }
        if b.nrows() != two_f || b.ncols() != two_chi {
            return Err(Error::DimensionMismatch {
                expected: two_f * two_chi,
                got: b.nrows() * b.ncols(),
            });
        }
        let fid = Self {
            a,
            b,
            d,
            f: two_f / 2,
            chi_m: two_chi / 2,
        };
        let g = MajoranaCovariance::new(fid.assemble())?;
        let err = g.purity_error();
        if err > TOL_PHYS {
            return Err(Error::NotPure(err));
        }
        Ok(fid)
    }

    /// Random pure fiducial state: a Haar-random pure Gaussian state whose
    /// first `2f` Majoranas are physical.
    pub fn random(f: usize, chi_m: usize, seed: u64) -> Result<Self> {
        if f == 0 || chi_m == 0 {
            return Err(Error::validation("f and χ_M must be positive"));
        }
        let g = crate::gaussian::random_pure_gaussian(f + chi_m, seed, false).into_entries();
        let (p, v) = (2 * f, 2 * chi_m);
        let a = g.view((0, 0), (p, p)).into_owned();
        let b = g.view((0, p), (p, v)).into_owned();
        let d = g.view((p, p), (v, v)).into_owned();
        Self::new(a, b, d)
    }

    pub fn a(&self) -> &RMat {
        &self.a
    }

    pub fn b(&self) -> &RMat {
        &self.b
    }

    pub fn d(&self) -> &RMat {
        &self.d
    }

    pub fn physical_modes(&self) -> usize {
        self.f
    }

    /// Number of virtual Majoranas per bond.
    pub fn chi_majorana(&self) -> usize {
        self.chi_m
    }

    pub fn assemble(&self) -> RMat {
        let (p, v) = (2 * self.f, 2 * self.chi_m);
        let mut g = RMat::zeros(p + v, p + v);
        g.view_mut((0, 0), (p, p)).copy_from(&self.a);
        g.view_mut((0, p), (p, v)).copy_from(&self.b);
        g.view_mut((p, 0), (v, p)).copy_from(&(-self.b.transpose()));
        g.view_mut((p, p), (v, v)).copy_from(&self.d);
        g
    }
}

fn to_complex(m: &RMat) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Reciprocal condition number from singular values.
pub(crate) fn rcond(m: &CMat) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.max();
    if max == 0.0 {
        0.0
    } else {
        sv.min() / max
    }
}

/// `G(k) = A + B [D - Ω(k)]⁻¹ Bᵀ`, a `2f × 2f` complex matrix.
pub fn contract_momentum(fid: &FiducialState, k: f64) -> Result<CMat> {
    let chi = fid.chi_m;
    let mut m = to_complex(&fid.d);
    let e = Complex64::from_polar(1.0, k);
    for i in 0..chi {
        m[(i, chi + i)] -= e;
        m[(chi + i, i)] += e.conj();
    }
    let rc = rcond(&m);
    if !(rc > SINGULAR_RCOND) {
        return Err(Error::SingularContraction {
            k,
            cond: if rc > 0.0 { 1.0 / rc } else { f64::INFINITY },
        });
    }
    let bc = to_complex(&fid.b);
    let x = m
        .lu()
        .solve(&bc.transpose())
        .ok_or(Error::SingularContraction { k, cond: f64::INFINITY })?;
    Ok(to_complex(&fid.a) + bc * x)
}

/// `max |G G† - 1|`, zero for a pure contracted state.
pub fn contraction_purity_error(g: &CMat) -> f64 {
    let n = g.nrows();
    let p = g * g.adjoint() - DMatrix::<Complex64>::identity(n, n);
    p.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_fiducial_contracts_to_pure_state() {
        for seed in 0..5 {
            let fid = FiducialState::random(1, 3, seed).unwrap();
            for k in [0.3, 1.1, 2.9, -0.7] {
                let g = contract_momentum(&fid, k).unwrap();
                assert!(contraction_purity_error(&g) < 1e-9, "seed {seed} k {k}");
                // iG is Hermitian
                let h = g.map(|z| z * Complex64::i());
                let herm = (&h - h.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(herm < 1e-9);
            }
        }
    }

    #[test]
    fn rejects_mixed_fiducial() {
        let fid = FiducialState::random(1, 2, 1).unwrap();
        let b = fid.b() * 0.5;
        assert!(matches!(
            FiducialState::new(fid.a().clone(), b, fid.d().clone()),
            Err(Error::NotPure(_))
        ));
    }

    #[test]
    fn singular_resolvent_is_reported() {
        // D = Ω(0) makes D - Ω(0) vanish
        let mut d = RMat::zeros(2, 2);
        d[(0, 1)] = 1.0;
        d[(1, 0)] = -1.0;
        let fid = FiducialState {
            a: RMat::zeros(2, 2),
            b: RMat::zeros(2, 2),
            d,
            f: 1,
            chi_m: 1,
        };
        assert!(matches!(
            contract_momentum(&fid, 0.0),
            Err(Error::SingularContraction { .. })
        ));
        assert!(contract_momentum(&fid, 1.0).is_ok());
    }
}
