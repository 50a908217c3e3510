//! Single-rail GfMPS: a real orthogonal `O` on `f` physical and `χ` virtual
//! modes, read as `Γ_O = [[0, O], [-Oᵀ, 0]]` between first and second
//! Majoranas. Its momentum-space symbol is the matrix transfer function
//! `T(z) = O₁₁ + O₁₂ (z - O₂₂)⁻¹ O₂₁`, unimodular on `|z| = 1`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{rcond, FiducialState, SINGULAR_RCOND};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, RMat};

const TOL_ORTHO: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct RailSpec {
    o: RMat,
    f: usize,
}

impl RailSpec {
    pub fn new(o: RMat, f: usize) -> Result<Self> {
        let n = o.nrows();
        if o.ncols() != n || f == 0 || f >= n {
            return Err(Error::validation(format!(
                "rail needs a square O with 0 < f < size, got {}×{} and f = {f}",
                o.nrows(),
                o.ncols()
            )));
        }
        let err = linalg::max_abs(&(o.transpose() * &o - RMat::identity(n, n)));
        if err > TOL_ORTHO {
            return Err(Error::validation(format!("O is not orthogonal (error {err:.2e})")));
        }
        Ok(Self { o, f })
    }

    pub fn o(&self) -> &RMat {
        &self.o
    }

    pub fn physical_modes(&self) -> usize {
        self.f
    }

    pub fn virtual_modes(&self) -> usize {
        self.o.nrows() - self.f
    }

    fn blocks(&self) -> (RMat, RMat, RMat, RMat) {
        let (f, c) = (self.f, self.virtual_modes());
        (
            self.o.view((0, 0), (f, f)).into_owned(),
            self.o.view((0, f), (f, c)).into_owned(),
            self.o.view((f, 0), (c, f)).into_owned(),
            self.o.view((f, f), (c, c)).into_owned(),
        )
    }

    /// Fiducial covariance in the layout used by [`super::contract_momentum`].
    pub fn fiducial(&self) -> Result<FiducialState> {
        let (o11, o12, o21, o22) = self.blocks();
        let (f, c) = (self.f, self.virtual_modes());
        let pair = |top_right: &RMat, bottom_left: &RMat, r: usize, col: usize| {
            let mut m = RMat::zeros(2 * r, 2 * col);
            m.view_mut((0, col), (r, col)).copy_from(top_right);
            m.view_mut((r, 0), (r, col)).copy_from(bottom_left);
            m
        };
        let a = pair(&o11, &(-o11.transpose()), f, f);
        let b = pair(&o12, &(-o21.transpose()), f, c);
        let d = pair(&o22, &(-o22.transpose()), c, c);
        FiducialState::new(a, b, d)
    }

    /// `T(z)` as an `f × f` complex matrix.
    pub fn transfer(&self, z: Complex64) -> Result<CMat> {
        let (o11, o12, o21, o22) = self.blocks();
        let c = self.virtual_modes();
        let cz = |m: &RMat| m.map(|x| Complex64::new(x, 0.0));
        let mut res = -cz(&o22);
        for i in 0..c {
            res[(i, i)] += z;
        }
        let rc = rcond(&res);
        if !(rc > SINGULAR_RCOND) {
            return Err(Error::SingularContraction {
                k: z.arg(),
                cond: if rc > 0.0 { 1.0 / rc } else { f64::INFINITY },
            });
        }
        let x = res
            .lu()
            .solve(&cz(&o21))
            .ok_or(Error::SingularContraction { k: z.arg(), cond: f64::INFINITY })?;
        Ok(cz(&o11) + cz(&o12) * x)
    }

    /// Scalar transfer function for `f = 1`.
    pub fn transfer_scalar(&self, z: Complex64) -> Result<Complex64> {
        if self.f != 1 {
            return Err(Error::validation("scalar transfer function needs f = 1"));
        }
        Ok(self.transfer(z)?[(0, 0)])
    }

    /// Blaschke form `T(z) = η Π_j (1 - ᾱ_j z)/(z - α_j)` for `f = 1`, with
    /// `α_j` the eigenvalues of `O₂₂`.
    pub fn blaschke(&self) -> Result<Blaschke> {
        let (_, _, _, o22) = self.blocks();
        let poles: Vec<Complex64> = o22.complex_eigenvalues().iter().copied().collect();
        if let Some(p) = poles.iter().find(|p| p.norm() >= 1.0 - 1e-12) {
            return Err(Error::numerical(format!("pole {p} is not inside the unit disc")));
        }
        let z0 = Complex64::new(1.0, 0.0);
        let shape = Blaschke {
            eta: Complex64::new(1.0, 0.0),
            poles,
        };
        let eta = self.transfer_scalar(z0)? / shape.eval(z0);
        Ok(Blaschke { eta, ..shape })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Blaschke {
    pub eta: Complex64,
    pub poles: Vec<Complex64>,
}

impl Blaschke {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.poles
            .iter()
            .fold(self.eta, |acc, a| acc * (1.0 - a.conj() * z) / (z - a))
    }
}

/// Rail with a Haar-random orthogonal `O`.
pub fn random_rail(f: usize, chi: usize, seed: u64) -> Result<RailSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    RailSpec::new(linalg::haar_orthogonal(f + chi, &mut rng), f)
}
