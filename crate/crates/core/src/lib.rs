//! Free-fermion Gaussian states on the half-filled hopping chain.
//!
//! Correlation matrices and Majorana covariances, entanglement spectra and
//! Rényi entropies, Gaussian and non-Gaussian truncation bounds, the Gaussian
//! SVD, momentum-space Gaussian fermionic MPS, and a dense Fock-space oracle
//! used to check all of them at small sizes.

pub mod assignment;
pub mod bounds;
pub mod cft;
pub mod error;
pub mod experiment;
pub mod fock;
pub mod gaussian;
pub mod gfmps;
pub mod hopping;
pub mod linalg;
pub mod quadrature;
pub mod spectrum;
pub mod svd;
pub mod toy;

pub use error::{Error, Result};
