//! Overlaps of random pure Gaussian states, checked against dense Fock vectors.

use freefermi::bounds::gaussian_overlap;
use freefermi::fock::{dense_from_covariance, dense_overlap};
use freefermi::gaussian::random_pure_gaussian;

fn main() -> freefermi::Result<()> {
    for seed in 0..5 {
        let g = random_pure_gaussian(5, seed, false);
        let h = random_pure_gaussian(5, seed + 100, false);
        let fast = gaussian_overlap(&g, &h)?;
        let dense = dense_overlap(&dense_from_covariance(&g)?, &dense_from_covariance(&h)?)?.norm_sqr();
        println!("seed {seed}: |<g|h>|² = {fast:.12} (dense {dense:.12})");
    }
    Ok(())
}
