//! Dense Fock-space vectors of small Gaussian states.

use freefermi::fock::{dense_from_covariance, dense_renyi, dense_schmidt};
use freefermi::gaussian::{random_pure_gaussian, Bipartition};
use freefermi::spectrum::{gaussian_spectrum_majorana, renyi_entropy};

fn main() -> freefermi::Result<()> {
    let g = random_pure_gaussian(6, 3, false);
    let psi = dense_from_covariance(&g)?;
    let bip = Bipartition::contiguous(6, 3)?;
    let schmidt = dense_schmidt(&psi, &bip)?;
    println!("Schmidt values: {:.5?}", &schmidt[..schmidt.len().min(8)]);
    let spec = gaussian_spectrum_majorana(&g.restrict(bip.left())?)?;
    for alpha in [0.5, 1.0, 2.0] {
        println!(
            "α={alpha}: dense {:.10}, Gaussian {:.10}",
            dense_renyi(&psi, &bip, alpha)?,
            renyi_entropy(&spec, alpha)?
        );
    }
    Ok(())
}
