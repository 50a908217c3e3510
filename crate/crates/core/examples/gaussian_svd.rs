//! Gaussian SVD of a random state across a cut, and optimal truncations.

use freefermi::bounds::{gaussian_overlap, gaussian_rank_bound};
use freefermi::gaussian::{random_pure_gaussian, Bipartition};
use freefermi::spectrum::gaussian_spectrum_majorana;
use freefermi::svd::gaussian_svd;

fn main() -> freefermi::Result<()> {
    let g = random_pure_gaussian(8, 42, false);
    let bip = Bipartition::contiguous(8, 3)?;
    let svd = gaussian_svd(&g, &bip)?;
    println!("angles: {:?}", svd.thetas.iter().map(|t| format!("{t:.4}")).collect::<Vec<_>>());
    let spec = gaussian_spectrum_majorana(&g.restrict(bip.left())?)?;
    for r in 0..=spec.len() {
        let t = svd.truncate(r);
        println!(
            "rank {r}: overlap {:.10}, bound {:.10}",
            gaussian_overlap(&g, &t)?,
            gaussian_rank_bound(&spec, r)?
        );
    }
    Ok(())
}
