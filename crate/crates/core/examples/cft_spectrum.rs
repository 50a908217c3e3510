//! Low-lying entanglement spectrum of a ring interval against the CFT levels.

use freefermi::cft::{cft_spectrum, doublet_deviations, fit_cutoff, CftParams};
use freefermi::hopping::correlation_finite;
use freefermi::spectrum::gaussian_spectrum;

fn main() -> freefermi::Result<()> {
    let n = 1026;
    let l = n / 2 - 1;
    let spec = gaussian_spectrum(&correlation_finite(l, n)?)?;
    let params = CftParams::default();
    for i in 0..8 {
        println!(
            "n={i}: |λ| = {:.6}, CFT {:.6}",
            spec.lambdas()[i].abs(),
            cft_spectrum(i, l, n, &params)?
        );
    }
    let dev = doublet_deviations(&spec, l, n, &params, 3)?;
    println!("doublet deviations at a = 1: {dev:.3?}");
    let a = fit_cutoff(&spec, l, n, 3)?;
    let fitted = CftParams { a, ..params };
    println!("fitted a = {a:.4}: {:.3?}", doublet_deviations(&spec, l, n, &fitted, 3)?);
    Ok(())
}
