//! Number of entanglement eigenvalues below μ against the smooth lower bound.

use freefermi::hopping::correlation_infinite;
use freefermi::spectrum::{counting_function, f_mu, f_mu_bound, gaussian_spectrum};

fn main() -> freefermi::Result<()> {
    let mu = 1.0 - 1e-4;
    for l in [128, 256, 512, 1024, 2048] {
        let spec = gaussian_spectrum(&correlation_infinite(l)?)?;
        let count = counting_function(&spec, mu);
        let sum: f64 = spec.lambdas().iter().map(|&x| f_mu(mu, x)).sum();
        println!(
            "L={l:5} I={count:3} Σf_μ={sum:8.4} asymptotic={:8.4} I/log L={:.3}",
            f_mu_bound(mu, l as f64)?,
            count as f64 / (l as f64).ln()
        );
    }
    Ok(())
}
