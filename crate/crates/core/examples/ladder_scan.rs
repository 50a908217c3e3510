//! Minimal ladder bond dimension versus ring size, with growth-law fits.

use freefermi::gfmps::ladder::Strategy;
use freefermi::gfmps::scan::{bond_dimension_scan, fit_growth};

fn main() -> freefermi::Result<()> {
    let ns = [34, 66, 130, 258, 514, 1026];
    for strategy in Strategy::ALL {
        for target in [1e-2, 1e-4, 1e-6] {
            let records = match bond_dimension_scan(&ns, target, strategy, 0) {
                Ok(r) => r,
                Err(e) => {
                    println!("{strategy} δ={target:e}: {e}");
                    continue;
                }
            };
            println!("{strategy} δ={target:e}");
            for r in &records {
                println!(
                    "  N={:5} χ_M={:4} log2 D={:4} δ={:.3e} ε={:.3e}{}",
                    r.n,
                    r.chi_majorana,
                    r.d.log2(),
                    r.delta,
                    r.epsilon,
                    if r.saturated { " saturated" } else { "" }
                );
            }
            if let Ok(fit) = fit_growth(&records, target) {
                println!(
                    "  η={:.3} residuals: model {:.3e} power {:.3e} exponential {:.3e}",
                    fit.eta, fit.residual_model, fit.residual_power_law, fit.residual_exponential
                );
            }
        }
    }
    Ok(())
}
