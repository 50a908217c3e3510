//! Rényi entropies of intervals of the infinite half-filled chain.

use freefermi::hopping::correlation_infinite;
use freefermi::spectrum::{gaussian_spectrum, renyi_entropy};

fn main() -> freefermi::Result<()> {
    let ls = [64, 128, 256, 512, 1024];
    let alphas = [0.5, 1.0, 2.0, f64::INFINITY];
    let mut rows = Vec::new();
    for &l in &ls {
        let spec = gaussian_spectrum(&correlation_infinite(l)?)?;
        let s: Vec<f64> = alphas.iter().map(|&a| renyi_entropy(&spec, a)).collect::<Result<_, _>>()?;
        println!("L={l:5} {}", s.iter().map(|v| format!("{v:.5}")).collect::<Vec<_>>().join(" "));
        rows.push(s);
    }
    let dl = (ls[ls.len() - 1] as f64 / ls[ls.len() - 2] as f64).ln();
    for (i, a) in alphas.iter().enumerate() {
        let slope = (rows[rows.len() - 1][i] - rows[rows.len() - 2][i]) / dl;
        let pred = if a.is_finite() { (a + 1.0) / (6.0 * a) } else { 1.0 / 6.0 };
        println!("α={a}: slope {slope:.4}, expected {pred:.4}");
    }
    Ok(())
}
