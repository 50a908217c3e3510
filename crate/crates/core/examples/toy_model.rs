//! Antipodal-pair rings: Gaussian rank needed versus Schmidt rank needed.

use freefermi::toy::toy_separation_report;

fn main() -> freefermi::Result<()> {
    let ns: Vec<usize> = (10..=20).step_by(2).map(|e| 1usize << e).collect();
    let report = toy_separation_report(1.0, 1e-2, &ns)?;
    for r in &report.rows {
        println!(
            "N=2^{:2} ν={:3} χ_G={:3} log D={:7.2} Schmidt rank={:.3e}",
            r.n.trailing_zeros(),
            r.nu,
            r.min_chi,
            r.log_d,
            r.schmidt_rank
        );
    }
    println!(
        "superpolynomial: {}, subexponential: {}",
        report.superpolynomial, report.subexponential
    );
    Ok(())
}
