//! Transfer function of a random rail, its Blaschke form, and the contracted
//! momentum-space covariance.

use freefermi::gfmps::contract_momentum;
use freefermi::gfmps::ladder::ladder_from_rails;
use freefermi::gfmps::rail::random_rail;
use num_complex::Complex64;

fn main() -> freefermi::Result<()> {
    let rail = random_rail(1, 3, 7)?;
    let b = rail.blaschke()?;
    println!("poles: {:.4?}, η = {:.4}", b.poles, b.eta);
    let fid = rail.fiducial()?;
    for k in [0.3, 1.2, 2.7] {
        let z = Complex64::from_polar(1.0, k);
        let t = rail.transfer_scalar(z)?;
        let g = contract_momentum(&fid, k)?;
        println!("k={k}: T = {t:.6}, |T| = {:.12}, G₁₂ = {:.6}", t.norm(), g[(0, 1)]);
    }
    let ladder = ladder_from_rails(&rail, &random_rail(1, 3, 8)?)?;
    println!("composite ladder: χ_M = {}", ladder.chi_majorana());
    for k in [0.5, 1.5, 2.5] {
        println!("  n({k}) = {:.6}", ladder.occupation(k)?);
    }
    Ok(())
}
