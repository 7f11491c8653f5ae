//! Sweep the trial length and compare the spectral radii of the unpadded
//! transition matrix (corner-perturbed, eventually unstable) against the
//! zero-padded one (exactly banded Toeplitz, uniformly below the symbol sup).

use sbt_ilc::analysis::{hinf_check, transition_spectral_radius, DEFAULT_SYMBOL_GRID};
use sbt_ilc::factor::{factor_plant, DEFAULT_CIRCLE_TOL};
use sbt_ilc::laws::{band_coefficients, build_transition};
use sbt_ilc::lifted::ZeroPhaseFilter;
use sbt_ilc::plant::example_plant;

fn main() {
    let fp = factor_plant(&example_plant(), DEFAULT_CIRCLE_TOL).unwrap();
    let unit = ZeroPhaseFilter::unit();
    let alpha = 0.45;

    let band = band_coefficients(&fp, alpha, &unit, &unit);
    let sup = hinf_check(&band, DEFAULT_SYMBOL_GRID).sup;
    println!("symbol sup = {sup:.6}");
    println!("{:>6} {:>14} {:>14}", "n", "rho(unpadded)", "rho(padded)");
    for n in [3, 5, 10, 20, 50, 100, 200, 500] {
        let a1 = build_transition(&fp, alpha, &unit, &unit, n, false).unwrap();
        let a2 = build_transition(&fp, alpha, &unit, &unit, n, true).unwrap();
        println!(
            "{:>6} {:>14.9} {:>14.9}",
            n,
            transition_spectral_radius(&a1).unwrap(),
            transition_spectral_radius(&a2).unwrap()
        );
    }
}
