//! Factor a non-minimum-phase plant and print both factors together with the
//! peak gain of the mirrored part.

use sbt_ilc::factor::{factor_plant, peak_band_gain, DEFAULT_CIRCLE_TOL, DEFAULT_GAIN_GRID};
use sbt_ilc::plant::example_plant;

fn main() {
    let plant = example_plant();
    println!("num = {:?}", plant.num());
    println!("den = {:?}", plant.den());

    let fp = factor_plant(&plant, DEFAULT_CIRCLE_TOL).expect("factorization failed");
    println!("relative degree d = {}", fp.relative_degree());
    println!("non-minimum-phase order nu = {}", fp.nu());
    println!("g (mirrored factor, g0 = 1) = {:?}", fp.gminus());
    println!("G+ num = {:?}", fp.gplus().num());
    println!("G+ den = {:?}", fp.gplus().den());

    let peak = peak_band_gain(fp.gminus(), DEFAULT_GAIN_GRID);
    println!(
        "b = sup |G-(e^-jw)|^2 = {:.6} at w = {:.6}",
        peak.refined, peak.omega
    );

    // the factors recombine to the original transfer function
    let back = fp.recombined();
    println!("recombined num = {:?}", back.num());
    println!("recombined den = {:?}", back.den());
}
