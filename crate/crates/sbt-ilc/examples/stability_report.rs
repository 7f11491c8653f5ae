//! Build the learning transition matrix for the example plant and certify it
//! both exactly (eigenvalues) and through the frequency symbol.

use sbt_ilc::analysis::{analyze, DEFAULT_SYMBOL_GRID};
use sbt_ilc::factor::{factor_plant, DEFAULT_CIRCLE_TOL};
use sbt_ilc::laws::band_coefficients;
use sbt_ilc::lifted::ZeroPhaseFilter;
use sbt_ilc::plant::example_plant;

fn main() {
    let fp = factor_plant(&example_plant(), DEFAULT_CIRCLE_TOL).unwrap();
    let unit = ZeroPhaseFilter::unit();
    let alpha = 0.45;

    let band = band_coefficients(&fp, alpha, &unit, &unit);
    println!("alpha = {alpha}");
    println!("transition band a = {band:?}");

    for n in [3, 20, 200] {
        let report = analyze(&band, n, DEFAULT_SYMBOL_GRID).unwrap();
        println!("--- n = {n} ---");
        print!("{}", report.to_text());
    }
}
