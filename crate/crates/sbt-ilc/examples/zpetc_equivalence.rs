//! The first iteration of the learning law with alpha = 1 reproduces the
//! stable-inversion (ZPETC) feedforward exactly.

use sbt_ilc::config::seeded_noise;
use sbt_ilc::factor::{factor_plant, stable_inverse_apply, DEFAULT_CIRCLE_TOL};
use sbt_ilc::laws::zpetc_feedforward;
use sbt_ilc::lifted::ZeroPhaseFilter;
use sbt_ilc::plant::example_plant;
use sbt_ilc::sim::{run, Scenario};
use sbt_ilc::IlcLaw;

fn main() {
    let n = 50;
    let r = seeded_noise(3, n);
    let fp = factor_plant(&example_plant(), DEFAULT_CIRCLE_TOL).unwrap();

    let law = IlcLaw::ModifiedRepetitive {
        alpha: 1.0,
        q_u: ZeroPhaseFilter::unit(),
        q_e: ZeroPhaseFilter::unit(),
    };
    let scenario = Scenario::new(example_plant(), law, r.clone(), 2);
    let trace = run(&scenario).unwrap();

    // physical input after the first learning update
    let u_ilc = stable_inverse_apply(fp.gplus(), &trace.controls[1]).unwrap();
    let u_zpetc = zpetc_feedforward(&fp, &r, 1.0).unwrap();

    let max_diff = u_ilc
        .iter()
        .zip(u_zpetc.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    println!("n = {n}");
    println!("max |u_ilc(1) - u_zpetc| = {max_diff:.3e}");
    assert!(max_diff < 1e-10);
    println!("first learning pass equals the one-shot inversion input");
}
