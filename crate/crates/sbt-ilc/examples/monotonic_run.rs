//! Simulate the padded learning law on the example plant and watch the
//! filtered-error norms decay monotonically.

use sbt_ilc::config::seeded_noise;
use sbt_ilc::lifted::ZeroPhaseFilter;
use sbt_ilc::plant::example_plant;
use sbt_ilc::sim::{run, NormKind, Scenario};
use sbt_ilc::IlcLaw;

fn main() {
    let n = 200;
    let law = IlcLaw::ModifiedRepetitive {
        alpha: 0.45,
        q_u: ZeroPhaseFilter::unit(),
        q_e: ZeroPhaseFilter::unit(),
    };
    let mut scenario = Scenario::new(example_plant(), law, seeded_noise(1, n), 30);
    scenario.norms = vec![NormKind::One, NormKind::Two, NormKind::Inf];

    let trace = run(&scenario).unwrap();
    println!(
        "{:>4} {:>14} {:>14} {:>14} {:>14}",
        "k", "norm1", "norm2", "norminf", "peak error"
    );
    for (k, norms) in trace.norm_sequences.iter().enumerate() {
        println!(
            "{:>4} {:>14.8} {:>14.8} {:>14.8} {:>14.8}",
            k, norms[0], norms[1], norms[2], trace.peak_errors[k]
        );
    }
    println!(
        "converged = {}, diverged = {}",
        trace.converged, trace.diverged
    );
}
