//! Noncausal iterative learning control in the lifted domain.
//!
//! The crate designs learning laws derived from repetitive control for
//! discrete-time, possibly non-minimum-phase plants, and certifies their
//! cycle-to-cycle convergence two ways: exactly, through the eigenvalues of
//! the lifted transition matrix, and approximately, through the frequency
//! symbol of its symmetric banded Toeplitz structure. A small simulator
//! propagates the learning iteration against a true plant that may differ
//! from the design model.
//!
//! Typical flow:
//!
//! ```
//! use sbt_ilc::factor::{factor_plant, DEFAULT_CIRCLE_TOL};
//! use sbt_ilc::laws::band_coefficients;
//! use sbt_ilc::lifted::ZeroPhaseFilter;
//! use sbt_ilc::analysis::{analyze, DEFAULT_SYMBOL_GRID};
//! use sbt_ilc::plant::example_plant;
//!
//! let fp = factor_plant(&example_plant(), DEFAULT_CIRCLE_TOL).unwrap();
//! let unit = ZeroPhaseFilter::unit();
//! let band = band_coefficients(&fp, 0.45, &unit, &unit);
//! let report = analyze(&band, 200, DEFAULT_SYMBOL_GRID).unwrap();
//! assert!(report.true_stable && report.monotonic);
//! ```

pub mod analysis;
pub mod cli;
pub mod config;
pub mod eigen;
pub mod error;
pub mod factor;
pub mod laws;
pub mod lifted;
pub mod plant;
pub mod poly;
pub mod report;
pub mod sim;

pub use analysis::{analyze, StabilityReport};
pub use config::Config;
pub use error::{Error, Result};
pub use factor::{factor_plant, FactoredPlant};
pub use laws::{build_transition, IlcLaw, TransitionMatrix};
pub use lifted::ZeroPhaseFilter;
pub use plant::RationalPlant;
pub use sim::{mismatch_study, run, Scenario};
