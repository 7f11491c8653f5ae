//! Stability certification of transition matrices: exact spectral radius,
//! frequency-domain symbol bound, circulant-embedding and tridiagonal
//! closed forms, and the monotonicity 1-norm.

use std::f64::consts::PI;

use nalgebra::DMatrix;

use crate::eigen;
use crate::error::Result;
use crate::laws::TransitionMatrix;
use crate::lifted::SBTMatrix;

pub const DEFAULT_SYMBOL_GRID: usize = 2048;

/// The SBT symbol `a_0 + 2 sum a_k cos(k theta)` at a frequency in `[0, pi]`.
pub fn symbol_value(band: &[f64], theta: f64) -> f64 {
    band[0]
        + 2.0
            * band[1..]
                .iter()
                .enumerate()
                .map(|(i, a)| a * ((i + 1) as f64 * theta).cos())
                .sum::<f64>()
}

/// Grid supremum of `|symbol|` with a Lipschitz slack certifying the
/// continuous condition.
#[derive(Debug, Clone, Copy)]
pub struct HinfBound {
    pub sup: f64,
    pub argmax: f64,
    /// `pi * sum k |a_k| / grid_size`: bound on the grid discretization gap.
    pub slack: f64,
    /// Strict grid verdict `sup < 1`.
    pub verdict: bool,
    /// Grid verdict with the slack folded in: `sup + slack < 1`.
    pub certified: bool,
    pub grid_size: usize,
}

/// Sup of `|symbol|` over a uniform grid on `[0, pi]` including endpoints.
pub fn hinf_check(band: &[f64], grid_size: usize) -> HinfBound {
    let g = grid_size.max(2);
    let mut sup = f64::NEG_INFINITY;
    let mut argmax = 0.0;
    for m in 0..g {
        let theta = PI * m as f64 / (g - 1) as f64;
        let v = symbol_value(band, theta).abs();
        if v > sup {
            sup = v;
            argmax = theta;
        }
    }
    let lipschitz: f64 = band[1..]
        .iter()
        .enumerate()
        .map(|(i, a)| (i + 1) as f64 * a.abs())
        .sum();
    let slack = PI * lipschitz / g as f64;
    HinfBound {
        sup,
        argmax,
        slack,
        verdict: sup < 1.0,
        certified: sup + slack < 1.0,
        grid_size: g,
    }
}

/// Eigenvalues of the circulant embedding: the DFT of the wrapped band,
/// `lambda_m = a_0 + 2 sum a_k cos(2 pi k (m-1) / n)`.
pub fn circulant_eigenvalues(band: &[f64], n: usize) -> Result<Vec<f64>> {
    let r = band.len() - 1;
    if n < 2 * r + 1 {
        return Err(crate::error::Error::HorizonTooSmall { n, r: 2 * r });
    }
    Ok((0..n)
        .map(|m| symbol_value(band, 2.0 * PI * m as f64 / n as f64))
        .collect())
}

/// Dense circulant embedding of an SBT band, for oracle comparisons.
pub fn circulant_embedding_dense(band: &[f64], n: usize) -> DMatrix<f64> {
    let r = band.len() - 1;
    DMatrix::from_fn(n, n, |i, j| {
        let lag = i.abs_diff(j).min(n - i.abs_diff(j));
        if lag <= r {
            band[lag]
        } else {
            0.0
        }
    })
}

/// Closed-form eigenvalues of the SBT tridiagonal matrix:
/// `a_0 + 2 a_1 cos(m pi / (n+1))`.
pub fn tridiagonal_eigenvalues(a0: f64, a1: f64, n: usize) -> Vec<f64> {
    (1..=n)
        .map(|m| a0 + 2.0 * a1 * (m as f64 * PI / (n + 1) as f64).cos())
        .collect()
}

/// Largest absolute eigenvalue of an SBT matrix.
pub fn spectral_radius_sbt(m: &SBTMatrix) -> Result<f64> {
    eigen::symmetric_spectral_radius(&m.to_dense())
}

/// Largest absolute eigenvalue of a dense symmetric matrix.
pub fn spectral_radius_dense(m: &DMatrix<f64>) -> Result<f64> {
    eigen::symmetric_spectral_radius(m)
}

pub fn transition_spectral_radius(m: &TransitionMatrix) -> Result<f64> {
    match m {
        TransitionMatrix::Sbt(s) => spectral_radius_sbt(s),
        TransitionMatrix::Dense(d) => spectral_radius_dense(d),
    }
}

/// The strict eigenvalue-vs-symbol inequality for SBT matrices.
#[derive(Debug, Clone, Copy)]
pub struct GrayBound {
    pub spectral_radius: f64,
    pub symbol_sup: f64,
    /// `symbol_sup - spectral_radius`; positive when the bound holds.
    pub margin: f64,
    pub holds: bool,
}

pub fn gray_bound_check(band: &[f64], n: usize) -> Result<GrayBound> {
    let rho = spectral_radius_sbt(&SBTMatrix::new(band.to_vec(), n)?)?;
    let sup = hinf_check(band, DEFAULT_SYMBOL_GRID).sup;
    Ok(GrayBound {
        spectral_radius: rho,
        symbol_sup: sup,
        margin: sup - rho,
        holds: rho < sup,
    })
}

/// Interior-row induced 1-norm `|a_0| + 2 sum |a_k|` and the monotonicity
/// verdict.
#[derive(Debug, Clone, Copy)]
pub struct Monotonicity {
    pub one_norm: f64,
    pub symbol_sup: f64,
    pub monotonic: bool,
}

pub fn monotonicity_check(band: &[f64]) -> Monotonicity {
    let one_norm = band[0].abs() + 2.0 * band[1..].iter().map(|a| a.abs()).sum::<f64>();
    let symbol_sup = hinf_check(band, DEFAULT_SYMBOL_GRID).sup;
    // the norm chain sup|symbol| <= ||A||_1 holds pointwise
    debug_assert!(symbol_sup <= one_norm + 1e-12 * (1.0 + one_norm));
    Monotonicity {
        one_norm,
        symbol_sup,
        monotonic: one_norm < 1.0,
    }
}

/// Combined certification record for one transition band at one dimension.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub n: usize,
    pub spectral_radius: f64,
    pub symbol_sup: f64,
    pub symbol_argmax: f64,
    pub circulant_radius: f64,
    pub one_norm: f64,
    pub true_stable: bool,
    pub approx_stable: bool,
    pub monotonic: bool,
    pub grid_size: usize,
}

impl StabilityReport {
    pub const CSV_HEADER: &'static str = "n,grid_size,spectral_radius,symbol_sup,symbol_argmax,circulant_radius,one_norm,true_stable,approx_stable,monotonic";

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.grid_size,
            crate::report::sig12(self.spectral_radius),
            crate::report::sig12(self.symbol_sup),
            crate::report::sig12(self.symbol_argmax),
            crate::report::sig12(self.circulant_radius),
            crate::report::sig12(self.one_norm),
            self.true_stable,
            self.approx_stable,
            self.monotonic
        )
    }

    pub fn to_text(&self) -> String {
        format!(
            "n = {}\ngrid_size = {}\nspectral_radius = {}\nsymbol_sup = {}\nsymbol_argmax = {}\ncirculant_radius = {}\none_norm = {}\ntrue_stable = {}\napprox_stable = {}\nmonotonic = {}\n",
            self.n,
            self.grid_size,
            crate::report::sig12(self.spectral_radius),
            crate::report::sig12(self.symbol_sup),
            crate::report::sig12(self.symbol_argmax),
            crate::report::sig12(self.circulant_radius),
            crate::report::sig12(self.one_norm),
            self.true_stable,
            self.approx_stable,
            self.monotonic
        )
    }
}

/// Full certification of an SBT band at dimension `n`.
pub fn analyze(band: &[f64], n: usize, grid_size: usize) -> Result<StabilityReport> {
    let hinf = hinf_check(band, grid_size);
    let rho = spectral_radius_sbt(&SBTMatrix::new(band.to_vec(), n)?)?;
    let circulant_radius = (0..n)
        .map(|m| symbol_value(band, 2.0 * PI * m as f64 / n as f64).abs())
        .fold(0.0f64, f64::max);
    let mono = monotonicity_check(band);
    Ok(StabilityReport {
        n,
        spectral_radius: rho,
        symbol_sup: hinf.sup,
        symbol_argmax: hinf.argmax,
        circulant_radius,
        one_norm: mono.one_norm,
        true_stable: rho < 1.0,
        approx_stable: hinf.verdict,
        monotonic: mono.monotonic,
        grid_size: hinf.grid_size,
    })
}
