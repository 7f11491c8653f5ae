//! Splitting a stable plant into its invertible and non-invertible parts,
//! `G(z^-1) = z^-d G+(z^-1) G-(z^-1)`, plus the mirrored anticausal factor
//! and the peak gain normalization constant `b`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lifted::BandedCausalMatrix;
use crate::plant::RationalPlant;
use crate::poly;

pub const DEFAULT_CIRCLE_TOL: f64 = 1e-9;
pub const DEFAULT_GAIN_GRID: usize = 4096;
const CONJUGATE_PAIR_TOL: f64 = 1e-8;

/// A stable plant split into the minimum-phase biproper factor `G+`, the
/// all-zero factor `G-` (coefficients `g_0 .. g_nu`, normalized to `g_0 = 1`)
/// and the relative degree `d`. `b` is the peak of `|G-(e^{-jw})|^2`.
#[derive(Debug, Clone)]
pub struct FactoredPlant {
    gplus: RationalPlant,
    gminus: Vec<f64>,
    d: usize,
    b: f64,
}

impl FactoredPlant {
    /// Assemble a factorization directly from its parts; `b` is recomputed.
    pub fn from_parts(gplus: RationalPlant, gminus: Vec<f64>, d: usize) -> Self {
        assert!(!gminus.is_empty());
        let b = peak_band_gain(&gminus, DEFAULT_GAIN_GRID).refined;
        Self {
            gplus,
            gminus,
            d,
            b,
        }
    }

    pub fn gplus(&self) -> &RationalPlant {
        &self.gplus
    }

    pub fn gminus(&self) -> &[f64] {
        &self.gminus
    }

    /// Count of non-invertible zeros.
    pub fn nu(&self) -> usize {
        self.gminus.len() - 1
    }

    pub fn relative_degree(&self) -> usize {
        self.d
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `G-` lifted to a banded causal matrix.
    pub fn gminus_matrix(&self, n_rows: usize, n_cols: usize) -> BandedCausalMatrix {
        BandedCausalMatrix::new(self.gminus.clone(), n_rows, n_cols)
    }

    /// Re-multiplied plant `z^-d G+ G-`, for recombination checks.
    pub fn recombined(&self) -> RationalPlant {
        let mut num = vec![0.0; self.d];
        num.extend(poly::conv(self.gplus.num(), &self.gminus));
        RationalPlant::new(num, self.gplus.den().to_vec())
            .expect("denominator inherited from a well-posed plant")
            .with_relative_degree(self.d)
    }
}

/// Factor a stable plant. Numerator roots are found via companion-matrix
/// eigenvalues; roots with modulus `>= 1 - circle_tol` go to `G-`, the rest
/// stay in `G+` together with the overall gain.
pub fn factor_plant(plant: &RationalPlant, circle_tol: f64) -> Result<FactoredPlant> {
    factor_plant_with_grid(plant, circle_tol, DEFAULT_GAIN_GRID)
}

pub fn factor_plant_with_grid(
    plant: &RationalPlant,
    circle_tol: f64,
    grid_size: usize,
) -> Result<FactoredPlant> {
    plant.check_stable()?;
    let d = plant.relative_degree();
    let stripped: Vec<f64> = plant.num()[d.min(plant.num().len())..].to_vec();
    if stripped.iter().all(|&c| c == 0.0) {
        return Err(Error::ZeroNumerator);
    }
    let unstable: Vec<Complex64> = plant
        .zeros()
        .into_iter()
        .filter(|z| z.norm() >= 1.0 - circle_tol)
        .collect();
    let gminus = poly::expand_mirrored_roots(&unstable, CONJUGATE_PAIR_TOL)?;
    // exact division keeps G+ tied to the original numerator coefficients
    let (gplus_num, _rem) = poly::deconv(&stripped, &gminus);
    let gplus = RationalPlant::new(gplus_num, plant.den().to_vec())?.with_relative_degree(0);
    let b = peak_band_gain(&gminus, grid_size).refined;
    Ok(FactoredPlant {
        gplus,
        gminus,
        d,
        b,
    })
}

/// Reversed coefficient list: the causal representation of the anticausal
/// mirror `z^-nu G-(z)`. Its lifted matrix is the transpose of the `G-` band
/// matrix.
pub fn mirror(gminus: &[f64]) -> Vec<f64> {
    assert!(!gminus.is_empty());
    gminus.iter().rev().copied().collect()
}

/// Apply `(G+)^-1` to a vector by running the inverse difference equation
/// (numerator and denominator swapped) from zero initial conditions.
pub fn stable_inverse_apply(gplus: &RationalPlant, x: &[f64]) -> Result<Vec<f64>> {
    if gplus.num().is_empty() || gplus.num()[0] == 0.0 {
        return Err(Error::NotCausallyInvertible);
    }
    let inverse = RationalPlant::new(gplus.den().to_vec(), gplus.num().to_vec())?;
    Ok(inverse.simulate(x, x.len()))
}

/// Grid and locally refined maxima of `|G-(e^{-jw})|^2` over `[0, pi]`.
#[derive(Debug, Clone, Copy)]
pub struct PeakGain {
    pub grid: f64,
    pub refined: f64,
    pub omega: f64,
}

pub fn peak_band_gain(gminus: &[f64], grid_size: usize) -> PeakGain {
    let eval = |omega: f64| {
        let w = Complex64::new(0.0, -omega).exp();
        poly::eval_complex(gminus, w).norm_sqr()
    };
    let g = grid_size.max(2);
    let mut best = (0usize, f64::NEG_INFINITY);
    for m in 0..g {
        let v = eval(std::f64::consts::PI * m as f64 / (g - 1) as f64);
        if v > best.1 {
            best = (m, v);
        }
    }
    let step = std::f64::consts::PI / (g - 1) as f64;
    let omega0 = step * best.0 as f64;
    let mut lo = (omega0 - step).max(0.0);
    let mut hi = (omega0 + step).min(std::f64::consts::PI);
    // golden-section refinement around the best grid point
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..120 {
        let a = hi - phi * (hi - lo);
        let b = lo + phi * (hi - lo);
        if eval(a) < eval(b) {
            lo = a;
        } else {
            hi = b;
        }
    }
    let omega = 0.5 * (lo + hi);
    PeakGain {
        grid: best.1,
        refined: eval(omega).max(best.1),
        omega,
    }
}
