//! Lifted-domain matrix operators: lower-triangular Toeplitz plant matrices,
//! banded causal factors, zero-phase filters and symmetric banded Toeplitz
//! (SBT) matrices. Banded types never materialize their zeros; `to_dense` is
//! provided for oracles and small dense compositions.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::plant::MarkovSequence;

/// Lower-triangular Toeplitz matrix with `first_col` down the first column.
/// Multiplication equals causal convolution truncated to `n` samples.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerToeplitzMatrix {
    first_col: Vec<f64>,
}

impl LowerToeplitzMatrix {
    pub fn new(first_col: Vec<f64>) -> Self {
        assert!(!first_col.is_empty());
        Self { first_col }
    }

    pub fn dim(&self) -> usize {
        self.first_col.len()
    }

    pub fn first_col(&self) -> &[f64] {
        &self.first_col
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i >= j {
            self.first_col[i - j]
        } else {
            0.0
        }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let mut y = vec![0.0; n];
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for j in 0..=i {
                acc += self.first_col[i - j] * x[j];
            }
            *yi = acc;
        }
        Ok(y)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(n, n, |i, j| self.entry(i, j))
    }
}

/// Lift a Markov sequence into its lower-triangular Toeplitz plant matrix.
pub fn lift_plant(h: &MarkovSequence) -> LowerToeplitzMatrix {
    LowerToeplitzMatrix::new(h.samples().to_vec())
}

/// Lower-triangular banded Toeplitz matrix with `entry(i,j) = g[i-j]` for
/// `0 <= i-j <= nu`. Holds the non-invertible plant factor in lifted form.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedCausalMatrix {
    g: Vec<f64>,
    n_rows: usize,
    n_cols: usize,
}

impl BandedCausalMatrix {
    pub fn new(g: Vec<f64>, n_rows: usize, n_cols: usize) -> Self {
        assert!(!g.is_empty());
        Self { g, n_rows, n_cols }
    }

    /// Square matrix of dimension `n`.
    pub fn square(g: Vec<f64>, n: usize) -> Self {
        Self::new(g, n, n)
    }

    pub fn nu(&self) -> usize {
        self.g.len() - 1
    }

    pub fn band(&self) -> &[f64] {
        &self.g
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i >= j && i - j <= self.nu() {
            self.g[i - j]
        } else {
            0.0
        }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                got: x.len(),
            });
        }
        let nu = self.nu();
        let mut y = vec![0.0; self.n_rows];
        for (i, yi) in y.iter_mut().enumerate() {
            let lo = i.saturating_sub(nu);
            let hi = i.min(self.n_cols.saturating_sub(1));
            let mut acc = 0.0;
            for j in lo..=hi {
                acc += self.g[i - j] * x[j];
            }
            *yi = acc;
        }
        Ok(y)
    }

    /// Product with the transpose, `y = M^T x`.
    #[allow(clippy::needless_range_loop)]
    pub fn matvec_transpose(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n_rows {
            return Err(Error::DimensionMismatch {
                expected: self.n_rows,
                got: x.len(),
            });
        }
        let nu = self.nu();
        let mut y = vec![0.0; self.n_cols];
        for (j, yj) in y.iter_mut().enumerate() {
            let hi = (j + nu).min(self.n_rows - 1);
            let mut acc = 0.0;
            for i in j..=hi {
                acc += self.g[i - j] * x[i];
            }
            *yj = acc;
        }
        Ok(y)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n_rows, self.n_cols, |i, j| self.entry(i, j))
    }
}

/// DC-gain convention for a zero-phase filter's coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DcConvention {
    /// `q0 + 2 * sum(qi) = 1`: true unit gain of the symmetric expansion.
    SymmetricUnitGain,
    /// `sum(qi) = 1` taken literally over the one-sided coefficient list.
    LiteralCoefficientSum,
}

/// Symmetric noncausal FIR filter `Q(z,z^-1) = q0 + q1 (z + z^-1) + ...`
/// with unit DC gain.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroPhaseFilter {
    q: Vec<f64>,
}

impl ZeroPhaseFilter {
    /// Requires `q0 + 2 * sum(qi) = 1` within `1e-9`.
    pub fn new(q: Vec<f64>) -> Result<Self> {
        Self::with_convention(q, DcConvention::SymmetricUnitGain)
    }

    pub fn with_convention(q: Vec<f64>, convention: DcConvention) -> Result<Self> {
        assert!(!q.is_empty());
        let dc = match convention {
            DcConvention::SymmetricUnitGain => q[0] + 2.0 * q[1..].iter().sum::<f64>(),
            DcConvention::LiteralCoefficientSum => q.iter().sum::<f64>(),
        };
        if (dc - 1.0).abs() > 1e-9 {
            return Err(Error::NotUnitDcGain { dc });
        }
        Ok(Self { q })
    }

    /// The identity filter `Q = 1`.
    pub fn unit() -> Self {
        Self { q: vec![1.0] }
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.q
    }

    /// Half-order `nq`.
    pub fn half_order(&self) -> usize {
        self.q.len() - 1
    }
}

/// Symmetric banded Toeplitz matrix stored as its band `a_0 .. a_r` plus
/// dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct SBTMatrix {
    band: Vec<f64>,
    n: usize,
}

impl SBTMatrix {
    pub fn new(band: Vec<f64>, n: usize) -> Result<Self> {
        assert!(!band.is_empty());
        let r = band.len() - 1;
        if n < r + 1 {
            return Err(Error::HorizonTooSmall { n, r });
        }
        Ok(Self { band, n })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            band: vec![1.0],
            n,
        }
    }

    pub fn band(&self) -> &[f64] {
        &self.band
    }

    pub fn half_width(&self) -> usize {
        self.band.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let lag = i.abs_diff(j);
        if lag <= self.half_width() {
            self.band[lag]
        } else {
            0.0
        }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let r = self.half_width();
        let mut y = vec![0.0; self.n];
        for (i, yi) in y.iter_mut().enumerate() {
            let lo = i.saturating_sub(r);
            let hi = (i + r).min(self.n - 1);
            let mut acc = 0.0;
            for j in lo..=hi {
                acc += self.band[i.abs_diff(j)] * x[j];
            }
            *yi = acc;
        }
        Ok(y)
    }

    /// Induced 1-norm of the interior rows: `|a_0| + 2 sum |a_k|`.
    pub fn interior_one_norm(&self) -> f64 {
        self.band[0].abs() + 2.0 * self.band[1..].iter().map(|a| a.abs()).sum::<f64>()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.entry(i, j))
    }
}

/// Materialize a zero-phase filter as its `n x n` SBT matrix.
pub fn filter_matrix(q: &ZeroPhaseFilter, n: usize) -> Result<SBTMatrix> {
    if n == 0 {
        return Err(Error::EmptyHorizon);
    }
    if n < q.half_order() + 1 {
        return Err(Error::HorizonTooSmall {
            n,
            r: q.half_order(),
        });
    }
    SBTMatrix::new(q.coefficients().to_vec(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plant::example_plant;

    #[test]
    fn lift_example_plant() {
        let h = example_plant().markov_params(3).unwrap();
        let g = lift_plant(&h);
        let expect = [
            [1.0, 0.0, 0.0],
            [-1.3, 1.0, 0.0],
            [0.2725, -1.3, 1.0],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert!((g.entry(i, j) - expect[i][j]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn lift_delay_is_identity() {
        let h = MarkovSequence::new(vec![1.0, 0.0, 0.0], 1);
        let g = lift_plant(&h);
        assert_eq!(g.to_dense(), DMatrix::identity(3, 3));
    }

    #[test]
    fn first_column_is_markov_sequence() {
        let h = example_plant().markov_params(4).unwrap();
        let g = lift_plant(&h);
        let mut e1 = vec![0.0; 4];
        e1[0] = 1.0;
        let col = g.matvec(&e1).unwrap();
        assert_eq!(col, h.samples());
    }

    #[test]
    fn banded_causal_impulse() {
        // G- with g = [1, -1.1] applied to e1 at n = 3
        let gm = BandedCausalMatrix::square(vec![1.0, -1.1], 3);
        let y = gm.matvec(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(y, vec![1.0, -1.1, 0.0]);
    }

    #[test]
    fn diagonal_sbt_scales() {
        let m = SBTMatrix::new(vec![0.7], 4).unwrap();
        let y = m.matvec(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        for (a, b) in y.iter().zip([0.7, 1.4, 2.1, 2.8]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn filter_matrix_unit_is_identity() {
        let m = filter_matrix(&ZeroPhaseFilter::unit(), 5).unwrap();
        assert_eq!(m.to_dense(), DMatrix::identity(5, 5));
    }

    #[test]
    fn filter_matrix_direct_placement() {
        let q = ZeroPhaseFilter::new(vec![0.5, 0.25]).unwrap();
        let m = filter_matrix(&q, 3).unwrap();
        let expect = [[0.5, 0.25, 0.0], [0.25, 0.5, 0.25], [0.0, 0.25, 0.5]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.entry(i, j), expect[i][j]);
            }
        }
    }

    #[test]
    fn filter_dc_gain_on_interior_rows() {
        let q = ZeroPhaseFilter::new(vec![0.4, 0.2, 0.1]).unwrap();
        let n = 9;
        let m = filter_matrix(&q, n).unwrap();
        let ones = vec![1.0; n];
        let y = m.matvec(&ones).unwrap();
        for (i, v) in y.iter().enumerate().take(n - 2).skip(2) {
            assert!((v - 1.0).abs() < 1e-12, "row {i}: {v}");
        }
    }

    #[test]
    fn filter_rejects_bad_dc_gain() {
        assert!(ZeroPhaseFilter::new(vec![0.5, 0.5]).is_err());
        // but the literal Eq-sum convention accepts it
        assert!(
            ZeroPhaseFilter::with_convention(vec![0.5, 0.5], DcConvention::LiteralCoefficientSum)
                .is_ok()
        );
    }

    #[test]
    fn filter_matrix_rejects_tiny_dimension() {
        let q = ZeroPhaseFilter::new(vec![0.5, 0.25]).unwrap();
        assert!(filter_matrix(&q, 0).is_err());
        assert!(filter_matrix(&q, 1).is_err());
    }

    #[test]
    fn mismatched_vector_length_rejected() {
        let m = SBTMatrix::new(vec![1.0, 0.5], 4).unwrap();
        assert!(m.matvec(&[1.0, 2.0]).is_err());
    }
}
