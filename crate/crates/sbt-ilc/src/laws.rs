//! Learning-law construction: Arimoto P/PD laws, the prototype law built on
//! the plant factorization, and the modified repetitive law with zero-padding
//! whose transition matrix is exactly symmetric banded Toeplitz.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::factor::{stable_inverse_apply, FactoredPlant};
use crate::lifted::{filter_matrix, lift_plant, BandedCausalMatrix, SBTMatrix, ZeroPhaseFilter};
use crate::plant::MarkovSequence;

/// Zero-padding embedding of an `n`-vector into an `(n + 2 nu)`-vector:
/// identity block between `nu`-row zero blocks. `N^T N = I_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddingMap {
    nu: usize,
    n: usize,
}

impl PaddingMap {
    pub fn new(nu: usize, n: usize) -> Self {
        Self { nu, n }
    }

    pub fn core_len(&self) -> usize {
        self.n
    }

    pub fn padded_len(&self) -> usize {
        self.n + 2 * self.nu
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    /// `N x`
    pub fn embed(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut out = vec![0.0; self.padded_len()];
        out[self.nu..self.nu + self.n].copy_from_slice(x);
        Ok(out)
    }

    /// `N^T x`: the middle `n` samples.
    pub fn restrict(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.padded_len() {
            return Err(Error::DimensionMismatch {
                expected: self.padded_len(),
                got: x.len(),
            });
        }
        Ok(x[self.nu..self.nu + self.n].to_vec())
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.padded_len(), self.n, |i, j| {
            if i == j + self.nu {
                1.0
            } else {
                0.0
            }
        })
    }
}

/// The learning-law variants of the lifted-domain update
/// `u_{k+1} = T_u u_k + T_e e_k`.
#[derive(Debug, Clone)]
pub enum IlcLaw {
    /// `u_{k+1}(t) = u_k(t) + alpha e_k(t)`
    Arimoto { alpha: f64 },
    /// `u_{k+1}(t) = u_k(t) + alpha e_k(t) + beta e_k(t-1)`
    Pd { alpha: f64, beta: f64 },
    /// `u'_{k+1} = u'_k + alpha (G-)^T e_k`
    Prototype { alpha: f64 },
    /// `u_{k+1} = Q_u u_k + F e_k` with `F = alpha N^T (G-)^T Q_e`
    ModifiedRepetitive {
        alpha: f64,
        q_u: ZeroPhaseFilter,
        q_e: ZeroPhaseFilter,
    },
}

impl IlcLaw {
    pub fn alpha(&self) -> f64 {
        match self {
            IlcLaw::Arimoto { alpha }
            | IlcLaw::Pd { alpha, .. }
            | IlcLaw::Prototype { alpha }
            | IlcLaw::ModifiedRepetitive { alpha, .. } => *alpha,
        }
    }
}

/// Error transition `I - alpha G` of the Arimoto P-type law.
pub fn arimoto_transition(h: &MarkovSequence, alpha: f64) -> DMatrix<f64> {
    let g = lift_plant(h).to_dense();
    DMatrix::identity(h.len(), h.len()) - g * alpha
}

/// The monotonicity functional `|1 - alpha h_d| + |alpha| sum |h_{d+i}|`;
/// values below 1 guarantee monotone error decay for the Arimoto law.
pub fn arimoto_monotonic_bound(h: &MarkovSequence, alpha: f64) -> f64 {
    let s = h.samples();
    (1.0 - alpha * s[0]).abs() + alpha.abs() * s[1..].iter().map(|x| x.abs()).sum::<f64>()
}

/// The learning gain `F = alpha N^T (G-)^T Q_e`, applied to extended error
/// vectors of length `n + 2 nu`, kept in banded factored form.
#[derive(Debug, Clone)]
pub struct FilteredGain {
    alpha: f64,
    gminus_ext: BandedCausalMatrix,
    q_e: SBTMatrix,
    pad: PaddingMap,
}

impl FilteredGain {
    pub fn core_len(&self) -> usize {
        self.pad.core_len()
    }

    pub fn padded_len(&self) -> usize {
        self.pad.padded_len()
    }

    pub fn apply(&self, e: &[f64]) -> Result<Vec<f64>> {
        let v = self.q_e.matvec(e)?;
        let w = self.gminus_ext.matvec_transpose(&v)?;
        let mut out = self.pad.restrict(&w)?;
        for x in &mut out {
            *x *= self.alpha;
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        self.pad.to_dense().transpose()
            * self.gminus_ext.to_dense().transpose()
            * self.q_e.to_dense()
            * self.alpha
    }
}

/// Build `F = alpha N^T (G-)^T Q_e` with `Q_e` materialized at `n + 2 nu`.
pub fn build_f(
    fp: &FactoredPlant,
    alpha: f64,
    q_e: &ZeroPhaseFilter,
    n: usize,
) -> Result<FilteredGain> {
    let pad = PaddingMap::new(fp.nu(), n);
    let m = pad.padded_len();
    Ok(FilteredGain {
        alpha,
        gminus_ext: fp.gminus_matrix(m, m),
        q_e: filter_matrix(q_e, m)?,
        pad,
    })
}

/// Cycle-to-cycle transition matrix of a learning law: exactly SBT for the
/// padded modified law, dense otherwise.
#[derive(Debug, Clone)]
pub enum TransitionMatrix {
    Sbt(SBTMatrix),
    Dense(DMatrix<f64>),
}

impl TransitionMatrix {
    pub fn dim(&self) -> usize {
        match self {
            TransitionMatrix::Sbt(m) => m.dim(),
            TransitionMatrix::Dense(m) => m.nrows(),
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        match self {
            TransitionMatrix::Sbt(m) => m.to_dense(),
            TransitionMatrix::Dense(m) => m.clone(),
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            TransitionMatrix::Sbt(m) => m.matvec(x),
            TransitionMatrix::Dense(m) => {
                if x.len() != m.ncols() {
                    return Err(Error::DimensionMismatch {
                        expected: m.ncols(),
                        got: x.len(),
                    });
                }
                Ok((m * DVector::from_column_slice(x)).iter().copied().collect())
            }
        }
    }
}

/// Band half-width `r = max(nq_u, nq_e + nu)` of the padded transition.
pub fn band_half_width(nu: usize, q_u: &ZeroPhaseFilter, q_e: &ZeroPhaseFilter) -> usize {
    q_u.half_order().max(q_e.half_order() + nu)
}

/// Closed-form band `a_0 .. a_r` of `A = Q_u - alpha N^T (G-)^T Q_e G- N`.
///
/// Evaluates the explicit nested-sum coefficient formulas at an interior row
/// (`l = r + 1`, one-based) where none of the index clamps are active.
pub fn band_coefficients(
    fp: &FactoredPlant,
    alpha: f64,
    q_u: &ZeroPhaseFilter,
    q_e: &ZeroPhaseFilter,
) -> Vec<f64> {
    band_coefficients_from(fp.gminus(), alpha, q_u, q_e)
}

pub fn band_coefficients_from(
    gminus: &[f64],
    alpha: f64,
    q_u: &ZeroPhaseFilter,
    q_e: &ZeroPhaseFilter,
) -> Vec<f64> {
    let nu = gminus.len() - 1;
    let nq_u = q_u.half_order();
    let nq_e = q_e.half_order();
    let r = nq_u.max(nq_e + nu);
    let g = |i: i64| -> f64 {
        if (0..=nu as i64).contains(&i) {
            gminus[i as usize]
        } else {
            0.0
        }
    };
    let qe = |i: i64| -> f64 {
        let a = i.unsigned_abs() as usize;
        if a <= nq_e {
            q_e.coefficients()[a]
        } else {
            0.0
        }
    };
    let qu = |k: usize| -> f64 {
        if k <= nq_u {
            q_u.coefficients()[k]
        } else {
            0.0
        }
    };
    // interior entry of N^T (G-)^T Q_e G- N at lag j - l
    let s = |l: i64, j: i64| -> f64 {
        let mut acc = 0.0;
        for i in l.max(j - nq_e as i64)..=(l + nu as i64).min(j + (nu + nq_e) as i64) {
            let mut inner = 0.0;
            for k in (i - nq_e as i64).max(j)..=(i + nq_e as i64).min(j + nu as i64) {
                inner += qe(i - k) * g(k - j);
            }
            acc += g(i - l) * inner;
        }
        acc
    };
    let l = (r + 1) as i64;
    let mut band = Vec::with_capacity(r + 1);
    for k in 0..=r {
        let j = l + k as i64;
        let a_k = if nq_u > nq_e + nu {
            if k <= nq_e + nu {
                qu(k) - alpha * s(l, j)
            } else {
                qu(k)
            }
        } else if k <= nq_u {
            qu(k) - alpha * s(l, j)
        } else {
            -alpha * s(l, j)
        };
        band.push(a_k);
    }
    band
}

/// Dense-product construction of the padded transition matrix; the oracle
/// route against the closed-form band.
pub fn dense_padded_transition(
    gminus: &[f64],
    alpha: f64,
    q_u: &ZeroPhaseFilter,
    q_e: &ZeroPhaseFilter,
    n: usize,
) -> Result<DMatrix<f64>> {
    let nu = gminus.len() - 1;
    let pad = PaddingMap::new(nu, n);
    let m = pad.padded_len();
    let nmat = pad.to_dense();
    let gm = BandedCausalMatrix::square(gminus.to_vec(), m).to_dense();
    let qem = filter_matrix(q_e, m)?.to_dense();
    let qum = filter_matrix(q_u, n)?.to_dense();
    Ok(qum - nmat.transpose() * gm.transpose() * qem * gm * &nmat * alpha)
}

/// Dense construction of the unpadded transition
/// `A = Q_u - alpha (G-)^T Q_e G-` with all factors square of dimension `n`.
pub fn dense_unpadded_transition(
    gminus: &[f64],
    alpha: f64,
    q_u: &ZeroPhaseFilter,
    q_e: &ZeroPhaseFilter,
    n: usize,
) -> Result<DMatrix<f64>> {
    let gm = BandedCausalMatrix::square(gminus.to_vec(), n).to_dense();
    let qem = filter_matrix(q_e, n)?.to_dense();
    let qum = filter_matrix(q_u, n)?.to_dense();
    Ok(qum - gm.transpose() * qem * gm * alpha)
}

/// Build the transition matrix of the modified repetitive law.
///
/// With `padded = true` the band comes from the closed-form coefficients and
/// is cross-checked against the dense product at a small dimension; with
/// `padded = false` the dense square construction is returned, which is
/// symmetric but not Toeplitz in the corners.
pub fn build_transition(
    fp: &FactoredPlant,
    alpha: f64,
    q_u: &ZeroPhaseFilter,
    q_e: &ZeroPhaseFilter,
    n: usize,
    padded: bool,
) -> Result<TransitionMatrix> {
    let r = band_half_width(fp.nu(), q_u, q_e);
    if n < r + 1 {
        return Err(Error::HorizonTooSmall { n, r });
    }
    if padded {
        let band = band_coefficients(fp, alpha, q_u, q_e);
        let check = dense_padded_transition(fp.gminus(), alpha, q_u, q_e, r + 1)?;
        let scale = 1.0 + band.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (lag, &a) in band.iter().enumerate() {
            let dense = check[(0, lag)];
            if (a - dense).abs() > 1e-12 * scale {
                return Err(Error::BandCrossCheck {
                    lag,
                    closed_form: a,
                    dense,
                });
            }
        }
        Ok(TransitionMatrix::Sbt(SBTMatrix::new(band, n)?))
    } else {
        Ok(TransitionMatrix::Dense(dense_unpadded_transition(
            fp.gminus(),
            alpha,
            q_u,
            q_e,
            n,
        )?))
    }
}

/// Least-squares fixed point of the prototype/modified iteration: solves the
/// normal equations `(G- N)^T (G- N) u = (G- N)^T r` for the extended
/// reference `r`.
pub fn prototype_fixed_point(fp: &FactoredPlant, r_ext: &[f64]) -> Result<Vec<f64>> {
    let nu = fp.nu();
    let m = r_ext.len();
    if m < 2 * nu + 1 {
        return Err(Error::DimensionMismatch {
            expected: 2 * nu + 1,
            got: m,
        });
    }
    let n = m - 2 * nu;
    let pad = PaddingMap::new(nu, n);
    let gm_n = fp.gminus_matrix(m, m).to_dense() * pad.to_dense();
    let normal = gm_n.transpose() * &gm_n;
    let rhs = gm_n.transpose() * DVector::from_column_slice(r_ext);
    let chol = normal
        .cholesky()
        .ok_or(Error::SingularNormalEquations)?;
    Ok(chol.solve(&rhs).iter().copied().collect())
}

/// Stable-inversion feedforward `alpha (G+)^-1 (G-)^T r`; with `alpha = 1`
/// this is the ZPETC input.
pub fn zpetc_feedforward(fp: &FactoredPlant, r: &[f64], alpha: f64) -> Result<Vec<f64>> {
    let n = r.len();
    let v = fp.gminus_matrix(n, n).matvec_transpose(r)?;
    let mut u = stable_inverse_apply(fp.gplus(), &v)?;
    for x in &mut u {
        *x *= alpha;
    }
    Ok(u)
}
