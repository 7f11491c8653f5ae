//! Symmetric eigensolvers: Householder tridiagonalization followed by either
//! implicit-shift QL (full spectrum) or Sturm-sequence bisection (extreme
//! eigenvalues). The two routes are independent and cross-checked in tests.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

const QL_SWEEP_LIMIT: usize = 60;
const BISECTION_STEPS: usize = 80;

/// Verify symmetry to an absolute tolerance scaled by the largest entry.
pub fn check_symmetric(a: &DMatrix<f64>, tol: f64) -> Result<()> {
    let scale = 1.0 + a.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for i in 0..a.nrows() {
        for j in (i + 1)..a.ncols() {
            let delta = (a[(i, j)] - a[(j, i)]).abs();
            if delta > tol * scale {
                return Err(Error::NotSymmetric { i, j, delta });
            }
        }
    }
    Ok(())
}

/// Householder reduction of a symmetric matrix to tridiagonal form.
/// Returns the diagonal and the subdiagonal.
pub fn tridiagonalize(a: &DMatrix<f64>) -> (Vec<f64>, Vec<f64>) {
    let n = a.nrows();
    let mut m = a.clone();
    for k in 0..n.saturating_sub(2) {
        let norm_x: f64 = (k + 1..n).map(|i| m[(i, k)] * m[(i, k)]).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = m[(k + 1, k)];
        let alpha = if x0 >= 0.0 { -norm_x } else { norm_x };
        let mut v = vec![0.0; n];
        v[k + 1] = x0 - alpha;
        for i in k + 2..n {
            v[i] = m[(i, k)];
        }
        let beta: f64 = v.iter().map(|x| x * x).sum();
        if beta == 0.0 {
            continue;
        }
        // w = A v on the trailing submatrix
        let mut w = vec![0.0; n];
        for i in k + 1..n {
            let mut acc = 0.0;
            for j in k + 1..n {
                acc += m[(i, j)] * v[j];
            }
            w[i] = acc;
        }
        let vw: f64 = (k + 1..n).map(|i| v[i] * w[i]).sum();
        for i in k + 1..n {
            for j in k + 1..n {
                m[(i, j)] += -2.0 / beta * (v[i] * w[j] + w[i] * v[j])
                    + 4.0 * vw / (beta * beta) * v[i] * v[j];
            }
        }
        m[(k + 1, k)] = alpha;
        m[(k, k + 1)] = alpha;
        for i in k + 2..n {
            m[(i, k)] = 0.0;
            m[(k, i)] = 0.0;
        }
    }
    let diag = (0..n).map(|i| m[(i, i)]).collect();
    let off = (0..n.saturating_sub(1)).map(|i| m[(i + 1, i)]).collect();
    (diag, off)
}

/// All eigenvalues of a symmetric tridiagonal matrix by the implicit-shift
/// QL algorithm, sorted ascending.
pub fn tridiag_eigenvalues_ql(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_SWEEP_LIMIT {
                return Err(Error::EigenNoConvergence {
                    limit: QL_SWEEP_LIMIT,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                let r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // recover from underflow and restart the sweep
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let t = (d[i] - g) * s + 2.0 * c * b;
                p = s * t;
                d[i + 1] = g + p;
                g = c * t - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

/// Number of eigenvalues strictly less than `x` via the Sturm LDL recurrence.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let n = diag.len();
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..n {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        if q == 0.0 {
            q = f64::EPSILON * (1.0 + e2.sqrt());
        }
        q = diag[i] - x - e2 / q;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Smallest and largest eigenvalue of a symmetric tridiagonal matrix by
/// bisection on the Sturm count, bracketed by Gershgorin bounds.
pub fn tridiag_extreme_eigenvalues_bisect(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut radius = 0.0;
        if i > 0 {
            radius += off[i - 1].abs();
        }
        if i + 1 < n {
            radius += off[i].abs();
        }
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    let bisect = |target: usize| {
        let (mut a, mut b) = (lo - 1.0, hi + 1.0);
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (a + b);
            if sturm_count(diag, off, mid) >= target {
                b = mid;
            } else {
                a = mid;
            }
        }
        0.5 * (a + b)
    };
    // lambda_min is where the count first reaches 1; lambda_max where it
    // reaches n
    (bisect(1), bisect(n))
}

/// All eigenvalues of a dense symmetric matrix, sorted ascending.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<f64>> {
    check_symmetric(a, 1e-12)?;
    if a.nrows() == 0 {
        return Ok(Vec::new());
    }
    let (d, e) = tridiagonalize(a);
    tridiag_eigenvalues_ql(&d, &e)
}

/// Largest absolute eigenvalue of a dense symmetric matrix via
/// tridiagonalization plus Sturm bisection for the two extremes.
pub fn symmetric_spectral_radius(a: &DMatrix<f64>) -> Result<f64> {
    check_symmetric(a, 1e-12)?;
    if a.nrows() == 0 {
        return Ok(0.0);
    }
    if a.nrows() == 1 {
        return Ok(a[(0, 0)].abs());
    }
    let (d, e) = tridiagonalize(a);
    let (min, max) = tridiag_extreme_eigenvalues_bisect(&d, &e);
    Ok(min.abs().max(max.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::SymmetricEigen;

    fn random_symmetric(n: usize, seed: u64) -> DMatrix<f64> {
        // small deterministic LCG; plenty for test fixtures
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let m = DMatrix::from_fn(n, n, |_, _| next());
        &m + m.transpose()
    }

    #[test]
    fn ql_matches_nalgebra_on_random_matrices() {
        for seed in 0..5 {
            let a = random_symmetric(12, seed);
            let mine = symmetric_eigenvalues(&a).unwrap();
            let mut theirs: Vec<f64> = SymmetricEigen::new(a.clone())
                .eigenvalues
                .iter()
                .copied()
                .collect();
            theirs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (x, y) in mine.iter().zip(theirs.iter()) {
                assert!((x - y).abs() < 1e-9, "seed {seed}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn bisection_matches_ql_extremes() {
        for seed in 5..10 {
            let a = random_symmetric(15, seed);
            let (d, e) = tridiagonalize(&a);
            let ql = tridiag_eigenvalues_ql(&d, &e).unwrap();
            let (min, max) = tridiag_extreme_eigenvalues_bisect(&d, &e);
            assert!((min - ql[0]).abs() < 1e-9);
            assert!((max - ql[ql.len() - 1]).abs() < 1e-9);
        }
    }

    #[test]
    fn spectral_radius_of_identity() {
        let a = DMatrix::<f64>::identity(7, 7);
        assert!((symmetric_spectral_radius(&a).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn asymmetry_is_rejected() {
        let mut a = DMatrix::<f64>::identity(3, 3);
        a[(0, 1)] = 0.5;
        assert!(matches!(
            symmetric_spectral_radius(&a),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn sturm_count_splits_known_spectrum() {
        // diag(1, 2, 3)
        let d = [1.0, 2.0, 3.0];
        let e = [0.0, 0.0];
        assert_eq!(sturm_count(&d, &e, 0.5), 0);
        assert_eq!(sturm_count(&d, &e, 1.5), 1);
        assert_eq!(sturm_count(&d, &e, 2.5), 2);
        assert_eq!(sturm_count(&d, &e, 3.5), 3);
    }
}
