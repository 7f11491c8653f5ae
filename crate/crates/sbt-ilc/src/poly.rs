//! Polynomial helpers: convolution, deconvolution, companion-matrix roots and
//! real expansion of root sets. Coefficients are ascending in the variable.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Polynomial product.
pub fn conv(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Synthetic division `a / b`, returning (quotient, remainder).
/// `b` must have a nonzero leading (highest-degree) coefficient.
pub fn deconv(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let db = b.len() - 1;
    assert!(b[db] != 0.0, "divisor has zero leading coefficient");
    if a.len() <= db {
        return (vec![0.0], a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut quot = vec![0.0; a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db] / b[db];
        quot[k] = c;
        for (i, &bi) in b.iter().enumerate() {
            rem[k + i] -= c * bi;
        }
    }
    rem.truncate(db.max(1));
    (quot, rem)
}

/// Evaluate the polynomial at a complex point.
pub fn eval_complex(coeffs: &[f64], x: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// All roots of the polynomial via eigenvalues of its companion matrix.
/// Trailing zero coefficients are trimmed first.
pub fn roots(coeffs: &[f64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
    let m = c.len() - 1;
    if m == 0 {
        return Vec::new();
    }
    let lead = c[m];
    let companion = DMatrix::from_fn(m, m, |i, j| {
        if j == m - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    companion.complex_eigenvalues().iter().copied().collect()
}

/// Expand `prod_i (1 - z_i * w)` over the given roots into real coefficients.
/// Complex roots must come in conjugate pairs (matched within `pair_tol`).
pub fn expand_mirrored_roots(zs: &[Complex64], pair_tol: f64) -> Result<Vec<f64>> {
    let mut poly = vec![1.0];
    let mut pending: Vec<Complex64> = Vec::new();
    for &z in zs {
        if z.im.abs() <= pair_tol {
            poly = conv(&poly, &[1.0, -z.re]);
        } else if let Some(pos) = pending
            .iter()
            .position(|p| (p.re - z.re).abs() <= pair_tol && (p.im + z.im).abs() <= pair_tol)
        {
            let p = pending.swap_remove(pos);
            // (1 - z w)(1 - conj(z) w) with z paired to p
            let re = 0.5 * (z.re + p.re);
            let norm = (z * p.conj()).norm(); // |z|^2 up to pairing error
            poly = conv(&poly, &[1.0, -2.0 * re, norm]);
        } else {
            pending.push(z);
        }
    }
    if let Some(orphan) = pending.first() {
        return Err(Error::UnpairedComplexRoot {
            re: orphan.re,
            im: orphan.im,
        });
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conv_deconv_round_trip() {
        let a = [1.0, 0.2, -0.0125];
        let b = [2.0, -1.0, 0.5, 0.25];
        let p = conv(&a, &b);
        let (q, rem) = deconv(&p, &a);
        for (x, y) in q.iter().zip(b.iter()) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!(rem.iter().all(|r| r.abs() < 1e-12));
    }

    #[test]
    fn roots_of_quadratic() {
        // (w - 2)(w + 3) = w^2 + w - 6
        let mut rs = roots(&[-6.0, 1.0, 1.0]);
        rs.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((rs[0].re + 3.0).abs() < 1e-10 && rs[0].im.abs() < 1e-10);
        assert!((rs[1].re - 2.0).abs() < 1e-10 && rs[1].im.abs() < 1e-10);
    }

    #[test]
    fn expand_conjugate_pair() {
        let zs = [Complex64::new(1.0, 0.5), Complex64::new(1.0, -0.5)];
        let p = expand_mirrored_roots(&zs, 1e-8).unwrap();
        // (1 - z w)(1 - z* w) = 1 - 2 w + 1.25 w^2
        assert!((p[0] - 1.0).abs() < 1e-12);
        assert!((p[1] + 2.0).abs() < 1e-12);
        assert!((p[2] - 1.25).abs() < 1e-12);
    }

    #[test]
    fn unpaired_root_is_rejected() {
        let zs = [Complex64::new(1.0, 0.5)];
        assert!(expand_mirrored_roots(&zs, 1e-8).is_err());
    }
}
