//! Discrete-time LTI plants in the unit-delay variable and their Markov
//! (impulse response) parameters.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly;

/// Rational discrete transfer function `G(z^-1) = num(z^-1) / den(z^-1)`.
///
/// Coefficients are ordered by ascending delay power. The relative degree `d`
/// is the count of leading zero numerator coefficients; it is inferred on
/// construction and can be overridden.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalPlant {
    num: Vec<f64>,
    den: Vec<f64>,
    d: usize,
}

impl RationalPlant {
    pub fn new(num: Vec<f64>, den: Vec<f64>) -> Result<Self> {
        if den.is_empty() || den[0] == 0.0 {
            return Err(Error::IllPosedDenominator);
        }
        let d = num.iter().take_while(|&&c| c == 0.0).count().min(num.len());
        Ok(Self { num, den, d })
    }

    /// Override the inferred relative degree.
    pub fn with_relative_degree(mut self, d: usize) -> Self {
        self.d = d;
        self
    }

    /// Unity transfer function.
    pub fn unity() -> Self {
        Self {
            num: vec![1.0],
            den: vec![1.0],
            d: 0,
        }
    }

    pub fn num(&self) -> &[f64] {
        &self.num
    }

    pub fn den(&self) -> &[f64] {
        &self.den
    }

    pub fn relative_degree(&self) -> usize {
        self.d
    }

    /// Response to input `u` over `len` samples from zero initial conditions.
    /// The input is zero-extended past its end.
    pub fn simulate(&self, u: &[f64], len: usize) -> Vec<f64> {
        let mut y = vec![0.0; len];
        for t in 0..len {
            let mut acc = 0.0;
            for (i, &b) in self.num.iter().enumerate() {
                if t >= i && t - i < u.len() {
                    acc += b * u[t - i];
                }
            }
            for (i, &a) in self.den.iter().enumerate().skip(1) {
                if t >= i {
                    acc -= a * y[t - i];
                }
            }
            y[t] = acc / self.den[0];
        }
        y
    }

    /// Markov parameters `h_d .. h_{n+d-1}` from the impulse-response
    /// recursion with zero initial conditions.
    pub fn markov_params(&self, n: usize) -> Result<MarkovSequence> {
        if n == 0 {
            return Err(Error::EmptyHorizon);
        }
        let y = self.simulate(&[1.0], n + self.d);
        Ok(MarkovSequence {
            h: y[self.d..].to_vec(),
            d: self.d,
        })
    }

    /// Poles in the `z` plane (roots of the reversed denominator).
    pub fn poles(&self) -> Vec<Complex64> {
        let rev: Vec<f64> = self.den.iter().rev().copied().collect();
        poly::roots(&rev)
    }

    /// Zeros in the `z` plane, ignoring the `z^-d` delay factor.
    pub fn zeros(&self) -> Vec<Complex64> {
        let stripped = &self.num[self.d.min(self.num.len())..];
        if stripped.is_empty() {
            return Vec::new();
        }
        let rev: Vec<f64> = stripped.iter().rev().copied().collect();
        poly::roots(&rev)
    }

    /// Errors with the offending pole if any pole has modulus >= 1.
    pub fn check_stable(&self) -> Result<()> {
        for p in self.poles() {
            let modulus = p.norm();
            if modulus >= 1.0 {
                return Err(Error::UnstablePlant {
                    re: p.re,
                    im: p.im,
                    modulus,
                });
            }
        }
        Ok(())
    }

    pub fn is_stable(&self) -> bool {
        self.check_stable().is_ok()
    }
}

/// Impulse response samples `h_d .. h_{n+d-1}` of a plant with relative
/// degree `d`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovSequence {
    h: Vec<f64>,
    d: usize,
}

impl MarkovSequence {
    pub fn new(h: Vec<f64>, d: usize) -> Self {
        Self { h, d }
    }

    pub fn samples(&self) -> &[f64] {
        &self.h
    }

    pub fn relative_degree(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }
}

/// The third-order non-minimum-phase example plant
/// `y(t+1) = -0.2 y(t) + 0.0125 y(t-1) + u(t) - 1.1 u(t-1)`.
pub fn example_plant() -> RationalPlant {
    RationalPlant::new(vec![0.0, 1.0, -1.1], vec![1.0, 0.2, -0.0125]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_markov_params() {
        // hand recursion: h1 = 1, h2 = -0.2 - 1.1, h3 = -0.2*(-1.3) + 0.0125
        let h = example_plant().markov_params(3).unwrap();
        assert_eq!(h.relative_degree(), 1);
        let expect = [1.0, -1.3, 0.2725];
        for (a, b) in h.samples().iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn pure_delay_markov() {
        let p = RationalPlant::new(vec![0.0, 1.0], vec![1.0]).unwrap();
        assert_eq!(p.relative_degree(), 1);
        let h = p.markov_params(5).unwrap();
        assert_eq!(h.samples(), &[1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn single_markov_parameter() {
        let p = RationalPlant::new(vec![0.0, 3.0], vec![2.0, 0.7]).unwrap();
        let h = p.markov_params(1).unwrap();
        assert_eq!(h.len(), 1);
        assert!((h.samples()[0] - 1.5).abs() < 1e-15);
    }

    #[test]
    fn zero_horizon_rejected() {
        assert!(example_plant().markov_params(0).is_err());
    }

    #[test]
    fn ill_posed_denominator_rejected() {
        assert!(RationalPlant::new(vec![1.0], vec![0.0, 1.0]).is_err());
    }

    #[test]
    fn example_plant_poles_and_zeros() {
        let p = example_plant();
        assert!(p.is_stable());
        let mut poles: Vec<f64> = p.poles().iter().map(|c| c.re).collect();
        poles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((poles[0] + 0.25).abs() < 1e-10);
        assert!((poles[1] - 0.05).abs() < 1e-10);
        let zeros = p.zeros();
        assert_eq!(zeros.len(), 1);
        assert!((zeros[0].re - 1.1).abs() < 1e-10);
    }

    #[test]
    fn unstable_pole_reported() {
        let p = RationalPlant::new(vec![0.0, 1.0], vec![1.0, -1.5]).unwrap();
        match p.check_stable() {
            Err(Error::UnstablePlant { modulus, .. }) => assert!(modulus >= 1.0),
            other => panic!("expected unstable plant, got {other:?}"),
        }
    }
}
