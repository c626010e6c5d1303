//! Weideman's rational approximation, the comparison baseline.
//!
//! ```text
//! w(z) ≈ π^{-1/2} / (L - iz) + 2/(L - iz)² Σ_{n=0}^{N-1} γ_{n+1} Z^n,
//! Z = (L + iz) / (L - iz),   L = 2^{-1/4} N^{1/2}
//! ```
//!
//! The γ_n are the Fourier coefficients of `e^{-t²}(L² + t²)` under the map
//! `t = L tan(θ/2)`, obtained with an FFT over `4N` samples.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::faddeeva::FRAC_1_SQRT_PI;

#[derive(Debug, Clone, PartialEq)]
pub struct WeidemanCoefficients {
    l: f64,
    gamma: Vec<f64>,
}

impl WeidemanCoefficients {
    pub const DEFAULT_TERMS: usize = 16;

    /// Build the `terms` coefficients.
    pub fn build(terms: usize) -> Result<Self> {
        if terms == 0 {
            return Err(Error::Parameter("Weideman term count must be >= 1".into()));
        }
        let l = Self::scale_for(terms);
        let half = 2 * terms;
        let size = 2 * half;
        // Samples at θ_j = π j / half, j = 0..size; θ = π is the zero node.
        let mut buf: Vec<Complex64> = (0..size)
            .map(|j| {
                let k = if j < half {
                    j as f64
                } else {
                    j as f64 - size as f64
                };
                if j == half {
                    return Complex64::new(0.0, 0.0);
                }
                let theta = std::f64::consts::PI * k / half as f64;
                let t = l * (0.5 * theta).tan();
                Complex64::new((-t * t).exp() * (l * l + t * t), 0.0)
            })
            .collect();
        FftPlanner::new().plan_fft_forward(size).process(&mut buf);
        let gamma = buf[1..=terms].iter().map(|c| c.re / size as f64).collect();
        Ok(Self { l, gamma })
    }

    /// `L = 2^{-1/4} √N`.
    pub fn scale_for(terms: usize) -> f64 {
        (terms as f64).sqrt() * 2f64.powf(-0.25)
    }

    pub fn terms(&self) -> usize {
        self.gamma.len()
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    /// `γ_1 ..= γ_N`.
    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// Evaluate the approximation; the polynomial in `Z` by Horner's rule.
    pub fn w(&self, z: Complex64) -> Result<Complex64> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if z.im <= 0.0 {
            return Err(Error::Domain("Im[z] > 0 required"));
        }
        let iz = Complex64::new(-z.im, z.re);
        let lm = self.l - iz;
        let inv = lm.inv();
        let ratio = (self.l + iz) * inv;
        let mut p = Complex64::new(0.0, 0.0);
        for &g in self.gamma.iter().rev() {
            p = p * ratio + g;
        }
        Ok(inv * (FRAC_1_SQRT_PI + 2.0 * p * inv))
    }
}

impl Default for WeidemanCoefficients {
    fn default() -> Self {
        Self::build(Self::DEFAULT_TERMS).expect("default term count is valid")
    }
}
