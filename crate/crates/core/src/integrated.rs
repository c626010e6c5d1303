//! Frequency-integrated Voigt function in closed form.
//!
//! Each rational term splits into partial fractions,
//!
//! ```text
//! (A + ζB) / (C² - ζ²) = p / (C - ζ) + q / (C + ζ),
//! p = (A/C + B)/2,  q = (A/C - B)/2,
//! ```
//!
//! with antiderivative `-p ln(C - ζ) + q ln(C + ζ)`. Along the path
//! `ζ = x + iY`, `Y = y + ς/2 > 0`, the argument `C - ζ` stays strictly in
//! the lower half-plane and `C + ζ` strictly in the upper one, so neither
//! crosses the principal branch cut. The difference of logarithms at the two
//! endpoints is therefore the principal logarithm of their ratio.

use crate::compensated::{ComplexDd, DoubleDouble};
use crate::error::{Error, Result};
use crate::faddeeva::IceApproximation;
use crate::quadrature;

/// Widest interval on which debug builds re-check the closed form by
/// quadrature.
const DEBUG_CHECK_MAX_WIDTH: f64 = 100.0;

impl IceApproximation {
    /// `∫_{x1}^{x2} K(x, y) dx` from the antiderivative of each term.
    pub fn voigt_integrated(&self, x1: f64, x2: f64, y: f64) -> Result<f64> {
        if !(x1.is_finite() && x2.is_finite() && y.is_finite()) {
            return Err(Error::NonFinite);
        }
        if y < 0.0 {
            return Err(Error::Domain("Im[z] > 0 required"));
        }
        if x1 > x2 {
            return Err(Error::Domain("x1 <= x2 required"));
        }
        if x1 == x2 {
            return Ok(0.0);
        }
        let coeffs = self.coefficients();
        let depth = y + 0.5 * coeffs.params().sigma_shift();

        // The per-term logarithms are much larger than their sum near the
        // real axis, so the sum is carried in double-double.
        let dd = |v: f64| DoubleDouble::from_f64(v);
        let (x1, x2, depth) = (dd(x1), dd(x2), dd(depth));
        let mut total = DoubleDouble::ZERO;
        for ((&c, &a), &b) in coeffs.c().iter().zip(coeffs.a()).zip(coeffs.b()) {
            let c = dd(c);
            // p = (A/C + B)/2, q = (A/C - B)/2 with B = -i b
            let half_ratio = (dd(a) / c).scale_pow2(-1);
            let half_b = dd(b).scale_pow2(-1);
            let p = ComplexDd::new(half_ratio, -half_b);
            let q = ComplexDd::new(half_ratio, half_b);
            let (lo1, lo2) = (
                ComplexDd::new(c - x1, -depth),
                ComplexDd::new(c - x2, -depth),
            );
            let (up1, up2) = (ComplexDd::new(c + x1, depth), ComplexDd::new(c + x2, depth));
            if lo1.im.hi >= 0.0 || lo2.im.hi >= 0.0 || up1.im.hi <= 0.0 || up2.im.hi <= 0.0 {
                return Err(Error::Internal(
                    "logarithm argument left its half-plane".into(),
                ));
            }
            let term = q * (up2 / up1).ln() - p * (lo2 / lo1).ln();
            total = total + term.re;
        }
        let value = total.to_f64();
        let (x1, x2) = (x1.hi, x2.hi);

        if cfg!(debug_assertions) && x2 - x1 <= DEBUG_CHECK_MAX_WIDTH {
            let q = quadrature::integrate(
                |x| self.voigt_k(x, y).unwrap_or(f64::NAN),
                x1,
                x2,
                1e-13,
                1e-12,
                4000,
            );
            let scale = value.abs().max(q.value.abs()).max(1e-300);
            if !(q.converged && (q.value - value).abs() <= 1e-8 * scale + 1e-13) {
                return Err(Error::Internal(format!(
                    "closed form {value:e} disagrees with quadrature {:e}",
                    q.value
                )));
            }
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_interval() {
        let ice = IceApproximation::default();
        assert_eq!(ice.voigt_integrated(2.5, 2.5, 1.0).unwrap(), 0.0);
        assert!(ice.voigt_integrated(3.0, 2.0, 1.0).is_err());
        assert!(ice.voigt_integrated(0.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn additive_over_subintervals() {
        let ice = IceApproximation::default();
        let whole = ice.voigt_integrated(-3.0, 4.0, 0.3).unwrap();
        let parts = ice.voigt_integrated(-3.0, 0.5, 0.3).unwrap()
            + ice.voigt_integrated(0.5, 4.0, 0.3).unwrap();
        assert!((whole - parts).abs() < 1e-14);
    }
}
