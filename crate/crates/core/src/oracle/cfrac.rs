//! Laplace continued fraction
//!
//! ```text
//! w(z) = (i/√π) / (z - (1/2) / (z - 1 / (z - (3/2) / (z - 2 / (z - ...)))))
//! ```
//!
//! evaluated bottom-up in double-double arithmetic.

use num_complex::Complex64;

use crate::compensated::{ComplexDd, DoubleDouble};
use crate::error::{Error, Result};

pub const DEFAULT_START_DEPTH: usize = 16;
pub const MAX_DEPTH: usize = 1 << 17;

/// Componentwise agreement demanded between successive depths.
const COMPONENT_TOLERANCE: f64 = 1e-17;

/// Fixed-depth evaluation.
pub fn w_cfrac_depth(z: Complex64, depth: usize) -> ComplexDd {
    let zd = ComplexDd::from_f64(z.re, z.im);
    let mut f = zd;
    for k in (1..=depth).rev() {
        let a = ComplexDd::new(DoubleDouble::from_f64(k as f64 * 0.5), DoubleDouble::ZERO);
        f = zd - a / f;
    }
    let i_over_sqrt_pi = ComplexDd::new(DoubleDouble::ZERO, DoubleDouble::FRAC_1_SQRT_PI);
    i_over_sqrt_pi / f
}

fn settled(prev: ComplexDd, next: ComplexDd) -> bool {
    let floor = 1e-30 * next.norm_sqr().to_f64().sqrt();
    let close = |a: DoubleDouble, b: DoubleDouble| {
        let d = (a - b).to_f64().abs();
        d <= COMPONENT_TOLERANCE * b.to_f64().abs() || d <= floor
    };
    close(prev.re, next.re) && close(prev.im, next.im)
}

/// Continued fraction with the depth doubled from `start_depth` until two
/// successive depths agree componentwise.
pub fn w_cfrac(z: Complex64, start_depth: usize) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    if z.im <= 0.0 {
        return Err(Error::Domain("Im[z] > 0 required"));
    }
    adaptive(z, start_depth)
}

/// Depth doubling without the half-plane check; on the real axis the
/// truncated fraction still gives the algebraic part of `w` for large `|x|`.
pub(crate) fn adaptive(z: Complex64, start_depth: usize) -> Result<Complex64> {
    let mut depth = start_depth.max(1);
    let mut prev = w_cfrac_depth(z, depth);
    while depth < MAX_DEPTH {
        depth *= 2;
        let next = w_cfrac_depth(z, depth);
        if settled(prev, next) {
            return Ok(next.to_c64());
        }
        prev = next;
    }
    Err(Error::Convergence { depth })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn far_imaginary_axis() {
        let y = 1e3;
        let w = w_cfrac(Complex64::new(0.0, y), DEFAULT_START_DEPTH).unwrap();
        let lead = 1.0 / (std::f64::consts::PI.sqrt() * y);
        assert!(((w.re - lead) / lead).abs() < 1e-6);
        assert_eq!(w.im, 0.0);
    }

    #[test]
    fn deeper_is_never_further_from_converged() {
        let z = Complex64::new(5.0, 0.3);
        let reference = w_cfrac_depth(z, 4096).to_c64();
        let mut last = f64::INFINITY;
        for depth in [8, 16, 32, 64, 128, 256] {
            let d = (w_cfrac_depth(z, depth).to_c64() - reference).norm();
            assert!(d <= last, "depth {depth}: {d:e} > {last:e}");
            last = d;
        }
    }

    #[test]
    fn rejects_real_axis() {
        assert!(w_cfrac(Complex64::new(9.0, 0.0), 16).is_err());
    }
}
