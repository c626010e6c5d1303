//! Reference values of `w(z)` from two independent classical methods.
//!
//! The Maclaurin series covers small `|z|`, the Laplace continued fraction
//! large `|z|`; in the annulus between them both run and must agree, so an
//! error in either method shows up as an integrity failure rather than as a
//! silently wrong error map.

mod cfrac;
mod series;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use cfrac::{w_cfrac, w_cfrac_depth, DEFAULT_START_DEPTH};
pub use series::{w_series, SERIES_MAX_MODULUS};

/// Below this modulus only the series is used.
pub const SERIES_ONLY_BELOW: f64 = 6.0;
/// Above this modulus the continued fraction is used.
pub const CFRAC_ONLY_ABOVE: f64 = 8.0;
/// Largest relative discrepancy accepted where both methods run.
pub const AGREEMENT_LIMIT: f64 = 1e-13;

/// Size of the unresolved part of `Re w`, relative to `Re w`, below which
/// the continued fraction is trusted.
const EXPONENTIAL_PART_LIMIT: f64 = 1e-19;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMethod {
    Series,
    ContinuedFraction,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: Complex64,
    /// `|w_series - w_cfrac| / |w_series|` where both ran, otherwise 0.
    pub method_agreement: f64,
    pub method_used: OracleMethod,
}

/// Reference `w(z)` for `Im z >= 0`.
pub fn w_ref(z: Complex64) -> Result<OracleValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    if z.im < 0.0 {
        return Err(Error::Domain("Im[z] >= 0 required"));
    }
    let modulus = z.norm();
    if modulus < SERIES_ONLY_BELOW || !cfrac_resolves(z) {
        if modulus <= SERIES_MAX_MODULUS {
            return Ok(OracleValue {
                value: w_series(z)?,
                method_agreement: 0.0,
                method_used: OracleMethod::Series,
            });
        }
        if z.im > 0.0 {
            return Err(Error::Range {
                modulus,
                limit: SERIES_MAX_MODULUS,
            });
        }
        // On the axis Re w(x) = e^{-x²} exactly.
        let c = cfrac::adaptive(z, DEFAULT_START_DEPTH)?;
        return Ok(OracleValue {
            value: Complex64::new((-z.re * z.re).exp(), c.im),
            method_agreement: 0.0,
            method_used: OracleMethod::ContinuedFraction,
        });
    }
    let c = w_cfrac(z, DEFAULT_START_DEPTH)?;
    if modulus > CFRAC_ONLY_ABOVE {
        return Ok(OracleValue {
            value: c,
            method_agreement: 0.0,
            method_used: OracleMethod::ContinuedFraction,
        });
    }
    let s = w_series(z)?;
    let agreement = (s - c).norm() / s.norm();
    if agreement.is_nan() || agreement > AGREEMENT_LIMIT {
        return Err(Error::OracleIntegrity {
            x: z.re,
            y: z.im,
            agreement,
        });
    }
    Ok(OracleValue {
        value: s,
        method_agreement: agreement,
        method_used: OracleMethod::Both,
    })
}

/// Whether the fraction gives `Re w` to full precision at `z`. Near the
/// real axis `Re w` contains a part of size up to
/// `e^{y²-x²}·erfc(√2 y) <= e^{-|z|²}` that the truncated fraction does not
/// reproduce; the rest of `Re w` is at least about `y / (2√π |z|²)`.
pub fn cfrac_resolves(z: Complex64) -> bool {
    let r2 = z.norm_sqr();
    let algebraic = z.im * crate::faddeeva::FRAC_1_SQRT_PI / (2.0 * r2);
    z.im > 0.0 && (-r2).exp() <= EXPONENTIAL_PART_LIMIT * algebraic
}
