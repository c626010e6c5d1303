//! Maclaurin series `w(z) = Σ_{n≥0} (iz)^n / Γ(n/2 + 1)` in binary fixed point.
//!
//! Splitting even and odd `n`,
//!
//! ```text
//! w(z) = Σ_k (-z²)^k / k!  +  (2i z/√π) Σ_k (-2z²)^k / (2k+1)!!
//! ```
//!
//! Both recurrences are rational in `z`, so they run exactly on big
//! integers scaled by `2^P`. The partial sums grow to about `e^{|z|²}`
//! before cancelling, so `P` carries `|z|² log2 e` guard bits on top of the
//! working precision.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Beyond this modulus the guard bits make the series impractical.
pub const SERIES_MAX_MODULUS: f64 = 12.0;

/// Bits kept after the worst-case cancellation. Enough to resolve
/// components down to ~1e-60 of |w| to full double precision.
const WORKING_BITS: u64 = 300;

/// 2/√π to 140 significant digits.
const TWO_OVER_SQRT_PI: &str = "11283791670955125738961589031215451716881012586579977136881714434212849368829868289734873204042147268860566958127234147033798629896523257327";

#[derive(Clone, Debug)]
struct Fixed {
    re: BigInt,
    im: BigInt,
}

impl Fixed {
    fn mul(&self, other: &Fixed, bits: u64) -> Fixed {
        let re = (&self.re * &other.re - &self.im * &other.im) >> bits;
        let im = (&self.re * &other.im + &self.im * &other.re) >> bits;
        Fixed { re, im }
    }

    fn div_small(&mut self, d: u64) {
        self.re /= d;
        self.im /= d;
    }

    fn add_assign(&mut self, other: &Fixed) {
        self.re += &other.re;
        self.im += &other.im;
    }

    fn is_negligible(&self) -> bool {
        self.re.bits() <= 1 && self.im.bits() <= 1
    }
}

/// `v · 2^bits` truncated to an integer.
fn to_fixed(v: f64, bits: u64) -> BigInt {
    if v == 0.0 {
        return BigInt::zero();
    }
    let raw = v.to_bits();
    let exp = ((raw >> 52) & 0x7ff) as i64;
    let frac = raw & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), exp - 1075)
    };
    let mag = BigInt::from(mant);
    let shift = e + bits as i64;
    let mag = if shift >= 0 {
        mag << shift as u64
    } else {
        mag >> (-shift) as u64
    };
    if v < 0.0 {
        -mag
    } else {
        mag
    }
}

/// `v / 2^bits` rounded to the nearest double.
fn from_fixed(v: &BigInt, bits: u64) -> f64 {
    let len = v.bits();
    if len == 0 {
        return 0.0;
    }
    // Keep 64 significant bits before the final rounding.
    let drop = len.saturating_sub(64);
    let top = (v.magnitude() >> drop).to_f64().unwrap_or(f64::INFINITY);
    let signed = if v.sign() == Sign::Minus { -top } else { top };
    let scale = drop as i64 - bits as i64;
    // Split the power of two to avoid intermediate over/underflow.
    let half = (scale / 2) as i32;
    signed * 2f64.powi(half) * 2f64.powi(scale as i32 - half)
}

fn two_over_sqrt_pi(bits: u64) -> BigInt {
    let digits: BigInt = TWO_OVER_SQRT_PI.parse().expect("constant parses");
    let ten_pow = BigInt::from(10u32).pow(TWO_OVER_SQRT_PI.len() as u32 - 1);
    (digits << bits) / ten_pow
}

/// Faddeeva function from its Maclaurin series, for `|z| <= 12`.
///
/// Valid in the whole plane; the result is accurate to a few units in the
/// last place of each component.
pub fn w_series(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let r2 = z.norm_sqr();
    let modulus = r2.sqrt();
    if modulus > SERIES_MAX_MODULUS {
        return Err(Error::Range {
            modulus,
            limit: SERIES_MAX_MODULUS,
        });
    }
    let bits = (r2 * std::f64::consts::LOG2_E).ceil() as u64 + WORKING_BITS;
    let one = BigInt::from(1) << bits;
    let zf = Fixed {
        re: to_fixed(z.re, bits),
        im: to_fixed(z.im, bits),
    };
    // -z²
    let sq = zf.mul(&zf, bits);
    let neg_sq = Fixed {
        re: -sq.re,
        im: -sq.im,
    };
    let min_terms = r2.ceil() as u64 + 2;

    // Σ (-z²)^k / k!
    let mut term = Fixed {
        re: one.clone(),
        im: BigInt::zero(),
    };
    let mut even = term.clone();
    for k in 1.. {
        term = term.mul(&neg_sq, bits);
        term.div_small(k);
        even.add_assign(&term);
        if k > min_terms && term.is_negligible() {
            break;
        }
    }

    // Σ (-2z²)^k / (2k+1)!!
    let neg_2sq = Fixed {
        re: &neg_sq.re << 1u32,
        im: &neg_sq.im << 1u32,
    };
    let mut term = Fixed {
        re: one,
        im: BigInt::zero(),
    };
    let mut odd = term.clone();
    for k in 1.. {
        term = term.mul(&neg_2sq, bits);
        term.div_small(2 * k + 1);
        odd.add_assign(&term);
        if k > min_terms && term.is_negligible() {
            break;
        }
    }

    // (2/√π) i z S
    let zs = zf.mul(&odd, bits);
    let k = two_over_sqrt_pi(bits);
    let re = even.re - ((&k * &zs.im) >> bits);
    let im = even.im + ((&k * &zs.re) >> bits);
    Ok(Complex64::new(from_fixed(&re, bits), from_fixed(&im, bits)))
}
