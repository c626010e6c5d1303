//! Error-free transformations, compensated summation and a small
//! double-double type.
//!
//! Everything here works on plain `f64` pairs. The double-double type is
//! only as complete as the callers need: coefficient generation uses it for
//! exact phase reduction, and the continued-fraction oracle runs its whole
//! recurrence in it.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// `a + b = s + e` exactly.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Like [`two_sum`] but requires `|a| >= |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// `a * b = p + e` exactly (barring over/underflow).
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Neumaier's variant of Kahan summation.
///
/// Terms are accumulated in the order they are added; the result does not
/// depend on anything but that order.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.carry += (self.sum - t) + value;
        } else {
            self.carry += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        s.extend(iter);
        s
    }
}

/// Sum in index order with compensation.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<CompensatedSum>().value()
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const PI: Self = Self {
        hi: std::f64::consts::PI,
        lo: 1.2246467991473532e-16,
    };
    pub const FRAC_1_SQRT_PI: Self = Self {
        hi: 0.5641895835477563,
        lo: 7.66772980658294e-18,
    };
    pub const LN_2: Self = Self {
        hi: std::f64::consts::LN_2,
        lo: 2.3190468138462996e-17,
    };
    pub const SQRT_PI: Self = Self {
        hi: 1.772453850905516,
        lo: -7.666586499825799e-17,
    };

    pub const fn from_f64(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    pub fn from_prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    /// Exact scaling by a power of two.
    pub fn scale_pow2(self, exp: i32) -> Self {
        let f = 2f64.powi(exp);
        Self {
            hi: self.hi * f,
            lo: self.lo * f,
        }
    }

    pub fn square(self) -> Self {
        self * self
    }

    /// `self - round(self)`, i.e. the signed fractional part in `[-1/2, 1/2]`.
    pub fn frac_nearest(self) -> Self {
        let k = self.hi.round();
        // hi - k is exact for |hi| < 2^52; renormalise with lo.
        Self::from_sum(self.hi - k, self.lo)
    }

    pub fn exp(self) -> f64 {
        // lo is below half an ulp of hi, so first order is enough.
        let e = self.hi.exp();
        e + e * self.lo
    }

    /// `(sin, cos)` to double-double accuracy.
    ///
    /// The argument is reduced by a three-part π/2 and the Taylor series run
    /// in double-double on `[-π/4, π/4]`. Intended for moderate arguments
    /// (`|x| < 2^20`).
    pub fn sin_cos_dd(self) -> (Self, Self) {
        const HALF_PI: [f64; 3] = [
            std::f64::consts::FRAC_PI_2,
            6.123233995736766e-17,
            -1.4973849048591698e-33,
        ];
        let k = (self.hi / HALF_PI[0]).round();
        let r = self - Self::from_prod(k, HALF_PI[0]) - Self::from_prod(k, HALF_PI[1])
            + Self::from_f64(-k * HALF_PI[2]);
        let r2 = r.square();
        let mut sin = r;
        let mut cos = Self::ONE;
        let mut s_term = r;
        let mut c_term = Self::ONE;
        for j in 1..30u32 {
            let (a, b) = ((2 * j) as f64, (2 * j + 1) as f64);
            c_term = -(c_term * r2) / ((a - 1.0) * a);
            s_term = -(s_term * r2) / (a * b);
            cos = cos + c_term;
            sin = sin + s_term;
            if c_term.hi.abs() < 1e-36 && s_term.hi.abs() < 1e-36 {
                break;
            }
        }
        match (k as i64).rem_euclid(4) {
            0 => (sin, cos),
            1 => (cos, -sin),
            2 => (-sin, -cos),
            _ => (-cos, sin),
        }
    }

    /// `e^self` to double-double accuracy, for `|self| < 700`.
    pub fn exp_dd(self) -> Self {
        let k = (self.hi / Self::LN_2.hi).round();
        // |r| <= ln2/2, then scaled by 2^-6; squaring back amplifies rounding
        // by 2^6 only.
        let r = (self - Self::LN_2 * k).scale_pow2(-6);
        let mut sum = Self::ONE;
        let mut term = Self::ONE;
        for n in 1..30 {
            term = term * r / n as f64;
            sum = sum + term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        for _ in 0..6 {
            sum = sum.square();
        }
        sum.scale_pow2(k as i32)
    }

    /// Natural logarithm to double-double accuracy, for `self > 0`.
    pub fn ln_dd(self) -> Self {
        // Split off the binary exponent so e^-y below stays normal.
        let e = self.hi.log2().floor();
        let m = self.scale_pow2(-(e as i32));
        let y = Self::from_f64(m.hi.ln());
        // One Newton step on e^y = m doubles the f64 starting accuracy.
        Self::LN_2 * e + (y + m * (-y).exp_dd() - 1.0)
    }

    /// `(sin, cos)` of a double-double argument, returned in `f64`.
    pub fn sin_cos(self) -> (f64, f64) {
        let (s, c) = self.hi.sin_cos();
        (s + self.lo * c, c - self.lo * s)
    }
}

impl From<f64> for DoubleDouble {
    fn from(v: f64) -> Self {
        Self::from_f64(v)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let e = e + t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (hi, lo) = quick_two_sum(s, e);
        Self { hi, lo }
    }
}

impl Add<f64> for DoubleDouble {
    type Output = Self;
    fn add(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Sub<f64> for DoubleDouble {
    type Output = Self;
    fn sub(self, b: f64) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Mul<f64> for DoubleDouble {
    type Output = Self;
    fn mul(self, b: f64) -> Self {
        self.mul_f64(b)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b * q1;
        let q2 = r.hi / b.hi;
        let r = r - b * q2;
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + q3
    }
}

impl Div<f64> for DoubleDouble {
    type Output = Self;
    fn div(self, b: f64) -> Self {
        self / Self::from_f64(b)
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ComplexDd {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl ComplexDd {
    pub const fn new(re: DoubleDouble, im: DoubleDouble) -> Self {
        Self { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Self::new(re.into(), im.into())
    }

    pub fn norm_sqr(self) -> DoubleDouble {
        self.re.square() + self.im.square()
    }

    pub fn to_c64(self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(self, k: DoubleDouble) -> Self {
        Self::new(self.re * k, self.im * k)
    }
}

impl ComplexDd {
    /// Principal logarithm, for arguments off the negative real axis.
    pub fn ln(self) -> Self {
        let modulus_ln = self.norm_sqr().ln_dd().scale_pow2(-1);
        let theta0 = self.im.hi.atan2(self.re.hi);
        // Rotate by -θ0 and correct with the small remaining angle.
        let (s, c) = DoubleDouble::from_f64(theta0).sin_cos_dd();
        let rotated = self * Self::new(c, -s);
        let theta = DoubleDouble::from_f64(theta0) + rotated.im / rotated.re;
        Self::new(modulus_ln, theta)
    }
}

impl Add for ComplexDd {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Self::new(self.re + b.re, self.im + b.im)
    }
}

impl Sub for ComplexDd {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Self::new(self.re - b.re, self.im - b.im)
    }
}

impl Mul for ComplexDd {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        Self::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}

impl Div for ComplexDd {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let d = b.norm_sqr();
        Self::new(
            (self.re * b.re + self.im * b.im) / d,
            (self.im * b.re - self.re * b.im) / d,
        )
    }
}
