//! Rational approximation of the Faddeeva function obtained from the
//! incomplete cosine expansion, and the function family built on it.
//!
//! With `ζ = z + iς/2`,
//!
//! ```text
//! w(z) ≈ ψ(ζ) = Σ_{m=1}^{2^(M-1)} (A_m + ζ B_m) / (C_m² - ζ²),   Im z ≥ 0
//! ```
//!
//! where `A_m` is real and `B_m = -i b_m` is purely imaginary. The tables
//! depend only on `(h, N, M, ς)`, so they are built once per parameter set
//! and shared.

use std::collections::HashMap;
use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::compensated::{CompensatedSum, DoubleDouble};
use crate::error::{Error, Result};
use crate::params::ExpansionParams;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Largest `Re(-z²)` for which `exp(-z²)` stays finite.
const EXP_OVERFLOW_ARG: f64 = 709.78;

/// Precomputed `{A_m, b_m, C_m}` for one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    params: ExpansionParams,
    c: Vec<f64>,
    c_sq: Vec<f64>,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl CoefficientSet {
    /// Build the tables for `params`.
    ///
    /// The phases `π(2m-1)(nh + ς/2)/(2^M h)` are formed and reduced in
    /// double-double before taking sin/cos, and the sums over `n` are
    /// compensated: the weights `e^{ς²/4 - n²h²}` span many decades.
    pub fn build(params: ExpansionParams) -> Self {
        let count = params.term_count();
        let depth = params.m() as i32;
        let h = params.h();
        let half_sigma = DoubleDouble::from_f64(params.sigma_shift()) * 0.5;
        // (nh + ς/2)/h = n + ς/(2h)
        let offset = half_sigma / h;
        let n_max = params.n() as i64;

        let weights: Vec<f64> = (-n_max..=n_max)
            .map(|n| {
                let nh = DoubleDouble::from_prod(n as f64, h);
                (half_sigma.square() - nh.square()).exp()
            })
            .collect();

        let two_pi = DoubleDouble::PI * 2.0;
        let mut c = Vec::with_capacity(count);
        let mut c_sq = Vec::with_capacity(count);
        let mut a = Vec::with_capacity(count);
        let mut b = Vec::with_capacity(count);
        for m in 1..=count {
            let k = (2 * m - 1) as f64;
            let mut sin_sum = CompensatedSum::new();
            let mut cos_sum = CompensatedSum::new();
            for (n, weight) in (-n_max..=n_max).zip(&weights) {
                // phase / 2π = k (n + ς/2h) / 2^(M+1)
                let turns = ((offset + n as f64) * k).scale_pow2(-(depth + 1));
                let (s, co) = (turns.frac_nearest() * two_pi).sin_cos();
                sin_sum.add(weight * s);
                cos_sum.add(weight * co);
            }
            let cm = (DoubleDouble::PI * k / h).scale_pow2(-(depth + 1));
            c.push(cm.to_f64());
            c_sq.push(cm.square().to_f64());
            let a_scale = (DoubleDouble::SQRT_PI * k / h).scale_pow2(-2 * depth);
            a.push(sin_sum.value() * a_scale.to_f64());
            let b_scale = DoubleDouble::FRAC_1_SQRT_PI.scale_pow2(1 - depth);
            b.push(cos_sum.value() * b_scale.to_f64());
        }
        Self {
            params,
            c,
            c_sq,
            a,
            b,
        }
    }

    /// Shared, lazily built tables for `params`.
    pub fn shared(params: ExpansionParams) -> Arc<Self> {
        type Key = (u64, u32, u32, u64);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<CoefficientSet>>>> = OnceLock::new();
        let key = (
            params.h().to_bits(),
            params.n(),
            params.m(),
            params.sigma_shift().to_bits(),
        );
        let mut cache = CACHE
            .get_or_init(Default::default)
            .lock()
            .unwrap_or_else(|e| e.into_inner());
        cache
            .entry(key)
            .or_insert_with(|| Arc::new(Self::build(params)))
            .clone()
    }

    pub fn params(&self) -> &ExpansionParams {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// `C_m`, strictly increasing and positive.
    pub fn c(&self) -> &[f64] {
        &self.c
    }

    /// `A_m` (real).
    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// `b_m` where `B_m = -i b_m`.
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// ψ(ζ) = Σ (A_m + ζ B_m) / (C_m² − ζ²).
    ///
    /// Fails only when `ζ = ±C_m`, which needs a real argument.
    ///
    /// Evaluated at `|Re ζ|` and conjugated back for `Re ζ < 0`, so
    /// `ψ(-ζ̄) = conj ψ(ζ)` holds exactly.
    pub fn psi(&self, zeta: Complex64) -> Result<Complex64> {
        let (x, y) = (zeta.re.abs(), zeta.im);
        let y2 = y * y;
        let two_xy = 2.0 * x * y;
        let mut re = 0.0;
        let mut im = 0.0;
        for m in 0..self.c.len() {
            let cm = self.c[m];
            // A - i b ζ = (A + b y) - i b x
            let num_re = self.b[m] * y + self.a[m];
            let num_im = -self.b[m] * x;
            // C² - ζ² = (C - x)(C + x) + y² - 2ixy
            let den_re = if (cm - x).abs() < 0.5 * cm {
                (cm - x) * (cm + x) + y2
            } else {
                self.c_sq[m] - (x * x - y2)
            };
            let den_im = -two_xy;
            let den = den_re * den_re + den_im * den_im;
            if den == 0.0 {
                return Err(Error::Pole);
            }
            let inv = 1.0 / den;
            re += (num_re * den_re + num_im * den_im) * inv;
            im += (num_im * den_re - num_re * den_im) * inv;
        }
        let im = if zeta.re.is_sign_negative() { -im } else { im };
        Ok(Complex64::new(re, im))
    }
}

/// What to do with arguments below the real axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LowerHalfPolicy {
    #[default]
    Reject,
    /// `w(z) = 2 e^{-z²} - w(-z)`.
    ContinueByReflection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub lower_half_policy: LowerHalfPolicy,
    /// `Im z` below which results are flagged as outside the validated band.
    pub accuracy_note_threshold: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            lower_half_policy: LowerHalfPolicy::Reject,
            accuracy_note_threshold: 1e-4,
        }
    }
}

impl EvalOptions {
    pub fn reflecting() -> Self {
        Self {
            lower_half_policy: LowerHalfPolicy::ContinueByReflection,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccuracyNote {
    /// Inside the band where the approximation was validated.
    Validated,
    /// `0 <= Im z` below the note threshold; accuracy degrades towards the
    /// real axis.
    NearRealAxis,
    /// Computed through the lower-half-plane continuation.
    Reflected,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub note: AccuracyNote,
}

/// Faddeeva function and relatives evaluated from one coefficient set.
#[derive(Debug, Clone)]
pub struct IceApproximation {
    coeffs: Arc<CoefficientSet>,
    opts: EvalOptions,
}

impl Default for IceApproximation {
    fn default() -> Self {
        Self::new(ExpansionParams::default())
    }
}

impl IceApproximation {
    pub fn new(params: ExpansionParams) -> Self {
        Self::with_coefficients(CoefficientSet::shared(params), EvalOptions::default())
    }

    pub fn with_coefficients(coeffs: Arc<CoefficientSet>, opts: EvalOptions) -> Self {
        Self { coeffs, opts }
    }

    pub fn with_options(mut self, opts: EvalOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn coefficients(&self) -> &CoefficientSet {
        &self.coeffs
    }

    pub fn options(&self) -> &EvalOptions {
        &self.opts
    }

    /// `ψ(z + iς/2)` for `Im z >= 0`, no policy handling.
    #[inline]
    fn upper(&self, z: Complex64) -> Result<Complex64> {
        let shift = 0.5 * self.coeffs.params.sigma_shift();
        self.coeffs.psi(Complex64::new(z.re, z.im + shift))
    }

    /// Faddeeva function `w(z)`.
    pub fn w(&self, z: Complex64) -> Result<Complex64> {
        self.evaluate(z).map(|e| e.value)
    }

    /// [`Self::w`] together with an accuracy note.
    pub fn evaluate(&self, z: Complex64) -> Result<Evaluation> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if z.im >= 0.0 {
            let note = if z.im < self.opts.accuracy_note_threshold {
                AccuracyNote::NearRealAxis
            } else {
                AccuracyNote::Validated
            };
            return Ok(Evaluation {
                value: self.upper(z)?,
                note,
            });
        }
        match self.opts.lower_half_policy {
            LowerHalfPolicy::Reject => Err(Error::Domain("Im[z] > 0 required")),
            LowerHalfPolicy::ContinueByReflection => {
                let e = exp_neg_square(z, "reflection needs Im(z)^2 - Re(z)^2 < 709")?;
                Ok(Evaluation {
                    value: 2.0 * e - self.upper(-z)?,
                    note: AccuracyNote::Reflected,
                })
            }
        }
    }

    /// Evaluate a batch; fails on the first point that fails.
    pub fn w_into(&self, zs: &[Complex64], out: &mut [Complex64]) -> Result<()> {
        assert_eq!(zs.len(), out.len(), "output length must match input");
        for (z, o) in zs.iter().zip(out.iter_mut()) {
            *o = self.w(*z)?;
        }
        Ok(())
    }

    /// Voigt function `K(x, y) = Re w(x + iy)`.
    pub fn voigt_k(&self, x: f64, y: f64) -> Result<f64> {
        self.w(Complex64::new(x, y)).map(|w| w.re)
    }

    /// `L(x, y) = Im w(x + iy)`.
    pub fn voigt_l(&self, x: f64, y: f64) -> Result<f64> {
        self.w(Complex64::new(x, y)).map(|w| w.im)
    }

    /// Plasma dispersion function `Z(z) = i√π w(z)`.
    pub fn plasma_z(&self, z: Complex64) -> Result<Complex64> {
        let w = self.w(z)?;
        Ok(Complex64::new(-SQRT_PI * w.im, SQRT_PI * w.re))
    }

    /// Error function of complex argument, `1 - e^{-z²} w(iz)`.
    pub fn erf(&self, z: Complex64) -> Result<Complex64> {
        let iz = Complex64::new(-z.im, z.re);
        let e = exp_neg_square(z, "erf needs Im(z)^2 - Re(z)^2 < 709")?;
        Ok(1.0 - e * self.w(iz)?)
    }

    /// Normal distribution integral `Φ(z) = ½[1 - e^{-z²/2} w(iz/√2)]`,
    /// i.e. `∫_0^z e^{-t²/2} dt / √(2π)`.
    pub fn normal_phi(&self, z: Complex64) -> Result<Complex64> {
        let s = z * FRAC_1_SQRT_2;
        let is = Complex64::new(-s.im, s.re);
        let e = exp_neg_square(s, "Phi needs (Im z)^2 - (Re z)^2 < 1419")?;
        Ok(0.5 * (1.0 - e * self.w(is)?))
    }
}

/// `exp(-z²)`, refusing arguments whose modulus would overflow.
fn exp_neg_square(z: Complex64, context: &'static str) -> Result<Complex64> {
    let arg = Complex64::new((z.im - z.re) * (z.im + z.re), -2.0 * z.re * z.im);
    if arg.re > EXP_OVERFLOW_ARG {
        return Err(Error::Overflow(context));
    }
    Ok(arg.exp())
}

/// `w(z)` with the default parameter set.
pub fn faddeeva(z: Complex64) -> Result<Complex64> {
    static DEFAULT: OnceLock<IceApproximation> = OnceLock::new();
    DEFAULT.get_or_init(IceApproximation::default).w(z)
}

/// `1/√π`, used by several callers.
pub(crate) const FRAC_1_SQRT_PI: f64 = 1.0 / SQRT_PI;

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ice() -> IceApproximation {
        IceApproximation::default()
    }

    #[test]
    fn default_table_shape() {
        let set = CoefficientSet::build(ExpansionParams::default());
        assert_eq!(set.len(), 16);
        assert_eq!(set.c()[0], PI / 16.0);
        assert!(set.c().windows(2).all(|w| w[0] < w[1] && w[0] > 0.0));
        // Σ b_m = 1/√π is what makes w ~ i/(√π z) at infinity.
        let sb: f64 = set.b().iter().sum();
        assert!((sb * SQRT_PI - 1.0).abs() < 1e-13);
    }

    #[test]
    fn single_node_collapses() {
        let p = ExpansionParams::new(0.3, 0, 3, 2.0).unwrap();
        let set = CoefficientSet::build(p);
        let (h, s) = (0.3, 2.0);
        let w0 = (s * s / 4.0f64).exp();
        for m in 1..=4usize {
            let k = (2 * m - 1) as f64;
            let phase = PI * k * (s / 2.0) / (8.0 * h);
            let a = SQRT_PI * k / (64.0 * h) * w0 * phase.sin();
            let b = w0 * phase.cos() / (4.0 * SQRT_PI);
            assert!((set.a()[m - 1] - a).abs() <= 4.0 * f64::EPSILON * a.abs().max(1.0));
            assert!((set.b()[m - 1] - b).abs() <= 4.0 * f64::EPSILON * b.abs().max(1.0));
        }
    }

    #[test]
    fn shared_tables_are_reused() {
        let p = ExpansionParams::default();
        let a = CoefficientSet::shared(p);
        let b = CoefficientSet::shared(p);
        assert!(Arc::ptr_eq(&a, &b));
    }

    #[test]
    fn psi_pole_is_reported() {
        let set = CoefficientSet::build(ExpansionParams::default());
        let c1 = set.c()[0];
        assert_eq!(set.psi(Complex64::new(c1, 0.0)), Err(Error::Pole));
        assert_eq!(set.psi(Complex64::new(-c1, 0.0)), Err(Error::Pole));
    }

    #[test]
    fn origin_is_one() {
        let w = ice().w(Complex64::new(0.0, 0.0)).unwrap();
        assert!((w.re - 1.0).abs() < 1e-9);
        assert_eq!(w.im, 0.0);
    }

    #[test]
    fn lower_half_plane_policy() {
        let z = Complex64::new(1.0, -1.0);
        assert_eq!(ice().w(z), Err(Error::Domain("Im[z] > 0 required")));
        let refl = ice().with_options(EvalOptions::reflecting());
        let e = refl.evaluate(z).unwrap();
        assert_eq!(e.note, AccuracyNote::Reflected);
        // w(1 - i) = 2 e^{-(1-i)^2} - w(-1 + i)
        let expected = Complex64::new(-1.0, 1.0);
        let wm = ice().w(expected).unwrap();
        let direct = 2.0 * (-(z * z)).exp() - wm;
        assert_eq!(e.value, direct);
        assert!(refl.w(Complex64::new(0.0, -30.0)).is_err());
    }

    #[test]
    fn accuracy_notes() {
        let a = ice();
        assert_eq!(
            a.evaluate(Complex64::new(1.0, 1.0)).unwrap().note,
            AccuracyNote::Validated
        );
        assert_eq!(
            a.evaluate(Complex64::new(1.0, 1e-6)).unwrap().note,
            AccuracyNote::NearRealAxis
        );
        assert_eq!(a.w(Complex64::new(f64::NAN, 1.0)), Err(Error::NonFinite));
    }

    #[test]
    fn voigt_symmetries() {
        let a = ice();
        for &(x, y) in &[(0.3, 0.2), (2.0, 1.0), (7.5, 0.01), (12.0, 3.0)] {
            let (k, km) = (a.voigt_k(x, y).unwrap(), a.voigt_k(-x, y).unwrap());
            let (l, lm) = (a.voigt_l(x, y).unwrap(), a.voigt_l(-x, y).unwrap());
            assert!((k - km).abs() <= 4.0 * f64::EPSILON * k.abs());
            assert!((l + lm).abs() <= 4.0 * f64::EPSILON * l.abs());
        }
        for y in [1e-3, 0.5, 4.0, 14.0] {
            assert!(a.voigt_l(0.0, y).unwrap().abs() < 1e-14);
        }
    }

    #[test]
    fn plasma_z_is_scaled_w() {
        let a = ice();
        let z0 = a.plasma_z(Complex64::new(0.0, 0.0)).unwrap();
        assert!(z0.re.abs() < 1e-15 && (z0.im - SQRT_PI).abs() < 1e-8);
        for z in [Complex64::new(1.0, 0.5), Complex64::new(-4.0, 2.0)] {
            let r = a.plasma_z(z).unwrap() / a.w(z).unwrap();
            assert!((r - Complex64::new(0.0, SQRT_PI)).norm() <= 4.0 * f64::EPSILON);
        }
    }

    #[test]
    fn erf_and_phi_vanish_at_origin() {
        let a = ice();
        assert!(a.erf(Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-9);
        assert!(a.normal_phi(Complex64::new(0.0, 0.0)).unwrap().norm() < 1e-9);
    }

    #[test]
    fn erf_of_negative_argument_needs_reflection() {
        let a = ice();
        assert!(a.erf(Complex64::new(-1.0, 0.0)).is_err());
        let r = a.with_options(EvalOptions::reflecting());
        let v = r.erf(Complex64::new(-1.0, 0.0)).unwrap();
        assert!((v.re + 0.8427007929497149).abs() < 1e-12);
    }

    #[test]
    fn erf_overflow_is_flagged() {
        let a = ice();
        assert!(matches!(
            a.erf(Complex64::new(0.0, 40.0)),
            Err(Error::Overflow(_))
        ));
    }
}
