//! Helpers shared by the integration tests.
#![allow(dead_code)]

use icefad_core::compensated::{ComplexDd, DoubleDouble};
use icefad_core::{Complex64, ExpansionParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Points with `x` uniform on `(0, 15)` and `log10 y` uniform on `(-4, log10 15)`.
pub fn headline_points(n: usize, seed: u64) -> Vec<Complex64> {
    let mut r = rng(seed);
    let top = 15f64.log10();
    (0..n)
        .map(|_| {
            Complex64::new(
                r.random_range(0.0..15.0),
                10f64.powf(r.random_range(-4.0..top)),
            )
        })
        .collect()
}

/// Distance in units of the last place of `b`.
pub fn ulps(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let ulp = f64::from_bits(b.abs().to_bits() + 1) - b.abs();
    (a - b).abs() / ulp
}

/// The unfolded double sum over `(m, n)`, every term and the accumulation
/// carried in double-double.
pub fn double_sum(z: Complex64, p: &ExpansionParams) -> Complex64 {
    let h = p.h();
    let depth = p.m() as i32;
    let half_sigma = DoubleDouble::from_f64(p.sigma_shift()) * 0.5;
    let zeta = ComplexDd::new(
        DoubleDouble::from_f64(z.re),
        DoubleDouble::from_f64(z.im) + half_sigma,
    );
    let zeta_sq = zeta * zeta;
    let n_max = p.n() as i64;
    let two_pi = DoubleDouble::PI * 2.0;
    let mut total = ComplexDd::from_f64(0.0, 0.0);
    for m in 1..=p.term_count() {
        let k = (2 * m - 1) as f64;
        let c = (DoubleDouble::PI * k / h).scale_pow2(-(depth + 1));
        let den = ComplexDd::new(c.square(), DoubleDouble::ZERO) - zeta_sq;
        let a_scale = (DoubleDouble::SQRT_PI * k / h).scale_pow2(-2 * depth);
        let b_scale = DoubleDouble::FRAC_1_SQRT_PI.scale_pow2(1 - depth);
        for n in -n_max..=n_max {
            let nh = DoubleDouble::from_prod(n as f64, h);
            let weight = DoubleDouble::from_f64((half_sigma.square() - nh.square()).exp());
            let turns = ((half_sigma / h + n as f64) * k).scale_pow2(-(depth + 1));
            let (s, co) = (turns.frac_nearest() * two_pi).sin_cos();
            let alpha = weight * a_scale * s;
            // β = -i b, so α + ζβ = (α + b Im ζ) - i b Re ζ
            let b = weight * b_scale * co;
            let num = ComplexDd::new(alpha + b * zeta.im, -(b * zeta.re));
            total = total + num / den;
        }
    }
    total.to_c64()
}

/// `(2/√π) ∫_0^∞ e^{-t²} e^{2(ixt - yt)} dt` by adaptive quadrature on
/// `[0, 7]`; the tail beyond is below `e^{-49}`.
pub fn integral_form(x: f64, y: f64) -> Complex64 {
    use icefad_core::quadrature::integrate;
    let k = 2.0 / std::f64::consts::PI.sqrt();
    let re = integrate(
        |t| (-t * t - 2.0 * y * t).exp() * (2.0 * x * t).cos(),
        0.0,
        7.0,
        1e-15,
        1e-14,
        20_000,
    );
    let im = integrate(
        |t| (-t * t - 2.0 * y * t).exp() * (2.0 * x * t).sin(),
        0.0,
        7.0,
        1e-15,
        1e-14,
        20_000,
    );
    assert!(
        re.converged && im.converged,
        "quadrature did not converge at ({x}, {y})"
    );
    Complex64::new(k * re.value, k * im.value)
}

/// The baseline formula with each power of the Möbius variable formed by
/// `powi` rather than by Horner's rule.
pub fn weideman_by_powers(c: &icefad_core::WeidemanCoefficients, z: Complex64) -> Complex64 {
    let iz = Complex64::new(-z.im, z.re);
    let lm = c.l() - iz;
    let ratio = (c.l() + iz) / lm;
    let mut p = Complex64::new(0.0, 0.0);
    for (n, g) in c.gamma().iter().enumerate() {
        p += g * ratio.powi(n as i32);
    }
    1.0 / (std::f64::consts::PI.sqrt() * lm) + 2.0 * p / (lm * lm)
}

/// Distance between `a` and `b` in units of the last place of `|b|`, the
/// larger of the two components.
pub fn ulps_of_norm(a: Complex64, b: Complex64) -> f64 {
    let n = b.norm();
    ulps(a.re - b.re + n, n).max(ulps(a.im - b.im + n, n))
}
