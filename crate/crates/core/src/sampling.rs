//! Sinc function, its incomplete cosine expansions and the Gaussian sampling
//! construction built on them.
//!
//! All sums are accumulated in index order with compensation, and every
//! cosine phase is reduced exactly before the call to `cos`. That is what
//! keeps the product-to-sum identity and the periodicity checks at the
//! ulp level.

use crate::compensated::{two_prod, CompensatedSum, DoubleDouble};
use crate::params::{ExpansionParams, GeneralExpansionParams, PoissonExpansionParams};

const TAU_DD: DoubleDouble = DoubleDouble {
    hi: 2.0 * DoubleDouble::PI.hi,
    lo: 2.0 * DoubleDouble::PI.lo,
};

/// Below this magnitude `sinc` switches to its Taylor polynomial.
pub const SINC_TAYLOR_THRESHOLD: f64 = 1e-4;

/// `sin(t)/t`, with `sinc(0) = 1`.
pub fn sinc(t: f64) -> f64 {
    if t.abs() < SINC_TAYLOR_THRESHOLD {
        let t2 = t * t;
        1.0 - t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0))
    } else {
        t.sin() / t
    }
}

/// Truncated Vieta product `∏_{m=1}^{M} cos(t / 2^m)`, correctly rounded
/// in practice: factors and product are carried in double-double.
pub fn vieta_product(t: f64, depth: u32) -> f64 {
    assert!(depth >= 1, "depth must be at least 1");
    (1..=depth)
        .fold(DoubleDouble::ONE, |acc, m| {
            let arg = DoubleDouble::from_f64(t).scale_pow2(-(m as i32));
            acc * arg.sin_cos_dd().1
        })
        .to_f64()
}

/// Right-hand side of the product-to-sum identity,
/// `2^(1-M) Σ_{m=1}^{2^(M-1)} cos((2m-1) t / 2^M)`.
///
/// The terms cancel heavily near zeros of the product, so they are summed
/// in double-double. The odd harmonics come from rotating by `2θ`,
/// `θ = t / 2^M`; the recurrence drifts by about one double-double rounding
/// per step, far below an f64 ulp.
pub fn cosine_sum(t: f64, depth: u32) -> f64 {
    assert!(depth >= 1, "depth must be at least 1");
    let count = 1u64 << (depth - 1);
    let theta = DoubleDouble::from_f64(t).scale_pow2(-(depth as i32));
    let (mut s, mut c) = theta.sin_cos_dd();
    let (s2, c2) = theta.scale_pow2(1).sin_cos_dd();
    let mut acc = c;
    for _ in 1..count {
        (s, c) = (s * c2 + c * s2, c * c2 - s * s2);
        acc = acc + c;
    }
    acc.scale_pow2(1 - depth as i32).to_f64()
}

/// cos(2π k u) with the phase reduced exactly modulo one period.
#[inline]
fn cos_tau_multiple(k: f64, u: f64) -> f64 {
    let (p, e) = two_prod(k, u);
    let frac = DoubleDouble { hi: p, lo: e }.frac_nearest();
    (frac * TAU_DD).sin_cos().1
}

/// `(1/L) Σ_{k=1}^{L} cos(2π (2k-1) u)`.
///
/// Every cosine expansion of the sinc function here reduces to this sum
/// with `u = t / T` for the relevant period `T`.
fn mean_odd_harmonics(u: f64, count: u64) -> f64 {
    let u = u - u.round();
    let mut acc = CompensatedSum::new();
    for k in 1..=count {
        acc.add(cos_tau_multiple((2 * k - 1) as f64, u));
    }
    acc.value() / count as f64
}

/// Incomplete cosine expansion of `sinc(π t / h)`:
/// `2^(1-M) Σ_{m=1}^{2^(M-1)} cos(π (2m-1) t / (2^M h))`.
///
/// Periodic in `t` with period `T = 2^(M+1) h`; close to `sinc(π t / h)`
/// on `[-T/4, T/4]`.
pub fn incomplete_cosine_sinc(t: f64, params: &ExpansionParams) -> f64 {
    mean_odd_harmonics(t / params.period(), params.term_count() as u64)
}

/// Cosine expansion with an arbitrary term count `L`:
/// `(1/L) Σ_{l=1}^{L} cos(π (l - 1/2) t / (L h))`, period `4 L h`.
pub fn general_cosine_sinc(t: f64, params: &GeneralExpansionParams) -> f64 {
    mean_odd_harmonics(t / params.period(), params.terms() as u64)
}

/// Poisson-summation expansion
/// `(π / T_P) Σ_{|p| <= floor(T_P / 2π)} cos(2π p t / T_P)`.
pub fn poisson_cosine_sinc(t: f64, params: &PoissonExpansionParams) -> f64 {
    let period = params.period();
    let u = t / period;
    let u = u - u.round();
    let mut acc = CompensatedSum::new();
    acc.add(1.0);
    for p in 1..=params.max_index() {
        acc.add(2.0 * cos_tau_multiple(p as f64, u));
    }
    std::f64::consts::PI / period * acc.value()
}

/// Symmetric partial sum `Σ_{p=-P}^{P} sinc(t + p T_P)`.
pub fn periodized_sinc_sum(t: f64, period: f64, half_count: u64) -> f64 {
    let mut acc = CompensatedSum::new();
    acc.add(sinc(t));
    for p in 1..=half_count {
        let shift = p as f64 * period;
        acc.add(sinc(t + shift));
        acc.add(sinc(t - shift));
    }
    acc.value()
}

fn gaussian_weight(n: i64, h: f64) -> f64 {
    let nh = DoubleDouble::from_prod(n as f64, h);
    (-nh.square()).exp()
}

/// `Σ_n e^{-n²h²} · mean_odd_harmonics((t - nh)/T)` where `u0 = t/T`.
fn sampled_sum(u0: f64, params: &ExpansionParams) -> f64 {
    let count = params.term_count() as u64;
    let n_max = params.n() as i64;
    // t_n / T = n h / (2^(M+1) h) = n 2^-(M+1), exact.
    let step = 2f64.powi(-(params.m() as i32 + 1));
    let mut acc = CompensatedSum::new();
    for n in -n_max..=n_max {
        let u = u0 - n as f64 * step;
        acc.add(gaussian_weight(n, params.h()) * mean_odd_harmonics(u, count));
    }
    acc.value()
}

/// Cosine-expansion sampling of `e^{-t²}` on the nodes `t_n = n h`.
///
/// Periodic with period `T`; good on `[-T/4, T/4]`, with negative images at
/// odd multiples of `T/2` and positive ones at multiples of `T`.
pub fn sampled_gaussian(t: f64, params: &ExpansionParams) -> f64 {
    sampled_sum(t / params.period(), params)
}

/// Damped, shifted sampling of `e^{-ςt} e^{-(t - ς/2)²}`.
///
/// The factor `e^{-ςt}` suppresses the periodic images for ς ≳ 2; see
/// [`ExpansionParams::shift_warning`].
pub fn damped_shifted_gaussian(t: f64, params: &ExpansionParams) -> f64 {
    let sigma = params.sigma_shift();
    let u0 = (t - 0.5 * sigma) / params.period();
    (-sigma * t).exp() * sampled_sum(u0, params)
}
