mod common;

use std::f64::consts::PI;

use common::integral_form;
use icefad_core::oracle::{
    cfrac_resolves, w_cfrac, w_ref, w_series, OracleMethod, AGREEMENT_LIMIT, CFRAC_ONLY_ABOVE,
    DEFAULT_START_DEPTH, SERIES_ONLY_BELOW,
};
use icefad_core::{Complex64, Error, IceApproximation};

/// Independent 20-digit values.
const KNOWN: [(f64, f64, f64, f64); 8] = [
    (2.0, 1.0, 0.1402395813662779437, 0.22221344017989910261),
    (5.0, 5.0, 0.056965439888176978967, 0.055838742775391028233),
    (1.0, 1.0, 0.30474420525691259246, 0.20821893820283162729),
    (7.0, 0.5, 0.0059104241310586737387, 0.081011438857947808494),
    (14.0, 14.0, 0.020175230072529913305, 0.020123829214609384007),
    (10.0, 10.0, 0.02827946745423245666, 0.028138433276336895631),
    (3.0, 0.25, 0.019392215490127193674, 0.19889807902157815208),
    (
        0.001,
        0.0001,
        0.99988617230868393179,
        0.0011281784376085887403,
    ),
];

#[test]
fn matches_high_precision_values() {
    for (x, y, re, im) in KNOWN {
        let v = w_ref(Complex64::new(x, y)).unwrap().value;
        assert!(
            ((v.re - re) / re).abs() <= 2.0 * f64::EPSILON,
            "({x}, {y}) re {}",
            v.re
        );
        assert!(
            ((v.im - im) / im).abs() <= 2.0 * f64::EPSILON,
            "({x}, {y}) im {}",
            v.im
        );
    }
}

#[test]
fn far_up_the_imaginary_axis() {
    let v = w_ref(Complex64::new(0.0, 1e3)).unwrap();
    assert_eq!(v.method_used, OracleMethod::ContinuedFraction);
    assert!((v.value.re - 0.000564189301453388).abs() < 1e-18);
}

#[test]
fn overlap_annulus_methods_agree() {
    let mut both = 0;
    let mut worst = 0.0f64;
    for i in 0..=40 {
        let r = SERIES_ONLY_BELOW + (CFRAC_ONLY_ABOVE - SERIES_ONLY_BELOW) * i as f64 / 40.0;
        for j in 0..=90 {
            let theta = PI * j as f64 / 90.0;
            let z = Complex64::new(r * theta.cos(), (r * theta.sin()).max(0.0));
            let v = w_ref(z).unwrap();
            if cfrac_resolves(z) {
                let s = w_series(z).unwrap();
                let c = w_cfrac(z, DEFAULT_START_DEPTH).unwrap();
                worst = worst.max((s - c).norm() / s.norm());
                both += 1;
                assert_eq!(v.method_used, OracleMethod::Both);
            } else {
                assert_eq!(v.method_used, OracleMethod::Series);
            }
        }
    }
    assert!(both > 1500, "{both}");
    assert!(worst <= AGREEMENT_LIMIT, "{worst:e}");
}

#[test]
fn integral_form_spot_checks() {
    for (x, y) in [(1.0, 1.0), (2.0, 0.5), (0.5, 0.1), (3.0, 2.0), (0.1, 4.0)] {
        let q = integral_form(x, y);
        let v = w_ref(Complex64::new(x, y)).unwrap().value;
        assert!((q - v).norm() <= 1e-10 * v.norm(), "({x}, {y}): {q} vs {v}");
    }
}

#[test]
fn real_axis_is_gaussian_plus_dawson() {
    for x in [0.5, 2.0, 7.5, 11.0, 20.0] {
        let v = w_ref(Complex64::new(x, 0.0)).unwrap().value;
        let g = (-x * x).exp();
        assert!(((v.re - g) / g).abs() < 1e-14, "x = {x}");
        // Dawson asymptotics: Im w(x) ~ 1/(√π x) (1 + 1/(2x²) + 3/(4x⁴))
        if x >= 11.0 {
            let lead = (1.0 + 0.5 / (x * x) + 0.75 / x.powi(4)) / (PI.sqrt() * x);
            assert!(((v.im - lead) / lead).abs() < 1e-5, "x = {x}");
        }
    }
}

#[test]
fn rejects_bad_input() {
    assert!(matches!(
        w_ref(Complex64::new(1.0, -1.0)),
        Err(Error::Domain(_))
    ));
    assert_eq!(w_ref(Complex64::new(f64::NAN, 1.0)), Err(Error::NonFinite));
    assert!(matches!(
        w_ref(Complex64::new(20.0, 1e-170)),
        Err(Error::Range { .. })
    ));
}

/// erf(x) from its Taylor series in double-double.
fn erf_series(x: f64) -> f64 {
    use icefad_core::compensated::DoubleDouble;
    let x2 = DoubleDouble::from_prod(x, x);
    let mut term = DoubleDouble::from_f64(x);
    let mut sum = term;
    for n in 1..200 {
        term = -(term * x2) / n as f64;
        let add = term / (2 * n + 1) as f64;
        sum = sum + add;
        if add.hi.abs() < 1e-34 {
            break;
        }
    }
    (sum * DoubleDouble::FRAC_1_SQRT_PI * 2.0).to_f64()
}

#[test]
fn function_family_against_real_axis_series() {
    let a = IceApproximation::default();
    for x in [0.05, 0.3, 1.0, 1.7, 2.5] {
        let e = a.erf(Complex64::new(x, 0.0)).unwrap();
        assert!((e.re - erf_series(x)).abs() < 2e-9, "erf({x})");
        assert!(e.im.abs() < 1e-15);
        let phi = a.normal_phi(Complex64::new(x, 0.0)).unwrap();
        let expected = 0.5 * erf_series(x / 2f64.sqrt());
        assert!((phi.re - expected).abs() < 1e-9, "Phi({x})");
    }
    assert!((erf_series(1.0) - 0.84270079294971486934).abs() < 2e-16);
    let phi1 = a.normal_phi(Complex64::new(1.0, 0.0)).unwrap().re;
    assert!((phi1 - 0.34134474606854294859).abs() < 1e-9);
    for z in [Complex64::new(0.5, 0.5), Complex64::new(6.0, 0.01)] {
        let ratio = a.plasma_z(z).unwrap() / a.w(z).unwrap();
        assert!((ratio - Complex64::new(0.0, PI.sqrt())).norm() < 1e-15);
    }
}
