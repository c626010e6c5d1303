//! Rational approximation of the Faddeeva function `w(z) = e^{-z²} erfc(-iz)`
//! by an incomplete cosine expansion of the sinc function, together with
//! Weideman's approximation as a baseline and a high-precision reference
//! oracle for error maps.
//!
//! ```
//! use icefad_core::{faddeeva, Complex64};
//!
//! let w = faddeeva(Complex64::new(2.0, 1.0)).unwrap();
//! assert!((w.re - 0.1402395813662779).abs() < 1e-9);
//! ```

pub mod compensated;
pub mod errmap;
pub mod error;
pub mod faddeeva;
mod integrated;
pub mod oracle;
pub mod params;
pub mod quadrature;
pub mod sampling;
pub mod throughput;
pub mod weideman;

pub use num_complex::Complex64;

pub use errmap::{Engine, ErrorMap, Evaluator, GridSpec, ReferenceGrid};
pub use error::{Error, Result};
pub use faddeeva::{
    faddeeva, AccuracyNote, CoefficientSet, EvalOptions, Evaluation, IceApproximation,
    LowerHalfPolicy,
};
pub use oracle::{w_ref, OracleMethod, OracleValue};
pub use params::{ExpansionParams, GeneralExpansionParams, PoissonExpansionParams};
pub use weideman::WeidemanCoefficients;
