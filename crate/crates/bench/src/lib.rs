//! Inputs shared by the criterion benchmarks.

use icefad_core::throughput::{sample_points, DEFAULT_SEED};
use icefad_core::{Complex64, IceApproximation, WeidemanCoefficients};

/// Batch sizes timed by the `engines` benchmark.
pub const BATCH_SIZES: [usize; 3] = [1_000, 100_000, 1_000_000];

/// Upper-half-plane points from the same generator as `icefad bench`.
pub fn points(size: usize) -> Vec<Complex64> {
    sample_points(size, DEFAULT_SEED)
}

/// The two engines with default parameters and equal term counts.
pub fn engines() -> (IceApproximation, WeidemanCoefficients) {
    (IceApproximation::default(), WeidemanCoefficients::default())
}

/// Weideman over a batch, writing into `out`.
pub fn weideman_batch(c: &WeidemanCoefficients, zs: &[Complex64], out: &mut [Complex64]) {
    for (o, &z) in out.iter_mut().zip(zs) {
        *o = c.w(z).expect("upper half-plane input");
    }
}
