//! Batch throughput of the two rational engines on random inputs.

use std::fmt;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compensated::CompensatedSum;
use crate::errmap::Evaluator;
use crate::error::Result;

pub const DEFAULT_SEED: u64 = 0x1ce_fad;

/// `size` points with `x` uniform on `[-15, 15)` and `log10 y` uniform on
/// `[-4, log10 15)`.
pub fn sample_points(size: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = 15f64.log10();
    (0..size)
        .map(|_| {
            let x = rng.random_range(-15.0..15.0);
            let y = 10f64.powf(rng.random_range(-4.0..top));
            Complex64::new(x, y)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EngineTiming {
    pub name: String,
    pub elapsed: Duration,
    /// Sum of all outputs; depends only on the inputs.
    pub checksum: Complex64,
}

impl EngineTiming {
    pub fn points_per_second(&self, points: usize, repetitions: usize) -> f64 {
        let secs = self.elapsed.as_secs_f64().max(f64::MIN_POSITIVE);
        (points * repetitions) as f64 / secs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub seed: u64,
    pub size: usize,
    pub repetitions: usize,
    pub timings: Vec<EngineTiming>,
}

/// Time `repetitions` sequential passes of each engine over the same points.
pub fn run(
    engines: &[(String, Evaluator)],
    size: usize,
    repetitions: usize,
    seed: u64,
) -> Result<BenchReport> {
    let points = sample_points(size, seed);
    let repetitions = repetitions.max(1);
    let mut out = vec![Complex64::new(0.0, 0.0); points.len()];
    let mut timings = Vec::with_capacity(engines.len());
    for (name, engine) in engines {
        let start = Instant::now();
        for _ in 0..repetitions {
            for (o, &z) in out.iter_mut().zip(&points) {
                *o = engine.w(z)?;
            }
        }
        let elapsed = start.elapsed();
        let re: CompensatedSum = out.iter().map(|w| w.re).collect();
        let im: CompensatedSum = out.iter().map(|w| w.im).collect();
        timings.push(EngineTiming {
            name: name.clone(),
            elapsed,
            checksum: Complex64::new(re.value(), im.value()),
        });
    }
    Ok(BenchReport {
        seed,
        size,
        repetitions,
        timings,
    })
}

impl BenchReport {
    /// Throughput of the first engine divided by that of the second.
    pub fn ratio(&self) -> Option<f64> {
        match self.timings.as_slice() {
            [a, b, ..] => Some(
                a.points_per_second(self.size, self.repetitions)
                    / b.points_per_second(self.size, self.repetitions),
            ),
            _ => None,
        }
    }

    /// The report without timings; identical for identical seeds.
    pub fn numeric_lines(&self) -> String {
        let mut out = format!(
            "seed: {}\nsize: {}\nrepetitions: {}\n",
            self.seed, self.size, self.repetitions
        );
        for t in &self.timings {
            out += &format!(
                "{} checksum: {:e} {:e}\n",
                t.name, t.checksum.re, t.checksum.im
            );
        }
        out
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.numeric_lines())?;
        for t in &self.timings {
            writeln!(
                f,
                "{} time: {:.6} s, {:.4e} points/s",
                t.name,
                t.elapsed.as_secs_f64(),
                t.points_per_second(self.size, self.repetitions)
            )?;
        }
        if let (Some(r), [a, b, ..]) = (self.ratio(), self.timings.as_slice()) {
            writeln!(f, "{}:{} throughput ratio: {:.3}", a.name, b.name, r)?;
        }
        Ok(())
    }
}
