//! Parameter sets for the cosine expansions.

use crate::error::{Error, Result};

/// Parameters `(h, N, M, ς)` of the incomplete cosine expansion.
///
/// `h` is the sampling step, `2N + 1` the number of sampling points,
/// `2^(M-1)` the number of cosine terms and `sigma_shift` the damping/shift
/// constant ς.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionParams {
    h: f64,
    n: u32,
    m: u32,
    sigma_shift: f64,
}

/// Largest supported expansion depth; 2^(M-1) terms must stay addressable
/// and the sums cheap.
pub const MAX_DEPTH: u32 = 24;

/// Shift constant below which the periodic images are no longer damped.
pub const MIN_EFFECTIVE_SHIFT: f64 = 2.0;

impl ExpansionParams {
    pub const DEFAULT_H: f64 = 0.25;
    pub const DEFAULT_N: u32 = 23;
    pub const DEFAULT_M: u32 = 5;
    pub const DEFAULT_SIGMA: f64 = 2.75;

    pub fn new(h: f64, n: u32, m: u32, sigma_shift: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Parameter(format!("h must be positive, got {h}")));
        }
        if m == 0 || m > MAX_DEPTH {
            return Err(Error::Parameter(format!(
                "M must be in 1..={MAX_DEPTH}, got {m}"
            )));
        }
        if !(sigma_shift.is_finite() && sigma_shift >= 0.0) {
            return Err(Error::Parameter(format!(
                "sigma must be non-negative, got {sigma_shift}"
            )));
        }
        Ok(Self {
            h,
            n,
            m,
            sigma_shift,
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn sigma_shift(&self) -> f64 {
        self.sigma_shift
    }

    /// Number of cosine terms, `2^(M-1)`.
    pub fn term_count(&self) -> usize {
        1usize << (self.m - 1)
    }

    /// Period `T = 2^(M+1) h` of the expansion.
    pub fn period(&self) -> f64 {
        self.h * 2f64.powi(self.m as i32 + 1)
    }

    /// A warning when ς is too small to damp the periodic images.
    pub fn shift_warning(&self) -> Option<String> {
        (self.sigma_shift < MIN_EFFECTIVE_SHIFT).then(|| {
            format!(
                "sigma = {} is below {MIN_EFFECTIVE_SHIFT}; periodic images are not fully damped",
                self.sigma_shift
            )
        })
    }

    /// Same parameters with a different shift constant.
    pub fn with_sigma(self, sigma_shift: f64) -> Result<Self> {
        Self::new(self.h, self.n, self.m, sigma_shift)
    }
}

impl Default for ExpansionParams {
    fn default() -> Self {
        Self {
            h: Self::DEFAULT_H,
            n: Self::DEFAULT_N,
            m: Self::DEFAULT_M,
            sigma_shift: Self::DEFAULT_SIGMA,
        }
    }
}

/// Generalised expansion with an arbitrary number `L` of cosine terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralExpansionParams {
    terms: u32,
    h: f64,
}

impl GeneralExpansionParams {
    pub fn new(terms: u32, h: f64) -> Result<Self> {
        if terms == 0 {
            return Err(Error::Parameter("L must be at least 1".into()));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Parameter(format!("h must be positive, got {h}")));
        }
        Ok(Self { terms, h })
    }

    pub fn terms(&self) -> u32 {
        self.terms
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Period `T_L = 4 L h`.
    pub fn period(&self) -> f64 {
        4.0 * self.terms as f64 * self.h
    }
}

impl From<ExpansionParams> for GeneralExpansionParams {
    fn from(p: ExpansionParams) -> Self {
        Self {
            terms: p.term_count() as u32,
            h: p.h,
        }
    }
}

/// Period `T_P` of the Poisson-summation expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonExpansionParams {
    period: f64,
}

impl PoissonExpansionParams {
    pub fn new(period: f64) -> Result<Self> {
        if !(period.is_finite() && period > 0.0) {
            return Err(Error::Parameter(format!(
                "T_P must be positive, got {period}"
            )));
        }
        Ok(Self { period })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Largest harmonic index, `floor(T_P / 2π)`. The bound is inclusive.
    pub fn max_index(&self) -> i64 {
        (self.period / std::f64::consts::TAU).floor() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_period_is_sixteen() {
        let p = ExpansionParams::default();
        assert_eq!(p.period(), 16.0);
        assert_eq!(p.term_count(), 16);
        assert!(p.shift_warning().is_none());
    }

    #[test]
    fn rejects_invalid() {
        assert!(ExpansionParams::new(0.0, 23, 5, 2.75).is_err());
        assert!(ExpansionParams::new(-0.1, 23, 5, 2.75).is_err());
        assert!(ExpansionParams::new(0.25, 23, 0, 2.75).is_err());
        assert!(ExpansionParams::new(0.25, 23, 5, -1.0).is_err());
        assert!(ExpansionParams::new(f64::NAN, 23, 5, 1.0).is_err());
        assert!(GeneralExpansionParams::new(0, 1.0).is_err());
        assert!(PoissonExpansionParams::new(0.0).is_err());
    }

    #[test]
    fn small_shift_warns() {
        let p = ExpansionParams::new(0.25, 23, 5, 0.1).unwrap();
        assert!(p.shift_warning().is_some());
    }

    #[test]
    fn general_period_matches_main_expansion() {
        let p = ExpansionParams::new(0.25, 23, 5, 2.75).unwrap();
        let g = GeneralExpansionParams::from(p);
        assert_eq!(g.terms(), 16);
        assert_eq!(g.period(), p.period());
    }

    #[test]
    fn poisson_index_range_is_inclusive() {
        assert_eq!(PoissonExpansionParams::new(1.0).unwrap().max_index(), 0);
        assert_eq!(PoissonExpansionParams::new(100.0).unwrap().max_index(), 15);
        let tau = std::f64::consts::TAU;
        assert_eq!(
            PoissonExpansionParams::new(2.0 * tau).unwrap().max_index(),
            2
        );
    }
}
