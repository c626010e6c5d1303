//! Grids of componentwise relative errors against the reference oracle.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::faddeeva::IceApproximation;
use crate::oracle::w_ref;
use crate::weideman::WeidemanCoefficients;

/// Reference components smaller than this are treated as zero; the relative
/// error there is undefined and the point is excluded.
pub const UNDERFLOW_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Linear => "lin",
            Scale::Log => "log",
        })
    }
}

/// One grid axis. Points sit at the centres of `count` equal cells of
/// `[min, max]` (equal in `log10` for [`Scale::Log`]), so the endpoints
/// themselves are excluded by half a step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    min: f64,
    max: f64,
    count: usize,
    scale: Scale,
}

impl Axis {
    pub fn new(min: f64, max: f64, count: usize, scale: Scale) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::Parameter(format!(
                "axis needs finite min < max, got {min} .. {max}"
            )));
        }
        if scale == Scale::Log && min <= 0.0 {
            return Err(Error::Parameter(format!(
                "log axis needs min > 0, got {min}"
            )));
        }
        if count < 2 {
            return Err(Error::Parameter(format!(
                "axis needs at least 2 points, got {count}"
            )));
        }
        Ok(Self {
            min,
            max,
            count,
            scale,
        })
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    pub fn values(&self) -> Vec<f64> {
        let cells = self.count as f64;
        match self.scale {
            Scale::Linear => {
                let step = (self.max - self.min) / cells;
                (0..self.count)
                    .map(|i| self.min + (i as f64 + 0.5) * step)
                    .collect()
            }
            Scale::Log => {
                let (lo, hi) = (self.min.log10(), self.max.log10());
                let step = (hi - lo) / cells;
                (0..self.count)
                    .map(|i| 10f64.powf(lo + (i as f64 + 0.5) * step))
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x: Axis,
    pub y: Axis,
}

impl GridSpec {
    /// x linear on (0, 15), y logarithmic on (1e-4, 15), 200 × 200.
    pub fn headline() -> Self {
        Self {
            x: Axis::new(0.0, 15.0, 200, Scale::Linear).expect("valid axis"),
            y: Axis::new(1e-4, 15.0, 200, Scale::Log).expect("valid axis"),
        }
    }

    /// The strip just above the real axis: x linear on (1e-4, 15), y
    /// logarithmic on (1e-6, 1e-4).
    pub fn degraded() -> Self {
        Self {
            x: Axis::new(1e-4, 15.0, 200, Scale::Linear).expect("valid axis"),
            y: Axis::new(1e-6, 1e-4, 200, Scale::Log).expect("valid axis"),
        }
    }

    pub fn len(&self) -> usize {
        self.x.count * self.y.count
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn parse_axis(part: &str, name: &str) -> Result<Axis> {
    let bad = || {
        Error::Parameter(format!(
            "bad {name} axis `{part}`, expected {name}:lin|log:min:max:count"
        ))
    };
    let fields: Vec<&str> = part.split(':').collect();
    if fields.len() != 5 || fields[0].trim() != name {
        return Err(bad());
    }
    let scale = match fields[1].trim() {
        "lin" | "linear" => Scale::Linear,
        "log" => Scale::Log,
        _ => return Err(bad()),
    };
    let min: f64 = fields[2].trim().parse().map_err(|_| bad())?;
    let max: f64 = fields[3].trim().parse().map_err(|_| bad())?;
    let count: usize = fields[4].trim().parse().map_err(|_| bad())?;
    Axis::new(min, max, count, scale)
}

impl FromStr for GridSpec {
    type Err = Error;

    /// Parses `x:lin:0:15:200,y:log:1e-4:15:200`.
    fn from_str(s: &str) -> Result<Self> {
        let (xs, ys) = s
            .split_once(',')
            .ok_or_else(|| Error::Parameter(format!("grid `{s}` needs an x and a y axis")))?;
        Ok(Self {
            x: parse_axis(xs.trim(), "x")?,
            y: parse_axis(ys.trim(), "y")?,
        })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x:{}:{}:{}:{},y:{}:{}:{}:{}",
            self.x.scale,
            self.x.min,
            self.x.max,
            self.x.count,
            self.y.scale,
            self.y.min,
            self.y.max,
            self.y.count
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    Ice,
    Weideman,
    Oracle,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Ice => "ice",
            Engine::Weideman => "weideman",
            Engine::Oracle => "oracle",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ice" => Ok(Engine::Ice),
            "weideman" => Ok(Engine::Weideman),
            "oracle" => Ok(Engine::Oracle),
            _ => Err(Error::Parameter(format!(
                "unknown engine `{s}` (ice, weideman, oracle)"
            ))),
        }
    }
}

/// A configured evaluator for one of the engines.
#[derive(Debug, Clone)]
pub enum Evaluator {
    Ice(IceApproximation),
    Weideman(WeidemanCoefficients),
    Oracle,
}

impl Evaluator {
    pub fn engine(&self) -> Engine {
        match self {
            Evaluator::Ice(_) => Engine::Ice,
            Evaluator::Weideman(_) => Engine::Weideman,
            Evaluator::Oracle => Engine::Oracle,
        }
    }

    pub fn w(&self, z: Complex64) -> Result<Complex64> {
        match self {
            Evaluator::Ice(a) => a.w(z),
            Evaluator::Weideman(c) => c.w(z),
            Evaluator::Oracle => w_ref(z).map(|v| v.value),
        }
    }
}

/// Oracle values over a grid, row-major with `y` as the row index.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceGrid {
    grid: GridSpec,
    xs: Vec<f64>,
    ys: Vec<f64>,
    values: Vec<Complex64>,
    worst_agreement: f64,
}

impl ReferenceGrid {
    /// Evaluate the oracle at every node. Any integrity failure aborts the
    /// whole grid.
    pub fn compute(grid: GridSpec, parallel: bool) -> Result<Self> {
        let xs = grid.x.values();
        let ys = grid.y.values();
        let node = |k: usize| {
            let z = Complex64::new(xs[k % xs.len()], ys[k / xs.len()]);
            w_ref(z)
        };
        let raw: Vec<_> = if parallel {
            (0..grid.len())
                .into_par_iter()
                .map(node)
                .collect::<Result<_>>()?
        } else {
            (0..grid.len()).map(node).collect::<Result<_>>()?
        };
        let worst_agreement = raw
            .iter()
            .map(|v: &crate::oracle::OracleValue| v.method_agreement)
            .fold(0.0, f64::max);
        Ok(Self {
            grid,
            xs,
            ys,
            values: raw.into_iter().map(|v| v.value).collect(),
            worst_agreement,
        })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Largest relative discrepancy between the two oracle methods over the
    /// nodes where both ran.
    pub fn worst_agreement(&self) -> f64 {
        self.worst_agreement
    }
}

/// Max, 99th percentile and median of the finite-or-`-inf` entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub max: f64,
    pub p99: f64,
    pub median: f64,
    /// Entries left out because the reference component underflowed.
    pub excluded: usize,
}

impl Summary {
    pub fn of(values: &[f64]) -> Self {
        let mut kept: Vec<f64> = values.iter().copied().filter(|v| !v.is_nan()).collect();
        let excluded = values.len() - kept.len();
        kept.sort_by(f64::total_cmp);
        let rank = |p: f64| -> f64 {
            if kept.is_empty() {
                return f64::NAN;
            }
            let r = (p * kept.len() as f64).ceil() as usize;
            kept[r.clamp(1, kept.len()) - 1]
        };
        Self {
            max: rank(1.0),
            p99: rank(0.99),
            median: rank(0.5),
            excluded,
        }
    }
}

/// `log10` of `|approx - reference| / |reference|`, NaN when the reference
/// underflows and `-inf` for an exact match.
pub fn log10_relative_error(approx: f64, reference: f64) -> f64 {
    if reference.abs() < UNDERFLOW_FLOOR {
        return f64::NAN;
    }
    ((approx - reference) / reference).abs().log10()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorMap {
    pub grid: GridSpec,
    pub engine: Engine,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// `[y][x]`, row-major.
    pub log10_delta_re: Vec<f64>,
    pub log10_delta_im: Vec<f64>,
    pub summary_re: Summary,
    pub summary_im: Summary,
}

impl ErrorMap {
    /// Errors of `engine` against precomputed reference values.
    pub fn against(reference: &ReferenceGrid, engine: &Evaluator, parallel: bool) -> Result<Self> {
        let xs = reference.xs.clone();
        let ys = reference.ys.clone();
        let nx = xs.len();
        let node = |k: usize| -> Result<(f64, f64)> {
            let z = Complex64::new(xs[k % nx], ys[k / nx]);
            let w = engine.w(z)?;
            let r = reference.values[k];
            Ok((
                log10_relative_error(w.re, r.re),
                log10_relative_error(w.im, r.im),
            ))
        };
        let cells: Vec<(f64, f64)> = if parallel {
            (0..reference.values.len())
                .into_par_iter()
                .map(node)
                .collect::<Result<_>>()?
        } else {
            (0..reference.values.len())
                .map(node)
                .collect::<Result<_>>()?
        };
        let (re, im): (Vec<f64>, Vec<f64>) = cells.into_iter().unzip();
        Ok(Self::from_parts(
            reference.grid,
            engine.engine(),
            xs,
            ys,
            re,
            im,
        ))
    }

    /// Oracle pass followed by the engine pass.
    pub fn compute(grid: GridSpec, engine: &Evaluator, parallel: bool) -> Result<Self> {
        let reference = ReferenceGrid::compute(grid, parallel)?;
        Self::against(&reference, engine, parallel)
    }

    fn from_parts(
        grid: GridSpec,
        engine: Engine,
        xs: Vec<f64>,
        ys: Vec<f64>,
        re: Vec<f64>,
        im: Vec<f64>,
    ) -> Self {
        Self {
            grid,
            engine,
            summary_re: Summary::of(&re),
            summary_im: Summary::of(&im),
            xs,
            ys,
            log10_delta_re: re,
            log10_delta_im: im,
        }
    }

    /// `max Δ_Re < threshold_re` and `max Δ_Im < threshold_im`.
    pub fn meets(&self, threshold_re: f64, threshold_im: f64) -> bool {
        self.summary_re.max < threshold_re.log10() && self.summary_im.max < threshold_im.log10()
    }

    /// Indices of the columns with `x` in `[x_min, x_max]`.
    pub fn columns_within(&self, x_min: f64, x_max: f64) -> Vec<usize> {
        (0..self.xs.len())
            .filter(|&j| self.xs[j] >= x_min && self.xs[j] <= x_max)
            .collect()
    }

    /// Summaries over a subset of columns.
    pub fn summarize_columns(&self, columns: &[usize]) -> (Summary, Summary) {
        let nx = self.xs.len();
        let pick = |m: &[f64]| -> Vec<f64> {
            (0..self.ys.len())
                .flat_map(|i| columns.iter().map(move |&j| i * nx + j))
                .map(|k| m[k])
                .collect()
        };
        (
            Summary::of(&pick(&self.log10_delta_re)),
            Summary::of(&pick(&self.log10_delta_im)),
        )
    }

    pub fn csv_re(&self) -> String {
        write_csv(&self.xs, &self.ys, &self.log10_delta_re)
    }

    pub fn csv_im(&self) -> String {
        write_csv(&self.xs, &self.ys, &self.log10_delta_im)
    }

    /// Plain-text block with thresholds and measured statistics.
    pub fn summary_text(&self, threshold_re: f64, threshold_im: f64) -> String {
        let line = |name: &str, s: &Summary, t: f64| {
            format!(
                "{name}: max {:.3} p99 {:.3} median {:.3} excluded {} threshold {:.3}\n",
                s.max,
                s.p99,
                s.median,
                s.excluded,
                t.log10()
            )
        };
        let mut out = format!("engine: {}\ngrid: {}\n", self.engine, self.grid);
        out += "statistics are log10 relative errors\n";
        out += &line("re", &self.summary_re, threshold_re);
        out += &line("im", &self.summary_im, threshold_im);
        out += &format!(
            "result: {}\n",
            if self.meets(threshold_re, threshold_im) {
                "pass"
            } else {
                "fail"
            }
        );
        out
    }
}

/// First row `y/x,x0,x1,...`; each following row `y_i,v_i0,v_i1,...`.
pub fn write_csv(xs: &[f64], ys: &[f64], values: &[f64]) -> String {
    let mut out = String::from("y/x");
    for x in xs {
        out += &format!(",{x:e}");
    }
    out.push('\n');
    for (i, y) in ys.iter().enumerate() {
        out += &format!("{y:e}");
        for v in &values[i * xs.len()..(i + 1) * xs.len()] {
            out += &format!(",{v:e}");
        }
        out.push('\n');
    }
    out
}

/// Inverse of [`write_csv`]: `(xs, ys, values)`.
pub fn read_csv(text: &str) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let bad = |line: usize, what: &str| Error::Parameter(format!("csv line {line}: {what}"));
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad(1, "empty"))?;
    let mut head = header.split(',');
    if head.next() != Some("y/x") {
        return Err(bad(1, "header must start with y/x"));
    }
    let xs = head
        .map(|s| s.parse::<f64>().map_err(|_| bad(1, s)))
        .collect::<Result<Vec<_>>>()?;
    let mut ys = Vec::new();
    let mut values = Vec::new();
    for (n, line) in lines.enumerate() {
        let mut cells = line.split(',');
        let y = cells.next().unwrap_or_default();
        ys.push(y.parse::<f64>().map_err(|_| bad(n + 2, y))?);
        let before = values.len();
        for c in cells {
            values.push(c.parse::<f64>().map_err(|_| bad(n + 2, c))?);
        }
        if values.len() - before != xs.len() {
            return Err(bad(n + 2, "row length differs from header"));
        }
    }
    Ok((xs, ys, values))
}
