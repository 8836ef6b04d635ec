//! Classical entropic chaos degree of iterated maps.
//!
//! An orbit is coarse-grained by an equal-width partition of the domain box;
//! consecutive cell visits define an empirical stochastic channel whose
//! average row entropy is the chaos degree
//! `D = -Σ_ij p_ij ln(p_ij / p_i)`.

mod maps;

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{Channel, StochasticMatrix};
use crate::error::{Error, Result};
use crate::hilbert::{DensityOperator, LogBase};
use crate::metrics::{classify_dynamics, DynamicsLabel};

pub use maps::{
    builtin_map, Baker, ConstantMap, DynamicalMap, Interval, Jacobian, Logistic, Point,
    Tinkerbell, BUILTIN_MAPS,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitConfig {
    pub initial: Point,
    pub transient: usize,
    pub samples: usize,
    pub parameter: f64,
}

impl OrbitConfig {
    pub const DEFAULT_TRANSIENT: usize = 1_000;
    pub const DEFAULT_SAMPLES: usize = 100_000;

    /// Default lengths with the map's own starting point and parameter.
    pub fn for_map(map: &dyn DynamicalMap) -> Self {
        Self {
            initial: map.default_initial(),
            transient: Self::DEFAULT_TRANSIENT,
            samples: Self::DEFAULT_SAMPLES,
            parameter: map.default_parameter(),
        }
    }

    pub fn with_parameter(self, parameter: f64) -> Self {
        Self { parameter, ..self }
    }
}

/// Returns the `cfg.samples` points visited after `cfg.transient` steps; the
/// first sample is the state after the transient.
pub fn iterate_orbit(map: &dyn DynamicalMap, cfg: &OrbitConfig) -> Result<Vec<Point>> {
    if cfg.samples == 0 {
        return Err(Error::InvalidParameter("sample steps must be at least 1".into()));
    }
    map.check_parameter(cfg.parameter)?;
    let mut x = cfg.initial;
    if !map.in_domain(x) {
        return Err(Error::OrbitEscape {
            step: 0,
            point: x[..map.dim()].to_vec(),
        });
    }
    let a = cfg.parameter;
    for step in 1..=cfg.transient {
        x = map.step(x, a);
        if !map.in_domain(x) {
            return Err(Error::OrbitEscape {
                step,
                point: x[..map.dim()].to_vec(),
            });
        }
    }
    let mut orbit = Vec::with_capacity(cfg.samples);
    orbit.push(x);
    for k in 1..cfg.samples {
        x = map.step(x, a);
        if !map.in_domain(x) {
            return Err(Error::OrbitEscape {
                step: cfg.transient + k,
                point: x[..map.dim()].to_vec(),
            });
        }
        orbit.push(x);
    }
    Ok(orbit)
}

/// Equal-width grid with `bins` cells per axis over a domain box.
///
/// A point on an interior cell boundary belongs to the lower-index cell, so
/// cells are `(lo, hi]` except the first, which is closed.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    bins: usize,
    domain: Vec<Interval>,
}

impl Partition {
    pub const DEFAULT_BINS: usize = 100;

    pub fn new(bins: usize, domain: &[Interval]) -> Result<Self> {
        if bins < 2 {
            return Err(Error::InvalidParameter(format!("bin count {bins} < 2")));
        }
        if domain.is_empty() || domain.len() > 2 {
            return Err(Error::InvalidParameter("partition needs 1 or 2 axes".into()));
        }
        if domain.iter().any(|iv| !(iv.width() > 0.0) || !iv.width().is_finite()) {
            return Err(Error::InvalidParameter("degenerate domain interval".into()));
        }
        Ok(Self {
            bins,
            domain: domain.to_vec(),
        })
    }

    pub fn for_map(map: &dyn DynamicalMap, bins: usize) -> Result<Self> {
        Self::new(bins, &map.domain()[..map.dim()])
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn cell_count(&self) -> usize {
        self.bins.pow(self.domain.len() as u32)
    }

    fn axis_index(&self, axis: usize, x: f64) -> usize {
        let iv = self.domain[axis];
        let t = (x - iv.lo) / iv.width() * self.bins as f64;
        let up = t.ceil();
        if up <= 1.0 {
            0
        } else {
            (up as usize - 1).min(self.bins - 1)
        }
    }

    /// Row-major cell index of a point inside the domain box.
    pub fn cell(&self, p: Point) -> usize {
        (0..self.domain.len()).fold(0, |acc, axis| acc * self.bins + self.axis_index(axis, p[axis]))
    }
}

/// Transition statistics of a symbolic sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalChannel {
    /// Visited cell labels, ascending.
    pub cells: Vec<usize>,
    /// Occupation frequency of each visited cell as the source of a
    /// transition; cells reached only by the final point get 0.
    pub occupation: Vec<f64>,
    /// Sparse joint counts, keyed by positions in `cells`.
    pub joint_counts: Vec<BTreeMap<usize, u64>>,
    pub transitions: u64,
}

impl EmpiricalChannel {
    /// Counts consecutive pairs of a cell sequence of length ≥ 2.
    pub fn from_symbols(symbols: &[usize]) -> Result<Self> {
        if symbols.len() < 2 {
            return Err(Error::InvalidParameter("orbit length must be at least 2".into()));
        }
        let mut cells = symbols.to_vec();
        cells.sort_unstable();
        cells.dedup();
        let position = |c: usize| cells.binary_search(&c).expect("cell present");
        let mut joint_counts = vec![BTreeMap::new(); cells.len()];
        for w in symbols.windows(2) {
            *joint_counts[position(w[0])].entry(position(w[1])).or_insert(0u64) += 1;
        }
        let transitions = (symbols.len() - 1) as u64;
        let occupation = joint_counts
            .iter()
            .map(|row| row.values().sum::<u64>() as f64 / transitions as f64)
            .collect();
        Ok(Self {
            cells,
            occupation,
            joint_counts,
            transitions,
        })
    }

    pub fn from_orbit(orbit: &[Point], partition: &Partition) -> Result<Self> {
        let symbols: Vec<usize> = orbit.iter().map(|&p| partition.cell(p)).collect();
        Self::from_symbols(&symbols)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `p(j|i)` for visited cell positions `i`, `j`.
    pub fn conditional(&self, i: usize, j: usize) -> f64 {
        let row = &self.joint_counts[i];
        let total: u64 = row.values().sum();
        if total == 0 {
            return if i == j { 1.0 } else { 0.0 };
        }
        row.get(&j).copied().unwrap_or(0) as f64 / total as f64
    }

    /// Dense transition matrix over visited cells. Rows of cells that never
    /// act as a source are completed by a self-transition.
    pub fn transition_matrix(&self) -> Result<StochasticMatrix> {
        let m = self.len();
        StochasticMatrix::new(DMatrix::from_fn(m, m, |i, j| self.conditional(i, j)))
    }

    /// `-Σ_ij p_ij ln(p_ij / p_i)`.
    pub fn chaos_degree(&self) -> f64 {
        let total = self.transitions as f64;
        let d: f64 = self
            .joint_counts
            .iter()
            .map(|row| {
                let source: u64 = row.values().sum();
                row.values()
                    .map(|&c| {
                        let c = c as f64;
                        -(c / total) * (c / source as f64).ln()
                    })
                    .sum::<f64>()
            })
            .sum();
        d.max(0.0)
    }

    /// The same quantity via the quantum chaos degree of `diag(p)` under the
    /// measure-and-prepare channel of the transition matrix.
    pub fn chaos_degree_quantum(&self) -> Result<f64> {
        let rho = DensityOperator::diagonal(&self.occupation)?;
        let channel = Channel::stochastic(self.transition_matrix()?);
        let cfg = crate::metrics::ComplexityConfig {
            log_base: LogBase::Natural,
            ..Default::default()
        };
        Ok(crate::metrics::chaos_degree_quantum(&rho, &channel, &cfg)?.chaos_degree)
    }
}

pub fn empirical_channel(orbit: &[Point], partition: &Partition) -> Result<EmpiricalChannel> {
    EmpiricalChannel::from_orbit(orbit, partition)
}

pub fn classical_ecd(
    map: &dyn DynamicalMap,
    cfg: &OrbitConfig,
    partition: &Partition,
) -> Result<f64> {
    let orbit = iterate_orbit(map, cfg)?;
    Ok(empirical_channel(&orbit, partition)?.chaos_degree())
}

/// Largest Lyapunov exponent along a precomputed orbit.
pub fn lyapunov_along(map: &dyn DynamicalMap, orbit: &[Point], a: f64) -> Result<f64> {
    let missing = || Error::MissingJacobian(map.name().to_string());
    if orbit.is_empty() {
        return Err(Error::InvalidParameter("empty orbit".into()));
    }
    let mut sum = 0.0;
    if map.dim() == 1 {
        for &p in orbit {
            let j = map.jacobian(p, a).ok_or_else(missing)?;
            sum += j[0][0].abs().ln();
        }
    } else {
        let mut v = [std::f64::consts::FRAC_1_SQRT_2; 2];
        for &p in orbit {
            let j = map.jacobian(p, a).ok_or_else(missing)?;
            let w = [
                j[0][0] * v[0] + j[0][1] * v[1],
                j[1][0] * v[0] + j[1][1] * v[1],
            ];
            let norm = w[0].hypot(w[1]);
            sum += norm.ln();
            if norm == 0.0 || !norm.is_finite() {
                break;
            }
            v = [w[0] / norm, w[1] / norm];
        }
    }
    if sum == f64::NEG_INFINITY {
        return Ok(sum);
    }
    Ok(sum / orbit.len() as f64)
}

/// Time average of `ln|f'|` (1-D) or of the tangent-vector growth rate
/// (2-D) over the post-transient orbit.
pub fn lyapunov_exponent(map: &dyn DynamicalMap, cfg: &OrbitConfig) -> Result<f64> {
    let orbit = iterate_orbit(map, cfg)?;
    lyapunov_along(map, &orbit, cfg.parameter)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub from: f64,
    pub to: f64,
    pub step: f64,
    pub orbit: OrbitConfig,
    pub bins: usize,
    /// Trailing window length for the classification label.
    pub window: usize,
    pub eps_zero: f64,
    pub eps_const: f64,
}

impl SweepConfig {
    pub const DEFAULT_WINDOW: usize = 5;
    pub const DEFAULT_EPS_ZERO: f64 = 1e-3;
    pub const DEFAULT_EPS_CONST: f64 = 1e-2;

    pub fn new(map: &dyn DynamicalMap, from: f64, to: f64, step: f64) -> Self {
        Self {
            from,
            to,
            step,
            orbit: OrbitConfig::for_map(map),
            bins: Partition::DEFAULT_BINS,
            window: Self::DEFAULT_WINDOW,
            eps_zero: Self::DEFAULT_EPS_ZERO,
            eps_const: Self::DEFAULT_EPS_CONST,
        }
    }

    /// Parameter grid `from, from + step, …, to`; the last point is `to`
    /// exactly when the range is a whole number of steps.
    pub fn parameters(&self) -> Result<Vec<f64>> {
        if !(self.step > 0.0) || !self.from.is_finite() || !self.to.is_finite() {
            return Err(Error::InvalidParameter("sweep step must be positive".into()));
        }
        if self.to < self.from {
            return Err(Error::InvalidParameter("sweep range is empty".into()));
        }
        let span = (self.to - self.from) / self.step;
        let whole = span.round();
        let exact = (span - whole).abs() < 1e-9;
        let count = if exact { whole as usize } else { span.floor() as usize } + 1;
        Ok((0..count)
            .map(|k| {
                if exact && k + 1 == count {
                    self.to
                } else {
                    self.from + k as f64 * self.step
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub a: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub lyapunov: f64,
    pub label: DynamicsLabel,
}

/// Rows are computed in parallel on the current rayon pool; the output order
/// follows the parameter grid regardless of scheduling.
pub fn sweep(map: &dyn DynamicalMap, cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if cfg.window == 0 {
        return Err(Error::InvalidParameter("window must be positive".into()));
    }
    let params = cfg.parameters()?;
    for &a in &params {
        map.check_parameter(a)?;
    }
    let partition = Partition::for_map(map, cfg.bins)?;
    let values: Vec<(f64, f64)> = params
        .par_iter()
        .map(|&a| {
            let orbit_cfg = cfg.orbit.with_parameter(a);
            let orbit = iterate_orbit(map, &orbit_cfg)?;
            let d = empirical_channel(&orbit, &partition)?.chaos_degree();
            let lyap = lyapunov_along(map, &orbit, a)?;
            Ok((d, lyap))
        })
        .collect::<Result<_>>()?;
    let ds: Vec<f64> = values.iter().map(|v| v.0).collect();
    params
        .iter()
        .zip(&values)
        .enumerate()
        .map(|(k, (&a, &(d, lyapunov)))| {
            let start = (k + 1).saturating_sub(cfg.window);
            let label = classify_dynamics(&ds[start..=k], cfg.eps_zero, cfg.eps_const)?;
            Ok(SweepRow {
                a,
                d,
                lyapunov,
                label,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(a: f64, transient: usize, samples: usize) -> OrbitConfig {
        OrbitConfig {
            initial: [0.3, 0.0],
            transient,
            samples,
            parameter: a,
        }
    }

    #[test]
    fn logistic_fixed_point() {
        let orbit = iterate_orbit(&Logistic, &cfg(2.0, 1000, 10)).unwrap();
        for p in orbit {
            assert!((p[0] - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_map_orbit_and_degree() {
        let map = ConstantMap { value: 0.7 };
        let c = cfg(0.0, 10, 50);
        let orbit = iterate_orbit(&map, &c).unwrap();
        assert!(orbit.iter().all(|p| p[0] == 0.7));
        let part = Partition::for_map(&map, 10).unwrap();
        assert_eq!(classical_ecd(&map, &c, &part).unwrap(), 0.0);
        assert_eq!(lyapunov_exponent(&map, &c).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn logistic_orbit_stays_in_unit_interval() {
        let orbit = iterate_orbit(&Logistic, &cfg(4.0, 0, 100)).unwrap();
        assert_eq!(orbit.len(), 100);
        assert!(orbit.iter().all(|p| (0.0..=1.0).contains(&p[0])));
    }

    #[test]
    fn escape_is_reported() {
        struct Doubling;
        impl DynamicalMap for Doubling {
            fn name(&self) -> &str {
                "doubling"
            }
            fn dim(&self) -> usize {
                1
            }
            fn domain(&self) -> &[Interval] {
                const D: [Interval; 1] = [Interval::new(0.0, 1.0)];
                &D
            }
            fn step(&self, x: Point, _a: f64) -> Point {
                [2.0 * x[0], 0.0]
            }
            fn default_initial(&self) -> Point {
                [0.3, 0.0]
            }
            fn default_parameter(&self) -> f64 {
                0.0
            }
        }
        let err = iterate_orbit(&Doubling, &cfg(0.0, 5, 5)).unwrap_err();
        assert!(matches!(err, Error::OrbitEscape { step: 2, .. }));
        let err = lyapunov_along(&Doubling, &[[0.1, 0.0]], 0.0).unwrap_err();
        assert!(matches!(err, Error::MissingJacobian(_)));
        assert!(iterate_orbit(&Logistic, &cfg(3.0, 0, 0)).is_err());
        let mut outside = cfg(3.0, 0, 5);
        outside.initial = [1.5, 0.0];
        assert!(iterate_orbit(&Logistic, &outside).is_err());
    }

    #[test]
    fn boundary_points_go_to_lower_cell() {
        let p = Partition::new(4, &[Interval::new(0.0, 1.0)]).unwrap();
        assert_eq!(p.cell([0.0, 0.0]), 0);
        assert_eq!(p.cell([0.25, 0.0]), 0);
        assert_eq!(p.cell([0.2500001, 0.0]), 1);
        assert_eq!(p.cell([0.5, 0.0]), 1);
        assert_eq!(p.cell([1.0, 0.0]), 3);
        let q = Partition::new(2, &[Interval::new(0.0, 1.0), Interval::new(0.0, 1.0)]).unwrap();
        assert_eq!(q.cell_count(), 4);
        assert_eq!(q.cell([0.75, 0.25]), 2);
        assert!(Partition::new(1, &[Interval::new(0.0, 1.0)]).is_err());
    }

    #[test]
    fn period_two_symbols() {
        let ch = EmpiricalChannel::from_symbols(&[3, 8, 3, 8, 3]).unwrap();
        assert_eq!(ch.cells, vec![3, 8]);
        assert_eq!(ch.occupation, vec![0.5, 0.5]);
        assert_eq!(ch.conditional(0, 1), 1.0);
        assert_eq!(ch.conditional(1, 0), 1.0);
        assert_eq!(ch.chaos_degree(), 0.0);
        assert!(EmpiricalChannel::from_symbols(&[1]).is_err());
    }

    #[test]
    fn constant_symbols() {
        let ch = EmpiricalChannel::from_symbols(&[5; 10]).unwrap();
        assert_eq!(ch.cells, vec![5]);
        assert_eq!(ch.occupation, vec![1.0]);
        assert_eq!(ch.conditional(0, 0), 1.0);
    }

    #[test]
    fn periodic_regimes_have_zero_degree() {
        for a in [3.2, 3.5] {
            let part = Partition::for_map(&Logistic, 100).unwrap();
            let d = classical_ecd(&Logistic, &cfg(a, 1000, 100_000), &part).unwrap();
            assert!(d <= 1e-6, "a = {a}: D = {d}");
            assert!(lyapunov_exponent(&Logistic, &cfg(a, 1000, 10_000)).unwrap() < 0.0);
        }
    }

    #[test]
    fn sweep_grid() {
        let mut c = SweepConfig::new(&Logistic, 3.0, 4.0, 0.005);
        assert_eq!(c.parameters().unwrap().len(), 201);
        assert_eq!(*c.parameters().unwrap().last().unwrap(), 4.0);
        c.orbit.transient = 100;
        c.orbit.samples = 500;
        c.from = 3.9;
        let rows = sweep(&Logistic, &c).unwrap();
        assert_eq!(rows.len(), 21);
        assert!(rows.windows(2).all(|w| w[0].a < w[1].a));
        assert!(rows.iter().all(|r| r.d >= 0.0));
        c.to = 4.2;
        assert!(sweep(&Logistic, &c).is_err());
    }

    #[test]
    fn baker_collapses_in_floating_point() {
        let c = OrbitConfig::for_map(&Baker);
        let orbit = iterate_orbit(&Baker, &c).unwrap();
        assert!(orbit.iter().all(|p| p[0] == 0.0));
        let l = lyapunov_exponent(&Baker, &c).unwrap();
        assert!((l - 2f64.ln()).abs() < 1e-4);
    }
}
