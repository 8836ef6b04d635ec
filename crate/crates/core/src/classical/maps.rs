//! Built-in iterated maps.

use crate::error::{Error, Result};

/// A point of a one- or two-dimensional state space. One-dimensional maps
/// use only the first coordinate and keep the second at zero.
pub type Point = [f64; 2];
pub type Jacobian = [[f64; 2]; 2];

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// A parameterized iteration `x ↦ f_a(x)` on a domain box.
pub trait DynamicalMap: Send + Sync {
    fn name(&self) -> &str;

    /// State dimension, 1 or 2.
    fn dim(&self) -> usize;

    /// One interval per state coordinate.
    fn domain(&self) -> &[Interval];

    fn step(&self, x: Point, a: f64) -> Point;

    /// Analytic Jacobian at `x`, if the map provides one.
    fn jacobian(&self, _x: Point, _a: f64) -> Option<Jacobian> {
        None
    }

    fn default_initial(&self) -> Point;

    fn default_parameter(&self) -> f64;

    fn check_parameter(&self, _a: f64) -> Result<()> {
        Ok(())
    }

    fn in_domain(&self, x: Point) -> bool {
        self.domain()
            .iter()
            .zip(x)
            .all(|(iv, c)| c.is_finite() && iv.contains(c))
    }
}

const UNIT: [Interval; 1] = [Interval::new(0.0, 1.0)];
const UNIT_SQUARE: [Interval; 2] = [Interval::new(0.0, 1.0), Interval::new(0.0, 1.0)];
const TINKERBELL_BOX: [Interval; 2] = [Interval::new(-2.0, 2.0), Interval::new(-2.0, 2.0)];

/// `f_a(x) = a x (1 - x)` on `[0, 1]`, `0 ≤ a ≤ 4`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Logistic;

impl DynamicalMap for Logistic {
    fn name(&self) -> &str {
        "logistic"
    }

    fn dim(&self) -> usize {
        1
    }

    fn domain(&self) -> &[Interval] {
        &UNIT
    }

    fn step(&self, x: Point, a: f64) -> Point {
        [a * x[0] * (1.0 - x[0]), 0.0]
    }

    fn jacobian(&self, x: Point, a: f64) -> Option<Jacobian> {
        Some([[a * (1.0 - 2.0 * x[0]), 0.0], [0.0, 0.0]])
    }

    fn default_initial(&self) -> Point {
        [0.3, 0.0]
    }

    fn default_parameter(&self) -> f64 {
        4.0
    }

    fn check_parameter(&self, a: f64) -> Result<()> {
        if !(0.0..=4.0).contains(&a) {
            return Err(Error::InvalidParameter(format!(
                "logistic parameter {a} outside [0, 4]"
            )));
        }
        Ok(())
    }
}

/// Baker's transformation `(x, y) ↦ (2x mod 1, (y + ⌊2x⌋) / 2)` on the unit
/// square. It has no parameter.
///
/// In binary floating point the doubling shifts one mantissa bit out per
/// step, so every orbit reaches the fixed point `(0, 0)` within about 60
/// iterations.
#[derive(Debug, Clone, Copy, Default)]
pub struct Baker;

impl DynamicalMap for Baker {
    fn name(&self) -> &str {
        "baker"
    }

    fn dim(&self) -> usize {
        2
    }

    fn domain(&self) -> &[Interval] {
        &UNIT_SQUARE
    }

    fn step(&self, p: Point, _a: f64) -> Point {
        let doubled = 2.0 * p[0];
        let fold = doubled.floor();
        [doubled - fold, (p[1] + fold) / 2.0]
    }

    fn jacobian(&self, _p: Point, _a: f64) -> Option<Jacobian> {
        Some([[2.0, 0.0], [0.0, 0.5]])
    }

    fn default_initial(&self) -> Point {
        [0.3, 0.6]
    }

    fn default_parameter(&self) -> f64 {
        0.0
    }
}

/// Tinkerbell map `(x, y) ↦ (x² - y² + a x + b y, 2 x y + c x + d y)` with
/// the swept parameter `a` and fixed `(b, c, d)`, on the box `[-2, 2]²`.
#[derive(Debug, Clone, Copy)]
pub struct Tinkerbell {
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for Tinkerbell {
    fn default() -> Self {
        Self {
            b: -0.6013,
            c: 2.0,
            d: 0.5,
        }
    }
}

impl DynamicalMap for Tinkerbell {
    fn name(&self) -> &str {
        "tinkerbell"
    }

    fn dim(&self) -> usize {
        2
    }

    fn domain(&self) -> &[Interval] {
        &TINKERBELL_BOX
    }

    fn step(&self, p: Point, a: f64) -> Point {
        let [x, y] = p;
        [
            x * x - y * y + a * x + self.b * y,
            2.0 * x * y + self.c * x + self.d * y,
        ]
    }

    fn jacobian(&self, p: Point, a: f64) -> Option<Jacobian> {
        let [x, y] = p;
        Some([
            [2.0 * x + a, -2.0 * y + self.b],
            [2.0 * y + self.c, 2.0 * x + self.d],
        ])
    }

    fn default_initial(&self) -> Point {
        [-0.72, -0.64]
    }

    fn default_parameter(&self) -> f64 {
        0.9
    }
}

/// `f(x) = c` on `[0, 1]`; a degenerate map with zero derivative.
#[derive(Debug, Clone, Copy)]
pub struct ConstantMap {
    pub value: f64,
}

impl DynamicalMap for ConstantMap {
    fn name(&self) -> &str {
        "constant"
    }

    fn dim(&self) -> usize {
        1
    }

    fn domain(&self) -> &[Interval] {
        &UNIT
    }

    fn step(&self, _x: Point, _a: f64) -> Point {
        [self.value, 0.0]
    }

    fn jacobian(&self, _x: Point, _a: f64) -> Option<Jacobian> {
        Some([[0.0, 0.0], [0.0, 0.0]])
    }

    fn default_initial(&self) -> Point {
        [0.3, 0.0]
    }

    fn default_parameter(&self) -> f64 {
        0.0
    }
}

/// Names accepted by [`builtin_map`].
pub const BUILTIN_MAPS: [&str; 3] = ["logistic", "baker", "tinkerbell"];

pub fn builtin_map(name: &str) -> Option<Box<dyn DynamicalMap>> {
    match name {
        "logistic" => Some(Box::new(Logistic)),
        "baker" => Some(Box::new(Baker)),
        "tinkerbell" => Some(Box::new(Tinkerbell::default())),
        _ => None,
    }
}
