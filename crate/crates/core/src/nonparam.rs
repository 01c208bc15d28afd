//! Kaplan–Meier estimation and the scaled total-time-on-test (TTT) curve.
//!
//! The TTT curve is computed from observed times only; censoring indicators
//! are ignored, so on heavily censored data it is a rough diagnostic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::censoring::CensoredSample;
use crate::error::{Error, Result};

/// Right-continuous step function: `initial` before the first breakpoint,
/// `values[i]` on `[breakpoints[i], breakpoints[i+1])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    initial: f64,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>, initial: f64) -> Result<Self> {
        if breakpoints.len() != values.len() {
            return Err(Error::InvalidSample("breakpoints and values differ in length".into()));
        }
        if breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidSample("breakpoints must be strictly increasing".into()));
        }
        Ok(Self {
            breakpoints,
            values,
            initial,
        })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn initial(&self) -> f64 {
        self.initial
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self.breakpoints.partition_point(|&b| b <= t) {
            0 => self.initial,
            i => self.values[i - 1],
        }
    }

    /// Two-column CSV with the given header names.
    pub fn to_csv(&self, x_name: &str, y_name: &str) -> String {
        let mut out = format!("{x_name},{y_name}\n");
        for (x, y) in self.breakpoints.iter().zip(&self.values) {
            out.push_str(&format!("{x},{y}\n"));
        }
        out
    }
}

/// Product-limit survival estimate. Steps occur only at failure times; at a
/// time shared by failures and censorings the failures are counted first.
pub fn kaplan_meier(sample: &CensoredSample) -> Result<StepFunction> {
    if sample.is_empty() {
        return Err(Error::InvalidSample("empty sample".into()));
    }
    if sample.failures() == 0 {
        return Err(Error::AllCensored);
    }
    let mut obs: Vec<(f64, bool)> = sample.observations().iter().map(|o| (o.time, o.failed)).collect();
    obs.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.cmp(&a.1)));

    let mut at_risk = obs.len();
    let mut s = 1.0;
    let (mut breakpoints, mut values) = (Vec::new(), Vec::new());
    let mut i = 0;
    while i < obs.len() {
        let t = obs[i].0;
        let (mut deaths, mut leaving) = (0, 0);
        while i < obs.len() && obs[i].0 == t {
            deaths += obs[i].1 as usize;
            leaving += 1;
            i += 1;
        }
        if deaths > 0 {
            s *= 1.0 - deaths as f64 / at_risk as f64;
            breakpoints.push(t);
            values.push(s);
        }
        at_risk -= leaving;
    }
    StepFunction::new(breakpoints, values, 1.0)
}

/// Points `(r/n, G(r/n))`, `G(r/n) = (Σ_{i≤r} t_(i) + (n-r) t_(r)) / Σ t_i`.
pub fn ttt_curve(times: &[f64]) -> Result<StepFunction> {
    if times.len() < 2 {
        return Err(Error::InvalidSample(format!(
            "TTT curve needs at least 2 times, got {}",
            times.len()
        )));
    }
    if let Some(bad) = times.iter().find(|t| !(t.is_finite() && **t > 0.0)) {
        return Err(Error::InvalidSample(format!("times must be finite and positive, got {bad}")));
    }
    let mut sorted = times.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let total: f64 = sorted.iter().sum();
    let mut partial = 0.0;
    let mut xs = Vec::with_capacity(n);
    let mut gs = Vec::with_capacity(n);
    for (k, &t) in sorted.iter().enumerate() {
        let r = k + 1;
        partial += t;
        xs.push(r as f64 / n as f64);
        gs.push(if r == n { 1.0 } else { (partial + (n - r) as f64 * t) / total });
    }
    StepFunction::new(xs, gs, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HazardShape {
    Increasing,
    Decreasing,
    Bathtub,
    InverseBathtub,
    Indeterminate,
}

impl fmt::Display for HazardShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HazardShape::Increasing => "increasing",
            HazardShape::Decreasing => "decreasing",
            HazardShape::Bathtub => "bathtub",
            HazardShape::InverseBathtub => "inverse-bathtub",
            HazardShape::Indeterminate => "indeterminate",
        })
    }
}

/// Deviations of `G` from the diagonal smaller than this carry no sign.
pub const SHAPE_DEAD_ZONE: f64 = 0.01;

/// Reads the hazard shape off a TTT curve.
///
/// Each point gets the sign of `G(r/n) - r/n` (zero inside the dead zone).
/// The sign sequence is matched against "all +" (increasing), "all −"
/// (decreasing), "− then +" (bathtub) and "+ then −" (inverse bathtub), the
/// last two over every change point leaving at least 5% of the points on each
/// side. The pattern agreeing with the most signs wins, ties going to the
/// simpler monotone reading; it must agree with a strict majority of the
/// signed points.
pub fn shape_hint(curve: &StepFunction) -> HazardShape {
    let signs: Vec<i8> = curve
        .breakpoints()
        .iter()
        .zip(curve.values())
        .filter(|(x, _)| **x < 1.0)
        .map(|(x, g)| {
            let d = g - x;
            if d > SHAPE_DEAD_ZONE {
                1
            } else if d < -SHAPE_DEAD_ZONE {
                -1
            } else {
                0
            }
        })
        .collect();
    let signed = signs.iter().filter(|s| **s != 0).count();
    if signed == 0 {
        return HazardShape::Indeterminate;
    }
    let m = signs.len();
    let count = |range: std::ops::Range<usize>, s: i8| signs[range].iter().filter(|v| **v == s).count();

    let mut best = (count(0..m, 1), HazardShape::Increasing);
    let dec = count(0..m, -1);
    if dec > best.0 {
        best = (dec, HazardShape::Decreasing);
    }
    let min_seg = ((0.05 * m as f64).ceil() as usize).max(1);
    for (first, shape) in [(-1i8, HazardShape::Bathtub), (1, HazardShape::InverseBathtub)] {
        for k in min_seg..=m.saturating_sub(min_seg) {
            let (a, b) = (count(0..k, first), count(k..m, -first));
            if a >= min_seg && b >= min_seg && a + b > best.0 {
                best = (a + b, shape);
            }
        }
    }
    if 2 * best.0 > signed {
        best.1
    } else {
        HazardShape::Indeterminate
    }
}
