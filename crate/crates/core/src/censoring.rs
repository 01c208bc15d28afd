//! Right-censored samples and the three censoring mechanisms.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One observed time with its failure indicator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub time: f64,
    /// `true` for an observed failure, `false` for a censored time.
    pub failed: bool,
}

impl Observation {
    pub fn new(time: f64, failed: bool) -> Result<Self> {
        if !(time.is_finite() && time > 0.0) {
            return Err(Error::InvalidSample(format!(
                "observation times must be finite and positive, got {time}"
            )));
        }
        Ok(Self { time, failed })
    }

    pub fn status(&self) -> u8 {
        u8::from(self.failed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scheme {
    Complete,
    /// Observation stops at a fixed time.
    #[serde(rename = "type1")]
    TypeI { t_c: f64 },
    /// Observation stops at the r-th failure.
    #[serde(rename = "type2")]
    TypeII { r: usize },
    Random,
}

impl Scheme {
    pub fn tag(&self) -> &'static str {
        match self {
            Scheme::Complete => "complete",
            Scheme::TypeI { .. } => "type1",
            Scheme::TypeII { .. } => "type2",
            Scheme::Random => "random",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Complete => write!(f, "complete"),
            Scheme::TypeI { t_c } => write!(f, "type1(t_c={t_c})"),
            Scheme::TypeII { r } => write!(f, "type2(r={r})"),
            Scheme::Random => write!(f, "random"),
        }
    }
}

/// An immutable list of observations tagged with the mechanism that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensoredSample {
    observations: Vec<Observation>,
    scheme: Scheme,
}

impl CensoredSample {
    /// Builds a sample, checking the scheme's structural invariants.
    pub fn new(observations: Vec<Observation>, scheme: Scheme) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::InvalidSample("sample is empty".into()));
        }
        for o in &observations {
            Observation::new(o.time, o.failed)?;
        }
        match scheme {
            Scheme::Complete => {
                if observations.iter().any(|o| !o.failed) {
                    return Err(Error::InvalidSample(
                        "complete scheme cannot contain censored observations".into(),
                    ));
                }
            }
            Scheme::TypeI { t_c } => {
                if !(t_c > 0.0) {
                    return Err(Error::InvalidSample(format!("t_c must be positive, got {t_c}")));
                }
                for o in &observations {
                    if o.failed && o.time > t_c {
                        return Err(Error::InvalidSample(format!(
                            "failure at {} exceeds t_c = {t_c}",
                            o.time
                        )));
                    }
                    if !o.failed && o.time != t_c {
                        return Err(Error::InvalidSample(format!(
                            "censored time {} differs from t_c = {t_c}",
                            o.time
                        )));
                    }
                }
            }
            Scheme::TypeII { r } => {
                let d = observations.iter().filter(|o| o.failed).count();
                if r == 0 || r > observations.len() {
                    return Err(Error::InvalidSample(format!(
                        "r = {r} outside 1..={}",
                        observations.len()
                    )));
                }
                if d != r {
                    return Err(Error::InvalidSample(format!(
                        "type II sample with r = {r} has {d} failures"
                    )));
                }
                let t_r = observations
                    .iter()
                    .filter(|o| o.failed)
                    .map(|o| o.time)
                    .fold(f64::NEG_INFINITY, f64::max);
                if observations.iter().any(|o| !o.failed && o.time != t_r) {
                    return Err(Error::InvalidSample(format!(
                        "type II censored times must equal the r-th failure time {t_r}"
                    )));
                }
            }
            Scheme::Random => {}
        }
        Ok(Self {
            observations,
            scheme,
        })
    }

    /// All lifetimes observed as failures.
    pub fn complete(lifetimes: &[f64]) -> Result<Self> {
        let obs = lifetimes
            .iter()
            .map(|&t| Observation::new(t, true))
            .collect::<Result<Vec<_>>>()?;
        Self::new(obs, Scheme::Complete)
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    /// Number of failures `d`.
    pub fn failures(&self) -> usize {
        self.observations.iter().filter(|o| o.failed).count()
    }

    pub fn censored_fraction(&self) -> f64 {
        (self.len() - self.failures()) as f64 / self.len() as f64
    }

    pub fn times(&self) -> Vec<f64> {
        self.observations.iter().map(|o| o.time).collect()
    }

    pub fn max_time(&self) -> f64 {
        self.observations.iter().map(|o| o.time).fold(0.0, f64::max)
    }

    /// Reads the same observations under another scheme.
    ///
    /// Data that already satisfies the scheme is re-tagged as is. Fully
    /// observed data is censored by the requested mechanism instead.
    pub fn with_scheme(&self, scheme: Scheme) -> Result<Self> {
        match Self::new(self.observations.clone(), scheme) {
            Ok(s) => Ok(s),
            Err(e) => {
                if self.failures() != self.len() {
                    return Err(e);
                }
                let lifetimes = self.times();
                match scheme {
                    Scheme::TypeI { t_c } => apply_type1(&lifetimes, t_c),
                    Scheme::TypeII { r } => apply_type2(&lifetimes, r),
                    _ => Err(e),
                }
            }
        }
    }

    /// CSV text with header `time,status`, one observation per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("time,status\n");
        for o in &self.observations {
            out.push_str(&format!("{},{}\n", o.time, o.status()));
        }
        out
    }
}

/// Ends the experiment at the `r`-th failure; the `n - r` survivors are
/// censored at `t_(r)`.
pub fn apply_type2(lifetimes: &[f64], r: usize) -> Result<CensoredSample> {
    let n = lifetimes.len();
    if r == 0 || r > n {
        return Err(Error::InvalidSample(format!("r = {r} outside 1..={n}")));
    }
    for &t in lifetimes {
        Observation::new(t, true)?;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| lifetimes[a].total_cmp(&lifetimes[b]));
    let t_r = lifetimes[order[r - 1]];
    let mut failed = vec![false; n];
    for &i in &order[..r] {
        failed[i] = true;
    }
    let obs = lifetimes
        .iter()
        .zip(failed)
        .map(|(&t, f)| Observation {
            time: if f { t } else { t_r },
            failed: f,
        })
        .collect();
    CensoredSample::new(obs, Scheme::TypeII { r })
}

/// Ends the experiment at time `t_c`; lifetimes `<= t_c` are failures.
pub fn apply_type1(lifetimes: &[f64], t_c: f64) -> Result<CensoredSample> {
    if !(t_c > 0.0) {
        return Err(Error::InvalidSample(format!("t_c must be positive, got {t_c}")));
    }
    let obs = lifetimes
        .iter()
        .map(|&t| {
            Observation::new(t, true).map(|_| {
                if t <= t_c {
                    Observation { time: t, failed: true }
                } else {
                    Observation { time: t_c, failed: false }
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    // t_c = ∞ leaves the data untouched, so the sample is complete
    let scheme = if t_c.is_infinite() {
        Scheme::Complete
    } else {
        Scheme::TypeI { t_c }
    };
    CensoredSample::new(obs, scheme)
}

/// Pairs each lifetime with its own censoring time: `(min(T, C), T <= C)`.
pub fn apply_random(lifetimes: &[f64], censor_times: &[f64]) -> Result<CensoredSample> {
    if lifetimes.len() != censor_times.len() {
        return Err(Error::InvalidSample(format!(
            "{} lifetimes but {} censoring times",
            lifetimes.len(),
            censor_times.len()
        )));
    }
    let obs = lifetimes
        .iter()
        .zip(censor_times)
        .map(|(&t, &c)| {
            if c.is_nan() || c <= 0.0 {
                return Err(Error::InvalidSample(format!("censoring times must be positive, got {c}")));
            }
            if t <= c {
                Observation::new(t, true)
            } else {
                Observation::new(c, false)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    CensoredSample::new(obs, Scheme::Random)
}

/// Parses `time,status` CSV. The result is tagged `Random`; the statuses are
/// taken as given.
pub fn parse_dataset(text: &str) -> Result<CensoredSample> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| Error::Parse {
            line: 1,
            message: "empty input; expected header `time,status`".into(),
        })?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    for required in ["time", "status"] {
        if !columns.contains(&required) {
            return Err(Error::Parse {
                line: 1,
                message: format!("missing column `{required}` in header `{header}`"),
            });
        }
    }
    let time_col = columns.iter().position(|c| *c == "time").unwrap();
    let status_col = columns.iter().position(|c| *c == "status").unwrap();

    let mut obs = Vec::new();
    for (line, content) in lines {
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        if fields.len() != columns.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected {} fields, found {}", columns.len(), fields.len()),
            });
        }
        let time: f64 = fields[time_col].parse().map_err(|_| Error::Parse {
            line,
            message: format!("field `time` is not a number: `{}`", fields[time_col]),
        })?;
        if !(time.is_finite() && time > 0.0) {
            return Err(Error::Parse {
                line,
                message: format!("field `time` must be positive, got {time}"),
            });
        }
        let failed = match fields[status_col] {
            "1" => true,
            "0" => false,
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("field `status` must be 0 or 1, got `{other}`"),
                })
            }
        };
        obs.push(Observation { time, failed });
    }
    if obs.is_empty() {
        return Err(Error::Parse {
            line: 2,
            message: "no observations after header".into(),
        });
    }
    CensoredSample::new(obs, Scheme::Random)
}
