//! Monte Carlo study of the WL maximum-likelihood estimator under censoring.
//!
//! Each replicate draws from its own ChaCha8 stream `(seed, replicate)`, and
//! results are reduced in replicate order, so a report depends only on the
//! configuration and never on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::censoring::{apply_random, apply_type1, apply_type2, CensoredSample};
use crate::dist::WLParams;
use crate::error::{domain, Error, Result};
use crate::estimation::{fit_context, wald_ci};
use crate::likelihood::LogLikContext;
use crate::special::{integrate, QuadratureConfig};

/// Largest tolerated share of non-converged replicates.
pub const MAX_DISCARD_FRACTION: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StudyScheme {
    Complete,
    #[serde(rename = "type2")]
    TypeII { r: usize },
    /// Fixed censoring time calibrated so that `P(T > t_c) = p_target`.
    #[serde(rename = "type1")]
    TypeI { p_target: f64 },
    /// Uniform(0, u) censoring times with `u` calibrated to `p_target`.
    Random { p_target: f64 },
}

impl StudyScheme {
    /// Type II with `r = round((1 - p_target)·n)`.
    pub fn type2_from_target(n: usize, p_target: f64) -> Result<Self> {
        check_target(p_target)?;
        Ok(StudyScheme::TypeII {
            r: ((1.0 - p_target) * n as f64).round() as usize,
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            StudyScheme::Complete => "complete",
            StudyScheme::TypeII { .. } => "type2",
            StudyScheme::TypeI { .. } => "type1",
            StudyScheme::Random { .. } => "random",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub params: WLParams,
    pub n: usize,
    pub scheme: StudyScheme,
    pub replicates: usize,
    pub seed: u64,
    pub level: f64,
}

impl StudyConfig {
    pub fn new(params: WLParams, n: usize, scheme: StudyScheme, replicates: usize, seed: u64) -> Result<Self> {
        let cfg = Self {
            params,
            n,
            scheme,
            replicates,
            seed,
            level: 0.95,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(domain("replicates must be at least 1"));
        }
        if self.n < 2 {
            return Err(domain(format!("sample size must be at least 2, got {}", self.n)));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(domain(format!("confidence level must lie in (0, 1), got {}", self.level)));
        }
        match self.scheme {
            StudyScheme::TypeII { r } if r == 0 || r > self.n => {
                Err(domain(format!("type II needs 1 <= r <= n, got r={r}, n={}", self.n)))
            }
            StudyScheme::TypeI { p_target } | StudyScheme::Random { p_target } => check_target(p_target),
            _ => Ok(()),
        }
    }
}

fn check_target(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("target censoring proportion must lie in (0, 1), got {p}")))
    }
}

/// `t_c` with `S(t_c) = p_star`.
pub fn calibrate_type1(params: &WLParams, p_star: f64) -> Result<f64> {
    check_target(p_star)?;
    params.quantile(1.0 - p_star)
}

/// Censoring fraction `(1/u)∫₀ᵘ S(t) dt` under Uniform(0, u) censoring.
pub fn uniform_censoring_fraction(params: &WLParams, u: f64) -> Result<f64> {
    if !(u > 0.0 && u.is_finite()) {
        return Err(domain(format!("uniform censoring bound must be positive, got {u}")));
    }
    let cfg = QuadratureConfig::new(1e-12, 1e-300, 400)?;
    let integral = integrate(|t| params.survival(t).unwrap_or(f64::NAN), 0.0, u, &cfg)?;
    Ok(integral / u)
}

/// Upper bound `u` of Uniform(0, u) censoring giving `P(T > C) = p_star`.
pub fn calibrate_random(params: &WLParams, p_star: f64) -> Result<f64> {
    if !(p_star > 0.0 && p_star < 1.0) {
        return Err(Error::NoRoot(format!(
            "censoring fraction {p_star} is unattainable with uniform censoring"
        )));
    }
    // the fraction decreases from 1 at u = 0 towards 0
    let g = |u: f64| uniform_censoring_fraction(params, u).map(|v| v - p_star);
    let (mean, _) = params.moments();
    let mut lo = 0.0;
    let mut hi = mean;
    let mut doublings = 0;
    while g(hi)? > 0.0 {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::NoRoot(format!("no uniform bound reaches censoring fraction {p_star}")));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Summary statistics for one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamSummary {
    pub true_value: f64,
    pub mre: f64,
    pub mse: f64,
    pub bias: f64,
    pub coverage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub config: StudyConfig,
    /// `t_c` for type I, `u` for random censoring.
    pub calibration: Option<f64>,
    pub lambda: ParamSummary,
    pub phi: ParamSummary,
    /// Mean realized censoring fraction over all attempted replicates.
    pub mean_censored_fraction: f64,
    pub attempted: usize,
    pub converged: usize,
    pub discarded: usize,
}

impl SimulationReport {
    pub const CSV_HEADER: &'static str =
        "n,scheme,mre_phi,mse_phi,bias_phi,c_phi,mre_lambda,mse_lambda,bias_lambda,c_lambda,e_p";

    /// One row in the order of `CSV_HEADER`; `e_p` is left empty for the
    /// schemes whose censoring is fixed by design.
    pub fn csv_row(&self) -> String {
        let e_p = match self.config.scheme {
            StudyScheme::TypeI { .. } | StudyScheme::Random { .. } => format!("{:.3}", self.mean_censored_fraction),
            _ => String::new(),
        };
        let scheme = match self.config.scheme {
            StudyScheme::TypeII { r } => format!("type2(r={r})"),
            s => s.tag().to_string(),
        };
        let p = |s: &ParamSummary| format!("{:.3},{:.3},{:.3},{:.3}", s.mre, s.mse, s.bias, s.coverage);
        format!("{},{},{},{},{}", self.config.n, scheme, p(&self.phi), p(&self.lambda), e_p)
    }
}

/// What one replicate contributes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicateOutcome {
    pub censored_fraction: f64,
    /// `[λ̂, φ̂]` and coverage flags, if the fit converged.
    pub estimate: Option<([f64; 2], [bool; 2])>,
}

/// Everything the replicates share: validated config plus calibration.
#[derive(Debug, Clone, Copy)]
pub struct PreparedStudy {
    config: StudyConfig,
    calibration: Option<f64>,
}

impl PreparedStudy {
    pub fn new(config: StudyConfig) -> Result<Self> {
        config.validate()?;
        let calibration = match config.scheme {
            StudyScheme::TypeI { p_target } => Some(calibrate_type1(&config.params, p_target)?),
            StudyScheme::Random { p_target } => Some(calibrate_random(&config.params, p_target)?),
            _ => None,
        };
        Ok(Self { config, calibration })
    }

    pub fn calibration(&self) -> Option<f64> {
        self.calibration
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Result<CensoredSample> {
        let cfg = &self.config;
        let lifetimes = cfg.params.sample(cfg.n, rng)?;
        match (cfg.scheme, self.calibration) {
            (StudyScheme::TypeII { r }, _) => apply_type2(&lifetimes, r),
            (StudyScheme::TypeI { .. }, Some(t_c)) => apply_type1(&lifetimes, t_c),
            (StudyScheme::Random { .. }, Some(u)) => {
                let censor: Vec<f64> = (0..cfg.n).map(|_| u * (1.0 - rng.gen::<f64>())).collect();
                apply_random(&lifetimes, &censor)
            }
            _ => CensoredSample::complete(&lifetimes),
        }
    }

    /// Runs replicate `index` on its own stream.
    pub fn replicate(&self, index: u64) -> Result<ReplicateOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(index);
        let sample = self.draw(&mut rng)?;
        let censored_fraction = sample.censored_fraction();
        let truth = [self.config.params.lambda(), self.config.params.phi()];
        let estimate = LogLikContext::new(&sample)
            .and_then(|ctx| fit_context(&ctx, crate::estimation::Family::WeightedLindley))
            .ok()
            .filter(|f| f.converged)
            .and_then(|f| {
                let ci = wald_ci(&f, self.config.level).ok()?;
                Some((f.estimates, [0, 1].map(|i| ci[i].0 <= truth[i] && truth[i] <= ci[i].1)))
            });
        Ok(ReplicateOutcome {
            censored_fraction,
            estimate,
        })
    }

    /// Aggregates outcomes given in replicate order.
    pub fn summarize(&self, outcomes: &[ReplicateOutcome]) -> Result<SimulationReport> {
        let attempted = outcomes.len();
        let kept: Vec<_> = outcomes.iter().filter_map(|o| o.estimate).collect();
        let converged = kept.len();
        let discarded = attempted - converged;
        if converged == 0 || discarded as f64 > MAX_DISCARD_FRACTION * attempted as f64 {
            return Err(Error::ExcessiveDiscards { attempted, discarded });
        }
        let truth = [self.config.params.lambda(), self.config.params.phi()];
        let m = converged as f64;
        let summary = |i: usize| {
            let (mut rel, mut sq, mut sum, mut hits) = (0.0, 0.0, 0.0, 0usize);
            for (est, cover) in &kept {
                rel += est[i] / truth[i];
                sq += (est[i] - truth[i]).powi(2);
                sum += est[i];
                hits += cover[i] as usize;
            }
            ParamSummary {
                true_value: truth[i],
                mre: rel / m,
                mse: sq / m,
                bias: sum / m - truth[i],
                coverage: hits as f64 / m,
            }
        };
        let mean_censored_fraction = outcomes.iter().map(|o| o.censored_fraction).sum::<f64>() / attempted as f64;
        Ok(SimulationReport {
            config: self.config,
            calibration: self.calibration,
            lambda: summary(0),
            phi: summary(1),
            mean_censored_fraction,
            attempted,
            converged,
            discarded,
        })
    }
}

/// Runs the study on the current rayon pool.
pub fn run_study(config: &StudyConfig) -> Result<SimulationReport> {
    let prepared = PreparedStudy::new(*config)?;
    let outcomes = (0..config.replicates as u64)
        .into_par_iter()
        .map(|i| prepared.replicate(i))
        .collect::<Result<Vec<_>>>()?;
    prepared.summarize(&outcomes)
}

/// Runs the study on a dedicated pool of `threads` workers (0 = rayon's default).
pub fn run_study_with_threads(config: &StudyConfig, threads: usize) -> Result<SimulationReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| domain(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run_study(config))
}
