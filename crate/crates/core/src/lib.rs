//! Weighted Lindley lifetime model: distribution functions, censored-data
//! likelihoods, maximum-likelihood fitting with Wald intervals, comparison
//! fits (Weibull, Gamma), nonparametric diagnostics and Monte Carlo studies.

pub mod error;
pub mod estimation;
pub mod likelihood;
pub mod montecarlo;
pub mod nonparam;
pub mod optim;
pub mod report;
pub mod censoring;
pub mod dist;
pub mod special;

pub use censoring::{CensoredSample, Observation, Scheme};
pub use dist::WLParams;
pub use error::{Error, Result};
pub use estimation::{fit, ComparisonModel, Family, FitResult};
pub use likelihood::LogLikContext;
pub use montecarlo::{run_study, SimulationReport, StudyConfig, StudyScheme};
pub use nonparam::{kaplan_meier, shape_hint, ttt_curve, HazardShape, StepFunction};
