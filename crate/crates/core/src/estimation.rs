//! Maximum-likelihood fitting of WL and the Weibull/Gamma comparison
//! families, observed information, Wald intervals and AIC ranking.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::censoring::{CensoredSample, Scheme};
use crate::dist::WLParams;
use crate::error::{domain, Error, Result};
use crate::likelihood::{self, LogLikContext};
use crate::optim::{self, BfgsOptions};
use crate::special::{
    digamma_unchecked, ln_gamma_unchecked, log_upper_inc_gamma, psi_integral_scaled, QuadratureConfig,
};

/// Iterates must stay inside `[PARAM_MIN, PARAM_MAX]` in every coordinate.
pub const PARAM_MIN: f64 = 1e-6;
pub const PARAM_MAX: f64 = 1e6;

const START_GRID: [f64; 3] = [0.01, 1.0, 100.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    WeightedLindley,
    Weibull,
    Gamma,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::WeightedLindley, Family::Weibull, Family::Gamma];

    pub fn short_name(&self) -> &'static str {
        match self {
            Family::WeightedLindley => "wl",
            Family::Weibull => "weibull",
            Family::Gamma => "gamma",
        }
    }

    /// Parameter names in the order used by every `[f64; 2]` in this module.
    pub fn param_names(&self) -> [&'static str; 2] {
        match self {
            Family::WeightedLindley => ["lambda", "phi"],
            Family::Weibull => ["shape", "scale"],
            Family::Gamma => ["shape", "rate"],
        }
    }

    pub fn loglik(&self, theta: &[f64; 2], ctx: &LogLikContext) -> Result<f64> {
        check_positive(theta)?;
        let value = match self {
            Family::WeightedLindley => return likelihood::loglik(&WLParams::new(theta[0], theta[1])?, ctx),
            Family::Weibull => weibull_loglik(theta, ctx),
            Family::Gamma => gamma_loglik(theta, ctx)?,
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::Evaluation(*theta))
        }
    }

    pub fn score(&self, theta: &[f64; 2], ctx: &LogLikContext) -> Result<[f64; 2]> {
        check_positive(theta)?;
        let g = match self {
            Family::WeightedLindley => return likelihood::score(&WLParams::new(theta[0], theta[1])?, ctx),
            Family::Weibull => weibull_score(theta, ctx),
            Family::Gamma => gamma_score(theta, ctx)?,
        };
        if g[0].is_finite() && g[1].is_finite() {
            Ok(g)
        } else {
            Err(Error::Evaluation(*theta))
        }
    }

    fn moment_start(&self, ctx: &LogLikContext) -> Option<[f64; 2]> {
        let times = ctx.failure_times();
        if times.len() < 2 {
            return None;
        }
        let start = match self {
            Family::WeightedLindley => {
                let (m, v) = mean_var(times);
                wl_moment_start(m, v)?
            }
            Family::Weibull => {
                let logs: Vec<f64> = times.iter().map(|t| t.ln()).collect();
                let (m, v) = mean_var(&logs);
                if !(v > 0.0) {
                    return None;
                }
                // Gumbel moments of log T
                let shape = std::f64::consts::PI / (6.0 * v).sqrt();
                [shape, (m + 0.577_215_664_901_532_9 / shape).exp()]
            }
            Family::Gamma => {
                let (m, v) = mean_var(times);
                if !(v > 0.0) {
                    return None;
                }
                [m * m / v, m / v]
            }
        };
        in_box(&start).then_some(start)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "wl" | "weighted_lindley" | "weightedlindley" => Ok(Family::WeightedLindley),
            "weibull" => Ok(Family::Weibull),
            "gamma" => Ok(Family::Gamma),
            other => Err(domain(format!("unknown model family `{other}`"))),
        }
    }
}

/// A family together with a concrete positive parameter vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComparisonModel {
    pub family: Family,
    pub params: [f64; 2],
}

impl ComparisonModel {
    pub fn new(family: Family, params: [f64; 2]) -> Result<Self> {
        check_positive(&params)?;
        Ok(Self { family, params })
    }

    pub fn log_pdf(&self, t: f64) -> Result<f64> {
        let [a, b] = self.params;
        match self.family {
            Family::WeightedLindley => WLParams::new(a, b)?.log_pdf(t),
            Family::Weibull => {
                check_time(t)?;
                let z = t / b;
                Ok(a.ln() - b.ln() + (a - 1.0) * z.ln() - z.powf(a))
            }
            Family::Gamma => {
                check_time(t)?;
                Ok(a * b.ln() + (a - 1.0) * t.ln() - b * t - ln_gamma_unchecked(a))
            }
        }
    }

    pub fn log_survival(&self, t: f64) -> Result<f64> {
        let [a, b] = self.params;
        if t.is_nan() || t < 0.0 {
            return Err(domain(format!("survival requires t >= 0, got {t}")));
        }
        match self.family {
            Family::WeightedLindley => WLParams::new(a, b)?.log_survival(t),
            Family::Weibull => Ok(-(t / b).powf(a)),
            Family::Gamma => {
                if t == 0.0 {
                    return Ok(0.0);
                }
                Ok((log_upper_inc_gamma(a, b * t)? - ln_gamma_unchecked(a)).min(0.0))
            }
        }
    }

    pub fn survival(&self, t: f64) -> Result<f64> {
        self.log_survival(t).map(f64::exp)
    }
}

fn check_positive(theta: &[f64; 2]) -> Result<()> {
    if theta.iter().all(|v| v.is_finite() && *v > 0.0) {
        Ok(())
    } else {
        Err(domain(format!("parameters must be finite and positive, got {theta:?}")))
    }
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("density requires finite t > 0, got {t}")))
    }
}

fn in_box(theta: &[f64; 2]) -> bool {
    theta.iter().all(|v| (PARAM_MIN..=PARAM_MAX).contains(v))
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, v)
}

/// Solves the WL mean/variance equations for `[λ, φ]`.
///
/// For fixed φ the mean equation is a quadratic in λ with one positive root;
/// the variance equation is then solved in φ by scanning and bisection.
fn wl_moment_start(mean: f64, var: f64) -> Option<[f64; 2]> {
    if !(mean > 0.0 && var > 0.0) {
        return None;
    }
    let lambda_for = |phi: f64| {
        let b = mean * phi - phi;
        (-b + (b * b + 4.0 * mean * phi * (phi + 1.0)).sqrt()) / (2.0 * mean)
    };
    let excess = |log_phi: f64| {
        let phi = log_phi.exp();
        let lam = lambda_for(phi);
        let s = lam + phi;
        ((phi + 1.0) * s * s - lam * lam) / (lam * lam * s * s) - var
    };
    let (lo, hi) = (1e-4f64.ln(), 1e4f64.ln());
    let steps = 80;
    let mut prev = (lo, excess(lo));
    for i in 1..=steps {
        let x = lo + (hi - lo) * i as f64 / steps as f64;
        let fx = excess(x);
        if prev.1.signum() != fx.signum() {
            let (mut a, mut b, fa) = (prev.0, x, prev.1);
            for _ in 0..100 {
                let mid = 0.5 * (a + b);
                let fm = excess(mid);
                if fm.signum() == fa.signum() {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            let phi = (0.5 * (a + b)).exp();
            return Some([lambda_for(phi), phi]);
        }
        prev = (x, fx);
    }
    None
}

fn weibull_loglik(theta: &[f64; 2], ctx: &LogLikContext) -> f64 {
    let [k, s] = *theta;
    let d = ctx.d() as f64;
    let ln_s = s.ln();
    let mut total = d * (k.ln() - ln_s) + (k - 1.0) * (ctx.sum_log_t() - d * ln_s);
    for &t in ctx.failure_times() {
        total -= (t / s).powf(k);
    }
    for &(t, m) in ctx.censored() {
        total -= m as f64 * (t / s).powf(k);
    }
    total
}

fn weibull_score(theta: &[f64; 2], ctx: &LogLikContext) -> [f64; 2] {
    let [k, s] = *theta;
    let d = ctx.d() as f64;
    let ln_s = s.ln();
    let mut g_k = d / k + ctx.sum_log_t() - d * ln_s;
    let mut g_s = -d * k / s;
    let mut add = |t: f64, w: f64| {
        let lz = t.ln() - ln_s;
        let zk = (k * lz).exp();
        g_k -= w * zk * lz;
        g_s += w * k / s * zk;
    };
    for &t in ctx.failure_times() {
        add(t, 1.0);
    }
    for &(t, m) in ctx.censored() {
        add(t, m as f64);
    }
    [g_k, g_s]
}

fn gamma_loglik(theta: &[f64; 2], ctx: &LogLikContext) -> Result<f64> {
    let [a, b] = *theta;
    let d = ctx.d() as f64;
    let lg = ln_gamma_unchecked(a);
    let mut total = d * (a * b.ln() - lg) + (a - 1.0) * ctx.sum_log_t() - b * ctx.sum_t();
    for &(t, m) in ctx.censored() {
        total += m as f64 * (log_upper_inc_gamma(a, b * t)? - lg);
    }
    Ok(total)
}

fn gamma_score(theta: &[f64; 2], ctx: &LogLikContext) -> Result<[f64; 2]> {
    let [a, b] = *theta;
    let d = ctx.d() as f64;
    let dg = digamma_unchecked(a);
    let mut g_a = d * (b.ln() - dg) + ctx.sum_log_t();
    let mut g_b = d * a / b - ctx.sum_t();
    let cfg = QuadratureConfig::default();
    for &(t, m) in ctx.censored() {
        let x = b * t;
        let log_tail = log_upper_inc_gamma(a, x)?;
        let m = m as f64;
        g_a += m * (psi_integral_scaled(a, x, log_tail, &cfg)? - dg);
        g_b -= m * (t.ln() + (a - 1.0) * x.ln() - x - log_tail).exp();
    }
    Ok([g_a, g_b])
}

/// Coordinates the optimizer works in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinates {
    /// Log-parameters; positivity is automatic.
    Log,
    /// Raw parameters; non-positive trials are rejected.
    Original,
}

#[derive(Debug, Clone, Copy)]
pub struct Optimum {
    pub params: [f64; 2],
    pub loglik: f64,
    /// Score in original coordinates at `params`.
    pub score: [f64; 2],
    pub iterations: usize,
    pub converged: bool,
}

/// One quasi-Newton run from `start`.
pub fn maximize(
    family: Family,
    ctx: &LogLikContext,
    start: [f64; 2],
    coords: Coordinates,
    opts: &BfgsOptions,
) -> Result<Optimum> {
    let to_params = |x: &[f64; 2]| match coords {
        Coordinates::Log => [x[0].exp(), x[1].exp()],
        Coordinates::Original => *x,
    };
    let objective = |x: &[f64; 2]| -> Result<(f64, [f64; 2])> {
        let theta = to_params(x);
        let ll = family.loglik(&theta, ctx)?;
        let g = family.score(&theta, ctx)?;
        let grad = match coords {
            Coordinates::Log => [-g[0] * theta[0], -g[1] * theta[1]],
            Coordinates::Original => [-g[0], -g[1]],
        };
        Ok((-ll, grad))
    };
    let x0 = match coords {
        Coordinates::Log => [start[0].ln(), start[1].ln()],
        Coordinates::Original => start,
    };
    let out = optim::minimize(objective, |x| in_box(&to_params(x)), x0, opts)?;
    let params = to_params(&out.x);
    Ok(Optimum {
        params,
        loglik: -out.value,
        score: family.score(&params, ctx)?,
        iterations: out.iterations,
        converged: out.converged,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub family: Family,
    pub scheme: Scheme,
    pub estimates: [f64; 2],
    pub std_errors: [f64; 2],
    pub ci_95: [(f64, f64); 2],
    pub loglik_max: f64,
    pub aic: f64,
    /// Hessian of the log-likelihood at the estimate, original coordinates.
    pub hessian_obs: [[f64; 2]; 2],
    /// Score at the estimate, original coordinates.
    pub score: [f64; 2],
    pub converged: bool,
    pub iterations: usize,
}

impl FitResult {
    pub fn model(&self) -> ComparisonModel {
        ComparisonModel {
            family: self.family,
            params: self.estimates,
        }
    }

    /// The estimate as WL parameters, if this is a WL fit.
    pub fn wl_params(&self) -> Option<WLParams> {
        match self.family {
            Family::WeightedLindley => WLParams::new(self.estimates[0], self.estimates[1]).ok(),
            _ => None,
        }
    }
}

/// `aic = -2 ℓ + 2k`
pub fn aic(loglik: f64, k: usize) -> f64 {
    -2.0 * loglik + 2.0 * k as f64
}

/// Fits `family` to `sample` by maximum likelihood.
pub fn fit(sample: &CensoredSample, family: Family) -> Result<FitResult> {
    if sample.len() < 2 {
        return Err(Error::InvalidSample(format!(
            "at least 2 observations required, got {}",
            sample.len()
        )));
    }
    let ctx = LogLikContext::new(sample)?;
    fit_context(&ctx, family)
}

pub fn fit_context(ctx: &LogLikContext, family: Family) -> Result<FitResult> {
    let opts = BfgsOptions::default();
    let mut best: Option<Optimum> = None;
    let mut last_err = None;
    let mut consider = |start: [f64; 2], best: &mut Option<Optimum>| match maximize(
        family,
        ctx,
        start,
        Coordinates::Log,
        &opts,
    ) {
        Ok(o) => {
            let better = match best {
                None => true,
                Some(b) => (o.converged && !b.converged) || (o.converged == b.converged && o.loglik > b.loglik),
            };
            if better {
                *best = Some(o);
            }
        }
        Err(e) => last_err = Some(e),
    };

    if let Some(start) = family.moment_start(ctx) {
        consider(start, &mut best);
    }
    if !best.is_some_and(|b| b.converged) {
        for a in START_GRID {
            for b in START_GRID {
                consider([a, b], &mut best);
            }
        }
    }
    let Some(opt) = best else {
        return Err(last_err.unwrap_or_else(|| Error::NoConvergence("no start could be evaluated".into())));
    };

    let mut result = FitResult {
        family,
        scheme: ctx.scheme(),
        estimates: opt.params,
        std_errors: [f64::NAN; 2],
        ci_95: [(f64::NAN, f64::NAN); 2],
        loglik_max: opt.loglik,
        aic: aic(opt.loglik, 2),
        hessian_obs: [[f64::NAN; 2]; 2],
        score: opt.score,
        converged: opt.converged,
        iterations: opt.iterations,
    };
    match numeric_information(|theta| family.loglik(theta, ctx), &opt.params) {
        Ok(info) => {
            result.hessian_obs = [[-info[0][0], -info[0][1]], [-info[1][0], -info[1][1]]];
            result.std_errors = std_errors(&info)?;
            if result.converged {
                result.ci_95 = wald_ci(&result, 0.95)?;
            }
        }
        Err(Error::SingularInformation) => result.converged = false,
        Err(e) => return Err(e),
    }
    Ok(result)
}

/// Negative Hessian of `loglik` at `theta` by central differences with steps
/// `h_i = max(1e-5·|θ_i|, 1e-8)`. Fails unless the result is positive definite.
pub fn numeric_information<F>(loglik: F, theta: &[f64; 2]) -> Result<[[f64; 2]; 2]>
where
    F: Fn(&[f64; 2]) -> Result<f64>,
{
    let h = [(1e-5 * theta[0].abs()).max(1e-8), (1e-5 * theta[1].abs()).max(1e-8)];
    let at = |d0: f64, d1: f64| loglik(&[theta[0] + d0, theta[1] + d1]);
    let f0 = at(0.0, 0.0)?;
    let mut info = [[0.0; 2]; 2];
    info[0][0] = -(at(h[0], 0.0)? - 2.0 * f0 + at(-h[0], 0.0)?) / (h[0] * h[0]);
    info[1][1] = -(at(0.0, h[1])? - 2.0 * f0 + at(0.0, -h[1])?) / (h[1] * h[1]);
    let cross = -(at(h[0], h[1])? - at(h[0], -h[1])? - at(-h[0], h[1])? + at(-h[0], -h[1])?) / (4.0 * h[0] * h[1]);
    info[0][1] = cross;
    info[1][0] = cross;
    let det = info[0][0] * info[1][1] - cross * cross;
    if !(info[0][0] > 0.0 && info[1][1] > 0.0 && det > 0.0) || !det.is_finite() {
        return Err(Error::SingularInformation);
    }
    Ok(info)
}

/// Observed information of the WL log-likelihood at `params`.
pub fn observed_information(params: &WLParams, ctx: &LogLikContext) -> Result<[[f64; 2]; 2]> {
    numeric_information(|theta| Family::WeightedLindley.loglik(theta, ctx), &[params.lambda(), params.phi()])
}

/// Inverse of a positive-definite 2×2 matrix.
pub fn invert(info: &[[f64; 2]; 2]) -> Result<[[f64; 2]; 2]> {
    let det = info[0][0] * info[1][1] - info[0][1] * info[1][0];
    if !(det > 0.0) || !det.is_finite() {
        return Err(Error::SingularInformation);
    }
    Ok([
        [info[1][1] / det, -info[0][1] / det],
        [-info[1][0] / det, info[0][0] / det],
    ])
}

/// Square roots of the diagonal of the inverse information.
pub fn std_errors(info: &[[f64; 2]; 2]) -> Result<[f64; 2]> {
    let cov = invert(info)?;
    if !(cov[0][0] >= 0.0 && cov[1][1] >= 0.0) {
        return Err(Error::SingularInformation);
    }
    Ok([cov[0][0].sqrt(), cov[1][1].sqrt()])
}

/// Two-sided normal quantile `z_{1-γ/2}` for confidence `level = 1-γ`.
pub fn normal_quantile(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(domain(format!("confidence level must lie in (0, 1), got {level}")));
    }
    let normal = Normal::standard();
    Ok(normal.inverse_cdf(1.0 - (1.0 - level) / 2.0))
}

/// `θ̂ᵢ ± z·SEᵢ` for each parameter.
pub fn wald_ci(fit: &FitResult, level: f64) -> Result<[(f64, f64); 2]> {
    let z = normal_quantile(level)?;
    if fit.std_errors.iter().any(|s| !s.is_finite() || *s < 0.0) {
        return Err(Error::SingularInformation);
    }
    Ok([0, 1].map(|i| {
        let half = z * fit.std_errors[i];
        (fit.estimates[i] - half, fit.estimates[i] + half)
    }))
}

#[derive(Debug, Clone)]
pub struct AicTable {
    /// Converged fits, ascending AIC.
    pub ranked: Vec<FitResult>,
    /// Families that failed, with the reason.
    pub failed: Vec<(Family, String)>,
}

/// Fits every family under the sample's scheme and ranks them by AIC.
pub fn aic_table(sample: &CensoredSample) -> Result<AicTable> {
    if sample.len() < 2 {
        return Err(Error::InvalidSample(format!(
            "at least 2 observations required, got {}",
            sample.len()
        )));
    }
    let ctx = LogLikContext::new(sample)?;
    let mut ranked = Vec::new();
    let mut failed = Vec::new();
    for family in Family::ALL {
        match fit_context(&ctx, family) {
            Ok(f) if f.converged => ranked.push(f),
            Ok(_) => failed.push((family, "optimizer did not converge".to_string())),
            Err(e) => failed.push((family, e.to_string())),
        }
    }
    ranked.sort_by(|a, b| a.aic.total_cmp(&b.aic).then(a.family.cmp(&b.family)));
    Ok(AicTable { ranked, failed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::censoring::parse_dataset;
    use approx::assert_relative_eq;

    #[test]
    fn quadratic_information_is_twice_identity() {
        let (a, b) = (1.7, 0.4);
        let info = numeric_information(|t| Ok(-(t[0] - a).powi(2) - (t[1] - b).powi(2)), &[1.5, 0.6]).unwrap();
        assert_relative_eq!(info[0][0], 2.0, max_relative = 1e-6);
        assert_relative_eq!(info[1][1], 2.0, max_relative = 1e-6);
        assert!(info[0][1].abs() < 1e-6);
    }

    #[test]
    fn flat_direction_is_singular() {
        let r = numeric_information(|t| Ok(-(t[0] - 1.0).powi(2)), &[1.0, 1.0]);
        assert!(matches!(r, Err(Error::SingularInformation)));
    }

    #[test]
    fn normal_quantile_95() {
        assert_relative_eq!(normal_quantile(0.95).unwrap(), 1.959_963_984_540_054, max_relative = 1e-9);
        assert!(normal_quantile(1.0).is_err());
    }

    fn dummy_fit(est: [f64; 2], se: [f64; 2]) -> FitResult {
        FitResult {
            family: Family::WeightedLindley,
            scheme: Scheme::Complete,
            estimates: est,
            std_errors: se,
            ci_95: [(0.0, 0.0); 2],
            loglik_max: 0.0,
            aic: 4.0,
            hessian_obs: [[-1.0, 0.0], [0.0, -1.0]],
            score: [0.0; 2],
            converged: true,
            iterations: 1,
        }
    }

    #[test]
    fn wald_interval_shapes() {
        let ci = wald_ci(&dummy_fit([2.0, 3.0], [0.0, 0.5]), 0.95).unwrap();
        assert_eq!(ci[0], (2.0, 2.0));
        assert_relative_eq!(0.5 * (ci[1].0 + ci[1].1), 3.0, max_relative = 1e-15);
        assert_relative_eq!(ci[1].1 - 3.0, 1.959_963_984_540_054 * 0.5, max_relative = 1e-9);
        assert!(wald_ci(&dummy_fit([2.0, 3.0], [f64::NAN, 0.5]), 0.95).is_err());
    }

    #[test]
    fn moment_start_inverts_moments() {
        let p = WLParams::new(0.8, 2.5).unwrap();
        let (m, v) = p.moments();
        let [l, phi] = wl_moment_start(m, v).unwrap();
        assert_relative_eq!(l, 0.8, max_relative = 1e-8);
        assert_relative_eq!(phi, 2.5, max_relative = 1e-8);
    }

    #[test]
    fn family_parsing() {
        assert_eq!("wl".parse::<Family>().unwrap(), Family::WeightedLindley);
        assert_eq!("Weibull".parse::<Family>().unwrap(), Family::Weibull);
        assert!("lognormal".parse::<Family>().is_err());
    }

    #[test]
    fn comparison_survival_starts_at_one() {
        for family in Family::ALL {
            let m = ComparisonModel::new(family, [1.3, 0.7]).unwrap();
            assert_eq!(m.survival(0.0).unwrap(), 1.0);
        }
        assert!(ComparisonModel::new(Family::Gamma, [0.0, 1.0]).is_err());
    }

    #[test]
    fn family_scores_match_finite_differences() {
        let s = parse_dataset("time,status\n0.3,1\n1.2,0\n0.8,1\n2.5,1\n0.5,0\n1.9,1\n").unwrap();
        let ctx = LogLikContext::new(&s).unwrap();
        for family in [Family::Weibull, Family::Gamma] {
            let theta = [1.4, 0.9];
            let g = family.score(&theta, &ctx).unwrap();
            for i in 0..2 {
                let h = 1e-6 * theta[i];
                let mut up = theta;
                let mut dn = theta;
                up[i] += h;
                dn[i] -= h;
                let fd = (family.loglik(&up, &ctx).unwrap() - family.loglik(&dn, &ctx).unwrap()) / (2.0 * h);
                assert_relative_eq!(g[i], fd, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn too_small_or_all_censored() {
        let one = parse_dataset("time,status\n1,1\n").unwrap();
        assert!(matches!(fit(&one, Family::WeightedLindley), Err(Error::InvalidSample(_))));
        let none = parse_dataset("time,status\n1,0\n2,0\n").unwrap();
        assert!(matches!(fit(&none, Family::WeightedLindley), Err(Error::AllCensored)));
    }
}
