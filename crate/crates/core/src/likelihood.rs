//! Censored-data log-likelihood and analytic score for WL(λ, φ).
//!
//! Every scheme reduces to
//! `ℓ = Σ δᵢ log f(tᵢ) + Σ (1-δᵢ) log S(tᵢ)`,
//! where type I and type II samples simply put all censored mass at `t_c`
//! or `t_(r)`. The type II factor `n!/(n-r)!` is parameter-free and left out.

use crate::censoring::{CensoredSample, Scheme};
use crate::dist::{log_add_exp, WLParams};
use crate::error::{Error, Result};
use crate::special::{
    digamma_unchecked, ln_gamma_unchecked, log_upper_inc_gamma, psi_integral_scaled, QuadratureConfig,
};

/// A censored sample prepared for repeated likelihood evaluation.
///
/// Observations are sorted on construction so that every sum is accumulated
/// in the same order regardless of input order.
#[derive(Debug, Clone)]
pub struct LogLikContext {
    scheme: Scheme,
    n: usize,
    failure_times: Vec<f64>,
    /// Distinct censoring times with multiplicities, ascending.
    censored: Vec<(f64, usize)>,
    sum_log_t: f64,
    sum_log1p_t: f64,
    sum_t: f64,
}

impl LogLikContext {
    pub fn new(sample: &CensoredSample) -> Result<Self> {
        let mut failure_times: Vec<f64> = sample
            .observations()
            .iter()
            .filter(|o| o.failed)
            .map(|o| o.time)
            .collect();
        if failure_times.is_empty() {
            return Err(Error::AllCensored);
        }
        failure_times.sort_by(f64::total_cmp);
        let mut cens: Vec<f64> = sample
            .observations()
            .iter()
            .filter(|o| !o.failed)
            .map(|o| o.time)
            .collect();
        cens.sort_by(f64::total_cmp);
        let mut censored: Vec<(f64, usize)> = Vec::new();
        for t in cens {
            match censored.last_mut() {
                Some((last, count)) if *last == t => *count += 1,
                _ => censored.push((t, 1)),
            }
        }
        let sum_log_t = failure_times.iter().map(|t| t.ln()).sum();
        let sum_log1p_t = failure_times.iter().map(|t| t.ln_1p()).sum();
        let sum_t = failure_times.iter().sum();
        Ok(Self {
            scheme: sample.scheme(),
            n: sample.len(),
            failure_times,
            censored,
            sum_log_t,
            sum_log1p_t,
            sum_t,
        })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of failures `d` (equals `r` under type II).
    pub fn d(&self) -> usize {
        self.failure_times.len()
    }

    /// Sorted failure times.
    pub fn failure_times(&self) -> &[f64] {
        &self.failure_times
    }

    /// Distinct censoring times and how many observations share each.
    pub fn censored(&self) -> &[(f64, usize)] {
        &self.censored
    }

    /// `t_c` for type I, `t_(r)` for type II.
    pub fn boundary_time(&self) -> Option<f64> {
        match self.scheme {
            Scheme::TypeI { t_c } => Some(t_c),
            Scheme::TypeII { .. } => self.failure_times.last().copied(),
            _ => None,
        }
    }

    pub fn sum_log_t(&self) -> f64 {
        self.sum_log_t
    }

    pub fn sum_log1p_t(&self) -> f64 {
        self.sum_log1p_t
    }

    pub fn sum_t(&self) -> f64 {
        self.sum_t
    }
}

fn failure_part(p: &WLParams, ctx: &LogLikContext) -> f64 {
    let (l, phi) = (p.lambda(), p.phi());
    let d = ctx.d() as f64;
    ctx.sum_log1p_t + (phi - 1.0) * ctx.sum_log_t - l * ctx.sum_t + d * (phi + 1.0) * l.ln()
        - d * (l + phi).ln()
        - d * ln_gamma_unchecked(phi)
}

/// Log-likelihood at `params`.
pub fn loglik(params: &WLParams, ctx: &LogLikContext) -> Result<f64> {
    let mut total = failure_part(params, ctx);
    for &(t, m) in &ctx.censored {
        total += m as f64 * params.log_survival(t)?;
    }
    if total.is_finite() {
        Ok(total)
    } else {
        Err(Error::Evaluation([params.lambda(), params.phi()]))
    }
}

/// Gradient `(∂ℓ/∂λ, ∂ℓ/∂φ)`.
pub fn score(params: &WLParams, ctx: &LogLikContext) -> Result<[f64; 2]> {
    score_with(params, ctx, &QuadratureConfig::default())
}

pub fn score_with(params: &WLParams, ctx: &LogLikContext, cfg: &QuadratureConfig) -> Result<[f64; 2]> {
    let (l, phi) = (params.lambda(), params.phi());
    let d = ctx.d() as f64;
    let inv_sum = 1.0 / (l + phi);
    let psi_phi = digamma_unchecked(phi);
    let mut g_lambda = d * (phi + 1.0) / l - d * inv_sum - ctx.sum_t;
    let mut g_phi = d * l.ln() - d * inv_sum - d * psi_phi + ctx.sum_log_t;

    for &(t, m) in &ctx.censored {
        // log S = log B - log(λ+φ) - log Γ(φ), B = (λ+φ)Γ(φ,x) + x^φ e^{-x}, x = λt
        let x = l * t;
        let log_gamma_tail = log_upper_inc_gamma(phi, x)?;
        let log_a = (l + phi).ln() + log_gamma_tail;
        let log_p = phi * x.ln() - x;
        let log_b = log_add_exp(log_a, log_p);
        let w_gamma = (log_gamma_tail - log_b).exp();
        let w_power = (log_p - log_b).exp();
        let w_a = (log_a - log_b).exp();
        let psi_ratio = psi_integral_scaled(phi, x, log_gamma_tail, cfg)?;

        let d_lambda = w_gamma - (1.0 + t) * w_power - inv_sum;
        let d_phi = w_gamma + w_a * psi_ratio + x.ln() * w_power - inv_sum - psi_phi;
        g_lambda += m as f64 * d_lambda;
        g_phi += m as f64 * d_phi;
    }
    if g_lambda.is_finite() && g_phi.is_finite() {
        Ok([g_lambda, g_phi])
    } else {
        Err(Error::Evaluation([l, phi]))
    }
}

/// `Σ log f(tᵢ)` for fully observed lifetimes.
pub fn loglik_complete(params: &WLParams, times: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for &t in times {
        if !(t > 0.0) {
            return Err(crate::error::domain(format!("lifetimes must be positive, got {t}")));
        }
        total += params.log_pdf(t)?;
    }
    Ok(total)
}
