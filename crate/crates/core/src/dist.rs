//! The Weighted Lindley distribution WL(λ, φ).
//!
//! Density `f(t) = λ^{φ+1} / ((λ+φ) Γ(φ)) · t^{φ-1} (1+t) e^{-λt}`, a mixture of
//! Gamma(φ, λ) with weight `λ/(λ+φ)` and Gamma(φ+1, λ) with the complement.
//! Everything is evaluated on the log scale first.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::special::{ln_gamma_unchecked, log_upper_inc_gamma};

/// Parameters of WL(λ, φ): `lambda` is the rate, `phi` the shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WLParams {
    lambda: f64,
    phi: f64,
}

impl WLParams {
    pub fn new(lambda: f64, phi: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) || !(phi.is_finite() && phi > 0.0) {
            return Err(domain(format!(
                "WL parameters must be finite and positive, got lambda={lambda}, phi={phi}"
            )));
        }
        Ok(Self { lambda, phi })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Weight of the Gamma(φ, λ) component, `λ/(λ+φ)`.
    pub fn mixture_weight(&self) -> f64 {
        self.lambda / (self.lambda + self.phi)
    }

    /// `log(λ^{φ+1} / ((λ+φ) Γ(φ)))`
    fn log_norm(&self) -> f64 {
        (self.phi + 1.0) * self.lambda.ln() - (self.lambda + self.phi).ln() - ln_gamma_unchecked(self.phi)
    }

    pub fn log_pdf(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 || t.is_infinite() {
            return Err(domain(format!("pdf requires finite t >= 0, got {t}")));
        }
        if t == 0.0 {
            return if self.phi > 1.0 {
                Ok(f64::NEG_INFINITY)
            } else if self.phi == 1.0 {
                Ok(self.log_norm())
            } else {
                Err(domain(format!("density diverges at t = 0 for phi = {} < 1", self.phi)))
            };
        }
        Ok(self.log_norm() + (self.phi - 1.0) * t.ln() + t.ln_1p() - self.lambda * t)
    }

    pub fn pdf(&self, t: f64) -> Result<f64> {
        self.log_pdf(t).map(f64::exp)
    }

    /// `log S(t)`, computed as a log-sum-exp of the two numerator terms
    /// `(λ+φ)Γ(φ, λt)` and `(λt)^φ e^{-λt}`.
    pub fn log_survival(&self, t: f64) -> Result<f64> {
        if t.is_nan() || t < 0.0 {
            return Err(domain(format!("survival requires t >= 0, got {t}")));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        if t.is_infinite() {
            return Ok(f64::NEG_INFINITY);
        }
        let x = self.lambda * t;
        let sum_lp = (self.lambda + self.phi).ln();
        let log_gamma_term = sum_lp + log_upper_inc_gamma(self.phi, x)?;
        let log_power_term = self.phi * x.ln() - x;
        let log_s = log_add_exp(log_gamma_term, log_power_term) - sum_lp - ln_gamma_unchecked(self.phi);
        Ok(log_s.min(0.0))
    }

    pub fn survival(&self, t: f64) -> Result<f64> {
        self.log_survival(t).map(f64::exp)
    }

    pub fn cdf(&self, t: f64) -> Result<f64> {
        Ok(-self.log_survival(t)?.exp_m1())
    }

    pub fn log_hazard(&self, t: f64) -> Result<f64> {
        let log_s = self.log_survival(t)?;
        if log_s == f64::NEG_INFINITY {
            return Err(domain(format!("survival underflows at t = {t}; hazard overflows")));
        }
        Ok(self.log_pdf(t)? - log_s)
    }

    pub fn hazard(&self, t: f64) -> Result<f64> {
        self.log_hazard(t).map(f64::exp)
    }

    /// Mean and variance.
    pub fn moments(&self) -> (f64, f64) {
        let (l, p) = (self.lambda, self.phi);
        let s = l + p;
        let mean = p * (s + 1.0) / (l * s);
        let var = ((p + 1.0) * s * s - l * l) / (l * l * s * s);
        (mean, var)
    }

    /// Smallest `t` with `1 - S(t) = p`, to 1e-10 in probability.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(domain(format!("quantile requires 0 < p < 1, got {p}")));
        }
        if p > 1.0 - 1e-12 {
            return Err(Error::NoConvergence(format!(
                "quantile at p = {p} lies beyond the bracketing limit 1 - 1e-12"
            )));
        }
        let target_surv = 1.0 - p;
        let (mean, var) = self.moments();
        let mut lo = 0.0;
        let mut hi = mean + 20.0 * var.sqrt();
        let mut expansions = 0;
        while self.survival(hi)? > target_surv {
            lo = hi;
            hi *= 2.0;
            expansions += 1;
            if expansions > 60 {
                return Err(Error::NoConvergence(format!("could not bracket quantile {p}")));
            }
        }
        // residual(t) = F(t) - p, increasing in t
        let residual = |t: f64| -> Result<f64> { Ok(target_surv - self.survival(t)?) };
        for _ in 0..200 {
            if hi - lo < 1e-6 * hi.max(1e-300) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if residual(mid)? < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut t = 0.5 * (lo + hi);
        for _ in 0..100 {
            let r = residual(t)?;
            if r.abs() <= 1e-12 {
                return Ok(t);
            }
            if r < 0.0 {
                lo = t;
            } else {
                hi = t;
            }
            let density = self.pdf(t)?;
            let newton = t - r / density;
            t = if density > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= f64::EPSILON * hi {
                break;
            }
        }
        if residual(t)?.abs() <= 1e-10 {
            Ok(t)
        } else {
            Err(Error::NoConvergence(format!("quantile {p} did not reach tolerance")))
        }
    }

    /// `n` independent draws from the two-component gamma mixture.
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(domain("sample size must be at least 1"));
        }
        let w = self.mixture_weight();
        Ok((0..n)
            .map(|_| {
                let shape = if rng.gen::<f64>() < w { self.phi } else { self.phi + 1.0 };
                gamma_variate(shape, rng) / self.lambda
            })
            .collect())
    }
}

pub(crate) fn log_add_exp(a: f64, b: f64) -> f64 {
    let hi = a.max(b);
    if hi == f64::NEG_INFINITY {
        return hi;
    }
    hi + (-(a - b).abs()).exp().ln_1p()
}

/// Marsaglia–Tsang draw from Gamma(shape, 1); shapes below one are boosted
/// through `G(a) = G(a+1) · U^{1/a}`.
pub fn gamma_variate<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    if shape < 1.0 {
        let u: f64 = 1.0 - rng.gen::<f64>();
        return gamma_variate(shape + 1.0, rng) * u.powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let v = 1.0 + c * x;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u: f64 = 1.0 - rng.gen::<f64>();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 || u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}
