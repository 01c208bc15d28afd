//! Scalar special functions: log-gamma, digamma, the upper incomplete gamma
//! function (linear and log scale), and the log-weighted tail integral
//! `Ψ(k, x) = ∫ₓ^∞ w^{k-1} log(w) e^{-w} dw`.
//!
//! Also hosts the adaptive Gauss–Kronrod integrator used by `Ψ` and by the
//! calibration code.

use crate::error::{domain, Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const MAX_SERIES_ITER: usize = 10_000;
const FPMIN: f64 = 1e-300;

/// Tolerances for adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_subdivisions: 200,
        }
    }
}

impl QuadratureConfig {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || !(abs_tol >= 0.0) || max_subdivisions == 0 {
            return Err(domain(format!(
                "invalid quadrature config: rel_tol={rel_tol}, abs_tol={abs_tol}, max_subdivisions={max_subdivisions}"
            )));
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
        })
    }
}

// Lanczos approximation, g = 607/128, 15 terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_76e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_64e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

fn ln_gamma_lanczos(a: f64) -> f64 {
    let z = a - 1.0;
    let mut sum = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + sum.ln()
}

fn ln_gamma_stirling(a: f64) -> f64 {
    let inv = 1.0 / a;
    let inv2 = inv * inv;
    // Bernoulli-number correction terms B_{2k} / (2k (2k-1) a^{2k-1})
    let series = inv
        * (1.0 / 12.0
            - inv2
                * (1.0 / 360.0
                    - inv2
                        * (1.0 / 1260.0
                            - inv2 * (1.0 / 1680.0 - inv2 * (1.0 / 1188.0 - inv2 * 691.0 / 360_360.0)))));
    (a - 0.5) * a.ln() - a + LN_SQRT_2PI + series
}

/// `log Γ(a)` for `a > 0`.
pub fn log_gamma(a: f64) -> Result<f64> {
    if !a.is_finite() || a <= 0.0 {
        return Err(domain(format!("log_gamma requires finite a > 0, got {a}")));
    }
    Ok(ln_gamma_unchecked(a))
}

pub(crate) fn ln_gamma_unchecked(a: f64) -> f64 {
    if a >= 10.0 {
        ln_gamma_stirling(a)
    } else if a < 0.5 {
        // Γ(a) = Γ(a+1)/a keeps the Lanczos sum away from its pole.
        ln_gamma_lanczos(a + 1.0) - a.ln()
    } else {
        ln_gamma_lanczos(a)
    }
}

/// Digamma `ψ(a) = d/da log Γ(a)` for `a > 0`.
pub fn digamma(a: f64) -> Result<f64> {
    if !a.is_finite() || a <= 0.0 {
        return Err(domain(format!("digamma requires finite a > 0, got {a}")));
    }
    Ok(digamma_unchecked(a))
}

pub(crate) fn digamma_unchecked(mut a: f64) -> f64 {
    let mut shift = 0.0;
    while a < 8.0 {
        shift -= 1.0 / a;
        a += 1.0;
    }
    let inv2 = 1.0 / (a * a);
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32_760.0)))));
    shift + a.ln() - 0.5 / a - tail
}

fn check_inc_gamma_args(a: f64, x: f64) -> Result<()> {
    if !a.is_finite() || a <= 0.0 {
        return Err(domain(format!("incomplete gamma requires finite a > 0, got {a}")));
    }
    if x.is_nan() || x < 0.0 {
        return Err(domain(format!("incomplete gamma requires x >= 0, got {x}")));
    }
    Ok(())
}

/// Series for the regularized lower function P(a, x); valid for any x but
/// used only where it converges quickly.
fn lower_regularized_series(a: f64, x: f64) -> Result<f64> {
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut denom = a;
    for _ in 0..MAX_SERIES_ITER {
        denom += 1.0;
        term *= x / denom;
        sum += term;
        if term.abs() < sum.abs() * f64::EPSILON {
            let log_p = a * x.ln() - x - ln_gamma_unchecked(a) + sum.ln();
            return Ok(log_p.exp());
        }
    }
    Err(Error::NoConvergence(format!(
        "incomplete gamma series at a={a}, x={x}"
    )))
}

/// Modified Lentz evaluation of the continued fraction for Γ(a, x);
/// returns `log Γ(a, x)`.
fn log_upper_continued_fraction(a: f64, x: f64) -> Result<f64> {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_SERIES_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b + an / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < f64::EPSILON {
            return Ok(a * x.ln() - x + h.ln());
        }
    }
    Err(Error::NoConvergence(format!(
        "incomplete gamma continued fraction at a={a}, x={x}"
    )))
}

/// `log Γ(a, x)`, finite for every valid input (no underflow at large x).
pub fn log_upper_inc_gamma(a: f64, x: f64) -> Result<f64> {
    check_inc_gamma_args(a, x)?;
    if x == 0.0 {
        return Ok(ln_gamma_unchecked(a));
    }
    if x.is_infinite() {
        return Ok(f64::NEG_INFINITY);
    }
    if x >= a + 1.0 || (a < 1.0 && x > 1.0) {
        log_upper_continued_fraction(a, x)
    } else {
        let p = lower_regularized_series(a, x)?;
        Ok(ln_gamma_unchecked(a) + (-p).ln_1p())
    }
}

/// Upper incomplete gamma `Γ(a, x) = ∫ₓ^∞ w^{a-1} e^{-w} dw`.
pub fn upper_inc_gamma(a: f64, x: f64) -> Result<f64> {
    log_upper_inc_gamma(a, x).map(f64::exp)
}

/// Regularized upper incomplete gamma `Q(a, x) = Γ(a, x) / Γ(a)`.
pub fn upper_regularized(a: f64, x: f64) -> Result<f64> {
    Ok((log_upper_inc_gamma(a, x)? - ln_gamma_unchecked(a)).exp())
}

/// `Ψ(k, x) = ∫ₓ^∞ w^{k-1} log(w) e^{-w} dw`, the derivative of `Γ(a, x)`
/// with respect to `a` at `a = k`.
pub fn psi_integral(k: f64, x: f64) -> Result<f64> {
    psi_integral_with(k, x, &QuadratureConfig::default())
}

pub fn psi_integral_with(k: f64, x: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let log_scale = log_upper_inc_gamma(k, x)?;
    Ok(psi_integral_scaled(k, x, log_scale, cfg)? * log_scale.exp())
}

/// `Ψ(k, x) · e^{-log_scale}`. With `log_scale = log Γ(k, x)` this is the
/// ratio `Ψ(k, x) / Γ(k, x)`, which stays representable when both factors
/// underflow.
pub fn psi_integral_scaled(k: f64, x: f64, log_scale: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_inc_gamma_args(k, x)?;
    if !log_scale.is_finite() {
        return Err(domain(format!("psi_integral scale must be finite, got {log_scale}")));
    }
    let mut total = 0.0;
    if x < 1.0 {
        // w = e^{-y} on (x, 1]: integrand becomes -y e^{-k y - e^{-y}}, smooth with an
        // exponential tail even when x = 0 and k < 1.
        let lower = move |y: f64| -> f64 {
            if y == 0.0 {
                return 0.0;
            }
            -y * (-k * y - (-y).exp() - log_scale).exp()
        };
        let y_max = if x == 0.0 { f64::INFINITY } else { -x.ln() };
        total += if y_max.is_infinite() {
            integrate_semi_infinite(lower, 0.0, 1.0 / k, cfg)?
        } else {
            integrate(lower, 0.0, y_max, cfg)?
        };
    }
    let start = x.max(1.0);
    let upper = move |w: f64| -> f64 {
        let lw = w.ln();
        lw * ((k - 1.0) * lw - w - log_scale).exp()
    };
    total += integrate_semi_infinite(upper, start, k.max(1.0), cfg)?;
    Ok(total)
}

// Gauss–Kronrod 10/21 nodes and weights on [-1, 1].
const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_2,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_352,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_5,
    0.149_445_554_002_916_9,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    estimate: f64,
    error: f64,
    l1: f64,
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Segment {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut l1 = WGK[10] * fc.abs();
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod += WGK[j] * (f1 + f2);
        l1 += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let estimate = kronrod * half;
    let raw_err = ((kronrod - gauss) * half).abs();
    let l1 = l1 * half.abs();
    Segment {
        lo,
        hi,
        estimate,
        error: raw_err.max(50.0 * f64::EPSILON * l1),
        l1,
    }
}

/// Adaptive Gauss–Kronrod (10/21) quadrature of `f` over the finite interval `[lo, hi]`.
///
/// The segment with the largest error estimate is bisected until the total
/// error falls below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(domain("integrate requires finite limits; use integrate_semi_infinite"));
    }
    if lo == hi {
        return Ok(0.0);
    }
    let mut segments = vec![gauss_kronrod(&f, lo, hi)];
    let mut subdivisions = 0;
    loop {
        let estimate: f64 = segments.iter().map(|s| s.estimate).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if !estimate.is_finite() || !error.is_finite() {
            return Err(domain(format!(
                "non-finite integrand on [{lo}, {hi}]"
            )));
        }
        let l1: f64 = segments.iter().map(|s| s.l1).sum();
        let target = cfg.abs_tol.max(cfg.rel_tol * estimate.abs());
        if error <= target || error <= 100.0 * f64::EPSILON * l1 {
            return Ok(estimate);
        }
        if subdivisions >= cfg.max_subdivisions {
            return Err(Error::ToleranceNotReached {
                estimate,
                error,
                subdivisions,
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.error.total_cmp(&b.1.error))
            .expect("at least one segment");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.lo + seg.hi);
        segments.push(gauss_kronrod(&f, seg.lo, mid));
        segments.push(gauss_kronrod(&f, mid, seg.hi));
        subdivisions += 1;
    }
}

/// Integral of `f` over `[lo, ∞)` via `w = lo + scale·s/(1-s)`, `s ∈ [0, 1)`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    scale: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if !lo.is_finite() || !(scale > 0.0) {
        return Err(domain("integrate_semi_infinite requires finite lower limit and positive scale"));
    }
    let mapped = |s: f64| -> f64 {
        let one_minus = 1.0 - s;
        let w = lo + scale * s / one_minus;
        let v = f(w);
        if v == 0.0 {
            0.0
        } else {
            v * scale / (one_minus * one_minus)
        }
    };
    integrate(mapped, 0.0, 1.0, cfg)
}
