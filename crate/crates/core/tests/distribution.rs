use approx::assert_relative_eq;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wlsurv::special::{integrate, integrate_semi_infinite, log_gamma, QuadratureConfig};
use wlsurv::WLParams;

fn wl(lambda: f64, phi: f64) -> WLParams {
    WLParams::new(lambda, phi).unwrap()
}

const SETTINGS: [(f64, f64); 4] = [(2.0, 0.5), (3.0, 2.0), (0.0978, 21.7545), (0.526, 0.6764)];

fn tight() -> QuadratureConfig {
    QuadratureConfig::new(1e-12, 0.0, 2000).unwrap()
}

#[test]
fn density_integrates_to_one() {
    for (l, p) in SETTINGS {
        let d = wl(l, p);
        let (mean, _) = d.moments();
        // split at the mean so the peak and the singularity at 0 for φ < 1 are resolved
        let head = integrate(|t| if t > 0.0 { d.pdf(t).unwrap() } else { 0.0 }, 0.0, mean, &tight()).unwrap();
        let tail = integrate_semi_infinite(|t| d.pdf(t).unwrap(), mean, mean, &tight()).unwrap();
        assert!((head + tail - 1.0).abs() < 1e-8, "λ={l}, φ={p}: {}", head + tail);
    }
}

#[test]
fn survival_is_one_minus_integrated_density() {
    for (l, p) in SETTINGS {
        let d = wl(l, p);
        let (mean, sd) = {
            let (m, v) = d.moments();
            (m, v.sqrt())
        };
        for t in [0.25 * mean, mean, mean + 2.0 * sd] {
            let tail = integrate_semi_infinite(|s| d.pdf(s).unwrap(), t, mean, &tight()).unwrap();
            assert_relative_eq!(d.survival(t).unwrap(), tail, max_relative = 1e-8);
        }
    }
}

#[test]
fn hazard_times_survival_is_density() {
    for (l, p) in SETTINGS {
        let d = wl(l, p);
        let (mean, _) = d.moments();
        for k in 1..=20 {
            let t = mean * k as f64 / 8.0;
            let lhs = d.hazard(t).unwrap() * d.survival(t).unwrap();
            assert_relative_eq!(lhs, d.pdf(t).unwrap(), max_relative = 1e-10);
        }
    }
}

fn gamma_pdf(shape: f64, rate: f64, t: f64) -> f64 {
    (shape * rate.ln() + (shape - 1.0) * t.ln() - rate * t - log_gamma(shape).unwrap()).exp()
}

#[test]
fn density_is_two_component_gamma_mixture() {
    for (l, p) in SETTINGS {
        let d = wl(l, p);
        let w = l / (l + p);
        assert_relative_eq!(d.mixture_weight(), w, max_relative = 1e-15);
        for k in 1..=30 {
            let t = k as f64 * 0.2 * (p + 1.0) / l;
            let mix = w * gamma_pdf(p, l, t) + (1.0 - w) * gamma_pdf(p + 1.0, l, t);
            assert_relative_eq!(d.pdf(t).unwrap(), mix, max_relative = 1e-12);
        }
    }
}

#[test]
fn moments_match_numerical_integration() {
    for (l, p) in SETTINGS {
        let d = wl(l, p);
        let (mean, var) = d.moments();
        let m1 = integrate_semi_infinite(|t| t * d.pdf(t).unwrap_or(0.0), 0.0, mean, &tight()).unwrap();
        let m2 = integrate_semi_infinite(|t| t * t * d.pdf(t).unwrap_or(0.0), 0.0, mean, &tight()).unwrap();
        assert_relative_eq!(m1, mean, max_relative = 1e-9);
        assert_relative_eq!(m2 - m1 * m1, var, max_relative = 1e-8);
    }
}

/// One-sample Kolmogorov–Smirnov statistic against the WL cdf.
fn ks_statistic(d: &WLParams, mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = d.cdf(x).unwrap();
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

#[test]
fn sampler_passes_kolmogorov_smirnov() {
    // asymptotic 1% critical value 1.628 / √n
    let n = 4000;
    let critical = 1.628 / (n as f64).sqrt();
    for (seed, (l, p)) in [(1u64, (2.0, 0.5)), (2, (3.0, 2.0)), (3, (0.0978, 21.7545))] {
        let d = wl(l, p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let stat = ks_statistic(&d, d.sample(n, &mut rng).unwrap());
        assert!(stat < critical, "λ={l}, φ={p}: D = {stat} >= {critical}");
    }
}

#[test]
fn sample_mean_agrees_with_moments() {
    let d = wl(2.0, 0.5);
    let (mean, var) = d.moments();
    let n = 1_000_000;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let xs = d.sample(n, &mut rng).unwrap();
    let m = xs.iter().sum::<f64>() / n as f64;
    assert!((m - mean).abs() < 4.0 * (var / n as f64).sqrt(), "{m} vs {mean}");
}

#[test]
fn high_precision_density_and_quantile() {
    assert_relative_eq!(wl(0.0978, 21.7545).pdf(200.0).unwrap(), 0.007_403_886_451_591_152_8, max_relative = 1e-10);
    assert_relative_eq!(wl(2.0, 0.5).survival(0.8).unwrap(), 0.131_271_621_595_748_5, max_relative = 1e-12);
    assert_relative_eq!(wl(2.0, 0.5).quantile(0.8).unwrap(), 0.589_533_646_540_810_7, max_relative = 1e-9);
}

proptest! {
    #[test]
    fn survival_is_monotone_and_bounded(l in 0.05f64..20.0, p in 0.05f64..30.0, a in 0.0f64..50.0, b in 0.0f64..50.0) {
        let d = wl(l, p);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (s_lo, s_hi) = (d.survival(lo / l).unwrap(), d.survival(hi / l).unwrap());
        prop_assert!((0.0..=1.0).contains(&s_lo) && (0.0..=1.0).contains(&s_hi));
        prop_assert!(s_hi <= s_lo + 1e-15);
    }

    #[test]
    fn quantile_inverts_cdf(l in 0.05f64..20.0, p in 0.05f64..30.0, q in 0.001f64..0.999) {
        let d = wl(l, p);
        let t = d.quantile(q).unwrap();
        prop_assert!((d.cdf(t).unwrap() - q).abs() < 1e-9);
    }

    #[test]
    fn log_density_is_finite_inside_support(l in 0.01f64..100.0, p in 0.01f64..100.0, x in 1e-3f64..1e3) {
        let d = wl(l, p);
        prop_assert!(d.log_pdf(x / l).unwrap().is_finite());
        prop_assert!(d.log_survival(x / l).unwrap() <= 0.0);
    }
}
