use approx::assert_relative_eq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wlsurv::censoring::{apply_type1, parse_dataset};
use wlsurv::dist::gamma_variate;
use wlsurv::estimation::{aic_table, fit, maximize, observed_information, Coordinates, Family};
use wlsurv::optim::BfgsOptions;
use wlsurv::{CensoredSample, LogLikContext, Scheme, WLParams};

fn devices() -> CensoredSample {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/devices.csv")).unwrap();
    parse_dataset(&text).unwrap().with_scheme(Scheme::TypeII { r: 49 }).unwrap()
}

#[test]
fn devices_type2_fit_reproduces_published_estimates() {
    let f = fit(&devices(), Family::WeightedLindley).unwrap();
    assert!(f.converged);
    let [lambda, phi] = f.estimates;
    assert!((phi - 0.6764).abs() < 0.005, "phi {phi}");
    assert!((lambda - 0.5260).abs() < 0.005, "lambda {lambda}");
    assert_relative_eq!(f.std_errors[1], 0.1341, max_relative = 0.05);
    assert_relative_eq!(f.std_errors[0], 0.0954, max_relative = 0.05);
    assert!((f.aic - 185.1739).abs() < 0.01, "aic {}", f.aic);
}

#[test]
fn fit_invariants_hold() {
    let f = fit(&devices(), Family::WeightedLindley).unwrap();
    for i in 0..2 {
        assert!(f.ci_95[i].0 < f.estimates[i] && f.estimates[i] < f.ci_95[i].1);
        assert!(f.score[i].abs() < 1e-4, "score {:?}", f.score);
    }
    assert_eq!(f.aic, -2.0 * f.loglik_max + 4.0);
    let h = f.hessian_obs;
    assert!(h[0][0] < 0.0 && h[0][0] * h[1][1] - h[0][1] * h[1][0] > 0.0);
    assert_eq!(h[0][1], h[1][0]);
    let ctx = LogLikContext::new(&devices()).unwrap();
    let info = observed_information(&f.wl_params().unwrap(), &ctx).unwrap();
    assert_eq!(info[0][0], -h[0][0]);
}

#[test]
fn devices_ranking_puts_weighted_lindley_first() {
    let table = aic_table(&devices()).unwrap();
    assert!(table.failed.is_empty());
    let order: Vec<Family> = table.ranked.iter().map(|f| f.family).collect();
    assert_eq!(order, vec![Family::WeightedLindley, Family::Gamma, Family::Weibull]);
    // type II constant log(n!/(n-r)!) shifts every loglik equally; ranking is unaffected
    let shift: f64 = (12..=60).map(|k| (k as f64).ln()).sum();
    let mut shifted: Vec<_> = table.ranked.iter().map(|f| (f.aic - 2.0 * shift, f.family)).collect();
    shifted.sort_by(|a, b| a.0.total_cmp(&b.0));
    assert_eq!(shifted.iter().map(|x| x.1).collect::<Vec<_>>(), order);
}

#[test]
fn log_and_original_coordinates_agree() {
    let ctx = LogLikContext::new(&devices()).unwrap();
    let opts = BfgsOptions::default();
    for start in [[1.0, 1.0], [0.3, 0.4]] {
        let a = maximize(Family::WeightedLindley, &ctx, start, Coordinates::Log, &opts).unwrap();
        let b = maximize(Family::WeightedLindley, &ctx, start, Coordinates::Original, &opts).unwrap();
        assert!(a.converged && b.converged);
        assert!((a.loglik - b.loglik).abs() < 1e-8, "{} vs {}", a.loglik, b.loglik);
    }
}

#[test]
fn large_complete_sample_recovers_parameters() {
    let p = WLParams::new(3.0, 2.0).unwrap();
    let times = p.sample(100_000, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
    let f = fit(&CensoredSample::complete(&times).unwrap(), Family::WeightedLindley).unwrap();
    assert!(f.converged);
    assert_relative_eq!(f.estimates[0], 3.0, max_relative = 0.02);
    assert_relative_eq!(f.estimates[1], 2.0, max_relative = 0.02);
}

#[test]
fn comparison_families_recover_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let weibull: Vec<f64> = (0..20_000).map(|_| 2.5 * (-(1.0 - rng.gen::<f64>()).ln()).powf(1.0 / 1.7)).collect();
    let f = fit(&CensoredSample::complete(&weibull).unwrap(), Family::Weibull).unwrap();
    assert_relative_eq!(f.estimates[0], 1.7, max_relative = 0.03);
    assert_relative_eq!(f.estimates[1], 2.5, max_relative = 0.03);

    let gamma: Vec<f64> = (0..20_000).map(|_| gamma_variate(3.2, &mut rng) / 0.8).collect();
    let censored = apply_type1(&gamma, 5.0).unwrap();
    assert!(censored.failures() < gamma.len());
    let f = fit(&censored, Family::Gamma).unwrap();
    assert_relative_eq!(f.estimates[0], 3.2, max_relative = 0.05);
    assert_relative_eq!(f.estimates[1], 0.8, max_relative = 0.05);
}

#[test]
fn fit_ignores_row_order() {
    let d = devices();
    let mut obs = d.observations().to_vec();
    obs.reverse();
    obs.rotate_left(17);
    let shuffled = CensoredSample::new(obs, d.scheme()).unwrap();
    for family in Family::ALL {
        let a = fit(&d, family).unwrap();
        let b = fit(&shuffled, family).unwrap();
        for i in 0..2 {
            assert!((a.estimates[i] - b.estimates[i]).abs() <= 1e-12);
            assert!((a.std_errors[i] - b.std_errors[i]).abs() <= 1e-12);
        }
        assert!((a.loglik_max - b.loglik_max).abs() <= 1e-12);
        assert_eq!(a.iterations, b.iterations);
    }
}

#[test]
fn scale_change_rescales_rate_only() {
    // WL is not closed under scaling, but Weibull scale and Gamma rate are
    let d = devices();
    let scaled: Vec<f64> = d.observations().iter().filter(|o| o.failed).map(|o| 10.0 * o.time).collect();
    let raw: Vec<f64> = d.observations().iter().filter(|o| o.failed).map(|o| o.time).collect();
    let a = fit(&CensoredSample::complete(&raw).unwrap(), Family::Gamma).unwrap();
    let b = fit(&CensoredSample::complete(&scaled).unwrap(), Family::Gamma).unwrap();
    assert_relative_eq!(a.estimates[0], b.estimates[0], max_relative = 1e-6);
    assert_relative_eq!(a.estimates[1], 10.0 * b.estimates[1], max_relative = 1e-6);
}
