use std::fs;
use std::path::Path;

use serde::Serialize;
use wlsurv::censoring::parse_dataset;
use wlsurv::estimation::{aic_table, fit as fit_model, ComparisonModel, Family};
use wlsurv::montecarlo::{run_study_with_threads, PreparedStudy, SimulationReport, StudyConfig, StudyScheme};
use wlsurv::report::FitReport;
use wlsurv::{kaplan_meier, shape_hint, ttt_curve, CensoredSample, Error, Scheme, WLParams};

use crate::manifest::{write_csv, write_json, RunManifest};
use crate::{config, ModelArg, SchemeArg, SchemeArgs, SimulateArgs};

pub const EXIT_INPUT: u8 = 1;
pub const EXIT_NO_CONVERGENCE: u8 = 2;
pub const EXIT_CALIBRATION: u8 = 3;

/// Points on the fitted-curve grid `[0, 1.1·max t]`.
const GRID_POINTS: usize = 200;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn no_convergence(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_NO_CONVERGENCE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoConvergence(_)
            | Error::Evaluation(_)
            | Error::BoundaryDrift(_)
            | Error::SingularInformation
            | Error::ExcessiveDiscards { .. }
            | Error::ToleranceNotReached { .. } => EXIT_NO_CONVERGENCE,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn load(path: &Path) -> Result<CensoredSample, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    parse_dataset(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn apply_scheme(sample: CensoredSample, args: &SchemeArgs) -> Result<CensoredSample, Failure> {
    let scheme = match args.scheme {
        SchemeArg::Random => return Ok(sample),
        SchemeArg::Complete => Scheme::Complete,
        SchemeArg::Type1 => Scheme::TypeI {
            t_c: args.tc.ok_or_else(|| Failure::input("--scheme type1 requires --tc"))?,
        },
        SchemeArg::Type2 => Scheme::TypeII {
            r: args.r.ok_or_else(|| Failure::input("--scheme type2 requires --r"))?,
        },
    };
    Ok(sample.with_scheme(scheme)?)
}

fn scheme_manifest(mut m: RunManifest, args: &SchemeArgs) -> RunManifest {
    m = m.flag("scheme", scheme_name(args.scheme));
    if let Some(tc) = args.tc {
        m = m.flag("tc", tc);
    }
    if let Some(r) = args.r {
        m = m.flag("r", r);
    }
    m
}

fn scheme_name(s: SchemeArg) -> &'static str {
    match s {
        SchemeArg::Random => "random",
        SchemeArg::Type1 => "type1",
        SchemeArg::Type2 => "type2",
        SchemeArg::Complete => "complete",
    }
}

fn family(model: ModelArg) -> Family {
    match model {
        ModelArg::Wl => Family::WeightedLindley,
        ModelArg::Weibull => Family::Weibull,
        ModelArg::Gamma => Family::Gamma,
    }
}

fn grid(sample: &CensoredSample) -> Vec<f64> {
    let hi = 1.1 * sample.max_time();
    (0..GRID_POINTS).map(|i| hi * i as f64 / (GRID_POINTS - 1) as f64).collect()
}

fn survival_column(model: &ComparisonModel, grid: &[f64]) -> Result<Vec<f64>, Failure> {
    Ok(grid.iter().map(|&t| model.survival(t)).collect::<wlsurv::Result<_>>()?)
}

pub fn fit(data: &Path, scheme: &SchemeArgs, model: ModelArg, out_dir: &Path) -> Result<(), Failure> {
    let sample = apply_scheme(load(data)?, scheme)?;
    let manifest = scheme_manifest(RunManifest::new("fit", &[data], out_dir), scheme).flag("model", family(model));
    let result = fit_model(&sample, family(model))?;

    let report = FitReport::from(&result);
    let json = write_json(out_dir, "fit.json", &manifest, &report)?;
    let ts = grid(&sample);
    let s = survival_column(&result.model(), &ts)?;
    let mut csv = String::from("time,survival\n");
    for (t, v) in ts.iter().zip(&s) {
        csv.push_str(&format!("{t},{v}\n"));
    }
    write_csv(out_dir, "survival_curve.csv", &manifest, &csv)?;
    print!("{json}");

    if result.converged {
        Ok(())
    } else {
        Err(Failure::no_convergence("optimizer did not converge; fit.json holds the last iterate"))
    }
}

#[derive(Serialize)]
struct FailedFamily {
    model: String,
    reason: String,
}

#[derive(Serialize)]
struct Comparison {
    ranked: Vec<FitReport>,
    failed: Vec<FailedFamily>,
}

pub fn compare(data: &Path, scheme: &SchemeArgs, out_dir: &Path) -> Result<(), Failure> {
    let sample = apply_scheme(load(data)?, scheme)?;
    let manifest = scheme_manifest(RunManifest::new("compare", &[data], out_dir), scheme);
    let table = aic_table(&sample)?;

    let comparison = Comparison {
        ranked: table.ranked.iter().map(FitReport::from).collect(),
        failed: table
            .failed
            .iter()
            .map(|(f, reason)| FailedFamily {
                model: f.short_name().to_string(),
                reason: reason.clone(),
            })
            .collect(),
    };
    write_json(out_dir, "compare.json", &manifest, &comparison)?;

    let ts = grid(&sample);
    let km = kaplan_meier(&sample)?;
    let mut columns: Vec<(String, Vec<f64>)> = vec![("km".into(), ts.iter().map(|&t| km.eval(t)).collect())];
    for f in Family::ALL {
        if let Some(fit) = table.ranked.iter().find(|r| r.family == f) {
            columns.push((f.short_name().into(), survival_column(&fit.model(), &ts)?));
        }
    }
    let mut csv = String::from("time");
    for (name, _) in &columns {
        csv.push(',');
        csv.push_str(name);
    }
    csv.push('\n');
    for (i, t) in ts.iter().enumerate() {
        csv.push_str(&t.to_string());
        for (_, col) in &columns {
            csv.push_str(&format!(",{}", col[i]));
        }
        csv.push('\n');
    }
    write_csv(out_dir, "overlay.csv", &manifest, &csv)?;

    println!("{:<5} {:<8} {:>14} {:>14}", "rank", "model", "loglik", "aic");
    for (i, r) in table.ranked.iter().enumerate() {
        println!("{:<5} {:<8} {:>14.4} {:>14.4}", i + 1, r.family.short_name(), r.loglik_max, r.aic);
    }
    for (f, reason) in &table.failed {
        println!("{:<5} {:<8} failed: {reason}", "-", f.short_name());
    }

    if table.ranked.is_empty() {
        Err(Failure::no_convergence("no model converged"))
    } else {
        Ok(())
    }
}

pub fn ttt(data: &Path, out_dir: &Path) -> Result<(), Failure> {
    let sample = load(data)?;
    let manifest = RunManifest::new("ttt", &[data], out_dir);
    let curve = ttt_curve(&sample.times())?;
    let hint = shape_hint(&curve);
    let csv = curve.to_csv("r_over_n", "g");
    write_csv(out_dir, "ttt.csv", &manifest, &csv)?;
    print!("{csv}");
    println!("shape_hint,{hint}");
    Ok(())
}

pub fn km(data: &Path, out_dir: &Path) -> Result<(), Failure> {
    let sample = load(data)?;
    let manifest = RunManifest::new("km", &[data], out_dir);
    let csv = kaplan_meier(&sample)?.to_csv("time", "survival");
    write_csv(out_dir, "km.csv", &manifest, &csv)?;
    print!("{csv}");
    Ok(())
}

fn required<T>(value: Option<T>, name: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::input(format!("simulate requires --{name} (flag or config key)")))
}

fn study_config(args: &SimulateArgs) -> Result<StudyConfig, Failure> {
    let params = WLParams::new(required(args.lambda, "lambda")?, required(args.phi, "phi")?)?;
    let n = required(args.n, "n")?;
    let scheme = match args.scheme.unwrap_or(SchemeArg::Type2) {
        SchemeArg::Complete => StudyScheme::Complete,
        SchemeArg::Type2 => match args.r {
            Some(r) => StudyScheme::TypeII { r },
            None => StudyScheme::type2_from_target(n, required(args.p_target, "p-target")?)?,
        },
        SchemeArg::Type1 => StudyScheme::TypeI {
            p_target: required(args.p_target, "p-target")?,
        },
        SchemeArg::Random => StudyScheme::Random {
            p_target: required(args.p_target, "p-target")?,
        },
    };
    let mut cfg = StudyConfig::new(params, n, scheme, args.replicates.unwrap_or(2000), args.seed.unwrap_or(2014))?;
    if let Some(level) = args.level {
        cfg.level = level;
        cfg.validate()?;
    }
    Ok(cfg)
}

/// Worker count from `WLSURV_THREADS`; 0 or unset lets rayon decide.
fn thread_cap() -> Result<usize, Failure> {
    match std::env::var("WLSURV_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("WLSURV_THREADS must be a non-negative integer, got `{v}`"))),
        _ => Ok(0),
    }
}

pub fn simulate(args: &SimulateArgs, out_dir: &Path) -> Result<(), Failure> {
    let mut args = args.clone();
    let config_path = args.config.clone();
    let mut inputs = Vec::new();
    if let Some(path) = &config_path {
        let text =
            fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        config::merge(&mut args, &text)?;
        inputs.push(path.as_path());
    }
    let cfg = study_config(&args)?;
    PreparedStudy::new(cfg).map_err(|e| Failure {
        code: EXIT_CALIBRATION,
        message: format!("censoring calibration failed: {e}"),
    })?;

    let mut manifest = RunManifest::new("simulate", &inputs, out_dir)
        .flag("phi", cfg.params.phi())
        .flag("lambda", cfg.params.lambda())
        .flag("n", cfg.n)
        .flag("scheme", cfg.scheme.tag())
        .flag("replicates", cfg.replicates)
        .flag("level", cfg.level);
    match cfg.scheme {
        StudyScheme::TypeII { r } => manifest = manifest.flag("r", r),
        StudyScheme::TypeI { p_target } | StudyScheme::Random { p_target } => {
            manifest = manifest.flag("p_target", p_target)
        }
        StudyScheme::Complete => {}
    }
    manifest.seed = Some(cfg.seed);

    let report: SimulationReport = run_study_with_threads(&cfg, thread_cap()?)?;
    let json = write_json(out_dir, "simulation.json", &manifest, &report)?;
    let csv = format!("{}\n{}\n", SimulationReport::CSV_HEADER, report.csv_row());
    write_csv(out_dir, "simulation.csv", &manifest, &csv)?;
    print!("{json}");
    Ok(())
}
