mod commands;
mod config;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Failure;

#[derive(Parser)]
#[command(name = "wlsurv", version, about = "Weighted Lindley survival modelling")]
struct Cli {
    /// Directory that receives output files.
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit one model; writes fit.json and survival_curve.csv.
    Fit {
        data: PathBuf,
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, value_enum, default_value_t = ModelArg::Wl)]
        model: ModelArg,
    },
    /// Fit every model and rank by AIC; writes compare.json and overlay.csv.
    Compare {
        data: PathBuf,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
    /// Scaled total-time-on-test curve and hazard-shape hint; writes ttt.csv.
    Ttt { data: PathBuf },
    /// Kaplan–Meier estimate; writes km.csv.
    Km { data: PathBuf },
    /// Monte Carlo study of the WL estimator; writes simulation.json and simulation.csv.
    Simulate(SimulateArgs),
}

#[derive(Args, Clone)]
pub struct SchemeArgs {
    #[arg(long, value_enum, default_value_t = SchemeArg::Random)]
    pub scheme: SchemeArg,
    /// Censoring time for type I data.
    #[arg(long)]
    pub tc: Option<f64>,
    /// Number of observed failures for type II data.
    #[arg(long)]
    pub r: Option<usize>,
}

#[derive(Args, Clone, Default)]
pub struct SimulateArgs {
    /// key=value file with any of the flags below; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub phi: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub scheme: Option<SchemeArg>,
    /// Target censoring proportion (type I, random; type II when --r is absent).
    #[arg(long)]
    pub p_target: Option<f64>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub replicates: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Confidence level of the Wald intervals.
    #[arg(long)]
    pub level: Option<f64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeArg {
    Random,
    #[value(name = "type1")]
    Type1,
    #[value(name = "type2")]
    Type2,
    Complete,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelArg {
    Wl,
    Weibull,
    Gamma,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Fit { data, scheme, model } => commands::fit(data, scheme, *model, &cli.out_dir),
        Command::Compare { data, scheme } => commands::compare(data, scheme, &cli.out_dir),
        Command::Ttt { data } => commands::ttt(data, &cli.out_dir),
        Command::Km { data } => commands::km(data, &cli.out_dir),
        Command::Simulate(args) => commands::simulate(args, &cli.out_dir),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
