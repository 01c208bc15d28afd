//! Flat `key = value` configuration for `simulate`, mirroring its flags.

use std::str::FromStr;

use clap::ValueEnum;

use crate::commands::Failure;
use crate::{SchemeArg, SimulateArgs};

fn parse<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, Failure> {
    value
        .parse()
        .map_err(|_| Failure::input(format!("config line {line}: invalid value `{value}` for `{key}`")))
}

/// Fills every field of `args` that is still unset from `text`.
pub fn merge(args: &mut SimulateArgs, text: &str) -> Result<(), Failure> {
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Failure::input(format!("config line {line}: expected key=value, got `{content}`")));
        };
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "phi" => args.phi = args.phi.or(Some(parse(line, &key, value)?)),
            "lambda" => args.lambda = args.lambda.or(Some(parse(line, &key, value)?)),
            "n" => args.n = args.n.or(Some(parse(line, &key, value)?)),
            "p_target" => args.p_target = args.p_target.or(Some(parse(line, &key, value)?)),
            "r" => args.r = args.r.or(Some(parse(line, &key, value)?)),
            "replicates" => args.replicates = args.replicates.or(Some(parse(line, &key, value)?)),
            "seed" => args.seed = args.seed.or(Some(parse(line, &key, value)?)),
            "level" => args.level = args.level.or(Some(parse(line, &key, value)?)),
            "scheme" => {
                let scheme = SchemeArg::from_str(value, true)
                    .map_err(|_| Failure::input(format!("config line {line}: unknown scheme `{value}`")))?;
                args.scheme = args.scheme.or(Some(scheme));
            }
            _ => return Err(Failure::input(format!("config line {line}: unknown key `{key}`"))),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let mut args = SimulateArgs {
            seed: Some(3),
            ..Default::default()
        };
        merge(&mut args, "# study\nphi = 0.5\nlambda=2\nseed = 9\nscheme = type2\np-target = 0.2 # trailing\n").unwrap();
        assert_eq!(args.phi, Some(0.5));
        assert_eq!(args.lambda, Some(2.0));
        assert_eq!(args.seed, Some(3));
        assert_eq!(args.scheme, Some(SchemeArg::Type2));
        assert_eq!(args.p_target, Some(0.2));
    }

    #[test]
    fn bad_lines_are_located() {
        let err = merge(&mut SimulateArgs::default(), "phi = 1\nbogus = 2\n").unwrap_err();
        assert!(err.message.contains("line 2"), "{}", err.message);
        let err = merge(&mut SimulateArgs::default(), "n = ten\n").unwrap_err();
        assert!(err.message.contains("line 1") && err.message.contains("ten"));
    }
}
