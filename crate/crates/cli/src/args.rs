use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use expores::rpm::parse_rational;
use rug::Rational;

/// Exact spectra and Riccati-Padé roots for exponential potentials.
#[derive(Debug, Parser)]
#[command(name = "expores", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Requested output digits (at least 6).
    #[arg(long, global = true, env = "EXPORES_DIGITS", default_value_t = 20)]
    pub digits: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    /// Write records here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Report roots in the solver's native orientation (barrier roots with
    /// Im μ < 0, well sheet m as solved) instead of the tabulated one, where
    /// every resonance is conjugated and sheet m means the solver's sheet -m.
    #[arg(long, global = true)]
    pub literal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Barrier,
    Bound,
    Well,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Order,
    Energy,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact barrier roots, bound states or well resonances.
    Spectrum {
        #[command(flatten)]
        lambda: LambdaArgs,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Sheet index, required for `--kind well`.
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Every zero of the symbolic Hankel determinant, labelled against the
    /// exact spectrum.
    RpmRoots {
        #[arg(long, value_parser = parse_lambda)]
        lambda: Rational,
        #[arg(long = "D")]
        dimension: usize,
        #[arg(long, default_value_t = 0)]
        d: i64,
        /// Largest D for which the symbolic determinant is attempted.
        #[arg(long, default_value_t = expores::rpm::SYMBOLIC_LIMIT)]
        symbolic_limit: usize,
    },
    /// Newton iteration on the Hankel determinant from one seed.
    RpmPolish {
        #[arg(long, value_parser = parse_lambda)]
        lambda: Rational,
        /// A single D or a range `start:stop:step`.
        #[arg(long = "D", value_parser = parse_dims)]
        dims: Dims,
        #[arg(long, default_value_t = 0)]
        d: i64,
        /// `kind:m:n` (`well:1:0`, `barrier:0`, `bound:2`) or `re,im`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_seed)]
        seed: Seed,
    },
    /// Well roots closest to each barrier root on a geometric λ grid.
    Compare {
        #[command(flatten)]
        lambda: LambdaArgs,
        /// Sheets to compare against, e.g. `1,2,3`.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        m: Vec<i64>,
        /// Barrier roots per λ.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Which distance goes in the delta column.
        #[arg(long, value_enum, default_value_t = Metric::Order)]
        metric: Metric,
    },
    /// Δ = -log10|E(D) - E_exact| for Newton roots seeded at exact eigenvalues.
    Converge {
        #[arg(long, value_parser = parse_lambda)]
        lambda: Rational,
        /// `barrier:n`, `bound:n` or `well:m:n`; repeatable.
        #[arg(long, required = true, value_parser = parse_label)]
        target: Vec<Label>,
        #[arg(long = "D", value_parser = parse_dims)]
        dims: Dims,
        #[arg(long, default_value_t = 0)]
        d: i64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct LambdaArgs {
    #[arg(long, value_parser = parse_lambda)]
    pub lambda: Option<Rational>,
    /// Geometric grid `min:max:steps`.
    #[arg(long, value_parser = parse_range)]
    pub lambda_range: Option<LambdaRange>,
}

#[derive(Debug, Clone)]
pub struct LambdaRange {
    pub min: Rational,
    pub max: Rational,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dims(pub Vec<usize>);

/// An exact eigenvalue named by kind, sheet and index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Barrier(usize),
    Bound(usize),
    Well(i64, usize),
}

#[derive(Debug, Clone)]
pub enum Seed {
    Label(Label),
    Raw(f64, f64),
}

fn parse_lambda(s: &str) -> Result<Rational, String> {
    let value = parse_rational(s).map_err(|e| e.to_string())?;
    if value <= 0 {
        return Err("lambda must be positive".into());
    }
    Ok(value)
}

fn parse_range(s: &str) -> Result<LambdaRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, steps] = parts[..] else {
        return Err("expected min:max:steps".into());
    };
    let min = parse_lambda(lo)?;
    let max = parse_lambda(hi)?;
    let steps: usize = steps.parse().map_err(|_| format!("bad step count '{steps}'"))?;
    if max < min || steps == 0 {
        return Err("need min <= max and at least one step".into());
    }
    Ok(LambdaRange { min, max, steps })
}

fn parse_dims(s: &str) -> Result<Dims, String> {
    let number = |t: &str| t.parse::<usize>().map_err(|_| format!("bad dimension '{t}'"));
    let parts: Vec<&str> = s.split(':').collect();
    let dims: Vec<usize> = match parts[..] {
        [one] => vec![number(one)?],
        [start, stop, step] => {
            let (start, stop, step) = (number(start)?, number(stop)?, number(step)?);
            if step == 0 || stop < start {
                return Err("need start <= stop and a positive step".into());
            }
            (start..=stop).step_by(step).collect()
        }
        _ => return Err("expected D or start:stop:step".into()),
    };
    if dims.first() == Some(&0) {
        return Err("D must be at least 1".into());
    }
    Ok(Dims(dims))
}

fn parse_label(s: &str) -> Result<Label, String> {
    let index = |t: &str| t.parse::<usize>().map_err(|_| format!("bad index '{t}'"));
    let parts: Vec<&str> = s.split(':').collect();
    match parts[..] {
        ["barrier", n] => Ok(Label::Barrier(index(n)?)),
        ["bound", n] => Ok(Label::Bound(index(n)?)),
        ["well", m, n] => {
            let m: i64 = m.parse().map_err(|_| format!("bad sheet '{m}'"))?;
            if m == 0 {
                return Err("well sheet must be nonzero".into());
            }
            Ok(Label::Well(m, index(n)?))
        }
        _ => Err(format!("expected barrier:n, bound:n or well:m:n, got '{s}'")),
    }
}

fn parse_seed(s: &str) -> Result<Seed, String> {
    if let Some((re, im)) = s.split_once(',') {
        let re: f64 = re.trim().parse().map_err(|_| format!("bad real part '{re}'"))?;
        let im: f64 = im.trim().parse().map_err(|_| format!("bad imaginary part '{im}'"))?;
        if !re.is_finite() || !im.is_finite() {
            return Err("seed must be finite".into());
        }
        return Ok(Seed::Raw(re, im));
    }
    parse_label(s).map(Seed::Label)
}
