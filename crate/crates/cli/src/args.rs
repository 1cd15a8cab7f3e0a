use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

#[derive(Parser, Debug)]
#[command(name = "galois-census", version, about = "Discriminant and Galois-group experiments on monic integer polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify every polynomial in a height box and count the non-S_n ones.
    Census(CensusArgs),
    /// Classify one polynomial.
    Classify(ClassifyArgs),
    /// Count integer points on the discriminant surface.
    Surface(SurfaceArgs),
    /// Count integer points on a line section of the discriminant surface.
    Lines(LinesArgs),
    /// Check the symbolic discriminant identities in small degrees.
    VerifyLemmas(VerifyArgs),
    /// Fit a power law to a census column.
    Fit(FitArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format; each subcommand has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report wall-clock times; without it `elapsed_ms` is 0 so output is reproducible.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: usize,
    /// Comma-separated heights.
    #[arg(long = "h-list", value_delimiter = ',', required_unless_present = "h", conflicts_with = "h")]
    pub h_list: Vec<u64>,
    /// A single height.
    #[arg(long)]
    pub h: Option<u64>,
    /// Good primes scanned for an S_n certificate.
    #[arg(long, default_value_t = galois_census::galois::DEFAULT_BUDGET)]
    pub budget: usize,
    /// Blocks of leading coefficients processed in parallel.
    #[arg(long, default_value_t = 8)]
    pub partitions: usize,
    /// Ignore the enumeration ceiling.
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// `x^3 - 3x + 1` or `[a1,...,an]`.
    #[arg(allow_hyphen_values = true)]
    pub polynomial: String,
    #[arg(long, default_value_t = galois_census::galois::DEFAULT_BUDGET)]
    pub budget: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct PrefixArgs {
    #[arg(long)]
    pub n: usize,
    /// Fixed coefficients a_1..a_{n-2}, comma-separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with = "seed")]
    pub prefix: Vec<i64>,
    /// Draw the prefix from a seeded generator instead.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Largest absolute value of a random prefix entry.
    #[arg(long, default_value_t = 10)]
    pub prefix_bound: i64,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    #[command(flatten)]
    pub prefix: PrefixArgs,
    #[arg(long, required_unless_present = "h_list", conflicts_with = "h_list")]
    pub h: Option<u64>,
    /// Several heights; also reports the fitted slope.
    #[arg(long = "h-list", value_delimiter = ',')]
    pub h_list: Vec<u64>,
    #[arg(long)]
    pub force: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct LinesArgs {
    #[command(flatten)]
    pub prefix: PrefixArgs,
    /// Line d1 a_{n-1} + d2 a_n + d3 = 0 as `d1,d2,d3`; rationals like `1/2` allowed.
    #[arg(long, value_parser = parse_line, allow_hyphen_values = true)]
    pub d: Line,
    #[arg(long)]
    pub h: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long = "n-max", default_value_t = galois_census::sympoly::MAX_SYMBOLIC_DEGREE)]
    pub n_max: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct FitArgs {
    /// Census CSV produced by `census`.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Column to fit.
    #[arg(long, default_value = "e_upper")]
    pub counter: String,
    #[command(flatten)]
    pub common: Common,
}

pub type Line = (BigRational, BigRational, BigRational);

fn parse_line(s: &str) -> Result<Line, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("expected three values d1,d2,d3, got `{s}`"));
    };
    let parse = |t: &str| {
        t.parse::<BigRational>()
            .map_err(|_| format!("`{t}` is not a rational number"))
    };
    Ok((parse(a)?, parse(b)?, parse(c)?))
}
