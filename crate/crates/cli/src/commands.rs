use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use twistlab_core::census::{
    condition_star_density, count_coprime_tuples, count_squarefree_gcd_tuples, quadratic_extension_census,
    DensityCurve, TupleCountReport,
};
use twistlab_core::galois_cert::{certify_condition_h, rational_roots};
use twistlab_core::kummer::{nonparametric_witnesses, parametric_checklist, ParametricReport};
use twistlab_core::prime_sieve::{classify_all, CertifiedS};
use twistlab_core::twist_forge::{assess_twist, make_twists, TwistAssessment, TwistShape};
use twistlab_core::{Error, Hypothesis, IntPoly, DEFAULT_CERT_BOUND, DEFAULT_SEARCH_BOUND};

use crate::cache::{resolve_dir, PrimeCache};
use crate::report::{density_csv, Bounds, Report};
use crate::CliError;

pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Parser)]
#[command(name = "twistlab", version, about = "Certificates for superelliptic twists without rational points")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Directory for the prime classification cache.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Output format; density curves default to CSV, everything else to JSON.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree, discriminant, squarefree structure, rational roots and a
    /// condition-(H) certificate.
    Analyze(AnalyzeArgs),
    /// Twist certificates cross-checked by exhaustive point search.
    Twist(TwistArgs),
    /// Witnesses that Q(T)(ⁿ√P) is not parametric.
    Parametric(ParametricArgs),
    /// Lattice counts and sampled density curves.
    Census {
        #[command(subcommand)]
        which: CensusCommand,
    },
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    /// Polynomial in T, e.g. 'T^4+1', '(T^2+1)^2*(T^2-2)^2' or '1,0,0,0,1'.
    #[arg(short = 'p', long = "poly", allow_hyphen_values = true)]
    pub poly: String,
    #[arg(short = 'n', long, default_value_t = 2)]
    pub n: u32,
    #[arg(long, default_value_t = DEFAULT_CERT_BOUND)]
    pub prime_bound: u64,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub common: PolyArgs,
}

#[derive(Debug, Args)]
pub struct TwistArgs {
    #[command(flatten)]
    pub common: PolyArgs,
    /// Number of twists built from the certified prime set.
    #[arg(long, default_value_t = 3)]
    pub count: usize,
    /// Examine this twist parameter instead.
    #[arg(short = 'd', long, allow_hyphen_values = true)]
    pub d: Option<BigInt>,
    #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
    pub height_bound: u64,
    #[arg(long, value_enum, default_value_t = ShapeArg::Prime)]
    pub shape: ShapeArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ShapeArg {
    Prime,
    PrimeTimesNthPower,
    PrimePower,
}

impl From<ShapeArg> for TwistShape {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Prime => TwistShape::Prime,
            ShapeArg::PrimeTimesNthPower => TwistShape::PrimeTimesNthPower,
            ShapeArg::PrimePower => TwistShape::PrimePower,
        }
    }
}

#[derive(Debug, Args)]
pub struct ParametricArgs {
    #[command(flatten)]
    pub common: PolyArgs,
    #[arg(long, default_value_t = 2)]
    pub count: usize,
}

#[derive(Debug, Subcommand)]
pub enum CensusCommand {
    /// Exact counts of coprime and squarefree-gcd coefficient tuples.
    Tuples {
        #[arg(short = 'n', long)]
        n: u32,
        #[arg(short = 'H', long = "height")]
        h: u64,
    },
    /// Condition-(H) success rates for random degree-N polynomials.
    Density {
        #[arg(short = 'N', long = "degree")]
        degree: usize,
        #[arg(short = 'n', long, default_value_t = 2)]
        n: u32,
        #[arg(long, value_delimiter = ',', default_value = "10,30,100,300")]
        heights: Vec<u64>,
        #[arg(long, default_value_t = 2000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// The same census for quadratic extensions Q(T)(√P).
    Quadratic {
        #[arg(short = 'N', long = "degree")]
        degree: usize,
        #[arg(short = 'H', long = "heights", value_delimiter = ',', default_value = "10,30,100")]
        heights: Vec<u64>,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Validated settings shared by every command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    pub cache: Option<PrimeCache>,
}

fn positive(name: &str, value: u64) -> Result<(), CliError> {
    if value == 0 {
        return Err(Error::InvalidArgument(format!("{name} must be positive")).into());
    }
    Ok(())
}

fn parse_poly(text: &str) -> Result<IntPoly, CliError> {
    text.parse::<IntPoly>().map_err(CliError::from)
}

fn certified_set(config: &RunConfig, poly: &IntPoly, bound: u64) -> Result<CertifiedS, CliError> {
    let classes = match &config.cache {
        Some(cache) => cache.classify_all(poly, bound)?,
        None => classify_all(poly, bound)?,
    };
    Ok(CertifiedS::from_classifications(poly, bound, &classes)?)
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
enum ConditionH {
    Certified { witness: u64, pattern: Vec<usize> },
    Inconclusive(&'static str),
}

#[derive(Debug, Serialize)]
struct SqfPart {
    factor: String,
    multiplicity: u32,
}

#[derive(Debug, Serialize)]
struct Analysis {
    degree: usize,
    height: String,
    content: String,
    disc: String,
    separable: bool,
    squarefree_decomposition: Vec<SqfPart>,
    rational_roots: Vec<String>,
    n: u32,
    multiplicity_bound_ok: bool,
    #[serde(rename = "conditionH")]
    condition_h: ConditionH,
}

fn analyze(config: &RunConfig, args: &AnalyzeArgs) -> Result<String, CliError> {
    let a = &args.common;
    positive("prime bound", a.prime_bound)?;
    let poly = parse_poly(&a.poly)?;
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial.into());
    }
    let sqf = poly.squarefree_decomposition()?;
    let condition_h = match certify_condition_h(&poly, a.prime_bound.max(2))? {
        Some(cert) => ConditionH::Certified { witness: cert.witness_prime, pattern: cert.pattern.degrees },
        None => ConditionH::Inconclusive("inconclusive"),
    };
    let analysis = Analysis {
        degree: poly.degree(),
        height: poly.height().to_string(),
        content: poly.content().to_string(),
        disc: poly.discriminant().to_string(),
        separable: poly.is_separable(),
        squarefree_decomposition: sqf
            .parts
            .iter()
            .map(|(f, m)| SqfPart { factor: f.to_string(), multiplicity: *m })
            .collect(),
        rational_roots: rational_roots(&poly)?.iter().map(ToString::to_string).collect(),
        n: a.n,
        multiplicity_bound_ok: poly.multiplicity_bound_ok(a.n),
        condition_h,
    };
    let bounds = Bounds { prime_bound: Some(a.prime_bound), ..Bounds::default() };
    render_json(config, &Report::new("analyze", Some(&poly), bounds, None, analysis))
}

#[derive(Debug, Serialize)]
struct TwistRun {
    n: u32,
    certified_primes: usize,
    twists: Vec<TwistAssessment>,
}

fn twist(config: &RunConfig, args: &TwistArgs) -> Result<String, CliError> {
    let a = &args.common;
    positive("prime bound", a.prime_bound)?;
    positive("height bound", args.height_bound)?;
    let poly = parse_poly(&a.poly)?;
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial.into());
    }
    let roots = rational_roots(&poly)?;
    if let Some(root) = roots.first() {
        return Err(Error::Hypothesis {
            hypothesis: Hypothesis::NoRationalRoot,
            detail: format!(
                "P has the rational root {root}, so every twist has a rational point and no twist can be certified empty"
            ),
        }
        .into());
    }
    let s = certified_set(config, &poly, a.prime_bound)?;
    let ds = match &args.d {
        Some(d) => vec![d.clone()],
        None => make_twists(&s, a.n, args.count, args.shape.into())?,
    };
    let twists = ds
        .iter()
        .map(|d| assess_twist(&poly, a.n, d, &s, args.height_bound))
        .collect::<Result<Vec<_>, _>>()?;
    let run = TwistRun { n: a.n, certified_primes: s.len(), twists };
    let bounds = Bounds { prime_bound: Some(a.prime_bound), height_bound: Some(args.height_bound), ..Bounds::default() };
    render_json(config, &Report::new("twist", Some(&poly), bounds, None, run))
}

#[derive(Debug, Serialize)]
struct ParametricRun {
    #[serde(flatten)]
    report: ParametricReport,
    p0: String,
    note: Option<&'static str>,
}

pub const SUPPRESSED_CLAIM: &str = "curve-level certificates only; parametricity claim suppressed";

fn parametric(config: &RunConfig, args: &ParametricArgs) -> Result<String, CliError> {
    let a = &args.common;
    positive("prime bound", a.prime_bound)?;
    let poly = parse_poly(&a.poly)?;
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial.into());
    }
    // hypothesis failures surface here, before any prime classification
    let (reduction, _, _) = parametric_checklist(&poly, a.n)?;
    let s = certified_set(config, &reduction.p0, a.prime_bound)?;
    let report = nonparametric_witnesses(&poly, a.n, args.count, &s)?;
    let note = (!report.parametricity_claimed).then_some(SUPPRESSED_CLAIM);
    let run = ParametricRun { p0: report.reduction.p0.to_string(), report, note };
    let bounds = Bounds { prime_bound: Some(a.prime_bound), ..Bounds::default() };
    render_json(config, &Report::new("parametric", Some(&poly), bounds, None, run))
}

#[derive(Debug, Serialize)]
struct TupleCounts {
    coprime: TupleCountReport,
    squarefree_gcd: Option<TupleCountReport>,
}

fn census(config: &RunConfig, which: &CensusCommand) -> Result<String, CliError> {
    match which {
        CensusCommand::Tuples { n, h } => {
            positive("H", *h)?;
            let counts = TupleCounts {
                coprime: count_coprime_tuples(*n, *h)?,
                squarefree_gcd: if *n >= 2 { Some(count_squarefree_gcd_tuples(*n, *h)?) } else { None },
            };
            let bounds = Bounds { height_bound: Some(*h), ..Bounds::default() };
            render_json(config, &Report::new("census tuples", None, bounds, None, counts))
        }
        CensusCommand::Density { degree, n, heights, samples, seed } => {
            let curve = condition_star_density(*degree, *n, heights, *samples, *seed)?;
            render_curve(config, "census density", heights, *samples, *seed, curve)
        }
        CensusCommand::Quadratic { degree, heights, samples, seed } => {
            let curve = quadratic_extension_census(*degree, heights, *samples, *seed)?;
            render_curve(config, "census quadratic", heights, *samples, *seed, curve)
        }
    }
}

fn render_json<T: Serialize>(config: &RunConfig, report: &Report<T>) -> Result<String, CliError> {
    if config.format == Format::Csv {
        return Err(Error::InvalidArgument(format!("{} reports are JSON only", report.command)).into());
    }
    Ok(report.to_json()?)
}

fn render_curve(
    config: &RunConfig,
    command: &'static str,
    heights: &[u64],
    samples: u64,
    seed: u64,
    curve: DensityCurve,
) -> Result<String, CliError> {
    match config.format {
        Format::Csv => Ok(density_csv(&curve)),
        Format::Json => {
            let bounds = Bounds { heights: Some(heights.to_vec()), samples: Some(samples), ..Bounds::default() };
            Ok(Report::new(command, None, bounds, Some(seed), curve).to_json()?)
        }
    }
}

/// Runs a parsed command line and returns the text to print.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let is_curve = matches!(
        cli.command,
        Command::Census { which: CensusCommand::Density { .. } | CensusCommand::Quadratic { .. } }
    );
    let format = cli.format.unwrap_or(if is_curve { Format::Csv } else { Format::Json });
    let cache = if cli.no_cache { None } else { resolve_dir(cli.cache_dir.as_deref()).map(PrimeCache::new) };
    let config = RunConfig { format, cache };
    match &cli.command {
        Command::Analyze(args) => analyze(&config, args),
        Command::Twist(args) => twist(&config, args),
        Command::Parametric(args) => parametric(&config, args),
        Command::Census { which } => census(&config, which),
    }
}
