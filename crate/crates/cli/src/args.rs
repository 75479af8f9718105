use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_ORDER: usize = 256;

#[derive(Parser, Debug)]
#[command(
    name = "bcl",
    version,
    about = "Cesaro-type operators on alpha-Bloch spaces: seminorms, spectra, bounds and probes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Grid estimate of the alpha-Bloch seminorm of a series
    Seminorm(SeminormArgs),
    /// Apply the operator C_g to a series
    Apply(ApplyArgs),
    /// Dense N x N coefficient matrix of the operator
    Matrix(MatrixArgs),
    /// Truncated spectrum, and the predicted point spectrum when --alpha is given
    Spectrum(SpectrumArgs),
    /// Coefficients of the eigenfunction factor psi_n
    Eigenfunction(EigenfunctionArgs),
    /// Boundedness / compactness verdict for (alpha, beta)
    Classify(ParamArgs),
    /// Explicit boundedness constant for (alpha, beta)
    Bound(ParamArgs),
    /// Divergence probe along the radius for an unbounded regime
    Counterexample(CounterexampleArgs),
    /// Operator norms along a null family
    Compactness(CompactnessArgs),
    /// Distance to dilation approximants over a test family
    Essnorm(EssnormArgs),
    /// Preimage of a series under the Cesaro operator C_1
    Preimage(PreimageArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct OutputOpts {
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct GridOpts {
    #[arg(long = "grid-radial", default_value_t = 64)]
    pub radial: usize,
    #[arg(long = "grid-angular", default_value_t = 128)]
    pub angular: usize,
    #[arg(long, default_value_t = 0.999, allow_negative_numbers = true)]
    pub rmax: f64,
}

#[derive(Args, Debug)]
pub struct OrderOpt {
    /// Truncation order
    #[arg(long = "N", env = "BCL_DEFAULT_N", default_value_t = DEFAULT_ORDER)]
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct SeriesOpts {
    /// Coefficients as a JSON array of reals or [re, im] pairs
    #[arg(long)]
    pub f: Option<String>,
    /// JSON file with a coefficient array or {"coeffs": [...]}; overrides --f
    #[arg(long = "f-file")]
    pub f_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SymbolOpts {
    /// Plain symbol (1 - w)^(-beta)
    #[arg(long, conflicts_with = "symbol", allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// JSON symbol file
    #[arg(long)]
    pub symbol: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SeminormArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[command(flatten)]
    pub series: SeriesOpts,
    #[command(flatten)]
    pub grid: GridOpts,
    /// Also run the pointwise growth-bound check (exit 2 if it fails)
    #[arg(long)]
    pub check_growth: bool,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct ApplyArgs {
    #[command(flatten)]
    pub symbol: SymbolOpts,
    #[command(flatten)]
    pub series: SeriesOpts,
    #[command(flatten)]
    pub order: OrderOpt,
    /// Apply the dilation approximant K_s instead of C_g
    #[arg(long, allow_negative_numbers = true)]
    pub dilation: Option<f64>,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub symbol: SymbolOpts,
    #[command(flatten)]
    pub order: OrderOpt,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub symbol: SymbolOpts,
    #[command(flatten)]
    pub order: OrderOpt,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct EigenfunctionArgs {
    #[command(flatten)]
    pub symbol: SymbolOpts,
    /// Eigenvalue index n (eigenvalue g(0)/n)
    #[arg(long, default_value_t = 1)]
    pub index: usize,
    #[command(flatten)]
    pub order: OrderOpt,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WitnessArg {
    Identity,
    Log,
    Pole,
}

#[derive(Args, Debug)]
pub struct CounterexampleArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[arg(long, value_enum)]
    pub witness: WitnessArg,
    /// JSON array of sample points in (0, 1), increasing
    #[arg(long = "t-list")]
    pub t_list: Option<String>,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Monomial,
    Dilation,
}

#[derive(Args, Debug)]
pub struct CompactnessArgs {
    #[command(flatten)]
    pub symbol: SymbolOpts,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = FamilyArg::Monomial)]
    pub family: FamilyArg,
    #[arg(long = "m-max", default_value_t = 32)]
    pub m_max: usize,
    /// Base function for the dilation family
    #[command(flatten)]
    pub series: SeriesOpts,
    #[command(flatten)]
    pub grid: GridOpts,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct EssnormArgs {
    #[command(flatten)]
    pub symbol: SymbolOpts,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    /// JSON array of increasing dilations in (0, 1)
    #[arg(long, default_value = "[0.5,0.9,0.99,0.999]")]
    pub dilations: String,
    #[command(flatten)]
    pub grid: GridOpts,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug)]
pub struct PreimageArgs {
    #[command(flatten)]
    pub series: SeriesOpts,
    #[command(flatten)]
    pub output: OutputOpts,
}
