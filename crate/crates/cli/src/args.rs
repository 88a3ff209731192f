//! Command-line surface. Option values are validated here, so a bad
//! tolerance or schedule is a usage error (exit 2) before any work starts.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Run configuration: the command with its inputs, method selectors,
/// tolerances and α′ schedule, plus the parallelism cap.
#[derive(Clone, Debug, Parser)]
#[command(name = "tropical-heights", version, about = "Symanzik polynomials, degenerations and tropical heights")]
pub struct Cli {
    /// Worker threads; overrides TROPICAL_HEIGHTS_THREADS.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: Option<u16>,
    #[command(subcommand)]
    pub command: Command,
}

pub type RunConfig = Cli;

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// First or second Symanzik polynomial, or the ratio φ/ψ at given lengths.
    Symanzik(SymanzikArgs),
    /// Stability and deformation counts of the curve with this dual graph.
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Nilpotent logarithms N_e from vanishing-cycle and crossing data.
    #[command(subcommand)]
    Monodromy(MonodromyCommand),
    /// Poincaré-bundle log-norm of a biextension point.
    #[command(subcommand)]
    Poincare(PoincareCommand),
    /// Height asymptotics along an admissible segment.
    #[command(subcommand)]
    Limit(LimitCommand),
    /// Genus-0 and genus-1 Green-function experiments.
    #[command(subcommand)]
    Lab(LabCommand),
    /// Cross-method agreement over a directory of graph files.
    Corpus(CorpusArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Polynomial {
    First,
    Second,
    Ratio,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Trees,
    Det,
    Bordered,
    Forests,
    Schur,
    /// Pseudo-inverse of the weighted Laplacian.
    Oracle,
    /// φ(Y)/ψ(Y) from the exact polynomials.
    Polys,
}

#[derive(Clone, Debug, Args)]
pub struct SymanzikArgs {
    #[arg(value_enum)]
    pub which: Polynomial,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Edge lengths as `e1=1.0,e2=0.5`; unlisted edges have length 1.
    #[arg(long)]
    pub y: Option<String>,
    /// Run every method and require agreement.
    #[arg(long)]
    pub check: bool,
    /// Relative tolerance for the numeric ratio check.
    #[arg(long, default_value_t = 1e-9, value_parser = positive)]
    pub tol: f64,
}

#[derive(Clone, Debug, Subcommand)]
pub enum CurveCommand {
    Stability(CurveArgs),
    Dimensions(CurveArgs),
}

#[derive(Clone, Debug, Args)]
pub struct CurveArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Ignore the markings.
    #[arg(long)]
    pub unmarked: bool,
}

#[derive(Clone, Debug, Subcommand)]
pub enum MonodromyCommand {
    /// Build every N_e and check N_e·N_f = 0 and the lift identities.
    Blocks(MonodromyArgs),
}

#[derive(Clone, Debug, Args)]
pub struct MonodromyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// `{"edges": {"e1": {"c": [..], "d1": {..}, "d2": {..}}}}`.
    #[arg(long)]
    pub crossings: PathBuf,
    /// `{"side1": [{"id", "vertex", "momentum"}], "side2": [..]}`.
    #[arg(long)]
    pub sections: PathBuf,
    /// Genus of the smooth fibre; defaults to the first Betti number.
    #[arg(long)]
    pub genus: Option<usize>,
}

#[derive(Clone, Debug, Subcommand)]
pub enum PoincareCommand {
    Norm(PoincareArgs),
}

#[derive(Clone, Debug, Args)]
pub struct PoincareArgs {
    /// `{"omega": [[[re, im], ..], ..], "w": [..], "z": [..], "rho": [re, im]}`.
    #[arg(long)]
    pub point: PathBuf,
    /// Random real group elements to test invariance against.
    #[arg(long, default_value_t = 0)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-9, value_parser = positive)]
    pub tol: f64,
}

#[derive(Clone, Debug, Subcommand)]
pub enum LimitCommand {
    Eval(LimitArgs),
}

#[derive(Clone, Debug, Args)]
pub struct LimitArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Ψ₀ together with crossing and section data.
    #[arg(long)]
    pub fixture: PathBuf,
    #[arg(long)]
    pub segment: PathBuf,
    /// Comma-separated α′ values, strictly decreasing.
    #[arg(long, value_parser = schedule)]
    pub schedule: Option<Schedule>,
    /// Require the relative error to be within `--tol`.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 1e-6, value_parser = positive)]
    pub tol: f64,
}

#[derive(Clone, Debug, Subcommand)]
pub enum LabCommand {
    TorusLimit(TorusLimitArgs),
    SphereCrossratio(SphereArgs),
    TorusGreen(TorusGreenArgs),
}

#[derive(Clone, Debug, Args)]
pub struct TorusLimitArgs {
    #[arg(long)]
    pub family: PathBuf,
    #[arg(long, value_parser = schedule)]
    pub schedule: Option<Schedule>,
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 1e-3, value_parser = positive)]
    pub tol: f64,
}

#[derive(Clone, Debug, Args)]
pub struct SphereArgs {
    /// JSON array of four points, each a number or `[re, im]`.
    #[arg(long)]
    pub points: String,
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 1e-10, value_parser = positive)]
    pub tol: f64,
}

#[derive(Clone, Debug, Args)]
pub struct TorusGreenArgs {
    /// Modulus as `re,im` with im > 0.
    #[arg(long)]
    pub tau: String,
    /// Stencil grid size n (step 1/n).
    #[arg(long, default_value_t = 128, value_parser = clap::value_parser!(u32).range(4..))]
    pub grid: u32,
    /// Grid points closer than this to a lattice point are skipped.
    #[arg(long, default_value_t = 0.6, value_parser = positive)]
    pub exclusion: f64,
    #[arg(long)]
    pub check: bool,
}

#[derive(Clone, Debug, Args)]
pub struct CorpusArgs {
    pub dir: PathBuf,
    #[arg(long, default_value_t = 1e-9, value_parser = positive)]
    pub tol: f64,
    /// Add wall-clock milliseconds to each row (output is then not reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Schedule(pub Vec<f64>);

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("must be positive and finite".into())
    }
}

fn schedule(s: &str) -> Result<Schedule, String> {
    let v = s.split(',').map(|t| positive(t.trim())).collect::<Result<Vec<_>, _>>()?;
    if v.windows(2).any(|w| !(w[0] > w[1])) {
        return Err("α′ values must be strictly decreasing".into());
    }
    Ok(Schedule(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedules_and_tolerances_are_validated() {
        assert_eq!(schedule("1e-2, 1e-3,1e-4").unwrap().0, vec![1e-2, 1e-3, 1e-4]);
        assert!(schedule("1e-3,1e-2").is_err());
        assert!(schedule("1e-2,0").is_err());
        assert!(positive("-1").is_err());
        assert!(positive("nan").is_err());
        Cli::try_parse_from(["t", "symanzik", "first", "--graph", "g.json", "--tol", "0"]).unwrap_err();
        let c = Cli::try_parse_from(["t", "--threads", "3", "corpus", "dir"]).unwrap();
        assert_eq!(c.threads, Some(3));
    }
}
