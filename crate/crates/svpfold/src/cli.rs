//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use svpfold_core::EncodingKind;

use crate::angle::parse_angle;
use crate::config::{LambdaSetting, OmegaSetting};

#[derive(Debug, Parser)]
#[command(
    name = "svpfold",
    version,
    about = "Folded-spectrum shortest-vector experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact imaginary-time evolution: fidelity and energy against τ.
    Qite(QiteArgs),
    /// Threshold time over a grid of basis angles, with a power-law fit.
    SweepAngle(SweepAngleArgs),
    /// Variational imaginary-time evolution trajectory.
    Varqite(VarqiteArgs),
    /// Simulated quantum annealing at one ω or over an ω grid.
    Qa(QaArgs),
    /// Simulated-annealing histogram of decoded squared norms.
    Sa(SaArgs),
    /// End-to-end search and bound for the shortest vector.
    Solve(SolveArgs),
    /// Distinct levels of the encoded Hamiltonian.
    Spectrum(SpectrumArgs),
    /// Basis-state table of the encoding, or the index of one vector.
    Encode(EncodeArgs),
    /// Brute-force shortest vectors over the encoding's coefficient box.
    Oracle(OracleArgs),
}

fn parse_scheme(s: &str) -> Result<EncodingKind, String> {
    s.parse().map_err(|e: svpfold_core::Error| e.to_string())
}

/// Sample points parsed from a single flag value.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// `lo:hi:n` (inclusive, n points) or a comma-separated list.
pub fn parse_grid(s: &str) -> Result<Grid, String> {
    parse_grid_values(s).map(Grid)
}

fn parse_grid_values(s: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let lo: f64 = parts[0]
            .parse()
            .map_err(|_| format!("invalid grid start `{}`", parts[0]))?;
        let hi: f64 = parts[1]
            .parse()
            .map_err(|_| format!("invalid grid end `{}`", parts[1]))?;
        let n: usize = parts[2]
            .parse()
            .map_err(|_| format!("invalid grid size `{}`", parts[2]))?;
        return Ok(match n {
            0 => Vec::new(),
            1 => vec![lo],
            _ => (0..n)
                .map(|i| {
                    if i + 1 == n {
                        hi
                    } else {
                        lo + (hi - lo) * i as f64 / (n - 1) as f64
                    }
                })
                .collect(),
        });
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid number `{t}`"))
        })
        .collect()
}

/// Where the instance comes from and how it is encoded.
#[derive(Debug, Clone, Default, Args)]
pub struct InstanceArgs {
    /// Instance JSON file (`basis` or `theta`, plus `k`).
    #[arg(long, conflicts_with = "theta")]
    pub instance: Option<PathBuf>,
    /// Angle of the unit-length 2D basis, e.g. `pi/3` or radians.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Coefficient range parameter of the encoding [default: 2].
    #[arg(long)]
    pub k: Option<u32>,
    /// one-hot, hamming-weight or binary [default: one-hot].
    #[arg(long, value_parser = parse_scheme)]
    pub scheme: Option<EncodingKind>,
    /// Penalty strength: a number or `conservative` [default: 2.5].
    #[arg(long)]
    pub lambda: Option<LambdaSetting>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// JSON config file; explicit flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output prefix: writes PREFIX.csv and PREFIX.json. Without it the CSV
    /// goes to stdout and the metadata to stderr.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct QiteArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Fold point: a number, `oracle` or `search-bound` [default: oracle].
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<OmegaSetting>,
    /// Fold exponent m in (H - ω)^(2m) [default: 1].
    #[arg(long)]
    pub m: Option<u32>,
    /// Fidelity threshold [default: 0.99].
    #[arg(long)]
    pub f_th: Option<f64>,
    /// Give up the threshold search beyond this τ [default: 1e9].
    #[arg(long)]
    pub tau_max: Option<f64>,
    /// End of the τ grid [default: twice the threshold time].
    #[arg(long)]
    pub tau_end: Option<f64>,
    /// Number of τ samples [default: 101].
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepAngleArgs {
    /// Comma-separated angles in (0, π/3] [default: jπ/30 for j = 1..10].
    #[arg(long, value_parser = parse_angle, value_delimiter = ',', allow_hyphen_values = true)]
    pub thetas: Option<Vec<f64>>,
    /// Coefficient range parameter [default: 2].
    #[arg(long)]
    pub k: Option<u32>,
    /// Penalty strength: a number or `conservative` [default: 2.5].
    #[arg(long)]
    pub lambda: Option<LambdaSetting>,
    /// Fold exponent m [default: 1].
    #[arg(long)]
    pub m: Option<u32>,
    /// Fidelity threshold [default: 0.99].
    #[arg(long)]
    pub f_th: Option<f64>,
    /// Give up the threshold search beyond this τ [default: 1e9].
    #[arg(long)]
    pub tau_max: Option<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VarqiteArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Fold point: a number, `oracle` or `search-bound` [default: oracle].
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<OmegaSetting>,
    /// Fold exponent m [default: 1].
    #[arg(long)]
    pub m: Option<u32>,
    /// Ansatz repetitions [default: 2].
    #[arg(long)]
    pub reps: Option<usize>,
    /// Euler step in imaginary time [default: 0.01].
    #[arg(long)]
    pub dtau: Option<f64>,
    /// Final imaginary time [default: 10].
    #[arg(long)]
    pub tau_max: Option<f64>,
    /// Seed for the initial parameters (required).
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct QaArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Single fold point [default: oracle]; ignored when --omegas is given.
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<OmegaSetting>,
    /// ω grid as `lo:hi:n` or a comma-separated ascending list.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub omegas: Option<Grid>,
    /// Anneal duration T [default: 100].
    #[arg(long)]
    pub total_time: Option<f64>,
    /// Trotter step [default: 0.01].
    #[arg(long)]
    pub dt: Option<f64>,
    /// Transverse-field strength h_x [default: 1].
    #[arg(long)]
    pub hx: Option<f64>,
    /// Interpolation schedule; only `linear` is available.
    #[arg(long, default_value = "linear", value_parser = ["linear"])]
    pub schedule: String,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SaArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Fold point: a number, `oracle` or `search-bound` [default: oracle].
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<OmegaSetting>,
    /// Fold exponent m [default: 1].
    #[arg(long)]
    pub m: Option<u32>,
    /// Geometric cooling rate r [default: 0.95].
    #[arg(long)]
    pub cooling_rate: Option<f64>,
    /// Independent restarts [default: 200].
    #[arg(long)]
    pub reads: Option<usize>,
    /// Master seed (required); read i uses stream i.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Initial temperature [default: folded range / 10].
    #[arg(long)]
    pub t0: Option<f64>,
    /// Sweeps per temperature [default: 10 N].
    #[arg(long)]
    pub sweeps: Option<usize>,
    /// Final temperature [default: 1e-4 T0].
    #[arg(long)]
    pub t_min: Option<f64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// exact-qite, qa or sa [default: exact-qite].
    #[arg(long)]
    pub solver: Option<String>,
    /// Maximum search rounds [default: 10].
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Seed for the sa back-end (required with --solver sa).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Imaginary time of each exact-qite run [default: 1e6].
    #[arg(long)]
    pub tau_max: Option<f64>,
    /// Anneal duration T for the qa back-end [default: 100].
    #[arg(long)]
    pub total_time: Option<f64>,
    /// Trotter step for the qa back-end [default: 0.01].
    #[arg(long)]
    pub dt: Option<f64>,
    /// Transverse-field strength for the qa back-end [default: 1].
    #[arg(long)]
    pub hx: Option<f64>,
    /// Cooling rate for the sa back-end [default: 0.95].
    #[arg(long)]
    pub cooling_rate: Option<f64>,
    /// Reads per grid point for the sa back-end [default: 16].
    #[arg(long)]
    pub reads: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Coefficient vector to encode, e.g. `1,-1`; omit for the full table.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<i64>>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn grids() {
        assert_eq!(
            parse_grid("0:1:5").unwrap().0,
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert_eq!(parse_grid("0.5,1.5").unwrap().0, vec![0.5, 1.5]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:x").is_err());
    }

    #[test]
    fn parses_subcommands() {
        let cli = Cli::try_parse_from([
            "svpfold", "qite", "--theta", "pi/3", "--k", "2", "--lambda", "2.5", "--omega",
            "oracle",
        ])
        .unwrap();
        match cli.command {
            Command::Qite(a) => {
                assert_eq!(a.instance.theta, Some(std::f64::consts::PI / 3.0));
                assert_eq!(a.omega, Some(OmegaSetting::Oracle));
            }
            other => panic!("{other:?}"),
        }
        assert!(Cli::try_parse_from([
            "svpfold",
            "spectrum",
            "--theta",
            "pi/2",
            "--instance",
            "x.json"
        ])
        .is_err());
        match Cli::try_parse_from(["svpfold", "encode", "--theta", "pi/2", "--x", "1,-1"])
            .unwrap()
            .command
        {
            Command::Encode(a) => assert_eq!(a.x, Some(vec![1, -1])),
            other => panic!("{other:?}"),
        }
        match Cli::try_parse_from(["svpfold", "sweep-angle", "--thetas", "pi/6,pi/3"])
            .unwrap()
            .command
        {
            Command::SweepAngle(a) => assert_eq!(a.thetas.unwrap().len(), 2),
            other => panic!("{other:?}"),
        }
        match Cli::try_parse_from(["svpfold", "qa", "--theta", "pi/2", "--omegas", "0:1:3"])
            .unwrap()
            .command
        {
            Command::Qa(a) => assert_eq!(a.omegas.unwrap().0, vec![0.0, 0.5, 1.0]),
            other => panic!("{other:?}"),
        }
    }
}
