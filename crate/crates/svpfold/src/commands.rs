//! Subcommand execution. Every command computes its full result before
//! anything is written, so a failure leaves no partial output.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use svpfold_core::encoding::EncodingScheme;
use svpfold_core::lattice::analytic_e1_2d;
use svpfold_core::qanneal::{
    omega_point, AnnealSchedule, DEFAULT_DRIVER_STRENGTH, DEFAULT_DT, DEFAULT_TOTAL_TIME,
};
use svpfold_core::qite::{
    angle_point, power_law_fit, threshold_time, AngleSweepConfig, QiteProblem, DEFAULT_THRESHOLD,
};
use svpfold_core::sanneal::{sa_read, SaConfig, SaHistogram};
use svpfold_core::searchbound::{
    search_and_bound_from, RoundExecutor, SearchBoundState, SolveOutcome, Solver, DEFAULT_MAX_ITER,
    DEFAULT_QITE_TAU,
};
use svpfold_core::varqite::{varqite_run, Ansatz, DEFAULT_DTAU, DEFAULT_REPS};
use svpfold_core::{DecodeResult, EncodingKind, FoldConfig, LatticeBasis, SvpInstance};

use crate::cli::{
    Cli, Command, CommonArgs, EncodeArgs, InstanceArgs, OracleArgs, QaArgs, QiteArgs, SaArgs,
    SolveArgs, SpectrumArgs, SweepAngleArgs, VarqiteArgs,
};
use crate::config::{Angle, ConfigFile, InstanceFile, LambdaSetting, OmegaSetting};
use crate::error::{CliError, CliResult};
use crate::output::{fmt_num, fmt_vector, CsvTable, RunOutput};

pub const DEFAULT_K: u32 = 2;
pub const DEFAULT_QITE_POINTS: usize = 101;
pub const DEFAULT_QITE_TAU_MAX: f64 = 1e9;
pub const DEFAULT_VARQITE_TAU: f64 = 10.0;
pub const DEFAULT_SA_READS: usize = 200;
pub const DEFAULT_COOLING_RATE: f64 = 0.95;
pub const DEFAULT_SOLVE_SA_READS: usize = 16;
/// Largest register for which `encode` embeds the full diagonal in JSON.
pub const MAX_EMBEDDED_DIAGONAL_QUBITS: usize = 16;

/// Fans the grid points of a search round out over the rayon pool.
pub struct Parallel;

impl RoundExecutor for Parallel {
    fn run(
        &self,
        omegas: &[f64],
        solve: &(dyn Fn(usize, f64) -> svpfold_core::Result<SolveOutcome> + Sync),
    ) -> Vec<svpfold_core::Result<SolveOutcome>> {
        omegas
            .par_iter()
            .enumerate()
            .map(|(i, &w)| solve(i, w))
            .collect()
    }
}

impl Command {
    pub fn common(&self) -> &CommonArgs {
        match self {
            Command::Qite(a) => &a.common,
            Command::SweepAngle(a) => &a.common,
            Command::Varqite(a) => &a.common,
            Command::Qa(a) => &a.common,
            Command::Sa(a) => &a.common,
            Command::Solve(a) => &a.common,
            Command::Spectrum(a) => &a.common,
            Command::Encode(a) => &a.common,
            Command::Oracle(a) => &a.common,
        }
    }
}

/// Runs the command and writes its output.
pub fn execute(cli: &Cli) -> CliResult<()> {
    let output = run(&cli.command)?;
    output.write(cli.command.common().out.as_deref())
}

pub fn run(command: &Command) -> CliResult<RunOutput> {
    match command {
        Command::Qite(a) => qite(a),
        Command::SweepAngle(a) => sweep_angle(a),
        Command::Varqite(a) => varqite(a),
        Command::Qa(a) => qa(a),
        Command::Sa(a) => sa(a),
        Command::Solve(a) => solve(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Encode(a) => encode(a),
        Command::Oracle(a) => oracle(a),
    }
}

/// The instance as resolved from flags, config file, instance file and
/// defaults, in that order of precedence.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedInstance {
    pub source: String,
    pub theta: Option<f64>,
    pub basis: Vec<Vec<f64>>,
    pub k: u32,
    pub scheme: EncodingKind,
    pub lambda: LambdaSetting,
    /// Penalty strength actually applied; absent for penalty-free encodings.
    pub lambda_value: Option<f64>,
    pub num_qubits: usize,
}

struct Loaded {
    cfg: ConfigFile,
    resolved: ResolvedInstance,
    instance: SvpInstance,
}

fn load(args: &InstanceArgs, common: &CommonArgs) -> CliResult<Loaded> {
    let cfg = ConfigFile::load(common.config.as_deref())?;
    let (path, theta) = if args.instance.is_some() || args.theta.is_some() {
        (args.instance.clone(), args.theta)
    } else {
        if cfg.instance.is_some() && cfg.theta.is_some() {
            return Err(CliError::validation(
                "config sets both `instance` and `theta`",
            ));
        }
        (cfg.instance.clone(), cfg.theta.map(|Angle(t)| t))
    };
    let file = path.as_deref().map(InstanceFile::load).transpose()?;
    let k = args
        .k
        .or(cfg.k)
        .or(file.as_ref().map(|f| f.k))
        .unwrap_or(DEFAULT_K);
    let scheme_kind = args
        .scheme
        .or(cfg.scheme)
        .or(file.as_ref().and_then(|f| f.scheme))
        .unwrap_or(EncodingKind::OneHot);
    let lambda = args
        .lambda
        .or(cfg.lambda)
        .or(file.as_ref().and_then(|f| f.lambda))
        .unwrap_or_default();
    let (source, theta, basis) = match (&file, theta) {
        (Some(f), _) => {
            let source = path
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default();
            match (&f.basis, f.theta) {
                (Some(b), _) => (source, None, LatticeBasis::new(b.clone())?),
                (None, Some(Angle(t))) => (source, Some(t), LatticeBasis::normalized_2d(t)?),
                (None, None) => unreachable!("checked when loading"),
            }
        }
        (None, Some(t)) => (
            "theta".to_string(),
            Some(t),
            LatticeBasis::normalized_2d(t)?,
        ),
        (None, None) => {
            return Err(CliError::validation(
                "an instance is required: pass --instance FILE or --theta ANGLE",
            ))
        }
    };
    let scheme = EncodingScheme::new(scheme_kind, k, basis.dimension())?;
    let instance = SvpInstance::new(basis.gram()?, scheme, lambda.strategy())?;
    let resolved = ResolvedInstance {
        source,
        theta,
        basis: basis.vectors().to_vec(),
        k,
        scheme: scheme_kind,
        lambda,
        lambda_value: instance.lambda(),
        num_qubits: instance.num_qubits(),
    };
    Ok(Loaded {
        cfg,
        resolved,
        instance,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResolvedOmega {
    pub setting: OmegaSetting,
    pub value: f64,
}

fn resolve_omega(setting: OmegaSetting, instance: &SvpInstance) -> CliResult<ResolvedOmega> {
    let value = match setting {
        OmegaSetting::Value(v) => v,
        OmegaSetting::Oracle => instance.oracle()?.shortest_norm_sq,
        OmegaSetting::SearchBound => {
            let state = SearchBoundState::initial(instance)?;
            search_and_bound_from(
                instance,
                &Solver::exact_qite(),
                state,
                DEFAULT_MAX_ITER,
                &Parallel,
            )?
            .e1
        }
    };
    Ok(ResolvedOmega { setting, value })
}

fn require_seed(flag: Option<u64>, cfg: &ConfigFile) -> CliResult<u64> {
    flag.or(cfg.seed)
        .ok_or_else(|| CliError::validation("--seed is required for stochastic runs"))
}

fn positive(name: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::validation(format!(
            "{name} must be positive and finite, got {v}"
        )))
    }
}

fn describe_state(instance: &SvpInstance, index: usize) -> String {
    match instance.decode(index) {
        DecodeResult::Feasible(x) => fmt_vector(&x),
        DecodeResult::Infeasible { .. } => "infeasible".into(),
    }
}

fn bit_string(scheme: &EncodingScheme, index: usize) -> String {
    scheme
        .bits_of_index(index)
        .iter()
        .map(|&b| if b { '1' } else { '0' })
        .collect()
}

fn qite(a: &QiteArgs) -> CliResult<RunOutput> {
    let Loaded {
        cfg,
        resolved,
        instance,
    } = load(&a.instance, &a.common)?;
    let omega = resolve_omega(
        a.omega.or(cfg.omega).unwrap_or(OmegaSetting::Oracle),
        &instance,
    )?;
    let m = a.m.or(cfg.m).unwrap_or(1);
    let f_th = a.f_th.or(cfg.f_th).unwrap_or(DEFAULT_THRESHOLD);
    let tau_max = positive(
        "tau_max",
        a.tau_max.or(cfg.tau_max).unwrap_or(DEFAULT_QITE_TAU_MAX),
    )?;
    let points = a.points.or(cfg.points).unwrap_or(DEFAULT_QITE_POINTS);
    if points < 2 {
        return Err(CliError::validation("points must be at least 2"));
    }
    let fold = FoldConfig::new(omega.value, m)?;
    let levels = instance.levels();
    let target = levels
        .nearest(omega.value)
        .expect("spectrum is non-empty")
        .value;
    let problem = QiteProblem::from_instance(&instance, fold, target)?;
    let time = threshold_time(&problem, f_th, tau_max)?;
    let tau_end = positive("tau_end", a.tau_end.or(cfg.tau_end).unwrap_or(2.0 * time))?;
    let taus: Vec<f64> = (0..points)
        .map(|i| tau_end * i as f64 / (points - 1) as f64)
        .collect();
    let traj = problem.trajectory(&taus)?;
    let mut table = CsvTable::new(&["tau", "fidelity", "energy"]);
    for i in 0..taus.len() {
        table.push(vec![
            fmt_num(traj.taus[i]),
            fmt_num(traj.fidelities[i]),
            fmt_num(traj.energies[i]),
        ]);
    }
    let config = json!({
        "instance": resolved, "omega": omega, "m": m, "f_th": f_th, "tau_max": tau_max,
        "tau_end": tau_end, "points": points,
    });
    let summary = json!({
        "target_energy": target,
        "target_states": problem.target().len(),
        "threshold_time": time,
        "folded_gap": problem.folded_gap(),
    });
    Ok(RunOutput::new("qite", table, config, summary))
}

/// `jπ/30` for `j = 1..10`: ten evenly spaced angles ending at π/3.
pub fn default_sweep_angles() -> Vec<f64> {
    (1..=10)
        .map(|j| j as f64 * std::f64::consts::PI / 30.0)
        .collect()
}

fn sweep_angle(a: &SweepAngleArgs) -> CliResult<RunOutput> {
    let cfg = ConfigFile::load(a.common.config.as_deref())?;
    let thetas = a
        .thetas
        .clone()
        .or_else(|| {
            cfg.thetas
                .as_ref()
                .map(|v| v.iter().map(|Angle(t)| *t).collect())
        })
        .unwrap_or_else(default_sweep_angles);
    let lambda = a.lambda.or(cfg.lambda).unwrap_or_default();
    let sweep = AngleSweepConfig {
        k: a.k.or(cfg.k).unwrap_or(DEFAULT_K),
        lambda: lambda.strategy(),
        m: a.m.or(cfg.m).unwrap_or(1),
        f_th: a.f_th.or(cfg.f_th).unwrap_or(DEFAULT_THRESHOLD),
        tau_max: positive(
            "tau_max",
            a.tau_max.or(cfg.tau_max).unwrap_or(DEFAULT_QITE_TAU_MAX),
        )?,
    };
    let points: Vec<_> = thetas.par_iter().map(|&t| angle_point(t, &sweep)).collect();
    let mut table = CsvTable::new(&["theta", "omega", "time"]);
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for p in &points {
        let time = match &p.time {
            Ok(t) => {
                records.push((p.theta, *t));
                fmt_num(*t)
            }
            Err(e) => {
                failures.push(json!({"theta": p.theta, "error": e.to_string()}));
                String::new()
            }
        };
        table.push(vec![fmt_num(p.theta), fmt_num(p.omega), time]);
    }
    let fit = power_law_fit(&records).ok();
    let config = json!({"thetas": thetas, "sweep": sweep, "lambda": lambda, "omega": "oracle"});
    let summary = json!({"fit": fit, "converged": records.len(), "failures": failures});
    Ok(RunOutput::new("sweep-angle", table, config, summary))
}

fn varqite(a: &VarqiteArgs) -> CliResult<RunOutput> {
    let Loaded {
        cfg,
        resolved,
        instance,
    } = load(&a.instance, &a.common)?;
    let seed = require_seed(a.seed, &cfg)?;
    let omega = resolve_omega(
        a.omega.or(cfg.omega).unwrap_or(OmegaSetting::Oracle),
        &instance,
    )?;
    let m = a.m.or(cfg.m).unwrap_or(1);
    let reps = a.reps.or(cfg.reps).unwrap_or(DEFAULT_REPS);
    let dtau = positive("dtau", a.dtau.or(cfg.dtau).unwrap_or(DEFAULT_DTAU))?;
    let tau_max = a.tau_max.or(cfg.tau_max).unwrap_or(DEFAULT_VARQITE_TAU);
    let ansatz = Ansatz::new(instance.num_qubits(), reps)?;
    let params0 = ansatz.random_params(seed);
    let hfold = instance.folded(FoldConfig::new(omega.value, m)?);
    let traj = varqite_run(
        instance.hamiltonian(),
        &hfold,
        &ansatz,
        &params0,
        dtau,
        tau_max,
    )?;
    let mut table = CsvTable::new(&[
        "tau",
        "folded_energy",
        "svp_energy",
        "svp_variance",
        "residual",
    ]);
    for s in &traj.steps {
        table.push(vec![
            fmt_num(s.tau),
            fmt_num(s.folded_energy),
            fmt_num(s.svp_energy),
            fmt_num(s.svp_variance),
            fmt_num(s.residual),
        ]);
    }
    let last = traj.last();
    let config = json!({
        "instance": resolved, "omega": omega, "m": m, "ansatz": ansatz, "num_params": ansatz.num_params(),
        "entangler": "linear", "dtau": dtau, "tau_max": tau_max, "seed": seed,
        "regularization": svpfold_core::varqite::REGULARIZATION,
        "initial_spread": svpfold_core::varqite::INITIAL_SPREAD,
    });
    let summary = json!({
        "steps": traj.steps.len() - 1,
        "final_folded_energy": last.folded_energy,
        "final_svp_energy": last.svp_energy,
        "final_svp_variance": last.svp_variance,
        "descent_violations": traj.descent_violations,
        "final_params": last.params,
    });
    Ok(RunOutput::new("varqite", table, config, summary))
}

fn qa(a: &QaArgs) -> CliResult<RunOutput> {
    let Loaded {
        cfg,
        resolved,
        instance,
    } = load(&a.instance, &a.common)?;
    let total_time = a
        .total_time
        .or(cfg.total_time)
        .unwrap_or(DEFAULT_TOTAL_TIME);
    let hx = a.hx.or(cfg.hx).unwrap_or(DEFAULT_DRIVER_STRENGTH);
    let dt = positive("dt", a.dt.or(cfg.dt).unwrap_or(DEFAULT_DT))?;
    let schedule = AnnealSchedule::linear(total_time, hx)?;
    let (omegas, omega) = match a.omegas.clone().map(|g| g.0).or(cfg.omegas.clone()) {
        Some(grid) => (grid, None),
        None => {
            let o = resolve_omega(
                a.omega.or(cfg.omega).unwrap_or(OmegaSetting::Oracle),
                &instance,
            )?;
            (vec![o.value], Some(o))
        }
    };
    if !omegas.windows(2).all(|w| w[1] >= w[0]) {
        return Err(CliError::validation("omega grid must be sorted ascending"));
    }
    let points: Vec<_> = omegas
        .par_iter()
        .map(|&w| omega_point(&instance, w, &schedule, dt))
        .collect();
    let mut table = CsvTable::new(&["omega", "energy", "ground_overlap"]);
    for p in points {
        let p = p?;
        table.push(vec![
            fmt_num(p.omega),
            fmt_num(p.energy),
            fmt_num(p.ground_overlap),
        ]);
    }
    let config = json!({
        "instance": resolved, "omega": omega, "omegas": omegas, "m": 1, "schedule": schedule, "dt": dt,
        "initial_state": "plus",
    });
    Ok(RunOutput::new(
        "qa",
        table,
        config,
        json!({"points": omegas.len()}),
    ))
}

fn sa(a: &SaArgs) -> CliResult<RunOutput> {
    let Loaded {
        cfg,
        resolved,
        instance,
    } = load(&a.instance, &a.common)?;
    let seed = require_seed(a.seed, &cfg)?;
    let omega = resolve_omega(
        a.omega.or(cfg.omega).unwrap_or(OmegaSetting::Oracle),
        &instance,
    )?;
    let mut config = SaConfig::new(
        a.cooling_rate
            .or(cfg.cooling_rate)
            .unwrap_or(DEFAULT_COOLING_RATE),
        a.reads.or(cfg.reads).unwrap_or(DEFAULT_SA_READS),
        seed,
        omega.value,
    );
    config.m = a.m.or(cfg.m).unwrap_or(1);
    config.initial_temperature = a.t0.or(cfg.t0);
    config.sweeps_per_temperature = a.sweeps.or(cfg.sweeps);
    config.min_temperature = a.t_min.or(cfg.t_min);
    let resolved_sa = config.resolve(&instance)?;
    let folded = instance.folded(resolved_sa.fold());
    let ladder = resolved_sa.ladder();
    let states: Vec<usize> = (0..resolved_sa.reads as u64)
        .into_par_iter()
        .map(|r| {
            sa_read(
                folded.energies(),
                instance.num_qubits(),
                &resolved_sa,
                &ladder,
                r,
            )
        })
        .collect();
    let hist = SaHistogram::from_states(&instance, &states);
    let mut table = CsvTable::new(&["norm_sq", "count", "is_infeasible"]);
    for b in &hist.bins {
        table.push(vec![
            fmt_num(b.norm_sq),
            b.count.to_string(),
            "false".into(),
        ]);
    }
    table.push(vec![
        String::new(),
        hist.infeasible.to_string(),
        "true".into(),
    ]);
    let shortest = instance.oracle()?.shortest_norm_sq;
    let config = json!({
        "instance": resolved, "omega": omega, "sa": resolved_sa, "temperatures": ladder.len(),
        "rng": "chacha8, stream = read index",
    });
    let summary = json!({
        "oracle_shortest_norm_sq": shortest,
        "shortest_fraction": hist.fraction_at(shortest),
        "feasible_mode": hist.feasible_mode(),
        "infeasible": hist.infeasible,
    });
    Ok(RunOutput::new("sa", table, config, summary))
}

fn solve(a: &SolveArgs) -> CliResult<RunOutput> {
    let Loaded {
        cfg,
        resolved,
        instance,
    } = load(&a.instance, &a.common)?;
    let name = a
        .solver
        .clone()
        .or(cfg.solver.clone())
        .unwrap_or_else(|| "exact-qite".into());
    let solver = match name.as_str() {
        "exact-qite" => Solver::ExactQite {
            tau_max: positive(
                "tau_max",
                a.tau_max.or(cfg.tau_max).unwrap_or(DEFAULT_QITE_TAU),
            )?,
        },
        "qa" => Solver::Qa {
            schedule: AnnealSchedule::linear(
                a.total_time
                    .or(cfg.total_time)
                    .unwrap_or(DEFAULT_TOTAL_TIME),
                a.hx.or(cfg.hx).unwrap_or(DEFAULT_DRIVER_STRENGTH),
            )?,
            dt: positive("dt", a.dt.or(cfg.dt).unwrap_or(DEFAULT_DT))?,
        },
        "sa" => {
            let reads = a.reads.or(cfg.reads).unwrap_or(DEFAULT_SOLVE_SA_READS);
            if reads == 0 {
                return Err(CliError::validation("reads must be at least 1"));
            }
            Solver::Sa {
                cooling_rate: a
                    .cooling_rate
                    .or(cfg.cooling_rate)
                    .unwrap_or(DEFAULT_COOLING_RATE),
                reads,
                seed: require_seed(a.seed, &cfg)?,
            }
        }
        other => {
            return Err(CliError::validation(format!(
                "unknown solver `{other}`; use exact-qite, qa or sa"
            )))
        }
    };
    let max_iter = a.max_iter.or(cfg.max_iter).unwrap_or(DEFAULT_MAX_ITER);
    let state = SearchBoundState::initial(&instance)?;
    let initial = json!({"alpha": state.alpha, "beta": state.beta, "n_omega": state.n_omega});
    let report = search_and_bound_from(&instance, &solver, state, max_iter, &Parallel)?;
    let mut table = CsvTable::new(&["iteration", "alpha", "beta", "n_omega", "found"]);
    for r in &report.rounds {
        let found = r
            .found
            .iter()
            .map(|v| fmt_num(*v))
            .collect::<Vec<_>>()
            .join(";");
        table.push(vec![
            r.iteration.to_string(),
            fmt_num(r.alpha),
            fmt_num(r.beta),
            r.n_omega.to_string(),
            found,
        ]);
    }
    let witness_x = instance
        .decode(report.witness)
        .feasible()
        .map(|x| x.0.clone());
    let config = json!({"instance": resolved, "solver": solver, "max_iter": max_iter, "initial_window": initial});
    let summary = json!({
        "E1": report.e1,
        "witness_x": witness_x,
        "witness_index": report.witness,
        "witness_bits": bit_string(instance.scheme(), report.witness),
        "isolated": report.isolated,
        "iterations": report.iterations,
        "betas": report.betas,
        "rounds": report.rounds,
    });
    Ok(RunOutput::new("solve", table, config, summary))
}

fn spectrum(a: &SpectrumArgs) -> CliResult<RunOutput> {
    let Loaded {
        resolved, instance, ..
    } = load(&a.instance, &a.common)?;
    let levels = instance.levels();
    let mut table = CsvTable::new(&["level", "energy", "degeneracy", "sample_x"]);
    for (i, l) in levels.levels.iter().enumerate() {
        table.push(vec![
            i.to_string(),
            fmt_num(l.value),
            l.degeneracy.to_string(),
            describe_state(&instance, l.representative),
        ]);
    }
    let summary = json!({"levels": levels.len(), "tolerance": levels.tolerance});
    Ok(RunOutput::new(
        "spectrum",
        table,
        json!({"instance": resolved}),
        summary,
    ))
}

fn encode(a: &EncodeArgs) -> CliResult<RunOutput> {
    let Loaded {
        cfg,
        resolved,
        instance,
    } = load(&a.instance, &a.common)?;
    let scheme = *instance.scheme();
    let h = instance.hamiltonian();
    let indices: Vec<usize> = match a.x.clone().or(cfg.x.clone()) {
        Some(x) => vec![scheme.encode(&x)?],
        None => (0..h.len()).collect(),
    };
    let mut table = CsvTable::new(&["index", "bits", "energy", "x"]);
    for i in indices {
        table.push(vec![
            i.to_string(),
            bit_string(&scheme, i),
            fmt_num(h.energy(i)),
            describe_state(&instance, i),
        ]);
    }
    let diagonal =
        (scheme.num_qubits() <= MAX_EMBEDDED_DIAGONAL_QUBITS).then(|| h.energies().to_vec());
    let summary = json!({
        "scheme": scheme.kind(), "num_qubits": scheme.num_qubits(), "lambda": instance.lambda(),
        "coefficient_range": scheme.coefficient_range(), "bit_order": "qubit 0 first", "diagonal": diagonal,
    });
    Ok(RunOutput::new(
        "encode",
        table,
        json!({"instance": resolved}),
        summary,
    ))
}

fn oracle(a: &OracleArgs) -> CliResult<RunOutput> {
    let Loaded {
        resolved, instance, ..
    } = load(&a.instance, &a.common)?;
    let solution = instance.oracle()?;
    let mut table = CsvTable::new(&["x", "norm_sq"]);
    for x in &solution.minimizers {
        table.push(vec![fmt_vector(x), fmt_num(solution.shortest_norm_sq)]);
    }
    let analytic = resolved.theta.and_then(|t| analytic_e1_2d(t).ok());
    let summary = json!({
        "shortest_norm_sq": solution.shortest_norm_sq,
        "minimizers": solution.minimizers.len(),
        "coefficient_range": instance.scheme().coefficient_range(),
        "analytic_e1": analytic,
    });
    Ok(RunOutput::new(
        "oracle",
        table,
        json!({"instance": resolved}),
        summary,
    ))
}

/// Writes nothing; used by tests that only need the computed output.
pub fn run_to_memory(args: &[&str]) -> CliResult<RunOutput> {
    use clap::Parser;
    let cli = Cli::try_parse_from(std::iter::once("svpfold").chain(args.iter().copied()))
        .map_err(|e| CliError::validation(e.to_string()))?;
    run(&cli.command)
}
