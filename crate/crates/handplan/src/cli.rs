//! Command-line front end: six subcommands over the scenario JSON format,
//! each writing the standard six-file output bundle.
//!
//! Exit codes: 0 on success, 1 for domain failures (unreachable targets,
//! exhausted sampling budgets), 2 for usage, parse, and validation errors.
//! Diagnostics go to stderr; file manifests and tables go to stdout.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::angles::recover_both;
use crate::error::{Error, Result};
use crate::geometry::distance;
use crate::io::{
    emit_bundle, parse_scenario, plan_trace, ConfigurationRow, OutputBundle, WorkspacePlot,
    DEFAULT_TRACE_STEPS,
};
use crate::model::{contact_target, ContactUpdateMode, MotionTask};
use crate::planner::{plan, ClusterSpace, ManipulationPlan, PlanConfig};
use crate::sampler::{
    derive_seed, sample_finger, workspace_sweep, SampleStats, SampleStrategy, SamplerConfig,
};
use crate::scenario::{
    build_scenario, evaluate, run_suite, BuiltScenario, RunMetrics, ScenarioSpec,
};

#[derive(Debug, Parser)]
#[command(
    name = "handplan",
    version,
    about = "Plan planar in-hand manipulation: sample finger configurations, \
             allocate effort weights, and cluster them into strategies."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample admissible configurations for every finger independently.
    Solve(RunArgs),
    /// Full pipeline: sample, weight, cluster, select, and evaluate.
    Plan(RunArgs),
    /// Run the scenario's angle sweep and pool the accepted configurations.
    Sweep(RunArgs),
    /// Plan, then print the strategy clusters to stdout.
    Cluster(RunArgs),
    /// Repeat several scenarios under derived seeds and tabulate the results.
    Suite(SuiteArgs),
    /// Run a suite and print its table to stdout.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Scenario description (JSON).
    #[arg(long)]
    scenario: PathBuf,
    /// Directory that receives the output bundle; created if missing.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Debug, Args)]
struct SuiteArgs {
    /// Scenario description (JSON); repeat the flag for several.
    #[arg(long = "scenario", required = true)]
    scenarios: Vec<PathBuf>,
    /// Directory that receives the output bundle; created if missing.
    #[arg(long)]
    out: PathBuf,
    /// Repetitions per scenario, each under its own derived seed.
    #[arg(long, default_value_t = 50)]
    reps: usize,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Scenario description (JSON); repeat the flag for several.
    #[arg(long = "scenario", required = true)]
    scenarios: Vec<PathBuf>,
    /// Optional directory for the bundle; the table prints to stdout anyway.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Repetitions per scenario, each under its own derived seed.
    #[arg(long, default_value_t = 50)]
    reps: usize,
    #[command(flatten)]
    overrides: Overrides,
}

/// Knobs shared by every subcommand; defaults match the library defaults.
#[derive(Debug, Args)]
struct Overrides {
    /// Base RNG seed; per-finger and per-repetition seeds derive from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Half-width of the accepted cost band around 1.
    #[arg(long = "epsilon-f")]
    epsilon_f: Option<f64>,
    /// Relative link-length tolerance for closure checks.
    #[arg(long = "epsilon-len")]
    epsilon_len: Option<f64>,
    /// Joint sampling strategy.
    #[arg(long, value_parser = parse_strategy)]
    strategy: Option<SampleStrategy>,
    /// How contact points follow the object during a roll.
    #[arg(long = "contact-mode", value_parser = parse_contact_mode)]
    contact_mode: Option<ContactUpdateMode>,
    /// Number of strategy clusters.
    #[arg(long)]
    k: Option<usize>,
    /// Accepted configurations to collect per finger.
    #[arg(long)]
    count: Option<usize>,
    /// Sampling attempts allowed per finger before giving up.
    #[arg(long = "max-attempts")]
    max_attempts: Option<u64>,
    /// Feature space for clustering.
    #[arg(long = "cluster-space", value_parser = parse_cluster_space)]
    cluster_space: Option<ClusterSpace>,
    /// Print per-finger sampling progress to stderr.
    #[arg(long)]
    verbose: bool,
}

fn parse_strategy(token: &str) -> std::result::Result<SampleStrategy, String> {
    match token {
        "paper" => Ok(SampleStrategy::DiskRejection),
        "manifold" => Ok(SampleStrategy::ManifoldClosure),
        _ => Err(format!(
            "unknown strategy {token:?}; expected \"paper\" or \"manifold\""
        )),
    }
}

fn parse_contact_mode(token: &str) -> std::result::Result<ContactUpdateMode, String> {
    match token {
        "paper" => Ok(ContactUpdateMode::PolarOffset),
        "geometric" => Ok(ContactUpdateMode::RigidRotation),
        _ => Err(format!(
            "unknown contact mode {token:?}; expected \"paper\" or \"geometric\""
        )),
    }
}

fn parse_cluster_space(token: &str) -> std::result::Result<ClusterSpace, String> {
    match token {
        "weights" => Ok(ClusterSpace::Weights),
        "positions" => Ok(ClusterSpace::Positions),
        _ => Err(format!(
            "unknown cluster space {token:?}; expected \"weights\" or \"positions\""
        )),
    }
}

impl Overrides {
    fn sampler_config(&self) -> SamplerConfig {
        let mut config = SamplerConfig::for_strategy(self.strategy.unwrap_or_default());
        config.seed = self.seed;
        if let Some(eps) = self.epsilon_f {
            config.cost_tolerance = eps;
        }
        if let Some(eps) = self.epsilon_len {
            config.length_tolerance = eps;
        }
        if let Some(n) = self.count {
            config.target_count = n;
        }
        if let Some(n) = self.max_attempts {
            config.max_attempts = n;
        }
        config
    }

    fn plan_config(&self) -> PlanConfig {
        let mut config = PlanConfig {
            sampler: self.sampler_config(),
            ..PlanConfig::default()
        };
        if let Some(k) = self.k {
            config.k = k;
        }
        if let Some(mode) = self.contact_mode {
            config.contact_mode = mode;
        }
        if let Some(space) = self.cluster_space {
            config.cluster_space = space;
        }
        config
    }

    fn contact_mode(&self) -> ContactUpdateMode {
        self.contact_mode.unwrap_or(ContactUpdateMode::RigidRotation)
    }
}

/// Parse `args` and run the selected subcommand, returning the process
/// exit code instead of exiting so tests and thin binaries can wrap it.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; everything else is
            // a usage error.
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

/// [`run`] over the process arguments.
pub fn run_from_env() -> i32 {
    run(std::env::args_os())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => cmd_solve(&args),
        Command::Plan(args) => cmd_plan(&args, false),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Cluster(args) => cmd_plan(&args, true),
        Command::Suite(args) => cmd_suite(&args.scenarios, Some(&args.out), args.reps, &args.overrides, false),
        Command::Report(args) => {
            cmd_suite(&args.scenarios, args.out.as_deref(), args.reps, &args.overrides, true)
        }
    }
}

fn load(path: &Path) -> Result<(ScenarioSpec, BuiltScenario)> {
    let spec = parse_scenario(path)?;
    let built = build_scenario(&spec)?;
    Ok((spec, built))
}

fn emit_and_print(dir: &Path, bundle: &OutputBundle) -> Result<()> {
    let manifest = emit_bundle(dir, bundle)?;
    for (path, size) in &manifest.files {
        println!("{}\t{size} bytes", path.display());
    }
    Ok(())
}

fn cmd_solve(args: &RunArgs) -> Result<()> {
    let (spec, built) = load(&args.scenario)?;
    let config = args.overrides.sampler_config();
    let mode = args.overrides.contact_mode();
    let object0 = built.scene.object0();

    let mut rows = Vec::new();
    let mut totals = SampleStats::default();
    for finger in built.scene.fingers() {
        let target = contact_target(finger, object0, built.task, mode)?;
        let delta_norm = distance(target, finger.contact());
        let finger_config = SamplerConfig {
            seed: derive_seed(config.seed, finger.id() as u64),
            ..config.clone()
        };
        let mut batch = sample_finger(finger, target, delta_norm, &finger_config)?;
        for solution in &mut batch.solutions {
            solution.angles =
                recover_both(finger, solution.q2, solution.q3, solution.contact).ok();
        }
        if args.overrides.verbose {
            eprintln!(
                "finger {}: {} accepted in {} attempts",
                finger.id(),
                batch.stats.accepted,
                batch.stats.attempts
            );
        }
        totals.merge(&batch.stats);
        rows.extend(
            batch
                .solutions
                .into_iter()
                .enumerate()
                .map(|(sample, solution)| ConfigurationRow { sample, solution }),
        );
    }

    let report = solve_report(&spec, &built, rows.len(), &totals);
    let bundle = OutputBundle {
        configurations: rows.clone(),
        report,
        plot: WorkspacePlot {
            scene: Some(built.scene.clone()),
            profile: Some(spec.shape.profile()),
            cloud: rows,
            selected: Vec::new(),
        },
        ..OutputBundle::default()
    };
    emit_and_print(&args.out, &bundle)
}

fn cmd_plan(args: &RunArgs, print_clusters: bool) -> Result<()> {
    let (spec, built) = load(&args.scenario)?;
    let config = args.overrides.plan_config();
    let result = plan(&built.scene, built.task, &config)?;
    let metrics = evaluate(&result);

    if args.overrides.verbose {
        for finger in &result.fingers {
            eprintln!(
                "finger {}: {} accepted in {} attempts",
                finger.finger_id, finger.stats.accepted, finger.stats.attempts
            );
        }
    }

    let rows: Vec<ConfigurationRow> = result
        .fingers
        .iter()
        .flat_map(|f| {
            f.solutions
                .iter()
                .cloned()
                .enumerate()
                .map(|(sample, solution)| ConfigurationRow { sample, solution })
        })
        .collect();
    let selected: Vec<_> = result
        .selected_solutions()
        .into_iter()
        .cloned()
        .collect();
    let report = plan_report(&spec, &result, &metrics);
    let bundle = OutputBundle {
        configurations: rows.clone(),
        weights: Some(result.weights.clone()),
        clusters: result
            .clusters
            .clone()
            .map(|model| (model, result.cluster_points.clone())),
        trace: plan_trace(&result, DEFAULT_TRACE_STEPS),
        report,
        plot: WorkspacePlot {
            scene: Some(built.scene.clone()),
            profile: Some(spec.shape.profile()),
            cloud: rows,
            selected,
        },
    };
    emit_and_print(&args.out, &bundle)?;

    if print_clusters {
        print!("{}", cluster_table(&result));
    }
    Ok(())
}

fn cmd_sweep(args: &RunArgs) -> Result<()> {
    let (spec, built) = load(&args.scenario)?;
    let Some(range) = spec.sweep else {
        return Err(Error::validation(
            "sweep",
            "scenario has no sweep block; add {\"min_deg\", \"max_deg\", \"steps\"}",
        ));
    };
    let tasks = range.tasks();
    let config = args.overrides.sampler_config();
    let mode = args.overrides.contact_mode();

    let mut rows = Vec::new();
    let mut totals = SampleStats::default();
    let mut task_errors: Vec<(usize, usize, String)> = Vec::new();
    for finger in built.scene.fingers() {
        let finger_config = SamplerConfig {
            seed: derive_seed(config.seed, finger.id() as u64),
            ..config.clone()
        };
        let cloud = workspace_sweep(finger, built.scene.object0(), &tasks, mode, &finger_config)?;
        if args.overrides.verbose {
            eprintln!(
                "finger {}: {} accepted in {} attempts, {} tasks failed",
                finger.id(),
                cloud.stats.accepted,
                cloud.stats.attempts,
                cloud.task_errors.len()
            );
        }
        totals.merge(&cloud.stats);
        task_errors.extend(
            cloud
                .task_errors
                .into_iter()
                .map(|(index, message)| (finger.id(), index, message)),
        );
        for point in cloud.points {
            let mut solution = point.solution;
            solution.angles =
                recover_both(finger, solution.q2, solution.q3, solution.contact).ok();
            rows.push(ConfigurationRow {
                sample: point.task_index,
                solution,
            });
        }
    }

    let report = sweep_report(&spec, tasks.len(), rows.len(), &task_errors, &totals);
    let bundle = OutputBundle {
        configurations: rows.clone(),
        report,
        plot: WorkspacePlot {
            scene: Some(built.scene.clone()),
            profile: Some(spec.shape.profile()),
            cloud: rows,
            selected: Vec::new(),
        },
        ..OutputBundle::default()
    };
    emit_and_print(&args.out, &bundle)
}

fn cmd_suite(
    scenarios: &[PathBuf],
    out: Option<&Path>,
    reps: usize,
    overrides: &Overrides,
    to_stdout: bool,
) -> Result<()> {
    let mut specs = Vec::new();
    for path in scenarios {
        specs.push(parse_scenario(path)?);
    }
    let config = overrides.plan_config();
    let report = run_suite(&specs, reps, overrides.seed, &config);
    let text = report.render();

    if let Some(dir) = out {
        let bundle = OutputBundle {
            report: text.clone(),
            ..OutputBundle::default()
        };
        emit_and_print(dir, &bundle)?;
    }
    if to_stdout {
        print!("{text}");
    }
    Ok(())
}

fn task_line(task: MotionTask) -> String {
    if task.is_identity() {
        return "hold still (identity)".to_owned();
    }
    match task {
        MotionTask::Translate(delta) => {
            format!("translate by ({:.4}, {:.4}) cm", delta.x, delta.y)
        }
        MotionTask::Roll(angle) => format!("roll by {:.4} deg", angle.degrees()),
    }
}

fn stats_lines(stats: &SampleStats) -> String {
    format!(
        "attempts: {}\naccepted: {} (rate {:.6})\nrejected: {} closure-infeasible, {} off-length, {} off-cost, {} near-singular\n",
        stats.attempts,
        stats.accepted,
        stats.acceptance_rate(),
        stats.closure_infeasible,
        stats.length_rejects,
        stats.cost_rejects,
        stats.singularity_rejects,
    )
}

fn scenario_header(spec: &ScenarioSpec, task: MotionTask) -> String {
    format!(
        "scenario: {} ({}, {} profile)\ntask: {}\n",
        spec.name,
        spec.case.code(),
        spec.shape.kind(),
        task_line(task),
    )
}

fn solve_report(
    spec: &ScenarioSpec,
    built: &BuiltScenario,
    configurations: usize,
    stats: &SampleStats,
) -> String {
    let mut out = scenario_header(spec, built.task);
    out.push_str(&format!(
        "fingers: {}\nconfigurations: {configurations}\n",
        built.scene.fingers().len()
    ));
    out.push_str(&stats_lines(stats));
    out
}

fn sweep_report(
    spec: &ScenarioSpec,
    tasks: usize,
    configurations: usize,
    task_errors: &[(usize, usize, String)],
    stats: &SampleStats,
) -> String {
    let mut out = format!(
        "scenario: {} ({}, {} profile)\nsweep: {tasks} roll angles\nconfigurations: {configurations}\n",
        spec.name,
        spec.case.code(),
        spec.shape.kind(),
    );
    out.push_str(&stats_lines(stats));
    if task_errors.is_empty() {
        out.push_str("all sweep tasks produced configurations\n");
    } else {
        for (finger, index, message) in task_errors {
            out.push_str(&format!("finger {finger}, task {index}: {message}\n"));
        }
    }
    out
}

fn cluster_table(plan: &ManipulationPlan) -> String {
    let mut out = String::new();
    match &plan.clusters {
        None => out.push_str("clusters: none (too few distinct samples)\n"),
        Some(model) => {
            let populations = model.population();
            for (index, centroid) in model.centroids.iter().enumerate() {
                let coords: Vec<String> =
                    centroid.iter().map(|c| format!("{c:.6}")).collect();
                out.push_str(&format!(
                    "cluster {index}: population {}, centroid [{}]\n",
                    populations[index],
                    coords.join(", ")
                ));
            }
            out.push_str(&format!(
                "inertia: {:.9} after {} iterations\n",
                model.inertia, model.iterations
            ));
        }
    }
    if let Some(winner) = plan.selected.cluster {
        out.push_str(&format!("selected cluster: {winner}\n"));
    }
    out
}

fn plan_report(spec: &ScenarioSpec, plan: &ManipulationPlan, metrics: &RunMetrics) -> String {
    let mut out = scenario_header(spec, plan.task);
    for finger in &plan.fingers {
        out.push_str(&format!(
            "finger {}: target ({:.6}, {:.6}), displacement {:.6}, {} accepted in {} attempts\n",
            finger.finger_id,
            finger.contact_target.x,
            finger.contact_target.y,
            finger.delta_norm,
            finger.stats.accepted,
            finger.stats.attempts,
        ));
    }
    let mut totals = SampleStats::default();
    for finger in &plan.fingers {
        totals.merge(&finger.stats);
    }
    out.push_str(&stats_lines(&totals));

    out.push_str(&format!(
        "task magnitude: {:.6}\nweight residual: {:.3e}\n",
        plan.weights.magnitude,
        plan.weights.residual(),
    ));
    for (index, (gamma, cost)) in plan
        .weights
        .gammas
        .iter()
        .zip(&plan.weights.costs)
        .enumerate()
    {
        out.push_str(&format!(
            "finger {index}: weight {gamma:.6}, effort {cost:.6}\n"
        ));
    }

    out.push_str(&cluster_table(plan));
    let chosen: Vec<String> = plan
        .selected
        .per_finger
        .iter()
        .enumerate()
        .map(|(finger, sample)| format!("finger {finger} sample {sample}"))
        .collect();
    out.push_str(&format!("selected configurations: {}\n", chosen.join(", ")));

    out.push_str(&format!(
        "fitted rotation: {:.6} deg\nfitted shift: ({:.6}, {:.6})\nrelative error: {:.6}\nkinematic success: {}\n",
        metrics.fitted_rotation.degrees(),
        metrics.fitted_shift.x,
        metrics.fitted_shift.y,
        metrics.relative_error,
        if metrics.success { "yes" } else { "no" },
    ));
    out
}
