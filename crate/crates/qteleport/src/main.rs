//! Command-line front end: scenario sweeps, the 48-case noise census and
//! fixed-configuration evaluation, emitting CSV tables.
//!
//! Exit codes: 0 on success, 2 when every optimization point is
//! infeasible, 1 on I/O or other runtime errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use qteleport::ensemble;
use qteleport::noise::{Arrangement, NoiseKind, ProbAxis};
use qteleport::optimizer::Target;
use qteleport::protocol::outcome_label;
use qteleport::sweep::{
    self, CensusOptions, RowStatus, Scenario, ScenarioSpec, SearchOptions, SweepRow,
};
use qteleport::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "qteleport",
    about = "Noisy probabilistic quantum teleportation: sweeps, census and fixed-point evaluation",
    after_help = "\
Modes (pick exactly one):
  --sweep AXIS:START:STOP:STEP   optimize along a probability axis
  --census                       classify all 48 noise cases
  --eval                         evaluate one fixed (theta, phi) point

Examples:
  qteleport --scenario 1 --noise AD,NONE,PF --p-input 0.8 \\
            --sweep pB:0:1:0.02 --target det --target j4 --out fig.csv
  qteleport --census --out census.csv
  qteleport --eval --noise PF,AD,AD --p-input 0.1 --p-alice 0.3 --p-bob 0.3 \\
            --theta 0.6 --phi 0.6 --target set:3,4"
)]
struct Cli {
    /// Scenario number: 1 (input+Bob), 2 (p_A = p_B = p), 3 (p_I = p_A = p).
    #[arg(long)]
    scenario: Option<u8>,

    /// Noise kind triple `input,alice,bob`, e.g. `AD,NONE,PF`.
    #[arg(long)]
    noise: Option<String>,

    /// Probability of the input-qubit noise.
    #[arg(long = "p-input")]
    p_input: Option<f64>,

    /// Probability of the noise on Alice's channel half.
    #[arg(long = "p-alice")]
    p_alice: Option<f64>,

    /// Probability of the noise on Bob's channel half.
    #[arg(long = "p-bob")]
    p_bob: Option<f64>,

    /// Shared probability: p_A = p_B in scenario 2, p_I = p_A in scenario 3.
    #[arg(long)]
    p: Option<f64>,

    /// Sweep one probability axis: `AXIS:START:STOP:STEP` with AXIS one of
    /// pI, pA, pB, p.
    #[arg(long)]
    sweep: Option<String>,

    /// Classify all 48 noise cases at representative probability levels.
    #[arg(long)]
    census: bool,

    /// Evaluate a fixed (theta, phi) configuration.
    #[arg(long)]
    eval: bool,

    /// Optimization target: `det`, `j1`..`j4` or `set:1,2,4`; repeatable.
    #[arg(long)]
    target: Vec<String>,

    /// Channel angle for --eval (radians).
    #[arg(long)]
    theta: Option<f64>,

    /// Measurement angle for --eval (radians).
    #[arg(long)]
    phi: Option<f64>,

    /// Override the theta search range as `LO:HI` (radians).
    #[arg(long = "theta-range")]
    theta_range: Option<String>,

    /// Override the phi search range as `LO:HI` (radians).
    #[arg(long = "phi-range")]
    phi_range: Option<String>,

    /// Minimum acceptable success rate; 0 disables the constraint.
    #[arg(long, default_value_t = ensemble::AVERAGE_FLOOR)]
    qmin: f64,

    /// Coarse search grid points per axis.
    #[arg(long, default_value_t = 64)]
    grid: usize,

    /// Golden-section refinement steps.
    #[arg(long, default_value_t = 60)]
    refine: usize,

    /// Census probability levels per free axis.
    #[arg(long, value_delimiter = ',', default_values_t = [0.25, 0.5, 0.75])]
    levels: Vec<f64>,

    /// Cross-check --eval with this many Monte-Carlo samples.
    #[arg(long = "mc-samples")]
    mc_samples: Option<usize>,

    /// Seed for the Monte-Carlo cross-check.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match (cli.sweep.is_some(), cli.census, cli.eval) {
        (true, false, false) => run_sweep_mode(cli),
        (false, true, false) => run_census_mode(cli),
        (false, false, true) => run_eval_mode(cli),
        _ => Err(Error::InvalidParameter(
            "pick exactly one of --sweep, --census, --eval".into(),
        )),
    }
}

fn parse_pair(s: &str, what: &'static str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Malformed {
        what,
        detail: s.to_string(),
    };
    if parts.len() != 2 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

fn parse_axis(token: &str, scenario: Scenario) -> Result<ProbAxis> {
    match token {
        "pI" => Ok(ProbAxis::Input),
        "pA" => Ok(ProbAxis::Alice),
        "pB" => Ok(ProbAxis::Bob),
        "p" => match scenario {
            Scenario::SharedChannel => Ok(ProbAxis::Channel),
            Scenario::AliceSide => Ok(ProbAxis::AliceSide),
            Scenario::InputAndBob => Err(Error::InvalidParameter(
                "scenario 1 has no shared p; sweep pI or pB".into(),
            )),
        },
        other => Err(Error::Malformed {
            what: "sweep axis",
            detail: other.to_string(),
        }),
    }
}

struct SweepParse {
    axis_token: String,
    axis: ProbAxis,
    start: f64,
    stop: f64,
    step: f64,
    grid: Vec<f64>,
}

fn parse_sweep(s: &str, scenario: Scenario) -> Result<SweepParse> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Malformed {
        what: "sweep",
        detail: s.to_string(),
    };
    if parts.len() != 4 {
        return Err(bad());
    }
    let axis = parse_axis(parts[0], scenario)?;
    let start: f64 = parts[1].parse().map_err(|_| bad())?;
    let stop: f64 = parts[2].parse().map_err(|_| bad())?;
    let step: f64 = parts[3].parse().map_err(|_| bad())?;
    if step <= 0.0 || stop < start {
        return Err(bad());
    }
    let mut grid = Vec::new();
    let mut k = 0usize;
    loop {
        let p = start + step * k as f64;
        if p > stop + 0.5 * step {
            break;
        }
        grid.push(p.min(stop));
        k += 1;
    }
    Ok(SweepParse {
        axis_token: parts[0].to_string(),
        axis,
        start,
        stop,
        step,
        grid,
    })
}

/// Scenario-consistent noise kinds from the `input,alice,bob` triple.
fn scenario_kinds(scenario: Scenario, arr: &Arrangement) -> Result<(NoiseKind, NoiseKind)> {
    let (i, a, b) = (arr.input.kind, arr.alice.kind, arr.bob.kind);
    match scenario {
        Scenario::InputAndBob => {
            if a != NoiseKind::None {
                return Err(Error::InvalidParameter(format!(
                    "scenario 1 keeps Alice's half noiseless, got {a}"
                )));
            }
            Ok((i, b))
        }
        Scenario::SharedChannel => {
            if a != b {
                return Err(Error::InvalidParameter(format!(
                    "scenario 2 uses one noise kind on both channel halves, got {a} and {b}"
                )));
            }
            Ok((i, a))
        }
        Scenario::AliceSide => {
            if i != a {
                return Err(Error::InvalidParameter(format!(
                    "scenario 3 uses one noise kind on both of Alice's qubits, got {i} and {a}"
                )));
            }
            Ok((i, b))
        }
    }
}

fn search_options(cli: &Cli) -> Result<SearchOptions> {
    Ok(SearchOptions {
        theta_range: cli
            .theta_range
            .as_deref()
            .map(|s| parse_pair(s, "theta-range"))
            .transpose()?,
        phi_range: cli
            .phi_range
            .as_deref()
            .map(|s| parse_pair(s, "phi-range"))
            .transpose()?,
        coarse_grid: (cli.grid, cli.grid),
        refine_iters: cli.refine,
        q_min: cli.qmin,
    })
}

fn parse_targets(cli: &Cli) -> Result<Vec<Target>> {
    if cli.target.is_empty() {
        return Ok(vec![Target::Deterministic]);
    }
    cli.target.iter().map(|s| s.parse()).collect()
}

fn config_comments(cli: &Cli, mode: &str, extra: Vec<String>) -> Vec<String> {
    let mut lines = vec![format!("qteleport {mode}")];
    lines.extend(extra);
    lines.push(format!(
        "search: grid={}x{} refine={} qmin={:e} theta_range={} phi_range={}",
        cli.grid,
        cli.grid,
        cli.refine,
        cli.qmin,
        cli.theta_range.as_deref().unwrap_or("auto"),
        cli.phi_range.as_deref().unwrap_or("auto"),
    ));
    lines.push(format!("seed: {}", cli.seed));
    lines
}

fn emit(cli: &Cli, comments: &[String], rows: &[SweepRow]) -> Result<()> {
    match &cli.out {
        Some(path) => sweep::write_csv(path, comments, rows),
        None => sweep::write_csv_to(std::io::stdout().lock(), comments, rows),
    }
}

fn exit_code_for(rows: &[SweepRow]) -> u8 {
    if !rows.is_empty() && rows.iter().all(|r| r.status == RowStatus::Infeasible) {
        2
    } else {
        0
    }
}

fn run_sweep_mode(cli: &Cli) -> Result<u8> {
    let scenario = Scenario::from_number(cli.scenario.ok_or_else(|| {
        Error::InvalidParameter("--sweep requires --scenario".into())
    })?)?;
    let noise = cli
        .noise
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("--sweep requires --noise".into()))?;
    let arr = Arrangement::parse_code(noise)?;
    let (kind_a, kind_b) = scenario_kinds(scenario, &arr)?;
    let sweep_parse = parse_sweep(cli.sweep.as_deref().unwrap(), scenario)?;

    // The fixed axis is the scenario's other free axis; its value comes
    // from the matching flag.
    let axes = scenario.free_axes();
    let fixed_axis = *axes
        .iter()
        .find(|&&a| a != sweep_parse.axis)
        .expect("two free axes");
    let fixed_p = match fixed_axis {
        ProbAxis::Input => cli.p_input,
        ProbAxis::Bob => cli.p_bob,
        ProbAxis::Channel | ProbAxis::AliceSide => cli.p,
        ProbAxis::Alice => cli.p_alice,
    }
    .ok_or_else(|| {
        Error::InvalidParameter(format!(
            "sweeping {} in scenario {} requires a value for {}",
            sweep_parse.axis,
            scenario.number(),
            fixed_axis
        ))
    })?;

    let spec = ScenarioSpec::new(
        scenario,
        kind_a,
        kind_b,
        fixed_axis,
        fixed_p,
        sweep_parse.axis,
        sweep_parse.grid.clone(),
    )?;
    let targets = parse_targets(cli)?;
    let rows = sweep::run_sweep(&spec, &search_options(cli)?, &targets)?;

    let comments = config_comments(
        cli,
        "sweep",
        vec![
            format!("scenario: {}", scenario.number()),
            format!("noise: {noise}"),
            format!("fixed: {fixed_axis}={fixed_p}"),
            format!(
                "sweep: {}:{}:{}:{}",
                sweep_parse.axis_token, sweep_parse.start, sweep_parse.stop, sweep_parse.step
            ),
            format!(
                "targets: {}",
                targets
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
        ],
    );
    emit(cli, &comments, &rows)?;
    Ok(exit_code_for(&rows))
}

fn run_census_mode(cli: &Cli) -> Result<u8> {
    let opts = CensusOptions {
        levels: cli.levels.clone(),
        search: search_options(cli)?,
    };
    let report = sweep::run_census(&opts)?;

    println!("noise census: 16 arrangements x 3 scenarios at levels {:?}", opts.levels);
    for case in &report.cases {
        let verdict = if case.improved { "improved" } else { "coincident" };
        println!(
            "  scenario {} {:11} {}",
            case.scenario.number(),
            case.code(),
            verdict
        );
    }
    println!(
        "improved cases per scenario: {} / {} / {} (total {})",
        report.improved_counts[0],
        report.improved_counts[1],
        report.improved_counts[2],
        report.total_improved()
    );

    let rows = report.rows();
    if cli.out.is_some() {
        let comments = config_comments(
            cli,
            "census",
            vec![format!(
                "levels: {}",
                opts.levels
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )],
        );
        emit(cli, &comments, &rows)?;
    }
    Ok(exit_code_for(&rows))
}

fn run_eval_mode(cli: &Cli) -> Result<u8> {
    let noise = cli
        .noise
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("--eval requires --noise".into()))?;
    let mut arr = Arrangement::parse_code(noise)?;
    arr.input.p = cli.p_input.unwrap_or(0.0);
    arr.alice.p = cli.p_alice.unwrap_or(0.0);
    arr.bob.p = cli.p_bob.unwrap_or(0.0);
    if let Some(p) = cli.p {
        arr.alice.p = p;
        arr.bob.p = p;
    }
    let theta = cli
        .theta
        .ok_or_else(|| Error::InvalidParameter("--eval requires --theta".into()))?;
    let phi = cli
        .phi
        .ok_or_else(|| Error::InvalidParameter("--eval requires --phi".into()))?;

    let selection: Vec<usize> = match parse_targets(cli)?.pop().unwrap() {
        Target::Deterministic => vec![1, 2, 3, 4],
        Target::Outcome(j) => vec![j],
        Target::Set(v) => v,
    };

    let eval = sweep::run_fixed_eval(&arr, theta, phi, &selection)?;
    println!("arrangement {arr}");
    println!("theta = {theta:.6}, phi = {phi:.6}");
    println!("{:8} {:>14} {:>14}", "outcome", "success", "efficiency");
    for j in 1..=4 {
        let fbar = eval.report.fbar[j - 1]
            .map(|f| format!("{f:.10}"))
            .unwrap_or_else(|| "undefined".into());
        println!(
            "{:8} {:>14.10} {:>14}",
            format!("{} ({})", j, outcome_label(j)),
            eval.report.qbar[j - 1],
            fbar
        );
    }
    println!("deterministic average fidelity: {:.10}", eval.report.f_det);
    println!(
        "postselecting {:?}: success {:.10}, efficiency {:.10}",
        eval.selection, eval.success, eval.efficiency
    );

    if let Some(samples) = cli.mc_samples {
        let params = qteleport::protocol::ChannelParams::new(theta, phi)?;
        let mc = ensemble::monte_carlo_average(&params, &arr, samples, cli.seed)?;
        println!("monte-carlo cross-check ({samples} samples, seed {}):", cli.seed);
        for j in 1..=4 {
            let fbar = mc.fbar[j - 1]
                .map(|f| format!("{f:.6} +- {:.1e}", mc.fbar_se[j - 1].unwrap()))
                .unwrap_or_else(|| "undefined".into());
            println!(
                "  outcome {}: success {:.6} +- {:.1e}, efficiency {}",
                j,
                mc.qbar[j - 1],
                mc.qbar_se[j - 1],
                fbar
            );
        }
        println!(
            "  deterministic: {:.6} +- {:.1e}",
            mc.f_det, mc.f_det_se
        );
    }
    Ok(0)
}
